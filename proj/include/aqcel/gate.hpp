#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace aqcel {

using Qubit = int;
using GateId = std::int64_t;

enum class GateKind {
    X, Y, Z, H, S, Sdg, T, Tdg, Ry, Rz, U3,
    CX, CZ, CRy, CCX, RCCX, RCCXdg, MCU,
};

class UnsupportedGate : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class InvalidGate : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// One gate instance. Controlled gates carry their controls separately from
/// the (single) target. For `MCU` the single-qubit unitary applied on the
/// target is `base`, parameterised by `params`; for every other kind `base`
/// is ignored.
///
/// `pair_link` names the compute/uncompute partner created by lowering.
struct GateInst {
    GateKind kind = GateKind::X;
    GateKind base = GateKind::X;
    std::vector<double> params;
    std::vector<Qubit> controls;
    std::vector<Qubit> targets;
    GateId id = -1;
    std::optional<GateId> pair_link;
};

std::string_view kind_name(GateKind kind);
std::optional<GateKind> kind_from_name(std::string_view name);

bool is_single_qubit_kind(GateKind kind);
bool is_rotation_kind(GateKind kind);
/// Number of angle parameters taken by a single-qubit kind.
int param_count(GateKind kind);
/// Diagonal in the computational basis (only changes phases).
bool is_diagonal_kind(GateKind kind);

/// The single-qubit operation a controlled gate applies to its target.
/// RCCX/RCCXdg report X; their extra relative phase is handled by the engine.
GateKind base_kind(const GateInst& g);
std::vector<double> base_params(const GateInst& g);

/// All qubits touched, controls first.
std::vector<Qubit> qubits_of(const GateInst& g);
bool touches(const GateInst& g, Qubit q);
bool targets_qubit(const GateInst& g, Qubit q);
bool controls_qubit(const GateInst& g, Qubit q);

/// Throws InvalidGate on arity violations, overlapping control/target lists or
/// qubits outside [0, num_qubits).
void validate(const GateInst& g, int num_qubits);

/// Hermitian adjoint. Self-inverse kinds come back unchanged, rotations have
/// their angles negated, RCCX maps to RCCXdg.
GateInst inverse(const GateInst& g);

/// Same kind, operands and parameters (within `tol`). Ids and pair links are
/// not compared.
bool same_action(const GateInst& a, const GateInst& b, double tol = 1e-12);

/// Rotation-type gates whose angles are all below `tol` in magnitude.
bool is_identity_rotation(const GateInst& g, double tol = 1e-12);

/// Builds the canonical gate for `base` applied to `target` under `controls`:
/// no controls gives the bare single-qubit gate, CX/CZ/CRy/CCX where such a
/// named kind exists, and MCU otherwise.
GateInst make_controlled(GateKind base, std::vector<double> params, std::vector<Qubit> controls,
                         Qubit target);

namespace gates {
GateInst x(Qubit q);
GateInst h(Qubit q);
GateInst z(Qubit q);
GateInst ry(double theta, Qubit q);
GateInst rz(double theta, Qubit q);
GateInst u3(double theta, double phi, double lambda, Qubit q);
GateInst cx(Qubit c, Qubit t);
GateInst cz(Qubit c, Qubit t);
GateInst cry(double theta, Qubit c, Qubit t);
GateInst ccx(Qubit c1, Qubit c2, Qubit t);
GateInst rccx(Qubit c1, Qubit c2, Qubit t);
GateInst rccxdg(Qubit c1, Qubit c2, Qubit t);
GateInst mcu(GateKind base, std::vector<double> params, std::vector<Qubit> controls, Qubit target);
}  // namespace gates

template <typename Scalar>
using Matrix2c = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

/// 2x2 unitary of a single-qubit kind.
template <typename Scalar = double>
Matrix2c<Scalar> base_matrix(GateKind kind, std::span<const double> params) {
    using C = std::complex<Scalar>;
    const C i(0, 1);
    const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
    Matrix2c<Scalar> m;
    auto angle = [&](std::size_t k) { return static_cast<Scalar>(params[k]); };
    switch (kind) {
        case GateKind::X: m << 0, 1, 1, 0; break;
        case GateKind::Y: m << 0, -i, i, 0; break;
        case GateKind::Z: m << 1, 0, 0, -1; break;
        case GateKind::H: m << r, r, r, -r; break;
        case GateKind::S: m << 1, 0, 0, i; break;
        case GateKind::Sdg: m << 1, 0, 0, -i; break;
        case GateKind::T: m << 1, 0, 0, std::exp(i * Scalar(M_PI / 4)); break;
        case GateKind::Tdg: m << 1, 0, 0, std::exp(-i * Scalar(M_PI / 4)); break;
        case GateKind::Ry: {
            const Scalar c = std::cos(angle(0) / 2), s = std::sin(angle(0) / 2);
            m << c, -s, s, c;
            break;
        }
        case GateKind::Rz: {
            const C e = std::exp(i * (angle(0) / 2));
            m << std::conj(e), 0, 0, e;
            break;
        }
        case GateKind::U3: {
            const Scalar c = std::cos(angle(0) / 2), s = std::sin(angle(0) / 2);
            const C ephi = std::exp(i * angle(1)), elam = std::exp(i * angle(2));
            m << c, -elam * s, ephi * s, ephi * elam * c;
            break;
        }
        default:
            throw UnsupportedGate("base_matrix: not a single-qubit kind: " +
                                  std::string(kind_name(kind)));
    }
    return m;
}

}  // namespace aqcel
