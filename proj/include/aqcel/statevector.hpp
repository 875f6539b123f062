#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "aqcel/circuit.hpp"
#include "aqcel/gate.hpp"

namespace aqcel {

class DimensionMismatch : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

class NotNormalized : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Dense n-qubit state. Bit i of an amplitude index is the value of qubit i.
template <typename Scalar = double>
class StateVector {
   public:
    using Complex = std::complex<Scalar>;
    using Amplitudes = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

    static constexpr int kMaxQubits = 26;

    explicit StateVector(int num_qubits) : num_qubits_(num_qubits) {
        if (num_qubits < 0 || num_qubits > kMaxQubits)
            throw DimensionMismatch("qubit count out of supported range");
        amps_ = Amplitudes::Zero(Eigen::Index(1) << num_qubits);
        amps_(0) = Complex(1);
    }

    /// Computational basis state; character k of `bits` is qubit k.
    static StateVector basis(std::string_view bits) {
        StateVector sv(static_cast<int>(bits.size()));
        Eigen::Index idx = 0;
        for (std::size_t q = 0; q < bits.size(); ++q) {
            if (bits[q] == '1') idx |= Eigen::Index(1) << q;
            else if (bits[q] != '0') throw std::invalid_argument("basis: bitstring must be 0/1");
        }
        sv.amps_.setZero();
        sv.amps_(idx) = Complex(1);
        return sv;
    }

    static StateVector from_amplitudes(Amplitudes amps, Scalar tol = Scalar(1e-10)) {
        const Eigen::Index dim = amps.size();
        int n = 0;
        while ((Eigen::Index(1) << n) < dim) ++n;
        if ((Eigen::Index(1) << n) != dim) throw DimensionMismatch("amplitude count is not 2^n");
        if (std::abs(amps.squaredNorm() - Scalar(1)) > tol)
            throw NotNormalized("amplitudes are not normalized");
        StateVector sv(n);
        sv.amps_ = std::move(amps);
        return sv;
    }

    int num_qubits() const { return num_qubits_; }
    const Amplitudes& amplitudes() const { return amps_; }
    Complex amplitude(Eigen::Index i) const { return amps_(i); }
    Scalar norm_squared() const { return amps_.squaredNorm(); }

    /// Applies the gate's base 2x2 unitary to the target on the subspace where
    /// every control is 1. RCCX/RCCXdg also pick up their -1 relative phase on
    /// |c1=1, c2=0, t=1>.
    void apply(const GateInst& g) {
        validate(g, num_qubits_);
        const int t = g.targets.front();
        std::uint64_t cmask = 0;
        for (Qubit c : g.controls) cmask |= std::uint64_t(1) << c;
        const auto m = base_matrix<Scalar>(base_kind(g), g.params);
        apply_controlled(m, cmask, t);
        if (g.kind == GateKind::RCCX || g.kind == GateKind::RCCXdg) {
            const std::uint64_t c1 = std::uint64_t(1) << g.controls[0];
            const std::uint64_t c2 = std::uint64_t(1) << g.controls[1];
            const std::uint64_t tb = std::uint64_t(1) << t;
            const std::uint64_t dim = std::uint64_t(amps_.size());
            for (std::uint64_t i = 0; i < dim; ++i)
                if ((i & c1) && !(i & c2) && (i & tb)) amps_(Eigen::Index(i)) = -amps_(Eigen::Index(i));
        }
    }

    void apply(const Circuit& c) {
        if (c.num_qubits() != num_qubits_)
            throw DimensionMismatch("circuit and state qubit counts differ");
        for (const auto& g : c.gates()) apply(g);
    }

   private:
    void apply_controlled(const Matrix2c<Scalar>& m, std::uint64_t cmask, int target) {
        const std::uint64_t tb = std::uint64_t(1) << target;
        const std::uint64_t dim = std::uint64_t(amps_.size());
        const Complex m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
        for (std::uint64_t i = 0; i < dim; ++i) {
            if ((i & tb) || (i & cmask) != cmask) continue;
            const auto i0 = Eigen::Index(i), i1 = Eigen::Index(i | tb);
            const Complex a0 = amps_(i0), a1 = amps_(i1);
            amps_(i0) = m00 * a0 + m01 * a1;
            amps_(i1) = m10 * a0 + m11 * a1;
        }
    }

    int num_qubits_;
    Amplitudes amps_;
};

using StateVectord = StateVector<double>;

template <typename Scalar>
StateVector<Scalar> evolve(const Circuit& c, StateVector<Scalar> initial) {
    initial.apply(c);
    return initial;
}

/// Runs `c` from a computational basis state (qubit 0 leftmost).
inline StateVectord evolve(const Circuit& c, std::string_view initial_bits) {
    if (static_cast<int>(initial_bits.size()) != c.num_qubits())
        throw DimensionMismatch("initial bitstring length does not match circuit");
    return evolve(c, StateVectord::basis(initial_bits));
}

inline StateVectord evolve(const Circuit& c) { return evolve(c, StateVectord(c.num_qubits())); }

/// Full 2^n x 2^n unitary of a circuit, one evolved basis state per column.
template <typename Scalar = double>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> unitary(const Circuit& c) {
    const Eigen::Index dim = Eigen::Index(1) << c.num_qubits();
    Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> u(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        typename StateVector<Scalar>::Amplitudes e = StateVector<Scalar>::Amplitudes::Zero(dim);
        e(k) = 1;
        auto sv = StateVector<Scalar>::from_amplitudes(std::move(e));
        sv.apply(c);
        u.col(k) = sv.amplitudes();
    }
    return u;
}

/// Unitary of a single gate acting on `num_qubits` qubits.
template <typename Scalar = double>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> gate_unitary(const GateInst& g,
                                                                                 int num_qubits) {
    Circuit c(num_qubits);
    GateInst copy = g;
    copy.id = -1;
    copy.pair_link.reset();
    c.append(copy);
    return unitary<Scalar>(c);
}

}  // namespace aqcel
