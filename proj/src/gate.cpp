#include "aqcel/gate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

namespace aqcel {
namespace {

struct KindEntry {
    GateKind kind;
    std::string_view name;
};

constexpr std::array<KindEntry, 18> kKinds{{
    {GateKind::X, "x"},       {GateKind::Y, "y"},     {GateKind::Z, "z"},
    {GateKind::H, "h"},       {GateKind::S, "s"},     {GateKind::Sdg, "sdg"},
    {GateKind::T, "t"},       {GateKind::Tdg, "tdg"}, {GateKind::Ry, "ry"},
    {GateKind::Rz, "rz"},     {GateKind::U3, "u3"},   {GateKind::CX, "cx"},
    {GateKind::CZ, "cz"},     {GateKind::CRy, "cry"}, {GateKind::CCX, "ccx"},
    {GateKind::RCCX, "rccx"}, {GateKind::RCCXdg, "rccxdg"}, {GateKind::MCU, "mcu"},
}};

int expected_controls(GateKind kind) {
    switch (kind) {
        case GateKind::CX:
        case GateKind::CZ:
        case GateKind::CRy: return 1;
        case GateKind::CCX:
        case GateKind::RCCX:
        case GateKind::RCCXdg: return 2;
        case GateKind::MCU: return -1;
        default: return 0;
    }
}

}  // namespace

std::string_view kind_name(GateKind kind) {
    for (const auto& e : kKinds)
        if (e.kind == kind) return e.name;
    return "?";
}

std::optional<GateKind> kind_from_name(std::string_view name) {
    for (const auto& e : kKinds)
        if (e.name == name) return e.kind;
    return std::nullopt;
}

bool is_single_qubit_kind(GateKind kind) { return expected_controls(kind) == 0; }

bool is_rotation_kind(GateKind kind) {
    return kind == GateKind::Ry || kind == GateKind::Rz || kind == GateKind::U3 ||
           kind == GateKind::CRy;
}

int param_count(GateKind kind) {
    switch (kind) {
        case GateKind::Ry:
        case GateKind::Rz:
        case GateKind::CRy: return 1;
        case GateKind::U3: return 3;
        default: return 0;
    }
}

bool is_diagonal_kind(GateKind kind) {
    switch (kind) {
        case GateKind::Z:
        case GateKind::S:
        case GateKind::Sdg:
        case GateKind::T:
        case GateKind::Tdg:
        case GateKind::Rz:
        case GateKind::CZ: return true;
        default: return false;
    }
}

GateKind base_kind(const GateInst& g) {
    switch (g.kind) {
        case GateKind::CX:
        case GateKind::CCX:
        case GateKind::RCCX:
        case GateKind::RCCXdg: return GateKind::X;
        case GateKind::CZ: return GateKind::Z;
        case GateKind::CRy: return GateKind::Ry;
        case GateKind::MCU: return g.base;
        default: return g.kind;
    }
}

std::vector<double> base_params(const GateInst& g) { return g.params; }

std::vector<Qubit> qubits_of(const GateInst& g) {
    std::vector<Qubit> qs = g.controls;
    qs.insert(qs.end(), g.targets.begin(), g.targets.end());
    return qs;
}

bool controls_qubit(const GateInst& g, Qubit q) {
    return std::find(g.controls.begin(), g.controls.end(), q) != g.controls.end();
}

bool targets_qubit(const GateInst& g, Qubit q) {
    return std::find(g.targets.begin(), g.targets.end(), q) != g.targets.end();
}

bool touches(const GateInst& g, Qubit q) { return controls_qubit(g, q) || targets_qubit(g, q); }

void validate(const GateInst& g, int num_qubits) {
    const std::string name(kind_name(g.kind));
    if (g.targets.size() != 1) throw InvalidGate(name + ": expected exactly one target");
    const int nc = expected_controls(g.kind);
    if (nc >= 0 && static_cast<int>(g.controls.size()) != nc)
        throw InvalidGate(name + ": expected " + std::to_string(nc) + " control(s)");
    if (g.kind == GateKind::MCU) {
        if (g.controls.empty()) throw InvalidGate("mcu: needs at least one control");
        if (!is_single_qubit_kind(g.base)) throw InvalidGate("mcu: base must be single-qubit");
    }
    if (static_cast<int>(g.params.size()) != param_count(base_kind(g)))
        throw InvalidGate(name + ": wrong number of parameters");
    auto qs = qubits_of(g);
    for (Qubit q : qs)
        if (q < 0 || q >= num_qubits)
            throw InvalidGate(name + ": qubit " + std::to_string(q) + " out of range");
    std::sort(qs.begin(), qs.end());
    if (std::adjacent_find(qs.begin(), qs.end()) != qs.end())
        throw InvalidGate(name + ": repeated qubit operand");
}

namespace {

std::pair<GateKind, std::vector<double>> inverse_base(GateKind kind, const std::vector<double>& p) {
    switch (kind) {
        case GateKind::X:
        case GateKind::Y:
        case GateKind::Z:
        case GateKind::H: return {kind, p};
        case GateKind::S: return {GateKind::Sdg, p};
        case GateKind::Sdg: return {GateKind::S, p};
        case GateKind::T: return {GateKind::Tdg, p};
        case GateKind::Tdg: return {GateKind::T, p};
        case GateKind::Ry:
        case GateKind::Rz: return {kind, {-p.at(0)}};
        case GateKind::U3: return {kind, {-p.at(0), -p.at(2), -p.at(1)}};
        default: throw UnsupportedGate("inverse: unsupported base " + std::string(kind_name(kind)));
    }
}

}  // namespace

GateInst inverse(const GateInst& g) {
    GateInst r = g;
    r.pair_link.reset();
    switch (g.kind) {
        case GateKind::CX:
        case GateKind::CZ:
        case GateKind::CCX: break;
        case GateKind::CRy: r.params = {-g.params.at(0)}; break;
        case GateKind::RCCX: r.kind = GateKind::RCCXdg; break;
        case GateKind::RCCXdg: r.kind = GateKind::RCCX; break;
        case GateKind::MCU: std::tie(r.base, r.params) = inverse_base(g.base, g.params); break;
        default: std::tie(r.kind, r.params) = inverse_base(g.kind, g.params); break;
    }
    return r;
}

bool same_action(const GateInst& a, const GateInst& b, double tol) {
    if (a.kind != b.kind || a.controls != b.controls || a.targets != b.targets) return false;
    if (a.kind == GateKind::MCU && a.base != b.base) return false;
    if (a.params.size() != b.params.size()) return false;
    for (std::size_t k = 0; k < a.params.size(); ++k)
        if (std::abs(a.params[k] - b.params[k]) > tol) return false;
    return true;
}

bool is_identity_rotation(const GateInst& g, double tol) {
    const GateKind b = base_kind(g);
    if (b != GateKind::Ry && b != GateKind::Rz && b != GateKind::U3) return false;
    return std::all_of(g.params.begin(), g.params.end(),
                       [tol](double t) { return std::abs(t) < tol; });
}

GateInst make_controlled(GateKind base, std::vector<double> params, std::vector<Qubit> controls,
                         Qubit target) {
    GateInst g;
    g.params = std::move(params);
    g.targets = {target};
    g.base = base;
    switch (controls.size()) {
        case 0: g.kind = base; g.base = GateKind::X; break;
        case 1:
            if (base == GateKind::X) g.kind = GateKind::CX;
            else if (base == GateKind::Z) g.kind = GateKind::CZ;
            else if (base == GateKind::Ry) g.kind = GateKind::CRy;
            else g.kind = GateKind::MCU;
            break;
        case 2: g.kind = base == GateKind::X ? GateKind::CCX : GateKind::MCU; break;
        default: g.kind = GateKind::MCU; break;
    }
    if (g.kind != GateKind::MCU) g.base = GateKind::X;
    g.controls = std::move(controls);
    return g;
}

namespace gates {

namespace {
GateInst single(GateKind k, std::vector<double> p, Qubit q) {
    GateInst g;
    g.kind = k;
    g.params = std::move(p);
    g.targets = {q};
    return g;
}
GateInst controlled(GateKind k, std::vector<double> p, std::vector<Qubit> cs, Qubit t) {
    GateInst g = single(k, std::move(p), t);
    g.controls = std::move(cs);
    return g;
}
}  // namespace

GateInst x(Qubit q) { return single(GateKind::X, {}, q); }
GateInst h(Qubit q) { return single(GateKind::H, {}, q); }
GateInst z(Qubit q) { return single(GateKind::Z, {}, q); }
GateInst ry(double theta, Qubit q) { return single(GateKind::Ry, {theta}, q); }
GateInst rz(double theta, Qubit q) { return single(GateKind::Rz, {theta}, q); }
GateInst u3(double theta, double phi, double lambda, Qubit q) {
    return single(GateKind::U3, {theta, phi, lambda}, q);
}
GateInst cx(Qubit c, Qubit t) { return controlled(GateKind::CX, {}, {c}, t); }
GateInst cz(Qubit c, Qubit t) { return controlled(GateKind::CZ, {}, {c}, t); }
GateInst cry(double theta, Qubit c, Qubit t) { return controlled(GateKind::CRy, {theta}, {c}, t); }
GateInst ccx(Qubit c1, Qubit c2, Qubit t) { return controlled(GateKind::CCX, {}, {c1, c2}, t); }
GateInst rccx(Qubit c1, Qubit c2, Qubit t) { return controlled(GateKind::RCCX, {}, {c1, c2}, t); }
GateInst rccxdg(Qubit c1, Qubit c2, Qubit t) {
    return controlled(GateKind::RCCXdg, {}, {c1, c2}, t);
}
GateInst mcu(GateKind base, std::vector<double> params, std::vector<Qubit> controls, Qubit target) {
    GateInst g = controlled(GateKind::MCU, std::move(params), std::move(controls), target);
    g.base = base;
    return g;
}

}  // namespace gates
}  // namespace aqcel
