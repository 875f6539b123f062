#include "aqcel/lowering.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace aqcel {

AncillaPool::AncillaPool(std::vector<Qubit> free) : free_(std::move(free)) {
    std::sort(free_.begin(), free_.end());
}

std::vector<Qubit> AncillaPool::acquire(std::size_t n) {
    if (n > free_.size())
        throw AncillaExhausted("need " + std::to_string(n) + " ancillas, " +
                               std::to_string(free_.size()) + " available");
    std::vector<Qubit> out(free_.begin(), free_.begin() + static_cast<std::ptrdiff_t>(n));
    free_.erase(free_.begin(), free_.begin() + static_cast<std::ptrdiff_t>(n));
    return out;
}

void AncillaPool::release(const std::vector<Qubit>& qs) {
    free_.insert(free_.end(), qs.begin(), qs.end());
    std::sort(free_.begin(), free_.end());
}

std::vector<GateInst> decompose_multi_controlled(const GateInst& g, AncillaPool& pool,
                                                 GateId& next_id) {
    const std::size_t n = g.controls.size();
    if (n < 3) throw std::invalid_argument("decompose_multi_controlled: needs >= 3 controls");
    const Qubit target = g.targets.front();
    const auto anc = pool.acquire(n - 1);

    std::vector<GateInst> compute;
    compute.push_back(gates::rccx(g.controls[0], g.controls[1], anc[0]));
    for (std::size_t k = 2; k < n; ++k) compute.push_back(gates::rccx(anc[k - 2], g.controls[k], anc[k - 1]));

    std::vector<GateInst> out;
    for (auto& r : compute) {
        r.id = next_id++;
        out.push_back(r);
    }
    GateInst core = make_controlled(base_kind(g), g.params, {anc.back()}, target);
    core.id = next_id++;
    out.push_back(core);
    for (std::size_t k = compute.size(); k-- > 0;) {
        GateInst u = inverse(compute[k]);
        u.id = next_id++;
        u.pair_link = compute[k].id;
        out[k].pair_link = u.id;
        out.push_back(u);
    }
    pool.release(anc);
    return out;
}

std::vector<GateInst> decompose_controlled_ry(const GateInst& g) {
    if (g.kind != GateKind::CRy) throw std::invalid_argument("decompose_controlled_ry: not a CRy");
    const double theta = g.params.at(0);
    const Qubit c = g.controls.front(), t = g.targets.front();
    return {gates::ry(theta / 2, t), gates::cx(c, t), gates::ry(-theta / 2, t), gates::cx(c, t)};
}

std::vector<GateInst> decompose_rccx(const GateInst& g) {
    if (g.kind != GateKind::RCCX && g.kind != GateKind::RCCXdg)
        throw std::invalid_argument("decompose_rccx: not an RCCX");
    const Qubit c1 = g.controls[0], c2 = g.controls[1], t = g.targets.front();
    const double q = M_PI / 4;
    std::vector<GateInst> seq{gates::ry(q, t),  gates::cx(c2, t), gates::ry(q, t),
                              gates::cx(c1, t), gates::ry(-q, t), gates::cx(c2, t),
                              gates::ry(-q, t)};
    if (g.kind == GateKind::RCCXdg) {
        std::reverse(seq.begin(), seq.end());
        for (auto& s : seq) s = inverse(s);
    }
    return seq;
}

std::vector<GateInst> decompose_ccx(const GateInst& g) {
    if (g.kind != GateKind::CCX) throw std::invalid_argument("decompose_ccx: not a CCX");
    const Qubit a = g.controls[0], b = g.controls[1], c = g.targets.front();
    auto t = [](Qubit q) { return GateInst{GateKind::T, GateKind::X, {}, {}, {q}, -1, std::nullopt}; };
    auto tdg = [](Qubit q) {
        return GateInst{GateKind::Tdg, GateKind::X, {}, {}, {q}, -1, std::nullopt};
    };
    return {gates::h(c), gates::cx(b, c), tdg(c),        gates::cx(a, c), t(c),
            gates::cx(b, c), tdg(c),      gates::cx(a, c), t(b),          t(c),
            gates::h(c), gates::cx(a, b), t(a),          tdg(b),          gates::cx(a, b)};
}

Circuit lower_multi_controlled(const Circuit& c) {
    std::set<Qubit> used;
    for (const auto& g : c.gates())
        for (Qubit q : qubits_of(g)) used.insert(q);
    std::vector<Qubit> free;
    for (Qubit q : c.ancilla_qubits())
        if (!used.count(q)) free.push_back(q);
    AncillaPool pool(free);

    // Existing pair links survive the renumbering through this map.
    std::vector<GateInst> seq;
    std::vector<bool> carried;
    std::map<GateId, GateId> renumbered;
    GateId next = 0;
    for (const auto& g : c.gates()) {
        if (g.controls.size() >= 3) {
            for (auto& d : decompose_multi_controlled(g, pool, next)) {
                seq.push_back(std::move(d));
                carried.push_back(false);
            }
        } else {
            GateInst copy = g;
            copy.id = next++;
            renumbered[g.id] = copy.id;
            seq.push_back(std::move(copy));
            carried.push_back(true);
        }
    }
    Circuit out(c.num_qubits());
    for (Qubit q = 0; q < c.num_qubits(); ++q) out.set_role(q, c.role(q));
    for (std::size_t i = 0; i < seq.size(); ++i) {
        GateInst& g = seq[i];
        if (carried[i] && g.pair_link) {
            auto it = renumbered.find(*g.pair_link);
            if (it == renumbered.end()) g.pair_link.reset();
            else g.pair_link = it->second;
        }
        out.append(std::move(g));
    }
    return out;
}

Circuit lower_to_cx_basis(const Circuit& c) {
    const Circuit lowered = lower_multi_controlled(c);
    Circuit out(c.num_qubits());
    for (Qubit q = 0; q < c.num_qubits(); ++q) out.set_role(q, c.role(q));
    for (const auto& g : lowered.gates()) {
        std::vector<GateInst> seq;
        switch (g.kind) {
            case GateKind::CRy: seq = decompose_controlled_ry(g); break;
            case GateKind::RCCX:
            case GateKind::RCCXdg: seq = decompose_rccx(g); break;
            case GateKind::CCX: seq = decompose_ccx(g); break;
            default: {
                GateInst copy = g;
                copy.id = -1;
                copy.pair_link.reset();
                seq.push_back(copy);
            }
        }
        for (auto& s : seq) out.append(std::move(s));
    }
    return out;
}

}  // namespace aqcel
