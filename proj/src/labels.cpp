#include "aqcel/labels.hpp"

#include <algorithm>

namespace aqcel {

std::string to_string(const StateLabel& l) {
    switch (l.kind) {
        case LabelKind::Zero: return "0";
        case LabelKind::One: return "1";
        case LabelKind::Superpos: return "0/1";
        case LabelKind::Unknown: return "unknown";
        case LabelKind::Bell:
            return "Bell(" + std::to_string(l.group) + "," + std::to_string(l.parity) + ")";
    }
    return "?";
}

std::string_view decision_name(DecisionKind k) {
    switch (k) {
        case DecisionKind::DeleteGate: return "delete";
        case DecisionKind::StripControls: return "strip";
        case DecisionKind::KeepAsIs: return "keep";
        case DecisionKind::Measure: return "measure";
    }
    return "?";
}

LabelStore::LabelStore(int num_qubits, LabelOptions opts)
    : opts_(opts),
      labels_(static_cast<std::size_t>(num_qubits), StateLabel::zero()),
      history_(static_cast<std::size_t>(num_qubits)) {}

LabelStore LabelStore::from_basis(std::string_view bits, LabelOptions opts) {
    LabelStore s(static_cast<int>(bits.size()), opts);
    for (std::size_t q = 0; q < bits.size(); ++q) {
        if (bits[q] == '1') s.labels_[q] = StateLabel::one();
        else if (bits[q] != '0') throw std::invalid_argument("initial state must be a 0/1 string");
        s.history_[q].before = s.labels_[q];
    }
    return s;
}

std::vector<Qubit> LabelStore::group_members(int group) const {
    auto it = groups_.find(group);
    return it == groups_.end() ? std::vector<Qubit>{} : it->second;
}

int LabelStore::new_group() { return next_group_++; }

void LabelStore::join_group(Qubit q, int group, int parity) {
    leave_group(q);
    groups_[group].push_back(q);
    labels_[static_cast<std::size_t>(q)] = StateLabel::bell(group, parity);
}

void LabelStore::leave_group(Qubit q) {
    auto& l = labels_[static_cast<std::size_t>(q)];
    if (l.kind != LabelKind::Bell) return;
    auto it = groups_.find(l.group);
    l = StateLabel::superpos();
    if (it == groups_.end()) return;
    auto& members = it->second;
    members.erase(std::remove(members.begin(), members.end(), q), members.end());
    // A group needs two members to say anything.
    if (members.size() < 2) {
        for (Qubit m : members) labels_[static_cast<std::size_t>(m)] = StateLabel::superpos();
        groups_.erase(it);
    }
}

void LabelStore::set_label(Qubit q, StateLabel l) {
    leave_group(q);
    if (l.kind == LabelKind::Bell) {
        join_group(q, l.group, l.parity);
        return;
    }
    labels_[static_cast<std::size_t>(q)] = l;
}

void LabelStore::record_write(Qubit q, GateId id) {
    auto& h = history_[static_cast<std::size_t>(q)];
    h.last_gate = id;
    h.before = labels_[static_cast<std::size_t>(q)];
}

void LabelStore::apply_single(GateKind base, Qubit t) {
    const StateLabel cur = label(t);
    if (base == GateKind::X) {
        switch (cur.kind) {
            case LabelKind::Zero: set_label(t, StateLabel::one()); return;
            case LabelKind::One: set_label(t, StateLabel::zero()); return;
            case LabelKind::Bell:
                labels_[static_cast<std::size_t>(t)].parity ^= 1;
                return;
            default: return;
        }
    }
    if (is_diagonal_kind(base) && !opts_.strict_paper) return;
    set_label(t, StateLabel::unknown());
}

void LabelStore::propagate(const GateInst& g) {
    const Qubit t = g.targets.front();
    record_write(t, g.id);

    std::vector<Qubit> live;
    for (Qubit c : g.controls) {
        const auto k = label(c).kind;
        if (k == LabelKind::Zero) return;  // never fires
        if (k != LabelKind::One) live.push_back(c);
    }
    const GateKind base = base_kind(g);
    if (live.empty()) {
        apply_single(base, t);
        return;
    }
    if (is_diagonal_kind(base) && !opts_.strict_paper) return;

    const StateLabel tl = label(t);
    if (base == GateKind::X && live.size() == 1 && tl.kind == LabelKind::Zero) {
        const StateLabel cl = label(live.front());
        if (cl.kind == LabelKind::Bell) {
            join_group(t, cl.group, cl.parity);
            return;
        }
        if (cl.kind == LabelKind::Superpos) {
            if (opts_.bell_upgrade) {
                const int grp = new_group();
                join_group(live.front(), grp, 0);
                join_group(t, grp, 0);
            } else {
                set_label(t, StateLabel::superpos());
            }
            return;
        }
    }
    set_label(t, StateLabel::unknown());
}

void LabelStore::apply_measurement_result(std::span<const Qubit> qubits,
                                          const std::set<std::string>& support) {
    if (support.empty()) throw EmptySupport("measurement support is empty");
    for (const auto& p : support)
        if (p.size() != qubits.size()) throw std::invalid_argument("support pattern width mismatch");

    if (qubits.size() == 2) {
        const std::set<std::string> even{"00", "11"}, odd{"01", "10"};
        if (support == even || support == odd) {
            const int rel = support == odd ? 1 : 0;
            const Qubit a = qubits[0], b = qubits[1];
            const StateLabel la = label(a), lb = label(b);
            if (la.kind == LabelKind::Bell && lb.kind == LabelKind::Bell) {
                if (la.group == lb.group) return;
                // Fold b's group into a's, shifting parities so the new relation holds.
                const int offset = lb.parity ^ la.parity ^ rel;
                const auto moved = groups_.extract(lb.group);
                for (Qubit m : moved.mapped()) {
                    const int p = label(m).parity ^ offset;
                    groups_[la.group].push_back(m);
                    labels_[static_cast<std::size_t>(m)] = StateLabel::bell(la.group, p);
                }
                return;
            }
            if (la.kind == LabelKind::Bell) {
                join_group(b, la.group, la.parity ^ rel);
                return;
            }
            if (lb.kind == LabelKind::Bell) {
                join_group(a, lb.group, lb.parity ^ rel);
                return;
            }
            const int grp = new_group();
            join_group(a, grp, 0);
            join_group(b, grp, rel);
            return;
        }
    }
    for (std::size_t k = 0; k < qubits.size(); ++k) {
        bool saw0 = false, saw1 = false;
        for (const auto& p : support) (p[k] == '1' ? saw1 : saw0) = true;
        const Qubit q = qubits[k];
        if (saw0 && saw1) {
            if (label(q).kind != LabelKind::Bell) set_label(q, StateLabel::superpos());
        } else {
            set_label(q, saw1 ? StateLabel::one() : StateLabel::zero());
        }
    }
}

bool LabelStore::revert_on_pair(const GateInst& g) {
    if (!g.pair_link) return false;
    const GateId partner = *g.pair_link;
    const Qubit t = g.targets.front();
    if (history(t).last_gate != partner) return false;
    for (Qubit c : g.controls)
        if (history(c).last_gate > partner) return false;
    StateLabel restored = history(t).before;
    // The old group may have moved on since; only the support claim survives.
    if (restored.kind == LabelKind::Bell) restored = StateLabel::superpos();
    record_write(t, g.id);
    set_label(t, restored);
    return true;
}

std::set<std::string> LabelStore::possible_patterns(std::span<const Qubit> qubits) const {
    const std::size_t k = qubits.size();
    std::set<std::string> out;
    for (std::size_t m = 0; m < (std::size_t(1) << k); ++m) {
        std::string bits(k, '0');
        bool ok = true;
        for (std::size_t j = 0; j < k && ok; ++j) {
            const int b = static_cast<int>((m >> j) & 1U);
            bits[j] = b ? '1' : '0';
            const auto& l = label(qubits[j]);
            if (l.kind == LabelKind::Zero && b != 0) ok = false;
            if (l.kind == LabelKind::One && b != 1) ok = false;
        }
        for (std::size_t i = 0; i < k && ok; ++i)
            for (std::size_t j = i + 1; j < k && ok; ++j) {
                const auto& li = label(qubits[i]);
                const auto& lj = label(qubits[j]);
                if (li.kind == LabelKind::Bell && lj.kind == LabelKind::Bell && li.group == lj.group) {
                    const int bi = bits[i] - '0', bj = bits[j] - '0';
                    if ((bi ^ bj) != (li.parity ^ lj.parity)) ok = false;
                }
            }
        if (ok) out.insert(bits);
    }
    return out;
}

nlohmann::json LabelStore::to_json() const {
    nlohmann::json j;
    j["labels"] = nlohmann::json::array();
    for (const auto& l : labels_) j["labels"].push_back(to_string(l));
    j["groups"] = nlohmann::json::object();
    for (const auto& [g, members] : groups_) j["groups"][std::to_string(g)] = members;
    return j;
}

Decision classify(const LabelStore& store, const GateInst& g) {
    Decision d;
    const auto& cs = g.controls;
    std::vector<Qubit> ones;
    bool unknown = false;
    for (Qubit c : cs) {
        const auto k = store.label(c).kind;
        if (k == LabelKind::Zero) return {DecisionKind::DeleteGate, {}};
        if (k == LabelKind::One) ones.push_back(c);
        if (k == LabelKind::Unknown) unknown = true;
    }
    // Bell pairs in one group: always equal or never equal.
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
            const auto& li = store.label(cs[i]);
            const auto& lj = store.label(cs[j]);
            if (li.kind == LabelKind::Bell && lj.kind == LabelKind::Bell && li.group == lj.group) {
                if (li.parity != lj.parity) return {DecisionKind::DeleteGate, {}};
                if (!unknown) return {DecisionKind::StripControls, {cs[j]}};
            }
        }
    if (unknown) return {DecisionKind::Measure, cs};
    if (!ones.empty()) return {DecisionKind::StripControls, ones};
    if (cs.size() == 1) return {DecisionKind::KeepAsIs, {}};
    return {DecisionKind::Measure, cs};
}

}  // namespace aqcel
