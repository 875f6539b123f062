#include "aqcel/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

#include "aqcel/lowering.hpp"
#include "aqcel/statevector.hpp"

namespace aqcel {

void OptimizerConfig::validate() const {
    if (!(threshold >= 0.0 && threshold <= 1.0))
        throw std::invalid_argument("threshold must lie in [0, 1]");
    if (backend == BackendMode::Sampled && shots < 1)
        throw std::invalid_argument("sampled backend needs shots >= 1");
}

MeasurementBackend OptimizerConfig::make_backend() const {
    return backend == BackendMode::Exact ? MeasurementBackend::exact()
                                         : MeasurementBackend::sampled(shots, seed);
}

SupportSet filter_support(const Distribution& d, double threshold) {
    if (d.probs.empty()) throw std::invalid_argument("filter_support: empty distribution");
    SupportSet s;
    s.source = SupportSource::Measured;
    for (const auto& [bits, p] : d.probs)
        if (p >= threshold) s.patterns.insert(bits);
    return s;
}

Rewrite reduce_controls(const GateInst& g, const std::set<std::string>& support,
                        bool target_known_zero) {
    const std::size_t n = g.controls.size();
    for (const auto& p : support)
        if (p.size() != n) throw std::invalid_argument("reduce_controls: pattern width mismatch");

    Rewrite r;
    r.gate = g;
    const bool rccx = g.kind == GateKind::RCCX || g.kind == GateKind::RCCXdg;
    const bool phase_pinned =
        rccx && !target_known_zero &&
        std::any_of(support.begin(), support.end(),
                    [](const std::string& p) { return p[0] == '1' && p[1] == '0'; });

    if (!support.count(std::string(n, '1'))) {
        if (phase_pinned) {
            r.kind = Rewrite::Kind::Replace;
            r.gate = gates::cz(g.controls[0], g.targets.front());
            r.gate.id = g.id;
            r.gate.pair_link = g.pair_link;
            r.removed_controls = {g.controls[1]};
            return r;
        }
        r.kind = Rewrite::Kind::Delete;
        r.removed_controls = g.controls;
        return r;
    }
    if (phase_pinned) return r;

    std::vector<std::size_t> keep(n);
    for (std::size_t k = 0; k < n; ++k) keep[k] = k;
    auto removable = [&](std::size_t idx) {
        const std::size_t k = keep[idx];
        for (const auto& p : support) {
            bool others_on = true;
            for (std::size_t j = 0; j < keep.size() && others_on; ++j)
                if (j != idx && p[keep[j]] != '1') others_on = false;
            if (others_on && p[k] != '1') return false;
        }
        return true;
    };
    bool changed = true;
    while (changed && !keep.empty()) {
        changed = false;
        for (std::size_t idx = keep.size(); idx-- > 0;) {
            if (removable(idx)) {
                r.removed_controls.push_back(g.controls[keep[idx]]);
                keep.erase(keep.begin() + static_cast<std::ptrdiff_t>(idx));
                changed = true;
                break;
            }
        }
    }
    if (r.removed_controls.empty()) return r;

    std::vector<Qubit> controls;
    for (std::size_t k : keep) controls.push_back(g.controls[k]);
    r.kind = Rewrite::Kind::Replace;
    r.gate = make_controlled(base_kind(g), g.params, std::move(controls), g.targets.front());
    r.gate.id = g.id;
    r.gate.pair_link = g.pair_link;
    return r;
}

namespace {

/// Rebuilds a circuit from surviving gates, dropping links to removed partners.
Circuit rebuild(const Circuit& like, std::vector<GateInst> gates) {
    std::set<GateId> ids;
    for (const auto& g : gates) ids.insert(g.id);
    Circuit out = like.empty_like();
    for (auto& g : gates) {
        if (g.pair_link && !ids.count(*g.pair_link)) g.pair_link.reset();
        out.append(std::move(g));
    }
    return out;
}

bool shares_qubit(const GateInst& a, const GateInst& b) {
    for (Qubit q : qubits_of(a))
        if (touches(b, q)) return true;
    return false;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

Circuit cancel_inverse_pairs(const Circuit& c, std::size_t* cancelled) {
    std::vector<GateInst> gs;
    for (const auto& g : c.gates())
        if (!is_identity_rotation(g)) gs.push_back(g);

    std::size_t pairs = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<bool> alive(gs.size(), true);
        for (std::size_t i = 0; i < gs.size(); ++i) {
            if (!alive[i]) continue;
            std::size_t j = i + 1;
            while (j < gs.size() && (!alive[j] || !shares_qubit(gs[i], gs[j]))) ++j;
            if (j == gs.size()) continue;
            if (same_action(gs[j], inverse(gs[i]))) {
                alive[i] = alive[j] = false;
                ++pairs;
                changed = true;
            }
        }
        std::vector<GateInst> next;
        for (std::size_t i = 0; i < gs.size(); ++i)
            if (alive[i]) next.push_back(std::move(gs[i]));
        gs = std::move(next);
    }
    if (cancelled) *cancelled = pairs;
    return rebuild(c, std::move(gs));
}

Circuit remove_cx_pairs(const Circuit& c, const LabelTrace& trace, std::size_t* removed) {
    std::vector<GateInst> gs = c.gates();
    std::size_t pairs = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < gs.size() && !changed; ++i) {
            const GateInst& first = gs[i];
            if (first.kind != GateKind::CX) continue;
            const Qubit ctl = first.controls.front(), tgt = first.targets.front();
            auto tr = trace.find(first.id);
            if (tr == trace.end() ||
                tr->second.before.at(static_cast<std::size_t>(tgt)).kind != LabelKind::Zero)
                continue;

            std::size_t j = i + 1;
            bool found = false;
            for (; j < gs.size(); ++j) {
                const GateInst& g = gs[j];
                if (targets_qubit(g, ctl)) break;
                if (targets_qubit(g, tgt)) {
                    found = g.kind == GateKind::CX && g.controls.front() == ctl;
                    break;
                }
            }
            if (!found) continue;

            for (std::size_t k = i + 1; k < j; ++k) {
                GateInst& g = gs[k];
                if (!controls_qubit(g, tgt)) continue;
                std::vector<Qubit> cs;
                for (Qubit q : g.controls) {
                    const Qubit nq = q == tgt ? ctl : q;
                    if (std::find(cs.begin(), cs.end(), nq) == cs.end()) cs.push_back(nq);
                }
                if (cs.size() == g.controls.size()) {
                    g.controls = std::move(cs);
                } else {
                    GateInst ng = make_controlled(base_kind(g), g.params, std::move(cs), g.targets.front());
                    ng.id = g.id;
                    ng.pair_link = g.pair_link;
                    g = std::move(ng);
                }
            }
            gs.erase(gs.begin() + static_cast<std::ptrdiff_t>(j));
            gs.erase(gs.begin() + static_cast<std::ptrdiff_t>(i));
            ++pairs;
            changed = true;
        }
    }
    if (removed) *removed = pairs;
    return rebuild(c, std::move(gs));
}

nlohmann::json OptimizationReport::to_json(bool with_timings) const {
    nlohmann::json j;
    j["measurements_performed"] = measurements_performed;
    j["measurements_skipped"] = measurements_skipped;
    j["gates_deleted"] = gates_deleted;
    j["controls_removed"] = controls_removed;
    j["cx_pairs_removed"] = cx_pairs_removed;
    j["inverse_pairs_cancelled"] = inverse_pairs_cancelled;
    j["two_qubit_before"] = two_qubit_before.lowered;
    j["two_qubit_after"] = two_qubit_after.lowered;
    j["multi_qubit_instances_before"] = two_qubit_before.raw;
    j["multi_qubit_instances_after"] = two_qubit_after.raw;
    if (with_timings) {
        j["timings"] = nlohmann::json::object();
        for (const auto& t : timings) j["timings"][t.pass] = t.seconds;
    }
    if (!label_trace.is_null()) j["label_trace"] = label_trace;
    return j;
}

OptimizationResult optimize(const Circuit& c, std::string_view initial, const OptimizerConfig& cfg) {
    cfg.validate();
    return optimize(c, initial, cfg, cfg.make_backend());
}

namespace {

/// A rewritten compute gate waiting for its uncompute partner.
struct Mirror {
    GateId source;
    bool deleted;
    GateInst rewritten;
};

std::vector<nlohmann::json> labels_json(const std::vector<StateLabel>& ls) {
    std::vector<nlohmann::json> out;
    for (const auto& l : ls) out.emplace_back(to_string(l));
    return out;
}

}  // namespace

OptimizationResult optimize(const Circuit& c, std::string_view initial, const OptimizerConfig& cfg,
                            const MeasurementBackend& backend) {
    cfg.validate();
    if (static_cast<int>(initial.size()) != c.num_qubits())
        throw std::invalid_argument("initial state length does not match circuit qubit count");
    if (initial.find_first_not_of("01") != std::string_view::npos)
        throw std::invalid_argument("initial state must be a 0/1 string");

    OptimizationReport rep;
    rep.two_qubit_before = two_qubit_count(c);
    auto t0 = std::chrono::steady_clock::now();

    const Circuit lowered = lower_multi_controlled(c);
    rep.timings.push_back({"lower", seconds_since(t0)});

    t0 = std::chrono::steady_clock::now();
    std::size_t cancelled = 0;
    const Circuit cleaned = cancel_inverse_pairs(lowered, &cancelled);
    rep.inverse_pairs_cancelled += cancelled;
    rep.timings.push_back({"cancel_inverse_pairs", seconds_since(t0)});

    t0 = std::chrono::steady_clock::now();
    const LabelOptions lopts{cfg.strict_paper, cfg.bell_upgrade};
    LabelStore labels = LabelStore::from_basis(initial, lopts);
    StateVectord state = StateVectord::basis(initial);
    std::vector<GateId> last_write(static_cast<std::size_t>(c.num_qubits()), -1);
    std::map<GateId, Mirror> mirrors;
    LabelTrace trace;
    nlohmann::json trace_log = nlohmann::json::array();
    std::vector<GateInst> out;

    auto emit = [&](const GateInst& g, const std::string& decision, bool reverted_ok) {
        const auto before = labels.labels();
        if (cfg.label_manager) {
            if (!(reverted_ok && labels.revert_on_pair(g))) labels.propagate(g);
        }
        state.apply(g);
        last_write[static_cast<std::size_t>(g.targets.front())] = g.id;
        out.push_back(g);
        if (cfg.label_manager) {
            trace[g.id] = {before, labels.labels(), decision};
            if (cfg.trace_labels)
                trace_log.push_back({{"id", g.id},
                                     {"gate", format_gate(g)},
                                     {"decision", decision},
                                     {"before", labels_json(before)},
                                     {"after", labels_json(labels.labels())}});
        }
    };
    auto log_deleted = [&](const GateInst& g, const std::string& decision) {
        if (cfg.trace_labels && cfg.label_manager)
            trace_log.push_back({{"id", g.id}, {"gate", format_gate(g)}, {"decision", decision}});
    };
    auto remember_for_partner = [&](const GateInst& g, const Rewrite& r) {
        if (!g.pair_link || *g.pair_link < g.id) return;
        mirrors[*g.pair_link] = Mirror{g.id, r.kind == Rewrite::Kind::Delete,
                                       r.kind == Rewrite::Kind::Replace ? r.gate : g};
    };

    for (const GateInst& g : cleaned.gates()) {
        if (g.controls.empty()) {
            emit(g, "none", false);
            continue;
        }

        // Uncompute side of a pair: copy the compute gate's outcome when
        // nothing touched the pair's operands in between.
        if (auto m = mirrors.find(g.id); m != mirrors.end()) {
            const Mirror mir = m->second;
            mirrors.erase(m);
            bool intact = true;
            for (Qubit q : qubits_of(g))
                if (last_write[static_cast<std::size_t>(q)] > mir.source) intact = false;
            if (intact) {
                ++rep.measurements_skipped;
                if (mir.deleted) {
                    ++rep.gates_deleted;
                    log_deleted(g, "mirror-delete");
                    continue;
                }
                GateInst mg = inverse(mir.rewritten);
                mg.id = g.id;
                mg.pair_link = g.pair_link;
                rep.controls_removed += g.controls.size() - mg.controls.size();
                emit(mg, "mirror", true);
                continue;
            }
        }

        const Qubit tgt = g.targets.front();
        const bool compute_side = g.pair_link && *g.pair_link > g.id;
        Rewrite rw;
        rw.gate = g;
        std::string decision;
        bool measured = false;

        if (cfg.label_manager) {
            GateInst cur = g;
            for (;;) {
                const Decision d = classify(labels, cur);
                const bool tz = labels.label(tgt).kind == LabelKind::Zero;
                if (d.kind == DecisionKind::Measure) {
                    decision = "measure";
                    measured = true;
                    ++rep.measurements_performed;
                    const Distribution dist =
                        backend.measure(state, cur.controls, static_cast<std::uint64_t>(g.id));
                    const SupportSet s = filter_support(dist, cfg.threshold);
                    if (s.empty()) {
                        rw.kind = Rewrite::Kind::Delete;
                    } else {
                        labels.apply_measurement_result(cur.controls, s.patterns);
                        rw = reduce_controls(cur, s.patterns, tz);
                        if (rw.kind == Rewrite::Kind::Keep) rw.gate = cur;
                    }
                    break;
                }
                if (d.kind == DecisionKind::KeepAsIs) {
                    rw.kind = Rewrite::Kind::Keep;
                    rw.gate = cur;
                    if (decision.empty()) decision = "keep";
                    break;
                }
                // Delete / strip straight from the labels.
                decision = std::string(decision_name(d.kind));
                rw = reduce_controls(cur, labels.possible_patterns(cur.controls), tz);
                if (rw.kind == Rewrite::Kind::Keep) rw.gate = cur;
                if (rw.kind != Rewrite::Kind::Replace) break;
                cur = rw.gate;
                if (cur.controls.empty()) break;
            }
            if (!measured) ++rep.measurements_skipped;
        } else {
            decision = "measure";
            ++rep.measurements_performed;
            const Distribution dist =
                backend.measure(state, g.controls, static_cast<std::uint64_t>(g.id));
            const SupportSet s = filter_support(dist, cfg.threshold);
            if (s.empty()) {
                rw.kind = Rewrite::Kind::Delete;
                rw.removed_controls = g.controls;
            } else {
                rw = reduce_controls(g, s.patterns, compute_side);
            }
        }

        if (rw.kind == Rewrite::Kind::Delete) {
            ++rep.gates_deleted;
            remember_for_partner(g, rw);
            log_deleted(g, decision + "-delete");
            continue;
        }
        if (!same_action(rw.gate, g)) rw.kind = Rewrite::Kind::Replace;
        rep.controls_removed += g.controls.size() - rw.gate.controls.size();
        remember_for_partner(g, rw);
        emit(rw.gate, decision, false);
    }
    rep.timings.push_back({"scan", seconds_since(t0)});

    Circuit scanned = rebuild(cleaned, std::move(out));

    if (cfg.label_manager) {
        t0 = std::chrono::steady_clock::now();
        std::size_t removed = 0;
        scanned = remove_cx_pairs(scanned, trace, &removed);
        rep.cx_pairs_removed = removed;
        rep.timings.push_back({"remove_cx_pairs", seconds_since(t0)});
    }

    t0 = std::chrono::steady_clock::now();
    Circuit result = cancel_inverse_pairs(scanned, &cancelled);
    rep.inverse_pairs_cancelled += cancelled;
    rep.timings.push_back({"cancel_inverse_pairs_final", seconds_since(t0)});

    rep.two_qubit_after = two_qubit_count(result);
    if (cfg.trace_labels && cfg.label_manager) rep.label_trace = std::move(trace_log);
    return {std::move(result), std::move(rep)};
}

}  // namespace aqcel

