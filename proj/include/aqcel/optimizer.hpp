#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "aqcel/circuit.hpp"
#include "aqcel/labels.hpp"
#include "aqcel/measurement.hpp"

namespace aqcel {

struct OptimizerConfig {
    /// Measured patterns with probability strictly below this are ignored.
    double threshold = 0.0;
    BackendMode backend = BackendMode::Exact;
    std::size_t shots = 100000;
    std::uint64_t seed = 0;
    /// Off reproduces the measure-every-controlled-gate protocol without
    /// labels or CX-pair removal.
    bool label_manager = true;
    bool strict_paper = false;
    bool bell_upgrade = false;
    bool trace_labels = false;

    /// Throws std::invalid_argument on out-of-range settings.
    void validate() const;
    MeasurementBackend make_backend() const;
};

enum class SupportSource { Measured, LabelDerived };

struct SupportSet {
    std::set<std::string> patterns;
    SupportSource source = SupportSource::Measured;
    bool empty() const { return patterns.empty(); }
};

/// Keeps patterns with probability >= threshold. No renormalisation.
SupportSet filter_support(const Distribution& d, double threshold);

struct Rewrite {
    enum class Kind { Delete, Replace, Keep };
    Kind kind = Kind::Keep;
    GateInst gate;
    std::vector<Qubit> removed_controls;
};

/// Greedy control removal against a support set (pattern char k =
/// controls[k]). A control is dropped when every pattern whose other
/// remaining controls are all 1 has it set to 1; controls are tried from
/// last to first until nothing changes. No all-ones pattern deletes the gate.
///
/// RCCX carries a -1 phase on |c1=1, c2=0, t=1>. Unless `target_known_zero`,
/// a reachable c1=1,c2=0 pattern pins that phase: the gate then stays as is,
/// or becomes CZ(c1, t) when the all-ones pattern is absent.
Rewrite reduce_controls(const GateInst& g, const std::set<std::string>& support,
                        bool target_known_zero = false);

/// Removes adjacent g, g^-1 pairs on identical operands (nothing in between
/// touches them) and zero-angle rotations, to a fixpoint.
Circuit cancel_inverse_pairs(const Circuit& c, std::size_t* cancelled = nullptr);

/// Labels of every qubit just before and after each emitted gate, by gate id.
struct LabelTraceEntry {
    std::vector<StateLabel> before;
    std::vector<StateLabel> after;
    std::string decision;
};
using LabelTrace = std::map<GateId, LabelTraceEntry>;

/// Drops CX(c,t) ... CX(c,t) pairs whose target was Zero before the first CX,
/// is only used as a control in between, and whose control is not written in
/// between. Gates in between controlled on t are re-controlled on c. Repeats
/// until no pair qualifies.
Circuit remove_cx_pairs(const Circuit& c, const LabelTrace& trace, std::size_t* removed = nullptr);

struct PassTiming {
    std::string pass;
    double seconds = 0;
};

struct OptimizationReport {
    std::size_t measurements_performed = 0;
    std::size_t measurements_skipped = 0;
    std::size_t gates_deleted = 0;
    std::size_t controls_removed = 0;
    std::size_t cx_pairs_removed = 0;
    std::size_t inverse_pairs_cancelled = 0;
    TwoQubitCount two_qubit_before;
    TwoQubitCount two_qubit_after;
    std::vector<PassTiming> timings;
    /// Per-gate label log; filled when tracing is on.
    nlohmann::json label_trace;

    nlohmann::json to_json(bool with_timings = true) const;
};

struct OptimizationResult {
    Circuit circuit;
    OptimizationReport report;
};

/// Lower, cancel, scan (labels + measurements + control removal + pair
/// mirroring), remove CX pairs, cancel again. `initial` is a basis string,
/// qubit 0 leftmost.
OptimizationResult optimize(const Circuit& c, std::string_view initial, const OptimizerConfig& cfg);
OptimizationResult optimize(const Circuit& c, std::string_view initial, const OptimizerConfig& cfg,
                            const MeasurementBackend& backend);

}  // namespace aqcel
