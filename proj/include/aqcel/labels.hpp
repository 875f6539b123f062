#pragma once

#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "aqcel/gate.hpp"

namespace aqcel {

enum class LabelKind { Zero, One, Bell, Superpos, Unknown };

/// Abstract Z-basis description of one qubit.
///   Zero / One   the qubit's support is {0} / {1}
///   Bell(g, p)   for members i, j of group g: bit_i ^ bit_j == p_i ^ p_j
///   Superpos     support within {0, 1}; no further claim
///   Unknown      no claim
struct StateLabel {
    LabelKind kind = LabelKind::Zero;
    int group = -1;
    int parity = 0;

    static StateLabel zero() { return {LabelKind::Zero}; }
    static StateLabel one() { return {LabelKind::One}; }
    static StateLabel superpos() { return {LabelKind::Superpos}; }
    static StateLabel unknown() { return {LabelKind::Unknown}; }
    static StateLabel bell(int group, int parity) { return {LabelKind::Bell, group, parity}; }

    bool operator==(const StateLabel&) const = default;
};

std::string to_string(const StateLabel& l);

class EmptySupport : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

struct LabelOptions {
    /// Diagonal gates send their target to Unknown instead of preserving it.
    bool strict_paper = false;
    /// CX from a Superpos control onto a Zero target forms a new Bell group
    /// instead of labelling the target Superpos.
    bool bell_upgrade = false;
};

/// Last gate that wrote (targeted) a qubit and the label it had before.
struct HistoryRecord {
    GateId last_gate = -1;
    StateLabel before = StateLabel::zero();
};

/// Per-qubit labels, Bell groups and write history for one optimization run.
/// Group ids are never reused.
class LabelStore {
   public:
    explicit LabelStore(int num_qubits, LabelOptions opts = {});
    /// Zero/One labels from a computational basis string (qubit 0 leftmost).
    static LabelStore from_basis(std::string_view bits, LabelOptions opts = {});

    int num_qubits() const { return static_cast<int>(labels_.size()); }
    const StateLabel& label(Qubit q) const { return labels_.at(static_cast<std::size_t>(q)); }
    const std::vector<StateLabel>& labels() const { return labels_; }
    const HistoryRecord& history(Qubit q) const { return history_.at(static_cast<std::size_t>(q)); }
    const LabelOptions& options() const { return opts_; }

    /// Members of a live Bell group (empty if the group is gone).
    std::vector<Qubit> group_members(int group) const;
    std::size_t group_count() const { return groups_.size(); }

    /// Updates labels for a gate as it appears in the output circuit.
    void propagate(const GateInst& g);

    /// Folds a measured support (patterns over `qubits`, char k = qubits[k])
    /// into the labels. Throws EmptySupport when `support` is empty.
    void apply_measurement_result(std::span<const Qubit> qubits,
                                  const std::set<std::string>& support);

    /// Restores the target's pre-partner label when `g`'s pair partner was the
    /// last writer of the target and no control was written since. Returns
    /// false (and changes nothing) otherwise.
    bool revert_on_pair(const GateInst& g);

    /// Z-basis patterns over `qubits` consistent with the current labels.
    std::set<std::string> possible_patterns(std::span<const Qubit> qubits) const;

    /// Debug view of labels and groups.
    nlohmann::json to_json() const;

   private:
    void set_label(Qubit q, StateLabel l);
    void leave_group(Qubit q);
    void record_write(Qubit q, GateId id);
    int new_group();
    void join_group(Qubit q, int group, int parity);
    void apply_single(GateKind base, Qubit t);

    LabelOptions opts_;
    std::vector<StateLabel> labels_;
    std::vector<HistoryRecord> history_;
    std::map<int, std::vector<Qubit>> groups_;
    int next_group_ = 0;
};

enum class DecisionKind { DeleteGate, StripControls, KeepAsIs, Measure };

struct Decision {
    DecisionKind kind = DecisionKind::KeepAsIs;
    /// StripControls: controls to drop. Measure: qubits to measure.
    std::vector<Qubit> qubits;
};

std::string_view decision_name(DecisionKind k);

/// What the labels alone say about a controlled gate.
Decision classify(const LabelStore& store, const GateInst& g);

}  // namespace aqcel
