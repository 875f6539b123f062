#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aqcel/gate.hpp"

namespace aqcel {

enum class QubitRole { Data, Ancilla };

class ParseError : public std::runtime_error {
   public:
    ParseError(int line, int column, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

   private:
    int line_;
    int column_;
};

/// Ordered gate list over `num_qubits` indexed qubits. Gate ids strictly
/// increase along the sequence; `append` assigns the next id when the gate
/// does not carry one.
class Circuit {
   public:
    Circuit() = default;
    explicit Circuit(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    const std::vector<GateInst>& gates() const { return gates_; }
    std::size_t size() const { return gates_.size(); }
    bool empty() const { return gates_.empty(); }
    const GateInst& operator[](std::size_t i) const { return gates_[i]; }

    QubitRole role(Qubit q) const { return roles_.at(static_cast<std::size_t>(q)); }
    const std::vector<QubitRole>& roles() const { return roles_; }
    void set_role(Qubit q, QubitRole r);
    std::vector<Qubit> data_qubits() const;
    std::vector<Qubit> ancilla_qubits() const;

    /// Validates the gate against this circuit and appends it.
    GateId append(GateInst g);
    GateId next_id() const { return next_id_; }

    /// Sequence index of the gate with this id, or -1.
    std::ptrdiff_t index_of(GateId id) const;

    /// Same qubit count and roles, no gates.
    Circuit empty_like() const;

   private:
    int num_qubits_ = 0;
    std::vector<QubitRole> roles_;
    std::vector<GateInst> gates_;
    GateId next_id_ = 0;
};

/// Gate-for-gate equality: qubit count, roles, and per gate the kind,
/// operands, parameters and the sequence position of the pair partner.
bool operator==(const Circuit& a, const Circuit& b);

struct TwoQubitCount {
    /// Two-qubit gates after lowering CRy, CCX, RCCX and MCU to CX plus
    /// single-qubit gates.
    std::size_t lowered = 0;
    /// Gate instances acting on two or more qubits, as written.
    std::size_t raw = 0;
};

/// CX count of one gate once lowered to the CX + single-qubit basis.
std::size_t lowered_two_qubit_cost(const GateInst& g);
TwoQubitCount two_qubit_count(const Circuit& c);

/// One gate in circuit-file syntax, without the pair-link suffix.
std::string format_gate(const GateInst& g);

Circuit parse_circuit(std::string_view text);
std::string emit_circuit(const Circuit& c);

Circuit read_circuit_file(const std::string& path);
void write_circuit_file(const Circuit& c, const std::string& path);

}  // namespace aqcel
