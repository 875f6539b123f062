#pragma once

#include <stdexcept>
#include <vector>

#include "aqcel/circuit.hpp"

namespace aqcel {

class AncillaExhausted : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Hands out |0> ancillas, lowest index first. Released ancillas must be back
/// in |0>; the uncompute ladder guarantees that.
class AncillaPool {
   public:
    explicit AncillaPool(std::vector<Qubit> free);

    std::vector<Qubit> acquire(std::size_t n);
    void release(const std::vector<Qubit>& qs);
    std::size_t available() const { return free_.size(); }

   private:
    std::vector<Qubit> free_;
};

/// Ladder lowering of a gate with n >= 3 controls: n-1 RCCX gates AND the
/// controls into ancillas (left fold over the control list), one singly
/// controlled base gate on the last ancilla, then the RCCXdg uncompute ladder
/// in reverse. Each compute RCCX is pair-linked with its uncompute partner.
/// Ids are drawn from `next_id`.
std::vector<GateInst> decompose_multi_controlled(const GateInst& g, AncillaPool& pool,
                                                 GateId& next_id);

/// [Ry(t/2), CX, Ry(-t/2), CX] on the target.
std::vector<GateInst> decompose_controlled_ry(const GateInst& g);

/// Margolus three-CX sequence; equals RCCX (and RCCXdg) exactly.
std::vector<GateInst> decompose_rccx(const GateInst& g);

/// Standard six-CX Toffoli network.
std::vector<GateInst> decompose_ccx(const GateInst& g);

/// Lowers every gate with three or more controls using the circuit's ancilla
/// qubits. Gate ids are renumbered to sequence positions.
Circuit lower_multi_controlled(const Circuit& c);

/// Fully expands CRy, CCX and RCCX(dg) into CX plus single-qubit gates after
/// lowering multi-controlled gates. MCU gates with a base other than X/Z/Ry
/// are left as they are.
Circuit lower_to_cx_basis(const Circuit& c);

}  // namespace aqcel
