#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qsl {

enum class WireRole : uint8_t { Input, Output };

struct WireId {
    uint32_t index = 0;
    WireRole role = WireRole::Input;
    friend bool operator==(const WireId &, const WireId &) = default;
};

enum class OpKind : uint8_t { Prepare, X, Z, H, S, CNOT, Toffoli, Fredkin, CR2, Measure };

std::string_view op_name(OpKind kind);
/// Number of quantum wires an operation of this kind acts on.
size_t op_arity(OpKind kind);

struct Operation {
    OpKind kind = OpKind::X;
    std::vector<uint32_t> wires;
    /// Outcome slot read as the classical control (CR2 only).
    std::optional<uint32_t> classical_in;
    /// Outcome slot written (Measure only).
    std::optional<uint32_t> classical_out;
    /// Source value (Prepare only).
    bool value = false;

    static Operation prepare(uint32_t wire, bool value);
    static Operation gate(OpKind kind, std::vector<uint32_t> wires);
    static Operation cr2(uint32_t control_slot, uint32_t wire);
    static Operation measure(uint32_t wire, uint32_t slot);

    std::string str() const;
};

/// An ordered gate list over quantum wires plus classical outcome slots.
struct Circuit {
    std::vector<WireId> wires;
    std::vector<Operation> operations;
    uint32_t num_slots = 0;

    size_t num_wires() const {
        return wires.size();
    }
    /// Wires with the given role, in index order.
    std::vector<uint32_t> wires_with_role(WireRole role) const;

    void append(Operation op) {
        operations.push_back(std::move(op));
    }
};

struct ValidationError {
    size_t op_index;
    std::string message;
};

/// Checks wire arity, wire range, wire distinctness, classical slot ranges,
/// that every slot is written exactly once, and that classical controls only
/// read slots written by an earlier Measure. Never throws.
std::vector<ValidationError> validate(const Circuit &circuit);

/// Throws std::invalid_argument listing every violation, if any.
void require_valid(const Circuit &circuit);

}  // namespace qsl
