#include "qsl/circuit.h"

#include <set>
#include <sstream>
#include <stdexcept>

namespace qsl {

std::string_view op_name(OpKind kind) {
    switch (kind) {
        case OpKind::Prepare:
            return "PREPARE";
        case OpKind::X:
            return "X";
        case OpKind::Z:
            return "Z";
        case OpKind::H:
            return "H";
        case OpKind::S:
            return "S";
        case OpKind::CNOT:
            return "CNOT";
        case OpKind::Toffoli:
            return "TOFFOLI";
        case OpKind::Fredkin:
            return "FREDKIN";
        case OpKind::CR2:
            return "CR2";
        case OpKind::Measure:
            return "MEASURE";
    }
    return "?";
}

size_t op_arity(OpKind kind) {
    switch (kind) {
        case OpKind::CNOT:
            return 2;
        case OpKind::Toffoli:
        case OpKind::Fredkin:
            return 3;
        default:
            return 1;
    }
}

Operation Operation::prepare(uint32_t wire, bool value) {
    Operation op;
    op.kind = OpKind::Prepare;
    op.wires = {wire};
    op.value = value;
    return op;
}

Operation Operation::gate(OpKind kind, std::vector<uint32_t> wires) {
    Operation op;
    op.kind = kind;
    op.wires = std::move(wires);
    return op;
}

Operation Operation::cr2(uint32_t control_slot, uint32_t wire) {
    Operation op;
    op.kind = OpKind::CR2;
    op.wires = {wire};
    op.classical_in = control_slot;
    return op;
}

Operation Operation::measure(uint32_t wire, uint32_t slot) {
    Operation op;
    op.kind = OpKind::Measure;
    op.wires = {wire};
    op.classical_out = slot;
    return op;
}

std::string Operation::str() const {
    std::ostringstream out;
    out << op_name(kind);
    if (kind == OpKind::Prepare) {
        out << '(' << value << ')';
    }
    if (classical_in) {
        out << " c" << *classical_in;
    }
    for (auto w : wires) {
        out << ' ' << w;
    }
    if (classical_out) {
        out << " -> c" << *classical_out;
    }
    return out.str();
}

std::vector<uint32_t> Circuit::wires_with_role(WireRole role) const {
    std::vector<uint32_t> result;
    for (const auto &w : wires) {
        if (w.role == role) {
            result.push_back(w.index);
        }
    }
    return result;
}

std::vector<ValidationError> validate(const Circuit &circuit) {
    std::vector<ValidationError> errors;
    auto fail = [&](size_t i, std::string msg) {
        errors.push_back({i, std::move(msg)});
    };

    for (size_t i = 0; i < circuit.wires.size(); ++i) {
        if (circuit.wires[i].index != i) {
            fail(SIZE_MAX, "wire table entry " + std::to_string(i) + " has index " +
                               std::to_string(circuit.wires[i].index));
        }
    }

    std::vector<bool> written(circuit.num_slots, false);
    for (size_t i = 0; i < circuit.operations.size(); ++i) {
        const Operation &op = circuit.operations[i];
        if (op.wires.size() != op_arity(op.kind)) {
            fail(i, std::string(op_name(op.kind)) + " expects " + std::to_string(op_arity(op.kind)) +
                        " wire(s), got " + std::to_string(op.wires.size()));
        }
        std::set<uint32_t> seen;
        for (auto w : op.wires) {
            if (w >= circuit.num_wires()) {
                fail(i, "wire out of range: " + std::to_string(w));
            }
            if (!seen.insert(w).second) {
                fail(i, "duplicate wire: " + std::to_string(w));
            }
        }

        if (op.kind == OpKind::CR2) {
            if (!op.classical_in) {
                fail(i, "CR2 without classical control");
            } else if (*op.classical_in >= circuit.num_slots) {
                fail(i, "classical slot out of range: " + std::to_string(*op.classical_in));
            } else if (!written[*op.classical_in]) {
                fail(i, "classical dependency order: slot " + std::to_string(*op.classical_in) +
                            " is read before it is measured");
            }
        } else if (op.classical_in) {
            fail(i, std::string(op_name(op.kind)) + " cannot take a classical control");
        }

        if (op.kind == OpKind::Measure) {
            if (!op.classical_out) {
                fail(i, "MEASURE without outcome slot");
            } else if (*op.classical_out >= circuit.num_slots) {
                fail(i, "classical slot out of range: " + std::to_string(*op.classical_out));
            } else if (written[*op.classical_out]) {
                fail(i, "outcome slot written twice: " + std::to_string(*op.classical_out));
            } else {
                written[*op.classical_out] = true;
            }
        } else if (op.classical_out) {
            fail(i, std::string(op_name(op.kind)) + " cannot write an outcome slot");
        }
    }
    for (uint32_t s = 0; s < circuit.num_slots; ++s) {
        if (!written[s]) {
            fail(SIZE_MAX, "outcome slot never written: " + std::to_string(s));
        }
    }
    return errors;
}

void require_valid(const Circuit &circuit) {
    auto errors = validate(circuit);
    if (errors.empty()) {
        return;
    }
    std::ostringstream msg;
    msg << "invalid circuit:";
    for (const auto &e : errors) {
        msg << "\n  ";
        if (e.op_index != SIZE_MAX) {
            msg << "op " << e.op_index << ": ";
        }
        msg << e.message;
    }
    throw std::invalid_argument(msg.str());
}

}  // namespace qsl
