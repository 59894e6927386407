#include "qsl/circuit.h"

#include <gtest/gtest.h>

#include "qsl/shor.h"

using namespace qsl;

namespace {

Circuit two_wires(uint32_t slots = 1) {
    Circuit c;
    c.wires = {{0, WireRole::Input}, {1, WireRole::Input}};
    c.num_slots = slots;
    return c;
}

bool mentions(const std::vector<ValidationError> &errors, std::string_view text) {
    for (const auto &e : errors) {
        if (e.message.find(text) != std::string::npos) {
            return true;
        }
    }
    return false;
}

}  // namespace

TEST(validate, accepts_simple_circuit) {
    Circuit c = two_wires();
    c.append(Operation::prepare(0, false));
    c.append(Operation::prepare(1, true));
    c.append(Operation::gate(OpKind::CNOT, {0, 1}));
    c.append(Operation::measure(1, 0));
    EXPECT_TRUE(validate(c).empty());
}

TEST(validate, duplicate_wire) {
    Circuit c = two_wires();
    c.append(Operation::gate(OpKind::CNOT, {1, 1}));
    c.append(Operation::measure(0, 0));
    auto errors = validate(c);
    ASSERT_EQ(errors.size(), 1u);
    EXPECT_EQ(errors[0].op_index, 0u);
    EXPECT_TRUE(mentions(errors, "duplicate wire"));
}

TEST(validate, classical_dependency_order) {
    Circuit c = two_wires(2);
    c.append(Operation::measure(0, 0));
    c.append(Operation::cr2(1, 0));
    c.append(Operation::measure(1, 1));
    auto errors = validate(c);
    ASSERT_EQ(errors.size(), 1u);
    EXPECT_EQ(errors[0].op_index, 1u);
    EXPECT_TRUE(mentions(errors, "classical dependency order"));
}

TEST(validate, arity_range_and_slots) {
    Circuit c = two_wires(2);
    c.append(Operation::gate(OpKind::Toffoli, {0, 1}));
    c.append(Operation::gate(OpKind::H, {5}));
    c.append(Operation::measure(0, 0));
    c.append(Operation::measure(1, 0));
    Operation stray = Operation::gate(OpKind::X, {0});
    stray.classical_out = 1;
    c.append(stray);
    auto errors = validate(c);
    EXPECT_TRUE(mentions(errors, "expects 3 wire(s)"));
    EXPECT_TRUE(mentions(errors, "wire out of range"));
    EXPECT_TRUE(mentions(errors, "written twice"));
    EXPECT_TRUE(mentions(errors, "cannot write an outcome slot"));
    EXPECT_TRUE(mentions(errors, "never written: 1"));
    EXPECT_THROW(require_valid(c), std::invalid_argument);
}

TEST(validate, cr2_needs_a_control) {
    Circuit c = two_wires();
    c.append(Operation::gate(OpKind::CR2, {0}));
    c.append(Operation::measure(0, 0));
    EXPECT_TRUE(mentions(validate(c), "without classical control"));
}

TEST(validate, shor_circuits_are_well_formed) {
    for (uint64_t a : shor::kBases) {
        auto sub = shor::build_subroutine(shor::ShorParams::make(a));
        EXPECT_TRUE(validate(sub.circuit).empty()) << "a=" << a;
        EXPECT_EQ(sub.circuit.wires_with_role(WireRole::Input).size(), 8u);
        EXPECT_EQ(sub.circuit.wires_with_role(WireRole::Output).size(), 4u);
    }
}
