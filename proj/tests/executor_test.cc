#include "qsl/executor.h"

#include <gtest/gtest.h>

#include <cmath>

#include "qsl/shor.h"
#include "qsl_enumerator.h"

using namespace qsl;

namespace {

Circuit single_qubit(std::initializer_list<OpKind> gates) {
    Circuit c;
    c.wires = {{0, WireRole::Input}};
    c.num_slots = 1;
    c.append(Operation::prepare(0, false));
    for (auto g : gates) {
        c.append(Operation::gate(g, {0}));
    }
    c.append(Operation::measure(0, 0));
    return c;
}

OutcomeLayout one_bit() {
    return {{0}, 1};
}

// A Clifford circuit exercising kickback: H on both, CNOT, H on both.
Circuit kickback_circuit() {
    Circuit c;
    c.wires = {{0, WireRole::Input}, {1, WireRole::Input}, {2, WireRole::Output}};
    c.num_slots = 3;
    c.append(Operation::prepare(0, false));
    c.append(Operation::prepare(1, false));
    c.append(Operation::prepare(2, true));
    c.append(Operation::gate(OpKind::H, {0}));
    c.append(Operation::gate(OpKind::H, {2}));
    c.append(Operation::gate(OpKind::CNOT, {0, 2}));
    c.append(Operation::gate(OpKind::Toffoli, {0, 1, 2}));
    c.append(Operation::gate(OpKind::S, {1}));
    c.append(Operation::gate(OpKind::H, {0}));
    c.append(Operation::measure(0, 0));
    c.append(Operation::cr2(0, 1));
    c.append(Operation::gate(OpKind::H, {1}));
    c.append(Operation::measure(1, 1));
    c.append(Operation::gate(OpKind::Z, {2}));
    c.append(Operation::gate(OpKind::X, {2}));
    c.append(Operation::measure(2, 2));
    return c;
}

}  // namespace

TEST(run_shot, hh_is_identity) {
    auto c = single_qubit({OpKind::H, OpKind::H});
    for (uint64_t shot = 0; shot < 1000; ++shot) {
        EXPECT_EQ(run_shot(c, 1, shot), std::vector<uint8_t>{0});
    }
}

TEST(run_shot, h_gives_fair_coin) {
    auto h = sample(single_qubit({OpKind::H}), 100000, 8, one_bit());
    EXPECT_NEAR(h.frequency(1), 0.5, 0.005);
}

TEST(run_shot, deterministic) {
    auto sub = shor::build_subroutine(shor::ShorParams::make(7));
    for (uint64_t shot = 0; shot < 50; ++shot) {
        EXPECT_EQ(run_shot(sub.circuit, 99, shot), run_shot(sub.circuit, 99, shot));
    }
}

TEST(run_shot, rejects_invalid_circuit) {
    Circuit c;
    c.wires = {{0, WireRole::Input}};
    c.append(Operation::gate(OpKind::CNOT, {0, 0}));
    EXPECT_THROW(run_shot(c, 0, 0), std::invalid_argument);
}

TEST(sample, empty_sample_is_an_error) {
    EXPECT_THROW(sample(single_qubit({OpKind::H}), 0, 1, one_bit()), std::invalid_argument);
}

TEST(sample, conservation_and_range) {
    auto sub = shor::build_subroutine(shor::ShorParams::make(13));
    auto h = sample(sub.circuit, 12345, 3, sub.layout);
    uint64_t total = 0;
    for (auto [m, n] : h.counts) {
        EXPECT_LT(m, 256u);
        total += n;
    }
    EXPECT_EQ(total, 12345u);
    EXPECT_EQ(h.shots, 12345u);
}

TEST(sample, scalar_matches_bit_sliced) {
    std::vector<std::pair<Circuit, OutcomeLayout>> cases;
    for (uint64_t a : {2, 7, 11}) {
        auto sub = shor::build_subroutine(shor::ShorParams::make(a));
        cases.emplace_back(sub.circuit, sub.layout);
    }
    cases.emplace_back(kickback_circuit(), OutcomeLayout{{0, 1, 2}, 3});
    for (const auto &[circuit, layout] : cases) {
        SampleOptions scalar{.threads = 1, .executor = ExecutorKind::Scalar};
        SampleOptions sliced{.threads = 1, .executor = ExecutorKind::BitSliced};
        // 10007 is not a multiple of 64: exercises the partial last batch.
        EXPECT_EQ(sample(circuit, 10007, 17, layout, scalar), sample(circuit, 10007, 17, layout, sliced));
    }
}

TEST(sample, shot_by_shot_agreement_with_run_shot) {
    auto sub = shor::build_subroutine(shor::ShorParams::make(8));
    for (uint64_t shot = 0; shot < 200; ++shot) {
        SampleOptions one{.threads = 1, .executor = ExecutorKind::BitSliced, .first_shot = shot};
        auto h = sample(sub.circuit, 1, 5, sub.layout, one);
        uint64_t m = sub.layout.assemble(run_shot(sub.circuit, 5, shot));
        EXPECT_EQ(h.count(m), 1u) << "shot " << shot;
    }
}

TEST(sample, thread_count_does_not_change_result) {
    auto sub = shor::build_subroutine(shor::ShorParams::make(7));
    auto base = sample(sub.circuit, 200000, 21, sub.layout, {.threads = 1});
    EXPECT_EQ(base, sample(sub.circuit, 200000, 21, sub.layout, {.threads = 4}));
    EXPECT_EQ(base, sample(sub.circuit, 200000, 21, sub.layout, {.threads = 3, .executor = ExecutorKind::Scalar}));
}

TEST(sample, adjacent_shot_ranges_merge_exactly) {
    auto sub = shor::build_subroutine(shor::ShorParams::make(8));
    auto whole = sample(sub.circuit, 100000, 4, sub.layout);
    auto first = sample(sub.circuit, 50000, 4, sub.layout);
    auto second = sample(sub.circuit, 50000, 4, sub.layout, {.first_shot = 50000});
    EXPECT_EQ(merge(first, second), whole);
}

TEST(sample, disjoint_seeds_merge_statistically) {
    auto sub = shor::build_subroutine(shor::ShorParams::make(7));
    auto big = sample(sub.circuit, 200000, 1000, sub.layout);
    auto merged = merge(sample(sub.circuit, 100000, 1, sub.layout), sample(sub.circuit, 100000, 2, sub.layout));
    EXPECT_EQ(merged.shots, big.shots);
    for (uint64_t m : {0, 64, 128, 192}) {
        double p = big.frequency(m);
        double sigma = std::sqrt(2 * p * (1 - p) / 200000.0);
        EXPECT_NEAR(merged.frequency(m), p, 4 * sigma) << "m=" << m;
    }
}

TEST(sample, matches_exact_enumeration) {
    auto circuit = kickback_circuit();
    OutcomeLayout layout{{0, 1, 2}, 3};
    uint64_t total = 0;
    auto exact = qsl::testing::enumerate_qsl(circuit, layout, &total);
    const uint64_t shots = 100000;
    auto h = sample(circuit, shots, 31, layout);
    for (uint64_t m = 0; m < 8; ++m) {
        double p = exact.contains(m) ? static_cast<double>(exact.at(m)) / total : 0.0;
        double sigma = std::sqrt(p * (1 - p) / shots);
        EXPECT_NEAR(h.frequency(m), p, 3 * sigma + 1e-12) << "m=" << m;
    }
}

TEST(outcome_layout, assembles_bits) {
    OutcomeLayout layout{{7, 6, -1, 0}, 8};
    std::vector<uint8_t> outcomes{1, 0, 1, 1};
    EXPECT_EQ(layout.assemble(outcomes), 128u + 1u);
}
