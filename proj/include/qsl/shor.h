#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qsl/circuit.h"
#include "qsl/executor.h"
#include "qsl/histogram.h"

namespace qsl::shor {

inline constexpr uint64_t kModulus = 15;
inline constexpr uint32_t kOutputBits = 4;
inline constexpr uint32_t kInputBits = 2 * kOutputBits;
inline constexpr std::array<uint64_t, 6> kBases = {2, 4, 7, 8, 11, 13};

uint64_t gcd(uint64_t x, uint64_t y);
uint64_t pow_mod(uint64_t base, uint64_t exponent, uint64_t modulus);
/// Smallest r >= 1 with base^r = 1 (mod modulus). Requires gcd(base, modulus) = 1.
uint64_t multiplicative_order(uint64_t base, uint64_t modulus);

/// Parameters of the order-finding subroutine. Only N = 15 is supported.
struct ShorParams {
    uint64_t N = kModulus;
    uint64_t a = 2;
    uint32_t n = kOutputBits;
    uint32_t input_bits = kInputBits;

    /// Throws std::invalid_argument naming the valid bases, e.g.
    /// "gcd(3,15)=3: not a valid subroutine base".
    static ShorParams make(uint64_t a);
};

/// Output register wires, least significant first: value = 8*q3 + 4*q2 + 2*q1 + q0.
using OutputWires = std::array<uint32_t, kOutputBits>;

struct MultiplierSpec {
    uint64_t multiplicand = 1;
    uint32_t control = 0;
    std::vector<Operation> gates;
};

/// Controlled x -> a_eff * x (mod 15) on the output register, built from
/// adjacent Fredkin swaps (rotations) and, for a_eff in {7, 11, 13}, a layer
/// of control-to-wire CNOTs (complement, since x + (15 - x) = 1111b). Residue
/// 0 is represented by 15. Throws std::invalid_argument for a_eff = 1 or a
/// multiplicand not coprime to 15.
MultiplierSpec multiplier_circuit(uint64_t a_eff, uint32_t control, const OutputWires &output);

struct PowerStep {
    uint32_t k = 0;
    uint64_t exponent = 1;
    uint64_t multiplicand = 1;
    bool is_identity = false;
};
using PowerSchedule = std::vector<PowerStep>;

/// One entry per input qubit k = 0..2n-1: multiplicand a^(2^k) mod 15.
PowerSchedule power_schedule(uint64_t a);

/// The order-finding circuit and how to read it.
///
/// Wires 0..2n-1 are the input qubits (wire k controls x a^(2^k)), wires
/// 2n..3n-1 are the output register q0..q3. Slot k holds the outcome of input
/// qubit k and lands on bit 2n-1-k of m.
struct Subroutine {
    ShorParams params;
    Circuit circuit;
    OutcomeLayout layout;
    std::vector<uint32_t> input_wires;
    OutputWires output_wires{};
    PowerSchedule schedule;
};

/// Output register prepared to 1, input qubits prepared to 0 and Hadamard'd,
/// controlled multipliers attached highest power first (identity powers
/// omitted), then the semiclassical inverse transform: input qubits in
/// decreasing k, each gets CR2 controlled by the outcome of qubit k+1, then
/// H and a measurement. Higher rotations are omitted since their controls are
/// always 0 for N = 15.
Subroutine build_subroutine(const ShorParams &params);

Histogram run_subroutine(const ShorParams &params, uint64_t shots, uint64_t seed, const SampleOptions &options = {});

/// Largest convergent denominator q < N of m/Q with |m/Q - p/q| <= 1/(2Q).
/// Returns nullopt for m = 0 or when no convergent qualifies.
std::optional<uint64_t> continued_fraction_order(uint64_t m, uint64_t Q, uint64_t N);

/// Nontrivial elements of {gcd(a^(r/2) - 1, N), gcd(a^(r/2) + 1, N)}, or
/// nullopt when r is odd, a^(r/2) = -1 (mod N), or both gcds are trivial.
std::optional<std::set<uint64_t>> factor_from_order(uint64_t a, uint64_t r, uint64_t N);

/// True when outcome m yields exactly the multiplicative order of a.
bool is_good_candidate(uint64_t a, uint64_t m, uint32_t input_bits = kInputBits);

struct Attempt {
    uint64_t a = 0;
    bool gcd_shortcut = false;
    std::optional<uint64_t> m;
    std::optional<uint64_t> r;
    std::set<uint64_t> factors;
};

struct FactorReport {
    uint64_t N = kModulus;
    uint64_t seed = 0;
    /// Base of the final attempt.
    uint64_t a = 0;
    std::optional<uint64_t> m;
    std::optional<uint64_t> r;
    std::set<uint64_t> factors;
    uint64_t invocations = 0;
    std::vector<Attempt> trace;

    bool success() const {
        return !factors.empty();
    }
    /// True when the factors came from the quantum subroutine rather than
    /// the gcd shortcut.
    bool via_subroutine() const {
        return success() && !trace.empty() && !trace.back().gcd_shortcut;
    }
};

struct DriverOptions {
    /// Upper bound on subroutine invocations.
    uint64_t max_retries = 32;
    /// Pins every draw to this base instead of drawing uniformly from {2..N-2}.
    std::optional<uint64_t> fixed_a;
};

/// Full factoring loop: draw a, take the gcd shortcut when it applies,
/// otherwise run one subroutine shot, recover r by continued fractions,
/// verify a^r = 1 (mod N) and try gcd(a^(r/2) +- 1, N). A new a is drawn for
/// every attempt. Randomness: a-draws use stream 2^63 of `seed`, subroutine
/// invocation i uses shot i of `seed`.
FactorReport shor_driver(uint64_t N, uint64_t seed, const DriverOptions &options = {});

std::string to_json(const FactorReport &report);

}  // namespace qsl::shor
