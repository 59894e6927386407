#include "qsl/shor.h"

#include <stdexcept>

#include "json.hpp"

namespace qsl::shor {

uint64_t gcd(uint64_t x, uint64_t y) {
    while (y != 0) {
        uint64_t t = x % y;
        x = y;
        y = t;
    }
    return x;
}

uint64_t pow_mod(uint64_t base, uint64_t exponent, uint64_t modulus) {
    uint64_t result = 1 % modulus;
    base %= modulus;
    while (exponent > 0) {
        if (exponent & 1) {
            result = result * base % modulus;
        }
        base = base * base % modulus;
        exponent >>= 1;
    }
    return result;
}

uint64_t multiplicative_order(uint64_t base, uint64_t modulus) {
    if (gcd(base, modulus) != 1) {
        throw std::invalid_argument("order undefined: base shares a factor with the modulus");
    }
    uint64_t r = 1;
    uint64_t v = base % modulus;
    while (v != 1 % modulus) {
        v = v * base % modulus;
        ++r;
    }
    return r;
}

ShorParams ShorParams::make(uint64_t a) {
    const std::string valid = "valid bases are {2, 4, 7, 8, 11, 13}";
    if (a < 2 || a >= kModulus - 1) {
        throw std::invalid_argument("a=" + std::to_string(a) + " is not in 2..13: " + valid);
    }
    uint64_t g = gcd(a, kModulus);
    if (g != 1) {
        throw std::invalid_argument("gcd(" + std::to_string(a) + ",15)=" + std::to_string(g) +
                                    ": not a valid subroutine base; " + valid);
    }
    ShorParams p;
    p.a = a;
    return p;
}

MultiplierSpec multiplier_circuit(uint64_t a_eff, uint32_t control, const OutputWires &q) {
    a_eff %= kModulus;
    if (a_eff == 1) {
        throw std::invalid_argument("identity multiplier must be omitted, not synthesized");
    }
    if (gcd(a_eff, kModulus) != 1) {
        throw std::invalid_argument("multiplicand " + std::to_string(a_eff) + " is not invertible mod 15");
    }
    for (auto w : q) {
        if (w == control) {
            throw std::invalid_argument("multiplier control overlaps the output register");
        }
    }

    MultiplierSpec spec;
    spec.multiplicand = a_eff;
    spec.control = control;
    auto swap = [&](uint32_t x, uint32_t y) {
        spec.gates.push_back(Operation::gate(OpKind::Fredkin, {control, q[x], q[y]}));
    };

    // x13 = -x2, x11 = -x4, x7 = -x8.
    const bool negate = a_eff == 7 || a_eff == 11 || a_eff == 13;
    const uint64_t rotation = negate ? kModulus - a_eff : a_eff;
    switch (rotation) {
        case 2:
            swap(3, 2);
            swap(2, 1);
            swap(1, 0);
            break;
        case 4:
            swap(3, 1);
            swap(2, 0);
            break;
        case 8:
            swap(1, 0);
            swap(2, 1);
            swap(3, 2);
            break;
    }
    if (negate) {
        for (int i = kOutputBits - 1; i >= 0; --i) {
            spec.gates.push_back(Operation::gate(OpKind::CNOT, {control, q[i]}));
        }
    }
    return spec;
}

PowerSchedule power_schedule(uint64_t a) {
    if (gcd(a, kModulus) != 1) {
        throw std::invalid_argument("power schedule needs a base coprime to 15");
    }
    PowerSchedule schedule;
    uint64_t power = a % kModulus;
    for (uint32_t k = 0; k < kInputBits; ++k) {
        schedule.push_back({k, uint64_t{1} << k, power, power == 1});
        power = power * power % kModulus;
    }
    return schedule;
}

Subroutine build_subroutine(const ShorParams &params) {
    if (params.N != kModulus || params.n != kOutputBits || params.input_bits != kInputBits) {
        throw std::invalid_argument("only N=15 with a 4-bit output and 8-bit input register is supported");
    }
    ShorParams::make(params.a);

    Subroutine sub;
    sub.params = params;
    sub.schedule = power_schedule(params.a);
    Circuit &c = sub.circuit;
    for (uint32_t i = 0; i < kInputBits; ++i) {
        c.wires.push_back({i, WireRole::Input});
        sub.input_wires.push_back(i);
    }
    for (uint32_t i = 0; i < kOutputBits; ++i) {
        c.wires.push_back({kInputBits + i, WireRole::Output});
        sub.output_wires[i] = kInputBits + i;
    }
    c.num_slots = kInputBits;

    for (uint32_t i = 0; i < kOutputBits; ++i) {
        c.append(Operation::prepare(sub.output_wires[i], i == 0));
    }
    for (auto w : sub.input_wires) {
        c.append(Operation::prepare(w, false));
    }
    for (auto w : sub.input_wires) {
        c.append(Operation::gate(OpKind::H, {w}));
    }
    for (auto it = sub.schedule.rbegin(); it != sub.schedule.rend(); ++it) {
        if (it->is_identity) {
            continue;
        }
        auto mult = multiplier_circuit(it->multiplicand, sub.input_wires[it->k], sub.output_wires);
        for (auto &op : mult.gates) {
            c.append(std::move(op));
        }
    }
    for (int k = kInputBits - 1; k >= 0; --k) {
        uint32_t w = sub.input_wires[k];
        if (k + 1 < static_cast<int>(kInputBits)) {
            c.append(Operation::cr2(static_cast<uint32_t>(k + 1), w));
        }
        c.append(Operation::gate(OpKind::H, {w}));
        c.append(Operation::measure(w, static_cast<uint32_t>(k)));
    }
    require_valid(c);

    sub.layout.num_bits = kInputBits;
    sub.layout.slot_bit.resize(kInputBits);
    for (uint32_t k = 0; k < kInputBits; ++k) {
        sub.layout.slot_bit[k] = static_cast<int>(kInputBits - 1 - k);
    }
    return sub;
}

Histogram run_subroutine(const ShorParams &params, uint64_t shots, uint64_t seed, const SampleOptions &options) {
    Subroutine sub = build_subroutine(params);
    Histogram h = sample(sub.circuit, shots, seed, sub.layout, options);
    h.N = params.N;
    h.a = params.a;
    return h;
}

std::optional<uint64_t> continued_fraction_order(uint64_t m, uint64_t Q, uint64_t N) {
    if (Q == 0 || m >= Q) {
        throw std::invalid_argument("continued_fraction_order requires 0 <= m < Q");
    }
    if (m == 0) {
        return std::nullopt;
    }
    // Convergents p_k/q_k of m/Q via the standard recurrence.
    uint64_t p_prev = 0, p = 1;
    uint64_t q_prev = 1, q = 0;
    uint64_t num = m, den = Q;
    std::optional<uint64_t> best;
    while (den != 0) {
        uint64_t term = num / den;
        uint64_t p_next = term * p + p_prev;
        uint64_t q_next = term * q + q_prev;
        p_prev = p;
        p = p_next;
        q_prev = q;
        q = q_next;
        if (q >= N) {
            break;
        }
        // |m/Q - p/q| <= 1/(2Q)  <=>  2|mq - pQ| <= q
        uint64_t lhs = m * q;
        uint64_t rhs = p * Q;
        uint64_t diff = lhs > rhs ? lhs - rhs : rhs - lhs;
        if (2 * diff <= q) {
            best = q;
        }
        uint64_t rem = num % den;
        num = den;
        den = rem;
    }
    return best;
}

std::optional<std::set<uint64_t>> factor_from_order(uint64_t a, uint64_t r, uint64_t N) {
    if (r == 0) {
        throw std::invalid_argument("order candidate must be at least 1");
    }
    if (r % 2 != 0) {
        return std::nullopt;
    }
    uint64_t half = pow_mod(a, r / 2, N);
    if (half == N - 1) {
        return std::nullopt;
    }
    std::set<uint64_t> found;
    for (uint64_t g : {gcd((half + N - 1) % N, N), gcd(half + 1, N)}) {
        if (g > 1 && g < N) {
            found.insert(g);
        }
    }
    if (found.empty()) {
        return std::nullopt;
    }
    return found;
}

bool is_good_candidate(uint64_t a, uint64_t m, uint32_t input_bits) {
    auto r = continued_fraction_order(m, uint64_t{1} << input_bits, kModulus);
    return r && *r == multiplicative_order(a, kModulus);
}

FactorReport shor_driver(uint64_t N, uint64_t seed, const DriverOptions &options) {
    if (N != kModulus) {
        throw std::invalid_argument("only N=15 is supported");
    }
    if (options.fixed_a && (*options.fixed_a < 2 || *options.fixed_a > N - 2)) {
        throw std::invalid_argument("fixed base must lie in 2..N-2");
    }
    FactorReport report;
    report.N = N;
    report.seed = seed;
    RandomSource draws(seed, uint64_t{1} << 63);
    std::optional<Subroutine> cached;

    auto complete = [&](std::set<uint64_t> factors) {
        std::set<uint64_t> full;
        for (auto f : factors) {
            full.insert(f);
            full.insert(N / f);
        }
        return full;
    };

    while (true) {
        Attempt attempt;
        attempt.a = options.fixed_a ? *options.fixed_a : 2 + draws.next_below(N - 3);
        report.a = attempt.a;
        report.m.reset();
        report.r.reset();

        uint64_t g = gcd(attempt.a, N);
        if (g > 1) {
            attempt.gcd_shortcut = true;
            attempt.factors = complete({g});
            report.factors = attempt.factors;
            report.trace.push_back(attempt);
            return report;
        }
        if (report.invocations >= options.max_retries) {
            report.trace.push_back(attempt);
            return report;
        }

        if (!cached || cached->params.a != attempt.a) {
            cached = build_subroutine(ShorParams::make(attempt.a));
        }
        auto outcomes = run_shot(cached->circuit, seed, report.invocations);
        ++report.invocations;
        attempt.m = cached->layout.assemble(outcomes);
        attempt.r = continued_fraction_order(*attempt.m, uint64_t{1} << kInputBits, N);
        report.m = attempt.m;
        report.r = attempt.r;
        if (attempt.r && pow_mod(attempt.a, *attempt.r, N) == 1) {
            if (auto f = factor_from_order(attempt.a, *attempt.r, N)) {
                attempt.factors = complete(*f);
                report.factors = attempt.factors;
                report.trace.push_back(attempt);
                return report;
            }
        }
        report.trace.push_back(attempt);
    }
}

std::string to_json(const FactorReport &report) {
    auto opt = [](const std::optional<uint64_t> &v) -> nlohmann::ordered_json {
        return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
    };
    nlohmann::ordered_json j;
    j["N"] = report.N;
    j["a"] = report.a;
    j["m"] = opt(report.m);
    j["r"] = opt(report.r);
    j["factors"] = report.factors;
    j["invocations"] = report.invocations;
    j["seed"] = report.seed;
    auto trace = nlohmann::ordered_json::array();
    for (const auto &t : report.trace) {
        nlohmann::ordered_json e;
        e["a"] = t.a;
        e["gcd_shortcut"] = t.gcd_shortcut;
        e["m"] = opt(t.m);
        e["r"] = opt(t.r);
        e["factors"] = t.factors;
        trace.push_back(e);
    }
    j["trace"] = trace;
    return j.dump(2) + "\n";
}

}  // namespace qsl::shor
