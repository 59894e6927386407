#include "qsl/state_vector.h"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qsl::oracle {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

StateVector::StateVector(uint32_t num_wires, uint64_t index) : num_wires_(num_wires) {
    if (num_wires > kMaxWires) {
        throw std::invalid_argument("state vector limited to " + std::to_string(kMaxWires) + " wires");
    }
    amps_.assign(size_t{1} << num_wires, Amplitude{0.0, 0.0});
    if (index >= amps_.size()) {
        throw std::invalid_argument("basis index out of range");
    }
    amps_[index] = 1.0;
}

double StateVector::norm_squared() const {
    double total = 0;
    for (const auto &a : amps_) {
        total += std::norm(a);
    }
    return total;
}

void StateVector::check_wire(uint32_t w) const {
    if (w >= num_wires_) {
        throw std::invalid_argument("wire " + std::to_string(w) + " out of range for " + std::to_string(num_wires_) +
                                    " wires");
    }
}

void StateVector::x(uint32_t w) {
    check_wire(w);
    const size_t bit = size_t{1} << w;
    for (size_t i = 0; i < amps_.size(); ++i) {
        if (!(i & bit)) {
            std::swap(amps_[i], amps_[i | bit]);
        }
    }
}

void StateVector::z(uint32_t w) {
    phase(w, std::numbers::pi);
}

void StateVector::h(uint32_t w) {
    check_wire(w);
    const size_t bit = size_t{1} << w;
    for (size_t i = 0; i < amps_.size(); ++i) {
        if (!(i & bit)) {
            Amplitude a0 = amps_[i];
            Amplitude a1 = amps_[i | bit];
            amps_[i] = (a0 + a1) * kInvSqrt2;
            amps_[i | bit] = (a0 - a1) * kInvSqrt2;
        }
    }
}

void StateVector::s(uint32_t w) {
    check_wire(w);
    const size_t bit = size_t{1} << w;
    for (size_t i = 0; i < amps_.size(); ++i) {
        if (i & bit) {
            amps_[i] *= Amplitude{0.0, 1.0};
        }
    }
}

void StateVector::phase(uint32_t w, double angle) {
    check_wire(w);
    const size_t bit = size_t{1} << w;
    const Amplitude factor = std::polar(1.0, angle);
    for (size_t i = 0; i < amps_.size(); ++i) {
        if (i & bit) {
            amps_[i] *= factor;
        }
    }
}

void StateVector::cnot(uint32_t control, uint32_t target) {
    check_wire(control);
    check_wire(target);
    if (control == target) {
        throw std::invalid_argument("duplicate wire");
    }
    const size_t cb = size_t{1} << control;
    const size_t tb = size_t{1} << target;
    for (size_t i = 0; i < amps_.size(); ++i) {
        if ((i & cb) && !(i & tb)) {
            std::swap(amps_[i], amps_[i | tb]);
        }
    }
}

void StateVector::toffoli(uint32_t a, uint32_t b, uint32_t t) {
    check_wire(a);
    check_wire(b);
    check_wire(t);
    if (a == b || a == t || b == t) {
        throw std::invalid_argument("duplicate wire");
    }
    const size_t ab = size_t{1} << a;
    const size_t bb = size_t{1} << b;
    const size_t tb = size_t{1} << t;
    for (size_t i = 0; i < amps_.size(); ++i) {
        if ((i & ab) && (i & bb) && !(i & tb)) {
            std::swap(amps_[i], amps_[i | tb]);
        }
    }
}

void StateVector::fredkin(uint32_t ctl, uint32_t x, uint32_t y) {
    check_wire(ctl);
    check_wire(x);
    check_wire(y);
    if (ctl == x || ctl == y || x == y) {
        throw std::invalid_argument("duplicate wire");
    }
    const size_t cb = size_t{1} << ctl;
    const size_t xb = size_t{1} << x;
    const size_t yb = size_t{1} << y;
    for (size_t i = 0; i < amps_.size(); ++i) {
        if ((i & cb) && (i & xb) && !(i & yb)) {
            std::swap(amps_[i], amps_[(i & ~xb) | yb]);
        }
    }
}

double StateVector::probability_one(uint32_t w) const {
    check_wire(w);
    const size_t bit = size_t{1} << w;
    double p = 0;
    for (size_t i = 0; i < amps_.size(); ++i) {
        if (i & bit) {
            p += std::norm(amps_[i]);
        }
    }
    return p;
}

double StateVector::project(uint32_t w, bool outcome) {
    double p = outcome ? probability_one(w) : 1.0 - probability_one(w);
    const size_t bit = size_t{1} << w;
    const double scale = p > 0 ? 1.0 / std::sqrt(p) : 0.0;
    for (size_t i = 0; i < amps_.size(); ++i) {
        if (static_cast<bool>(i & bit) != outcome) {
            amps_[i] = 0;
        } else {
            amps_[i] *= scale;
        }
    }
    return p;
}

void apply_gate(StateVector &state, const Operation &op, bool classical_control) {
    if (op.wires.size() != op_arity(op.kind)) {
        throw std::invalid_argument("wire arity mismatch for " + std::string(op_name(op.kind)));
    }
    const auto &w = op.wires;
    switch (op.kind) {
        case OpKind::X:
            state.x(w[0]);
            break;
        case OpKind::Z:
            state.z(w[0]);
            break;
        case OpKind::H:
            state.h(w[0]);
            break;
        case OpKind::S:
            state.s(w[0]);
            break;
        case OpKind::CNOT:
            state.cnot(w[0], w[1]);
            break;
        case OpKind::Toffoli:
            state.toffoli(w[0], w[1], w[2]);
            break;
        case OpKind::Fredkin:
            state.fredkin(w[0], w[1], w[2]);
            break;
        case OpKind::CR2:
            if (classical_control) {
                state.phase(w[0], -std::numbers::pi / 2);
            } else if (w[0] >= state.num_wires()) {
                throw std::invalid_argument("wire out of range");
            }
            break;
        case OpKind::Prepare:
        case OpKind::Measure:
            throw std::invalid_argument(std::string(op_name(op.kind)) + " is not a unitary operation");
    }
}

double Distribution::total() const {
    double t = 0;
    for (double p : probs) {
        t += p;
    }
    return t;
}

namespace {

struct Branch {
    double weight;
    StateVector state;
    std::vector<uint8_t> outcomes;
};

// Weight below which a measurement branch is dropped. Amplitudes are sums of
// a few hundred terms, so genuine zero branches come out around 1e-30.
constexpr double kNegligible = 1e-20;

}  // namespace

Distribution circuit_distribution(const Circuit &circuit, const OutcomeLayout &layout) {
    require_valid(circuit);
    std::vector<Branch> branches;
    branches.push_back({1.0, StateVector(static_cast<uint32_t>(circuit.num_wires())),
                        std::vector<uint8_t>(circuit.num_slots, 0)});
    std::vector<bool> touched(circuit.num_wires(), false);

    for (const Operation &op : circuit.operations) {
        if (op.kind == OpKind::Prepare) {
            if (touched[op.wires[0]]) {
                throw std::invalid_argument("oracle supports only an initial Prepare per wire");
            }
            touched[op.wires[0]] = true;
            if (op.value) {
                for (auto &b : branches) {
                    b.state.x(op.wires[0]);
                }
            }
            continue;
        }
        for (auto w : op.wires) {
            touched[w] = true;
        }
        if (op.kind == OpKind::Measure) {
            std::vector<Branch> next;
            for (auto &b : branches) {
                for (bool outcome : {false, true}) {
                    Branch child{b.weight, b.state, b.outcomes};
                    double p = child.state.project(op.wires[0], outcome);
                    child.weight *= p;
                    if (child.weight > kNegligible) {
                        child.outcomes[*op.classical_out] = outcome;
                        next.push_back(std::move(child));
                    }
                }
            }
            branches = std::move(next);
            continue;
        }
        for (auto &b : branches) {
            bool control = op.classical_in ? b.outcomes[*op.classical_in] != 0 : false;
            apply_gate(b.state, op, control);
        }
    }

    Distribution d;
    d.n_input_bits = layout.num_bits;
    d.probs.assign(size_t{1} << layout.num_bits, 0.0);
    for (const auto &b : branches) {
        d.probs[layout.assemble(b.outcomes)] += b.weight;
    }
    return d;
}

namespace {

// Input wires 0..2n-1 (wire k controls a^(2^k)), output register q0..q3 on
// the next four wires prepared to 1, Hadamards and all controlled
// multipliers applied.
StateVector prepared_register(const shor::ShorParams &params, double *max_norm_error) {
    constexpr uint32_t in = shor::kInputBits;
    StateVector state(in + shor::kOutputBits);
    auto track = [&] {
        if (max_norm_error) {
            *max_norm_error = std::max(*max_norm_error, std::abs(state.norm_squared() - 1.0));
        }
    };
    state.x(in);
    track();
    for (uint32_t k = 0; k < in; ++k) {
        state.h(k);
        track();
    }
    shor::OutputWires output{in, in + 1, in + 2, in + 3};
    for (const auto &step : shor::power_schedule(params.a)) {
        if (step.is_identity) {
            continue;
        }
        for (const auto &op : shor::multiplier_circuit(step.multiplicand, step.k, output).gates) {
            apply_gate(state, op);
            track();
        }
    }
    return state;
}

}  // namespace

Distribution ideal_distribution(const shor::ShorParams &params, double *max_norm_error) {
    shor::build_subroutine(params);  // validates params
    constexpr uint32_t in = shor::kInputBits;
    constexpr size_t space = size_t{1} << in;
    constexpr size_t out_space = size_t{1} << shor::kOutputBits;

    if (max_norm_error) {
        *max_norm_error = 0;
    }
    StateVector state = prepared_register(params, max_norm_error);

    // Inverse transform on the input register: x -> 2^{-n} sum_j e^{-2 pi i j x / 2^{2n}} |j>.
    std::vector<Amplitude> twiddle(space);
    for (size_t t = 0; t < space; ++t) {
        twiddle[t] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(space));
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(space));
    Distribution d;
    d.a = params.a;
    d.n_input_bits = in;
    d.probs.assign(space, 0.0);
    double transformed_norm = 0;
    const auto &amps = state.amplitudes();
    for (size_t y = 0; y < out_space; ++y) {
        for (size_t j = 0; j < space; ++j) {
            Amplitude acc = 0;
            for (size_t x = 0; x < space; ++x) {
                acc += twiddle[(j * x) % space] * amps[x + space * y];
            }
            double p = std::norm(acc * scale);
            d.probs[j] += p;
            transformed_norm += p;
        }
    }
    if (max_norm_error) {
        *max_norm_error = std::max(*max_norm_error, std::abs(transformed_norm - 1.0));
    }
    return d;
}

Distribution semiclassical_distribution(const shor::ShorParams &params) {
    constexpr uint32_t in = shor::kInputBits;
    struct Path {
        double weight;
        StateVector state;
        uint64_t m;
    };
    std::vector<Path> paths;
    paths.push_back({1.0, prepared_register(params, nullptr), 0});
    for (int k = in - 1; k >= 0; --k) {
        std::vector<Path> next;
        for (auto &path : paths) {
            for (int j = k + 1; j < static_cast<int>(in); ++j) {
                if ((path.m >> (in - 1 - j)) & 1) {
                    path.state.phase(k, -2.0 * std::numbers::pi / std::ldexp(1.0, j - k + 1));
                }
            }
            path.state.h(k);
            for (bool outcome : {false, true}) {
                Path child{path.weight, path.state, path.m};
                child.weight *= child.state.project(k, outcome);
                if (child.weight > kNegligible) {
                    if (outcome) {
                        child.m |= uint64_t{1} << (in - 1 - k);
                    }
                    next.push_back(std::move(child));
                }
            }
        }
        paths = std::move(next);
    }
    Distribution d;
    d.a = params.a;
    d.n_input_bits = in;
    d.probs.assign(size_t{1} << in, 0.0);
    for (const auto &path : paths) {
        d.probs[path.m] += path.weight;
    }
    return d;
}

std::string to_json(const Distribution &d) {
    std::ostringstream out;
    out << "{\n  \"a\": " << d.a << ",\n  \"probs\": {";
    bool first = true;
    char buf[64];
    for (size_t m = 0; m < d.probs.size(); ++m) {
        if (d.probs[m] == 0.0) {
            continue;
        }
        std::snprintf(buf, sizeof(buf), "%.12g", d.probs[m]);
        out << (first ? "\n" : ",\n") << "    \"" << m << "\": " << buf;
        first = false;
    }
    out << (first ? "}" : "\n  }") << "\n}\n";
    return out.str();
}

Distribution distribution_from_json(const std::string &text) {
    Distribution d;
    try {
        auto j = nlohmann::json::parse(text);
        d.a = j.at("a").get<uint64_t>();
        d.n_input_bits = j.contains("n_input_bits") ? j["n_input_bits"].get<uint32_t>() : shor::kInputBits;
        if (d.n_input_bits > 24) {
            throw std::invalid_argument("n_input_bits too large");
        }
        d.probs.assign(size_t{1} << d.n_input_bits, 0.0);
        for (const auto &[key, value] : j.at("probs").items()) {
            size_t m = std::stoull(key);
            if (m >= d.probs.size()) {
                throw std::invalid_argument("outcome out of range: " + key);
            }
            d.probs[m] = value.get<double>();
        }
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("malformed distribution JSON: ") + e.what());
    }
    return d;
}

}  // namespace qsl::oracle
