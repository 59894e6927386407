#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qsl/circuit.h"
#include "qsl/executor.h"
#include "qsl/shor.h"

namespace qsl::oracle {

using Amplitude = std::complex<double>;

inline constexpr uint32_t kMaxWires = 14;

/// Dense state over `w` wires. Bit i of an amplitude index is wire i.
class StateVector {
   public:
    /// |index>. Throws std::invalid_argument beyond kMaxWires wires.
    StateVector(uint32_t num_wires, uint64_t index = 0);

    uint32_t num_wires() const {
        return num_wires_;
    }
    const std::vector<Amplitude> &amplitudes() const {
        return amps_;
    }
    std::vector<Amplitude> &amplitudes() {
        return amps_;
    }
    double norm_squared() const;

    void x(uint32_t w);
    void z(uint32_t w);
    void h(uint32_t w);
    void s(uint32_t w);
    void cnot(uint32_t control, uint32_t target);
    void toffoli(uint32_t a, uint32_t b, uint32_t t);
    void fredkin(uint32_t ctl, uint32_t x, uint32_t y);
    /// diag(1, e^{i angle}) on wire w.
    void phase(uint32_t w, double angle);

    /// Probability that wire w reads 1.
    double probability_one(uint32_t w) const;
    /// Projects wire w onto `outcome` and renormalizes. Returns the
    /// probability of that outcome (state left unnormalized when it is 0).
    double project(uint32_t w, bool outcome);

   private:
    void check_wire(uint32_t w) const;

    uint32_t num_wires_;
    std::vector<Amplitude> amps_;
};

/// Applies a unitary operation. CR2 needs the value of its classical control:
/// when set it applies the inverse quarter-turn diag(1, -i), the quantum
/// counterpart of the QSL table. (The table's trailing computational-bit flip
/// precedes H and measurement, where it becomes an unobservable phase.)
/// Prepare and Measure are rejected with std::invalid_argument, as is any
/// wire index >= num_wires.
void apply_gate(StateVector &state, const Operation &op, bool classical_control = false);

/// Probabilities over m in [0, 2^num_bits).
struct Distribution {
    uint64_t a = 0;
    uint32_t n_input_bits = 0;
    std::vector<double> probs;

    double total() const;
};

/// Exact outcome distribution of a circuit whose wires each start with a
/// single Prepare. Measurements branch the state; classical controls read the
/// branch's outcomes.
Distribution circuit_distribution(const Circuit &circuit, const OutcomeLayout &layout);

/// Ideal order-finding distribution: Hadamards, the controlled multipliers as
/// permutation unitaries, and an exact inverse Fourier transform applied to the
/// input register as a dense transform. Also reports the worst norm deviation
/// seen along the way through `max_norm_error` when non-null.
Distribution ideal_distribution(const shor::ShorParams &params, double *max_norm_error = nullptr);

/// The same distribution by mid-circuit measurement: input qubits measured
/// highest power first, each preceded by every classically controlled
/// rotation R_{2^j} its earlier outcomes call for.
Distribution semiclassical_distribution(const shor::ShorParams &params);

/// JSON {"a", "probs": {m: p}} with 12 significant digits; zero entries
/// omitted.
std::string to_json(const Distribution &d);
Distribution distribution_from_json(const std::string &text);

}  // namespace qsl::oracle
