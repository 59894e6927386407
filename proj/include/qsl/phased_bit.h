#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qsl/random.h"

namespace qsl {

/// One simulated qubit: a computational bit and a phase bit.
struct PhasedBit {
    bool c = false;
    bool p = false;

    friend bool operator==(const PhasedBit &, const PhasedBit &) = default;

    /// Packs as (c << 1) | p, giving the index 0..3 used by exhaustive tables.
    uint8_t code() const {
        return static_cast<uint8_t>((c << 1) | p);
    }
    static PhasedBit from_code(unsigned v) {
        return {static_cast<bool>((v >> 1) & 1), static_cast<bool>(v & 1)};
    }
    std::string str() const;
};

struct BitPair {
    PhasedBit first;
    PhasedBit second;
    friend bool operator==(const BitPair &, const BitPair &) = default;
};

struct BitTriple {
    PhasedBit first;
    PhasedBit second;
    PhasedBit third;
    friend bool operator==(const BitTriple &, const BitTriple &) = default;
};

// Sources and measurement.
PhasedBit prepare(bool value, RandomSource &rng);
bool measure(PhasedBit &q, RandomSource &rng);

// Gate tables. Each is a reversible map on the listed bit pairs.
PhasedBit gate_x(PhasedBit q);
PhasedBit gate_z(PhasedBit q);
PhasedBit gate_h(PhasedBit q);
PhasedBit gate_s(PhasedBit q);
BitPair gate_cnot(PhasedBit control, PhasedBit target);
BitTriple gate_toffoli(PhasedBit a, PhasedBit b, PhasedBit t);
BitTriple gate_fredkin(PhasedBit ctl, PhasedBit x, PhasedBit y);
PhasedBit gate_cr2(bool classical_control, PhasedBit q);

/// Fixed-length collection of simulated qubits indexed by wire id.
class QslRegister {
   public:
    explicit QslRegister(size_t num_wires) : bits_(num_wires) {
    }

    size_t size() const {
        return bits_.size();
    }
    PhasedBit &operator[](size_t wire) {
        return bits_[wire];
    }
    const PhasedBit &operator[](size_t wire) const {
        return bits_[wire];
    }
    const std::vector<PhasedBit> &bits() const {
        return bits_;
    }

    void prepare(size_t w, bool value, RandomSource &rng);
    bool measure(size_t w, RandomSource &rng);
    void x(size_t w);
    void z(size_t w);
    void h(size_t w);
    void s(size_t w);
    void cnot(size_t control, size_t target);
    void toffoli(size_t a, size_t b, size_t t);
    void fredkin(size_t ctl, size_t x, size_t y);
    void cr2(bool classical_control, size_t w);

   private:
    std::vector<PhasedBit> bits_;
};

}  // namespace qsl
