#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qsl/circuit.h"
#include "qsl/histogram.h"
#include "qsl/phased_bit.h"

namespace qsl {

/// Maps outcome slots onto bit positions of the assembled integer m.
/// A slot mapped to -1 does not contribute.
struct OutcomeLayout {
    std::vector<int> slot_bit;
    uint32_t num_bits = 0;

    uint64_t assemble(std::span<const uint8_t> outcomes) const;
};

enum class ExecutorKind { Scalar, BitSliced };

struct SampleOptions {
    unsigned threads = 1;
    ExecutorKind executor = ExecutorKind::BitSliced;
    /// Shot indices run are [first_shot, first_shot + shots). Histograms of
    /// adjacent ranges merge to exactly the histogram of the joined range.
    uint64_t first_shot = 0;
};

/// Executes one shot on a fresh register. Randomness comes from the
/// substream RandomSource(seed, shot_index); every Prepare and Measure draws
/// one bit from it, in operation order. Returns one bit per outcome slot.
std::vector<uint8_t> run_shot(const Circuit &circuit, uint64_t seed, uint64_t shot_index);

/// Same as run_shot, but also hands back the final register for inspection.
std::vector<uint8_t> run_shot(const Circuit &circuit, uint64_t seed, uint64_t shot_index, QslRegister &final_state);

/// Runs `shots` independent shots and histograms the assembled outcomes.
/// The result depends only on (circuit, shots, seed, first_shot, layout):
/// thread count and executor kind do not change it. N and a are left for
/// the caller to fill in. Throws std::invalid_argument for shots = 0 or an
/// invalid circuit.
Histogram sample(const Circuit &circuit, uint64_t shots, uint64_t seed, const OutcomeLayout &layout,
                 const SampleOptions &options = {});

}  // namespace qsl
