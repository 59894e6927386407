#include "qsl/executor.h"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

namespace qsl {

namespace {

constexpr uint64_t kChunkShots = uint64_t{1} << 15;

void execute(const Circuit &circuit, RandomSource &rng, QslRegister &reg, std::vector<uint8_t> &outcomes) {
    for (const Operation &op : circuit.operations) {
        const auto &w = op.wires;
        switch (op.kind) {
            case OpKind::Prepare:
                reg.prepare(w[0], op.value, rng);
                break;
            case OpKind::X:
                reg.x(w[0]);
                break;
            case OpKind::Z:
                reg.z(w[0]);
                break;
            case OpKind::H:
                reg.h(w[0]);
                break;
            case OpKind::S:
                reg.s(w[0]);
                break;
            case OpKind::CNOT:
                reg.cnot(w[0], w[1]);
                break;
            case OpKind::Toffoli:
                reg.toffoli(w[0], w[1], w[2]);
                break;
            case OpKind::Fredkin:
                reg.fredkin(w[0], w[1], w[2]);
                break;
            case OpKind::CR2:
                reg.cr2(outcomes[*op.classical_in] != 0, w[0]);
                break;
            case OpKind::Measure:
                outcomes[*op.classical_out] = reg.measure(w[0], rng);
                break;
        }
    }
}

// Up to 64 shots at once: lane i of every word belongs to shot first + i.
// Lane i draws its bits from RandomSource(seed, first + i) in the same order
// as the scalar executor, so both produce identical outcomes per shot.
class BitSlicedBatch {
   public:
    BitSlicedBatch(const Circuit &circuit) : circuit_(circuit), c_(circuit.num_wires()), p_(circuit.num_wires()), slots_(circuit.num_slots) {
    }

    void run(uint64_t seed, uint64_t first, unsigned lanes) {
        rngs_.clear();
        for (unsigned i = 0; i < lanes; ++i) {
            rngs_.emplace_back(seed, first + i);
        }
        std::fill(c_.begin(), c_.end(), 0);
        std::fill(p_.begin(), p_.end(), 0);
        std::fill(slots_.begin(), slots_.end(), 0);
        for (const Operation &op : circuit_.operations) {
            const auto &w = op.wires;
            switch (op.kind) {
                case OpKind::Prepare:
                    c_[w[0]] = op.value ? ~uint64_t{0} : 0;
                    p_[w[0]] = random_word();
                    break;
                case OpKind::X:
                    c_[w[0]] = ~c_[w[0]];
                    break;
                case OpKind::Z:
                    p_[w[0]] = ~p_[w[0]];
                    break;
                case OpKind::H:
                    std::swap(c_[w[0]], p_[w[0]]);
                    break;
                case OpKind::S:
                    p_[w[0]] ^= c_[w[0]];
                    break;
                case OpKind::CNOT:
                    cnot(w[0], w[1]);
                    break;
                case OpKind::Toffoli:
                    toffoli(w[0], w[1], w[2]);
                    break;
                case OpKind::Fredkin:
                    cnot(w[2], w[1]);
                    toffoli(w[0], w[1], w[2]);
                    cnot(w[2], w[1]);
                    break;
                case OpKind::CR2: {
                    uint64_t mask = slots_[*op.classical_in];
                    p_[w[0]] ^= c_[w[0]] & mask;
                    c_[w[0]] ^= mask;
                    break;
                }
                case OpKind::Measure:
                    slots_[*op.classical_out] = c_[w[0]];
                    p_[w[0]] = random_word();
                    break;
            }
        }
    }

    uint64_t slot(size_t s) const {
        return slots_[s];
    }

   private:
    uint64_t random_word() {
        uint64_t word = 0;
        for (size_t i = 0; i < rngs_.size(); ++i) {
            word |= uint64_t{rngs_[i].next_bit()} << i;
        }
        return word;
    }

    void cnot(uint32_t control, uint32_t target) {
        c_[target] ^= c_[control];
        p_[control] ^= p_[target];
    }

    void toffoli(uint32_t a, uint32_t b, uint32_t t) {
        uint64_t ac = c_[a];
        uint64_t bc = c_[b];
        uint64_t tp = p_[t];
        c_[t] ^= ac & bc;
        p_[a] ^= bc & tp;
        p_[b] ^= ac & tp;
    }

    const Circuit &circuit_;
    std::vector<uint64_t> c_;
    std::vector<uint64_t> p_;
    std::vector<uint64_t> slots_;
    std::vector<RandomSource> rngs_;
};

void run_range_scalar(const Circuit &circuit, uint64_t seed, uint64_t begin, uint64_t end, const OutcomeLayout &layout,
                      std::vector<uint64_t> &counts) {
    QslRegister reg(circuit.num_wires());
    std::vector<uint8_t> outcomes(circuit.num_slots);
    for (uint64_t shot = begin; shot < end; ++shot) {
        RandomSource rng(seed, shot);
        execute(circuit, rng, reg, outcomes);
        counts[layout.assemble(outcomes)]++;
    }
}

void run_range_sliced(const Circuit &circuit, uint64_t seed, uint64_t begin, uint64_t end, const OutcomeLayout &layout,
                      std::vector<uint64_t> &counts) {
    BitSlicedBatch batch(circuit);
    for (uint64_t first = begin; first < end; first += 64) {
        unsigned lanes = static_cast<unsigned>(std::min<uint64_t>(64, end - first));
        batch.run(seed, first, lanes);
        for (unsigned lane = 0; lane < lanes; ++lane) {
            uint64_t m = 0;
            for (size_t s = 0; s < layout.slot_bit.size(); ++s) {
                if (layout.slot_bit[s] >= 0) {
                    m |= ((batch.slot(s) >> lane) & 1) << layout.slot_bit[s];
                }
            }
            counts[m]++;
        }
    }
}

}  // namespace

uint64_t OutcomeLayout::assemble(std::span<const uint8_t> outcomes) const {
    uint64_t m = 0;
    for (size_t s = 0; s < slot_bit.size() && s < outcomes.size(); ++s) {
        if (slot_bit[s] >= 0 && outcomes[s]) {
            m |= uint64_t{1} << slot_bit[s];
        }
    }
    return m;
}

std::vector<uint8_t> run_shot(const Circuit &circuit, uint64_t seed, uint64_t shot_index, QslRegister &final_state) {
    require_valid(circuit);
    final_state = QslRegister(circuit.num_wires());
    std::vector<uint8_t> outcomes(circuit.num_slots);
    RandomSource rng(seed, shot_index);
    execute(circuit, rng, final_state, outcomes);
    return outcomes;
}

std::vector<uint8_t> run_shot(const Circuit &circuit, uint64_t seed, uint64_t shot_index) {
    QslRegister reg(circuit.num_wires());
    return run_shot(circuit, seed, shot_index, reg);
}

Histogram sample(const Circuit &circuit, uint64_t shots, uint64_t seed, const OutcomeLayout &layout,
                 const SampleOptions &options) {
    if (shots == 0) {
        throw std::invalid_argument("empty sample: shots must be at least 1");
    }
    require_valid(circuit);
    if (layout.num_bits > 24) {
        throw std::invalid_argument("outcome layout too wide for a dense histogram");
    }
    for (int bit : layout.slot_bit) {
        if (bit >= static_cast<int>(layout.num_bits)) {
            throw std::invalid_argument("outcome layout maps a slot outside num_bits");
        }
    }

    const uint64_t space = uint64_t{1} << layout.num_bits;
    const uint64_t num_chunks = (shots + kChunkShots - 1) / kChunkShots;
    const unsigned workers = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(num_chunks)));

    std::vector<std::vector<uint64_t>> partial(workers, std::vector<uint64_t>(space, 0));
    std::atomic<uint64_t> next_chunk{0};
    auto worker = [&](unsigned id) {
        while (true) {
            uint64_t chunk = next_chunk.fetch_add(1);
            if (chunk >= num_chunks) {
                return;
            }
            uint64_t begin = options.first_shot + chunk * kChunkShots;
            uint64_t end = options.first_shot + std::min(shots, (chunk + 1) * kChunkShots);
            if (options.executor == ExecutorKind::Scalar) {
                run_range_scalar(circuit, seed, begin, end, layout, partial[id]);
            } else {
                run_range_sliced(circuit, seed, begin, end, layout, partial[id]);
            }
        }
    };
    if (workers == 1) {
        worker(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned id = 0; id < workers; ++id) {
            pool.emplace_back(worker, id);
        }
    }

    Histogram h;
    h.seed = seed;
    h.n_input_bits = layout.num_bits;
    for (uint64_t m = 0; m < space; ++m) {
        uint64_t total = 0;
        for (const auto &counts : partial) {
            total += counts[m];
        }
        h.add(m, total);
    }
    return h;
}

}  // namespace qsl
