#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace qsl {

inline constexpr const char *kBitOrderMsbFirstByPower = "msb-first-by-power";

/// Outcome counts over the measured input-register integer m, plus the
/// metadata needed to re-analyze a run without repeating it.
struct Histogram {
    uint64_t N = 0;
    uint64_t a = 0;
    uint64_t shots = 0;
    uint64_t seed = 0;
    uint32_t n_input_bits = 0;
    std::string bit_order = kBitOrderMsbFirstByPower;
    /// Only nonzero counts are stored.
    std::map<uint64_t, uint64_t> counts;

    uint64_t outcome_space() const {
        return uint64_t{1} << n_input_bits;
    }
    uint64_t count(uint64_t m) const {
        auto it = counts.find(m);
        return it == counts.end() ? 0 : it->second;
    }
    double frequency(uint64_t m) const {
        return shots == 0 ? 0.0 : static_cast<double>(count(m)) / static_cast<double>(shots);
    }
    void add(uint64_t m, uint64_t n = 1);

    friend bool operator==(const Histogram &, const Histogram &) = default;
};

/// Raised when a serialized histogram cannot be parsed or violates the
/// histogram invariants.
class FormatError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Pointwise count addition. Throws std::invalid_argument unless N, a,
/// n_input_bits and bit_order agree. The result keeps h1's seed.
Histogram merge(const Histogram &h1, const Histogram &h2);

/// Throws FormatError if counts do not sum to shots or a key is out of range.
void check_invariants(const Histogram &h);

std::string to_json(const Histogram &h);
Histogram histogram_from_json(const std::string &text);

/// CSV with `# key=value` metadata lines, then `m,count,frequency,phase`
/// rows where phase = m / 2^n_input_bits.
std::string to_csv(const Histogram &h);
Histogram histogram_from_csv(const std::string &text);

}  // namespace qsl
