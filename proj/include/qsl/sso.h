#pragma once

#include <cstdint>
#include <span>

#include "qsl/histogram.h"
#include "qsl/state_vector.h"

namespace qsl::oracle {

struct SsoResult {
    double sso = 0;
    /// One standard deviation, from a multinomial bootstrap over the counts.
    double std_error = 0;
    uint64_t shots = 0;
    uint32_t replicates = 0;
};

/// Square statistical overlap (sum_j sqrt(e_j * o_j))^2 of two probability
/// vectors of equal length.
double square_statistical_overlap(std::span<const double> e, std::span<const double> o);

/// SSO of the histogram's empirical frequencies against `ideal`, with a
/// bootstrap error bar (deterministic given `bootstrap_seed`).
/// Throws std::invalid_argument for an empty histogram or mismatched
/// outcome spaces.
SsoResult sso(const Histogram &empirical, const Distribution &ideal, uint32_t replicates = 200,
              uint64_t bootstrap_seed = 0);

}  // namespace qsl::oracle
