#include "qsl/sso.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace qsl::oracle {

double square_statistical_overlap(std::span<const double> e, std::span<const double> o) {
    if (e.size() != o.size()) {
        throw std::invalid_argument("SSO needs distributions over the same outcome space");
    }
    double overlap = 0;
    for (size_t j = 0; j < e.size(); ++j) {
        overlap += std::sqrt(std::max(0.0, e[j]) * std::max(0.0, o[j]));
    }
    return std::min(1.0, overlap * overlap);
}

SsoResult sso(const Histogram &empirical, const Distribution &ideal, uint32_t replicates, uint64_t bootstrap_seed) {
    if (empirical.shots == 0 || empirical.counts.empty()) {
        throw std::invalid_argument("SSO of an empty histogram");
    }
    if (empirical.outcome_space() != ideal.probs.size()) {
        throw std::invalid_argument("histogram and distribution cover different outcome spaces");
    }
    const double shots = static_cast<double>(empirical.shots);

    // Only outcomes seen in the histogram can contribute, for the point
    // estimate and for every bootstrap replicate.
    std::vector<uint64_t> outcomes;
    std::vector<double> sqrt_ideal;
    std::vector<double> probs;
    for (auto [m, n] : empirical.counts) {
        outcomes.push_back(m);
        sqrt_ideal.push_back(std::sqrt(ideal.probs[m]));
        probs.push_back(static_cast<double>(n) / shots);
    }
    auto overlap = [&](const std::vector<double> &freq) {
        double acc = 0;
        for (size_t i = 0; i < freq.size(); ++i) {
            acc += std::sqrt(freq[i]) * sqrt_ideal[i];
        }
        return std::min(1.0, acc * acc);
    };

    SsoResult result;
    result.shots = empirical.shots;
    result.replicates = replicates;
    result.sso = overlap(probs);
    if (replicates < 2) {
        return result;
    }

    std::mt19937_64 rng(bootstrap_seed);
    std::vector<double> freq(probs.size());
    double sum = 0;
    double sum_sq = 0;
    for (uint32_t rep = 0; rep < replicates; ++rep) {
        // Multinomial draw as a chain of conditional binomials.
        uint64_t left = empirical.shots;
        double mass_left = 1.0;
        for (size_t i = 0; i < probs.size(); ++i) {
            uint64_t draw = left;
            if (i + 1 < probs.size() && left > 0) {
                double q = mass_left > 0 ? std::clamp(probs[i] / mass_left, 0.0, 1.0) : 1.0;
                draw = std::binomial_distribution<uint64_t>(left, q)(rng);
            }
            freq[i] = static_cast<double>(draw) / shots;
            left -= draw;
            mass_left -= probs[i];
            if (mass_left <= 0) {
                mass_left = 0;
            }
        }
        double v = overlap(freq);
        sum += v;
        sum_sq += v * v;
    }
    const double n = replicates;
    double mean = sum / n;
    result.std_error = std::sqrt(std::max(0.0, (sum_sq - n * mean * mean) / (n - 1)));
    return result;
}

}  // namespace qsl::oracle
