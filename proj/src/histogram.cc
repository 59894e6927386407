#include "qsl/histogram.h"

#include <charconv>
#include <sstream>

#include "json.hpp"

namespace qsl {

namespace {

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

uint64_t parse_u64(std::string_view s, std::string_view what) {
    uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw FormatError("bad integer for " + std::string(what) + ": '" + std::string(s) + "'");
    }
    return v;
}

}  // namespace

void Histogram::add(uint64_t m, uint64_t n) {
    if (n == 0) {
        return;
    }
    counts[m] += n;
    shots += n;
}

Histogram merge(const Histogram &h1, const Histogram &h2) {
    if (h1.N != h2.N || h1.a != h2.a || h1.n_input_bits != h2.n_input_bits || h1.bit_order != h2.bit_order) {
        throw std::invalid_argument("cannot merge histograms with different metadata");
    }
    Histogram out = h1;
    for (auto [m, n] : h2.counts) {
        out.add(m, n);
    }
    return out;
}

void check_invariants(const Histogram &h) {
    if (h.n_input_bits > 32) {
        throw FormatError("n_input_bits too large: " + std::to_string(h.n_input_bits));
    }
    uint64_t total = 0;
    for (auto [m, n] : h.counts) {
        if (m >= h.outcome_space()) {
            throw FormatError("outcome " + std::to_string(m) + " outside [0, 2^" +
                              std::to_string(h.n_input_bits) + ")");
        }
        if (n == 0) {
            throw FormatError("zero count stored for outcome " + std::to_string(m));
        }
        total += n;
    }
    if (total != h.shots) {
        throw FormatError("counts sum to " + std::to_string(total) + " but shots = " + std::to_string(h.shots));
    }
}

std::string to_json(const Histogram &h) {
    nlohmann::ordered_json j;
    j["N"] = h.N;
    j["a"] = h.a;
    j["shots"] = h.shots;
    j["n_input_bits"] = h.n_input_bits;
    j["seed"] = h.seed;
    j["bit_order"] = h.bit_order;
    auto counts = nlohmann::ordered_json::object();
    for (auto [m, n] : h.counts) {
        counts[std::to_string(m)] = n;
    }
    j["counts"] = counts;
    return j.dump(2) + "\n";
}

Histogram histogram_from_json(const std::string &text) {
    Histogram h;
    try {
        auto j = nlohmann::json::parse(text);
        h.N = j.at("N").get<uint64_t>();
        h.a = j.at("a").get<uint64_t>();
        h.shots = j.at("shots").get<uint64_t>();
        h.n_input_bits = j.at("n_input_bits").get<uint32_t>();
        h.seed = j.at("seed").get<uint64_t>();
        h.bit_order = j.at("bit_order").get<std::string>();
        const auto &counts = j.at("counts");
        if (!counts.is_object()) {
            throw FormatError("counts must be an object");
        }
        for (const auto &[key, value] : counts.items()) {
            h.counts[parse_u64(key, "outcome key")] = value.get<uint64_t>();
        }
    } catch (const nlohmann::json::exception &e) {
        throw FormatError(std::string("malformed histogram JSON: ") + e.what());
    }
    check_invariants(h);
    return h;
}

std::string to_csv(const Histogram &h) {
    std::ostringstream out;
    out << "# N=" << h.N << "\n";
    out << "# a=" << h.a << "\n";
    out << "# shots=" << h.shots << "\n";
    out << "# n_input_bits=" << h.n_input_bits << "\n";
    out << "# seed=" << h.seed << "\n";
    out << "# bit_order=" << h.bit_order << "\n";
    out << "m,count,frequency,phase\n";
    const double space = static_cast<double>(h.outcome_space());
    for (auto [m, n] : h.counts) {
        out << m << ',' << n << ',' << format_double(h.frequency(m)) << ','
            << format_double(static_cast<double>(m) / space) << "\n";
    }
    return out.str();
}

Histogram histogram_from_csv(const std::string &text) {
    Histogram h;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    bool have_shots = false;
    bool have_bits = false;
    uint64_t declared_shots = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (line.starts_with("# ")) {
            auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw FormatError("bad metadata line: " + line);
            }
            std::string key = line.substr(2, eq - 2);
            std::string value = line.substr(eq + 1);
            if (key == "N") {
                h.N = parse_u64(value, key);
            } else if (key == "a") {
                h.a = parse_u64(value, key);
            } else if (key == "shots") {
                declared_shots = parse_u64(value, key);
                have_shots = true;
            } else if (key == "n_input_bits") {
                h.n_input_bits = static_cast<uint32_t>(parse_u64(value, key));
                have_bits = true;
            } else if (key == "seed") {
                h.seed = parse_u64(value, key);
            } else if (key == "bit_order") {
                h.bit_order = value;
            } else {
                throw FormatError("unknown metadata key: " + key);
            }
            continue;
        }
        if (!header_seen) {
            if (line != "m,count,frequency,phase") {
                throw FormatError("missing CSV header");
            }
            header_seen = true;
            continue;
        }
        std::string_view row(line);
        auto comma = row.find(',');
        if (comma == std::string_view::npos) {
            throw FormatError("bad CSV row: " + line);
        }
        auto comma2 = row.find(',', comma + 1);
        uint64_t m = parse_u64(row.substr(0, comma), "m");
        uint64_t n = parse_u64(row.substr(comma + 1, comma2 - comma - 1), "count");
        if (h.counts.contains(m)) {
            throw FormatError("duplicate outcome row: " + std::to_string(m));
        }
        h.counts[m] = n;
    }
    if (!header_seen || !have_shots || !have_bits) {
        throw FormatError("incomplete CSV histogram");
    }
    h.shots = declared_shots;
    check_invariants(h);
    return h;
}

}  // namespace qsl
