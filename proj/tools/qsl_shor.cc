// Command-line front end: sample the order-finding subroutine, compare it to
// the exact reference, and run end-to-end factoring.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "qsl/histogram.h"
#include "qsl/selftest.h"
#include "qsl/shor.h"
#include "qsl/sso.h"
#include "qsl/state_vector.h"

namespace {

enum ExitCode : int {
    kOk = 0,
    kSelftestFailed = 1,
    kInvalidArguments = 2,
    kMalformedInput = 3,
    kRetriesExhausted = 4,
};

struct RunConfig {
    uint64_t a = 0;
    uint64_t N = qsl::shor::kModulus;
    uint64_t shots = 1000000;
    std::optional<uint64_t> seed;
    std::string out;
    std::string format = "json";
    unsigned threads = 1;
    std::string executor = "bitsliced";
    bool all = false;
    uint64_t max_retries = 32;
    std::string histogram_file;
    std::string mutate;
    uint32_t replicates = 200;
};

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

uint64_t effective_seed(const RunConfig &cfg) {
    if (cfg.seed) {
        return *cfg.seed;
    }
    std::random_device rd;
    return (uint64_t{rd()} << 32) ^ rd();
}

qsl::shor::ShorParams params_for(uint64_t a) {
    try {
        return qsl::shor::ShorParams::make(a);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
}

qsl::SampleOptions sample_options(const RunConfig &cfg) {
    qsl::SampleOptions opts;
    opts.threads = cfg.threads;
    opts.executor = cfg.executor == "scalar" ? qsl::ExecutorKind::Scalar : qsl::ExecutorKind::BitSliced;
    return opts;
}

void emit(const RunConfig &cfg, const std::string &data) {
    if (cfg.out.empty()) {
        std::cout << data;
        return;
    }
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) {
        throw UsageError("cannot write " + cfg.out);
    }
    file << data;
}

// Status lines go to stdout when the data went to a file, otherwise stderr.
std::ostream &status(const RunConfig &cfg) {
    return cfg.out.empty() ? std::cerr : std::cout;
}

std::string format_sso(const qsl::oracle::SsoResult &r) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%.6f +- %.6f", r.sso, r.std_error);
    return buf;
}

int cmd_run(const RunConfig &cfg) {
    if (cfg.N != qsl::shor::kModulus) {
        throw UsageError("only N=15 is supported");
    }
    auto params = params_for(cfg.a);
    uint64_t seed = effective_seed(cfg);
    auto h = qsl::shor::run_subroutine(params, cfg.shots, seed, sample_options(cfg));
    emit(cfg, cfg.format == "csv" ? qsl::to_csv(h) : qsl::to_json(h));
    auto ideal = qsl::oracle::ideal_distribution(params);
    auto s = qsl::oracle::sso(h, ideal, cfg.replicates, seed);
    status(cfg) << "seed=" << seed << " a=" << cfg.a << " shots=" << cfg.shots << " sso=" << format_sso(s) << "\n";
    return kOk;
}

qsl::Histogram read_histogram(const std::string &path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw qsl::FormatError("cannot read " + path);
    }
    std::stringstream buf;
    buf << file.rdbuf();
    std::string text = buf.str();
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        return qsl::histogram_from_json(text);
    }
    return qsl::histogram_from_csv(text);
}

int cmd_sso(const RunConfig &cfg) {
    if (cfg.all) {
        uint64_t seed = effective_seed(cfg);
        std::cout << "seed=" << seed << " shots=" << cfg.shots << "\n";
        std::cout << "a,sso,std_error\n";
        for (uint64_t a : qsl::shor::kBases) {
            auto params = params_for(a);
            auto h = qsl::shor::run_subroutine(params, cfg.shots, seed, sample_options(cfg));
            auto s = qsl::oracle::sso(h, qsl::oracle::ideal_distribution(params), cfg.replicates, seed);
            char line[96];
            std::snprintf(line, sizeof(line), "%llu,%.6f,%.6f\n", static_cast<unsigned long long>(a), s.sso,
                          s.std_error);
            std::cout << line;
        }
        return kOk;
    }
    if (cfg.histogram_file.empty()) {
        throw UsageError("sso needs a histogram file or --all");
    }
    qsl::Histogram h;
    try {
        h = read_histogram(cfg.histogram_file);
        if (h.shots == 0) {
            throw qsl::FormatError("histogram has no counts");
        }
        if (h.N != qsl::shor::kModulus || h.n_input_bits != qsl::shor::kInputBits) {
            throw qsl::FormatError("histogram is not an N=15 order-finding run");
        }
        qsl::shor::ShorParams::make(h.a);
    } catch (const std::invalid_argument &e) {
        throw qsl::FormatError(e.what());
    }
    auto ideal = qsl::oracle::ideal_distribution(qsl::shor::ShorParams::make(h.a));
    auto s = qsl::oracle::sso(h, ideal, cfg.replicates, h.seed);
    std::cout << "a=" << h.a << " shots=" << h.shots << " seed=" << h.seed << " sso=" << format_sso(s) << "\n";
    return kOk;
}

int cmd_oracle(const RunConfig &cfg) {
    auto params = params_for(cfg.a);
    emit(cfg, qsl::oracle::to_json(qsl::oracle::ideal_distribution(params)));
    return kOk;
}

int cmd_factor(const RunConfig &cfg) {
    if (cfg.N != qsl::shor::kModulus) {
        throw UsageError("only N=15 is supported");
    }
    qsl::shor::DriverOptions opts;
    opts.max_retries = cfg.max_retries;
    if (cfg.a != 0) {
        if (cfg.a < 2 || cfg.a > cfg.N - 2) {
            throw UsageError("a must lie in 2..13");
        }
        opts.fixed_a = cfg.a;
    }
    uint64_t seed = effective_seed(cfg);
    auto report = qsl::shor::shor_driver(cfg.N, seed, opts);
    emit(cfg, qsl::shor::to_json(report));
    auto &log = status(cfg);
    log << "seed=" << seed << " invocations=" << report.invocations;
    if (!report.success()) {
        log << " retries exhausted\n";
        return kRetriesExhausted;
    }
    log << " factors=";
    bool first = true;
    for (auto f : report.factors) {
        log << (first ? "" : ",") << f;
        first = false;
    }
    log << "\n";
    return kOk;
}

int cmd_selftest(const RunConfig &cfg) {
    qsl::GateTable table;
    if (!cfg.mutate.empty()) {
        try {
            table = qsl::GateTable::mutated(cfg.mutate);
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
    }
    auto report = qsl::run_selftest(table);
    std::cout << report.str();
    return report.passed() ? kOk : kSelftestFailed;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"QSL simulation of Shor's order-finding subroutine for N=15"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_seed = [&](CLI::App *sub) {
        sub->add_option("--seed", cfg.seed, "RNG seed (default: from entropy; always echoed)");
    };
    auto add_sampling = [&](CLI::App *sub) {
        sub->add_option("--shots", cfg.shots, "Number of shots")->check(CLI::PositiveNumber);
        sub->add_option("--threads", cfg.threads, "Worker threads (does not change results)")
            ->check(CLI::Range(1u, 1024u));
        sub->add_option("--executor", cfg.executor, "Shot executor")
            ->check(CLI::IsMember({"scalar", "bitsliced"}));
        sub->add_option("--replicates", cfg.replicates, "Bootstrap replicates for the SSO error bar");
        add_seed(sub);
    };
    auto add_output = [&](CLI::App *sub) {
        sub->add_option("--out", cfg.out, "Output file (default: standard output)");
    };

    auto *run = app.add_subcommand("run", "Sample the subroutine for one base and write the histogram");
    run->add_option("-a", cfg.a, "Base a in {2,4,7,8,11,13}")->required();
    run->add_option("-N", cfg.N, "Modulus (only 15)");
    add_sampling(run);
    add_output(run);
    run->add_option("--format", cfg.format, "Histogram format")->check(CLI::IsMember({"json", "csv"}));

    auto *sso = app.add_subcommand("sso", "SSO of a histogram file against the exact distribution");
    sso->add_option("histogram", cfg.histogram_file, "Histogram file (JSON or CSV)");
    sso->add_flag("--all", cfg.all, "Sample all six bases and print the SSO table");
    add_sampling(sso);

    auto *orc = app.add_subcommand("oracle", "Exact output distribution for one base");
    orc->add_option("-a", cfg.a, "Base a in {2,4,7,8,11,13}")->required();
    add_output(orc);

    auto *factor = app.add_subcommand("factor", "Factor N=15 end to end");
    factor->add_option("-N", cfg.N, "Modulus (only 15)");
    factor->add_option("-a", cfg.a, "Pin the base instead of drawing it at random");
    factor->add_option("--max-retries", cfg.max_retries, "Maximum subroutine invocations");
    add_seed(factor);
    add_output(factor);

    auto *selftest = app.add_subcommand("selftest", "Exhaustive gate, multiplier and oracle checks");
    selftest->add_option("--mutate", cfg.mutate, "Corrupt one gate table to exercise the suite")
        ->group("");  // hidden

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kInvalidArguments;
    }

    try {
        if (*run) {
            return cmd_run(cfg);
        }
        if (*sso) {
            return cmd_sso(cfg);
        }
        if (*orc) {
            return cmd_oracle(cfg);
        }
        if (*factor) {
            return cmd_factor(cfg);
        }
        if (*selftest) {
            return cmd_selftest(cfg);
        }
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalidArguments;
    } catch (const qsl::FormatError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMalformedInput;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalidArguments;
    }
    return kInvalidArguments;
}
