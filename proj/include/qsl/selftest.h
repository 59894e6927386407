#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "qsl/phased_bit.h"

namespace qsl {

/// The gate tables under test. Defaults to the library's tables; a mutated
/// copy lets the suite demonstrate it notices a corrupted gate.
struct GateTable {
    std::function<PhasedBit(PhasedBit)> x = gate_x;
    std::function<PhasedBit(PhasedBit)> z = gate_z;
    std::function<PhasedBit(PhasedBit)> h = gate_h;
    std::function<PhasedBit(PhasedBit)> s = gate_s;
    std::function<BitPair(PhasedBit, PhasedBit)> cnot = gate_cnot;
    std::function<BitTriple(PhasedBit, PhasedBit, PhasedBit)> toffoli = gate_toffoli;
    std::function<BitTriple(PhasedBit, PhasedBit, PhasedBit)> fredkin = gate_fredkin;
    std::function<PhasedBit(bool, PhasedBit)> cr2 = gate_cr2;

    static std::vector<std::string> gate_names();
    /// Copy with one gate replaced by a wrong table. Throws
    /// std::invalid_argument for an unknown gate name.
    static GateTable mutated(std::string_view gate);
};

struct SelftestCheck {
    std::string suite;
    std::string name;
    uint64_t cases = 0;
    bool passed = true;
    std::string failure;
};

struct SelftestReport {
    std::vector<SelftestCheck> checks;

    bool passed() const;
    uint64_t cases(std::string_view suite) const;
    std::string str() const;
};

/// Exhaustive gate-table identities over all 4/16/64 input states.
std::vector<SelftestCheck> check_gate_tables(const GateTable &table);

/// Every multiplier used for N = 15, every register value, both control
/// values, executed through `table`, against x -> a*x mod 15.
std::vector<SelftestCheck> check_multipliers(const GateTable &table);

/// Norm preservation through the reference oracle for all six bases.
std::vector<SelftestCheck> check_oracle_unitarity();

SelftestReport run_selftest(const GateTable &table = {});

}  // namespace qsl
