#include "qsl/selftest.h"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qsl/shor.h"
#include "qsl/state_vector.h"

namespace qsl {

namespace {

PhasedBit pb(unsigned code) {
    return PhasedBit::from_code(code);
}

unsigned code2(const BitPair &r) {
    return (r.first.code() << 2) | r.second.code();
}

unsigned code3(const BitTriple &r) {
    return (r.first.code() << 4) | (r.second.code() << 2) | r.third.code();
}

class Checker {
   public:
    Checker(std::string suite, std::string name) {
        check_.suite = std::move(suite);
        check_.name = std::move(name);
    }

    void expect(bool ok, const std::string &what) {
        ++check_.cases;
        if (!ok && check_.passed) {
            check_.passed = false;
            check_.failure = what;
        }
    }

    SelftestCheck done() {
        return check_;
    }

   private:
    SelftestCheck check_;
};

template <typename F>
SelftestCheck single_bit_check(const std::string &name, F predicate) {
    Checker c("gates", name);
    for (unsigned v = 0; v < 4; ++v) {
        c.expect(predicate(pb(v)), "fails on " + pb(v).str());
    }
    return c.done();
}

}  // namespace

std::vector<std::string> GateTable::gate_names() {
    return {"x", "z", "h", "s", "cnot", "toffoli", "fredkin", "cr2"};
}

GateTable GateTable::mutated(std::string_view gate) {
    GateTable t;
    if (gate == "x") {
        t.x = [](PhasedBit q) { return PhasedBit{!q.c, !q.p}; };
    } else if (gate == "z") {
        t.z = [](PhasedBit q) { return q; };
    } else if (gate == "h") {
        t.h = [](PhasedBit q) { return PhasedBit{q.p, !q.c}; };
    } else if (gate == "s") {
        t.s = [](PhasedBit q) { return PhasedBit{q.c != q.p, q.p}; };
    } else if (gate == "cnot") {
        t.cnot = [](PhasedBit c, PhasedBit x) {
            x.c ^= c.c;
            return BitPair{c, x};
        };
    } else if (gate == "toffoli") {
        t.toffoli = [](PhasedBit a, PhasedBit b, PhasedBit x) {
            x.c ^= a.c && b.c;
            return BitTriple{a, b, x};
        };
    } else if (gate == "fredkin") {
        t.fredkin = [](PhasedBit ctl, PhasedBit x, PhasedBit y) {
            if (ctl.c) {
                std::swap(x, y);
            }
            return BitTriple{ctl, x, y};
        };
    } else if (gate == "cr2") {
        t.cr2 = [](bool control, PhasedBit q) {
            if (control) {
                q.p ^= q.c;
            }
            return q;
        };
    } else {
        throw std::invalid_argument("unknown gate: " + std::string(gate));
    }
    return t;
}

std::vector<SelftestCheck> check_gate_tables(const GateTable &t) {
    std::vector<SelftestCheck> out;

    // Defining tables, written out independently of the library.
    out.push_back(single_bit_check("x table", [&](PhasedBit q) { return t.x(q) == PhasedBit{!q.c, q.p}; }));
    out.push_back(single_bit_check("z table", [&](PhasedBit q) { return t.z(q) == PhasedBit{q.c, !q.p}; }));
    out.push_back(single_bit_check("h table", [&](PhasedBit q) { return t.h(q) == PhasedBit{q.p, q.c}; }));
    out.push_back(single_bit_check("s table", [&](PhasedBit q) { return t.s(q) == PhasedBit{q.c, q.p != q.c}; }));
    out.push_back(single_bit_check("cr2 table", [&](PhasedBit q) {
        return t.cr2(false, q) == q && t.cr2(true, q) == PhasedBit{!q.c, q.p != q.c};
    }));
    {
        Checker c("gates", "cnot table");
        for (unsigned v = 0; v < 16; ++v) {
            PhasedBit ctl = pb(v >> 2), tgt = pb(v & 3);
            BitPair want{{ctl.c, ctl.p != tgt.p}, {tgt.c != ctl.c, tgt.p}};
            c.expect(t.cnot(ctl, tgt) == want, "fails on " + ctl.str() + tgt.str());
        }
        out.push_back(c.done());
    }
    {
        Checker c("gates", "toffoli table");
        for (unsigned v = 0; v < 64; ++v) {
            PhasedBit a = pb(v >> 4), b = pb((v >> 2) & 3), x = pb(v & 3);
            BitTriple want{{a.c, a.p != (b.c && x.p)}, {b.c, b.p != (a.c && x.p)}, {x.c != (a.c && b.c), x.p}};
            c.expect(t.toffoli(a, b, x) == want, "fails on " + a.str() + b.str() + x.str());
        }
        out.push_back(c.done());
    }

    // Bijections.
    auto bijective1 = [&](const std::string &name, auto f) {
        Checker c("gates", name + " bijection");
        std::set<unsigned> images;
        for (unsigned v = 0; v < 4; ++v) {
            images.insert(f(pb(v)).code());
        }
        c.expect(images.size() == 4, "not a bijection on 4 states");
        out.push_back(c.done());
    };
    bijective1("x", t.x);
    bijective1("z", t.z);
    bijective1("h", t.h);
    bijective1("s", t.s);
    bijective1("cr2(1)", [&](PhasedBit q) { return t.cr2(true, q); });
    {
        Checker c("gates", "cnot bijection");
        std::set<unsigned> images;
        for (unsigned v = 0; v < 16; ++v) {
            images.insert(code2(t.cnot(pb(v >> 2), pb(v & 3))));
        }
        c.expect(images.size() == 16, "not a bijection on 16 states");
        out.push_back(c.done());
    }
    for (auto [name, gate] : {std::pair{"toffoli", &t.toffoli}, std::pair{"fredkin", &t.fredkin}}) {
        Checker c("gates", std::string(name) + " bijection");
        std::set<unsigned> images;
        for (unsigned v = 0; v < 64; ++v) {
            images.insert(code3((*gate)(pb(v >> 4), pb((v >> 2) & 3), pb(v & 3))));
        }
        c.expect(images.size() == 64, "not a bijection on 64 states");
        out.push_back(c.done());
    }

    // Involutions.
    out.push_back(single_bit_check("x involution", [&](PhasedBit q) { return t.x(t.x(q)) == q; }));
    out.push_back(single_bit_check("z involution", [&](PhasedBit q) { return t.z(t.z(q)) == q; }));
    out.push_back(single_bit_check("h involution", [&](PhasedBit q) { return t.h(t.h(q)) == q; }));
    out.push_back(single_bit_check("s squares to identity", [&](PhasedBit q) { return t.s(t.s(q)) == q; }));
    {
        Checker c("gates", "cnot involution");
        for (unsigned v = 0; v < 16; ++v) {
            auto once = t.cnot(pb(v >> 2), pb(v & 3));
            c.expect(code2(t.cnot(once.first, once.second)) == v, "fails on state " + std::to_string(v));
        }
        out.push_back(c.done());
    }
    for (auto [name, gate] : {std::pair{"toffoli", &t.toffoli}, std::pair{"fredkin", &t.fredkin}}) {
        Checker c("gates", std::string(name) + " involution");
        for (unsigned v = 0; v < 64; ++v) {
            auto once = (*gate)(pb(v >> 4), pb((v >> 2) & 3), pb(v & 3));
            c.expect(code3((*gate)(once.first, once.second, once.third)) == v, "fails on state " + std::to_string(v));
        }
        out.push_back(c.done());
    }

    // Conjugation identities.
    out.push_back(single_bit_check("H X H = Z", [&](PhasedBit q) { return t.h(t.x(t.h(q))) == t.z(q); }));
    out.push_back(single_bit_check("H Z H = X", [&](PhasedBit q) { return t.h(t.z(t.h(q))) == t.x(q); }));
    {
        Checker c("gates", "H-conjugated cnot exchanges control and target");
        for (unsigned v = 0; v < 16; ++v) {
            PhasedBit a = pb(v >> 2), b = pb(v & 3);
            auto mid = t.cnot(t.h(a), t.h(b));
            BitPair lhs{t.h(mid.first), t.h(mid.second)};
            auto swapped = t.cnot(b, a);
            c.expect(lhs == BitPair{swapped.second, swapped.first}, "fails on " + a.str() + b.str());
        }
        out.push_back(c.done());
    }
    {
        Checker c("gates", "H-conjugated toffoli target is symmetric");
        for (unsigned v = 0; v < 64; ++v) {
            PhasedBit a = pb(v >> 4), b = pb((v >> 2) & 3), x = pb(v & 3);
            auto mid = t.toffoli(a, b, t.h(x));
            BitTriple got{mid.first, mid.second, t.h(mid.third)};
            BitTriple want{{a.c, a.p != (b.c && x.c)}, {b.c, b.p != (a.c && x.c)}, {x.c, x.p != (a.c && b.c)}};
            c.expect(got == want, "fails on " + a.str() + b.str() + x.str());
        }
        out.push_back(c.done());
    }
    {
        Checker c("gates", "toffoli computational projection is classical toffoli");
        for (unsigned v = 0; v < 64; ++v) {
            PhasedBit a = pb(v >> 4), b = pb((v >> 2) & 3), x = pb(v & 3);
            auto r = t.toffoli(a, b, x);
            c.expect(r.first.c == a.c && r.second.c == b.c && r.third.c == (x.c != (a.c && b.c)),
                     "fails on " + a.str() + b.str() + x.str());
        }
        out.push_back(c.done());
    }
    {
        Checker c("gates", "fredkin equals cnot(y->x) toffoli(ctl,x->y) cnot(y->x)");
        for (unsigned v = 0; v < 64; ++v) {
            PhasedBit ctl = pb(v >> 4), x = pb((v >> 2) & 3), y = pb(v & 3);
            auto s1 = t.cnot(y, x);
            auto s2 = t.toffoli(ctl, s1.second, s1.first);
            auto s3 = t.cnot(s2.third, s2.second);
            BitTriple want{s2.first, s3.second, s3.first};
            auto got = t.fredkin(ctl, x, y);
            c.expect(got == want, "fails on " + ctl.str() + x.str() + y.str());
            bool swapped = got.second.c == (ctl.c ? y.c : x.c) && got.third.c == (ctl.c ? x.c : y.c);
            c.expect(swapped, "not a controlled swap on " + ctl.str() + x.str() + y.str());
        }
        out.push_back(c.done());
    }
    return out;
}

std::vector<SelftestCheck> check_multipliers(const GateTable &t) {
    std::vector<SelftestCheck> out;
    const shor::OutputWires wires{1, 2, 3, 4};
    for (uint64_t a : shor::kBases) {
        Checker c("multipliers", "x" + std::to_string(a) + " mod 15");
        auto spec = shor::multiplier_circuit(a, 0, wires);
        std::set<uint64_t> images;
        for (uint64_t x = 0; x < 16; ++x) {
            for (bool control : {false, true}) {
                std::vector<PhasedBit> reg(5);
                reg[0].c = control;
                for (int i = 0; i < 4; ++i) {
                    reg[1 + i].c = (x >> i) & 1;
                }
                for (const auto &op : spec.gates) {
                    const auto &w = op.wires;
                    if (op.kind == OpKind::Fredkin) {
                        auto r = t.fredkin(reg[w[0]], reg[w[1]], reg[w[2]]);
                        reg[w[0]] = r.first;
                        reg[w[1]] = r.second;
                        reg[w[2]] = r.third;
                    } else {
                        auto r = t.cnot(reg[w[0]], reg[w[1]]);
                        reg[w[0]] = r.first;
                        reg[w[1]] = r.second;
                    }
                }
                uint64_t y = 0;
                for (int i = 0; i < 4; ++i) {
                    y |= uint64_t{reg[1 + i].c} << i;
                }
                std::string where = "x=" + std::to_string(x) + " control=" + std::to_string(control);
                if (control) {
                    images.insert(y);
                    c.expect(y % 15 == a * x % 15, where + " gave " + std::to_string(y));
                } else {
                    c.expect(y == x, where + " gave " + std::to_string(y));
                }
                c.expect(reg[0].c == control, where + " disturbed the control");
            }
        }
        c.expect(images.size() == 16, "controlled action is not a permutation of 0..15");
        out.push_back(c.done());
    }
    return out;
}

std::vector<SelftestCheck> check_oracle_unitarity() {
    std::vector<SelftestCheck> out;
    for (uint64_t a : shor::kBases) {
        Checker c("oracle", "norm preserved for a=" + std::to_string(a));
        double err = 0;
        auto d = oracle::ideal_distribution(shor::ShorParams::make(a), &err);
        std::ostringstream msg;
        msg << "norm error " << err;
        c.expect(err < 1e-10, msg.str());
        c.expect(std::abs(d.total() - 1.0) < 1e-10, "distribution does not sum to 1");
        out.push_back(c.done());
    }
    return out;
}

bool SelftestReport::passed() const {
    for (const auto &c : checks) {
        if (!c.passed) {
            return false;
        }
    }
    return true;
}

uint64_t SelftestReport::cases(std::string_view suite) const {
    uint64_t n = 0;
    for (const auto &c : checks) {
        if (c.suite == suite) {
            n += c.cases;
        }
    }
    return n;
}

std::string SelftestReport::str() const {
    std::ostringstream out;
    for (const auto &c : checks) {
        out << (c.passed ? "PASS " : "FAIL ") << c.suite << ": " << c.name << " (" << c.cases << " cases)";
        if (!c.passed) {
            out << " -- " << c.failure;
        }
        out << "\n";
    }
    for (const char *suite : {"gates", "multipliers", "oracle"}) {
        out << suite << ": " << cases(suite) << " cases\n";
    }
    out << (passed() ? "selftest passed\n" : "selftest FAILED\n");
    return out.str();
}

SelftestReport run_selftest(const GateTable &table) {
    SelftestReport report;
    for (auto &c : check_gate_tables(table)) {
        report.checks.push_back(std::move(c));
    }
    for (auto &c : check_multipliers(table)) {
        report.checks.push_back(std::move(c));
    }
    for (auto &c : check_oracle_unitarity()) {
        report.checks.push_back(std::move(c));
    }
    return report;
}

}  // namespace qsl
