#include "qsl/phased_bit.h"

#include <cassert>

namespace qsl {

std::string PhasedBit::str() const {
    std::string s = "(c=";
    s += c ? '1' : '0';
    s += ",p=";
    s += p ? '1' : '0';
    s += ')';
    return s;
}

PhasedBit prepare(bool value, RandomSource &rng) {
    return {value, rng.next_bit()};
}

bool measure(PhasedBit &q, RandomSource &rng) {
    q.p = rng.next_bit();
    return q.c;
}

PhasedBit gate_x(PhasedBit q) {
    return {!q.c, q.p};
}

PhasedBit gate_z(PhasedBit q) {
    return {q.c, !q.p};
}

PhasedBit gate_h(PhasedBit q) {
    return {q.p, q.c};
}

// Diagonal on the computational bit. Unlike the quantum S, applying it twice
// is the identity.
PhasedBit gate_s(PhasedBit q) {
    return {q.c, q.p != q.c};
}

// Computational information flows control -> target, phase information flows
// back target -> control.
BitPair gate_cnot(PhasedBit control, PhasedBit target) {
    target.c ^= control.c;
    control.p ^= target.p;
    return {control, target};
}

// Each control's phase bit picks up (other control's computational bit AND
// target phase bit), the two-control generalization of CNOT kickback.
BitTriple gate_toffoli(PhasedBit a, PhasedBit b, PhasedBit t) {
    bool ac = a.c;
    bool bc = b.c;
    bool tp = t.p;
    t.c ^= ac && bc;
    a.p ^= bc && tp;
    b.p ^= ac && tp;
    return {a, b, t};
}

BitTriple gate_fredkin(PhasedBit ctl, PhasedBit x, PhasedBit y) {
    auto [y1, x1] = gate_cnot(y, x);
    auto [ctl2, x2, y2] = gate_toffoli(ctl, x1, y1);
    auto [y3, x3] = gate_cnot(y2, x2);
    return {ctl2, x3, y3};
}

PhasedBit gate_cr2(bool classical_control, PhasedBit q) {
    if (!classical_control) {
        return q;
    }
    q.p ^= q.c;
    q.c = !q.c;
    return q;
}

void QslRegister::prepare(size_t w, bool value, RandomSource &rng) {
    bits_[w] = qsl::prepare(value, rng);
}

bool QslRegister::measure(size_t w, RandomSource &rng) {
    return qsl::measure(bits_[w], rng);
}

void QslRegister::x(size_t w) {
    bits_[w] = gate_x(bits_[w]);
}

void QslRegister::z(size_t w) {
    bits_[w] = gate_z(bits_[w]);
}

void QslRegister::h(size_t w) {
    bits_[w] = gate_h(bits_[w]);
}

void QslRegister::s(size_t w) {
    bits_[w] = gate_s(bits_[w]);
}

void QslRegister::cnot(size_t control, size_t target) {
    assert(control != target);
    auto r = gate_cnot(bits_[control], bits_[target]);
    bits_[control] = r.first;
    bits_[target] = r.second;
}

void QslRegister::toffoli(size_t a, size_t b, size_t t) {
    assert(a != b && a != t && b != t);
    auto r = gate_toffoli(bits_[a], bits_[b], bits_[t]);
    bits_[a] = r.first;
    bits_[b] = r.second;
    bits_[t] = r.third;
}

void QslRegister::fredkin(size_t ctl, size_t x, size_t y) {
    assert(ctl != x && ctl != y && x != y);
    auto r = gate_fredkin(bits_[ctl], bits_[x], bits_[y]);
    bits_[ctl] = r.first;
    bits_[x] = r.second;
    bits_[y] = r.third;
}

void QslRegister::cr2(bool classical_control, size_t w) {
    bits_[w] = gate_cr2(classical_control, bits_[w]);
}

}  // namespace qsl
