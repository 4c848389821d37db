#pragma once

#include <cassert>
#include <cstdint>

#include "pmg/rational.hpp"

namespace pmg {

// Two-component weight compared lexicographically: primary first, then
// secondary. Forms an ordered abelian group under componentwise addition,
// which is all the matching engine requires. The secondary component holds
// integer-valued penalty terms in practice.
struct LexPair {
    Rational primary;
    Rational secondary;

    LexPair() = default;
    LexPair(Rational p, Rational s) : primary(std::move(p)), secondary(std::move(s)) {}

    LexPair operator-() const { return {-primary, -secondary}; }
    LexPair& operator+=(const LexPair& o) {
        primary += o.primary;
        secondary += o.secondary;
        return *this;
    }
    LexPair& operator-=(const LexPair& o) {
        primary -= o.primary;
        secondary -= o.secondary;
        return *this;
    }
    friend LexPair operator+(LexPair a, const LexPair& b) { a += b; return a; }
    friend LexPair operator-(LexPair a, const LexPair& b) { a -= b; return a; }

    friend bool operator==(const LexPair& a, const LexPair& b) {
        return a.primary == b.primary && a.secondary == b.secondary;
    }
    friend bool operator!=(const LexPair& a, const LexPair& b) { return !(a == b); }
    friend bool operator<(const LexPair& a, const LexPair& b) {
        if (a.primary != b.primary) return a.primary < b.primary;
        return a.secondary < b.secondary;
    }
    friend bool operator<=(const LexPair& a, const LexPair& b) { return a == b || a < b; }
    friend bool operator>(const LexPair& a, const LexPair& b) { return b < a; }
    friend bool operator>=(const LexPair& a, const LexPair& b) { return b <= a; }
};

// Exact halving, required by the matching solver's dual updates. For the
// integer instantiation the solver only ever halves even values (weights are
// doubled on entry); the assert guards that invariant.
inline Rational weight_half(const Rational& w) { return w.half(); }
inline LexPair weight_half(const LexPair& w) { return {w.primary.half(), w.secondary.half()}; }
inline std::int64_t weight_half(std::int64_t w) {
    assert(w % 2 == 0);
    return w / 2;
}

template <typename W>
W weight_zero() {
    return W{};
}
template <>
inline std::int64_t weight_zero<std::int64_t>() {
    return 0;
}

}  // namespace pmg
