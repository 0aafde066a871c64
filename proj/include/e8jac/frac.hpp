#pragma once

#include "e8jac/poly.hpp"

#include <optional>
#include <vector>

namespace e8jac {

// num / (E4^e4_pow * Delta^delta_pow) with num over AB. Delta is never a ring
// symbol: it only appears as a denominator exponent or expanded as
// (E4^3 - E6^2)/1728.
template <typename C>
struct BasicFrac {
    BasicPoly<C> num;
    int e4_pow = 0;
    int delta_pow = 0;

    explicit BasicFrac(BasicPoly<C> n, int p = 0, int q = 0) : num(std::move(n)), e4_pow(p), delta_pow(q) {}

    friend bool operator==(const BasicFrac& a, const BasicFrac& b)
    {
        return a.e4_pow == b.e4_pow && a.delta_pow == b.delta_pow && a.num == b.num;
    }
};

using Frac = BasicFrac<Rational>;
using ParamFrac = BasicFrac<LinearForm>;

// (E4^3 - E6^2)/1728 over the given alphabet (AB or ab; both start E4, E6).
Poly delta_polynomial(const Alphabet& alphabet = Alphabet::AB());

// Delta^n, memoized per alphabet.
const Poly& delta_power(const Alphabet& alphabet, unsigned n);

// Exact division by Delta. Delta divides p iff every group of terms sharing
// the same non-(E4,E6) part sums to zero at E4 = E6 = 1.
std::optional<Poly> divide_by_delta(const Poly& p);

// Removes every E4 and Delta factor of the numerator that the denominator
// allows. The result is the unique normal form of the field element.
Frac normalize(Frac f);

Frac operator*(const Frac& a, const Frac& b);

// Brings both fractions to the common denominator and adds them.
Frac operator+(const Frac& a, const Frac& b);

// Scales numerator by E4^(p - f.e4_pow) * Delta^(q - f.delta_pow).
Poly lift_numerator(const Frac& f, int p, int q);

template <typename C>
struct E4Split {
    std::vector<BasicPoly<C>> q; // q[l-1] = Q_l, l = 1..l1, E4-free
    BasicPoly<C> r;
};

// f = sum_l Q_l / E4^l + R with Q_l free of E4. Requires delta_pow == 0.
E4Split<Rational> e4_split(const Frac& f);
E4Split<LinearForm> e4_split(const ParamFrac& f);

// Recombines (Q, R) over E4^p; inverse of e4_split.
Frac e4_join(const E4Split<Rational>& parts, int p);

std::string to_string(const Frac& f);

} // namespace e8jac
