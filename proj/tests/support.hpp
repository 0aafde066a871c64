#pragma once

// Independent reference routines used as oracles by the test suites. They
// deliberately share no code with the library beyond the Rational type.

#include "e8jac/constructor.hpp"

#include <map>
#include <random>
#include <utility>
#include <vector>

namespace e8jac::testing {

using Matrix = std::vector<std::vector<Rational>>;

// Textbook Gauss-Jordan over Q; returns the nonzero rows of the RREF.
inline Matrix naive_rref(Matrix a)
{
    std::size_t rows = a.size(), cols = rows ? a[0].size() : 0, r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(a[p], a[r]);
        Rational inv = 1 / a[r][c];
        for (auto& x : a[r])
            x *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0)
                continue;
            Rational f = a[i][c];
            for (std::size_t j = 0; j < cols; ++j)
                a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    a.resize(r);
    return a;
}

// Nullspace basis read off the RREF: one vector per free column.
inline Matrix naive_nullspace(const Matrix& a, std::size_t cols)
{
    Matrix r = naive_rref(a);
    std::vector<long> pivot_of_col(cols, -1);
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t c = 0; c < cols; ++c)
            if (r[i][c] != 0) {
                pivot_of_col[c] = static_cast<long>(i);
                break;
            }
    Matrix basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (pivot_of_col[f] >= 0)
            continue;
        std::vector<Rational> v(cols);
        v[f] = 1;
        for (std::size_t c = 0; c < cols; ++c)
            if (pivot_of_col[c] >= 0)
                v[c] = -r[pivot_of_col[c]][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

inline Matrix to_matrix(const std::vector<IntVector>& vs)
{
    Matrix m;
    for (const auto& v : vs) {
        std::vector<Rational> row;
        for (const auto& x : v)
            row.emplace_back(x);
        m.push_back(std::move(row));
    }
    return m;
}

inline bool same_span(const Matrix& a, const Matrix& b) { return naive_rref(a) == naive_rref(b); }

// Coefficient vectors of polynomials against the union of their monomials.
inline Matrix coefficient_matrix(const std::vector<Poly>& ps)
{
    std::vector<Monomial> monos;
    for (const auto& p : ps)
        for (const auto& t : p.terms())
            if (std::find(monos.begin(), monos.end(), t.mono) == monos.end())
                monos.push_back(t.mono);
    Matrix m;
    for (const auto& p : ps) {
        std::vector<Rational> row;
        for (const auto& mono : monos)
            row.push_back(p.coefficient(mono));
        m.push_back(std::move(row));
    }
    return m;
}

inline bool same_span(const std::vector<Poly>& a, const std::vector<Poly>& b)
{
    std::vector<Poly> all = a;
    all.insert(all.end(), b.begin(), b.end());
    Matrix m = coefficient_matrix(all);
    Matrix ma(m.begin(), m.begin() + a.size()), mb(m.begin() + a.size(), m.end());
    return naive_rref(ma).size() == a.size() && naive_rref(mb).size() == b.size() && same_span(ma, mb);
}

// Monomial count of bidegree (k, m) from the generating function
// prod_g 1/(1 - x^w y^i), expanded as a truncated two-variable series.
inline long generating_function_count(const Alphabet& alphabet, BiDegree target)
{
    if (target.index < 0)
        return 0;
    int min_ratio_weight = 0; // lowest weight reachable per unit of index
    for (std::size_t g : alphabet.active()) {
        const auto& d = alphabet[g].degree;
        if (d.index > 0)
            min_ratio_weight = std::min(min_ratio_weight, d.weight / d.index - 1);
    }
    int lo = min_ratio_weight * target.index;
    int hi = target.weight - lo + 12;
    std::map<std::pair<int, int>, long> series{{{0, 0}, 1}};
    for (std::size_t g : alphabet.active()) {
        auto [w, i] = alphabet[g].degree;
        std::map<std::pair<int, int>, long> next;
        for (const auto& [key, count] : series)
            for (int e = 0;; ++e) {
                int nw = key.first + e * w, ni = key.second + e * i;
                if (ni > target.index || nw > hi || nw < lo - 200)
                    break;
                next[{nw, ni}] += count;
                if (w == 0 && i == 0)
                    break;
            }
        series = std::move(next);
    }
    auto it = series.find({target.weight, target.index});
    return it == series.end() ? 0 : it->second;
}

// Random homogeneous polynomial: random rational combination of up to
// `terms` monomials of the given bidegree.
inline Poly random_poly(const Alphabet& alphabet, BiDegree target, std::mt19937_64& rng, int terms = 4)
{
    auto monos = enumerate_monomials(alphabet, target);
    Poly p(alphabet);
    if (monos.empty())
        return p;
    std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    std::vector<Poly::Term> ts;
    for (int t = 0; t < terms; ++t)
        ts.push_back({monos[pick(rng)], Rational(num(rng), den(rng))});
    for (auto& t : ts)
        t.coeff.canonicalize();
    return Poly(alphabet, std::move(ts));
}

inline Poly P(const Alphabet& alphabet, std::string_view text) { return parse_poly(alphabet, text); }
inline Poly Pab(std::string_view text) { return parse_poly(Alphabet::ab(), text); }
inline Poly PAB(std::string_view text) { return parse_poly(Alphabet::AB(), text); }

} // namespace e8jac::testing
