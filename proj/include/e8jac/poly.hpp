#pragma once

#include "e8jac/grading.hpp"
#include "e8jac/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace e8jac {

// Sparse linear form sum_i coeff_i * u_i over numbered unknowns, no constant
// term. Entries are sorted by unknown id and never zero.
class LinearForm {
public:
    using Entry = std::pair<std::uint32_t, Rational>;

    LinearForm() = default;
    static LinearForm unknown(std::uint32_t id, Rational coeff = 1);

    bool is_zero() const { return entries_.empty(); }
    const std::vector<Entry>& entries() const { return entries_; }
    Rational coefficient(std::uint32_t id) const;

    // Exact evaluation at a point of unknown values (indexed by id).
    Rational evaluate(const std::vector<Rational>& values) const;

    LinearForm& operator+=(const LinearForm& other);
    LinearForm& operator-=(const LinearForm& other);
    LinearForm& operator*=(const Rational& s);
    // this += s * other
    void add_scaled(const LinearForm& other, const Rational& s);

    friend LinearForm operator-(LinearForm a);
    friend bool operator==(const LinearForm&, const LinearForm&) = default;

private:
    std::vector<Entry> entries_;
};

std::string to_string(const LinearForm& f, std::string_view prefix = "u");

namespace detail {

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const LinearForm& f) { return f.is_zero(); }

inline void add_scaled(Rational& acc, const Rational& c, const Rational& s) { acc += c * s; }
inline void add_scaled(LinearForm& acc, const LinearForm& c, const Rational& s) { acc.add_scaled(c, s); }

} // namespace detail

// Sparse polynomial over the generators of an alphabet with coefficients of
// type C (Rational for concrete forms, LinearForm for ansatz polynomials).
// Terms are kept sorted ascending in MonomialOrder with no zero coefficients.
template <typename C>
class BasicPoly {
public:
    struct Term {
        Monomial mono;
        C coeff;
    };

    explicit BasicPoly(const Alphabet& alphabet) : alphabet_(&alphabet.ambient()) {}
    BasicPoly(const Alphabet& alphabet, std::vector<Term> terms) : alphabet_(&alphabet.ambient())
    {
        terms_ = std::move(terms);
        normalize();
    }

    static BasicPoly monomial(const Alphabet& alphabet, const Monomial& m, C coeff)
    {
        std::vector<Term> t;
        t.push_back({m, std::move(coeff)});
        return BasicPoly(alphabet, std::move(t));
    }

    const Alphabet& alphabet() const { return *alphabet_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    bool is_homogeneous() const
    {
        if (terms_.empty())
            return true;
        auto d = e8jac::bidegree(*alphabet_, terms_.front().mono);
        for (const auto& t : terms_)
            if (e8jac::bidegree(*alphabet_, t.mono) != d)
                return false;
        return true;
    }

    // Bidegree of a nonzero homogeneous polynomial.
    std::optional<BiDegree> bidegree() const
    {
        if (terms_.empty() || !is_homogeneous())
            return std::nullopt;
        return e8jac::bidegree(*alphabet_, terms_.front().mono);
    }

    C coefficient(const Monomial& m) const
    {
        MonomialOrder order(*alphabet_);
        auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                                   [&](const Term& t, const Monomial& x) { return order(t.mono, x); });
        if (it != terms_.end() && it->mono == m)
            return it->coeff;
        return C{};
    }

    // Largest exponent of generator g over all terms.
    unsigned degree_in(std::size_t g) const
    {
        unsigned d = 0;
        for (const auto& t : terms_)
            d = std::max<unsigned>(d, t.mono.exps[g]);
        return d;
    }

    // Smallest exponent of generator g over all terms (0 for the zero poly).
    unsigned min_degree_in(std::size_t g) const
    {
        if (terms_.empty())
            return 0;
        unsigned d = ~0u;
        for (const auto& t : terms_)
            d = std::min<unsigned>(d, t.mono.exps[g]);
        return d;
    }

    BasicPoly& operator*=(const Rational& s)
    {
        if (sgn(s) == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& t : terms_)
            t.coeff *= s;
        return *this;
    }

    // Multiply by a monomial (shifts every exponent vector).
    BasicPoly shifted(const Monomial& m) const
    {
        BasicPoly r(*alphabet_);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_)
            r.terms_.push_back({t.mono * m, t.coeff});
        return r; // order is preserved under multiplication by a monomial
    }

    friend bool operator==(const BasicPoly& a, const BasicPoly& b)
    {
        if (a.alphabet_ != b.alphabet_ || a.terms_.size() != b.terms_.size())
            return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (!(a.terms_[i].mono == b.terms_[i].mono) || !(a.terms_[i].coeff == b.terms_[i].coeff))
                return false;
        return true;
    }

    // Sum without the homogeneity requirement; used by parsers and internal
    // accumulation where mixed bidegrees are expected.
    static BasicPoly sum_unchecked(const BasicPoly& a, const BasicPoly& b, const Rational& sb = 1)
    {
        require_same_alphabet(a, b);
        MonomialOrder order(*a.alphabet_);
        BasicPoly r(*a.alphabet_);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            int c = i == a.terms_.size()   ? 1
                    : j == b.terms_.size() ? -1
                                           : order.compare(a.terms_[i].mono, b.terms_[j].mono);
            if (c < 0) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (c > 0) {
                Term t{b.terms_[j].mono, C{}};
                detail::add_scaled(t.coeff, b.terms_[j].coeff, sb);
                ++j;
                if (!detail::is_zero(t.coeff))
                    r.terms_.push_back(std::move(t));
            } else {
                Term t = a.terms_[i++];
                detail::add_scaled(t.coeff, b.terms_[j++].coeff, sb);
                if (!detail::is_zero(t.coeff))
                    r.terms_.push_back(std::move(t));
            }
        }
        return r;
    }

    friend BasicPoly operator+(const BasicPoly& a, const BasicPoly& b)
    {
        require_addable(a, b);
        return sum_unchecked(a, b);
    }
    friend BasicPoly operator-(const BasicPoly& a, const BasicPoly& b)
    {
        require_addable(a, b);
        return sum_unchecked(a, b, Rational(-1));
    }
    friend BasicPoly operator-(BasicPoly a)
    {
        for (auto& t : a.terms_)
            t.coeff *= Rational(-1);
        return a;
    }
    friend BasicPoly operator*(BasicPoly a, const Rational& s) { return a *= s; }
    friend BasicPoly operator*(const Rational& s, BasicPoly a) { return a *= s; }

    // Restores the class invariant after direct term manipulation.
    void normalize()
    {
        MonomialOrder order(*alphabet_);
        std::sort(terms_.begin(), terms_.end(), [&](const Term& x, const Term& y) { return order(x.mono, y.mono); });
        std::vector<Term> merged;
        merged.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!merged.empty() && merged.back().mono == t.mono)
                detail::add_scaled(merged.back().coeff, t.coeff, Rational(1));
            else
                merged.push_back(std::move(t));
        }
        std::erase_if(merged, [](const Term& t) { return detail::is_zero(t.coeff); });
        terms_ = std::move(merged);
    }

    static void require_same_alphabet(const BasicPoly& a, const BasicPoly& b)
    {
        if (a.alphabet_ != b.alphabet_)
            throw AlgebraError("alphabet mismatch: " + a.alphabet_->name() + " vs " + b.alphabet_->name());
    }

private:
    static void require_addable(const BasicPoly& a, const BasicPoly& b)
    {
        require_same_alphabet(a, b);
        if (a.is_zero() || b.is_zero())
            return;
        auto da = a.bidegree(), db = b.bidegree();
        if (!da || !db || *da != *db)
            throw AlgebraError("inhomogeneous addition");
    }

    const Alphabet* alphabet_;
    std::vector<Term> terms_;

    template <typename D>
    friend class BasicPoly;
};

using Poly = BasicPoly<Rational>;
using ParamPoly = BasicPoly<LinearForm>;

Poly constant(const Alphabet& alphabet, const Rational& c);
Poly generator(const Alphabet& alphabet, std::string_view symbol);

Poly operator*(const Poly& a, const Poly& b);
ParamPoly operator*(const ParamPoly& a, const Poly& b);
Poly pow(const Poly& p, unsigned n);

// Product keeping only terms whose exponent of generator g is below cap.
Poly mul_truncated(const Poly& a, const Poly& b, std::size_t g, unsigned cap);

// Lifts a concrete polynomial to a parametric one with every coefficient
// multiplied by the given unknown.
ParamPoly times_unknown(const Poly& p, std::uint32_t id);

// Substitutes exact values for the unknowns.
Poly evaluate(const ParamPoly& p, const std::vector<Rational>& values);

// Decomposes p = sum_i u_i * p_i and returns p_i for every unknown id < count.
std::vector<Poly> split_by_unknown(const ParamPoly& p, std::size_t count);

std::string to_string(const Poly& p);
std::string to_string(const ParamPoly& p, std::string_view prefix = "c");

// Exact quotient p/d, or nullopt when d does not divide p. Throws
// AlgebraError for malformed input (alphabet mismatch, zero divisor).
std::optional<Poly> divexact(const Poly& p, const Poly& d);

// Parses expressions such as "864*A1^3*A2 - 18/5*E4*(E4^3 - E6^2)". Named
// polynomials (e.g. "Delta") may be supplied as extra atoms.
Poly parse_poly(const Alphabet& alphabet, std::string_view text,
                const std::map<std::string, Poly, std::less<>>& named = {});

} // namespace e8jac
