#include "e8jac/frac.hpp"

#include <map>
#include <mutex>

namespace e8jac {

Poly delta_polynomial(const Alphabet& alphabet)
{
    const Alphabet& amb = alphabet.ambient();
    std::vector<Poly::Term> terms;
    terms.push_back({Monomial::generator(gen::E4, 3), Rational(1, 1728)});
    terms.push_back({Monomial::generator(gen::E6, 2), Rational(-1, 1728)});
    return Poly(amb, std::move(terms));
}

const Poly& delta_power(const Alphabet& alphabet, unsigned n)
{
    static std::mutex mutex;
    static std::map<std::pair<const Alphabet*, unsigned>, Poly> cache;
    const Alphabet& amb = alphabet.ambient();
    std::lock_guard lock(mutex);
    auto key = std::make_pair(&amb, n);
    if (auto it = cache.find(key); it != cache.end())
        return it->second;
    Poly p = pow(delta_polynomial(amb), n);
    return cache.emplace(key, std::move(p)).first->second;
}

std::optional<Poly> divide_by_delta(const Poly& p)
{
    // Group terms by their non-(E4, E6) part and E6 parity; inside a
    // homogeneous group f = sum_b c_b E4^a(b) E6^b, and
    // f = (E4^3 - E6^2) g  with  g_b = sum_{b' <= b} c_b'.
    struct Key {
        Monomial rest;
        int parity;
        int modular_weight;
        bool operator<(const Key& o) const
        {
            if (parity != o.parity)
                return parity < o.parity;
            if (modular_weight != o.modular_weight)
                return modular_weight < o.modular_weight;
            return rest.exps < o.rest.exps;
        }
    };
    std::map<Key, std::map<int, std::pair<Monomial, Rational>>> groups;
    for (const auto& t : p.terms()) {
        Key k{t.mono, t.mono.exps[gen::E6] % 2, 4 * t.mono.exps[gen::E4] + 6 * t.mono.exps[gen::E6]};
        k.rest.exps[gen::E4] = 0;
        k.rest.exps[gen::E6] = 0;
        groups[k][t.mono.exps[gen::E6]] = {t.mono, t.coeff};
    }
    std::vector<Poly::Term> quotient;
    for (auto& [key, column] : groups) {
        Rational running = 0;
        auto last = std::prev(column.end());
        for (auto it = column.begin(); it != column.end(); ++it) {
            auto [b, mc] = *it;
            running += mc.second;
            // Quotient terms exist between consecutive E6 exponents of the group.
            if (it == last)
                break;
            int next_b = std::next(it)->first;
            for (int bb = b; bb < next_b; bb += 2) {
                if (sgn(running) == 0)
                    continue;
                Monomial m = mc.first;
                int a = int(m.exps[gen::E4]) - 3 * ((bb - b) / 2) - 3;
                if (a < 0)
                    return std::nullopt;
                m.exps[gen::E4] = static_cast<std::uint16_t>(a);
                m.exps[gen::E6] = static_cast<std::uint16_t>(bb);
                quotient.push_back({m, running * 1728});
            }
        }
        if (sgn(running) != 0)
            return std::nullopt;
    }
    return Poly(p.alphabet(), std::move(quotient));
}

Frac normalize(Frac f)
{
    if (f.num.is_zero())
        return Frac(std::move(f.num), 0, 0);
    if (f.e4_pow > 0) {
        unsigned k = std::min<unsigned>(f.num.min_degree_in(gen::E4), unsigned(f.e4_pow));
        if (k > 0) {
            std::vector<Poly::Term> terms = f.num.terms();
            for (auto& t : terms)
                t.mono.exps[gen::E4] = static_cast<std::uint16_t>(t.mono.exps[gen::E4] - k);
            f.num = Poly(f.num.alphabet(), std::move(terms));
            f.e4_pow -= int(k);
        }
    }
    while (f.delta_pow > 0) {
        auto q = divide_by_delta(f.num);
        if (!q)
            break;
        f.num = std::move(*q);
        --f.delta_pow;
        // Removing Delta can expose new E4 factors.
        if (f.e4_pow > 0 && f.num.min_degree_in(gen::E4) > 0)
            return normalize(std::move(f));
    }
    return f;
}

Frac operator*(const Frac& a, const Frac& b)
{
    return normalize(Frac(a.num * b.num, a.e4_pow + b.e4_pow, a.delta_pow + b.delta_pow));
}

Poly lift_numerator(const Frac& f, int p, int q)
{
    if (p < f.e4_pow || q < f.delta_pow)
        throw AlgebraError("lift_numerator: target denominator too small");
    Poly n = f.num.shifted(Monomial::generator(gen::E4, unsigned(p - f.e4_pow)));
    if (q > f.delta_pow)
        n = n * delta_power(f.num.alphabet(), unsigned(q - f.delta_pow));
    return n;
}

Frac operator+(const Frac& a, const Frac& b)
{
    if (a.num.is_zero())
        return b;
    if (b.num.is_zero())
        return a;
    int p = std::max(a.e4_pow, b.e4_pow);
    int q = std::max(a.delta_pow, b.delta_pow);
    return normalize(Frac(lift_numerator(a, p, q) + lift_numerator(b, p, q), p, q));
}

namespace {

template <typename C>
E4Split<C> split_impl(const BasicFrac<C>& f)
{
    if (f.delta_pow != 0)
        throw AlgebraError("e4_split requires delta_pow == 0");
    const int p = f.e4_pow;
    const Alphabet& alphabet = f.num.alphabet();
    std::vector<std::vector<typename BasicPoly<C>::Term>> q_terms(std::size_t(std::max(p, 0)));
    std::vector<typename BasicPoly<C>::Term> r_terms;
    for (const auto& t : f.num.terms()) {
        int j = t.mono.exps[gen::E4];
        if (j < p) {
            auto m = t.mono;
            m.exps[gen::E4] = 0;
            q_terms[std::size_t(p - j - 1)].push_back({m, t.coeff});
        } else {
            auto m = t.mono;
            m.exps[gen::E4] = static_cast<std::uint16_t>(j - p);
            r_terms.push_back({m, t.coeff});
        }
    }
    E4Split<C> out{{}, BasicPoly<C>(alphabet, std::move(r_terms))};
    for (auto& terms : q_terms)
        out.q.emplace_back(alphabet, std::move(terms));
    while (!out.q.empty() && out.q.back().is_zero())
        out.q.pop_back();
    return out;
}

} // namespace

E4Split<Rational> e4_split(const Frac& f)
{
    return split_impl(f);
}

E4Split<LinearForm> e4_split(const ParamFrac& f)
{
    return split_impl(f);
}

Frac e4_join(const E4Split<Rational>& parts, int p)
{
    if (int(parts.q.size()) > p)
        throw AlgebraError("e4_join: denominator exponent smaller than l1");
    Poly num = parts.r.shifted(Monomial::generator(gen::E4, unsigned(p)));
    for (std::size_t l = 1; l <= parts.q.size(); ++l)
        num = Poly::sum_unchecked(num, parts.q[l - 1].shifted(Monomial::generator(gen::E4, unsigned(p) - unsigned(l))));
    return normalize(Frac(std::move(num), p, 0));
}

std::string to_string(const Frac& f)
{
    std::string s = "(" + to_string(f.num) + ")";
    if (f.e4_pow == 0 && f.delta_pow == 0)
        return s;
    s += " / (";
    if (f.e4_pow > 0)
        s += "E4^" + std::to_string(f.e4_pow);
    if (f.delta_pow > 0)
        s += std::string(f.e4_pow > 0 ? "*" : "") + "Delta^" + std::to_string(f.delta_pow);
    return s + ")";
}

} // namespace e8jac
