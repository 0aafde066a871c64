#include "e8jac/poly.hpp"

#include <cctype>
#include <sstream>

namespace e8jac {

LinearForm LinearForm::unknown(std::uint32_t id, Rational coeff)
{
    LinearForm f;
    if (sgn(coeff) != 0)
        f.entries_.emplace_back(id, std::move(coeff));
    return f;
}

Rational LinearForm::coefficient(std::uint32_t id) const
{
    auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
                               [](const Entry& e, std::uint32_t x) { return e.first < x; });
    if (it != entries_.end() && it->first == id)
        return it->second;
    return 0;
}

Rational LinearForm::evaluate(const std::vector<Rational>& values) const
{
    Rational r = 0;
    for (const auto& [id, c] : entries_)
        r += c * values.at(id);
    return r;
}

void LinearForm::add_scaled(const LinearForm& other, const Rational& s)
{
    if (sgn(s) == 0 || other.entries_.empty())
        return;
    std::vector<Entry> out;
    out.reserve(entries_.size() + other.entries_.size());
    std::size_t i = 0, j = 0;
    while (i < entries_.size() || j < other.entries_.size()) {
        if (j == other.entries_.size() || (i < entries_.size() && entries_[i].first < other.entries_[j].first)) {
            out.push_back(std::move(entries_[i++]));
        } else if (i == entries_.size() || other.entries_[j].first < entries_[i].first) {
            out.emplace_back(other.entries_[j].first, other.entries_[j].second * s);
            ++j;
        } else {
            Rational c = entries_[i].second + other.entries_[j].second * s;
            if (sgn(c) != 0)
                out.emplace_back(entries_[i].first, std::move(c));
            ++i;
            ++j;
        }
    }
    entries_ = std::move(out);
}

LinearForm& LinearForm::operator+=(const LinearForm& other)
{
    add_scaled(other, 1);
    return *this;
}

LinearForm& LinearForm::operator-=(const LinearForm& other)
{
    add_scaled(other, -1);
    return *this;
}

LinearForm& LinearForm::operator*=(const Rational& s)
{
    if (sgn(s) == 0) {
        entries_.clear();
        return *this;
    }
    for (auto& e : entries_)
        e.second *= s;
    return *this;
}

LinearForm operator-(LinearForm a)
{
    a *= Rational(-1);
    return a;
}

std::string to_string(const LinearForm& f, std::string_view prefix)
{
    if (f.is_zero())
        return "0";
    std::string s;
    for (const auto& [id, c] : f.entries()) {
        if (!s.empty())
            s += sgn(c) < 0 ? " - " : " + ";
        else if (sgn(c) < 0)
            s += "-";
        Rational a = abs(c);
        if (a != 1)
            s += to_string(a) + "*";
        s += std::string(prefix) + std::to_string(id + 1);
    }
    return s;
}

Poly constant(const Alphabet& alphabet, const Rational& c)
{
    return Poly::monomial(alphabet, Monomial::unit(), c);
}

Poly generator(const Alphabet& alphabet, std::string_view symbol)
{
    return Poly::monomial(alphabet, Monomial::generator(alphabet.index_of(symbol)), 1);
}

namespace {

template <typename C>
BasicPoly<C> multiply(const BasicPoly<C>& a, const Poly& b, std::size_t g, unsigned cap)
{
    if (&a.alphabet() != &b.alphabet())
        throw AlgebraError("alphabet mismatch: " + a.alphabet().name() + " vs " + b.alphabet().name());
    std::unordered_map<Monomial, C, MonomialHash> acc;
    acc.reserve(a.size() * b.size());
    for (const auto& ta : a.terms()) {
        for (const auto& tb : b.terms()) {
            if (unsigned(ta.mono.exps[g]) + tb.mono.exps[g] >= cap)
                continue;
            detail::add_scaled(acc[ta.mono * tb.mono], ta.coeff, tb.coeff);
        }
    }
    std::vector<typename BasicPoly<C>::Term> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (!detail::is_zero(c))
            terms.push_back({m, std::move(c)});
    return BasicPoly<C>(a.alphabet(), std::move(terms));
}

} // namespace

Poly operator*(const Poly& a, const Poly& b)
{
    return multiply(a, b, 0, ~0u);
}

ParamPoly operator*(const ParamPoly& a, const Poly& b)
{
    return multiply(a, b, 0, ~0u);
}

Poly mul_truncated(const Poly& a, const Poly& b, std::size_t g, unsigned cap)
{
    return multiply(a, b, g, cap);
}

Poly pow(const Poly& p, unsigned n)
{
    Poly result = constant(p.alphabet(), 1);
    Poly base = p;
    while (n > 0) {
        if (n & 1u)
            result = result * base;
        n >>= 1;
        if (n > 0)
            base = base * base;
    }
    return result;
}

ParamPoly times_unknown(const Poly& p, std::uint32_t id)
{
    std::vector<ParamPoly::Term> terms;
    terms.reserve(p.size());
    for (const auto& t : p.terms())
        terms.push_back({t.mono, LinearForm::unknown(id, t.coeff)});
    return ParamPoly(p.alphabet(), std::move(terms));
}

Poly evaluate(const ParamPoly& p, const std::vector<Rational>& values)
{
    std::vector<Poly::Term> terms;
    for (const auto& t : p.terms())
        terms.push_back({t.mono, t.coeff.evaluate(values)});
    return Poly(p.alphabet(), std::move(terms));
}

std::vector<Poly> split_by_unknown(const ParamPoly& p, std::size_t count)
{
    std::vector<std::vector<Poly::Term>> parts(count);
    for (const auto& t : p.terms())
        for (const auto& [id, c] : t.coeff.entries())
            if (id < count)
                parts[id].push_back({t.mono, c});
    std::vector<Poly> out;
    out.reserve(count);
    for (auto& terms : parts)
        out.emplace_back(p.alphabet(), std::move(terms));
    return out;
}

namespace {

template <typename C, typename F>
std::string format_terms(const BasicPoly<C>& p, F&& coeff_text)
{
    if (p.is_zero())
        return "0";
    std::string s;
    // Descending order reads naturally (highest E4/E6 content first).
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        auto [sign, text] = coeff_text(it->coeff);
        if (!s.empty())
            s += sign < 0 ? " - " : " + ";
        else if (sign < 0)
            s += "-";
        std::string mono = to_string(p.alphabet(), it->mono);
        if (text.empty())
            s += mono;
        else if (mono == "1")
            s += text;
        else
            s += text + "*" + mono;
    }
    return s;
}

} // namespace

std::string to_string(const Poly& p)
{
    return format_terms(p, [](const Rational& c) {
        Rational a = abs(c);
        return std::pair<int, std::string>(sgn(c), a == 1 ? std::string() : to_string(a));
    });
}

std::string to_string(const ParamPoly& p, std::string_view prefix)
{
    return format_terms(p, [&](const LinearForm& f) {
        return std::pair<int, std::string>(1, "(" + to_string(f, prefix) + ")");
    });
}

std::optional<Poly> divexact(const Poly& p, const Poly& d)
{
    if (&p.alphabet() != &d.alphabet())
        throw AlgebraError("divexact: alphabet mismatch");
    if (d.is_zero())
        throw AlgebraError("divexact: division by zero");
    if (p.is_zero())
        return Poly(p.alphabet());
    if (!p.is_homogeneous() || !d.is_homogeneous())
        throw AlgebraError("divexact: inhomogeneous operand");

    // Leading terms are the largest in MonomialOrder, which is multiplicative,
    // so lt(p) = lt(q) * lt(d) whenever p = q * d.
    const auto& lead = d.terms().back();
    Poly rest = p;
    std::vector<Poly::Term> quotient;
    while (!rest.is_zero()) {
        const auto& lt = rest.terms().back();
        if (!lead.mono.divides(lt.mono))
            return std::nullopt;
        Monomial qm = lt.mono / lead.mono;
        Rational qc = lt.coeff / lead.coeff;
        quotient.push_back({qm, qc});
        rest = Poly::sum_unchecked(rest, d.shifted(qm), -qc);
    }
    return Poly(p.alphabet(), std::move(quotient));
}

namespace {

class Parser {
public:
    Parser(const Alphabet& alphabet, std::string_view text, const std::map<std::string, Poly, std::less<>>& named)
        : alphabet_(alphabet.ambient()), text_(text), named_(named)
    {
    }

    Poly parse()
    {
        Poly p = expr();
        skip();
        if (pos_ != text_.size())
            fail("unexpected character");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw std::invalid_argument("parse_poly: " + what + " at offset " + std::to_string(pos_) + " in '" +
                                    std::string(text_) + "'");
    }

    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool eat(char c)
    {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Poly expr()
    {
        Poly acc = term();
        for (;;) {
            if (eat('+'))
                acc = Poly::sum_unchecked(acc, term());
            else if (eat('-'))
                acc = Poly::sum_unchecked(acc, term(), -1);
            else
                return acc;
        }
    }

    Poly term()
    {
        Poly acc = unary();
        for (;;) {
            if (eat('*')) {
                acc = acc * unary();
            } else if (eat('/')) {
                Poly d = unary();
                if (d.size() != 1 || !(d.terms()[0].mono == Monomial::unit()))
                    fail("division by a non-constant");
                acc *= Rational(1) / d.terms()[0].coeff;
            } else {
                return acc;
            }
        }
    }

    Poly unary()
    {
        if (eat('-'))
            return -unary();
        if (eat('+'))
            return unary();
        return power();
    }

    Poly power()
    {
        Poly base = atom();
        if (eat('^')) {
            skip();
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (start == pos_)
                fail("expected exponent");
            return pow(base, static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
        }
        return base;
    }

    Poly atom()
    {
        skip();
        if (pos_ >= text_.size())
            fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Poly p = expr();
            if (!eat(')'))
                fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            return constant(alphabet_, Rational(Integer(std::string(text_.substr(start, pos_ - start)), 10)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            auto name = text_.substr(start, pos_ - start);
            if (auto it = named_.find(name); it != named_.end())
                return it->second;
            try {
                return generator(alphabet_, name);
            } catch (const std::invalid_argument&) {
                fail("unknown symbol '" + std::string(name) + "'");
            }
        }
        fail("unexpected character");
    }

    const Alphabet& alphabet_;
    std::string_view text_;
    const std::map<std::string, Poly, std::less<>>& named_;
    std::size_t pos_ = 0;
};

} // namespace

Poly parse_poly(const Alphabet& alphabet, std::string_view text, const std::map<std::string, Poly, std::less<>>& named)
{
    return Parser(alphabet, text, named).parse();
}

} // namespace e8jac
