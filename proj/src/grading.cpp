#include "e8jac/grading.hpp"

#include <algorithm>
#include <sstream>

namespace e8jac {

std::string to_string(BiDegree d)
{
    return "(" + std::to_string(d.weight) + "," + std::to_string(d.index) + ")";
}

Alphabet::Alphabet(std::string name, std::vector<Generator> generators)
    : name_(std::move(name)), generators_(std::move(generators)), ambient_(this)
{
    if (generators_.size() > kMaxGenerators)
        throw std::invalid_argument("alphabet too large");
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        if (generators_[i].degree.index < 0)
            throw std::invalid_argument("generator with negative index");
        active_.push_back(i);
    }
}

Alphabet::Alphabet(std::string name, const Alphabet& ambient, std::vector<std::size_t> active)
    : name_(std::move(name)),
      generators_(ambient.generators_.begin(), ambient.generators_.end()),
      active_(std::move(active)),
      ambient_(&ambient.ambient())
{
    std::sort(active_.begin(), active_.end());
    for (auto i : active_)
        if (i >= generators_.size())
            throw std::invalid_argument("sub-alphabet index out of range");
}

bool Alphabet::is_active(std::size_t i) const
{
    return std::binary_search(active_.begin(), active_.end(), i);
}

std::size_t Alphabet::index_of(std::string_view symbol) const
{
    for (std::size_t i = 0; i < generators_.size(); ++i)
        if (generators_[i].symbol == symbol)
            return i;
    throw std::invalid_argument("unknown symbol '" + std::string(symbol) + "' in alphabet " + name_);
}

std::string Alphabet::fingerprint() const
{
    std::ostringstream os;
    os << name_ << '[';
    for (auto i : active_) {
        const auto& g = generators_[i];
        os << g.symbol << ':' << g.degree.weight << ',' << g.degree.index << ';';
    }
    os << ']';
    return os.str();
}

const Alphabet& Alphabet::AB()
{
    static const Alphabet alphabet("AB", {
                                             {"E4", {4, 0}},
                                             {"E6", {6, 0}},
                                             {"A1", {4, 1}},
                                             {"A2", {4, 2}},
                                             {"A3", {4, 3}},
                                             {"A4", {4, 4}},
                                             {"A5", {4, 5}},
                                             {"B2", {6, 2}},
                                             {"B3", {6, 3}},
                                             {"B4", {6, 4}},
                                             {"B6", {6, 6}},
                                         });
    return alphabet;
}

const Alphabet& Alphabet::ab()
{
    // a_m: weight 4 - 6m, b_m: weight 6 - 6m, both of index m.
    static const Alphabet alphabet("ab", {
                                             {"E4", {4, 0}},
                                             {"E6", {6, 0}},
                                             {"a2", {-8, 2}},
                                             {"a3", {-14, 3}},
                                             {"a4", {-20, 4}},
                                             {"b1", {0, 1}},
                                             {"b2", {-6, 2}},
                                             {"b3", {-12, 3}},
                                             {"b4", {-18, 4}},
                                             {"b5", {-24, 5}},
                                             {"b6", {-30, 6}},
                                         });
    return alphabet;
}

const Alphabet& Alphabet::AB_no_E4()
{
    static const Alphabet alphabet("AB\\E4", AB(), {1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    return alphabet;
}

Monomial Monomial::generator(std::size_t i, unsigned power)
{
    Monomial m;
    m.exps.at(i) = static_cast<std::uint16_t>(power);
    return m;
}

unsigned Monomial::total_degree() const
{
    unsigned d = 0;
    for (auto e : exps)
        d += e;
    return d;
}

bool Monomial::divides(const Monomial& other) const
{
    for (std::size_t i = 0; i < kMaxGenerators; ++i)
        if (exps[i] > other.exps[i])
            return false;
    return true;
}

Monomial operator*(const Monomial& a, const Monomial& b)
{
    Monomial r;
    for (std::size_t i = 0; i < kMaxGenerators; ++i) {
        unsigned e = unsigned(a.exps[i]) + b.exps[i];
        if (e > 0xffffu)
            throw AlgebraError("exponent overflow");
        r.exps[i] = static_cast<std::uint16_t>(e);
    }
    return r;
}

Monomial operator/(const Monomial& a, const Monomial& b)
{
    Monomial r;
    for (std::size_t i = 0; i < kMaxGenerators; ++i)
        r.exps[i] = static_cast<std::uint16_t>(a.exps[i] - b.exps[i]);
    return r;
}

BiDegree bidegree(const Alphabet& alphabet, const Monomial& mono)
{
    BiDegree d;
    for (std::size_t i = 0; i < alphabet.size(); ++i)
        d = d + int(mono.exps[i]) * alphabet[i].degree;
    return d;
}

int modular_weight(const Alphabet& alphabet, const Monomial& mono)
{
    int w = 0;
    for (std::size_t i = 0; i < alphabet.size(); ++i)
        if (alphabet[i].degree.index == 0)
            w += int(mono.exps[i]) * alphabet[i].degree.weight;
    return w;
}

std::string to_string(const Alphabet& alphabet, const Monomial& mono)
{
    std::string s;
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
        if (mono.exps[i] == 0)
            continue;
        if (!s.empty())
            s += '*';
        s += alphabet[i].symbol;
        if (mono.exps[i] > 1)
            s += '^' + std::to_string(mono.exps[i]);
    }
    return s.empty() ? "1" : s;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept
{
    std::uint64_t h = 1469598103934665603ull;
    for (auto e : m.exps) {
        h ^= e;
        h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
}

MonomialOrder::MonomialOrder(const Alphabet& alphabet)
{
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
        weight_[i] = alphabet[i].degree.weight;
        index_[i] = alphabet[i].degree.index;
        modular_[i] = alphabet[i].degree.index == 0 ? alphabet[i].degree.weight : 0;
    }
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const
{
    int wa = 0, wb = 0, ia = 0, ib = 0, ma = 0, mb = 0;
    for (std::size_t i = 0; i < kMaxGenerators; ++i) {
        wa += weight_[i] * a.exps[i];
        wb += weight_[i] * b.exps[i];
        ia += index_[i] * a.exps[i];
        ib += index_[i] * b.exps[i];
        ma += modular_[i] * a.exps[i];
        mb += modular_[i] * b.exps[i];
    }
    if (wa != wb)
        return wa < wb ? -1 : 1;
    if (ia != ib)
        return ia < ib ? -1 : 1;
    if (ma != mb)
        return ma > mb ? -1 : 1;
    for (std::size_t i = 0; i < kMaxGenerators; ++i)
        if (a.exps[i] != b.exps[i])
            return a.exps[i] > b.exps[i] ? -1 : 1;
    return 0;
}

} // namespace e8jac
