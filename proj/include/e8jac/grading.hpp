#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace e8jac {

// (weight k, index m) of a homogeneous element. Index is never negative for
// ring elements, but intermediate targets (e.g. m - 5l) may be.
struct BiDegree {
    int weight = 0;
    int index = 0;

    friend constexpr BiDegree operator+(BiDegree a, BiDegree b) { return {a.weight + b.weight, a.index + b.index}; }
    friend constexpr BiDegree operator-(BiDegree a, BiDegree b) { return {a.weight - b.weight, a.index - b.index}; }
    friend constexpr BiDegree operator*(int s, BiDegree a) { return {s * a.weight, s * a.index}; }
    friend constexpr auto operator<=>(const BiDegree&, const BiDegree&) = default;
};

std::string to_string(BiDegree d);

class AlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxGenerators = 12;

struct Generator {
    std::string symbol;
    BiDegree degree;
};

// An ordered set of free generators. A sub-alphabet shares the exponent
// layout of its ambient alphabet and only restricts which generators may
// appear; polynomials always carry the ambient alphabet.
class Alphabet {
public:
    Alphabet(std::string name, std::vector<Generator> generators);
    Alphabet(std::string name, const Alphabet& ambient, std::vector<std::size_t> active);

    Alphabet(const Alphabet&) = delete;
    Alphabet& operator=(const Alphabet&) = delete;

    const std::string& name() const { return name_; }
    const Alphabet& ambient() const { return *ambient_; }
    std::size_t size() const { return generators_.size(); }
    const Generator& operator[](std::size_t i) const { return generators_[i]; }
    std::span<const Generator> generators() const { return generators_; }
    std::span<const std::size_t> active() const { return active_; }
    bool is_active(std::size_t i) const;

    // Position of a symbol in the ambient layout; throws on unknown symbol.
    std::size_t index_of(std::string_view symbol) const;

    // Stable textual description used for cache fingerprints.
    std::string fingerprint() const;

    // Built-in alphabets.
    static const Alphabet& AB();       // E4 E6 A1..A5 B2 B3 B4 B6
    static const Alphabet& ab();       // E4 E6 a2 a3 a4 b1..b6
    static const Alphabet& AB_no_E4(); // E6 A_i B_j, sub-alphabet of AB

private:
    std::string name_;
    std::vector<Generator> generators_;
    std::vector<std::size_t> active_;
    const Alphabet* ambient_;
};

// Positions in the built-in alphabets.
namespace gen {
inline constexpr std::size_t E4 = 0, E6 = 1;
// AB
inline constexpr std::size_t A1 = 2, A2 = 3, A3 = 4, A4 = 5, A5 = 6, B2 = 7, B3 = 8, B4 = 9, B6 = 10;
// ab
inline constexpr std::size_t a2 = 2, a3 = 3, a4 = 4, b1 = 5, b2 = 6, b3 = 7, b4 = 8, b5 = 9, b6 = 10;
} // namespace gen

struct Monomial {
    std::array<std::uint16_t, kMaxGenerators> exps{};

    static Monomial unit() { return {}; }
    static Monomial generator(std::size_t i, unsigned power = 1);

    unsigned total_degree() const;
    bool divides(const Monomial& other) const;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    // Requires b.divides(a).
    friend Monomial operator/(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

BiDegree bidegree(const Alphabet& alphabet, const Monomial& mono);

// Weight carried by the index-0 generators (E4, E6).
int modular_weight(const Alphabet& alphabet, const Monomial& mono);

std::string to_string(const Alphabet& alphabet, const Monomial& mono);

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept;
};

// Total order on monomials: bidegree (weight, then index) ascending, then the
// weight carried by E4/E6 descending, then exponent vector lexicographically
// descending in alphabet order. Compatible with multiplication.
class MonomialOrder {
public:
    explicit MonomialOrder(const Alphabet& alphabet);
    bool operator()(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
    int compare(const Monomial& a, const Monomial& b) const;

private:
    std::array<int, kMaxGenerators> weight_{};
    std::array<int, kMaxGenerators> index_{};
    std::array<int, kMaxGenerators> modular_{};
};

} // namespace e8jac
