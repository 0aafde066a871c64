#pragma once

#include "e8jac/poly.hpp"

#include <string>
#include <vector>

namespace e8jac {

// All monomials of the given bidegree over the active generators of the
// alphabet, each once, sorted in MonomialOrder. This is the coefficient of
// x^k y^m in prod_g 1/(1 - x^{w(g)} y^{i(g)} g), computed by bounded search:
// a generator of index i > 0 appears at most m/i times, and the index-0
// generators (positive weight) absorb the remaining weight.
std::vector<Monomial> enumerate_monomials(const Alphabet& alphabet, BiDegree target);

// Number of monomials without materializing them.
std::size_t count_monomials(const Alphabet& alphabet, BiDegree target);

struct AnsatzSpec {
    const Alphabet* alphabet = &Alphabet::ab();
    BiDegree target;
    std::string symbol_prefix = "c";
    // Id of the first unknown; later unknowns follow in monomial order.
    std::uint32_t first_id = 0;
};

// sum_i u_{first_id + i} * mono_i over the enumerated monomials.
ParamPoly build_ansatz(const AnsatzSpec& spec);

} // namespace e8jac
