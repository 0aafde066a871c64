#pragma once

#include "e8jac/frac.hpp"

#include <array>
#include <string_view>

namespace e8jac {

// The weight-16 index-5 polynomial in E6, A_i, B_j that vanishes at the
// zeros of E4.
const Poly& p165();

// P_{16,5}/E4 written as a polynomial over ab (with Delta expanded).
const Poly& p12c5_ab();

// Image of each ab generator in AB (normalized), indexed by ab position.
const Frac& ab_generator_image(std::size_t g);

// Image of each AB generator in ab (Delta expanded), indexed by AB position.
const Poly& AB_generator_image(std::size_t g);

// Normalized image of an ab monomial; memoized and safe for concurrent use.
const Frac& ab_monomial_image(const Monomial& m);

Frac sub_ab_to_AB(const Poly& p);
ParamFrac sub_ab_to_AB(const ParamPoly& p);
Poly sub_AB_to_ab(const Poly& p);

// Raw source text of the substitution tables (shown by the CLI).
std::string_view ab_image_source(std::size_t g);
std::string_view AB_image_source(std::size_t g);

// Drops memoized monomial images (for memory-bounded long runs).
void clear_image_cache();
std::size_t image_cache_size();

} // namespace e8jac
