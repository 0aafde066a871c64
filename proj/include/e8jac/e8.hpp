#pragma once

#include "e8jac/numeric.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace e8jac {

// Lattice and weight vectors in the orthonormal basis e_1..e_8, stored with
// every coordinate doubled so that half-integers stay integral.
using Doubled = std::array<int, 8>;

struct E8Data {
    std::array<Doubled, 8> simple_roots;
    std::array<Doubled, 8> fundamental_weights;

    static const E8Data& standard();
};

// Inner product of the underlying vectors times 4.
int dot4(const Doubled& a, const Doubled& b);

// Simple reflection v - (v . alpha_j) alpha_j, j = 1..8.
Doubled reflect(const Doubled& v, int j);

// Weyl orbit of the fundamental weight Lambda_j by breadth-first closure
// under the simple reflections. Memoized.
const std::vector<Doubled>& weyl_orbit(int j);

// Membership in the root lattice: all coordinates integral or all
// half-integral, with even coordinate sum.
bool in_e8_lattice(const Doubled& v);

// All lattice vectors with norm v.v <= max_norm.
std::vector<Doubled> e8_lattice_vectors(int max_norm);

// Sample point (tau, z) with bilinear conventions z.w = sum z_j w_j.
struct Sample {
    Complex tau;
    std::array<Complex, 8> z;
};

Complex dot(const std::array<Complex, 8>& a, const std::array<Complex, 8>& b);
std::array<Complex, 8> to_complex(const Doubled& v);

// sum over the orbit of exp(2 pi i v.z).
Complex orbit_character(int j, const std::array<Complex, 8>& z, const EvalContext& ctx);

// Direct truncated lattice sum of exp(pi i tau w^2 + 2 pi i z.w).
Complex theta_e8_lattice(const Sample& s, int max_norm, const EvalContext& ctx);

// Half the sum over k of prod_j theta_k(z_j, tau).
Complex theta_e8(const Sample& s, const EvalContext& ctx);

} // namespace e8jac
