#pragma once

#include "e8jac/numeric.hpp"

#include <array>
#include <string_view>

namespace e8jac {

// Number of terms |n| <= N needed so that every omitted term of
// sum y^n q^{n^2/2} is below 10^-digits, given Im tau and |Im z|.
int theta_truncation(const Real& im_tau, const Real& abs_im_z, int digits);

// theta_1..theta_4 at (z, tau), all four at once (they share q powers).
std::array<Complex, 4> jacobi_thetas(const Complex& z, const Complex& tau, const EvalContext& ctx);
Complex jacobi_theta(int k, const Complex& z, const Complex& tau, const EvalContext& ctx);

// theta_k(tau) = theta_k(0, tau).
Complex theta_null(int k, const Complex& tau, const EvalContext& ctx);

Complex dedekind_eta(const Complex& tau, const EvalContext& ctx);

// Bernoulli number B_k (exact).
Rational bernoulli(int k);

// E_{2n} from its divisor-sum q-series normalized by B_{2n}.
Complex eisenstein(int two_n, const Complex& tau, const EvalContext& ctx);

// e_1, e_2, e_3 built from fourth powers of theta constants.
Complex e_function(int j, const Complex& tau, const EvalContext& ctx);
Complex h0(const Complex& tau, const EvalContext& ctx);

// Dispatch by name: theta1..theta4 (z, tau), eta, E2, E4, ..., e1..e3, h0.
Complex special_function(std::string_view kind, const Complex& tau, const Complex& z, const EvalContext& ctx);

} // namespace e8jac
