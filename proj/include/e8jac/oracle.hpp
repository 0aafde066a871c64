#pragma once

#include "e8jac/constructor.hpp"
#include "e8jac/e8.hpp"
#include "e8jac/special.hpp"

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string_view>

namespace e8jac {

// A_1 = Theta_E8 at (tau, c z).
Complex A1_scaled(const Complex& tau, const std::array<Complex, 8>& z, int c, const EvalContext& ctx);

// Generator values by name: E4 E6 A1..A5 B2 B3 B4 B6, and a2 a3 a4 b1..b6.
Complex eval_AB(std::string_view name, const Sample& s, const EvalContext& ctx);
Complex eval_ab(std::string_view name, const Sample& s, const EvalContext& ctx);

// Lazily evaluates and caches every generator value at one sample point.
class PointEvaluator {
public:
    PointEvaluator(Sample s, const EvalContext& ctx);

    const Sample& sample() const { return sample_; }
    const Complex& E4();
    const Complex& E6();
    const Complex& Delta();
    const Complex& AB(std::size_t g);
    // Throws NearSingular when |E4| or |Delta| is below the threshold.
    const Complex& ab(std::size_t g);
    bool near_singular();

    // Polynomial over ab or AB (dispatch on the alphabet).
    Complex eval(const Poly& p);

private:
    Complex eval_with(const Poly& p, const std::function<const Complex&(std::size_t)>& gen);

    Sample sample_;
    const EvalContext& ctx_;
    std::optional<Complex> delta_;
    std::array<std::optional<Complex>, 11> AB_, ab_;
};

Complex eval_poly(const Poly& form, const Sample& s, const EvalContext& ctx);

// Evaluates a form through its certificate,
//   (sum_l (P165/E4)^l S_l + R) / Delta^n,
// where P165/E4 is holomorphic; at an E4 zero it is obtained from the mean
// over a small circle, so the value stays finite.
Complex eval_certified(const Certificate& cert, const Sample& s, const EvalContext& ctx);

// Zero of E4 near exp(pi i / 3), refined by Newton iteration with
// E4' = 2 pi i (E2 E4 - E6) / 3.
Complex e4_zero(const EvalContext& ctx);

// |q| at the E4 zero: ab generators are regular in q only inside this disk.
Real e4_zero_radius(const EvalContext& ctx);

struct LaurentProbe {
    Real radius;
    int points = 0;
    std::map<int, Complex> coefficients; // n = -2..2
    Real scale;                          // max |f| on the circle

    // Largest |c_{-n}| r^{-n} relative to the scale.
    Real negative_part() const;
    // Negative powers below radius * tol (relative to the scale).
    bool regular(double tol) const { return negative_part() <= radius * Real(tol); }
};

LaurentProbe q_laurent_probe(const std::function<Complex(const Sample&)>& f, const std::array<Complex, 8>& z,
                             const Real& radius, int points, const EvalContext& ctx);
LaurentProbe q_laurent_probe(const Poly& form, const std::array<Complex, 8>& z, const Real& radius, int points,
                             const EvalContext& ctx);

struct AxiomReport {
    int samples = 0;
    int resampled = 0;
    Real quasi_periodicity = 0;
    Real modular_S = 0;
    Real modular_T = 0;
    Real weyl = 0;
    Real regularity = 0; // negative q-power part from the probe
    Real probe_radius = 0;

    bool transformation_laws_pass(double tol) const;
    bool regular(double tol) const { return regularity <= probe_radius * Real(tol); }
    bool passes(double tol) const { return transformation_laws_pass(tol) && regular(tol); }
};

// Random point with Re tau in [-1/2, 1/2], Im tau in [0.9, 1.4], small
// complex z.
Sample random_sample(std::mt19937_64& rng);

AxiomReport check_axioms(const Poly& form, int weight, int index, int samples, const EvalContext& ctx,
                         std::uint64_t seed = 1);

} // namespace e8jac
