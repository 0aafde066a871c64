#pragma once

#include "e8jac/rational.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>

namespace e8jac {

// Expression templates are off so that `auto` never captures a dangling
// temporary.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

// Complex numbers over Real with the usual field operations. std::complex is
// not specified for non-builtin element types, hence this small type.
struct Complex {
    Real re = 0;
    Real im = 0;

    Complex() = default;
    Complex(Real r) : re(std::move(r)) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(int r) : re(r) {}
    Complex(double r, double i = 0) : re(r), im(i) {}

    Complex& operator+=(const Complex& o);
    Complex& operator-=(const Complex& o);
    Complex& operator*=(const Complex& o);
    Complex& operator/=(const Complex& o);
    Complex& operator*=(const Real& s);
};

Complex operator+(Complex a, const Complex& b);
Complex operator-(Complex a, const Complex& b);
Complex operator*(Complex a, const Complex& b);
Complex operator/(Complex a, const Complex& b);
Complex operator*(Complex a, const Real& s);
Complex operator*(const Real& s, Complex a);
Complex operator-(const Complex& a);

Real abs(const Complex& z);
Real norm(const Complex& z); // |z|^2
Complex exp(const Complex& z);
Complex log(const Complex& z); // principal branch
Complex pow(Complex z, long n);
Complex i_unit();
Real pi();
Real to_real(const Rational& q);
std::string to_string(const Complex& z, int digits = 20);

// |a - b| / max(|a|, |b|), and 0 when both vanish.
Real relative_difference(const Complex& a, const Complex& b);

class PrecisionUnreachable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NearSingular : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EvalContext {
    int precision = 50;       // decimal digits demanded of every value
    int guard_digits = 20;    // extra working digits
    double tolerance = 1e-30; // relative threshold for identity checks
    double singular_threshold = 1e-15; // |E4|, |Delta| below this: near-singular
    double probe_radius = 1.0 / 200;
    int probe_points = 32;
    int max_retries = 8;

    int working_digits() const { return precision + guard_digits; }
};

// Sets the default Real precision to the context's working digits for the
// lifetime of the guard.
class PrecisionScope {
public:
    explicit PrecisionScope(const EvalContext& ctx);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

} // namespace e8jac
