#include "e8jac/numeric.hpp"

namespace e8jac {

Complex& Complex::operator+=(const Complex& o)
{
    re += o.re;
    im += o.im;
    return *this;
}

Complex& Complex::operator-=(const Complex& o)
{
    re -= o.re;
    im -= o.im;
    return *this;
}

Complex& Complex::operator*=(const Complex& o)
{
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
}

Complex& Complex::operator/=(const Complex& o)
{
    Real d = o.re * o.re + o.im * o.im;
    if (d == 0)
        throw std::domain_error("complex division by zero");
    Real r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = std::move(r);
    return *this;
}

Complex& Complex::operator*=(const Real& s)
{
    re *= s;
    im *= s;
    return *this;
}

Complex operator+(Complex a, const Complex& b) { return a += b; }
Complex operator-(Complex a, const Complex& b) { return a -= b; }
Complex operator*(Complex a, const Complex& b) { return a *= b; }
Complex operator/(Complex a, const Complex& b) { return a /= b; }
Complex operator*(Complex a, const Real& s) { return a *= s; }
Complex operator*(const Real& s, Complex a) { return a *= s; }
Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }

Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
Real abs(const Complex& z) { return boost::multiprecision::hypot(z.re, z.im); }

Complex exp(const Complex& z)
{
    Real m = boost::multiprecision::exp(z.re);
    return Complex(m * boost::multiprecision::cos(z.im), m * boost::multiprecision::sin(z.im));
}

Complex log(const Complex& z)
{
    return Complex(boost::multiprecision::log(abs(z)), boost::multiprecision::atan2(z.im, z.re));
}

Complex pow(Complex z, long n)
{
    if (n < 0)
        return Complex(1) / pow(std::move(z), -n);
    Complex r(1);
    while (n > 0) {
        if (n & 1)
            r *= z;
        n >>= 1;
        if (n > 0)
            z *= z;
    }
    return r;
}

Complex i_unit() { return Complex(Real(0), Real(1)); }

Real pi() { return boost::math::constants::pi<Real>(); }

Real to_real(const Rational& q)
{
    Real r;
    mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

std::string to_string(const Complex& z, int digits)
{
    std::string s = z.re.str(digits, std::ios_base::scientific);
    s += z.im < 0 ? " - " : " + ";
    s += Real(boost::multiprecision::abs(z.im)).str(digits, std::ios_base::scientific);
    return s + "i";
}

Real relative_difference(const Complex& a, const Complex& b)
{
    Real scale = std::max(abs(a), abs(b));
    if (scale == 0)
        return 0;
    return abs(a - b) / scale;
}

PrecisionScope::PrecisionScope(const EvalContext& ctx) : saved_(Real::default_precision())
{
    Real::default_precision(unsigned(ctx.working_digits()));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

} // namespace e8jac
