#include "e8jac/special.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace e8jac {

namespace {

constexpr int kMaxTerms = 200000;

void require_upper_half_plane(const Complex& tau)
{
    if (!(tau.im > 0))
        throw std::domain_error("tau must lie in the upper half plane");
}

// Smallest positive integer whose q-power |q|^k k^e drops below 10^-digits
// for all larger k.
int series_length(const Real& abs_q, int exponent, int digits)
{
    if (abs_q >= 1)
        throw PrecisionUnreachable("q-series does not converge (|q| >= 1)");
    double lq = std::log(abs_q.convert_to<double>());
    double target = -digits * std::log(10.0) - 5;
    for (int k = 1; k < kMaxTerms; ++k)
        if (k * lq + exponent * std::log(double(k)) < target && k * lq < target / 2)
            return k;
    throw PrecisionUnreachable("q-series needs more than " + std::to_string(kMaxTerms) + " terms");
}

} // namespace

int theta_truncation(const Real& im_tau, const Real& abs_im_z, int digits)
{
    // Term bound exp(-pi t n^2 + 2 pi s n); require it below 10^-digits
    // past the peak at n = s / t.
    double t = im_tau.convert_to<double>();
    double s = abs_im_z.convert_to<double>();
    if (!(t > 0))
        throw std::domain_error("tau must lie in the upper half plane");
    double L = digits * std::log(10.0) + 5;
    double n = (2 * M_PI * s + std::sqrt(4 * M_PI * M_PI * s * s + 4 * M_PI * t * L)) / (2 * M_PI * t);
    if (!(n < kMaxTerms))
        throw PrecisionUnreachable("theta series needs more than " + std::to_string(kMaxTerms) + " terms (Im tau = " +
                                   std::to_string(t) + ")");
    return int(std::ceil(n)) + 1;
}

std::array<Complex, 4> jacobi_thetas(const Complex& z, const Complex& tau, const EvalContext& ctx)
{
    require_upper_half_plane(tau);
    const int N = theta_truncation(tau.im, boost::multiprecision::abs(z.im), ctx.working_digits());
    const Complex ipi = i_unit() * pi();
    const Complex p = exp(ipi * tau); // q^{1/2}
    const Complex p2 = p * p;
    const Complex yh = exp(ipi * z); // y^{1/2}
    const Complex yhi = Complex(1) / yh;
    const Complex y = yh * yh;
    const Complex yi = yhi * yhi;

    // Integer shells: p^{n^2} (y^n + y^-n).
    Complex t3(1), t4(1);
    Complex pn(1), step = p; // p^{n^2}, p^{2n+1}
    Complex yn(1), yni(1);
    for (int n = 1; n <= N; ++n) {
        pn *= step;
        step *= p2;
        yn *= y;
        yni *= yi;
        Complex term = pn * (yn + yni);
        t3 += term;
        if (n % 2)
            t4 -= term;
        else
            t4 += term;
    }
    // Half-integer shells nu = n - 1/2: p^{nu^2} (y^nu +- y^-nu).
    Complex t1, t2;
    Complex pv = exp(ipi * tau * Real(0.25)); // p^{1/4}
    Complex vstep = p2;                       // p^{2n}
    Complex yv = yh, yvi = yhi;
    for (int n = 1; n <= N; ++n) {
        if (n > 1) {
            pv *= vstep;
            vstep *= p2;
            yv *= y;
            yvi *= yi;
        }
        t2 += pv * (yv + yvi);
        Complex odd = pv * (yv - yvi);
        if (n % 2)
            t1 -= odd;
        else
            t1 += odd;
    }
    t1 *= i_unit();
    return {t1, t2, t3, t4};
}

Complex jacobi_theta(int k, const Complex& z, const Complex& tau, const EvalContext& ctx)
{
    if (k < 1 || k > 4)
        throw std::invalid_argument("theta index must be 1..4");
    return jacobi_thetas(z, tau, ctx)[std::size_t(k - 1)];
}

Complex theta_null(int k, const Complex& tau, const EvalContext& ctx)
{
    return jacobi_theta(k, Complex(0), tau, ctx);
}

Complex dedekind_eta(const Complex& tau, const EvalContext& ctx)
{
    require_upper_half_plane(tau);
    const Complex q = exp(Real(2) * i_unit() * pi() * tau);
    const int K = series_length(abs(q), 0, ctx.working_digits());
    Complex prod(1), qn(1);
    for (int n = 1; n <= K; ++n) {
        qn *= q;
        prod *= Complex(1) - qn;
    }
    return exp(Real(2) * i_unit() * pi() * tau / Complex(24)) * prod;
}

Rational bernoulli(int k)
{
    static std::mutex mutex;
    static std::vector<Rational> table{Rational(1)};
    if (k < 0)
        throw std::invalid_argument("bernoulli index must be non-negative");
    std::lock_guard lock(mutex);
    // B_m = -1/(m+1) sum_{j<m} C(m+1, j) B_j
    while (int(table.size()) <= k) {
        int m = int(table.size());
        Rational s = 0;
        Integer binom = 1; // C(m+1, 0)
        for (int j = 0; j < m; ++j) {
            s += Rational(binom) * table[std::size_t(j)];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        Rational b = -s / (m + 1);
        b.canonicalize();
        table.push_back(b);
    }
    return table[std::size_t(k)];
}

Complex eisenstein(int two_n, const Complex& tau, const EvalContext& ctx)
{
    if (two_n < 2 || two_n % 2)
        throw std::invalid_argument("Eisenstein weight must be a positive even integer");
    require_upper_half_plane(tau);
    const int n = two_n / 2;
    Rational factor = Rational(4 * n) / bernoulli(two_n);
    factor.canonicalize();
    const Complex q = exp(Real(2) * i_unit() * pi() * tau);
    const int K = series_length(abs(q), two_n - 1, ctx.working_digits());
    Complex sum, qk(1);
    for (int k = 1; k <= K; ++k) {
        qk *= q;
        Real kp = boost::multiprecision::pow(Real(k), two_n - 1);
        sum += kp * qk / (Complex(1) - qk);
    }
    return Complex(1) - to_real(factor) * sum;
}

Complex e_function(int j, const Complex& tau, const EvalContext& ctx)
{
    const Complex t2 = pow(theta_null(2, tau, ctx), 4);
    const Complex t3 = pow(theta_null(3, tau, ctx), 4);
    const Complex t4 = pow(theta_null(4, tau, ctx), 4);
    const Real twelfth = Real(1) / 12;
    switch (j) {
    case 1:
        return twelfth * (t3 + t4);
    case 2:
        return twelfth * (t2 - t4);
    case 3:
        return twelfth * (-t2 - t3);
    }
    throw std::invalid_argument("e_j requires j in 1..3");
}

Complex h0(const Complex& tau, const EvalContext& ctx)
{
    const Complex a = tau * Complex(2), b = tau * Complex(6);
    return theta_null(3, a, ctx) * theta_null(3, b, ctx) + theta_null(2, a, ctx) * theta_null(2, b, ctx);
}

Complex special_function(std::string_view kind, const Complex& tau, const Complex& z, const EvalContext& ctx)
{
    if (kind.size() == 6 && kind.substr(0, 5) == "theta" && kind[5] >= '1' && kind[5] <= '4')
        return jacobi_theta(kind[5] - '0', z, tau, ctx);
    if (kind == "eta")
        return dedekind_eta(tau, ctx);
    if (kind == "h0")
        return h0(tau, ctx);
    if (kind.size() == 2 && kind[0] == 'e' && kind[1] >= '1' && kind[1] <= '3')
        return e_function(kind[1] - '0', tau, ctx);
    if (kind.size() >= 2 && kind[0] == 'E') {
        int w = std::stoi(std::string(kind.substr(1)));
        return eisenstein(w, tau, ctx);
    }
    throw std::invalid_argument("unknown special function: " + std::string(kind));
}

} // namespace e8jac
