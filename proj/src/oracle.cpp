#include "e8jac/oracle.hpp"

#include "e8jac/generators.hpp"

#include <cmath>
#include <mutex>

namespace e8jac {

namespace {

std::array<Complex, 8> scaled(const std::array<Complex, 8>& z, const Complex& c)
{
    std::array<Complex, 8> out;
    for (std::size_t i = 0; i < 8; ++i)
        out[i] = z[i] * c;
    return out;
}

Complex A1_at(const Complex& tau, const std::array<Complex, 8>& z, int c, const EvalContext& ctx)
{
    return theta_e8(Sample{tau, c == 1 ? z : scaled(z, Complex(c))}, ctx);
}

Complex shift(const Complex& tau, int k, int m) { return (tau + Complex(k)) / Complex(m); }

Real frac(int a, int b) { return Real(a) / Real(b); }

Complex A_m(int m, const Complex& tau, const std::array<Complex, 8>& z, const EvalContext& ctx)
{
    if (m == 1)
        return A1_at(tau, z, 1, ctx);
    if (m == 4)
        return A1_at(tau, z, 2, ctx);
    Complex sum;
    for (int k = 0; k < m; ++k)
        sum += A1_at(shift(tau, k, m), z, 1, ctx);
    int m3 = m * m * m;
    return frac(m3, m3 + 1) * (A1_at(tau * Complex(m), z, m, ctx) + frac(1, m * m3) * sum);
}

Complex B_2(const Complex& tau, const std::array<Complex, 8>& z, const EvalContext& ctx)
{
    Complex t = e_function(1, tau, ctx) * A1_at(tau * Complex(2), z, 2, ctx) +
                frac(1, 16) * e_function(3, tau, ctx) * A1_at(tau / Complex(2), z, 1, ctx) +
                frac(1, 16) * e_function(2, tau, ctx) * A1_at(shift(tau, 1, 2), z, 1, ctx);
    return frac(32, 5) * t;
}

Complex B_3(const Complex& tau, const std::array<Complex, 8>& z, const EvalContext& ctx)
{
    Complex sum;
    for (int k = 0; k < 3; ++k) {
        Complex t = shift(tau, k, 3);
        sum += pow(h0(t, ctx), 2) * A1_at(t, z, 1, ctx);
    }
    Complex t = pow(h0(tau, ctx), 2) * A1_at(tau * Complex(3), z, 3, ctx) - frac(1, 243) * sum;
    return frac(81, 80) * t;
}

Complex B_4(const Complex& tau, const std::array<Complex, 8>& z, const EvalContext& ctx)
{
    Complex th4 = pow(theta_null(4, tau * Complex(2), ctx), 4);
    Complex sum;
    for (int k = 0; k < 4; ++k)
        sum += pow(theta_null(2, shift(tau, k, 2), ctx), 4) * A1_at(shift(tau, k, 4), z, 1, ctx);
    Complex t = th4 * A1_at(tau * Complex(4), z, 4, ctx) -
                frac(1, 16) * th4 * A1_at(tau + Complex(Real(0.5)), z, 2, ctx) - frac(1, 4 * 256) * sum;
    return frac(16, 15) * t;
}

Complex B_6(const Complex& tau, const std::array<Complex, 8>& z, const EvalContext& ctx)
{
    Complex s2, s3, s6;
    for (int k = 0; k < 2; ++k) {
        Complex t = tau + Complex(k);
        s2 += pow(h0(t, ctx), 2) * A1_at((Complex(3) * tau + Complex(3 * k)) / Complex(2), z, 3, ctx);
    }
    for (int k = 0; k < 3; ++k)
        s3 += pow(h0(shift(tau, k, 3), ctx), 2) *
              A1_at((Complex(2) * tau + Complex(2 * k)) / Complex(3), z, 2, ctx);
    for (int k = 0; k < 6; ++k)
        s6 += pow(h0(shift(tau, k, 3), ctx), 2) * A1_at(shift(tau, k, 6), z, 1, ctx);
    Complex t = pow(h0(tau, ctx), 2) * A1_at(tau * Complex(6), z, 6, ctx) + frac(1, 16) * s2 - frac(1, 3 * 81) * s3 -
                frac(1, 3 * 1296) * s6;
    return frac(9, 10) * t;
}

Complex AB_value(std::size_t g, const Sample& s, const EvalContext& ctx)
{
    switch (g) {
    case gen::E4:
        return eisenstein(4, s.tau, ctx);
    case gen::E6:
        return eisenstein(6, s.tau, ctx);
    case gen::A1:
    case gen::A2:
    case gen::A3:
    case gen::A4:
    case gen::A5:
        return A_m(int(g - gen::A1) + 1, s.tau, s.z, ctx);
    case gen::B2:
        return B_2(s.tau, s.z, ctx);
    case gen::B3:
        return B_3(s.tau, s.z, ctx);
    case gen::B4:
        return B_4(s.tau, s.z, ctx);
    case gen::B6:
        return B_6(s.tau, s.z, ctx);
    }
    throw std::invalid_argument("unknown AB generator");
}

} // namespace

Complex A1_scaled(const Complex& tau, const std::array<Complex, 8>& z, int c, const EvalContext& ctx)
{
    PrecisionScope scope(ctx);
    return A1_at(tau, z, c, ctx);
}

PointEvaluator::PointEvaluator(Sample s, const EvalContext& ctx) : sample_(std::move(s)), ctx_(ctx) {}

const Complex& PointEvaluator::AB(std::size_t g)
{
    if (g >= AB_.size())
        throw std::out_of_range("AB generator index");
    if (!AB_[g]) {
        PrecisionScope scope(ctx_);
        AB_[g] = AB_value(g, sample_, ctx_);
    }
    return *AB_[g];
}

const Complex& PointEvaluator::E4() { return AB(gen::E4); }
const Complex& PointEvaluator::E6() { return AB(gen::E6); }

const Complex& PointEvaluator::Delta()
{
    if (!delta_) {
        PrecisionScope scope(ctx_);
        delta_ = (pow(E4(), 3) - pow(E6(), 2)) / Complex(1728);
    }
    return *delta_;
}

bool PointEvaluator::near_singular()
{
    PrecisionScope scope(ctx_);
    Real t(ctx_.singular_threshold);
    return abs(E4()) < t || abs(Delta()) < t;
}

const Complex& PointEvaluator::ab(std::size_t g)
{
    if (g >= ab_.size())
        throw std::out_of_range("ab generator index");
    if (!ab_[g]) {
        if (g == gen::E4 || g == gen::E6)
            return AB(g);
        if (near_singular())
            throw NearSingular("ab generator " + Alphabet::ab()[g].symbol + " at tau = " + to_string(sample_.tau) +
                               ": |E4| or |Delta| below the singular threshold");
        PrecisionScope scope(ctx_);
        const Frac& img = ab_generator_image(g);
        Complex num = eval_with(img.num, [this](std::size_t i) -> const Complex& { return AB(i); });
        ab_[g] = num / (pow(E4(), img.e4_pow) * pow(Delta(), img.delta_pow));
    }
    return *ab_[g];
}

Complex PointEvaluator::eval_with(const Poly& p, const std::function<const Complex&(std::size_t)>& gen)
{
    PrecisionScope scope(ctx_);
    Complex sum;
    for (const auto& t : p.terms()) {
        Complex term(to_real(t.coeff));
        for (std::size_t i = 0; i < p.alphabet().size(); ++i)
            if (t.mono.exps[i])
                term *= pow(gen(i), long(t.mono.exps[i]));
        sum += term;
    }
    return sum;
}

Complex PointEvaluator::eval(const Poly& p)
{
    if (&p.alphabet() == &Alphabet::AB())
        return eval_with(p, [this](std::size_t i) -> const Complex& { return AB(i); });
    if (&p.alphabet() == &Alphabet::ab())
        return eval_with(p, [this](std::size_t i) -> const Complex& { return ab(i); });
    throw std::invalid_argument("eval: unsupported alphabet " + p.alphabet().name());
}

Complex eval_AB(std::string_view name, const Sample& s, const EvalContext& ctx)
{
    PointEvaluator ev(s, ctx);
    return ev.AB(Alphabet::AB().index_of(name));
}

Complex eval_ab(std::string_view name, const Sample& s, const EvalContext& ctx)
{
    PointEvaluator ev(s, ctx);
    return ev.ab(Alphabet::ab().index_of(name));
}

Complex eval_poly(const Poly& form, const Sample& s, const EvalContext& ctx)
{
    PointEvaluator ev(s, ctx);
    return ev.eval(form);
}

Complex eval_certified(const Certificate& cert, const Sample& s, const EvalContext& ctx)
{
    PrecisionScope scope(ctx);
    PointEvaluator ev(s, ctx);
    Complex p12;
    if (!cert.s_parts.empty()) {
        if (abs(ev.E4()) >= Real(ctx.singular_threshold)) {
            p12 = ev.eval(p165()) / ev.E4();
        } else {
            // Mean value over a circle of radius 1e-3 around tau; the error is
            // of order radius^K for the holomorphic quotient.
            const int K = 32;
            const Real eps("1e-3");
            for (int k = 0; k < K; ++k) {
                Complex w = exp(Real(2) * pi() * i_unit() * Complex(Real(k) / K));
                PointEvaluator nb(Sample{s.tau + eps * w, s.z}, ctx);
                p12 += nb.eval(p165()) / nb.E4();
            }
            p12 = p12 / Complex(K);
        }
    }
    Complex sum = ev.eval(cert.remainder);
    for (const auto& [l, part] : cert.s_parts)
        sum += pow(p12, l) * ev.eval(part);
    return sum / pow(ev.Delta(), cert.n);
}

Complex e4_zero(const EvalContext& ctx)
{
    static std::mutex mutex;
    static std::map<int, Complex> cache;
    std::lock_guard lock(mutex);
    if (auto it = cache.find(ctx.working_digits()); it != cache.end())
        return it->second;
    PrecisionScope scope(ctx);
    Complex tau(0.5, 0.866);
    const Real stop = boost::multiprecision::pow(Real(10), -ctx.working_digits() + 2);
    for (int it = 0; it < 100; ++it) {
        Complex e2 = eisenstein(2, tau, ctx), e4 = eisenstein(4, tau, ctx), e6 = eisenstein(6, tau, ctx);
        Complex d = Real(2) * pi() * i_unit() * (e2 * e4 - e6) / Complex(3);
        Complex step = e4 / d;
        tau -= step;
        if (abs(step) < stop)
            return cache.emplace(ctx.working_digits(), tau).first->second;
    }
    throw PrecisionUnreachable("Newton iteration for the E4 zero did not converge");
}

Real e4_zero_radius(const EvalContext& ctx)
{
    PrecisionScope scope(ctx);
    Complex t = e4_zero(ctx);
    return boost::multiprecision::exp(Real(-2) * pi() * t.im);
}

Real LaurentProbe::negative_part() const
{
    Real worst = 0;
    for (int n = 1; n <= 2; ++n) {
        auto it = coefficients.find(-n);
        if (it == coefficients.end())
            continue;
        Real v = abs(it->second) / boost::multiprecision::pow(radius, n);
        worst = std::max(worst, scale > 0 ? Real(v / scale) : v);
    }
    return worst;
}

LaurentProbe q_laurent_probe(const std::function<Complex(const Sample&)>& f, const std::array<Complex, 8>& z,
                             const Real& radius, int points, const EvalContext& ctx)
{
    if (points < 5)
        throw std::invalid_argument("q_laurent_probe needs at least 5 points");
    PrecisionScope scope(ctx);
    LaurentProbe probe;
    probe.radius = radius;
    probe.points = points;
    probe.scale = 0;
    // q = r exp(2 pi i s / N)  <=>  tau = s / N + i log(1/r) / (2 pi).
    const Real im = boost::multiprecision::log(Real(1) / radius) / (Real(2) * pi());
    std::vector<Complex> values;
    for (int s = 0; s < points; ++s) {
        values.push_back(f(Sample{Complex(Real(s) / points, im), z}));
        probe.scale = std::max(probe.scale, abs(values.back()));
    }
    for (int n = -2; n <= 2; ++n) {
        Complex c;
        for (int s = 0; s < points; ++s)
            c += values[std::size_t(s)] * exp(Real(-2) * pi() * i_unit() * Complex(Real(s * n) / points));
        c = c / Complex(points);
        // c now approximates c_n r^n.
        probe.coefficients[n] = c / Complex(boost::multiprecision::pow(radius, n));
    }
    return probe;
}

LaurentProbe q_laurent_probe(const Poly& form, const std::array<Complex, 8>& z, const Real& radius, int points,
                             const EvalContext& ctx)
{
    return q_laurent_probe([&](const Sample& s) { return eval_poly(form, s, ctx); }, z, radius, points, ctx);
}

bool AxiomReport::transformation_laws_pass(double tol) const
{
    Real t(tol);
    return quasi_periodicity <= t && modular_S <= t && modular_T <= t && weyl <= t;
}

Sample random_sample(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.9, 1.4), zr(-0.5, 0.5), zi(-0.05, 0.05);
    Sample s;
    s.tau = Complex(re(rng), im(rng));
    for (auto& c : s.z)
        c = Complex(zr(rng), zi(rng));
    return s;
}

AxiomReport check_axioms(const Poly& form, int weight, int index, int samples, const EvalContext& ctx,
                         std::uint64_t seed)
{
    if (!form.is_homogeneous() || form.bidegree() != BiDegree{weight, index})
        throw std::invalid_argument("check_axioms: form is not of bidegree " + to_string(BiDegree{weight, index}));
    PrecisionScope scope(ctx);
    std::mt19937_64 rng(seed);
    const auto& roots = weyl_orbit(8);
    const auto& simple = E8Data::standard().simple_roots;
    AxiomReport report;
    report.probe_radius = Real(ctx.probe_radius);
    const Complex ipi = i_unit() * pi();
    const Real m(index);

    int attempts = 0;
    while (report.samples < samples) {
        if (attempts++ > samples + ctx.max_retries)
            throw NearSingular("check_axioms: too many near-singular samples");
        Sample s = random_sample(rng);
        auto alpha = to_complex(roots[std::uniform_int_distribution<std::size_t>(0, roots.size() - 1)(rng)]);
        auto beta = to_complex(roots[std::uniform_int_distribution<std::size_t>(0, roots.size() - 1)(rng)]);
        int j = std::uniform_int_distribution<int>(1, 8)(rng);
        try {
            Complex base = eval_poly(form, s, ctx);

            // (ii) z -> z + tau alpha + beta.
            Sample shifted = s;
            for (std::size_t i = 0; i < 8; ++i)
                shifted.z[i] = s.z[i] + s.tau * alpha[i] + beta[i];
            Complex factor = exp(-m * ipi * (s.tau * dot(alpha, alpha) + Complex(2) * dot(s.z, alpha)));
            Real qp = relative_difference(eval_poly(form, shifted, ctx), factor * base);

            // (iii) S and T.
            Sample st{Complex(-1) / s.tau, scaled(s.z, Complex(1) / s.tau)};
            Complex rhs = pow(s.tau, weight) * exp(m * ipi * dot(s.z, s.z) / s.tau) * base;
            Real ms = relative_difference(eval_poly(form, st, ctx), rhs);
            Real mt = relative_difference(eval_poly(form, Sample{s.tau + Complex(1), s.z}, ctx), base);

            // (i) simple reflection of z.
            auto a = to_complex(simple[std::size_t(j - 1)]);
            Complex za = dot(s.z, a);
            Sample reflected = s;
            for (std::size_t i = 0; i < 8; ++i)
                reflected.z[i] = s.z[i] - za * a[i];
            Real wr = relative_difference(eval_poly(form, reflected, ctx), base);

            // (iv) no negative q powers at this z.
            auto probe = q_laurent_probe(form, s.z, Real(ctx.probe_radius), ctx.probe_points, ctx);

            report.quasi_periodicity = std::max(report.quasi_periodicity, qp);
            report.modular_S = std::max(report.modular_S, ms);
            report.modular_T = std::max(report.modular_T, mt);
            report.weyl = std::max(report.weyl, wr);
            report.regularity = std::max(report.regularity, probe.negative_part());
            ++report.samples;
        } catch (const NearSingular&) {
            ++report.resampled;
        }
    }
    return report;
}

} // namespace e8jac
