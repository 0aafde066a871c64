#include "support.hpp"

#include "e8jac/oracle.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace e8jac;
using namespace e8jac::testing;

namespace {

const EvalContext& ctx()
{
    static EvalContext c;
    return c;
}

// Every test runs at the context precision.
class OracleTest : public ::testing::Test {
protected:
    PrecisionScope scope{ctx()};
};

const Real kTol("1e-30");

// B_n from x/(e^x - 1): invert the series sum_k x^k/(k+1)!.
std::vector<Rational> bernoulli_oracle(int n)
{
    std::vector<Rational> a(n + 1), inv(n + 1);
    Rational fact = 1;
    for (int k = 0; k <= n; ++k) {
        fact *= k + 1;
        a[k] = 1 / fact;
    }
    inv[0] = 1;
    for (int k = 1; k <= n; ++k) {
        Rational s = 0;
        for (int j = 1; j <= k; ++j)
            s += a[j] * inv[k - j];
        inv[k] = -s;
    }
    std::vector<Rational> b(n + 1);
    Rational f = 1;
    for (int k = 0; k <= n; ++k) {
        if (k)
            f *= k;
        b[k] = inv[k] * f;
    }
    return b;
}

Complex q_of(const Complex& tau) { return exp(Complex(2) * pi() * i_unit() * tau); }

// E_{2n} summed directly from divisor sums with the oracle normalization.
Complex eisenstein_oracle(int two_n, const Complex& tau, int terms)
{
    Rational c = -Rational(2 * two_n) / bernoulli_oracle(two_n)[two_n];
    Complex q = q_of(tau), qn = 1, sum = 1;
    for (int n = 1; n <= terms; ++n) {
        qn *= q;
        Integer sigma = 0;
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) {
                Integer p;
                mpz_ui_pow_ui(p.get_mpz_t(), d, two_n - 1);
                sigma += p;
            }
        sum += qn * to_real(Rational(c * sigma));
    }
    return sum;
}

std::array<Complex, 8> generic_z(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-0.4, 0.4), v(-0.04, 0.04);
    std::array<Complex, 8> z;
    for (auto& x : z)
        x = Complex(Real(u(rng)), Real(v(rng)));
    return z;
}

Sample sample_at(const Complex& tau, const std::array<Complex, 8>& z) { return Sample{tau, z}; }

Complex w(int j, const std::array<Complex, 8>& z) { return orbit_character(j, z, ctx()); }

} // namespace

TEST(Numeric, ComplexFieldOperations)
{
    PrecisionScope s(ctx());
    Complex a(Real(3), Real(4));
    EXPECT_EQ(abs(a), Real(5));
    EXPECT_LT(abs(a * (Complex(1) / a) - Complex(1)), kTol);
    EXPECT_LT(abs(exp(log(a)) - a), kTol);
    EXPECT_LT(abs(pow(i_unit(), 4) - Complex(1)), kTol);
    EXPECT_LT(abs(to_real(Rational(1, 3)) * 3 - 1), kTol);
    EXPECT_EQ(relative_difference(Complex(0), Complex(0)), Real(0));
}

TEST(Numeric, PrecisionScopeRestores)
{
    unsigned before = Real::default_precision();
    {
        EvalContext c;
        c.precision = 80;
        PrecisionScope s(c);
        EXPECT_EQ(Real::default_precision(), 100u);
    }
    EXPECT_EQ(Real::default_precision(), before);
}

TEST_F(OracleTest, BernoulliMatchesSeriesInversion)
{
    auto b = bernoulli_oracle(30);
    for (int k = 0; k <= 30; ++k)
        EXPECT_EQ(bernoulli(k), b[k]) << k;
    EXPECT_EQ(bernoulli(4), Rational(-1, 30));
}

TEST_F(OracleTest, E4FirstCoefficient)
{
    Rational c1 = -Rational(8) / bernoulli_oracle(4)[4];
    EXPECT_EQ(c1, Rational(240));
    Complex tau(Real(0), Real(6));
    Complex q = q_of(tau);
    Complex e4 = eisenstein(4, tau, ctx());
    // (E4 - 1)/q = 240 + 2160 q + O(q^2)
    Complex lead = (e4 - Complex(1)) / q;
    EXPECT_LT(abs(lead - Complex(240) - Complex(2160) * q), Real("1e-28"));
}

TEST_F(OracleTest, EisensteinAgainstDivisorSums)
{
    Complex tau(Real("0.1"), Real("1.1"));
    for (int k : {2, 4, 6, 8})
        EXPECT_LT(relative_difference(eisenstein(k, tau, ctx()), eisenstein_oracle(k, tau, 200)), kTol) << k;
}

TEST_F(OracleTest, ThetaNullTendsToOne)
{
    // theta3(20i) - 1 = 2e^{-20 pi} + 2e^{-80 pi} + ...
    Complex tau(Real(0), Real(20));
    Complex dev = theta_null(3, tau, ctx()) - Complex(1);
    Real closed = 2 * exp(Complex(-20 * pi())).re + 2 * exp(Complex(-80 * pi())).re;
    EXPECT_LT(abs(dev - Complex(closed)) / closed, kTol);
    EXPECT_LT(abs(theta_null(3, Complex(Real(0), Real(25)), ctx()) - Complex(1)), kTol);
}

TEST_F(OracleTest, ThetaIdentities)
{
    std::mt19937_64 rng(1);
    for (int i = 0; i < 3; ++i) {
        Complex tau = random_sample(rng).tau;
        Complex t2 = pow(theta_null(2, tau, ctx()), 4), t3 = pow(theta_null(3, tau, ctx()), 4),
                t4 = pow(theta_null(4, tau, ctx()), 4);
        EXPECT_LT(relative_difference(t3, t2 + t4), kTol);
        Complex e = e_function(1, tau, ctx()) + e_function(2, tau, ctx()) + e_function(3, tau, ctx());
        EXPECT_LT(abs(Complex(12) * e), kTol);
        Complex eta24 = pow(dedekind_eta(tau, ctx()), 24) * Real(1728);
        Complex e4 = eisenstein(4, tau, ctx()), e6 = eisenstein(6, tau, ctx());
        EXPECT_LT(relative_difference(eta24, pow(e4, 3) - pow(e6, 2)), kTol);
        EXPECT_LT(abs(theta_null(1, tau, ctx())), kTol);
    }
}

TEST_F(OracleTest, ThetaQuasiPeriodicity)
{
    Complex tau(Real("0.2"), Real("1.1")), z(Real("0.13"), Real("0.02"));
    // theta1(z + 1) = -theta1(z); theta3(z + tau) = e^{-pi i tau - 2 pi i z} theta3(z)
    EXPECT_LT(relative_difference(jacobi_theta(1, z + Complex(1), tau, ctx()), -jacobi_theta(1, z, tau, ctx())),
              kTol);
    Complex factor = exp(-(pi() * i_unit()) * (tau + Complex(2) * z));
    EXPECT_LT(relative_difference(jacobi_theta(3, z + tau, tau, ctx()), factor * jacobi_theta(3, z, tau, ctx())),
              kTol);
}

TEST_F(OracleTest, TruncationGrowsWithPrecision)
{
    EXPECT_LT(theta_truncation(Real(1), Real(0), 30), theta_truncation(Real(1), Real(0), 100));
    EXPECT_GT(theta_truncation(Real(1), Real(0), 30), theta_truncation(Real(4), Real(0), 30));
    EXPECT_THROW(theta_truncation(Real("1e-12"), Real(0), 50), PrecisionUnreachable);
}

TEST_F(OracleTest, SpecialFunctionDispatch)
{
    Complex tau(Real("0.1"), Real("1.2"));
    EXPECT_EQ(special_function("E4", tau, Complex(0), ctx()).re, eisenstein(4, tau, ctx()).re);
    EXPECT_EQ(special_function("theta2", tau, Complex(0), ctx()).re, theta_null(2, tau, ctx()).re);
    EXPECT_THROW(special_function("nope", tau, Complex(0), ctx()), std::invalid_argument);
}

TEST(E8, DualityOfRootsAndWeights)
{
    const auto& d = E8Data::standard();
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            EXPECT_EQ(dot4(d.fundamental_weights[i], d.simple_roots[j]), i == j ? 4 : 0) << i << j;
    for (const auto& a : d.simple_roots) {
        EXPECT_EQ(dot4(a, a), 8);
        EXPECT_TRUE(in_e8_lattice(a));
    }
}

TEST(E8, RootOrbitMatchesNormTwoVectors)
{
    const auto& orbit = weyl_orbit(8);
    EXPECT_EQ(orbit.size(), 240u);
    std::set<Doubled> roots;
    for (const auto& v : e8_lattice_vectors(2))
        if (dot4(v, v) == 8)
            roots.insert(v);
    EXPECT_EQ(std::set<Doubled>(orbit.begin(), orbit.end()), roots);
}

TEST(E8, LatticeShellSizes)
{
    std::map<int, int> shells;
    for (const auto& v : e8_lattice_vectors(6))
        ++shells[dot4(v, v) / 4];
    // 240 sigma_3(n)
    EXPECT_EQ(shells[0], 1);
    EXPECT_EQ(shells[2], 240);
    EXPECT_EQ(shells[4], 2160);
    EXPECT_EQ(shells[6], 6720);
}

TEST(E8, OrbitsAreClosedAndDivideWeylOrder)
{
    const long weyl_order = 696729600;
    std::map<int, std::size_t> sizes;
    for (int j : {1, 2, 7, 8}) {
        const auto& orbit = weyl_orbit(j);
        sizes[j] = orbit.size();
        EXPECT_EQ(weyl_order % static_cast<long>(orbit.size()), 0) << j;
        std::set<Doubled> members(orbit.begin(), orbit.end());
        EXPECT_EQ(members.size(), orbit.size());
        for (const auto& v : orbit)
            for (int r = 1; r <= 8; ++r)
                ASSERT_TRUE(members.count(reflect(v, r))) << j;
    }
    EXPECT_EQ(sizes[1], 2160u);
    EXPECT_EQ(sizes[2], 17280u);
    EXPECT_EQ(sizes[7], 6720u);
}

TEST_F(OracleTest, OrbitCharacterAtZero)
{
    std::array<Complex, 8> zero{};
    EXPECT_LT(abs(w(8, zero) - Complex(240)), kTol);
    EXPECT_LT(abs(w(1, zero) - Complex(2160)), kTol);
}

TEST_F(OracleTest, ThetaE8ProductAgainstLatticeSum)
{
    std::mt19937_64 rng(3);
    Sample s0 = sample_at(Complex(Real(0), Real(3)), {});
    EXPECT_LT(relative_difference(theta_e8(s0, ctx()), theta_e8_lattice(s0, 8, ctx())), Real("1e-35"));
    Sample s1 = sample_at(Complex(Real("0.1"), Real(3)), generic_z(rng));
    EXPECT_LT(relative_difference(theta_e8(s1, ctx()), theta_e8_lattice(s1, 8, ctx())), Real("1e-35"));
    EXPECT_LT(relative_difference(theta_e8(s0, ctx()), eisenstein(4, s0.tau, ctx())), kTol);
}

TEST_F(OracleTest, GeneratorsReduceToEisensteinAtZero)
{
    std::mt19937_64 rng(4);
    for (int i = 0; i < 5; ++i) {
        Sample s = random_sample(rng);
        s.z = {};
        Complex e4 = eisenstein(4, s.tau, ctx()), e6 = eisenstein(6, s.tau, ctx());
        for (const char* a : {"A1", "A2", "A3", "A4", "A5"})
            EXPECT_LT(relative_difference(eval_AB(a, s, ctx()), e4), kTol) << a;
        for (const char* b : {"B2", "B3", "B4", "B6"})
            EXPECT_LT(relative_difference(eval_AB(b, s, ctx()), e6), kTol) << b;
        EXPECT_LT(relative_difference(eval_ab("b1", s, ctx()), Complex(-4)), kTol);
    }
}

TEST_F(OracleTest, QuasiPeriodicityOfA1AndA2)
{
    std::mt19937_64 rng(5);
    const auto& roots = weyl_orbit(8);
    for (int i = 0; i < 2; ++i) {
        Sample s = random_sample(rng);
        auto alpha = to_complex(roots[rng() % roots.size()]);
        Sample shifted = s;
        for (int j = 0; j < 8; ++j)
            shifted.z[j] = s.z[j] + s.tau * alpha[j];
        for (auto [name, m] : {std::pair{"A1", 1}, std::pair{"A2", 2}}) {
            Complex phase = exp(Complex(-m) * pi() * i_unit() * (s.tau * dot(alpha, alpha) + Complex(2) * dot(s.z, alpha)));
            EXPECT_LT(relative_difference(eval_AB(name, shifted, ctx()), phase * eval_AB(name, s, ctx())), kTol)
                << name;
        }
    }
}

TEST_F(OracleTest, NumericRoundTripOfAllGenerators)
{
    std::mt19937_64 rng(6);
    for (int i = 0; i < 3; ++i) {
        Sample s = random_sample(rng);
        for (std::size_t g = 0; g < Alphabet::AB().size(); ++g) {
            const auto& sym = Alphabet::AB()[g].symbol;
            Complex direct = PointEvaluator(s, ctx()).AB(g);
            Complex via = eval_poly(sub_AB_to_ab(PAB(sym)), s, ctx());
            EXPECT_LT(relative_difference(direct, via), kTol) << sym;
        }
        Complex a1 = eval_AB("A1", s, ctx());
        Complex rebuilt = -(eisenstein(4, s.tau, ctx()) * eval_ab("b1", s, ctx())) / Complex(4);
        EXPECT_LT(relative_difference(a1, rebuilt), kTol);
    }
}

TEST_F(OracleTest, EvalPolyMatchesSpecialFunctions)
{
    std::mt19937_64 rng(7);
    Sample s = random_sample(rng);
    EXPECT_LT(relative_difference(eval_poly(PAB("E4"), s, ctx()), eisenstein(4, s.tau, ctx())), kTol);
    Complex lhs = eval_poly(p165(), s, ctx());
    Complex rhs = eval_poly(p12c5_ab(), s, ctx()) * eisenstein(4, s.tau, ctx());
    EXPECT_LT(relative_difference(lhs, rhs), kTol);
}

TEST_F(OracleTest, E4ZeroLocation)
{
    Complex t = e4_zero(ctx());
    EXPECT_LT(abs(eisenstein(4, t, ctx())), Real("1e-40"));
    Complex rho = exp(pi() * i_unit() / Complex(3));
    EXPECT_LT(abs(t - rho), Real("1e-40"));
    EXPECT_LT(abs(e4_zero_radius(ctx()) - abs(q_of(t))), Real("1e-40"));
}

TEST_F(OracleTest, NearSingularAtE4Zero)
{
    std::mt19937_64 rng(8);
    Sample s = random_sample(rng);
    s.tau = e4_zero(ctx());
    EXPECT_THROW(eval_ab("a2", s, ctx()), NearSingular);
    PointEvaluator pe(s, ctx());
    EXPECT_TRUE(pe.near_singular());
}

TEST_F(OracleTest, CertifiedEvaluationAtE4Zero)
{
    auto b = jacobi_basis(-26, 7);
    std::mt19937_64 rng(9);
    Sample s = random_sample(rng);
    s.tau = e4_zero(ctx());
    EXPECT_THROW(eval_poly(b.forms[0], s, ctx()), NearSingular);
    Complex v = eval_certified(b.certificates[0], s, ctx());
    // Oracle: the holomorphic value is the mean of naive values on a circle.
    Complex mean;
    const int K = 48;
    for (int k = 0; k < K; ++k) {
        Sample t = s;
        t.tau = s.tau + Real("1e-2") * exp(Complex(2) * pi() * i_unit() * Complex(Real(k) / K));
        mean += eval_poly(b.forms[0], t, ctx());
    }
    mean = mean / Complex(K);
    EXPECT_LT(relative_difference(mean, v), Real("1e-25"));
    Sample off = s;
    off.tau = s.tau + Complex(0.01, 0.02);
    EXPECT_LT(relative_difference(eval_certified(b.certificates[0], off, ctx()), eval_poly(b.forms[0], off, ctx())),
              Real("1e-25"));
}

TEST_F(OracleTest, LaurentProbeOfB1)
{
    std::mt19937_64 rng(10);
    auto z = generic_z(rng);
    Real r = e4_zero_radius(ctx()) / 100;
    auto probe = q_laurent_probe(Pab("b1"), z, r, ctx().probe_points, ctx());
    EXPECT_LT(relative_difference(probe.coefficients.at(0), Complex(-4)), Real("1e-25"));
    EXPECT_TRUE(probe.regular(1e-25));
}

TEST_F(OracleTest, LaurentProbeOfCuspForm)
{
    std::mt19937_64 rng(11);
    auto z = generic_z(rng);
    auto probe = q_laurent_probe(delta_polynomial() * PAB("A1"), z, Real("0.005"), ctx().probe_points, ctx());
    EXPECT_LT(abs(probe.coefficients.at(0)), probe.scale * Real("1e-25"));
    EXPECT_GT(abs(probe.coefficients.at(1)), Real("1e-3"));
    EXPECT_TRUE(probe.regular(1e-25));
}

TEST_F(OracleTest, LeadingCoefficientsOfMeromorphicGenerators)
{
    std::mt19937_64 rng(12);
    Real r = e4_zero_radius(ctx()) / 100;
    for (int trial = 0; trial < 2; ++trial) {
        auto z = generic_z(rng);
        Complex w1 = w(1, z), w2 = w(2, z), w7 = w(7, z), w8 = w(8, z);
        std::vector<std::pair<const char*, Complex>> expected = {
            {"a2", Complex(to_real(Rational(-2, 3))) * w1 + Complex(12) * w8 - Complex(1440)},
            {"b1", Complex(-4)},
            {"b2", Complex(to_real(Rational(-1, 18))) * w1 - Complex(3) * w8 + Complex(840)},
            {"b3", Complex(to_real(Rational(-1, 6))) * w2 - Complex(4) * w7 - Complex(8) * w1 + Complex(528) * w8 -
                       Complex(79680)},
        };
        for (const auto& [name, value] : expected) {
            auto probe = q_laurent_probe(Pab(name), z, r, ctx().probe_points, ctx());
            EXPECT_LT(relative_difference(probe.coefficients.at(0), value), Real("1e-25")) << name;
            EXPECT_TRUE(probe.regular(1e-25)) << name;
        }
    }
}

TEST_F(OracleTest, AxiomsHoldForA1)
{
    auto r = check_axioms(sub_AB_to_ab(PAB("A1")), 4, 1, 3, ctx());
    EXPECT_EQ(r.samples, 3);
    EXPECT_TRUE(r.passes(1e-25));
    EXPECT_LT(r.modular_S, Real("1e-25"));
    EXPECT_LT(r.weyl, Real("1e-25"));
}

TEST_F(OracleTest, AxiomsHoldForFirstExampleBasis)
{
    auto b = jacobi_basis(-16, 5, false);
    for (const auto& f : b.forms) {
        auto r = check_axioms(f, -16, 5, 3, ctx());
        EXPECT_TRUE(r.transformation_laws_pass(1e-25));
        EXPECT_TRUE(r.regular(1e-25));
    }
}

TEST_F(OracleTest, MeromorphicGeneratorFailsRegularity)
{
    auto r = check_axioms(Pab("a3"), -14, 3, 2, ctx());
    EXPECT_TRUE(r.transformation_laws_pass(1e-25));
    EXPECT_FALSE(r.regular(1e-25));
}

TEST_F(OracleTest, BidegreeMismatchRejected)
{
    EXPECT_THROW(check_axioms(sub_AB_to_ab(PAB("A1")), 6, 1, 1, ctx()), std::invalid_argument);
}
