#include "support.hpp"

#include <gtest/gtest.h>

using namespace e8jac;
using namespace e8jac::testing;

namespace {

const char* kExample1[] = {"E4^2*b5", "E6*a2*a3", "E4*a2*b3", "E4*a3*b2", "E4*a4*b1", "a2^2*b1"};

// Ansatz of the first worked example, unknown i on the i-th displayed monomial.
ParamPoly example1_ansatz()
{
    ParamPoly p(Alphabet::ab());
    for (std::uint32_t i = 0; i < 6; ++i)
        p = ParamPoly::sum_unchecked(p, times_unknown(Pab(kExample1[i]), i));
    return p;
}

std::vector<ParamPoly> example1_pole_parts()
{
    ParamFrac f = sub_ab_to_AB(example1_ansatz());
    ParamPoly lifted = f.num * delta_power(Alphabet::AB(), static_cast<unsigned>(3 - f.delta_pow));
    return e4_split(ParamFrac(lifted, f.e4_pow, 0)).q;
}

std::vector<std::string> names(std::size_t n)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back("c" + std::to_string(i + 1));
    return out;
}

} // namespace

TEST(MatchCoefficients, ThirdOrderPoleGivesOneEquation)
{
    auto q = example1_pole_parts();
    ASSERT_EQ(q.size(), 3u);
    LinearSystem sys = match_coefficients(q[2], ParamPoly(Alphabet::AB()), names(6));
    ASSERT_EQ(sys.rows.size(), 1u);
    IntRow row = primitive_row(sys.rows[0]);
    // 36 * (1/3, 4, -5/9, -5/9, -1/12, 1/12)
    IntVector expected = {12, 144, -20, -20, -3, 3};
    EXPECT_EQ(to_dense(row, 6), expected);
}

TEST(MatchCoefficients, FirstOrderPoleGivesThreeEquations)
{
    auto q = example1_pole_parts();
    LinearSystem sys = match_coefficients(q[0], ParamPoly(Alphabet::AB()), names(6));
    EXPECT_EQ(sys.rows.size(), 3u);
}

TEST(MatchCoefficients, ZeroVersusZero)
{
    LinearSystem sys = match_coefficients(ParamPoly(Alphabet::AB()), ParamPoly(Alphabet::AB()), {});
    EXPECT_TRUE(sys.rows.empty());
}

TEST(Nullspace, FirstExampleSolution)
{
    LinearSystem sys{names(6), {}};
    for (const auto& q : example1_pole_parts())
        append_coefficients(sys, q, ParamPoly(Alphabet::AB()));
    EXPECT_EQ(sys.rows.size(), 5u);
    SolutionSpace s = nullspace(sys);
    EXPECT_EQ(s.dimension(), 2u);
    EXPECT_EQ(s.rank, 4u);
    // The displayed solution, with c1, c2 free.
    Matrix paper = {{1, 0, Rational(18, 5), Rational(-24, 5), 12, 0},
                    {0, 1, Rational(36, 5), Rational(-108, 5), 72, -72}};
    EXPECT_TRUE(same_span(to_matrix(s.basis), paper));
}

TEST(Nullspace, IdentityHasTrivialKernel)
{
    LinearSystem sys{names(5), {}};
    for (std::uint32_t i = 0; i < 5; ++i)
        sys.rows.push_back({{i, Rational(1)}});
    SolutionSpace s = nullspace(sys);
    EXPECT_EQ(s.dimension(), 0u);
    EXPECT_EQ(s.rank, 5u);
}

TEST(Nullspace, RandomSystemsAgainstNaiveElimination)
{
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> entry(-4, 4), den(1, 3);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t rows = 4 + trial % 3, cols = 7;
        Matrix m(rows, std::vector<Rational>(cols));
        LinearSystem sys{names(cols), {}};
        for (std::size_t r = 0; r < rows; ++r) {
            SparseRow row;
            for (std::size_t c = 0; c < cols; ++c) {
                // Sparse entries and duplicated rows exercise rank deficiency.
                if (rng() % 3 == 0)
                    continue;
                Rational x(entry(rng), den(rng));
                x.canonicalize();
                m[r][c] = x;
                if (x != 0)
                    row.push_back({static_cast<std::uint32_t>(c), x});
            }
            if (trial % 4 == 0 && r == rows - 1) {
                m[r] = m[0];
                row = sys.rows[0];
            }
            sys.rows.push_back(row);
        }
        SolutionSpace s = nullspace(sys);
        Matrix oracle = naive_nullspace(m, cols);
        ASSERT_EQ(s.dimension(), oracle.size());
        EXPECT_EQ(s.rank, cols - oracle.size());
        if (!oracle.empty())
            EXPECT_TRUE(same_span(to_matrix(s.basis), oracle));
        for (const auto& v : s.basis) {
            for (const auto& row : m) {
                Rational dotp = 0;
                for (std::size_t c = 0; c < cols; ++c)
                    dotp += row[c] * v[c];
                EXPECT_EQ(dotp, 0);
            }
            auto lead = std::find_if(v.begin(), v.end(), [](const Integer& x) { return x != 0; });
            ASSERT_NE(lead, v.end());
            EXPECT_GT(*lead, 0);
            Integer g = 0;
            for (const auto& x : v)
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), Integer(abs(x)).get_mpz_t());
            EXPECT_EQ(g, 1);
        }
    }
}

TEST(Project, OntoAllUnknownsIsIdentity)
{
    LinearSystem sys{names(4), {{{0, Rational(1)}, {1, Rational(-1)}}, {{2, Rational(2)}, {3, Rational(1)}}}};
    SolutionSpace s = nullspace(sys);
    EXPECT_EQ(project(s, {0, 1, 2, 3}), s);
}

TEST(Project, OntoOneCoordinate)
{
    SolutionSpace s{3, 1, {{1, 0, 5}, {0, 1, 7}}};
    SolutionSpace p = project(s, {2});
    ASSERT_EQ(p.dimension(), 1u);
    EXPECT_EQ(p.basis[0], (IntVector{1}));
}

TEST(Project, DropsDependentImages)
{
    SolutionSpace s{3, 1, {{1, 0, 2}, {0, 1, 4}}};
    SolutionSpace p = project(s, {0, 2});
    EXPECT_EQ(p.dimension(), 2u);
    SolutionSpace q = project(SolutionSpace{3, 1, {{1, 0, 0}, {0, 1, 0}}}, {2});
    EXPECT_EQ(q.dimension(), 0u);
}

TEST(RowEchelon, IncrementalRank)
{
    RowEchelon e(3);
    EXPECT_TRUE(e.insert(IntVector{2, 4, 6}));
    EXPECT_FALSE(e.insert(IntVector{1, 2, 3}));
    EXPECT_TRUE(e.insert(IntVector{0, 1, 1}));
    EXPECT_TRUE(e.contains(to_sparse(IntVector{1, 3, 4})));
    EXPECT_FALSE(e.contains(to_sparse(IntVector{0, 0, 1})));
    EXPECT_EQ(e.rank(), 2u);
    auto rows = e.reduced();
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(to_dense(rows[0], 3), (IntVector{1, 0, 1}));
    EXPECT_EQ(to_dense(rows[1], 3), (IntVector{0, 1, 1}));
}

TEST(Primitive, ClearsDenominators)
{
    EXPECT_EQ(primitive({Rational(-1, 2), Rational(3, 4), 0}), (IntVector{2, -3, 0}));
    EXPECT_EQ(primitive({0, 0}), (IntVector{0, 0}));
}
