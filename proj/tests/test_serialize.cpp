#include "support.hpp"

#include "e8jac/serialize.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <unistd.h>

using namespace e8jac;
using namespace e8jac::testing;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag)
{
    fs::path d = fs::temp_directory_path() / ("e8jac_test_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

class CountingStore : public BasisStore {
public:
    explicit CountingStore(fs::path dir) : inner(std::move(dir)) {}
    std::optional<JacobiBasis> load(BiDegree t) override
    {
        auto b = inner.load(t);
        hits += b.has_value();
        return b;
    }
    void save(const JacobiBasis& b) override
    {
        ++saves;
        inner.save(b);
    }
    FileBasisStore inner;
    int hits = 0, saves = 0;
};

} // namespace

TEST(Json, RationalsAreLowestTermsWithDenominator)
{
    EXPECT_EQ(rational_to_json(Rational(3)), "3/1");
    EXPECT_EQ(rational_to_json(Rational(-2, 4)), "-1/2");
}

TEST(Json, PolyUsesNamedExponents)
{
    Poly p = Pab("5*E4^2*b5 - 18/5*E4*a2*b3");
    Json j = poly_to_json(p);
    EXPECT_EQ(j["alphabet"], "ab");
    bool found = false;
    for (const auto& t : j["terms"])
        if (t["exps"].contains("b5")) {
            EXPECT_EQ(t["exps"]["E4"], 2);
            EXPECT_EQ(t["coeff"], "5/1");
            found = true;
        }
    EXPECT_TRUE(found);
    EXPECT_EQ(poly_from_json(j), p);
    EXPECT_EQ(poly_from_json(Json::parse(j.dump())), p);
}

TEST(Json, MalformedInputRejected)
{
    EXPECT_THROW(poly_from_json(Json::parse(R"({"alphabet":"xy","terms":[]})")), std::invalid_argument);
    EXPECT_THROW(poly_from_json(Json::parse(R"({"alphabet":"ab","terms":[{"coeff":"1/0","exps":{}}]})")),
                 std::invalid_argument);
    EXPECT_ANY_THROW(poly_from_json(Json::parse(R"({"alphabet":"ab"})")));
}

TEST(Json, BasisAndCertificateRoundTrip)
{
    JacobiBasis b = jacobi_basis(-26, 7);
    Json j = basis_to_json(b);
    JacobiBasis back = basis_from_json(Json::parse(j.dump(2)));
    EXPECT_EQ(back.forms, b.forms);
    EXPECT_EQ(back.certificates, b.certificates);
    EXPECT_EQ(back.target, b.target);
    EXPECT_EQ(back.n, b.n);
    EXPECT_EQ(basis_to_json(back), j);
    EXPECT_EQ(certificate_from_json(certificate_to_json(b.certificates[0])), b.certificates[0]);
}

TEST(Json, ReportsRoundTrip)
{
    JacobiEngine e;
    IndexProfile p = e.index_profile(3);
    IndexProfile p2 = profile_from_json(profile_to_json(p));
    EXPECT_EQ(p2.generators, p.generators);
    EXPECT_EQ(p2.dims, p.dims);
    EXPECT_EQ(p2.rank, p.rank);

    LbReport r = e.lb_analysis(4);
    EXPECT_EQ(lb_to_json(lb_from_json(lb_to_json(r))), lb_to_json(r));

    ModuleGenerators g = e.module_generators(2);
    EXPECT_EQ(module_generators_to_json(module_generators_from_json(module_generators_to_json(g))),
              module_generators_to_json(g));
}

TEST(Json, ResultDocumentRoundTrip)
{
    ResultDocument d;
    d.command = {"basis", "-16", "5"};
    d.target = {{"weight", -16}, {"index", 5}};
    d.result = basis_to_json(jacobi_basis(-16, 5));
    d.seconds = 0.25;
    ResultDocument back = ResultDocument::from_json(Json::parse(d.to_json().dump()));
    EXPECT_EQ(back, d);
    Json bad = d.to_json();
    bad["schema_version"] = 99;
    EXPECT_THROW(ResultDocument::from_json(bad), std::invalid_argument);
}

TEST(Cache, KeysAreDistinctDigests)
{
    std::string a = cache_key({-16, 5}), b = cache_key({-16, 6});
    EXPECT_EQ(a.size(), 64u);
    EXPECT_NE(a, b);
    EXPECT_EQ(a, cache_key({-16, 5}));
    EXPECT_EQ(a.find_first_not_of("0123456789abcdef"), std::string::npos);
}

TEST(Cache, CompactEncodingRoundTrip)
{
    JacobiBasis b = jacobi_basis(-16, 5);
    Json j = basis_to_cache_json(b);
    JacobiBasis back = basis_from_cache_json(Json::parse(j.dump()));
    EXPECT_EQ(back.forms, b.forms);
    EXPECT_EQ(back.certificates, b.certificates);
    EXPECT_EQ(basis_to_json(back), basis_to_json(b));
}

TEST(Cache, StoreSavesLoadsAndRejectsDamage)
{
    fs::path dir = fresh_dir("store");
    FileBasisStore store(dir);
    EXPECT_FALSE(store.load({-16, 5}));
    JacobiBasis b = jacobi_basis(-16, 5);
    store.save(b);
    EXPECT_TRUE(fs::exists(store.path_for({-16, 5})));
    EXPECT_NE(store.path_for({-16, 5}).filename().string().find(cache_key({-16, 5})), std::string::npos);
    auto loaded = store.load({-16, 5});
    ASSERT_TRUE(loaded);
    EXPECT_EQ(basis_to_json(*loaded), basis_to_json(b));
    // No temporary files remain after the atomic write.
    int files = 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
        (void)entry;
        ++files;
    }
    EXPECT_EQ(files, 1);
    std::ofstream(store.path_for({-16, 5})) << "{ not json";
    EXPECT_FALSE(store.load({-16, 5}));
    // An entry copied under another key is stale.
    store.save(b);
    fs::copy_file(store.path_for({-16, 5}), store.path_for({-24, 6}));
    EXPECT_FALSE(store.load({-24, 6}));
    fs::remove_all(dir);
}

TEST(Cache, EngineResultsAreTransparent)
{
    fs::path dir = fresh_dir("engine");
    Json plain, first, second;
    {
        JacobiEngine e;
        plain = basis_to_json(*e.basis(-26, 7));
    }
    {
        CountingStore store(dir);
        JacobiEngine e({1, true, std::nullopt, &store});
        first = basis_to_json(*e.basis(-26, 7));
        EXPECT_EQ(store.saves, 1);
        EXPECT_EQ(store.hits, 0);
    }
    {
        CountingStore store(dir);
        JacobiEngine e({1, true, std::nullopt, &store});
        second = basis_to_json(*e.basis(-26, 7));
        EXPECT_EQ(store.hits, 1);
        EXPECT_EQ(store.saves, 0);
    }
    EXPECT_EQ(plain.dump(), first.dump());
    EXPECT_EQ(plain.dump(), second.dump());
    fs::remove_all(dir);
}

TEST(Jobs, ParallelPrefetchMatchesSequential)
{
    std::vector<BiDegree> targets;
    for (int k = -20; k <= 0; k += 2)
        targets.push_back({k, 5});
    JacobiEngine seq({1});
    JacobiEngine par({4});
    par.prefetch(targets);
    for (auto t : targets)
        EXPECT_EQ(basis_to_json(*par.basis(t.weight, t.index)).dump(),
                  basis_to_json(*seq.basis(t.weight, t.index)).dump())
            << to_string(t);
    EXPECT_EQ(profile_to_json(par.index_profile(5)), profile_to_json(seq.index_profile(5)));
}
