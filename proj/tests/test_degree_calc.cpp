#include <random>

#include "caustic/degree_calc.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace caustic;
using testutil::P;
using testutil::pt;
using testutil::global_count;

namespace {

Scene scene(const std::string& F, const std::vector<std::string>& S) {
    Scene s;
    s.F = P(F);
    s.d = *s.F.homogeneous_degree();
    s.S = pt(S);
    return s;
}

const char* paraboloid = "(x^2 + y^2 - 2*z*t)/2";

}  // namespace

TEST_CASE("generic forms are certified and logged") {
    CausticData c = build_caustic(scene(paraboloid, {"1", "0", "0", "1"}));
    std::vector<std::string> log;
    auto [A, B] = make_generic_forms(c, 0, {}, &log);
    CHECK_FALSE(A.evaluate(c.scene.S.coords()).is_zero());
    CHECK_FALSE(B.evaluate(c.scene.S.coords()).is_zero());
    CHECK_FALSE(log.empty());
    bool independent = false;
    for (const auto& l : log) independent = independent || l == "A, B independent";
    CHECK(independent);
    auto [A2, B2] = make_generic_forms(c, 0);
    CHECK(A == A2);
    CHECK(B == B2);
}

TEST_CASE("property: generic forms avoid the light and the base points") {
    for (const auto& L : std::vector<std::vector<std::string>>{{"1", "0", "0", "1"}, {"1", "i", "1", "1"}, {"1", "0", "0", "0"}}) {
        CausticData c = build_caustic(scene(paraboloid, L));
        BaseSet bs = enumerate_base_points(c);
        std::vector<ProjPoint> pts;
        for (const auto& b : bs.points) pts.push_back(b.m);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            auto [A, B] = make_generic_forms(c, seed, pts);
            CHECK_FALSE(A.evaluate(c.scene.S.coords()).is_zero());
            CHECK_FALSE(B.evaluate(c.scene.S.coords()).is_zero());
            CHECK_FALSE(k_polys(c, A, B).K1.is_zero());
            for (const auto& m : pts)
                if (m.is_exact()) {
                    CHECK_FALSE(A.evaluate(m.coords()).is_zero());
                    CHECK_FALSE(B.evaluate(m.coords()).is_zero());
                }
        }
    }
}

TEST_CASE("polar polynomials of a quadric") {
    CausticData c = build_caustic(scene(paraboloid, {"1", "0", "0", "1"}));
    auto [A, B] = make_generic_forms(c, 0);
    PolarData pd = k_polys(c, A, B);
    CHECK(pd.K1.homogeneous_degree() == std::optional<int>(3));
    CHECK(pd.K2.homogeneous_degree() == std::optional<int>(5));
    CHECK(pd.K3.homogeneous_degree() == std::optional<int>(5));
    CHECK(pd.polar_degree == 11);
    CHECK(k_polys(c, A, A).K1.is_zero());

    CausticData degen = build_caustic(scene("x^2 - 2*y*t", {"0", "0", "1", "0"}));
    CHECK_THROWS_WITH(k_polys(degen, A, B), doctest::Contains("degenerate_check"));
}

TEST_CASE("property: base points lie on the polar polynomials") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> u(-4, 4);
    std::vector<std::string> surfaces{paraboloid, "x*y - z*t", "x^2 + 2*y^2 + 3*z^2 - t^2",
                                      "x^3 + y^3 + z^3 - 2*t^3 + x*y*t", "x^3 - x*y*z + y^2*t + z^3 + t^3 - 2*x*t^2"};
    for (const auto& F : surfaces) {
        Scene s;
        s.F = P(F);
        s.d = *s.F.homogeneous_degree();
        s.S = ProjPoint::exact({GaussianRational(u(rng)), GaussianRational(u(rng)), GaussianRational(1 + (u(rng) & 3)),
                                GaussianRational(1)});
        CausticData c = build_caustic(s);
        BaseSet bs = enumerate_base_points(c);
        std::vector<ProjPoint> pts;
        for (const auto& b : bs.points) pts.push_back(b.m);
        auto [A, B] = make_generic_forms(c, 0, pts);
        PolarData pd = k_polys(c, A, B);
        CHECK(pd.K1.homogeneous_degree() == std::optional<int>(2 * s.d - 1));
        CHECK(pd.K2.homogeneous_degree() == std::optional<int>(5 * (s.d - 1)));
        CHECK(pd.polar_degree == (s.d - 1) * (10 * s.d - 9));
        for (const auto& m : pts) {
            if (m.is_exact()) {
                CHECK(pd.K1.evaluate(m.coords()).is_zero());
                CHECK(pd.K2.evaluate(m.coords()).is_zero());
                CHECK(pd.K3.evaluate(m.coords()).is_zero());
            } else {
                auto z = m.approx();
                CHECK(std::abs(pd.K1.evaluate(z)) < 1e-8 * pd.K1.magnitude(z));
                CHECK(std::abs(pd.K2.evaluate(z)) < 1e-8 * pd.K2.magnitude(z));
                CHECK(std::abs(pd.K3.evaluate(z)) < 1e-8 * pd.K3.magnitude(z));
            }
        }
    }
}

TEST_CASE("reduced family for a light on the mirror") {
    CausticData c = build_caustic(scene(paraboloid, {"1", "1", "1", "1"}));
    ReducedFamily rf = reduce_family(c);
    CHECK(rf.steps == 1);
    CHECK(rf.family.alpha.is_constant());
    CausticData off = build_caustic(scene(paraboloid, {"1", "0", "0", "1"}));
    CHECK(reduce_family(off).steps == 0);
    auto [A, B] = make_generic_forms(c, 0);
    PolarData pd = k_polys(c, A, B, rf.family);
    CHECK(pd.reduced);
    int total = 2 * (pd.K1.total_degree() * pd.K2.total_degree() - 2 * 2);
    CHECK(total == 16);
}

TEST_CASE("degree with multiplicity of the paraboloid") {
    struct Row {
        std::vector<std::string> S;
        int mdeg;
        std::string path;
    };
    // frozen from the ledger computation and cross-checked by the global count below
    std::vector<Row> rows{
        {{"1", "0", "0", "1"}, 18, "standard"},    {{"0", "1", "1/2+i", "1"}, 12, "standard"},
        {{"1", "i", "1", "1"}, 12, "standard"},    {{"1", "i", "1/2", "1"}, 10, "standard"},
        {{"1", "0", "0", "0"}, 12, "standard"},    {{"0", "1", "i", "0"}, 6, "standard"},
        {{"0", "i", "-1/2", "1"}, 12, "reduced"},  {{"1", "i", "0", "1"}, 10, "reduced"},
        {{"1", "1", "1", "1"}, 16, "reduced"},     {{"0", "0", "0", "1"}, 4, "revolution"},
        {{"0", "0", "2", "1"}, 6, "revolution"},
    };
    for (const auto& r : rows) {
        Scene s = scene(paraboloid, r.S);
        MdegResult m = mdeg_with_multiplicity(s);
        INFO("S = ", s.S.str());
        REQUIRE(m.mdeg.has_value());
        CHECK(*m.mdeg == r.mdeg);
        CHECK(m.path == r.path);
        if (m.path == "standard") CHECK(m.bezout_total == 22);
        if (m.path == "reduced") CHECK(m.bezout_total == 16);
        if (m.path == "standard" || m.path == "reduced") CHECK(global_count(s, 0) == *m.mdeg);
    }
    MdegResult focal = mdeg_with_multiplicity(scene(paraboloid, {"0", "0", "1", "0"}));
    REQUIRE(focal.point_caustic.has_value());
    CHECK(focal.point_caustic->same(pt({"0", "0", "1", "2"})));
    CHECK(focal.mdeg == std::optional<int>(0));
}

TEST_CASE("local intersection ledger at the point at infinity of the axis") {
    MdegResult m = mdeg_with_multiplicity(scene(paraboloid, {"1", "0", "0", "0"}));
    bool seen = false;
    for (const auto& e : m.ledger)
        if (e.point.m.same(pt({"0", "0", "1", "0"}))) {
            seen = true;
            CHECK(e.multiplicity == 8);
        }
    CHECK(seen);
    MdegResult g = mdeg_with_multiplicity(scene(paraboloid, {"1", "0", "0", "1"}));
    REQUIRE(g.ledger.size() == 4);
    for (const auto& e : g.ledger) CHECK(e.multiplicity == 1);
}

TEST_CASE("property: mdeg does not depend on the seed") {
    for (const auto& L : std::vector<std::vector<std::string>>{
             {"1", "0", "0", "1"}, {"1", "i", "1", "1"}, {"0", "1", "i", "0"}, {"1", "1", "1", "1"}, {"2", "-1", "3", "1"}}) {
        Scene s = scene(paraboloid, L);
        std::optional<int> first;
        for (std::uint64_t seed : {0, 1, 2, 7}) {
            MdegOptions o;
            o.seed = seed;
            MdegResult m = mdeg_with_multiplicity(s, o);
            REQUIRE(m.mdeg.has_value());
            int sum = 0;
            for (const auto& e : m.ledger) sum += e.multiplicity;
            CHECK(sum <= m.bezout_total);
            if (!first) first = m.mdeg;
            CHECK(*m.mdeg == *first);
        }
    }
}

TEST_CASE("generic quadrics and cubics reach the closed form") {
    CHECK(*mdeg_with_multiplicity(scene("x*y - z*t", {"1", "2", "3", "5"})).mdeg == 18);
    CHECK(*mdeg_with_multiplicity(scene("x^2 + 2*y^2 + 3*z^2 - t^2", {"1", "2", "3", "5"})).mdeg == 18);
    MdegOptions o;
    o.assert_hypotheses = true;
    MdegResult cubic = mdeg_with_multiplicity(scene("x^3 + y^3 + z^3 - 2*t^3 + x*y*t", {"1", "2", "3", "5"}), o);
    REQUIRE(cubic.mdeg.has_value());
    CHECK(*cubic.mdeg == generic_mdeg(3));
    CHECK(cubic.bezout_total == 126);
    REQUIRE_FALSE(cubic.warnings.empty());
    CHECK(cubic.warnings[0].find("user-asserted") != std::string::npos);

    MdegResult unasserted = mdeg_with_multiplicity(scene("x^3 + y^3 + z^3 - 2*t^3 + x*y*t", {"1", "2", "3", "5"}));
    CHECK(unasserted.warnings[0].find("--assert-hypotheses") != std::string::npos);
}

TEST_CASE("closed form of the generic degree") {
    CHECK(generic_mdeg(2) == 18);
    CHECK(generic_mdeg(3) == 102);
    CHECK(generic_mdeg(1) == 0);
    CHECK_THROWS(generic_mdeg(0));
}

TEST_CASE("order schedule and infinite base sets") {
    CHECK(order_schedule(24) == std::vector<int>{6, 10, 16, 24});
    CHECK(order_schedule(12) == std::vector<int>{6, 10, 12});
    CHECK_THROWS(order_schedule(2));
    CHECK_THROWS_AS(mdeg_with_multiplicity(scene(paraboloid, {"1", "i", "1", "0"})), InfiniteBaseError);
}
