#include <cmath>
#include <random>

#include "caustic/engine.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace caustic;
using testutil::P;
using testutil::pt;

namespace {

Scene scene(const std::string& F, const std::vector<std::string>& S) {
    Scene s;
    s.F = P(F);
    s.d = *s.F.homogeneous_degree();
    s.S = pt(S);
    return s;
}

const char* paraboloid = "(x^2 + y^2 - 2*z*t)/2";
const char* saddle = "x*y - z*t";

// Smooth-looking dense surface of degree d with small integer coefficients.
Scene random_scene(std::mt19937_64& rng, int d) {
    Scene s;
    do {
        s.F = testutil::random_poly(rng, xyzt(), d, 12, true, false) + P("t^" + std::to_string(d)) +
              P("x^" + std::to_string(d));
    } while (s.F.is_zero() || !s.F.homogeneous_degree());
    s.d = d;
    std::uniform_int_distribution<int> c(-5, 5);
    s.S = ProjPoint::exact({GaussianRational(c(rng)), GaussianRational(c(rng)), GaussianRational(c(rng)),
                            GaussianRational(1 + (c(rng) & 3))});
    return s;
}

}  // namespace

TEST_CASE("polar of the paraboloid") {
    Scene s = scene(paraboloid, {"1", "3", "5", "7"});
    CHECK(polar_delta(s) == P("x + 3*y - 5*t - 7*z"));
    Scene e = scene(saddle, {"1", "0", "0", "0"});
    CHECK(polar_delta(e) == e.F.differentiate("x"));
}

TEST_CASE("sigma maps") {
    Scene s = scene(saddle, {"0", "0", "1", "0"});
    Quad4 sig = sigma_map(s);
    CHECK(sig[0] == P("2*t*y"));
    CHECK(sig[1] == P("2*t*x"));
    CHECK(sig[2] == P("x^2 + y^2 - t^2"));
    CHECK(sig[3].is_zero());

    Scene p = scene(paraboloid, {"1", "2", "3", "4"});
    Quad4 sp = sigma_map(p);
    MultiPoly q = P("x^2 + y^2 + t^2"), delta = polar_delta(p);
    std::vector<MultiPoly> kappa{P("x"), P("y"), P("-t"), P("0")};
    const auto& S = p.S.coords();
    for (int k = 0; k < 4; ++k) CHECK(sp[k] == q * S[k] - P("2") * delta * kappa[k]);
}

TEST_CASE("sigma fixes a light on the mirror") {
    Scene s = scene(paraboloid, {"2", "0", "2", "1"});  // F(S) = 0
    Quad4 sig = sigma_map(s);
    std::vector<GaussianRational> v;
    for (auto& c : sig) v.push_back(c.evaluate(s.S.coords()));
    CHECK(ProjPoint::exact(v).same(s.S));
}

TEST_CASE("quadratic families of the worked examples") {
    QuadFamily f = quad_family(scene(saddle, {"0", "0", "1", "0"}));
    CHECK(f.alpha == P("-t"));
    CHECK(f.beta.is_zero());
    CHECK(f.gamma == P("4*t^3"));

    CausticData b = build_caustic(scene(saddle, {"0", "0", "1", "1"}));
    CHECK(b.alpha == P("-z - t"));
    CHECK(b.beta_tilde == P("-2*(x^2 + y^2 - z*t)"));
    CHECK(b.gamma == P("4*(z + t)*(x^2 + y^2 + z^2 + t^2 - 2*t*z)"));

    // the focal paraboloid: gamma follows the general formula, with H_F = -1
    QuadFamily g = quad_family(scene(paraboloid, {"0", "0", "1", "0"}));
    CHECK(g.alpha == P("-t"));
    CHECK(g.beta == P("-4*t^2"));
    CHECK(g.gamma == P("-4*t^3"));

    CHECK_THROWS_WITH(quad_family(scene("x + 2*t", {"0", "0", "1", "0"})),
                      doctest::Contains("planar mirror: caustic is the reflected source"));
}

TEST_CASE("theta and the square test") {
    CausticData b = build_caustic(scene(saddle, {"0", "0", "1", "1"}));
    CHECK(b.theta == P("4*(x^4 + y^4 + z^4 + t^4 - z^2*t^2 + 2*x^2*y^2 + x^2*z^2 + y^2*z^2 + x^2*t^2 + y^2*t^2)"));
    ThetaResult tb = theta_and_square_test(b, graph_chart(b.scene.F));
    CHECK_FALSE(tb.is_square);

    CausticData f = build_caustic(scene(saddle, {"0", "0", "1", "0"}));
    ThetaResult tf = theta_and_square_test(f, graph_chart(f.scene.F));
    CHECK(tf.theta == P("4*t^4"));
    REQUIRE(tf.is_square);
    REQUIRE(tf.root.has_value());
    CHECK((*tf.root == P("2*t^2") || *tf.root == P("-2*t^2")));

    CausticData iso = build_caustic(scene(paraboloid, {"1", "i", "3/2", "0"}));
    ThetaResult ti = theta_and_square_test(iso, graph_chart(iso.scene.F));
    CHECK(ti.is_square);

    std::map<std::string, MultiPoly> wrong{{"z", P("x*y + t^2")}};
    CHECK_THROWS(theta_and_square_test(b, wrong));
}

TEST_CASE("caustic points of the saddle from its vertical direction") {
    CausticData c = build_caustic(scene(saddle, {"0", "0", "1", "0"}));
    PsiResult r = psi_points(c, pt({"2", "3", "6", "1"}));
    REQUIRE(r.points.size() == 2);
    ProjPoint plus = pt({"10", "10", "24", "2"}), minus = pt({"2", "-2", "0", "-2"});
    CHECK(((r.points[0].same(plus) && r.points[1].same(minus)) || (r.points[0].same(minus) && r.points[1].same(plus))));
    REQUIRE(r.quad.exact_roots.size() == 2);
    for (const auto& l : r.quad.exact_roots) {
        GaussianRational q = c.alpha.evaluate(pt({"2", "3", "6", "1"}).coords()) * l[0] * l[0] +
                             c.beta.evaluate(pt({"2", "3", "6", "1"}).coords()) * l[0] * l[1] +
                             c.gamma.evaluate(pt({"2", "3", "6", "1"}).coords()) * l[1] * l[1];
        CHECK(q.is_zero());
    }
}

TEST_CASE("focal paraboloid sends every point to the other focus") {
    CausticData c = build_caustic(scene(paraboloid, {"0", "0", "1", "0"}));
    for (auto m : {pt({"0", "0", "0", "1"}), pt({"2", "4", "10", "1"}), pt({"1", "i", "0", "1"}), pt({"3", "-1", "5", "1"})}) {
        PsiResult r = psi_points(c, m);
        REQUIRE_FALSE(r.points.empty());
        for (auto& p : r.points) CHECK(p.same(pt({"0", "0", "1", "2"})));
    }
}

TEST_CASE("butterfly points are collinear with m and sigma(m)") {
    CausticData c = build_caustic(scene(saddle, {"0", "0", "1", "1"}));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int k = 0; k < 50; ++k) {
        double x = u(rng), y = u(rng);
        CVec m{x, y, x * y, 1};
        PsiResult r = psi_points(c, ProjPoint::numeric(m));
        CHECK(r.points.size() == 2);
        CVec mm = ProjPoint::numeric(m).approx(), s = eval_quad(c.sigma, mm);
        for (auto& p : r.points) CHECK(collinearity_residual(mm, s, p.approx()) < 1e-9);
    }
}

TEST_CASE("fibers at base points and degenerate points") {
    CausticData c = build_caustic(scene(paraboloid, {"1", "0", "0", "1"}));
    // [1:i:1:0] is a base point where the whole quadratic vanishes
    CHECK_THROWS_AS(psi_points(c, pt({"1", "i", "1", "0"})), FiberError);
    CHECK_NOTHROW(psi_points(c, pt({"0", "0", "0", "1"})));
    CausticData iso = build_caustic(scene(paraboloid, {"1", "i", "1", "0"}));
    // alpha, beta, gamma all vanish on the isotropic line through [1:i:0:0]
    CHECK_THROWS_WITH(psi_points(iso, pt({"1", "i", "0", "0"})), doctest::Contains("whole reflected line"));
}

TEST_CASE("multidegree check") {
    CausticData c = build_caustic(scene(paraboloid, {"1", "2", "3", "4"}));
    CHECK_NOTHROW(multidegree_check(c));
    MultiPoly corrupted = c.beta + P("x");
    CHECK_THROWS_WITH(multidegree_check(c.alpha, corrupted, c.gamma, c.sigma, 2), doctest::Contains("multidegree"));
    std::mt19937_64 rng(11);
    Scene s3 = random_scene(rng, 3);
    CausticData c3 = build_caustic(s3);
    CHECK_NOTHROW(multidegree_check(c3));
}

TEST_CASE("degenerate scenes") {
    CHECK(degenerate_check(build_caustic(scene(paraboloid, {"1", "2", "3", "4"}))).kind == DegenerateKind::none);
    CHECK(degenerate_check(build_caustic(scene("x^2 - 2*y*t", {"0", "0", "1", "0"}))).kind ==
          DegenerateKind::light_only);
    CHECK(degenerate_check(build_caustic(scene("t^2", {"1", "2", "3", "4"}))).kind ==
          DegenerateKind::plane_at_infinity);
    // a cone over the umbilical conic: Q(grad F) vanishes on Z
    CHECK(degenerate_check(build_caustic(scene("x^2 + y^2 + z^2", {"0", "0", "0", "1"}))).kind ==
          DegenerateKind::undefined);
}

TEST_CASE("determinant factorization on the paraboloid") {
    CausticData c = build_caustic(scene(paraboloid, {"1", "2", "3", "4"}));
    CVec m{1, 1, 1, 1};
    CHECK(ramification_det_check(c, m, {0.3, -1.2}, {2.0, 0.5}) < 1e-9);
    QuadraticRoots q = solve_quadratic_at(c, ProjPoint::numeric(m));
    for (auto& l : q.roots) CHECK(std::abs(ramification_det(c, ProjPoint::numeric(m).approx(), l[0], l[1])) < 1e-9);
    CHECK_THROWS_WITH(ramification_det_check(c, CVec{1, 0, 0, 1}, 1.0, 1.0), doctest::Contains("off-surface"));
    CHECK_THROWS_WITH(ramification_det_check(c, CVec{0, 0, 1, 0}, 1.0, 1.0), doctest::Contains("hypothesis"));
}

TEST_CASE("property: degree ledger, Euler identity and sigma degrees") {
    std::mt19937_64 rng(20);
    for (int d = 2; d <= 4; ++d) {
        for (int k = 0; k < 5; ++k) {
            Scene s = random_scene(rng, d);
            CausticData c = build_caustic(s);
            if (!c.alpha.is_zero()) CHECK(c.alpha.homogeneous_degree() == std::optional<int>(d - 1));
            if (!c.beta.is_zero()) CHECK(c.beta.homogeneous_degree() == std::optional<int>(3 * d - 4));
            if (!c.gamma.is_zero()) CHECK(c.gamma.homogeneous_degree() == std::optional<int>(5 * d - 7));
            for (auto& sg : c.sigma)
                if (!sg.is_zero()) CHECK(sg.homogeneous_degree() == std::optional<int>(2 * (d - 1)));
            // Delta_m F = d F
            MultiPoly e(xyzt());
            for (int j = 0; j < 4; ++j) e += MultiPoly::variable(xyzt(), xyzt()[j]) * s.F.differentiate(j);
            CHECK(e == s.F * GaussianRational(d));
            CHECK(c.n_s.homogeneous_degree() == std::optional<int>(2));
        }
    }
}

TEST_CASE("property: determinant factorization at random surface points") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd;
    std::vector<Scene> scenes{scene(paraboloid, {"1", "2", "-1", "3"}), scene(saddle, {"0", "0", "1", "1"}),
                              random_scene(rng, 3)};
    for (const auto& s : scenes) {
        CausticData c = build_caustic(s);
        int used = 0;
        for (const auto& m : sample_surface_points(s.F, 100, 9)) {
            for (int k = 0; k < 10; ++k) {
                std::complex<double> l0(nd(rng), nd(rng)), l1(nd(rng), nd(rng));
                double r = 0;
                try {
                    r = ramification_det_check(c, m.approx(), l0, l1);
                } catch (const std::invalid_argument&) {
                    break;
                }
                CHECK(r < 1e-9);
                if (k == 0) ++used;
            }
        }
        CHECK(used >= 90);
    }
}

TEST_CASE("property: exact roots solve the quadratic and caustic points are collinear") {
    Scene s = scene(paraboloid, {"0", "0", "1", "0"});
    Scene s2 = scene(saddle, {"0", "0", "1", "0"});
    for (const Scene* sc : {&s, &s2}) {
        CausticData c = build_caustic(*sc);
        auto pts = sample_surface_points(sc->F, 20, 4);
        for (const auto& m : pts) {
            REQUIRE(m.is_exact());
            PsiResult r;
            try {
                r = psi_points(c, m);
            } catch (const FiberError&) {
                continue;
            }
            const auto& mc = m.coords();
            for (const auto& l : r.quad.exact_roots) {
                GaussianRational q = c.alpha.evaluate(mc) * l[0] * l[0] + c.beta.evaluate(mc) * l[0] * l[1] +
                                     c.gamma.evaluate(mc) * l[1] * l[1];
                CHECK(q.is_zero());
            }
            std::vector<GaussianRational> sg;
            for (auto& comp : c.sigma) sg.push_back(comp.evaluate(mc));
            for (const auto& p : r.points) {
                REQUIRE(p.is_exact());
                const auto& pc = p.coords();
                for (int i = 0; i < 4; ++i)
                    for (int j = i + 1; j < 4; ++j)
                        for (int k = j + 1; k < 4; ++k) {
                            GaussianRational det = mc[i] * (sg[j] * pc[k] - sg[k] * pc[j]) -
                                                   mc[j] * (sg[i] * pc[k] - sg[k] * pc[i]) +
                                                   mc[k] * (sg[i] * pc[j] - sg[j] * pc[i]);
                            CHECK(det.is_zero());
                        }
            }
        }
    }
}
