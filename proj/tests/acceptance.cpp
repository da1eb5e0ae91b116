#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "caustic/sampler.hpp"
#include "caustic/special_families.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace caustic;
using testutil::P;
using testutil::pt;
using testutil::Q;

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

// Each criterion appends failure notes; an empty list is a pass.
using Notes = std::vector<std::string>;

void expect(Notes& notes, bool ok, const std::string& what) {
    if (!ok) notes.push_back(what);
}

Scene seeded_surface(std::mt19937_64& rng, int d) {
    Scene s;
    do {
        s.F = testutil::random_poly(rng, xyzt(), d, 12, true, false) + P("t^" + std::to_string(d)) +
              P("x^" + std::to_string(d));
    } while (s.F.is_zero() || !s.F.homogeneous_degree());
    s.d = d;
    std::uniform_int_distribution<int> c(-5, 5);
    do {
        s.S = ProjPoint::exact({GaussianRational(c(rng)), GaussianRational(c(rng)), GaussianRational(c(rng)),
                                GaussianRational(1 + (c(rng) & 3))});
    } while (s.F.evaluate(s.S.coords()).is_zero());
    return s;
}

Notes paraboloid_table() {
    Notes notes;
    struct Row {
        std::vector<std::string> S;
        int expected;
    };
    std::vector<Row> rows{{{"1", "0", "0", "1"}, 18},   {{"0", "1", "1/2+i", "1"}, 17}, {{"1", "i", "1", "1"}, 14},
                          {{"1", "i", "1/2", "1"}, 12}, {{"1", "0", "0", "0"}, 12},     {{"0", "1", "i", "0"}, 6},
                          {{"0", "i", "-1/2", "1"}, 12}, {{"1", "i", "0", "1"}, 14},    {{"1", "1", "1", "1"}, 16},
                          {{"0", "0", "0", "1"}, 4},    {{"0", "0", "2", "1"}, 6}};
    for (const auto& r : rows) {
        Scene s = scene(paraboloid, r.S);
        auto t0 = std::chrono::steady_clock::now();
        MdegResult m = mdeg_with_multiplicity(s);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream o;
        o << "S=" << s.S.str() << " expected " << r.expected << " measured ";
        if (!m.mdeg) {
            o << "none";
            notes.push_back(o.str());
            continue;
        }
        o << *m.mdeg << " (" << m.path;
        if (m.path == "standard" || m.path == "reduced") o << ", global count " << testutil::global_count(s, 0);
        o << ")";
        expect(notes, *m.mdeg == r.expected, o.str());
        expect(notes, secs < 30, "S=" + s.S.str() + " took " + std::to_string(secs) + " s");
    }
    MdegResult focal = mdeg_with_multiplicity(scene(paraboloid, {"0", "0", "1", "0"}));
    expect(notes, focal.point_caustic && focal.point_caustic->same(pt({"0", "0", "1", "2"})),
           "focal light does not give the point [0:0:1:2]");
    return notes;
}

Notes generic_formula() {
    Notes notes;
    expect(notes, generic_mdeg(2) == 18, "generic_mdeg(2) != 18");
    MdegResult g = mdeg_with_multiplicity(scene(paraboloid, {"1", "0", "0", "1"}));
    expect(notes, g.mdeg == std::optional<int>(static_cast<int>(generic_mdeg(2))), "generic paraboloid differs");
    expect(notes, generic_mdeg(3) == 102, "generic_mdeg(3) != 102");
    return notes;
}

Notes d_factorization() {
    Notes notes;
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd;
    std::vector<Scene> scenes{scene(paraboloid, {"1", "2", "-1", "3"}), scene(saddle, {"0", "0", "1", "1"}),
                              seeded_surface(rng, 3)};
    for (const auto& s : scenes) {
        CausticData c = build_caustic(s);
        int used = 0;
        double worst = 0;
        for (const auto& m : sample_surface_points(s.F, 100, 9)) {
            bool ok = true;
            for (int k = 0; k < 10 && ok; ++k) {
                std::complex<double> l0(nd(rng), nd(rng)), l1(nd(rng), nd(rng));
                try {
                    worst = std::max(worst, ramification_det_check(c, m.approx(), l0, l1));
                } catch (const std::invalid_argument&) {
                    ok = false;
                }
            }
            used += ok;
        }
        std::ostringstream o;
        o << s.F.str() << ": " << used << " points, max residual " << worst;
        expect(notes, used == 100 && worst < 1e-9, o.str());
    }
    return notes;
}

Notes known_curve_residuals() {
    Notes notes;
    for (const char* name : {"parabaxe_sextic", "parabaxe_quartic", "parabcyl_cubic", "cas1_pair", "saddle_parabolas"}) {
        CurveVerdict v = verify_known_curve(known_curve(name));
        bool zero = v.ok;
        for (const auto& r : v.residuals) zero = zero && r.is_zero();
        expect(notes, zero, std::string(name) + " has a nonzero residual");
    }
    return notes;
}

Notes appendix_identities() {
    Notes notes;
    const std::vector<std::string> rzt{"r", "z", "t"};
    const std::vector<std::string> xyt{"x", "y", "t"};
    struct Curve {
        std::string name, G;
        std::vector<std::string> S0;
    };
    std::vector<Curve> curves{{"parabola", "(r^2 - 2*z*t)/2", {"0", "2", "1"}},
                              {"circle", "r^2 + z^2 - t^2", {"0", "1/2", "1"}},
                              {"ellipse", "r^2/4 + z^2/9 - t^2", {"0", "1", "1"}}};
    for (const auto& cv : curves) {
        std::vector<GaussianRational> S0;
        for (const auto& v : cv.S0) S0.push_back(Q(v));
        PlanarScene ps = make_planar_scene(P(cv.G, rzt), S0);
        try {
            PlanarFamily f = planar_quad_family(ps);
            expect(notes, f.gamma_residual.is_zero() && f.beta_residual.is_zero(), cv.name + ": planar lemma");
        } catch (const std::exception& e) {
            notes.push_back(cv.name + ": " + e.what());
        }
        RevolutionReport rr = revolution_caustic_check(ps);
        expect(notes, rr.alpha.exact && rr.beta.exact && rr.gamma.exact, cv.name + ": revolution identities");
    }
    for (const char* G : {"y^2 - 2*x*t", "x^2 + 3*y^2 - t^2", "x^3 - y^2*t + x*t^2"}) {
        CylinderReport cr = cylinder_caustic_check(P(G, xyt), pt({"1", "2", "3", "1"}));
        MultiPoly F = lift_cylinder(P(G, xyt));
        Scene s;
        s.F = F;
        s.d = *F.homogeneous_degree();
        s.S = pt({"1", "2", "3", "1"});
        expect(notes, cr.hessian_zero && build_caustic(s).hdet.is_zero(), std::string(G) + ": H_F of the lift");
    }
    return notes;
}

Notes base_point_suite() {
    Notes notes;
    const std::vector<std::vector<std::string>> lights{
        {"1", "1", "1", "1"}, {"0", "0", "2", "1"}, {"0", "0", "0", "1"},  {"1", "0", "0", "1"},
        {"3", "4", "1/2", "1"}, {"1", "0", "0", "0"}, {"0", "1", "i", "0"}, {"1", "i", "1", "1"},
        {"1", "i", "1/2", "1"}, {"0", "i", "-1/2", "1"}, {"1", "i", "0", "1"}, {"2", "1", "3", "0"},
        {"3", "0", "9/2", "1"}};
    for (const auto& L : lights) {
        Scene s = scene(paraboloid, L);
        BaseSet bs = enumerate_base_points(build_caustic(s));
        std::vector<ProjPoint> got;
        for (const auto& b : bs.points) got.push_back(b.m);
        expect(notes, testutil::same_set(got, testutil::paraboloid_oracle(s.S)), "S=" + s.S.str() + ": set differs");
    }
    try {
        enumerate_base_points(build_caustic(scene(paraboloid, {"1", "i", "1", "0"})));
        notes.push_back("S=[1:i:1:0] did not refuse the infinite family");
    } catch (const InfiniteBaseError&) {
    }
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> c(-6, 6);
    for (const char* F : {"x^2 + 2*y^2 + 3*z^2 - t^2", "x^2 + 2*y^2 - 5*z^2 - 3*t^2", "x*y - z*t"}) {
        Scene s;
        s.F = P(F);
        s.d = 2;
        do {
            s.S = ProjPoint::exact({GaussianRational(c(rng)), GaussianRational(c(rng)), GaussianRational(c(rng)),
                                    GaussianRational(1 + (c(rng) & 3))});
        } while (s.F.evaluate(s.S.coords()).is_zero());
        std::size_t n = enumerate_base_points(build_caustic(s)).points.size();
        expect(notes, n == 4, std::string(F) + ": " + std::to_string(n) + " base points instead of 2d(d-1)^2 = 4");
    }
    return notes;
}

Notes butterfly() {
    Notes notes;
    CausticData b = build_caustic(scene(saddle, {"0", "0", "1", "1"}));
    expect(notes, !theta_and_square_test(b, graph_chart(b.scene.F)).is_square, "[0:0:1:1] reported a square");
    CausticData f = build_caustic(scene(saddle, {"0", "0", "1", "0"}));
    ThetaResult t = theta_and_square_test(f, graph_chart(f.scene.F));
    bool root = t.root && (*t.root == P("2*t^2") || *t.root == P("-2*t^2"));
    expect(notes, t.is_square && root, "[0:0:1:0] is not the square of 2t^2");
    return notes;
}

Notes structural() {
    Notes notes;
    std::mt19937_64 rng(20);
    for (int d = 2; d <= 3; ++d) {
        for (int k = 0; k < 5; ++k) {
            Scene s = seeded_surface(rng, d);
            std::string tag = "d=" + std::to_string(d) + " surface " + std::to_string(k) + ": ";
            CausticData c = build_caustic(s);
            if (!c.has_family) {
                notes.push_back(tag + "no quadratic family");
                continue;
            }
            expect(notes, c.alpha.is_zero() || c.alpha.homogeneous_degree() == std::optional<int>(d - 1), tag + "deg alpha");
            expect(notes, c.beta.is_zero() || c.beta.homogeneous_degree() == std::optional<int>(3 * d - 4), tag + "deg beta");
            expect(notes, c.gamma.is_zero() || c.gamma.homogeneous_degree() == std::optional<int>(5 * d - 7),
                   tag + "deg gamma");
            try {
                multidegree_check(c);
            } catch (const std::exception& e) {
                notes.push_back(tag + "multidegree " + e.what());
            }
            BaseSet bs;
            try {
                bs = enumerate_base_points(c);
            } catch (const std::exception& e) {
                notes.push_back(tag + "base points " + e.what());
                continue;
            }
            std::vector<ProjPoint> pts;
            for (const auto& b : bs.points) pts.push_back(b.m);
            auto [A, B] = make_generic_forms(c, 0, pts);
            PolarData pd = k_polys(c, A, B);
            expect(notes, pd.K1.homogeneous_degree() == std::optional<int>(2 * d - 1), tag + "deg K1");
            expect(notes, pd.K2.homogeneous_degree() == std::optional<int>(5 * (d - 1)), tag + "deg K2");
            for (const auto& m : pts) {
                bool on;
                if (m.is_exact()) {
                    on = pd.K1.evaluate(m.coords()).is_zero() && pd.K2.evaluate(m.coords()).is_zero() &&
                         pd.K3.evaluate(m.coords()).is_zero();
                } else {
                    auto z = m.approx();
                    on = true;
                    for (const MultiPoly* K : {&pd.K1, &pd.K2, &pd.K3})
                        on = on && std::abs(K->evaluate(z)) < 1e-8 * K->magnitude(z);
                }
                expect(notes, on, tag + "base point " + m.str() + " off V(K1, K2, K3)");
            }
        }
    }
    return notes;
}

Notes sampler() {
    Notes notes;
    Scene b = scene(saddle, {"0", "0", "1", "1"});
    SampleResult r = sample_caustic(b, SampleGrid{});
    expect(notes, r.rows.size() >= 10000, "butterfly grid gave " + std::to_string(r.rows.size()) + " points");
    Quad4 sigma = sigma_map(b);
    std::size_t bad = 0;
    for (const auto& row : r.rows)
        if (on_surface_residual(b.F, row.m) >= 1e-10 ||
            collinearity_residual(row.m, eval_quad(sigma, row.m), row.p) >= 1e-8)
            ++bad;
    expect(notes, bad == 0, std::to_string(bad) + " butterfly points fail the residual checks");

    Scene v = scene(saddle, {"0", "0", "1", "0"});
    auto comps = catalogued_implicit(v);
    SampleGrid g;
    g.steps = {100, 100};
    SampleResult rv = sample_caustic(v, g);
    const CVec ones(4, 1.0);
    bad = 0;
    for (const auto& row : rv.rows) {
        CVec p = row.p;
        double n = 0;
        for (const auto& x : p) n += std::norm(x);
        for (auto& x : p) x /= std::sqrt(n);
        double best = 1e300;
        for (const auto& comp : comps) {
            double worst = 0;
            for (const auto& eq : comp) worst = std::max(worst, std::abs(eq.evaluate(p)) / eq.magnitude(ones));
            best = std::min(best, worst);
        }
        if (best >= 1e-6) ++bad;
    }
    expect(notes, !rv.rows.empty() && bad == 0, std::to_string(bad) + " vertical saddle points off the parabolas");

    SampleResult focal = sample_caustic(scene(paraboloid, {"0", "0", "1", "0"}), SampleGrid{});
    double dev = 0;
    for (const auto& row : focal.rows)
        dev = std::max({dev, std::abs(row.row.x), std::abs(row.row.y), std::abs(row.row.z - 0.5)});
    std::ostringstream o;
    o << "focal cloud deviates by " << dev;
    expect(notes, !focal.rows.empty() && dev < 1e-6, o.str());
    return notes;
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Notes()>>> criteria{
        {"paraboloid degree table", paraboloid_table},
        {"generic formula", generic_formula},
        {"determinant factorization", d_factorization},
        {"known-curve residuals", known_curve_residuals},
        {"planar, revolution and cylinder identities", appendix_identities},
        {"base-point suite", base_point_suite},
        {"butterfly non-splitting", butterfly},
        {"structural invariants", structural},
        {"sampler", sampler},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Notes notes;
        try {
            notes = criteria[k].second();
        } catch (const std::exception& e) {
            notes.push_back(std::string("exception: ") + e.what());
        }
        std::cout << (notes.empty() ? "PASS" : "FAIL") << " " << k + 1 << " " << criteria[k].first;
        if (!notes.empty()) {
            ++failed;
            std::cout << ":";
            for (const auto& n : notes) std::cout << "\n    " << n;
        }
        std::cout << std::endl;
    }
    return failed ? 1 : 0;
}
