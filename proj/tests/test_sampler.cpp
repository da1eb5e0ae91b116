#include <cmath>

#include "caustic/sampler.hpp"
#include "caustic/special_families.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace caustic;
using testutil::pt;

namespace {

Scene scene(const std::string& text) { return parse_scene(text); }

double norm(const CVec& v) {
    double s = 0;
    for (const auto& c : v) s += std::norm(c);
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("saddle cloud from a finite light") {
    Scene s = scene("surface = x*y - z*t\nlight = [0, 0, 1, 1]");
    SampleGrid g;
    g.steps = {120, 120};
    SampleResult r = sample_caustic(s, g);
    CHECK(r.nodes == 120 * 120);
    CHECK(r.rows.size() >= 10000);
    Quad4 sigma = sigma_map(s);
    for (const auto& row : r.rows) {
        CHECK(on_surface_residual(s.F, row.m) < 1e-10);
        // the caustic point sits on the reflected line through m and sigma(m)
        CHECK(collinearity_residual(row.m, eval_quad(sigma, row.m), row.p) < 1e-8);
        CHECK(std::abs(row.p[3]) > 0);
        CHECK(std::isfinite(row.row.x));
    }
}

TEST_CASE("focal paraboloid collapses onto the focus") {
    Scene s = scene("surface = (x^2 + y^2 - 2*z*t)/2\nlight = [0, 0, 1, 0]");
    SampleGrid g;
    g.steps = {60, 60};
    SampleResult r = sample_caustic(s, g);
    REQUIRE_FALSE(r.rows.empty());
    for (const auto& row : r.rows) {
        CHECK(std::abs(row.row.x) < 1e-6);
        CHECK(std::abs(row.row.y) < 1e-6);
        CHECK(std::abs(row.row.z - 0.5) < 1e-6);
    }
}

TEST_CASE("saddle lit from infinity lands on the catalogued parabolas") {
    Scene s = scene("surface = x*y - z*t\nlight = [0, 0, 1, 0]");
    auto comps = catalogued_implicit(s);
    REQUIRE(comps.size() == 2);
    SampleGrid g;
    g.steps = {50, 50};
    SampleResult r = sample_caustic(s, g);
    REQUIRE(r.rows.size() > 1000);
    for (const auto& row : r.rows) {
        CVec p = row.p;
        double n = norm(p);
        REQUIRE(n > 0);
        for (auto& c : p) c /= n;
        const CVec ones(4, 1.0);
        double best = 1e300;
        for (const auto& comp : comps) {
            double worst = 0;
            for (const auto& eq : comp) worst = std::max(worst, std::abs(eq.evaluate(p)) / eq.magnitude(ones));
            best = std::min(best, worst);
        }
        CHECK(best < 1e-6);
    }
}

TEST_CASE("grid edge cases") {
    Scene s = scene("surface = x*y - z*t\nlight = [0, 0, 1, 1]");
    SampleGrid inverted;
    inverted.ranges = {{{2, -2}, {-1, 1}}};
    SampleResult none = sample_caustic(s, inverted);
    CHECK(none.rows.empty());
    std::vector<CloudRow> rows;
    for (const auto& row : none.rows) rows.push_back(row.row);
    CHECK(emit_pointcloud(rows, "a.csv").bytes == "x,y,z,branch\n");

    SampleGrid few;
    few.steps = {1, 10};
    CHECK_THROWS_AS(sample_caustic(s, few), std::invalid_argument);
    SampleGrid neg;
    neg.real_filter_tol = -1;
    CHECK_THROWS_AS(sample_caustic(s, neg), std::invalid_argument);
    CHECK_THROWS_AS(sample_caustic(scene("surface = z - t\nlight = [0, 0, 1, 1]"), SampleGrid{}), std::invalid_argument);
}

TEST_CASE("sampling is deterministic") {
    Scene s = scene("surface = x^3 + y^3 + z^3 - 2*t^3 + x*y*t\nlight = [1, 2, 3, 5]");
    SampleGrid g;
    g.steps = {30, 30};
    SampleResult a = sample_caustic(s, g), b = sample_caustic(s, g);
    REQUIRE(a.rows.size() == b.rows.size());
    std::vector<CloudRow> ra, rb;
    for (const auto& row : a.rows) ra.push_back(row.row);
    for (const auto& row : b.rows) rb.push_back(row.row);
    CHECK(emit_pointcloud(ra, "a.csv").bytes == emit_pointcloud(rb, "a.csv").bytes);
    CHECK(a.dropped == b.dropped);
}

TEST_CASE("chart names") {
    CHECK(parse_chart("t=1") == 3);
    CHECK(parse_chart("x") == 0);
    CHECK(parse_chart("z=1") == 2);
    CHECK_THROWS(parse_chart("w=1"));
    CHECK_THROWS(parse_chart("t=2"));

    Scene s = scene("surface = x*y - z*t\nlight = [0, 0, 1, 1]");
    SampleGrid g;
    g.chart = parse_chart("z=1");
    g.steps = {40, 40};
    SampleResult r = sample_caustic(s, g);
    CHECK_FALSE(r.rows.empty());
    for (const auto& row : r.rows) CHECK(on_surface_residual(s.F, row.m) < 1e-10);
}
