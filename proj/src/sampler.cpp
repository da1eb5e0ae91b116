#include "caustic/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "caustic/univariate.hpp"

namespace caustic {

int parse_chart(const std::string& text) {
    const std::vector<std::string> names{"x", "y", "z", "t"};
    for (int k = 0; k < 4; ++k)
        if (text == names[k] + "=1" || text == names[k]) return k;
    throw std::invalid_argument("unknown chart '" + text + "' (use x=1, y=1, z=1 or t=1)");
}

SampleResult sample_caustic(const Scene& scene, const SampleGrid& grid) {
    if (grid.steps[0] < 2 || grid.steps[1] < 2) throw std::invalid_argument("grid needs at least 2 steps per axis");
    if (grid.real_filter_tol < 0) throw std::invalid_argument("real filter tolerance must be nonnegative");
    if (grid.chart < 0 || grid.chart > 3) throw std::invalid_argument("chart index out of range");
    CausticData c = build_caustic(scene);
    if (!c.has_family) throw std::invalid_argument("planar mirror: caustic is the reflected source");
    DegenerateReport dr = degenerate_check(c);
    if (dr.kind != DegenerateKind::none) throw std::invalid_argument("degenerate scene: " + dr.description);

    std::vector<int> free;
    for (int k = 0; k < 4; ++k)
        if (k != grid.chart) free.push_back(k);
    int solved = free[2];
    // F on the chart as a polynomial in the solved coordinate
    MultiPoly Fc = scene.F.partial_evaluate(grid.chart, GaussianRational(1));
    std::vector<MultiPoly> coeffs = Fc.coefficients_in(solved);

    SampleResult res;
    bool empty = grid.ranges[0][0] > grid.ranges[0][1] || grid.ranges[1][0] > grid.ranges[1][1];
    if (empty) return res;
    for (int i = 0; i < grid.steps[0]; ++i) {
        for (int j = 0; j < grid.steps[1]; ++j) {
            std::size_t node = static_cast<std::size_t>(i) * grid.steps[1] + j;
            ++res.nodes;
            double a = grid.ranges[0][0] + (grid.ranges[0][1] - grid.ranges[0][0]) * i / (grid.steps[0] - 1);
            double b = grid.ranges[1][0] + (grid.ranges[1][1] - grid.ranges[1][0]) * j / (grid.steps[1] - 1);
            CVec m(4, 0.0);
            m[grid.chart] = 1;
            m[free[0]] = a;
            m[free[1]] = b;
            std::vector<std::complex<double>> cz;
            for (const auto& co : coeffs) cz.push_back(co.evaluate(m));
            while (!cz.empty() && std::abs(cz.back()) == 0) cz.pop_back();
            std::vector<double> real_roots;
            if (cz.size() >= 2) {
                for (auto z : numeric_roots(cz))
                    if (std::abs(z.imag()) <= 1e-7 * (1 + std::abs(z.real()))) real_roots.push_back(z.real());
            }
            if (real_roots.empty()) {
                ++res.skipped_nodes;
                continue;
            }
            std::sort(real_roots.begin(), real_roots.end());
            for (double r0 : real_roots) {
                // Newton polish on the real slice
                double r = r0;
                for (int it = 0; it < 8; ++it) {
                    std::complex<double> f = 0, df = 0;
                    for (std::size_t k = cz.size(); k-- > 0;) {
                        df = df * r + f;
                        f = f * r + cz[k];
                    }
                    if (std::abs(df) == 0) break;
                    double step = (f / df).real();
                    r -= step;
                    if (std::abs(step) <= 1e-16 * (1 + std::abs(r))) break;
                }
                m[solved] = r;
                if (on_surface_residual(scene.F, m) >= 1e-10) {
                    ++res.dropped;
                    continue;
                }
                // the roots refer to the normalized representative of m
                ProjPoint pm = ProjPoint::numeric(m);
                CVec mn = pm.approx();
                QuadraticRoots q;
                try {
                    q = solve_quadratic_at(c, pm);
                } catch (const std::invalid_argument&) {
                    ++res.dropped;
                    continue;
                }
                if (q.degenerate) {
                    ++res.dropped;
                    continue;
                }
                CVec sig = eval_quad(c.sigma, mn);
                for (std::size_t k = 0; k < q.roots.size(); ++k) {
                    const auto& lam = q.roots[k];
                    CVec p(4);
                    for (int u = 0; u < 4; ++u) p[u] = lam[0] * mn[u] + lam[1] * sig[u];
                    double pn = 0;
                    for (auto& z : p) pn = std::max(pn, std::abs(z));
                    if (pn == 0 || std::abs(p[3]) <= 1e-12 * pn || collinearity_residual(mn, sig, p) >= 1e-8) {
                        ++res.dropped;
                        continue;
                    }
                    std::complex<double> X = p[0] / p[3], Y = p[1] / p[3], Z = p[2] / p[3];
                    double tol = grid.real_filter_tol;
                    bool real = std::abs(X.imag()) <= tol * (1 + std::abs(X.real())) &&
                                std::abs(Y.imag()) <= tol * (1 + std::abs(Y.real())) &&
                                std::abs(Z.imag()) <= tol * (1 + std::abs(Z.real()));
                    if (!real) {
                        ++res.dropped;
                        continue;
                    }
                    SampleRow row;
                    row.node = node;
                    row.branch = k == 0 ? '+' : '-';
                    row.m = m;
                    row.p = p;
                    row.row = CloudRow{X.real(), Y.real(), Z.real(), row.branch};
                    res.rows.push_back(row);
                }
            }
        }
    }
    std::stable_sort(res.rows.begin(), res.rows.end(), [](const SampleRow& a, const SampleRow& b) {
        return a.node != b.node ? a.node < b.node : a.branch < b.branch;
    });
    return res;
}

}  // namespace caustic
