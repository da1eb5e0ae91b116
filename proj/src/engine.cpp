#include "caustic/engine.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "caustic/base_points.hpp"
#include "caustic/univariate.hpp"

namespace caustic {

namespace {

MultiPoly var(const std::string& name) { return MultiPoly::variable(xyzt(), name); }
MultiPoly cst(const GaussianRational& c) { return MultiPoly::constant(xyzt(), c); }

std::complex<double> complex_det(std::vector<std::vector<std::complex<double>>> a) {
    std::size_t n = a.size();
    std::complex<double> det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
        if (a[p][c] == std::complex<double>(0)) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            std::complex<double> f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

double norm2(const CVec& v) {
    double s = 0;
    for (auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

}  // namespace

MultiPoly polar_delta(const Scene& s) {
    const auto& S = s.S.coords();
    MultiPoly d(xyzt());
    for (std::size_t k = 0; k < 4; ++k)
        if (!S[k].is_zero()) d += s.F.differentiate(k) * S[k];
    return d;
}

MultiPoly n_poly(const ProjPoint& S) {
    const auto& c = S.coords();
    MultiPoly n(xyzt());
    const char* names[] = {"x", "y", "z"};
    for (int k = 0; k < 3; ++k) {
        MultiPoly l = var(names[k]) * c[3] - var("t") * c[k];
        n += l * l;
    }
    return n;
}

MultiPoly hess_bilinear(const std::vector<std::vector<MultiPoly>>& hess, const std::vector<GaussianRational>& v,
                        const Quad4& w) {
    MultiPoly r(xyzt());
    for (std::size_t i = 0; i < 4; ++i) {
        if (v[i].is_zero()) continue;
        for (std::size_t j = 0; j < 4; ++j) r += hess[i][j] * w[j] * v[i];
    }
    return r;
}

Quad4 sigma_map(const Scene& s) {
    CausticData c = build_caustic(Scene{s.F, 1, s.S, s.label});
    return c.sigma;
}

QuadFamily quad_family(const Scene& s) {
    if (s.d < 2) throw std::invalid_argument("planar mirror: caustic is the reflected source; use sigma_map");
    CausticData c = build_caustic(s);
    return {c.alpha, c.beta, c.gamma};
}

CausticData build_caustic(const Scene& s) {
    CausticData c;
    c.scene = s;
    const MultiPoly& F = s.F;
    for (std::size_t k = 0; k < 4; ++k) c.grad[k] = F.differentiate(k);
    c.kappa_grad = {c.grad[0], c.grad[1], c.grad[2], MultiPoly(xyzt())};
    c.qgrad = c.grad[0] * c.grad[0] + c.grad[1] * c.grad[1] + c.grad[2] * c.grad[2];
    c.delta = polar_delta(s);
    c.n_s = n_poly(s.S);
    c.hess = hessian_matrix(F);
    c.hdet = determinant(c.hess);
    const auto& S = s.S.coords();
    for (std::size_t k = 0; k < 4; ++k) c.sigma[k] = c.qgrad * S[k] - c.delta * c.kappa_grad[k] * GaussianRational(2);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 3; ++j) c.dsigma[i][j] = c.sigma[i].differentiate(j);
    int d = s.d;
    if (d >= 2) {
        c.has_family = true;
        MultiPoly lap = c.hess[0][0] + c.hess[1][1] + c.hess[2][2];
        c.alpha = c.delta;
        c.beta = (hess_bilinear(c.hess, S, c.sigma) + c.delta * c.delta * lap) * GaussianRational(-2);
        GaussianRational scale = GaussianRational(-4) / GaussianRational((d - 1) * (d - 1));
        c.gamma = c.delta * c.n_s * c.hdet * scale;
        c.beta_tilde = c.beta * GaussianRational(mpq_class(-1, 2));
        c.theta = c.beta_tilde * c.beta_tilde - c.alpha * c.gamma;
    }
    return c;
}

std::optional<std::map<std::string, MultiPoly>> graph_chart(const MultiPoly& F) {
    MultiPoly affine = F.partial_evaluate(3, GaussianRational(1));
    for (int v : {2, 1, 0}) {
        auto co = affine.coefficients_in(v);
        if (co.size() != 2 || !co[1].is_constant() || co[1].is_zero()) continue;
        MultiPoly solved = co[0] * (GaussianRational(-1) / co[1].constant_term());
        std::map<std::string, MultiPoly> chart;
        for (int k = 0; k < 4; ++k) chart[xyzt()[k]] = var(xyzt()[k]);
        chart[xyzt()[v]] = solved;
        chart["t"] = cst(1);
        return chart;
    }
    return std::nullopt;
}

ThetaResult theta_and_square_test(const CausticData& c,
                                  const std::optional<std::map<std::string, MultiPoly>>& chart) {
    if (!c.has_family) throw std::invalid_argument("planar mirror: caustic is the reflected source; use sigma_map");
    ThetaResult r;
    r.theta = c.theta;
    if (chart) {
        if (!c.scene.F.substitute(*chart).is_zero()) throw std::invalid_argument("chart does not satisfy F");
        r.chart_theta = c.theta.substitute(*chart);
    }
    auto settle = [&](const MultiPoly& p, const char* where) {
        if (p.is_zero()) {
            r.is_square = true;
            r.root = p;
        } else if (auto root = poly_sqrt(p)) {
            r.is_square = true;
            r.root = *root;
        }
        if (r.is_square) r.decided_on = where;
        return r.is_square;
    };
    if (settle(r.theta, "polynomial ring")) return r;
    if (r.chart_theta && settle(*r.chart_theta, "chart")) return r;
    r.decided_on = r.chart_theta ? "chart" : "polynomial ring";
    return r;
}

CVec eval_quad(const Quad4& q, const CVec& m) {
    CVec r(4);
    for (int k = 0; k < 4; ++k) r[k] = q[k].evaluate(m);
    return r;
}

double on_surface_residual(const MultiPoly& F, const CVec& m) {
    double mag = F.magnitude(m);
    double v = std::abs(F.evaluate(m));
    return mag > 0 ? v / mag : v;
}

double collinearity_residual(const CVec& a, const CVec& b, const CVec& c) {
    double scale = norm2(a) * norm2(b) * norm2(c);
    if (scale == 0) return 0;
    double worst = 0;
    for (int skip = 0; skip < 4; ++skip) {
        std::vector<std::vector<std::complex<double>>> m;
        for (const CVec* v : {&a, &b, &c}) {
            std::vector<std::complex<double>> row;
            for (int k = 0; k < 4; ++k)
                if (k != skip) row.push_back((*v)[k]);
            m.push_back(row);
        }
        worst = std::max(worst, std::abs(complex_det(m)));
    }
    return worst / scale;
}

std::complex<double> ramification_det(const CausticData& c, const CVec& m, std::complex<double> l0,
                                      std::complex<double> l1) {
    CVec sig = eval_quad(c.sigma, m);
    std::vector<std::vector<std::complex<double>>> D(5, std::vector<std::complex<double>>(5));
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 3; ++j) D[i][j] = (i == j ? l0 : 0.0) + l1 * c.dsigma[i][j].evaluate(m);
        D[i][3] = m[i];
        D[i][4] = sig[i];
    }
    for (int j = 0; j < 3; ++j) D[4][j] = c.grad[j].evaluate(m);
    D[4][3] = D[4][4] = 0;
    return complex_det(D);
}

double ramification_det_check(const CausticData& c, const CVec& m, std::complex<double> l0, std::complex<double> l1) {
    if (!c.has_family) throw std::invalid_argument("planar mirror: caustic is the reflected source; use sigma_map");
    if (on_surface_residual(c.scene.F, m) > 1e-10) throw std::invalid_argument("m off-surface");
    double mnorm = norm2(m);
    std::complex<double> q = c.qgrad.evaluate(m);
    if (std::abs(m[3]) <= 1e-12 * mnorm || std::abs(q) <= 1e-12 * c.qgrad.magnitude(m))
        throw std::invalid_argument("identity hypothesis violated");
    std::complex<double> a = c.alpha.evaluate(m), b = c.beta.evaluate(m), g = c.gamma.evaluate(m);
    std::complex<double> rhs = m[3] * q * (a * l0 * l0 + b * l0 * l1 + g * l1 * l1);
    std::complex<double> lhs = ramification_det(c, m, l0, l1);
    // scale: Hadamard bound of the matrix and the size of the right side
    CVec sig = eval_quad(c.sigma, m);
    double had = 1;
    for (int i = 0; i < 4; ++i) {
        double row = std::norm(m[i]) + std::norm(sig[i]);
        for (int j = 0; j < 3; ++j) row += std::norm((i == j ? l0 : 0.0) + l1 * c.dsigma[i][j].evaluate(m));
        had *= std::sqrt(row);
    }
    double last = 0;
    for (int j = 0; j < 3; ++j) last += std::norm(c.grad[j].evaluate(m));
    had *= std::sqrt(last);
    double side = std::abs(m[3]) * std::abs(q) *
                  (c.alpha.magnitude(m) * std::norm(l0) + c.beta.magnitude(m) * std::abs(l0 * l1) +
                   c.gamma.magnitude(m) * std::norm(l1));
    double scale = std::max(had, side);
    return scale > 0 ? std::abs(lhs - rhs) / scale : std::abs(lhs - rhs);
}

QuadraticRoots solve_quadratic_at(const CausticData& c, const ProjPoint& m) {
    if (!c.has_family) throw std::invalid_argument("planar mirror: caustic is the reflected source; use sigma_map");
    QuadraticRoots out;
    if (m.is_exact()) {
        const auto& pt = m.coords();
        if (!c.scene.F.evaluate(pt).is_zero()) throw std::invalid_argument("m is not on the surface");
        GaussianRational a = c.alpha.evaluate(pt), b = c.beta.evaluate(pt), g = c.gamma.evaluate(pt);
        if (a.is_zero() && b.is_zero() && g.is_zero()) {
            out.degenerate = true;
            return out;
        }
        GaussianRational bt = b * GaussianRational(mpq_class(-1, 2));
        if (!a.is_zero()) {
            GaussianRational th = bt * bt - a * g;
            if (auto r = gaussian_sqrt(th)) {
                out.exact_roots.push_back({bt + *r, a});
                if (!r->is_zero()) out.exact_roots.push_back({bt - *r, a});
            } else {
                std::complex<double> sq = std::sqrt(th.to_complex());
                out.roots.push_back({bt.to_complex() + sq, a.to_complex()});
                out.roots.push_back({bt.to_complex() - sq, a.to_complex()});
            }
        } else {
            out.exact_roots.push_back({GaussianRational(1), GaussianRational(0)});
            if (!b.is_zero()) out.exact_roots.push_back({-g, b});
        }
        for (const auto& r : out.exact_roots) out.roots.insert(out.roots.begin(), {r[0].to_complex(), r[1].to_complex()});
        return out;
    }
    CVec pt = m.approx();
    if (on_surface_residual(c.scene.F, pt) > 1e-10) throw std::invalid_argument("m is not on the surface");
    std::complex<double> a = c.alpha.evaluate(pt), b = c.beta.evaluate(pt), g = c.gamma.evaluate(pt);
    const double tol = 1e-9;
    bool za = std::abs(a) <= tol * std::max(1.0, c.alpha.magnitude(pt));
    bool zb = std::abs(b) <= tol * std::max(1.0, c.beta.magnitude(pt));
    bool zg = std::abs(g) <= tol * std::max(1.0, c.gamma.magnitude(pt));
    if (za && zb && zg) {
        out.degenerate = true;
        return out;
    }
    std::complex<double> bt = -b / 2.0;
    if (!za) {
        std::complex<double> sq = std::sqrt(bt * bt - a * g);
        out.roots.push_back({bt + sq, a});
        if (std::abs(sq) > tol * (std::abs(bt) + std::sqrt(std::abs(a * g)))) out.roots.push_back({bt - sq, a});
    } else {
        out.roots.push_back({1.0, 0.0});
        if (!zb) out.roots.push_back({-g, b});
    }
    return out;
}

PsiResult psi_points(const CausticData& c, const ProjPoint& m) {
    PsiResult res;
    res.quad = solve_quadratic_at(c, m);
    if (res.quad.degenerate) throw FiberError("fiber is the whole reflected line");
    auto base_error = [&]() {
        return FiberError("base point: " + classification_summary(classify_point(c, m)));
    };
    if (m.is_exact() && res.quad.exact_roots.size() == res.quad.roots.size()) {
        const auto& pt = m.coords();
        std::vector<GaussianRational> sig(4);
        for (int k = 0; k < 4; ++k) sig[k] = c.sigma[k].evaluate(pt);
        for (const auto& r : res.quad.exact_roots) {
            std::vector<GaussianRational> p(4);
            bool zero = true;
            for (int k = 0; k < 4; ++k) {
                p[k] = r[0] * pt[k] + r[1] * sig[k];
                zero = zero && p[k].is_zero();
            }
            if (zero) throw base_error();
            res.points.push_back(ProjPoint::exact(p));
        }
        return res;
    }
    CVec pt = m.approx();
    CVec sig = eval_quad(c.sigma, pt);
    double scale = norm2(pt) + norm2(sig);
    for (const auto& r : res.quad.roots) {
        CVec p(4);
        for (int k = 0; k < 4; ++k) p[k] = r[0] * pt[k] + r[1] * sig[k];
        if (norm2(p) <= 1e-12 * scale * (std::abs(r[0]) + std::abs(r[1]))) throw base_error();
        res.points.push_back(ProjPoint::numeric(p));
    }
    return res;
}

void multidegree_check(const MultiPoly& alpha, const MultiPoly& beta, const MultiPoly& gamma, const Quad4& sigma,
                       int d) {
    std::vector<std::string> v6{"x", "y", "z", "t", "l0", "l1"};
    MultiPoly l0 = MultiPoly::variable(v6, "l0"), l1 = MultiPoly::variable(v6, "l1");
    auto check = [&](const MultiPoly& p, int w1, int w2, const std::string& what) {
        for (const auto& [e, coef] : p.terms()) {
            int a = e[0] + e[1] + e[2] + e[3] + (2 * d - 3) * e[4];
            int b = e[4] + e[5];
            if (a != w1 || b != w2) {
                MultiPoly term = MultiPoly::monomial(v6, e, coef);
                std::ostringstream os;
                os << "multidegree violation in " << what << ": term " << term.str() << " has multidegree (" << a
                   << "," << b << "), expected (" << w1 << "," << w2 << ")";
                throw std::runtime_error(os.str());
            }
        }
    };
    MultiPoly q = alpha.with_vars(v6) * l0 * l0 + beta.with_vars(v6) * l0 * l1 + gamma.with_vars(v6) * l1 * l1;
    check(q, 5 * d - 7, 2, "Q_{S,F}");
    const char* names[] = {"x", "y", "z", "t"};
    for (int k = 0; k < 4; ++k) {
        MultiPoly phi = l0 * MultiPoly::variable(v6, names[k]) + l1 * sigma[k].with_vars(v6);
        check(phi, 2 * (d - 1), 1, std::string("Phi component ") + names[k]);
    }
}

void multidegree_check(const CausticData& c) {
    if (!c.has_family) throw std::invalid_argument("planar mirror: caustic is the reflected source; use sigma_map");
    multidegree_check(c.alpha, c.beta, c.gamma, c.sigma, c.scene.d);
}

std::string to_string(DegenerateKind k) {
    switch (k) {
        case DegenerateKind::none: return "none";
        case DegenerateKind::light_only: return "light_only";
        case DegenerateKind::undefined: return "undefined";
        case DegenerateKind::plane_at_infinity: return "plane_at_infinity";
        case DegenerateKind::quadratic_vanishes: return "quadratic_vanishes";
    }
    return "none";
}

DegenerateReport degenerate_check(const CausticData& c) {
    const MultiPoly& F = c.scene.F;
    DegenerateReport r;
    if (F.size() == 1) {
        const auto& [e, coef] = *F.terms().begin();
        if (e[0] == 0 && e[1] == 0 && e[2] == 0) {
            r.kind = DegenerateKind::plane_at_infinity;
            r.description = "mirror is the plane at infinity";
            return r;
        }
    }
    if (c.delta.divisible_by(F)) {
        if (c.qgrad.divisible_by(F)) {
            r.kind = DegenerateKind::undefined;
            r.description = "polar vanishes and the mirror lies in V(Fx^2+Fy^2+Fz^2); caustic undefined";
        } else {
            r.kind = DegenerateKind::light_only;
            r.description = "polar vanishes on the mirror; caustic is the light point " + c.scene.S.str();
        }
        return r;
    }
    if (c.has_family && c.alpha.divisible_by(F) && c.beta.divisible_by(F) && c.gamma.divisible_by(F)) {
        r.kind = DegenerateKind::quadratic_vanishes;
        r.description = "quadratic family vanishes on the mirror; caustic is the mirror itself";
        return r;
    }
    r.description = "non-degenerate";
    return r;
}

std::vector<ProjPoint> sample_surface_points(const MultiPoly& F, int count, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-7, 7), den(1, 5);
    std::vector<ProjPoint> out;
    auto chart = graph_chart(F);
    for (int attempt = 0; attempt < 20 * count && static_cast<int>(out.size()) < count; ++attempt) {
        GaussianRational a(mpq_class(num(rng), den(rng))), b(mpq_class(num(rng), den(rng)));
        if (chart) {
            std::vector<GaussianRational> pt(4);
            int solved = -1;
            for (int k = 0; k < 3; ++k)
                if (chart->at(xyzt()[k]) != var(xyzt()[k])) solved = k;
            int j = 0;
            for (int k = 0; k < 3; ++k)
                if (k != solved) pt[k] = (j++ == 0) ? a : b;
            pt[3] = GaussianRational(1);
            pt[solved] = chart->at(xyzt()[solved]).evaluate(pt);
            out.push_back(ProjPoint::exact(pt));
            continue;
        }
        // slice x = a, y = b, t = 1 and solve for z, falling back to other axes
        for (int v : {2, 1, 0}) {
            std::vector<GaussianRational> fixed{a, b};
            MultiPoly q = F.partial_evaluate(3, GaussianRational(1));
            int j = 0;
            for (int k = 0; k < 3; ++k)
                if (k != v) q = q.partial_evaluate(k, fixed[j++]);
            auto co = q.coefficients_in(v);
            if (co.size() < 2) continue;
            std::vector<std::complex<double>> cz;
            for (const auto& c : co) cz.push_back(c.constant_term().to_complex());
            auto roots = numeric_roots(cz);
            if (roots.empty()) continue;
            CVec pt(4);
            j = 0;
            for (int k = 0; k < 3; ++k)
                if (k != v) pt[k] = fixed[j++].to_complex();
            pt[3] = 1;
            pt[v] = roots[0];
            out.push_back(ProjPoint::numeric(pt));
            break;
        }
    }
    return out;
}

std::optional<ProjPoint> point_caustic_probe(const CausticData& c, unsigned seed) {
    if (!c.has_family) return std::nullopt;
    std::optional<ProjPoint> common;
    int agreeing = 0;
    for (const auto& m : sample_surface_points(c.scene.F, 8, seed)) {
        PsiResult r;
        try {
            r = psi_points(c, m);
        } catch (const FiberError&) {
            continue;
        }
        for (const auto& p : r.points) {
            if (!common) common = p;
            if (!common->same(p, 1e-7)) return std::nullopt;
        }
        ++agreeing;
    }
    if (agreeing < 4) return std::nullopt;
    return common;
}

}  // namespace caustic
