#include "caustic/base_points.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "caustic/univariate.hpp"

namespace caustic {

bool BaseClassification::has(const std::string& tag) const {
    return std::find(case_tags.begin(), case_tags.end(), tag) != case_tags.end();
}

namespace {

// Evaluation of polynomials at a point, exact or with a relative tolerance.
struct Val {
    bool zero = true;
    std::complex<double> z;
    std::optional<GaussianRational> q;
    std::string str() const { return q ? q->str() : complex_str(z); }
};

class Evaluator {
public:
    explicit Evaluator(const ProjPoint& m, double tol = 1e-8) : m_(m), tol_(tol) {
        if (m.dim() != 4) throw std::invalid_argument("point needs four coordinates");
        approx_ = m.approx();
    }
    Val operator()(const MultiPoly& p) const {
        Val v;
        if (m_.is_exact()) {
            v.q = p.evaluate(m_.coords());
            v.zero = v.q->is_zero();
            v.z = v.q->to_complex();
        } else {
            v.z = p.evaluate(approx_);
            v.zero = std::abs(v.z) <= tol_ * std::max(p.magnitude(approx_), 1e-300);
        }
        return v;
    }
    Val coord(int k) const {
        Val v;
        if (m_.is_exact()) {
            v.q = m_.coords()[k];
            v.zero = v.q->is_zero();
            v.z = v.q->to_complex();
        } else {
            v.z = approx_[k];
            v.zero = std::abs(v.z) <= tol_;
        }
        return v;
    }
    // a proportional to b (a zero vector counts as proportional)
    bool proportional(const std::vector<Val>& a, const std::vector<Val>& b) const {
        if (m_.is_exact()) {
            for (std::size_t i = 0; i < a.size(); ++i)
                for (std::size_t j = i + 1; j < a.size(); ++j)
                    if (!(*a[i].q * *b[j].q - *a[j].q * *b[i].q).is_zero()) return false;
            return true;
        }
        if (all_zero(a) || all_zero(b)) return true;
        double na = 0, nb = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            na = std::max(na, std::abs(a[i].z));
            nb = std::max(nb, std::abs(b[i].z));
        }
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = i + 1; j < a.size(); ++j)
                if (std::abs(a[i].z * b[j].z - a[j].z * b[i].z) > tol_ * na * nb) return false;
        return true;
    }
    bool all_zero(const std::vector<Val>& a) const {
        return std::all_of(a.begin(), a.end(), [](const Val& v) { return v.zero; });
    }
    bool exact() const { return m_.is_exact(); }

private:
    ProjPoint m_;
    double tol_;
    std::vector<std::complex<double>> approx_;
};

std::string vec_str(const std::vector<Val>& v) {
    std::string s = "(";
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + v[k].str();
    return s + ")";
}

}  // namespace

BaseClassification classify_point(const CausticData& c, const ProjPoint& m) {
    Evaluator ev(m);
    const MultiPoly& F = c.scene.F;
    Val f = ev(F);
    if (!f.zero) throw std::invalid_argument("m off-surface: F(m) = " + f.str());
    BaseClassification b;
    std::vector<Val> grad, kappa, sig, pt;
    for (int k = 0; k < 4; ++k) {
        grad.push_back(ev(c.grad[k]));
        kappa.push_back(ev(c.kappa_grad[k]));
        sig.push_back(ev(c.sigma[k]));
        pt.push_back(ev.coord(k));
    }
    Val delta = ev(c.delta), qgrad = ev(c.qgrad), hdet = ev(c.hdet);
    MultiPoly qm_poly = MultiPoly::variable(xyzt(), "x").pow(2) + MultiPoly::variable(xyzt(), "y").pow(2) +
                        MultiPoly::variable(xyzt(), "z").pow(2);
    Val qm = ev(qm_poly);
    MultiPoly lap = c.hess[0][0] + c.hess[1][1] + c.hess[2][2];
    Val lapv = ev(lap);
    b.witnesses["F"] = f.str();
    b.witnesses["delta"] = delta.str();
    b.witnesses["q_grad"] = qgrad.str();
    b.witnesses["hessian_det"] = hdet.str();
    b.witnesses["q_m"] = qm.str();
    b.witnesses["kappa_grad"] = vec_str(kappa);
    b.witnesses["sigma"] = vec_str(sig);
    b.witnesses["trace_hessian"] = lapv.str();

    bool singular = ev.all_zero(grad);
    bool t_zero = pt[3].zero;
    bool tangent_inf = t_zero && ev.all_zero(kappa);
    if (singular) b.case_tags.push_back("singular_point");
    if (delta.zero && qgrad.zero) b.case_tags.push_back("B0_isotropic_tangent_through_S");
    if (tangent_inf && qm.zero) b.case_tags.push_back("tangent_Hinf_on_umbilical");
    if (tangent_inf && hdet.zero) b.case_tags.push_back("tangent_Hinf_on_hessian");
    bool is_s = m.is_exact() ? m.same(c.scene.S) : ProjPoint::numeric(c.scene.S.approx()).same(m);
    if (is_s) b.case_tags.push_back("equals_S_on_Z");
    if (t_zero && qm.zero) {
        // (F_xx + F_yy + F_zz) m = (2d - 1) kappa(grad F), both sides of degree d - 1
        int w = 2 * c.scene.d - 1;
        bool equal = true;
        std::optional<std::string> scalar;
        for (int k = 0; k < 4; ++k) {
            if (ev.exact()) {
                GaussianRational lhs = *lapv.q * *pt[k].q, rhs = *kappa[k].q * GaussianRational(w);
                if (lhs != rhs) equal = false;
                if (!scalar && !kappa[k].q->is_zero()) scalar = (lhs / *kappa[k].q).str();
            } else {
                std::complex<double> lhs = lapv.z * pt[k].z, rhs = kappa[k].z * static_cast<double>(w);
                if (std::abs(lhs - rhs) > 1e-8 * (std::abs(lhs) + std::abs(rhs) + 1e-300)) equal = false;
                if (!scalar && !kappa[k].zero) scalar = complex_str(lhs / kappa[k].z);
            }
        }
        b.witnesses["trace_scalar"] = scalar ? *scalar : "undefined";
        if (equal && !ev.all_zero(kappa)) b.case_tags.push_back("umbilical_trace_condition");
    }
    if (b.case_tags.empty()) b.case_tags.push_back("not_base");
    b.in_M = ev.proportional(sig, pt);
    b.in_W = !ev.all_zero(kappa) && ev.proportional(pt, kappa) && !delta.zero && qm.zero;
    return b;
}

std::string classification_summary(const BaseClassification& b) {
    std::string s;
    for (const auto& t : b.case_tags) s += (s.empty() ? "" : ",") + t;
    return s;
}

GeometricPredicates geometric_predicates(const CausticData& c, const ProjPoint& m) {
    Evaluator ev(m);
    if (!ev(c.scene.F).zero) throw std::invalid_argument("m off-surface");
    std::vector<Val> grad;
    for (int k = 0; k < 4; ++k) grad.push_back(ev(c.grad[k]));
    if (ev.all_zero(grad)) throw std::invalid_argument("singular point: no tangent plane");
    GeometricPredicates g;
    MultiPoly qm = MultiPoly::variable(xyzt(), "x").pow(2) + MultiPoly::variable(xyzt(), "y").pow(2) +
                   MultiPoly::variable(xyzt(), "z").pow(2);
    g.on_umbilical = ev.coord(3).zero && ev(qm).zero;
    g.tangent_plane_isotropic = ev(c.qgrad).zero;
    g.light_in_tangent_plane = ev(c.delta).zero;
    bool kappa_zero = grad[0].zero && grad[1].zero && grad[2].zero;
    if (!kappa_zero) {
        if (m.is_exact())
            g.normal_at_infinity = ProjPoint::exact({*grad[0].q, *grad[1].q, *grad[2].q, GaussianRational(0)});
        else
            g.normal_at_infinity = ProjPoint::numeric({grad[0].z, grad[1].z, grad[2].z, 0.0});
    }
    // the normal at infinity lies on the umbilical exactly when the plane is isotropic
    g.normal_on_umbilical = !kappa_zero && g.tangent_plane_isotropic;
    return g;
}

namespace {

struct AffSol {
    bool exact = true;
    std::vector<GaussianRational> q;
    std::vector<std::complex<double>> z;
    std::string minimal;
};

struct InfiniteSolutions {
    std::string witness;
};

double rel_residual(const MultiPoly& p, const std::vector<std::complex<double>>& pt) {
    double mag = p.magnitude(pt);
    double v = std::abs(p.evaluate(pt));
    return mag > 0 ? v / mag : v;
}

class AffineSolver {
public:
    explicit AffineSolver(unsigned seed) : rng_(seed) {}

    std::vector<AffSol> solve(std::vector<MultiPoly> polys, const std::vector<std::string>& vars) {
        std::vector<MultiPoly> clean;
        for (auto& p : polys) {
            if (p.is_zero()) continue;
            if (p.is_constant()) return {};
            bool dup = false;
            for (const auto& q : clean) dup = dup || q == p;
            if (!dup) clean.push_back(p);
        }
        std::size_t n = vars.size();
        if (clean.empty()) {
            if (n == 0) return {AffSol{}};
            throw InfiniteSolutions{"no equation constrains " + join(vars)};
        }
        if (n == 1) return solve_univariate_system(clean, vars[0]);
        return eliminate(clean, vars);
    }

private:
    std::mt19937_64 rng_;

    static std::string join(const std::vector<std::string>& v) {
        std::string s;
        for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
        return s;
    }

    std::vector<AffSol> solve_univariate_system(const std::vector<MultiPoly>& polys, const std::string& var) {
        UPoly g = to_upoly(polys[0].with_vars({var}), 0);
        for (std::size_t k = 1; k < polys.size(); ++k) g = gcd(g, to_upoly(polys[k].with_vars({var}), 0));
        std::vector<AffSol> out;
        if (degree(g) <= 0) return out;
        UnivariateRoots r = solve_univariate(g);
        for (const auto& e : r.exact) {
            AffSol s;
            s.q = {e};
            s.z = {e.to_complex()};
            out.push_back(s);
        }
        for (const auto& z : r.numeric) {
            AffSol s;
            s.exact = false;
            s.z = {z};
            s.minimal = "root of " + upoly_str(r.residual, var);
            out.push_back(s);
        }
        return out;
    }

    std::vector<AffSol> eliminate(const std::vector<MultiPoly>& polys, const std::vector<std::string>& vars) {
        std::size_t n = vars.size(), v = n - 1;
        std::vector<std::string> sub_vars(vars.begin(), vars.end() - 1);
        bool any_v = std::any_of(polys.begin(), polys.end(), [&](const MultiPoly& p) { return p.involves(v); });
        if (!any_v) {
            std::vector<MultiPoly> reduced;
            for (const auto& p : polys) reduced.push_back(p.with_vars(sub_vars));
            if (!solve(reduced, sub_vars).empty()) throw InfiniteSolutions{"coordinate " + vars[v] + " is free"};
            return {};
        }
        std::uniform_int_distribution<int> dist(-4, 4);
        std::vector<long> shear(n, 0);
        std::vector<MultiPoly> sheared;
        int pivot = -1;
        for (int attempt = 0; attempt < 30 && pivot < 0; ++attempt) {
            if (attempt > 0)
                for (std::size_t k = 0; k < v; ++k) shear[k] = dist(rng_);
            std::map<std::string, MultiPoly> sub;
            for (std::size_t k = 0; k < n; ++k) {
                MultiPoly img = MultiPoly::variable(vars, vars[k]);
                if (k < v && shear[k] != 0) img += MultiPoly::variable(vars, vars[v]) * GaussianRational(shear[k]);
                sub[vars[k]] = img;
            }
            sheared.clear();
            for (const auto& p : polys) sheared.push_back(attempt == 0 ? p : p.substitute(sub));
            int best_deg = 0;
            for (std::size_t k = 0; k < sheared.size(); ++k) {
                int dg = sheared[k].degree_in(v);
                if (dg < 1) continue;
                if (!sheared[k].coefficients_in(v).back().is_constant()) continue;
                if (pivot < 0 || dg < best_deg) {
                    pivot = static_cast<int>(k);
                    best_deg = dg;
                }
            }
        }
        if (pivot < 0) throw std::runtime_error("could not find a monic pivot for elimination");
        const MultiPoly& p0 = sheared[pivot];
        std::vector<MultiPoly> with_v, without_v;
        for (std::size_t k = 0; k < sheared.size(); ++k) {
            if (static_cast<int>(k) == pivot) continue;
            (sheared[k].involves(v) ? with_v : without_v).push_back(sheared[k]);
        }
        if (with_v.empty() && without_v.empty())
            throw InfiniteSolutions{"single equation " + p0.str() + " in " + join(vars)};
        std::vector<MultiPoly> reduced;
        for (const auto& p : without_v) reduced.push_back(p.with_vars(sub_vars));
        bool common_factor = false;
        if (!with_v.empty()) {
            MultiPoly res;
            if (with_v.size() == 1) {
                res = resultant(p0, with_v[0], v).with_vars(sub_vars);
                if (res.is_zero())
                    common_factor = true;
                else
                    reduced.push_back(res);
            } else {
                // Res_v(p0, sum_j w^j q_j): its coefficients in w cut out the
                // exact projection of V(p0, q_1, ..., q_k)
                std::vector<std::string> ext = vars;
                ext.push_back("w_aux");
                MultiPoly pencil(ext), wpow = MultiPoly::constant(ext, 1);
                MultiPoly w = MultiPoly::variable(ext, "w_aux");
                for (const auto& q : with_v) {
                    pencil += q.with_vars(ext) * wpow;
                    wpow *= w;
                }
                MultiPoly r = resultant(p0.with_vars(ext), pencil, v);
                if (r.is_zero()) {
                    common_factor = true;
                } else {
                    for (const auto& co : r.coefficients_in(ext.size() - 1)) {
                        MultiPoly cc = co.with_vars(ext);
                        std::vector<std::string> keep = sub_vars;
                        keep.push_back("w_aux");
                        reduced.push_back(cc.with_vars(keep).with_vars(sub_vars));
                    }
                }
            }
        }
        if (common_factor && without_v.empty())
            throw InfiniteSolutions{"common factor with " + p0.str() + " in " + join(vars)};
        std::vector<AffSol> base = solve(reduced, sub_vars);
        std::vector<AffSol> out;
        for (const auto& b : base) extend(b, sheared, pivot, vars, shear, out);
        return out;
    }

    void extend(const AffSol& b, const std::vector<MultiPoly>& sheared, int pivot, const std::vector<std::string>& vars,
                const std::vector<long>& shear, std::vector<AffSol>& out) {
        std::size_t n = vars.size(), v = n - 1;
        std::vector<std::pair<bool, std::pair<GaussianRational, std::complex<double>>>> roots;  // exact?, value
        std::string minimal = b.minimal;
        if (b.exact) {
            UPoly g;
            bool first = true;
            for (const auto& p : sheared) {
                MultiPoly q = p;
                for (std::size_t k = 0; k < v; ++k) q = q.partial_evaluate(k, b.q[k]);
                UPoly u = to_upoly(q.with_vars({vars[v]}), 0);
                g = first ? u : gcd(g, u);
                first = false;
            }
            trim(g);
            if (g.empty()) throw InfiniteSolutions{"a whole line of solutions over a point with " + join(vars)};
            if (degree(g) == 0) return;
            UnivariateRoots r = solve_univariate(g);
            for (const auto& e : r.exact) roots.push_back({true, {e, e.to_complex()}});
            for (const auto& z : r.numeric) roots.push_back({false, {GaussianRational(0), z}});
            if (!r.numeric.empty()) minimal = "root of " + upoly_str(r.residual, vars[v]);
        } else {
            std::vector<std::complex<double>> pt(b.z);
            pt.push_back(0);
            auto coeffs = sheared[pivot].coefficients_in(v);
            std::vector<std::complex<double>> cz;
            for (const auto& co : coeffs) cz.push_back(co.evaluate(pt));
            for (const auto& z : numeric_roots(cz)) {
                pt[v] = z;
                bool ok = true;
                for (const auto& p : sheared) ok = ok && rel_residual(p, pt) <= 1e-6;
                if (ok) roots.push_back({false, {GaussianRational(0), z}});
            }
        }
        for (const auto& [is_exact, val] : roots) {
            AffSol s;
            s.exact = b.exact && is_exact;
            s.minimal = s.exact ? "" : minimal;
            s.z = b.z;
            s.z.push_back(val.second);
            if (s.exact) {
                s.q = b.q;
                s.q.push_back(val.first);
                for (std::size_t k = 0; k < v; ++k) s.q[k] += val.first * GaussianRational(shear[k]);
                for (std::size_t k = 0; k < n; ++k) s.z[k] = s.q[k].to_complex();
            } else {
                for (std::size_t k = 0; k < v; ++k) s.z[k] += val.second * static_cast<double>(shear[k]);
            }
            out.push_back(s);
        }
    }
};

// Gauss-Newton on the full affine system.
void polish(const std::vector<MultiPoly>& polys, std::vector<std::complex<double>>& x) {
    std::size_t n = x.size();
    if (n == 0) return;
    std::vector<std::vector<MultiPoly>> jac;
    for (const auto& p : polys) {
        std::vector<MultiPoly> row;
        for (std::size_t k = 0; k < n; ++k) row.push_back(p.differentiate(k));
        jac.push_back(row);
    }
    for (int it = 0; it < 30; ++it) {
        std::vector<std::complex<double>> f;
        std::vector<std::vector<std::complex<double>>> J;
        for (std::size_t i = 0; i < polys.size(); ++i) {
            f.push_back(polys[i].evaluate(x));
            std::vector<std::complex<double>> row;
            for (std::size_t k = 0; k < n; ++k) row.push_back(jac[i][k].evaluate(x));
            J.push_back(row);
        }
        // normal equations J^H J dx = -J^H f
        std::vector<std::vector<std::complex<double>>> A(n, std::vector<std::complex<double>>(n + 1, 0));
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t i = 0; i < J.size(); ++i) A[a][b] += std::conj(J[i][a]) * J[i][b];
            for (std::size_t i = 0; i < J.size(); ++i) A[a][n] -= std::conj(J[i][a]) * f[i];
        }
        bool singular = false;
        for (std::size_t col = 0; col < n && !singular; ++col) {
            std::size_t piv = col;
            for (std::size_t r = col + 1; r < n; ++r)
                if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
            if (std::abs(A[piv][col]) < 1e-300) {
                singular = true;
                break;
            }
            std::swap(A[piv], A[col]);
            for (std::size_t r = 0; r < n; ++r) {
                if (r == col) continue;
                std::complex<double> fct = A[r][col] / A[col][col];
                for (std::size_t k = col; k <= n; ++k) A[r][k] -= fct * A[col][k];
            }
        }
        if (singular) return;
        double step = 0, size = 0;
        for (std::size_t k = 0; k < n; ++k) {
            std::complex<double> dx = A[k][n] / A[k][k];
            x[k] += dx;
            step = std::max(step, std::abs(dx));
            size = std::max(size, std::abs(x[k]));
        }
        if (step <= 1e-16 * std::max(1.0, size)) return;
    }
}

}  // namespace

std::vector<ProjectiveSolution> solve_projective(const std::vector<MultiPoly>& system, unsigned seed) {
    struct Chart {
        std::string name;
        std::vector<std::pair<int, int>> fixed;  // coordinate, value
        std::vector<std::string> free;
    };
    const std::vector<Chart> charts{{"t=1", {{3, 1}}, {"x", "y", "z"}},
                                    {"t=0,z=1", {{3, 0}, {2, 1}}, {"x", "y"}},
                                    {"t=0,z=0,y=1", {{3, 0}, {2, 0}, {1, 1}}, {"x"}},
                                    {"[1:0:0:0]", {{3, 0}, {2, 0}, {1, 0}, {0, 1}}, {}}};
    std::vector<ProjectiveSolution> out;
    AffineSolver solver(seed);
    for (const auto& ch : charts) {
        std::vector<MultiPoly> polys;
        for (const auto& p : system) {
            MultiPoly q = p;
            for (auto [k, val] : ch.fixed) q = q.partial_evaluate(k, GaussianRational(val));
            polys.push_back(q.with_vars(ch.free));
        }
        std::vector<AffSol> sols;
        try {
            sols = solver.solve(polys, ch.free);
        } catch (const InfiniteSolutions& e) {
            throw InfiniteBaseError(e.witness + " (chart " + ch.name + ")");
        }
        for (auto& s : sols) {
            std::vector<GaussianRational> q(4);
            std::vector<std::complex<double>> z(4);
            for (auto [k, val] : ch.fixed) {
                q[k] = GaussianRational(val);
                z[k] = val;
            }
            if (!s.exact) {
                std::vector<MultiPoly> nonzero;
                for (const auto& p : polys)
                    if (!p.is_zero()) nonzero.push_back(p);
                polish(nonzero, s.z);
            }
            for (std::size_t i = 0; i < ch.free.size(); ++i) {
                int k = ch.free[i] == "x" ? 0 : ch.free[i] == "y" ? 1 : 2;
                if (s.exact) q[k] = s.q[i];
                z[k] = s.z[i];
            }
            ProjectiveSolution ps;
            ps.point = s.exact ? ProjPoint::exact(q) : ProjPoint::numeric(z);
            ps.minimal_data = s.minimal;
            bool dup = false;
            for (const auto& o : out) dup = dup || o.point.same(ps.point, 1e-7);
            if (!dup) out.push_back(ps);
        }
    }
    return out;
}

BaseSet enumerate_base_points(const CausticData& c, const std::optional<std::vector<ProjPoint>>& candidates) {
    BaseSet bs;
    if (candidates) {
        for (const auto& m : *candidates) {
            try {
                BaseClassification cls = classify_point(c, m);
                if (cls.is_base())
                    bs.points.push_back({m, cls, ""});
                else
                    bs.rejected.push_back(m.str() + ": not a base point");
            } catch (const std::invalid_argument& e) {
                bs.rejected.push_back(m.str() + ": " + e.what());
            }
        }
        return bs;
    }
    int d = c.scene.d;
    if (d > 3) throw std::invalid_argument("supply candidates: automatic enumeration covers d <= 3");
    const MultiPoly& F = c.scene.F;
    MultiPoly t = MultiPoly::variable(xyzt(), "t");
    MultiPoly qm = MultiPoly::variable(xyzt(), "x").pow(2) + MultiPoly::variable(xyzt(), "y").pow(2) +
                   MultiPoly::variable(xyzt(), "z").pow(2);
    MultiPoly lap = c.hess[0][0] + c.hess[1][1] + c.hess[2][2];
    std::vector<std::vector<MultiPoly>> systems;
    systems.push_back({F, c.delta, c.qgrad});
    systems.push_back({t, c.grad[0], c.grad[1], c.grad[2], qm * c.hdet});
    std::vector<MultiPoly> trace{t, F, qm};
    const char* names[] = {"x", "y", "z"};
    for (int k = 0; k < 3; ++k)
        trace.push_back(lap * MultiPoly::variable(xyzt(), names[k]) - c.grad[k] * GaussianRational(2 * d - 1));
    systems.push_back(trace);
    std::vector<ProjectiveSolution> found;
    for (const auto& sys : systems)
        for (const auto& s : solve_projective(sys)) found.push_back(s);
    if (F.evaluate(c.scene.S.coords()).is_zero()) found.push_back({c.scene.S, ""});
    for (const auto& s : found) {
        bool dup = false;
        for (const auto& o : bs.points) dup = dup || o.m.same(s.point, 1e-7);
        if (dup) continue;
        BaseClassification cls = classify_point(c, s.point);
        if (cls.is_base())
            bs.points.push_back({s.point, cls, s.minimal_data});
        else
            bs.rejected.push_back(s.point.str() + ": not a base point");
    }
    return bs;
}

}  // namespace caustic
