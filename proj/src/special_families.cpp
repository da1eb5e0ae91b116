#include "caustic/special_families.hpp"

#include <random>
#include <stdexcept>

#include "caustic/base_points.hpp"

namespace caustic {

namespace {

MultiPoly P(const std::string& text, const std::vector<std::string>& vars) { return parse_polynomial(text, vars); }

GaussianRational inv_sq(int d) { return GaussianRational(1) / GaussianRational((d - 1) * (d - 1)); }

bool proportional(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    GaussianRational ca = a.leading_term().second, cb = b.leading_term().second;
    return a * cb == b * ca;
}

IdentityCheck compare(const std::string& name, const MultiPoly& lhs, const MultiPoly& rhs, const MultiPoly& F) {
    IdentityCheck ic;
    ic.name = name;
    MultiPoly diff = lhs - rhs;
    ic.exact = diff.is_zero();
    ic.residual = ic.exact ? diff : reduce_mod(diff, F);
    ic.mod_F = ic.residual.is_zero();
    return ic;
}

// Substitution for a polynomial in (r, z, t) whose r-exponents are all even.
MultiPoly even_r_to_xyzt(const MultiPoly& p) {
    const auto& vs = xyzt();
    MultiPoly x = MultiPoly::variable(vs, "x"), y = MultiPoly::variable(vs, "y");
    MultiPoly r2 = x * x + y * y;
    MultiPoly out(vs);
    for (const auto& [e, c] : p.terms()) {
        if (e[0] % 2 != 0) throw std::invalid_argument("polynomial is not even in r: " + p.str());
        out += r2.pow(e[0] / 2) * MultiPoly::monomial(vs, {0, 0, e[1], e[2]}, c);
    }
    return out;
}

// p / r for p odd in r.
MultiPoly divide_by_r(const MultiPoly& p) {
    MultiPoly out(p.vars());
    for (const auto& [e, c] : p.terms()) {
        if (e[0] == 0) throw std::invalid_argument("polynomial is not divisible by r: " + p.str());
        Exponent f = e;
        --f[0];
        out.add_term(f, c);
    }
    return out;
}

}  // namespace

PlanarScene make_planar_scene(const MultiPoly& G, const std::vector<GaussianRational>& S0) {
    if (G.nvars() != 3) throw std::invalid_argument("planar curve needs three variables");
    if (S0.size() != 3) throw std::invalid_argument("planar light needs three coordinates");
    auto d = G.homogeneous_degree();
    if (!d) throw std::invalid_argument("curve is not homogeneous");
    if (*d < 2) throw std::invalid_argument("planar caustic needs degree at least 2");
    return PlanarScene{G, *d, S0};
}

PlanarData planar_data(const PlanarScene& ps) {
    const MultiPoly& G = ps.G;
    const auto& vs = G.vars();
    const auto& S = ps.S0;
    PlanarData pd;
    for (std::size_t k = 0; k < 3; ++k) pd.grad[k] = G.differentiate(k);
    pd.delta = MultiPoly(vs);
    for (std::size_t k = 0; k < 3; ++k)
        if (!S[k].is_zero()) pd.delta += pd.grad[k] * S[k];
    MultiPoly a = MultiPoly::variable(vs, vs[0]), b = MultiPoly::variable(vs, vs[1]), c = MultiPoly::variable(vs, vs[2]);
    MultiPoly la = a * S[2] - c * S[0], lb = b * S[2] - c * S[1];
    pd.n = la * la + lb * lb;
    pd.hdet = hessian_det(G);
    MultiPoly q = pd.grad[0] * pd.grad[0] + pd.grad[1] * pd.grad[1];
    pd.sigma[0] = q * S[0] - pd.delta * pd.grad[0] * GaussianRational(2);
    pd.sigma[1] = q * S[1] - pd.delta * pd.grad[1] * GaussianRational(2);
    pd.sigma[2] = q * S[2];
    MultiPoly scale = pd.hdet * pd.n * (GaussianRational(-2) * inv_sq(ps.d));
    std::array<MultiPoly, 3> m{a, b, c};
    for (std::size_t k = 0; k < 3; ++k) pd.phi[k] = scale * m[k] + pd.delta * pd.sigma[k];
    return pd;
}

std::array<MultiPoly, 3> planar_caustic_map(const PlanarScene& ps) { return planar_data(ps).phi; }

MultiPoly reduce_mod(const MultiPoly& p, const MultiPoly& G) { return p.divide(G).second; }

PlanarFamily planar_quad_family(const PlanarScene& ps) {
    PlanarData pd = planar_data(ps);
    const MultiPoly& G = ps.G;
    auto H = hessian_matrix(G);
    PlanarFamily f;
    f.alpha = pd.delta;
    MultiPoly hs(G.vars());
    for (std::size_t i = 0; i < 3; ++i) {
        if (ps.S0[i].is_zero()) continue;
        for (std::size_t j = 0; j < 3; ++j) hs += H[i][j] * pd.sigma[j] * ps.S0[i];
    }
    f.beta = (hs + pd.delta * pd.delta * (H[0][0] + H[1][1])) * GaussianRational(-2);
    f.gamma = pd.delta * pd.n * pd.hdet * (GaussianRational(-4) * inv_sq(ps.d));
    MultiPoly target = pd.n * pd.hdet * (GaussianRational(2) * inv_sq(ps.d));
    f.beta_residual = reduce_mod(f.beta - target, G);
    f.gamma_residual = reduce_mod(f.gamma + f.alpha * f.beta * GaussianRational(2), G);
    if (!f.beta_residual.is_zero())
        throw std::logic_error("planar lemma failed for beta, residual " + f.beta_residual.str());
    if (!f.gamma_residual.is_zero())
        throw std::logic_error("planar lemma failed for gamma, residual " + f.gamma_residual.str());
    return f;
}

int planar_mdeg(const PlanarScene& ps, unsigned seed) {
    auto phi = planar_caustic_map(ps);
    const auto& vs = ps.G.vars();
    std::map<std::string, MultiPoly> to_space{{vs[0], MultiPoly::variable(xyzt(), "x")},
                                              {vs[1], MultiPoly::variable(xyzt(), "y")},
                                              {vs[2], MultiPoly::variable(xyzt(), "z")}};
    MultiPoly G = ps.G.substitute(to_space);
    std::array<MultiPoly, 3> ph;
    for (int k = 0; k < 3; ++k) ph[k] = phi[k].substitute(to_space);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(-9, 9);
    for (int attempt = 0; attempt < 8; ++attempt) {
        MultiPoly ell(xyzt());
        for (int k = 0; k < 3; ++k) ell += ph[k] * GaussianRational(dist(rng));
        if (ell.is_zero()) continue;
        std::vector<ProjectiveSolution> sols;
        try {
            sols = solve_projective({G, ell, MultiPoly::variable(xyzt(), "t")}, seed + attempt);
        } catch (const InfiniteBaseError&) {
            continue;
        }
        int count = 0;
        for (const auto& s : sols) {
            auto z = s.point.approx();
            double mag = 0, val = 0;
            for (int k = 0; k < 3; ++k) {
                mag = std::max(mag, ph[k].magnitude(z));
                val = std::max(val, std::abs(ph[k].evaluate(z)));
            }
            if (val > 1e-8 * mag) ++count;
        }
        return count;
    }
    throw std::runtime_error("planar caustic map has no generic line section");
}

bool is_revolution(const MultiPoly& F) {
    const auto& vs = xyzt();
    MultiPoly x = MultiPoly::variable(vs, "x"), y = MultiPoly::variable(vs, "y");
    return (x * F.differentiate(1) - y * F.differentiate(0)).is_zero();
}

bool is_cylinder(const MultiPoly& F) { return !F.involves(2); }

MultiPoly profile_of_revolution(const MultiPoly& F) {
    std::vector<std::string> rzt{"r", "z", "t"};
    std::map<std::string, MultiPoly> sub{{"x", MultiPoly::variable(rzt, "r")},
                                         {"y", MultiPoly::constant(rzt, 0)},
                                         {"z", MultiPoly::variable(rzt, "z")},
                                         {"t", MultiPoly::variable(rzt, "t")}};
    return F.substitute(sub).with_vars(rzt);
}

MultiPoly lift_revolution(const MultiPoly& G) { return even_r_to_xyzt(G); }

MultiPoly lift_cylinder(const MultiPoly& G) {
    const auto& gv = G.vars();
    std::map<std::string, MultiPoly> sub{{gv[0], MultiPoly::variable(xyzt(), "x")},
                                         {gv[1], MultiPoly::variable(xyzt(), "y")},
                                         {gv[2], MultiPoly::variable(xyzt(), "t")}};
    return G.substitute(sub).with_vars(xyzt());
}

RevolutionReport revolution_caustic_check(const PlanarScene& input, unsigned seed) {
    // work with the normalized light so that both families share one scale
    ProjPoint S = ProjPoint::exact({0, 0, input.S0[1], input.S0[2]});
    PlanarScene curve = input;
    curve.S0 = {0, S.coords()[2], S.coords()[3]};
    const MultiPoly& G = curve.G;
    if (G.vars() != std::vector<std::string>{"r", "z", "t"})
        throw std::invalid_argument("revolution profile must be written in r, z, t");
    if (!input.S0[0].is_zero()) throw std::invalid_argument("light must lie on the axis (r0 = 0)");
    RevolutionReport rep;
    rep.F = lift_revolution(G);
    Scene sc{rep.F, curve.d, S, "revolution"};
    CausticData c = build_caustic(sc);
    PlanarData pd = planar_data(curve);
    PlanarFamily pf;
    pf.alpha = pd.delta;
    {
        auto H = hessian_matrix(G);
        MultiPoly hs(G.vars());
        for (std::size_t i = 0; i < 3; ++i) {
            if (curve.S0[i].is_zero()) continue;
            for (std::size_t j = 0; j < 3; ++j) hs += H[i][j] * pd.sigma[j] * curve.S0[i];
        }
        pf.beta = (hs + pd.delta * pd.delta * (H[0][0] + H[1][1])) * GaussianRational(-2);
        pf.gamma = pd.delta * pd.n * pd.hdet * (GaussianRational(-4) * inv_sq(curve.d));
    }
    MultiPoly gr_over_r = divide_by_r(G.differentiate(0));
    rep.alpha = compare("alpha", c.alpha, even_r_to_xyzt(pf.alpha), rep.F);
    rep.gamma = compare("gamma", c.gamma, even_r_to_xyzt(gr_over_r * pf.gamma), rep.F);
    MultiPoly beta_rhs = pf.beta - pd.delta * pd.delta * gr_over_r * GaussianRational(2);
    rep.beta = compare("beta", c.beta, even_r_to_xyzt(beta_rhs), rep.F);

    if (auto pt = point_caustic_probe(c, seed)) {
        rep.focal = true;
        rep.point_caustic = pt;
        rep.components.push_back("point " + pt->str());
        return rep;
    }
    rep.mdeg = planar_mdeg(curve, seed);
    rep.components.push_back("axis V(x,y)");
    rep.components.push_back("revolution surface of the planar caustic (mdeg " + std::to_string(*rep.mdeg) + ")");
    return rep;
}

CylinderReport cylinder_caustic_check(const MultiPoly& G, const ProjPoint& S) {
    if (G.nvars() != 3) throw std::invalid_argument("cylinder base must be a planar curve");
    const auto& s = S.coords();
    if (s[0].is_zero() && s[1].is_zero() && s[3].is_zero())
        throw std::invalid_argument("light [0:0:1:0] is degenerate for a cylinder along the z axis");
    CylinderReport rep;
    rep.F = lift_cylinder(G);
    auto d = G.homogeneous_degree();
    if (!d || *d < 2) throw std::invalid_argument("cylinder base must be homogeneous of degree at least 2");
    Scene sc{rep.F, *d, S, "cylinder"};
    CausticData c = build_caustic(sc);
    rep.hessian_zero = c.hdet.is_zero();
    rep.gamma_zero = c.gamma.is_zero();
    PlanarScene ps = make_planar_scene(G, {s[0], s[1], s[3]});
    PlanarData pd = planar_data(ps);
    auto H = hessian_matrix(G);
    MultiPoly hs(G.vars());
    for (std::size_t i = 0; i < 3; ++i) {
        if (ps.S0[i].is_zero()) continue;
        for (std::size_t j = 0; j < 3; ++j) hs += H[i][j] * pd.sigma[j] * ps.S0[i];
    }
    MultiPoly beta0 = (hs + pd.delta * pd.delta * (H[0][0] + H[1][1])) * GaussianRational(-2);
    rep.alpha = compare("alpha", c.alpha, lift_cylinder(pd.delta), rep.F);
    rep.beta = compare("beta", c.beta, lift_cylinder(beta0), rep.F);
    rep.collapse = reduce_mod(pd.hdet * pd.n, G).is_zero();
    rep.components.push_back("closure of sigma(Z)");
    if (!rep.collapse) rep.components.push_back("cylinder over the planar caustic");
    return rep;
}

const std::vector<KnownCurve>& known_curves() {
    static const std::vector<KnownCurve> table = [] {
        std::vector<KnownCurve> t;
        {
            // paraboloid (r^2 - 2zt)/2 from [0:0:z0:1], profile parametrized by [uv : u^2/2 : v^2]
            KnownCurve kc;
            kc.name = "parabaxe_sextic";
            kc.params = {"u", "v", "z0"};
            kc.targets = {"r", "z", "t"};
            std::vector<std::string> all{"r", "z", "t", "u", "v", "z0"};
            kc.implicit.push_back(P(
                "27*r^4*z^2 - 512*z^3*t^3 + 288*z^2*r^2*t^2 + 108*r^4*t^2*z0^4"
                " + (3072*z*t^5 - 24*r^4*z*t - 512*t^6 - 6144*z^2*t^4 + 4992*z*r^2*t^3 + 4096*z^3*t^3"
                " - 1536*z^2*r^2*t^2 - 2112*r^2*t^4 - 1068*r^4*t^2 - 8*r^6)*z0^3"
                " + (-1536*z*t^5 - 10560*z*r^2*t^3 - 6144*z^3*t^3 + 6144*z^2*t^4 + 288*r^2*t^4 + 108*r^4*z^2"
                " - 168*r^4*z*t + 3195*r^4*t^2 + 72*r^6 + 2688*z^2*r^2*t^2)*z0^2"
                " + (-1536*z^2*t^4 + 3072*z^3*t^3 + 90*r^4*z*t - 108*r^4*z^2 - 1728*r^4*t^2 - 1536*z^2*r^2*t^2"
                " + 4032*z*r^2*t^3 - 162*r^6)*z0",
                all));
            kc.parametrizations.push_back({P("2*u^3*v^3*(1 - 2*z0)", kc.params),
                                           P("(4*z0^2*v^6 + 6*z0*v^2*u^2*(v^2 - u^2) + u^4*(u^2 + 6*v^2))/4", kc.params),
                                           P("(2*z0 - 1)*v^4*(2*z0*v^2 - 3*u^2)/2", kc.params)});
            t.push_back(kc);
        }
        {
            KnownCurve kc;
            kc.name = "parabaxe_quartic";
            kc.params = {"u", "v"};
            kc.targets = {"r", "z", "t"};
            kc.implicit.push_back(P("27*r^4 - 512*z*t^3 + 288*r^2*t^2", {"r", "z", "t", "u", "v"}));
            kc.parametrizations.push_back(
                {P("2*u^3*v^3", kc.params), P("u^4*(u^2 + 6*v^2)/4", kc.params), P("-v^4*(-3*u^2)/2", kc.params)});
            t.push_back(kc);
        }
        {
            // parabolic cylinder y^2 - 2xt from [1-v^2 : 2v : z0 : 0], base parametrized by [a^2/2 : ab : b^2]
            KnownCurve kc;
            kc.name = "parabcyl_cubic";
            kc.params = {"a", "b", "v"};
            kc.targets = {"x", "y", "t"};
            kc.implicit.push_back(
                P("4*y^3*(1 - v^6) + (-27*t^3 + 108*x*t^2 - 72*y^2*t + 24*x*y^2 - 108*x^2*t)*(v + v^5)"
                  " + 12*y*(2*x + 3*t + y)*(2*x + 3*t - y)*(v^2 - v^4)"
                  " + 2*(16*x^3 + 27*t^3 - 36*x^2*t - 24*x*y^2 + 216*x*t^2 - 144*y^2*t)*v^3",
                  {"x", "y", "t", "a", "b", "v"}));
            kc.parametrizations.push_back(
                {P("2*v*(1 - v^2)*a^3*b^3 + 12*v^2*a^2*b^4 - 6*v*(1 - v^2)*a*b^5 + (1 - v^2)^2*b^6", kc.params),
                 P("-4*v^2*a^3*b^3 + 6*v*(1 - v^2)*a^2*b^4 + 12*v^2*a*b^5 - 2*v*(1 - v^2)*b^6", kc.params),
                 P("2*(1 + v^2)^2*b^6", kc.params)});
            t.push_back(kc);
        }
        {
            // paraboloid (x^2 + y^2 - 2zt)/2 from [1 : e*i : z0 : 0]
            KnownCurve kc;
            kc.name = "cas1_pair";
            kc.params = {"x", "y", "t", "z0"};
            kc.targets = {"X", "Y", "Z", "T"};
            std::vector<std::string> all{"X", "Y", "Z", "T", "x", "y", "t", "z0"};
            for (const char* e : {"1", "(-1)"}) {
                std::string ie = "i*" + std::string(e), w = "(x + " + ie + "*y)";
                std::vector<MultiPoly> psi{P("-" + w + "^2 + t^2", kc.params),
                                           P(ie + "*(" + w + "^2 + t^2)", kc.params),
                                           P("-z0*t^2 + 2*" + w + "*t", kc.params), P("-2*t^2*z0", kc.params)};
                kc.implicit.push_back(P("z0*" + ie + "*X + z0*Y + " + ie + "*T", all));
                kc.parametrizations.push_back(psi);
                kc.implicit.push_back(P("(Z - T/2)^2 + X^2 + Y^2", all));
                kc.parametrizations.push_back(psi);
            }
            t.push_back(kc);
        }
        {
            // saddle xy - zt from [0:0:1:0], chart z = xy, t = 1
            KnownCurve kc;
            kc.name = "saddle_parabolas";
            kc.params = {"x", "y"};
            kc.targets = {"X", "Y", "Z", "T"};
            std::vector<std::string> all{"X", "Y", "Z", "T", "x", "y"};
            for (const char* s : {"1", "(-1)"}) {
                std::string e(s);
                std::vector<MultiPoly> psi{P("2*y + " + e + "*2*x", kc.params), P("2*x + " + e + "*2*y", kc.params),
                                           P("x^2 + y^2 - 1 + " + e + "*2*x*y", kc.params), P(e + "*2", kc.params)};
                kc.implicit.push_back(P("X - " + e + "*Y", all));
                kc.parametrizations.push_back(psi);
                kc.implicit.push_back(P(e + "*T*Z - (X^2 - T^2)/2", all));
                kc.parametrizations.push_back(psi);
            }
            t.push_back(kc);
        }
        return t;
    }();
    return table;
}

const KnownCurve& known_curve(const std::string& name) {
    for (const auto& kc : known_curves())
        if (kc.name == name) return kc;
    throw std::invalid_argument("unknown curve '" + name + "'");
}

CurveVerdict verify_known_curve(const KnownCurve& kc) {
    CurveVerdict v;
    v.ok = true;
    for (std::size_t k = 0; k < kc.implicit.size(); ++k) {
        std::map<std::string, MultiPoly> sub;
        for (std::size_t j = 0; j < kc.targets.size(); ++j) sub[kc.targets[j]] = kc.parametrizations[k][j];
        for (const auto& p : kc.params) sub[p] = MultiPoly::variable(kc.params, p);
        MultiPoly r = kc.implicit[k].substitute(sub).with_vars(kc.params);
        v.ok = v.ok && r.is_zero();
        v.residuals.push_back(r);
    }
    return v;
}

SigmaClosure sigma_closure_parab_cylinder(const GaussianRational& v, const GaussianRational& z0) {
    std::vector<std::string> xyz{"x", "y", "z"};
    MultiPoly x = MultiPoly::variable(xyz, "x"), y = MultiPoly::variable(xyz, "y"), z = MultiPoly::variable(xyz, "z");
    SigmaClosure sc;
    GaussianRational w = v * v + GaussianRational(1);
    if (!w.is_zero()) {
        sc.kind = "conic";
        sc.equation = (x * x + y * y) * (z0 * z0) - z * z * (w * w);
    } else if (!z0.is_zero()) {
        sc.kind = "line";
        sc.equation = y + x * v;
    } else {
        sc.kind = "point";
        sc.point = ProjPoint::exact({1, -v, 0, 0});
        sc.equation = MultiPoly(xyz);
    }
    return sc;
}

std::string catalogued_family(const MultiPoly& F) {
    if (F.vars() != xyzt()) return "";
    const auto& vs = xyzt();
    if (proportional(F, P("x^2 + y^2 - 2*z*t", vs))) return "paraboloid";
    if (proportional(F, P("x*y - z*t", vs))) return "saddle";
    if (proportional(F, P("y^2 - 2*x*t", vs))) return "parabolic_cylinder";
    return "";
}

std::vector<std::string> known_curves_of(const std::string& family) {
    if (family == "paraboloid") return {"parabaxe_sextic", "parabaxe_quartic", "cas1_pair"};
    if (family == "saddle") return {"saddle_parabolas"};
    if (family == "parabolic_cylinder") return {"parabcyl_cubic"};
    return {};
}

std::vector<std::vector<MultiPoly>> catalogued_implicit(const Scene& s) {
    const auto& vs = xyzt();
    const auto& S = s.S.coords();
    std::vector<std::vector<MultiPoly>> out;
    if (proportional(s.F, P("x*y - z*t", vs)) && S[0].is_zero() && S[1].is_zero() && S[3].is_zero()) {
        out.push_back({P("x - y", vs), P("t*z - (x^2 - t^2)/2", vs)});
        out.push_back({P("x + y", vs), P("-t*z - (x^2 - t^2)/2", vs)});
        return out;
    }
    if (proportional(s.F, P("x^2 + y^2 - 2*z*t", vs)) && S[3].is_zero() && S[0].is_one() &&
        (S[1] == GaussianRational::i() || S[1] == -GaussianRational::i())) {
        GaussianRational ie = S[1], z0 = S[2];
        MultiPoly x = MultiPoly::variable(vs, "x"), y = MultiPoly::variable(vs, "y"), t = MultiPoly::variable(vs, "t");
        out.push_back({x * (z0 * ie) + y * z0 + t * ie, P("(z - t/2)^2 + x^2 + y^2", vs)});
    }
    return out;
}

}  // namespace caustic
