#include "caustic/degree_calc.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "caustic/hensel.hpp"
#include "caustic/intersection.hpp"
#include "caustic/special_families.hpp"

namespace caustic {

namespace {

MultiPoly linear_form(const std::vector<long>& a) {
    MultiPoly f(xyzt());
    for (int k = 0; k < 4; ++k)
        if (a[k] != 0) f += MultiPoly::variable(xyzt(), xyzt()[k]) * GaussianRational(a[k]);
    return f;
}

MultiPoly apply_form(const MultiPoly& A, const Quad4& v) {
    MultiPoly r(xyzt());
    for (int k = 0; k < 4; ++k) {
        Exponent e(4, 0);
        e[k] = 1;
        GaussianRational a = A.coefficient(e);
        if (!a.is_zero()) r += v[k] * a;
    }
    return r;
}

// Nonvanishing of a linear form at a point, exact or up to a relative tolerance.
bool form_nonzero(const MultiPoly& A, const ProjPoint& m) {
    if (m.is_exact()) return !A.evaluate(m.coords()).is_zero();
    auto z = m.approx();
    return std::abs(A.evaluate(z)) > 1e-8 * std::max(A.magnitude(z), 1e-300);
}

}  // namespace

std::pair<MultiPoly, MultiPoly> make_generic_forms(const CausticData& c, std::uint64_t seed,
                                                   const std::vector<ProjPoint>& base_points,
                                                   std::vector<std::string>* log) {
    const MultiPoly& F = c.scene.F;
    const ProjPoint& S = c.scene.S;
    for (std::uint64_t sub = 0; sub < 16; ++sub) {
        std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(sub)};
        std::mt19937_64 rng(sq);
        std::uniform_int_distribution<long> dist(-9, 9);
        std::vector<long> a(4), b(4);
        for (auto& x : a) x = dist(rng);
        for (auto& x : b) x = dist(rng);
        MultiPoly A = linear_form(a), B = linear_form(b);
        std::vector<std::string> checks;
        auto fail = [&](const std::string& why) {
            if (log) log->push_back("sub-seed " + std::to_string(sub) + " rejected: " + why);
            return false;
        };
        auto run = [&]() {
            if (A.is_zero() || B.is_zero()) return fail("zero form");
            bool dependent = true;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) dependent = dependent && a[i] * b[j] == a[j] * b[i];
            if (dependent) return fail("A, B dependent");
            checks.push_back("A, B independent");
            if (!form_nonzero(A, S) || !form_nonzero(B, S)) return fail("vanishes at S");
            checks.push_back("A(S) != 0 and B(S) != 0");
            MultiPoly As = apply_form(A, c.sigma), Bs = apply_form(B, c.sigma);
            if (As.is_zero() || As.divisible_by(F)) return fail("A(sigma) vanishes on Z");
            checks.push_back("A(sigma) not identically zero on Z");
            MultiPoly K1 = As * B - A * Bs;
            if (K1.is_zero() || K1.divisible_by(F)) return fail("K1 vanishes on Z");
            checks.push_back("K1 not identically zero on Z");
            for (const auto& m : base_points) {
                if (!form_nonzero(A, m) || !form_nonzero(B, m)) return fail("vanishes at a base point");
                if (m.is_exact()) {
                    std::vector<GaussianRational> sig(4);
                    bool zero = true;
                    for (int k = 0; k < 4; ++k) {
                        sig[k] = c.sigma[k].evaluate(m.coords());
                        zero = zero && sig[k].is_zero();
                    }
                    if (!zero && !ProjPoint::exact(sig).same(m)) {
                        GaussianRational as = A.evaluate(sig), bs = B.evaluate(sig);
                        if (as * B.evaluate(m.coords()) == A.evaluate(m.coords()) * bs)
                            return fail("K1 transversality");
                    }
                }
                checks.push_back("A(m) B(m) != 0 at " + m.str());
            }
            return true;
        };
        if (run()) {
            if (log) {
                std::ostringstream os;
                os << "sub-seed " << sub << ": A = " << A.str() << ", B = " << B.str();
                log->push_back(os.str());
                for (auto& s : checks) log->push_back(s);
            }
            return {A, B};
        }
    }
    throw std::runtime_error("could not certify genericity; change seed");
}

PolarData k_polys(const CausticData& c, const MultiPoly& A, const MultiPoly& B,
                  const std::optional<QuadFamily>& family) {
    if (!c.has_family) throw std::invalid_argument("planar mirror has no quadratic family");
    DegenerateReport dr = degenerate_check(c);
    if (dr.kind != DegenerateKind::none)
        throw std::invalid_argument("degenerate scene (" + dr.description + "); see degenerate_check");
    PolarData pd;
    pd.A = A;
    pd.B = B;
    QuadFamily f = family ? *family : QuadFamily{c.alpha, c.beta, c.gamma};
    pd.alpha = f.alpha;
    pd.beta = f.beta;
    pd.gamma = f.gamma;
    pd.reduced = family.has_value() && f.alpha != c.alpha;
    MultiPoly As = apply_form(A, c.sigma), Bs = apply_form(B, c.sigma);
    pd.K1 = As * B - A * Bs;
    pd.K2 = f.alpha * As * As - f.beta * As * A + f.gamma * A * A;
    pd.K3 = f.alpha * Bs * Bs - f.beta * Bs * B + f.gamma * B * B;
    int d = c.scene.d;
    int removed = (d - 1) - (f.alpha.is_zero() ? 0 : f.alpha.total_degree());
    auto expect = [](const MultiPoly& p, int deg, const char* name) {
        if (p.is_zero()) return;
        auto h = p.homogeneous_degree();
        if (!h || *h != deg) {
            std::ostringstream os;
            os << name << " has degree " << (h ? std::to_string(*h) : std::string("(inhomogeneous)")) << ", expected "
               << deg;
            throw std::logic_error(os.str());
        }
    };
    expect(pd.K1, 2 * d - 1, "K1");
    expect(pd.K2, 5 * (d - 1) - removed, "K2");
    expect(pd.K3, 5 * (d - 1) - removed, "K3");
    pd.polar_degree = pd.reduced ? 0 : (d - 1) * (10 * d - 9);
    return pd;
}

ReducedFamily reduce_family(const CausticData& c) {
    ReducedFamily rf{{c.alpha, c.beta, c.gamma}, 0};
    if (c.delta.is_constant()) return rf;
    for (;;) {
        auto a = rf.family.alpha.divide_exact(c.delta);
        auto b = rf.family.beta.divide_exact(c.delta);
        auto g = rf.family.gamma.divide_exact(c.delta);
        if (!a || !b || !g) return rf;
        rf.family = {*a, *b, *g};
        ++rf.steps;
    }
}

std::vector<int> order_schedule(int max_order) {
    if (max_order < 3) throw std::invalid_argument("--max-order must be at least 3");
    std::vector<int> s;
    for (int o : default_schedule())
        if (o <= max_order) s.push_back(o);
    if (s.empty() || s.back() < max_order) s.push_back(max_order);
    if (s.size() < 2) s.insert(s.begin(), max_order - 1);
    return s;
}

long generic_mdeg(int d) {
    if (d < 1) throw std::invalid_argument("degree must be at least 1");
    return static_cast<long>(d) * (d - 1) * (8 * d - 7);
}

MdegResult mdeg_with_multiplicity(const Scene& scene, const MdegOptions& opts) {
    int d = scene.d;
    if (d < 2) throw std::invalid_argument("mdeg needs a mirror of degree at least 2");
    MdegResult r;
    r.bezout_total = d * (d - 1) * (10 * d - 9);
    CausticData c = build_caustic(scene);
    DegenerateReport dr = degenerate_check(c);
    if (dr.kind != DegenerateKind::none) {
        r.path = "degenerate";
        r.description = dr.description;
        if (dr.kind == DegenerateKind::light_only) {
            r.point_caustic = scene.S;
            r.mdeg = 0;
            r.flags.push_back("curve-or-point caustic");
        }
        return r;
    }
    const MultiPoly& F = scene.F;
    const auto& S = scene.S.coords();
    bool revolution = is_revolution(F), cylinder = is_cylinder(F);
    if (d == 2 || revolution || cylinder) {
        std::string fam = d == 2 ? "quadric" : revolution ? "surface of revolution" : "cylinder";
        r.flags.push_back("hypotheses: catalogued family (" + fam + ")");
    } else if (opts.assert_hypotheses) {
        r.warnings.push_back("hypotheses of the degree formula user-asserted");
    } else {
        r.warnings.push_back(
            "hypotheses of the degree formula are not machine-checked for this surface; pass --assert-hypotheses");
    }
    unsigned seed = static_cast<unsigned>(opts.seed);

    if (revolution && S[0].is_zero() && S[1].is_zero()) {
        if (auto pt = point_caustic_probe(c, seed)) {
            r.path = "point";
            r.point_caustic = pt;
            r.mdeg = 0;
            r.flags.push_back("curve-or-point caustic");
            r.description = "caustic reduced to the point " + pt->str();
            return r;
        }
        PlanarScene ps = make_planar_scene(profile_of_revolution(F), {0, S[2], S[3]});
        r.path = "revolution";
        r.mdeg = planar_mdeg(ps, seed);
        r.description = "light on the axis: axis line plus the revolution surface of the planar caustic";
        return r;
    }

    BaseSet bs;
    try {
        bs = enumerate_base_points(c, opts.candidates);
    } catch (const InfiniteBaseError&) {
        if (auto pt = point_caustic_probe(c, seed)) {
            r.path = "point";
            r.point_caustic = pt;
            r.mdeg = 0;
            r.flags.push_back("curve-or-point caustic");
            r.description = "caustic reduced to the point " + pt->str();
            return r;
        }
        throw;
    }

    ReducedFamily rf = reduce_family(c);
    bool reduced = rf.steps > 0;
    r.path = reduced ? "reduced" : "standard";
    std::vector<ProjPoint> pts;
    for (const auto& b : bs.points) pts.push_back(b.m);
    std::vector<std::string> log;
    auto [A, B] = make_generic_forms(c, opts.seed, pts, &log);
    PolarData pd = k_polys(c, A, B, reduced ? std::optional<QuadFamily>(rf.family) : std::nullopt);
    pd.seed = opts.seed;
    pd.genericity_log = log;
    int degK1 = pd.K1.total_degree(), degK2 = pd.K2.total_degree();
    r.bezout_total = d * (degK1 * degK2 - 2 * (2 * d - 2));

    std::vector<int> schedule = order_schedule(opts.max_order);
    int sum = 0;
    for (const auto& b : bs.points) {
        LedgerEntry e;
        e.point = b;
        if (b.m.is_exact()) {
            LocalChart ch = hensel_chart(F, b.m, schedule.back());
            TruncSeries2 f = compose(pd.K1, ch), g = compose(pd.K2, ch);
            auto tr = local_intersection(
                [&](int N) { return std::make_pair(f.truncated(N), g.truncated(N)); }, schedule, seed);
            e.multiplicity = tr.value;
            e.method = "series";
        } else {
            NumChart ch = hensel_chart_numeric(F, b.m, 6);
            NumSeries2 f = compose(pd.K1, ch), g = compose(pd.K2, ch);
            auto z = ch.center;
            auto v = transversal_intersection(f, g, pd.K1.magnitude(z), pd.K2.magnitude(z));
            if (!v)
                throw std::runtime_error("numeric base point " + b.m.str() +
                                         " is not transversal; supply an exact chart center");
            e.multiplicity = *v;
            e.numeric = true;
            e.method = "transversal";
        }
        if (!reduced && e.multiplicity == 0)
            r.warnings.push_back("base point " + b.m.str() + " has zero local intersection with V(K1,K2)");
        sum += e.multiplicity;
        r.ledger.push_back(e);
    }
    if (sum > r.bezout_total) throw std::logic_error("local intersections exceed the total degree");
    r.mdeg = r.bezout_total - sum;
    if (*r.mdeg == 0) r.flags.push_back("curve-or-point caustic");
    r.polar = pd;
    return r;
}

}  // namespace caustic
