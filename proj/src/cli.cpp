#include "caustic/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "caustic/base_points.hpp"
#include "caustic/degree_calc.hpp"
#include "caustic/engine.hpp"
#include "caustic/sampler.hpp"
#include "caustic/special_families.hpp"
#include "caustic/surface_io.hpp"

namespace caustic {

namespace {

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string load(const std::string& path) {
    try {
        return read_file(path);
    } catch (const std::runtime_error& e) {
        throw InputError(e.what());
    }
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

ProjPoint parse_point(const std::string& text) {
    std::string s = text;
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw InputError("point must look like [a,b,c,d]: " + text);
    s = s.substr(1, s.size() - 2);
    std::vector<GaussianRational> c;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) c.push_back(parse_constant(item));
    if (c.size() != 4) throw InputError("point needs 4 coordinates: " + text);
    bool zero = true;
    for (const auto& v : c) zero = zero && v.is_zero();
    if (zero) throw InputError("zero point: " + text);
    return ProjPoint::exact(c);
}

std::string identity_verdict(const IdentityCheck& ic) {
    if (ic.exact) return "exact";
    if (ic.mod_F) return "modulo F";
    return "fail (residual " + ic.residual.str() + ")";
}

void add_known_curves(ReportEntries& e, const std::vector<std::string>& names, bool& ok) {
    int k = 1;
    for (const auto& name : names) {
        CurveVerdict v = verify_known_curve(known_curve(name));
        std::string res = "0";
        if (!v.ok) {
            res.clear();
            for (const auto& r : v.residuals)
                if (!r.is_zero()) res += (res.empty() ? "" : "; ") + r.str();
            ok = false;
        }
        e.push_back({"known_curve." + std::to_string(k), name});
        e.push_back({"known_curve.residual." + std::to_string(k), res});
        ++k;
    }
}

int cmd_verify(const std::string& path, std::uint64_t seed, std::ostream& out) {
    Scene s = parse_scene(load(path));
    ReportEntries e;
    bool ok = true;
    int d = s.d;
    e.push_back({"surface", s.F.str()});
    e.push_back({"degree", std::to_string(d)});
    e.push_back({"light", s.S.str()});
    e.push_back({"homogeneity", "ok"});

    MultiPoly euler(xyzt());
    for (int k = 0; k < 4; ++k) euler += MultiPoly::variable(xyzt(), xyzt()[k]) * s.F.differentiate(k);
    bool euler_ok = euler == s.F * GaussianRational(d);
    ok = ok && euler_ok;
    e.push_back({"euler", euler_ok ? "ok" : "fail"});

    CausticData c = build_caustic(s);
    bool sigma_ok = true;
    for (const auto& comp : c.sigma) {
        if (comp.is_zero()) continue;
        auto h = comp.homogeneous_degree();
        sigma_ok = sigma_ok && h && *h == 2 * (d - 1);
    }
    ok = ok && sigma_ok;
    e.push_back({"sigma_degree", sigma_ok ? "ok" : "fail"});
    if (!c.has_family) {
        e.push_back({"family", "none (planar mirror: the caustic is the reflected source)"});
        out << emit_report(e);
        return ok ? 0 : 1;
    }

    auto ledger = [&](const char* name, const MultiPoly& p, int expect) {
        std::string v;
        if (p.is_zero()) {
            v = "zero";
        } else {
            auto h = p.homogeneous_degree();
            bool good = h && *h == expect;
            ok = ok && good;
            v = (h ? std::to_string(*h) : std::string("inhomogeneous")) + (good ? "" : " (expected " +
                                                                                          std::to_string(expect) + ")");
        }
        e.push_back({std::string("degree.") + name, v});
    };
    ledger("alpha", c.alpha, d - 1);
    ledger("beta", c.beta, 3 * d - 4);
    ledger("gamma", c.gamma, 5 * d - 7);

    try {
        multidegree_check(c);
        e.push_back({"multidegree", "ok"});
    } catch (const std::runtime_error& ex) {
        ok = false;
        e.push_back({"multidegree", std::string("fail: ") + ex.what()});
    }

    DegenerateReport dr = degenerate_check(c);
    e.push_back({"degenerate", to_string(dr.kind)});
    if (dr.kind != DegenerateKind::none) e.push_back({"degenerate.description", dr.description});

    ThetaResult th = theta_and_square_test(c, graph_chart(s.F));
    e.push_back({"theta", th.theta.str()});
    e.push_back({"theta_square", yes_no(th.is_square)});
    e.push_back({"theta_square.decided_on", th.decided_on});
    if (th.root) e.push_back({"theta_root", th.root->str()});

    std::vector<ProjPoint> pts = sample_surface_points(s.F, 100, static_cast<unsigned>(seed));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    double worst = 0;
    int used = 0, skipped = 0;
    for (const auto& m : pts) {
        bool usable = true;
        for (int k = 0; k < 10 && usable; ++k) {
            std::complex<double> l0(nd(rng), nd(rng)), l1(nd(rng), nd(rng));
            try {
                worst = std::max(worst, ramification_det_check(c, m.approx(), l0, l1));
            } catch (const std::invalid_argument&) {
                usable = false;
            }
        }
        usable ? ++used : ++skipped;
    }
    bool dfac = used > 0 && worst < 1e-9;
    ok = ok && (dfac || used == 0);
    e.push_back({"dfactor.points", std::to_string(used)});
    e.push_back({"dfactor.skipped", std::to_string(skipped)});
    std::ostringstream w;
    w << worst;
    e.push_back({"dfactor.max_residual", w.str()});
    e.push_back({"dfactor", used == 0 ? "no usable points" : dfac ? "ok" : "fail"});

    std::string fam = catalogued_family(s.F);
    if (!fam.empty()) {
        e.push_back({"catalogued", fam});
        add_known_curves(e, known_curves_of(fam), ok);
    }
    out << emit_report(e);
    return ok ? 0 : 1;
}

std::optional<std::vector<ProjPoint>> candidates_of(const std::vector<std::string>& texts) {
    if (texts.empty()) return std::nullopt;
    std::vector<ProjPoint> pts;
    for (const auto& t : texts) pts.push_back(parse_point(t));
    return pts;
}

int cmd_base_points(const std::string& path, const std::vector<std::string>& cand, std::ostream& out) {
    Scene s = parse_scene(load(path));
    CausticData c = build_caustic(s);
    ReportEntries head{{"surface", s.F.str()}, {"light", s.S.str()}};
    BaseSet bs;
    try {
        bs = enumerate_base_points(c, candidates_of(cand));
    } catch (const InfiniteBaseError& ex) {
        head.push_back({"base_points", "infinite"});
        head.push_back({"witness", ex.witness()});
        out << emit_report(head);
        return 1;
    }
    head.push_back({"base_points", std::to_string(bs.points.size())});
    for (std::size_t k = 0; k < bs.rejected.size(); ++k)
        head.push_back({"rejected." + std::to_string(k + 1), bs.rejected[k]});
    out << emit_report(head);
    for (std::size_t k = 0; k < bs.points.size(); ++k) {
        const BasePoint& b = bs.points[k];
        std::string n = std::to_string(k + 1);
        std::string tags;
        for (const auto& t : b.cls.case_tags) tags += (tags.empty() ? "" : ",") + t;
        ReportEntries e{{"base_point." + n, b.m.str()},
                        {"cases." + n, tags},
                        {"in_M." + n, yes_no(b.cls.in_M)},
                        {"in_W." + n, yes_no(b.cls.in_W)}};
        for (const auto& [key, val] : b.cls.witnesses) e.push_back({"witness." + n + "." + key, val});
        if (!b.minimal_data.empty()) e.push_back({"minimal_data." + n, b.minimal_data});
        out << "\n" << emit_report(e);
    }
    return 0;
}

int cmd_mdeg(const std::string& path, const MdegOptions& opts, std::ostream& out) {
    Scene s = parse_scene(load(path));
    MdegResult r = mdeg_with_multiplicity(s, opts);
    ReportEntries e;
    e.push_back({"mdeg", r.mdeg ? std::to_string(*r.mdeg) : "undefined"});
    e.push_back({"bezout_total", std::to_string(r.bezout_total)});
    e.push_back({"path", r.path});
    e.push_back({"seed", std::to_string(opts.seed)});
    for (std::size_t k = 0; k < r.ledger.size(); ++k) {
        std::string n = std::to_string(k + 1);
        e.push_back({"base_point." + n, r.ledger[k].point.m.str()});
        e.push_back({"intersection." + n, std::to_string(r.ledger[k].multiplicity)});
        e.push_back({"method." + n, r.ledger[k].method});
    }
    if (r.point_caustic) e.push_back({"point_caustic", r.point_caustic->str()});
    if (!r.description.empty()) e.push_back({"description", r.description});
    if (r.polar) {
        e.push_back({"form.A", r.polar->A.str()});
        e.push_back({"form.B", r.polar->B.str()});
        if (!r.polar->reduced) e.push_back({"polar_degree", std::to_string(r.polar->polar_degree)});
    }
    for (std::size_t k = 0; k < r.flags.size(); ++k) e.push_back({"flags." + std::to_string(k + 1), r.flags[k]});
    for (std::size_t k = 0; k < r.warnings.size(); ++k)
        e.push_back({"warnings." + std::to_string(k + 1), r.warnings[k]});
    out << emit_report(e);
    return r.mdeg ? 0 : 1;
}

std::array<std::array<double, 2>, 2> parse_ranges(const std::string& text) {
    std::array<std::array<double, 2>, 2> r{};
    auto comma = text.find(',');
    if (comma == std::string::npos) throw InputError("range must look like a:b,c:d");
    std::string parts[2] = {text.substr(0, comma), text.substr(comma + 1)};
    for (int k = 0; k < 2; ++k) {
        // the separator is the first ':' after a possible leading sign
        auto colon = parts[k].find(':', 1);
        if (colon == std::string::npos) throw InputError("range must look like a:b,c:d");
        try {
            std::size_t used = 0;
            r[k][0] = std::stod(parts[k].substr(0, colon), &used);
            if (used != colon) throw std::invalid_argument("trailing text");
            std::string hi = parts[k].substr(colon + 1);
            r[k][1] = std::stod(hi, &used);
            if (used != hi.size()) throw std::invalid_argument("trailing text");
        } catch (const std::logic_error&) {
            throw InputError("bad number in range '" + text + "'");
        }
    }
    return r;
}

std::array<int, 2> parse_steps(const std::string& text) {
    std::array<int, 2> st{};
    auto comma = text.find(',');
    if (comma == std::string::npos) throw InputError("steps must look like n,m");
    try {
        std::size_t u1 = 0, u2 = 0;
        std::string a = text.substr(0, comma), b = text.substr(comma + 1);
        st[0] = std::stoi(a, &u1);
        st[1] = std::stoi(b, &u2);
        if (u1 != a.size() || u2 != b.size()) throw std::invalid_argument("trailing text");
    } catch (const std::logic_error&) {
        throw InputError("bad steps '" + text + "'");
    }
    return st;
}

int cmd_sample(const std::string& path, const std::string& chart, const std::string& range, const std::string& steps,
               double tol, const std::string& out_path, std::ostream& out, std::ostream& err) {
    Scene s = parse_scene(load(path));
    SampleGrid g;
    try {
        g.chart = parse_chart(chart);
    } catch (const std::invalid_argument& ex) {
        throw InputError(ex.what());
    }
    g.ranges = parse_ranges(range);
    g.steps = parse_steps(steps);
    g.real_filter_tol = tol;
    SampleResult r = sample_caustic(s, g);
    std::vector<CloudRow> rows;
    rows.reserve(r.rows.size());
    for (const auto& row : r.rows) rows.push_back(row.row);
    std::size_t rejected = 0;
    std::ostream* report = &out;
    if (out_path.empty()) {
        CloudOutput co = emit_pointcloud(rows, "");
        out << co.bytes;
        rejected = co.rejected;
        report = &err;
    } else {
        try {
            rejected = write_pointcloud(rows, out_path);
        } catch (const std::runtime_error& ex) {
            throw InputError(ex.what());
        }
    }
    ReportEntries e{{"points", std::to_string(rows.size() - rejected)},
                    {"nodes", std::to_string(r.nodes)},
                    {"skipped_nodes", std::to_string(r.skipped_nodes)},
                    {"dropped", std::to_string(r.dropped)},
                    {"rejected", std::to_string(rejected)}};
    if (!out_path.empty()) e.push_back({"output", out_path});
    *report << emit_report(e);
    return 0;
}

int cmd_planar(const std::string& path, unsigned seed, std::ostream& out) {
    CurveScene cs = parse_curve_scene(load(path));
    if (cs.light.dim() != 3) throw InputError("planar light needs 3 coordinates");
    PlanarScene ps = make_planar_scene(cs.G, cs.light.coords());
    PlanarData pd = planar_data(ps);
    ReportEntries e{{"curve", cs.G.str()},
                    {"degree", std::to_string(cs.d)},
                    {"light", cs.light.str()},
                    {"delta", pd.delta.str()},
                    {"n", pd.n.str()},
                    {"hdet", pd.hdet.str()}};
    for (int k = 0; k < 3; ++k) e.push_back({"phi." + cs.G.vars()[k], pd.phi[k].str()});
    bool ok = true;
    try {
        PlanarFamily pf = planar_quad_family(ps);
        e.push_back({"alpha", pf.alpha.str()});
        e.push_back({"beta", pf.beta.str()});
        e.push_back({"gamma", pf.gamma.str()});
        e.push_back({"identity.beta", "modulo G"});
        e.push_back({"identity.gamma", "modulo G"});
    } catch (const std::logic_error& ex) {
        ok = false;
        e.push_back({"identity", std::string("fail: ") + ex.what()});
    }
    try {
        e.push_back({"mdeg", std::to_string(planar_mdeg(ps, seed))});
    } catch (const std::runtime_error& ex) {
        e.push_back({"mdeg", std::string("undefined: ") + ex.what()});
    }
    out << emit_report(e);
    return ok ? 0 : 1;
}

int cmd_family(const std::string& kind, const std::string& path, unsigned seed, std::ostream& out) {
    CurveScene cs = parse_curve_scene(load(path));
    ReportEntries e;
    bool ok = true;
    if (kind == "revolution") {
        if (!cs.radial) throw InputError("a revolution profile uses the variables r, z, t");
        const auto& L = cs.light.coords();
        std::vector<GaussianRational> S0;
        if (L.size() == 3 && L[0].is_zero()) S0 = L;
        else if (L.size() == 4 && L[0].is_zero() && L[1].is_zero()) S0 = {L[0], L[2], L[3]};
        else throw InputError("the light must lie on the axis: [0, z0, t0] or [0, 0, z0, t0]");
        RevolutionReport rr = revolution_caustic_check(make_planar_scene(cs.G, S0), seed);
        e.push_back({"surface", rr.F.str()});
        for (const auto* ic : {&rr.alpha, &rr.beta, &rr.gamma}) {
            e.push_back({"identity." + ic->name, identity_verdict(*ic)});
            ok = ok && (ic->exact || ic->mod_F);
        }
        e.push_back({"focal", yes_no(rr.focal)});
        if (rr.point_caustic) e.push_back({"point_caustic", rr.point_caustic->str()});
        if (rr.mdeg) e.push_back({"mdeg", std::to_string(*rr.mdeg)});
        for (std::size_t k = 0; k < rr.components.size(); ++k)
            e.push_back({"components." + std::to_string(k + 1), rr.components[k]});
        if (catalogued_family(rr.F) == "paraboloid")
            add_known_curves(e, {"parabaxe_sextic", "parabaxe_quartic"}, ok);
    } else if (kind == "cylinder") {
        if (cs.radial) throw InputError("a cylinder section uses the variables x, y, t");
        if (cs.light.dim() != 4) throw InputError("a cylinder scene needs a light of P^3 (4 coordinates)");
        CylinderReport cr = cylinder_caustic_check(cs.G, cs.light);
        e.push_back({"surface", cr.F.str()});
        e.push_back({"hessian_zero", yes_no(cr.hessian_zero)});
        e.push_back({"gamma_zero", yes_no(cr.gamma_zero)});
        e.push_back({"identity.alpha", identity_verdict(cr.alpha)});
        e.push_back({"identity.beta", identity_verdict(cr.beta)});
        e.push_back({"identity.gamma", cr.gamma_zero ? "exact (gamma = 0)" : "fail"});
        ok = cr.hessian_zero && cr.gamma_zero && (cr.alpha.exact || cr.alpha.mod_F) && (cr.beta.exact || cr.beta.mod_F);
        e.push_back({"collapse", yes_no(cr.collapse)});
        for (std::size_t k = 0; k < cr.components.size(); ++k)
            e.push_back({"components." + std::to_string(k + 1), cr.components[k]});
        const auto& L = cs.light.coords();
        if (catalogued_family(cr.F) == "parabolic_cylinder" && L[3].is_zero() && !L[1].is_zero())
            add_known_curves(e, {"parabcyl_cubic"}, ok);
    } else {
        throw InputError("family must be 'revolution' or 'cylinder'");
    }
    out << emit_report(e);
    return ok ? 0 : 1;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Caustics by reflection of algebraic surfaces", "caustic"};
    app.require_subcommand(1);

    std::string file, kind, chart = "t=1", range = "-4:4,-4:4", steps = "200,200", out_path;
    std::uint64_t seed = 0;
    int max_order = 24;
    bool assert_hyp = false;
    double tol = 1e-9;
    std::vector<std::string> cand;

    auto* verify = app.add_subcommand("verify", "structural identities of a scene");
    verify->add_option("scene", file, "scene file")->required();
    verify->add_option("--seed", seed, "seed of the numeric sweep");

    auto* base = app.add_subcommand("base-points", "classified base points of the caustic map");
    base->add_option("scene", file, "scene file")->required();
    base->add_option("--candidate", cand, "candidate point [a,b,c,d]; repeatable");

    auto* mdeg = app.add_subcommand("mdeg", "degree with multiplicity of the caustic");
    mdeg->add_option("scene", file, "scene file")->required();
    mdeg->add_option("--seed", seed, "seed of the generic forms");
    mdeg->add_option("--max-order", max_order, "largest series order");
    mdeg->add_flag("--assert-hypotheses", assert_hyp, "accept the degree-formula hypotheses for this surface");
    mdeg->add_option("--candidate", cand, "candidate base point [a,b,c,d]; repeatable");

    auto* sample = app.add_subcommand("sample", "point cloud of the real caustic");
    sample->add_option("scene", file, "scene file")->required();
    sample->add_option("--chart", chart, "chart, e.g. t=1");
    sample->add_option("--range", range, "a:b,c:d");
    sample->add_option("--steps", steps, "n,m");
    sample->add_option("--real-tol", tol, "real point filter tolerance")->check(CLI::NonNegativeNumber);
    sample->add_option("--out", out_path, "output path (.csv or .ply); stdout when omitted");

    auto* planar = app.add_subcommand("planar", "caustic of a plane curve");
    planar->add_option("curve", file, "curve scene file")->required();
    planar->add_option("--seed", seed, "seed of the generic line");

    auto* family = app.add_subcommand("family", "surfaces of revolution and cylinders");
    family->add_option("kind", kind, "revolution or cylinder")->required()->check(CLI::IsMember(std::vector<std::string>{"revolution", "cylinder"}));
    family->add_option("curve", file, "curve scene file")->required();
    family->add_option("--seed", seed, "seed of the generic line");

    std::vector<std::string> argv_store{"caustic"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& ex) {
        err << "error: " << ex.what() << "\n" << app.help();
        return 2;
    }

    try {
        if (*verify) return cmd_verify(file, seed, out);
        if (*base) return cmd_base_points(file, cand, out);
        if (*mdeg) {
            MdegOptions o;
            o.seed = seed;
            o.max_order = max_order;
            o.assert_hypotheses = assert_hyp;
            o.candidates = candidates_of(cand);
            return cmd_mdeg(file, o, out);
        }
        if (*sample) return cmd_sample(file, chart, range, steps, tol, out_path, out, err);
        if (*planar) return cmd_planar(file, static_cast<unsigned>(seed), out);
        if (*family) return cmd_family(kind, file, static_cast<unsigned>(seed), out);
    } catch (const ParseError& ex) {
        err << "error: " << file << ": " << ex.what() << "\n";
        return 2;
    } catch (const InputError& ex) {
        err << "error: " << ex.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& ex) {
        err << "error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        err << "failure: " << ex.what() << "\n";
        return 1;
    }
    err << app.help();
    return 2;
}

}  // namespace caustic
