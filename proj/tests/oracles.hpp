#pragma once

#include <complex>
#include <vector>

#include "caustic/base_points.hpp"
#include "caustic/degree_calc.hpp"

namespace testutil {

using namespace caustic;

inline ProjPoint exact4(GaussianRational a, GaussianRational b, GaussianRational c, GaussianRational d) {
    return ProjPoint::exact({a, b, c, d});
}

// Base points of the paraboloid read off the closed forms, case by case,
// for S outside {F1, F2} and outside the infinite case.
inline std::vector<ProjPoint> paraboloid_oracle(const ProjPoint& Sp) {
    const auto& S = Sp.coords();
    GaussianRational x0 = S[0], y0 = S[1], z0 = S[2], t0 = S[3], I = GaussianRational::i(), zero(0), one(1);
    GaussianRational half(mpq_class(1, 2));
    std::vector<ProjPoint> out;
    auto add = [&](const ProjPoint& p) {
        for (const auto& q : out)
            if (q.same(p)) return;
        out.push_back(p);
    };
    if ((x0 * x0 + y0 * y0 - GaussianRational(2) * z0 * t0).is_zero()) add(Sp);  // (1)
    if (x0.is_zero() && y0.is_zero()) {                                           // (2)
        add(exact4(one, I, zero, zero));
        add(exact4(one, -I, zero, zero));
    }
    if (!t0.is_zero()) {  // (3)
        add(exact4(t0, I * t0, x0 + I * y0, zero));
        add(exact4(t0, -I * t0, x0 - I * y0, zero));
    }
    GaussianRational r2 = x0 * x0 + y0 * y0, c = z0 - t0 * half;
    if (t0.is_zero() && !r2.is_zero()) add(exact4(zero, zero, one, zero));  // (4)
    if (!r2.is_zero()) {                                                     // (6)
        GaussianRational w = r2 + c * c;
        if (auto root = gaussian_sqrt(w)) {
            for (int e : {1, -1}) {
                GaussianRational eps(e);
                GaussianRational x = (x0 * c + I * eps * y0 * *root) / r2;
                GaussianRational y = (y0 * c - I * eps * x0 * *root) / r2;
                add(exact4(x, y, -half, one));
            }
        } else {
            std::complex<double> rt = std::sqrt(w.to_complex()), i(0, 1);
            for (int e : {1, -1}) {
                std::complex<double> x = (x0.to_complex() * c.to_complex() + i * double(e) * y0.to_complex() * rt) /
                                         r2.to_complex();
                std::complex<double> y = (y0.to_complex() * c.to_complex() - i * double(e) * x0.to_complex() * rt) /
                                         r2.to_complex();
                add(ProjPoint::numeric({x, y, -0.5, 1}));
            }
        }
    }
    if (r2.is_zero() && !x0.is_zero() && !c.is_zero()) {  // (7), with x0 + i e y0 = 0
        GaussianRational e = y0 / (I * x0);
        GaussianRational x = (c * c - x0 * x0) / (GaussianRational(2) * x0 * c);
        GaussianRational y = (c * c + x0 * x0) / (GaussianRational(2) * I * e * x0 * c);
        add(exact4(x, y, -half, one));
    }
    return out;
}

inline bool same_set(const std::vector<ProjPoint>& a, const std::vector<ProjPoint>& b) {
    if (a.size() != b.size()) return false;
    for (const auto& p : a) {
        bool found = false;
        for (const auto& q : b) found = found || (p.is_exact() == q.is_exact() && p.same(q));
        if (!found) return false;
    }
    return true;
}

// Independent count: points of V(F, K1, K2, K3) off the base set. For generic
// forms each of them is a simple preimage of the line V(A, B).
inline int global_count(const Scene& s, std::uint64_t seed) {
    CausticData c = build_caustic(s);
    BaseSet bs = enumerate_base_points(c);
    std::vector<ProjPoint> pts;
    for (const auto& b : bs.points) pts.push_back(b.m);
    auto [A, B] = make_generic_forms(c, seed, pts);
    ReducedFamily rf = reduce_family(c);
    PolarData pd = k_polys(c, A, B, rf.steps ? std::optional<QuadFamily>(rf.family) : std::nullopt);
    int count = 0;
    for (const auto& sol : solve_projective({s.F, pd.K1, pd.K2, pd.K3}, 1)) {
        bool base = false;
        for (const auto& b : pts) base = base || b.same(sol.point, 1e-6);
        if (!base) ++count;
    }
    return count;
}

}  // namespace testutil
