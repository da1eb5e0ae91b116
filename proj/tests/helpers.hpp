#pragma once

#include <random>
#include <string>
#include <vector>

#include "caustic/multipoly.hpp"
#include "caustic/surface_io.hpp"

namespace testutil {

inline caustic::MultiPoly P(const std::string& s, const std::vector<std::string>& vars = caustic::xyzt()) {
    return caustic::parse_polynomial(s, vars).with_vars(vars);
}

inline caustic::GaussianRational Q(const std::string& s) { return caustic::parse_constant(s); }

inline caustic::ProjPoint pt(const std::vector<std::string>& c) {
    std::vector<caustic::GaussianRational> v;
    for (const auto& s : c) v.push_back(Q(s));
    return caustic::ProjPoint::exact(v);
}

// Random sparse polynomial, homogeneous of degree deg when homogeneous is set.
inline caustic::MultiPoly random_poly(std::mt19937_64& rng, const std::vector<std::string>& vars, int deg, int terms,
                                      bool homogeneous, bool gaussian = true) {
    std::uniform_int_distribution<int> coef(-5, 5), var(0, static_cast<int>(vars.size()) - 1), dg(0, deg);
    caustic::MultiPoly p(vars);
    for (int k = 0; k < terms; ++k) {
        caustic::Exponent e(vars.size(), 0);
        int n = homogeneous ? deg : dg(rng);
        for (int j = 0; j < n; ++j) ++e[var(rng)];
        caustic::GaussianRational c(coef(rng), gaussian ? coef(rng) : 0);
        p.add_term(e, c);
    }
    return p;
}

}  // namespace testutil
