#include "caustic/series.hpp"

#include <cmath>

namespace caustic {

MultiPoly series_to_poly(const TruncSeries2& s, const std::vector<std::string>& vars) {
    MultiPoly p(vars);
    for (int n = 0; n < s.order(); ++n)
        for (int j = 0; j <= n; ++j) p.add_term({n - j, j}, s.at(n - j, j));
    return p;
}

TruncSeries2 poly_to_series(const MultiPoly& p, int order) {
    if (p.nvars() != 2) throw std::invalid_argument("series conversion needs a bivariate polynomial");
    TruncSeries2 s(order);
    for (const auto& [e, c] : p.terms())
        if (e[0] + e[1] < order) s.at(e[0], e[1]) = c;
    return s;
}

std::optional<int> numeric_valuation(const NumSeries2& s, double tol) {
    double scale = 0;
    for (const auto& c : s.raw()) scale = std::max(scale, std::abs(c));
    if (scale == 0) return std::nullopt;
    for (int n = 0; n < s.order(); ++n)
        for (int j = 0; j <= n; ++j)
            if (std::abs(s.at(n - j, j)) > tol * scale) return n;
    return std::nullopt;
}

}  // namespace caustic
