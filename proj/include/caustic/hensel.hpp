#pragma once

#include <array>
#include <vector>

#include "caustic/multipoly.hpp"
#include "caustic/projpoint.hpp"
#include "caustic/series.hpp"

namespace caustic {

// Parametrization of V(F) near a smooth point: one homogeneous coordinate
// fixed to 1, two free coordinates center + (u, v), one solved as a series.
template <class K>
struct BasicChart {
    std::vector<K> center;  // homogeneous coordinates with center[fixed_var] == 1
    int fixed_var = 3;
    int solved_var = 2;
    std::array<int, 2> free_vars{0, 1};
    std::array<Series2<K>, 4> coord_series;
    int order = 0;
};

using LocalChart = BasicChart<GaussianRational>;
using NumChart = BasicChart<std::complex<double>>;

LocalChart hensel_chart(const MultiPoly& F, const ProjPoint& center, int order);
NumChart hensel_chart_numeric(const MultiPoly& F, const ProjPoint& center, int order);

// p composed with the chart, p in the same four variables as F.
TruncSeries2 compose(const MultiPoly& p, const LocalChart& chart);
NumSeries2 compose(const MultiPoly& p, const NumChart& chart);

}  // namespace caustic
