#pragma once

#include <array>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "caustic/multipoly.hpp"
#include "caustic/series.hpp"

namespace caustic {

using LinearChange = std::array<long, 4>;  // (u, v) <- (a u + b v, c u + d v)

const std::vector<int>& default_schedule();

// Valuation in u of Res_v(f, g) after the linear change, both series
// truncated to polynomials. nullopt when the resultant vanishes to the
// working precision (common component or precision exhausted).
// Computed modulo two large primes (exact valuations, with failure
// probability negligible); the _exact variant stays over Q(i).
std::optional<int> resultant_valuation(const TruncSeries2& f, const TruncSeries2& g, const LinearChange& change);
std::optional<int> resultant_valuation_exact(const TruncSeries2& f, const TruncSeries2& g, const LinearChange& change);

struct IntersectionTrace {
    int value = 0;
    std::vector<std::pair<int, int>> by_order;  // (order, value) pairs evaluated
    LinearChange change{1, 1, 2, 3};
};

// Runs the order schedule until two consecutive orders agree; retries with
// seeded random changes of variables. Throws when nothing stabilizes.
IntersectionTrace local_intersection(const std::function<std::pair<TruncSeries2, TruncSeries2>(int)>& at_order,
                                     const std::vector<int>& schedule, unsigned seed = 0);
int local_intersection(const TruncSeries2& f, const TruncSeries2& g, const std::vector<int>& schedule);

// Intersection multiplicity at the origin of two plane curves given by
// polynomials in two variables (Fulton's reduction). Independent check.
std::optional<int> fulton_intersection(const MultiPoly& f, const MultiPoly& g);

// Numeric germs: val(f)*val(g) when the lowest forms share no linear factor.
std::optional<int> transversal_intersection(const NumSeries2& f, const NumSeries2& g, double f_scale,
                                            double g_scale, double tol = 1e-7);

}  // namespace caustic
