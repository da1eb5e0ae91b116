#pragma once

#include <complex>
#include <string>
#include <vector>

#include "caustic/gaussian.hpp"
#include "caustic/multipoly.hpp"

namespace caustic {

// Dense univariate polynomial over Q(i), coefficients in ascending order.
using UPoly = std::vector<GaussianRational>;

void trim(UPoly& p);
int degree(const UPoly& p);  // -1 for zero
UPoly to_upoly(const MultiPoly& p, std::size_t idx);  // p must only involve variable idx
GaussianRational eval(const UPoly& p, const GaussianRational& x);
UPoly derivative(const UPoly& p);
UPoly monic(const UPoly& p);
void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
UPoly gcd(UPoly a, UPoly b);
UPoly squarefree_part(const UPoly& p);
std::string upoly_str(const UPoly& p, const std::string& var);

struct UnivariateRoots {
    std::vector<GaussianRational> exact;
    std::vector<std::complex<double>> numeric;  // roots outside Q(i)
    UPoly residual;                              // squarefree factor carrying the numeric roots
};

// Distinct roots: those in Q(i) exactly, the rest numerically.
UnivariateRoots solve_univariate(const UPoly& p);

// Distinct roots of a polynomial with floating complex coefficients.
std::vector<std::complex<double>> numeric_roots(std::vector<std::complex<double>> coeffs);

// Resultant with respect to variable idx by the subresultant algorithm.
MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, std::size_t idx);

}  // namespace caustic
