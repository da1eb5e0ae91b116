#pragma once

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "caustic/multipoly.hpp"
#include "caustic/projpoint.hpp"
#include "caustic/surface_io.hpp"

namespace caustic {

using Quad4 = std::array<MultiPoly, 4>;

struct QuadFamily {
    MultiPoly alpha, beta, gamma;
};

struct CausticData {
    Scene scene;
    MultiPoly delta;
    Quad4 grad;
    Quad4 kappa_grad;  // (F_x, F_y, F_z, 0)
    MultiPoly qgrad;   // F_x^2 + F_y^2 + F_z^2
    MultiPoly n_s;
    MultiPoly hdet;
    std::vector<std::vector<MultiPoly>> hess;
    Quad4 sigma;
    std::array<std::array<MultiPoly, 3>, 4> dsigma;  // d sigma_i / d x_j, j over x, y, z
    bool has_family = false;  // false for planar mirrors
    MultiPoly alpha, beta, gamma;
    MultiPoly beta_tilde;  // -beta/2
    MultiPoly theta;       // beta_tilde^2 - alpha*gamma
};

MultiPoly polar_delta(const Scene& s);
Quad4 sigma_map(const Scene& s);
QuadFamily quad_family(const Scene& s);
CausticData build_caustic(const Scene& s);

// (x t0 - x0 t)^2 + (y t0 - y0 t)^2 + (z t0 - z0 t)^2
MultiPoly n_poly(const ProjPoint& S);
// v^T Hess(F) w for constant v and polynomial w
MultiPoly hess_bilinear(const std::vector<std::vector<MultiPoly>>& hess, const std::vector<GaussianRational>& v,
                        const Quad4& w);

// Graph chart t = 1, v = polynomial in the other two, when F is linear in v
// with constant coefficient there (z tried first).
std::optional<std::map<std::string, MultiPoly>> graph_chart(const MultiPoly& F);

struct ThetaResult {
    MultiPoly theta;
    std::optional<MultiPoly> chart_theta;
    bool is_square = false;
    std::optional<MultiPoly> root;
    std::string decided_on;  // "polynomial ring" or "chart"
};

// Square test of theta, first in C[x,y,z,t], then after substituting the chart.
ThetaResult theta_and_square_test(const CausticData& c,
                                  const std::optional<std::map<std::string, MultiPoly>>& chart);

using CVec = std::vector<std::complex<double>>;

// Relative residual of the determinant factorization D = t Q(grad F) Q_{S,F}.
double ramification_det_check(const CausticData& c, const CVec& m, std::complex<double> l0, std::complex<double> l1);
std::complex<double> ramification_det(const CausticData& c, const CVec& m, std::complex<double> l0,
                                      std::complex<double> l1);

struct QuadraticRoots {
    std::vector<std::array<std::complex<double>, 2>> roots;  // numeric view of every root
    std::vector<std::array<GaussianRational, 2>> exact_roots;  // when solvable in Q(i)
    bool degenerate = false;
};

struct PsiResult {
    QuadraticRoots quad;
    std::vector<ProjPoint> points;
};

class FiberError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Roots [l0:l1] of the quadratic at m; degenerate when alpha, beta, gamma all vanish.
QuadraticRoots solve_quadratic_at(const CausticData& c, const ProjPoint& m);
PsiResult psi_points(const CausticData& c, const ProjPoint& m);

// Multihomogeneity with weights x,y,z,t -> (1,0), l0 -> (2d-3,1), l1 -> (0,1).
void multidegree_check(const CausticData& c);
void multidegree_check(const MultiPoly& alpha, const MultiPoly& beta, const MultiPoly& gamma, const Quad4& sigma,
                       int d);

enum class DegenerateKind { none, light_only, undefined, plane_at_infinity, quadratic_vanishes };

struct DegenerateReport {
    DegenerateKind kind = DegenerateKind::none;
    std::string description;
};

DegenerateReport degenerate_check(const CausticData& c);

// Seeded points of the mirror: exact through a graph chart when F has one,
// otherwise numeric roots of affine slices.
std::vector<ProjPoint> sample_surface_points(const MultiPoly& F, int count, unsigned seed);

// When every sampled fiber maps to one and the same point, that point.
std::optional<ProjPoint> point_caustic_probe(const CausticData& c, unsigned seed = 0);
std::string to_string(DegenerateKind k);

// Numeric helpers shared by the sampler and tests.
double on_surface_residual(const MultiPoly& F, const CVec& m);
double collinearity_residual(const CVec& a, const CVec& b, const CVec& c);
CVec eval_quad(const Quad4& q, const CVec& m);

}  // namespace caustic
