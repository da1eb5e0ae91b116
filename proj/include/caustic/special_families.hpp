#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "caustic/engine.hpp"
#include "caustic/multipoly.hpp"
#include "caustic/projpoint.hpp"
#include "caustic/surface_io.hpp"

namespace caustic {

// Planar mirror V(G) in three homogeneous variables, (x,y,t) or (r,z,t),
// and a light S0 of P^2 in the same coordinates.
struct PlanarScene {
    MultiPoly G;
    int d = 0;
    std::vector<GaussianRational> S0;
};

PlanarScene make_planar_scene(const MultiPoly& G, const std::vector<GaussianRational>& S0);

struct PlanarData {
    MultiPoly delta;  // Delta_{S0} G
    MultiPoly n;      // N_{S0}
    MultiPoly hdet;   // H_G
    std::array<MultiPoly, 3> grad;
    std::array<MultiPoly, 3> sigma;
    std::array<MultiPoly, 3> phi;
};

PlanarData planar_data(const PlanarScene& ps);
std::array<MultiPoly, 3> planar_caustic_map(const PlanarScene& ps);

// Normal form of p modulo the principal ideal (G); zero iff G divides p.
MultiPoly reduce_mod(const MultiPoly& p, const MultiPoly& G);

struct PlanarFamily {
    MultiPoly alpha, beta, gamma;
    MultiPoly beta_residual;   // beta - 2 N H_G / (d-1)^2 mod G
    MultiPoly gamma_residual;  // gamma + 2 alpha beta mod G
};

// Throws std::logic_error when the lemma congruences fail.
PlanarFamily planar_quad_family(const PlanarScene& ps);

// Number of points of V(G) sent by the planar caustic map to a generic
// line, outside the points where the map vanishes: deg times generic fiber.
int planar_mdeg(const PlanarScene& ps, unsigned seed = 0);

// Surfaces of revolution around V(x,y) and cylinders along the z axis.
bool is_revolution(const MultiPoly& F);
bool is_cylinder(const MultiPoly& F);
// G(r,z,t) = F(r,0,z,t) for a surface of revolution.
MultiPoly profile_of_revolution(const MultiPoly& F);
// r^2 <- x^2 + y^2; G must be even in r.
MultiPoly lift_revolution(const MultiPoly& G);
// F(x,y,z,t) = G(x,y,t).
MultiPoly lift_cylinder(const MultiPoly& G);

struct IdentityCheck {
    std::string name;
    bool exact = false;   // holds in C[x,y,z,t]
    bool mod_F = false;   // holds on the surface
    MultiPoly residual;   // difference, reduced modulo F when not exact
};

struct RevolutionReport {
    MultiPoly F;
    IdentityCheck alpha, beta, gamma;
    bool focal = false;
    std::optional<ProjPoint> point_caustic;
    std::optional<int> mdeg;  // planar count, when the caustic is a surface
    std::vector<std::string> components;
};

// curve in (r,z,t) even in r; light S = [0:0:z0:t0].
RevolutionReport revolution_caustic_check(const PlanarScene& curve, unsigned seed = 0);

struct CylinderReport {
    MultiPoly F;
    bool hessian_zero = false;
    bool gamma_zero = false;
    IdentityCheck alpha, beta;
    bool collapse = false;  // V(G) inside V(H_G N_{S0})
    std::vector<std::string> components;
};

// curve in (x,y,t); S of P^3 with S0 = [x0:y0:t0].
CylinderReport cylinder_caustic_check(const MultiPoly& G, const ProjPoint& S);

struct KnownCurve {
    std::string name;
    std::vector<std::string> params;
    std::vector<MultiPoly> implicit;  // polynomials in params and target coordinates
    std::vector<std::string> targets;
    std::vector<std::vector<MultiPoly>> parametrizations;  // one tuple per implicit entry, in params
};

const std::vector<KnownCurve>& known_curves();
const KnownCurve& known_curve(const std::string& name);

struct CurveVerdict {
    bool ok = false;
    std::vector<MultiPoly> residuals;
};

CurveVerdict verify_known_curve(const KnownCurve& kc);

struct SigmaClosure {
    std::string kind;  // "conic", "line" or "point"
    MultiPoly equation;  // in x, y, z (t = 0)
    std::optional<ProjPoint> point;
};

SigmaClosure sigma_closure_parab_cylinder(const GaussianRational& v, const GaussianRational& z0);

// "paraboloid" for V(x^2+y^2-2zt), "saddle" for V(xy-zt), "parabolic_cylinder"
// for V(y^2-2xt), empty otherwise; and the known curves attached to each.
std::string catalogued_family(const MultiPoly& F);
std::vector<std::string> known_curves_of(const std::string& family);

// Caustic components of a catalogued scene, each a list of equations in
// x, y, z, t: the saddle from its focal direction and the paraboloid from
// a point of its isotropic lines at infinity. Empty otherwise.
std::vector<std::vector<MultiPoly>> catalogued_implicit(const Scene& s);

}  // namespace caustic
