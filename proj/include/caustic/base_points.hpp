#pragma once

#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "caustic/engine.hpp"

namespace caustic {

struct BaseClassification {
    std::vector<std::string> case_tags;
    std::map<std::string, std::string> witnesses;
    bool in_M = false;  // sigma(m) proportional to m
    bool in_W = false;
    bool is_base() const { return !(case_tags.size() == 1 && case_tags[0] == "not_base"); }
    bool has(const std::string& tag) const;
};

// Exact points are classified exactly, numeric points with relative tolerance.
BaseClassification classify_point(const CausticData& c, const ProjPoint& m);
std::string classification_summary(const BaseClassification& b);

struct GeometricPredicates {
    bool on_umbilical = false;
    bool tangent_plane_isotropic = false;
    ProjPoint normal_at_infinity;
    bool light_in_tangent_plane = false;
    bool normal_on_umbilical = false;
};

GeometricPredicates geometric_predicates(const CausticData& c, const ProjPoint& m);

class InfiniteBaseError : public std::runtime_error {
public:
    InfiniteBaseError(const std::string& witness)
        : std::runtime_error("B is infinite: " + witness), witness_(witness) {}
    const std::string& witness() const { return witness_; }

private:
    std::string witness_;
};

struct BasePoint {
    ProjPoint m;
    BaseClassification cls;
    std::string minimal_data;  // defining data for points outside Q(i)
};

struct BaseSet {
    std::vector<BasePoint> points;
    std::vector<std::string> rejected;  // candidates that are not base points
};

// Throws InfiniteBaseError for positive-dimensional B, and asks for
// candidates when d > 3.
BaseSet enumerate_base_points(const CausticData& c, const std::optional<std::vector<ProjPoint>>& candidates = {});

// Common zeros in P^3 of homogeneous polynomials in x, y, z, t.
// Throws InfiniteBaseError when the zero set is positive-dimensional.
struct ProjectiveSolution {
    ProjPoint point;
    std::string minimal_data;
};
std::vector<ProjectiveSolution> solve_projective(const std::vector<MultiPoly>& system, unsigned seed = 0);

}  // namespace caustic
