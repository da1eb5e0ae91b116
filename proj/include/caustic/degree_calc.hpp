#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "caustic/base_points.hpp"
#include "caustic/engine.hpp"

namespace caustic {

struct PolarData {
    MultiPoly A, B;
    MultiPoly K1, K2, K3;
    std::uint64_t seed = 0;
    std::vector<std::string> genericity_log;
    bool reduced = false;
    MultiPoly alpha, beta, gamma;  // family used for K2, K3
    int polar_degree = 0;          // (d-1)(10d-9) on the standard path
};

// Small integer forms A, B certified against the checkable genericity
// conditions at S and at the given base points.
std::pair<MultiPoly, MultiPoly> make_generic_forms(const CausticData& c, std::uint64_t seed,
                                                   const std::vector<ProjPoint>& base_points = {},
                                                   std::vector<std::string>* log = nullptr);

// K1 = A(sigma) B - A B(sigma), K2 = Q(m, -A(sigma), A), K3 = Q(m, -B(sigma), B),
// with Q built from the given family (the scene's own by default).
PolarData k_polys(const CausticData& c, const MultiPoly& A, const MultiPoly& B,
                  const std::optional<QuadFamily>& family = std::nullopt);

// (alpha, beta, gamma) divided by Delta as long as all three are divisible.
struct ReducedFamily {
    QuadFamily family;
    int steps = 0;
};
ReducedFamily reduce_family(const CausticData& c);

struct LedgerEntry {
    BasePoint point;
    int multiplicity = 0;
    bool numeric = false;
    std::string method;  // "series", "transversal"
};

struct MdegOptions {
    std::uint64_t seed = 0;
    int max_order = 24;
    bool assert_hypotheses = false;
    std::optional<std::vector<ProjPoint>> candidates;
};

struct MdegResult {
    std::optional<int> mdeg;
    int bezout_total = 0;
    std::string path;  // standard, reduced, revolution, point, degenerate
    std::vector<LedgerEntry> ledger;
    std::vector<std::string> warnings;
    std::vector<std::string> flags;
    std::optional<ProjPoint> point_caustic;
    std::string description;
    std::optional<PolarData> polar;
};

std::vector<int> order_schedule(int max_order);

MdegResult mdeg_with_multiplicity(const Scene& scene, const MdegOptions& opts = {});

// d(d-1)(8d-7)
long generic_mdeg(int d);

}  // namespace caustic
