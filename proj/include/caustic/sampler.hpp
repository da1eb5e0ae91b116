#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "caustic/engine.hpp"
#include "caustic/surface_io.hpp"

namespace caustic {

struct SampleGrid {
    int chart = 3;  // homogeneous coordinate fixed to 1
    std::array<std::array<double, 2>, 2> ranges{{{-4, 4}, {-4, 4}}};
    std::array<int, 2> steps{200, 200};
    double real_filter_tol = 1e-9;
};

struct SampleRow {
    std::size_t node = 0;
    char branch = '+';
    CVec m;  // source point on the mirror
    CVec p;  // caustic point, homogeneous
    CloudRow row;
};

struct SampleResult {
    std::vector<SampleRow> rows;
    std::size_t nodes = 0;
    std::size_t skipped_nodes = 0;  // no point of the mirror over the node
    std::size_t dropped = 0;        // complex, at infinity, or failing the residual checks
};

// Grid over the two free coordinates following the chart, in order; the
// remaining coordinate is solved on each node.
SampleResult sample_caustic(const Scene& scene, const SampleGrid& grid);

// "t=1" style chart names.
int parse_chart(const std::string& text);

}  // namespace caustic
