#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "caustic/multipoly.hpp"
#include "caustic/projpoint.hpp"

namespace caustic {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line, int column);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_, column_;
};

// Polynomial expression over the listed variables; i is the imaginary unit.
MultiPoly parse_polynomial(const std::string& text, const std::vector<std::string>& vars, int line = 1,
                           int column_offset = 0);
GaussianRational parse_constant(const std::string& text);

struct Scene {
    MultiPoly F;  // in x, y, z, t
    int d = 0;
    ProjPoint S;
    std::string label;
};

// Planar curve input for the appendix constructions: G in (x,y,t) or (r,z,t).
// The light is either a planar point (3 entries) or a point of P^3.
struct CurveScene {
    MultiPoly G;
    int d = 0;
    ProjPoint light;
    bool radial = false;  // variables r, z, t
    std::string label;
};

Scene parse_scene(const std::string& text);
CurveScene parse_curve_scene(const std::string& text);
std::string read_file(const std::string& path);
std::string print_scene(const Scene& s);
bool same_scene(const Scene& a, const Scene& b);

using ReportEntries = std::vector<std::pair<std::string, std::string>>;
std::string emit_report(const ReportEntries& entries);

struct CloudRow {
    double x = 0, y = 0, z = 0;
    char branch = '+';
};

struct CloudOutput {
    std::string bytes;
    std::size_t rejected = 0;  // rows with non-finite coordinates
};

CloudOutput emit_pointcloud(const std::vector<CloudRow>& rows, const std::string& path);
std::size_t write_pointcloud(const std::vector<CloudRow>& rows, const std::string& path);

}  // namespace caustic
