#include <filesystem>
#include <fstream>
#include <sstream>

#include "caustic/cli.hpp"
#include "doctest.h"

using namespace caustic;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

std::string scene_path(const std::string& name) { return std::string(CAUSTIC_SCENES_DIR) + "/" + name; }

std::string temp_scene(const std::string& name, const std::string& text) {
    auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << text;
    return p.string();
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("verify reports the quadratic family") {
    Run r = run({"verify", scene_path("paraboloid_generic.scene")});
    CHECK(r.code == 0);
    CHECK(has(r.out, "degree = 2\n"));
    CHECK(has(r.out, "theta_square = false\n"));
    CHECK(has(r.out, "catalogued = paraboloid\n"));
    Run f = run({"verify", scene_path("paraboloid_focal.scene")});
    CHECK(f.code == 0);
    CHECK(has(f.out, "theta_square = true\n"));
}

TEST_CASE("mdeg on the paraboloid") {
    Run r = run({"mdeg", scene_path("paraboloid_generic.scene")});
    CHECK(r.code == 0);
    CHECK(has(r.out, "mdeg = 18\n"));
    CHECK(has(r.out, "bezout_total = 22\n"));
    Run focal = run({"mdeg", scene_path("paraboloid_focal.scene")});
    CHECK(focal.code == 0);
    CHECK(has(focal.out, "point_caustic = [0:0:1:2]"));
    Run inf = run({"mdeg", scene_path("paraboloid_isotropic.scene")});
    CHECK(inf.code == 1);
}

TEST_CASE("base points and their witnesses") {
    Run r = run({"base-points", scene_path("saddle_butterfly.scene")});
    CHECK(r.code == 0);
    CHECK(has(r.out, "base_point.1 = "));
    CHECK(has(r.out, "in_M.1 = true"));
    Run inf = run({"base-points", scene_path("paraboloid_isotropic.scene")});
    CHECK(inf.code == 1);
    CHECK(has(inf.out, "base_points = infinite"));
}

TEST_CASE("sample to a file") {
    auto out = (std::filesystem::temp_directory_path() / "caustic_cli_sample.csv").string();
    Run r = run({"sample", scene_path("saddle.scene"), "--steps", "20,20", "--out", out});
    CHECK(r.code == 0);
    CHECK(has(r.out, "points = "));
    std::ifstream in(out);
    std::string header;
    std::getline(in, header);
    CHECK(header == "x,y,z,branch");
    Run bad = run({"sample", scene_path("saddle.scene"), "--steps", "1,20"});
    CHECK(bad.code == 2);
    Run stdout_csv = run({"sample", scene_path("saddle.scene"), "--steps", "5,5"});
    CHECK(stdout_csv.out.rfind("x,y,z,branch\n", 0) == 0);
}

TEST_CASE("planar and family subcommands") {
    Run p = run({"planar", scene_path("parabola_planar.curve")});
    CHECK(p.code == 0);
    CHECK(has(p.out, "identity.beta = "));
    Run rev = run({"family", "revolution", scene_path("parabola_axis.curve")});
    CHECK(rev.code == 0);
    CHECK(has(rev.out, "mdeg = 4\n"));
    Run cyl = run({"family", "cylinder", scene_path("parabolic_cylinder.curve")});
    CHECK(cyl.code == 0);
    CHECK(has(cyl.out, "hessian_zero = true"));
    CHECK(has(cyl.out, "gamma_zero = true"));
}

TEST_CASE("input errors exit with 2") {
    CHECK(run({"verify", "/nonexistent/file.scene"}).code == 2);
    Run parse = run({"verify", temp_scene("caustic_bad.scene", "surface = x^2 + y\nlight = [1,0,0,0]\n")});
    CHECK(parse.code == 2);
    CHECK(has(parse.err, "not homogeneous"));
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"mdeg", scene_path("saddle.scene"), "--max-order", "x"}).code == 2);
    CHECK(run({"base-points", scene_path("saddle.scene"), "--candidate", "[1,2]"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}
