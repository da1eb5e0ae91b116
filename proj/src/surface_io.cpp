#include "caustic/surface_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace caustic {

ParseError::ParseError(const std::string& msg, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

class ExprParser {
public:
    ExprParser(const std::string& text, const std::vector<std::string>& vars, int line, int offset)
        : s_(text), vars_(vars), line_(line), offset_(offset) {}

    MultiPoly parse() {
        MultiPoly p = expr();
        skip();
        if (pos_ < s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
        return p;
    }

private:
    const std::string& s_;
    std::vector<std::string> vars_;
    int line_, offset_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_, offset_ + static_cast<int>(pos_) + 1);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    MultiPoly constant(const GaussianRational& c) const { return MultiPoly::constant(vars_, c); }

    MultiPoly expr() {
        MultiPoly acc;
        skip();
        bool neg = false;
        if (accept('-'))
            neg = true;
        else
            accept('+');
        acc = term();
        if (neg) acc = -acc;
        for (;;) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    MultiPoly term() {
        MultiPoly acc = unary();
        for (;;) {
            if (accept('*')) {
                acc *= unary();
            } else if (accept('/')) {
                std::size_t at = pos_;
                MultiPoly den = unary();
                if (!den.is_constant()) {
                    pos_ = at;
                    fail("division by a non-constant");
                }
                GaussianRational c = den.constant_term();
                if (c.is_zero()) {
                    pos_ = at;
                    fail("division by zero");
                }
                acc *= GaussianRational(1) / c;
            } else {
                return acc;
            }
        }
    }

    MultiPoly unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    MultiPoly power() {
        MultiPoly base = atom();
        if (accept('^')) {
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected a nonnegative integer exponent");
            if (pos_ - start > 4) fail("exponent too large");
            base = base.pow(static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
        }
        return base;
    }

    MultiPoly atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            MultiPoly inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return constant(GaussianRational(mpq_class(mpz_class(s_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            if (name == "i") return constant(GaussianRational::i());
            for (const auto& v : vars_)
                if (v == name) return MultiPoly::variable(vars_, name);
            pos_ = start;
            fail("unknown variable '" + name + "'");
        }
        fail(std::string("unexpected '") + c + "'");
    }
};

std::string trim_copy(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

struct RawScene {
    std::string key_expr;  // "surface" or "curve"
    std::string expr;
    int expr_line = 0, expr_col = 0;
    std::vector<GaussianRational> light;
    int light_line = 0;
    std::string label;
};

RawScene split_scene(const std::string& text) {
    RawScene raw;
    std::istringstream in(text);
    std::string line;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        std::size_t hash = line.find('#');
        std::string body = hash == std::string::npos ? line : line.substr(0, hash);
        if (trim_copy(body).empty()) {
            if (hash != std::string::npos && raw.label.empty()) raw.label = trim_copy(line.substr(hash + 1));
            continue;
        }
        std::size_t eq = body.find('=');
        std::size_t first = body.find_first_not_of(" \t\r");
        if (eq == std::string::npos) throw ParseError("expected 'key = value'", ln, static_cast<int>(first) + 1);
        std::string key = trim_copy(body.substr(0, eq));
        std::size_t vstart = body.find_first_not_of(" \t\r", eq + 1);
        if (vstart == std::string::npos) throw ParseError("missing value", ln, static_cast<int>(eq) + 2);
        std::string value = body.substr(vstart);
        if (key == "surface" || key == "curve") {
            if (!raw.key_expr.empty()) throw ParseError("duplicate " + key, ln, static_cast<int>(first) + 1);
            raw.key_expr = key;
            raw.expr = value;
            raw.expr_line = ln;
            raw.expr_col = static_cast<int>(vstart);
        } else if (key == "light") {
            if (raw.light_line) throw ParseError("duplicate light", ln, static_cast<int>(first) + 1);
            raw.light_line = ln;
            std::size_t open = body.find('[', vstart);
            if (open != vstart) throw ParseError("expected '['", ln, static_cast<int>(vstart) + 1);
            std::size_t close = body.find(']', open);
            if (close == std::string::npos) throw ParseError("expected ']'", ln, static_cast<int>(body.size()) + 1);
            if (!trim_copy(body.substr(close + 1)).empty())
                throw ParseError("trailing characters after ']'", ln, static_cast<int>(close) + 2);
            std::size_t start = open + 1;
            for (;;) {
                std::size_t comma = body.find(',', start);
                std::size_t end = comma == std::string::npos || comma > close ? close : comma;
                std::string entry = body.substr(start, end - start);
                if (trim_copy(entry).empty()) throw ParseError("empty light entry", ln, static_cast<int>(start) + 1);
                MultiPoly c = parse_polynomial(entry, {}, ln, static_cast<int>(start));
                raw.light.push_back(c.constant_term());
                if (end == close) break;
                start = end + 1;
            }
        } else {
            throw ParseError("unknown key '" + key + "'", ln, static_cast<int>(first) + 1);
        }
    }
    if (raw.key_expr.empty()) throw ParseError("missing surface", ln + 1, 1);
    if (!raw.light_line) throw ParseError("missing light", ln + 1, 1);
    return raw;
}

ProjPoint light_point(const RawScene& raw, std::size_t allowed_a, std::size_t allowed_b) {
    if (raw.light.size() != allowed_a && raw.light.size() != allowed_b)
        throw ParseError("light needs " + std::to_string(allowed_a) + " coordinates", raw.light_line, 1);
    bool all_zero = true;
    for (const auto& c : raw.light) all_zero = all_zero && c.is_zero();
    if (all_zero) throw ParseError("zero light vector", raw.light_line, 1);
    return ProjPoint::exact(raw.light);
}

int checked_degree(const MultiPoly& p, int line, int col) {
    if (p.is_zero()) throw ParseError("surface polynomial is zero", line, col + 1);
    auto d = p.homogeneous_degree();
    if (!d) throw ParseError("surface is not homogeneous", line, col + 1);
    if (*d < 1) throw ParseError("surface must have degree at least 1", line, col + 1);
    return *d;
}

}  // namespace

MultiPoly parse_polynomial(const std::string& text, const std::vector<std::string>& vars, int line, int column_offset) {
    return ExprParser(text, vars, line, column_offset).parse();
}

GaussianRational parse_constant(const std::string& text) {
    MultiPoly c = parse_polynomial(text, {});
    return c.constant_term();
}

Scene parse_scene(const std::string& text) {
    RawScene raw = split_scene(text);
    if (raw.key_expr != "surface") throw ParseError("expected 'surface', found 'curve'", raw.expr_line, 1);
    Scene s;
    s.F = parse_polynomial(raw.expr, xyzt(), raw.expr_line, raw.expr_col).with_vars(xyzt());
    s.d = checked_degree(s.F, raw.expr_line, raw.expr_col);
    s.S = light_point(raw, 4, 4);
    s.label = raw.label;
    return s;
}

CurveScene parse_curve_scene(const std::string& text) {
    RawScene raw = split_scene(text);
    if (raw.key_expr != "curve") throw ParseError("expected 'curve', found 'surface'", raw.expr_line, 1);
    CurveScene c;
    bool has_xy = raw.expr.find_first_of("xy") != std::string::npos;
    bool has_rz = raw.expr.find_first_of("rz") != std::string::npos;
    if (has_xy && has_rz) throw ParseError("curve mixes (x,y,t) and (r,z,t) variables", raw.expr_line, raw.expr_col + 1);
    c.radial = has_rz;
    std::vector<std::string> vars = c.radial ? std::vector<std::string>{"r", "z", "t"}
                                             : std::vector<std::string>{"x", "y", "t"};
    c.G = parse_polynomial(raw.expr, vars, raw.expr_line, raw.expr_col).with_vars(vars);
    c.d = checked_degree(c.G, raw.expr_line, raw.expr_col);
    c.light = light_point(raw, 3, 4);
    c.label = raw.label;
    return c;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string print_scene(const Scene& s) {
    std::ostringstream os;
    if (!s.label.empty()) os << "# " << s.label << "\n";
    os << "surface = " << s.F.str() << "\n";
    os << "light = [";
    for (std::size_t k = 0; k < s.S.coords().size(); ++k) os << (k ? ", " : "") << s.S.coords()[k].str();
    os << "]\n";
    return os.str();
}

bool same_scene(const Scene& a, const Scene& b) {
    return a.F == b.F && a.d == b.d && a.S.same(b.S) && a.label == b.label;
}

std::string emit_report(const ReportEntries& entries) {
    std::string out;
    for (const auto& [k, v] : entries) out += k + " = " + v + "\n";
    return out;
}

namespace {

std::string fmt17(double v) {
    if (v == 0) v = 0;  // drop the sign of negative zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

CloudOutput emit_pointcloud(const std::vector<CloudRow>& rows, const std::string& path) {
    CloudOutput out;
    std::vector<const CloudRow*> kept;
    for (const auto& r : rows) {
        if (std::isfinite(r.x) && std::isfinite(r.y) && std::isfinite(r.z))
            kept.push_back(&r);
        else
            ++out.rejected;
    }
    std::string& b = out.bytes;
    if (ends_with(path, ".ply")) {
        b += "ply\nformat ascii 1.0\nelement vertex " + std::to_string(kept.size()) + "\n";
        b += "property float x\nproperty float y\nproperty float z\nproperty uchar branch\nend_header\n";
        for (const CloudRow* r : kept)
            b += fmt17(r->x) + " " + fmt17(r->y) + " " + fmt17(r->z) + " " + (r->branch == '-' ? "1" : "0") + "\n";
    } else {
        b += "x,y,z,branch\n";
        for (const CloudRow* r : kept) b += fmt17(r->x) + "," + fmt17(r->y) + "," + fmt17(r->z) + "," + r->branch + "\n";
    }
    return out;
}

std::size_t write_pointcloud(const std::vector<CloudRow>& rows, const std::string& path) {
    CloudOutput out = emit_pointcloud(rows, path);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    f << out.bytes;
    return out.rejected;
}

}  // namespace caustic
