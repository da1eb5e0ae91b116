#include "caustic/multipoly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace caustic {

bool GrlexLess::operator()(const Exponent& a, const Exponent& b) const {
    int da = caustic::total_degree(a), db = caustic::total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

std::vector<std::string> xyzt() { return {"x", "y", "z", "t"}; }

MultiPoly::MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

MultiPoly MultiPoly::constant(const std::vector<std::string>& vars, const GaussianRational& c) {
    MultiPoly p(vars);
    p.add_term(Exponent(vars.size(), 0), c);
    return p;
}

MultiPoly MultiPoly::variable(const std::vector<std::string>& vars, const std::string& name) {
    MultiPoly p(vars);
    Exponent e(vars.size(), 0);
    e[p.var_index(name)] = 1;
    p.add_term(e, GaussianRational(1));
    return p;
}

MultiPoly MultiPoly::monomial(const std::vector<std::string>& vars, const Exponent& e, const GaussianRational& c) {
    MultiPoly p(vars);
    p.add_term(e, c);
    return p;
}

int MultiPoly::var_index(const std::string& name) const {
    for (std::size_t k = 0; k < vars_.size(); ++k)
        if (vars_[k] == name) return static_cast<int>(k);
    throw std::invalid_argument("unknown variable '" + name + "'");
}

bool MultiPoly::has_var(const std::string& name) const {
    return std::find(vars_.begin(), vars_.end(), name) != vars_.end();
}

bool MultiPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && caustic::total_degree(terms_.begin()->first) == 0);
}

GaussianRational MultiPoly::constant_term() const { return coefficient(Exponent(vars_.size(), 0)); }

GaussianRational MultiPoly::coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? GaussianRational(0) : it->second;
}

int MultiPoly::total_degree() const {
    if (terms_.empty()) return -1;
    return caustic::total_degree(terms_.rbegin()->first);
}

int MultiPoly::min_total_degree() const {
    if (terms_.empty()) return -1;
    return caustic::total_degree(terms_.begin()->first);
}

int MultiPoly::degree_in(std::size_t idx) const {
    int d = terms_.empty() ? -1 : 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[idx]);
    return d;
}

void MultiPoly::add_term(const Exponent& e, const GaussianRational& c) {
    if (e.size() != vars_.size()) throw std::invalid_argument("exponent length does not match variable count");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void MultiPoly::check_compatible(const MultiPoly& o) const {
    if (vars_ != o.vars_ && !vars_.empty() && !o.vars_.empty())
        throw std::invalid_argument("polynomials over different variable sets");
}

// A variable-less polynomial is a constant; give it the other operand's variables.
MultiPoly& MultiPoly::adopt_vars(const MultiPoly& o) {
    if (vars_.empty() && !o.vars_.empty()) {
        GaussianRational c = terms_.empty() ? GaussianRational(0) : terms_.begin()->second;
        vars_ = o.vars_;
        terms_.clear();
        add_term(Exponent(vars_.size(), 0), c);
    }
    return *this;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    check_compatible(o);
    adopt_vars(o);
    if (o.vars_.empty()) {
        if (!o.terms_.empty()) add_term(Exponent(vars_.size(), 0), o.terms_.begin()->second);
        return *this;
    }
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) { return *this += -o; }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_compatible(b);
    if (a.vars_.empty() || b.vars_.empty()) {
        const MultiPoly& c = a.vars_.empty() ? a : b;
        const MultiPoly& p = a.vars_.empty() ? b : a;
        if (c.terms_.empty()) return MultiPoly(p.vars_);
        return p * c.terms_.begin()->second;
    }
    MultiPoly r(a.vars_);
    Exponent e(a.vars_.size());
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
            r.add_term(e, ca * cb);
        }
    return r;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly& MultiPoly::operator*=(const GaussianRational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r = *this;
    for (auto& [e, v] : r.terms_) v = -v;
    return r;
}

MultiPoly MultiPoly::pow(unsigned k) const {
    MultiPoly result = constant(vars_, GaussianRational(1)), base = *this;
    while (k) {
        if (k & 1u) result *= base;
        k >>= 1u;
        if (k) base *= base;
    }
    return result;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.vars_ != b.vars_ && !a.vars_.empty() && !b.vars_.empty()) return false;
    if (a.vars_.empty() || b.vars_.empty()) return (a - b).is_zero();
    return a.terms_ == b.terms_;
}

MultiPoly MultiPoly::differentiate(std::size_t idx) const {
    if (idx >= vars_.size()) throw std::invalid_argument("variable index out of range");
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[idx] == 0) continue;
        Exponent f = e;
        f[idx] -= 1;
        r.add_term(f, c * GaussianRational(e[idx]));
    }
    return r;
}

GaussianRational MultiPoly::evaluate(const std::vector<GaussianRational>& pt) const {
    if (pt.size() != vars_.size()) throw std::invalid_argument("point dimension mismatch");
    std::vector<std::vector<GaussianRational>> powers(vars_.size());
    for (std::size_t k = 0; k < vars_.size(); ++k) {
        int deg = std::max(degree_in(k), 0);
        powers[k].resize(deg + 1);
        powers[k][0] = GaussianRational(1);
        for (int j = 1; j <= deg; ++j) powers[k][j] = powers[k][j - 1] * pt[k];
    }
    GaussianRational s(0);
    for (const auto& [e, c] : terms_) {
        GaussianRational m = c;
        for (std::size_t k = 0; k < e.size(); ++k)
            if (e[k]) m *= powers[k][e[k]];
        s += m;
    }
    return s;
}

std::complex<double> MultiPoly::evaluate(const std::vector<std::complex<double>>& pt) const {
    if (pt.size() != vars_.size()) throw std::invalid_argument("point dimension mismatch");
    std::complex<double> s = 0;
    for (const auto& [e, c] : terms_) {
        std::complex<double> m = c.to_complex();
        for (std::size_t k = 0; k < e.size(); ++k)
            for (int j = 0; j < e[k]; ++j) m *= pt[k];
        s += m;
    }
    return s;
}

double MultiPoly::magnitude(const std::vector<std::complex<double>>& pt) const {
    double best = 0;
    for (const auto& [e, c] : terms_) {
        double m = std::abs(c.to_complex());
        for (std::size_t k = 0; k < e.size(); ++k) m *= std::pow(std::abs(pt[k]), e[k]);
        best = std::max(best, m);
    }
    return best;
}

MultiPoly MultiPoly::substitute(const std::map<std::string, MultiPoly>& assignment) const {
    std::vector<std::string> target;
    for (const auto& [name, img] : assignment) {
        if (img.vars_.empty()) continue;
        if (target.empty())
            target = img.vars_;
        else if (target != img.vars_)
            throw std::invalid_argument("substitution images use different variable sets");
    }
    if (target.empty()) target = vars_;
    std::vector<MultiPoly> images;
    for (std::size_t k = 0; k < vars_.size(); ++k) {
        auto it = assignment.find(vars_[k]);
        if (it != assignment.end()) {
            MultiPoly img = it->second;
            if (img.vars_.empty()) img = constant(target, img.is_zero() ? GaussianRational(0) : img.terms_.begin()->second);
            images.push_back(img);
        } else if (degree_in(k) > 0) {
            if (std::find(target.begin(), target.end(), vars_[k]) == target.end())
                throw std::invalid_argument("no image for variable '" + vars_[k] + "'");
            images.push_back(variable(target, vars_[k]));
        } else {
            images.push_back(constant(target, GaussianRational(1)));
        }
    }
    std::vector<std::vector<MultiPoly>> powers(vars_.size());
    for (std::size_t k = 0; k < vars_.size(); ++k) {
        int deg = std::max(degree_in(k), 0);
        powers[k].push_back(constant(target, GaussianRational(1)));
        for (int j = 1; j <= deg; ++j) powers[k].push_back(powers[k].back() * images[k]);
    }
    MultiPoly r(target);
    for (const auto& [e, c] : terms_) {
        MultiPoly m = constant(target, c);
        for (std::size_t k = 0; k < e.size(); ++k)
            if (e[k]) m *= powers[k][e[k]];
        r += m;
    }
    return r;
}

MultiPoly MultiPoly::partial_evaluate(std::size_t idx, const GaussianRational& value) const {
    MultiPoly r(vars_);
    int deg = std::max(degree_in(idx), 0);
    std::vector<GaussianRational> pw(deg + 1);
    pw[0] = GaussianRational(1);
    for (int j = 1; j <= deg; ++j) pw[j] = pw[j - 1] * value;
    for (const auto& [e, c] : terms_) {
        Exponent f = e;
        f[idx] = 0;
        r.add_term(f, c * pw[e[idx]]);
    }
    return r;
}

MultiPoly MultiPoly::with_vars(const std::vector<std::string>& vars) const {
    MultiPoly r(vars);
    std::vector<int> where(vars_.size(), -1);
    for (std::size_t k = 0; k < vars_.size(); ++k) {
        auto it = std::find(vars.begin(), vars.end(), vars_[k]);
        if (it != vars.end()) where[k] = static_cast<int>(it - vars.begin());
    }
    for (const auto& [e, c] : terms_) {
        Exponent f(vars.size(), 0);
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            if (where[k] < 0) throw std::invalid_argument("variable '" + vars_[k] + "' missing from target list");
            f[where[k]] = e[k];
        }
        r.add_term(f, c);
    }
    return r;
}

std::optional<int> MultiPoly::homogeneous_degree() const {
    if (terms_.empty()) throw std::invalid_argument("zero polynomial has no degree");
    int d = caustic::total_degree(terms_.begin()->first);
    for (const auto& [e, c] : terms_)
        if (caustic::total_degree(e) != d) return std::nullopt;
    return d;
}

std::pair<Exponent, GaussianRational> MultiPoly::leading_term() const {
    if (terms_.empty()) throw std::invalid_argument("zero polynomial has no leading term");
    return *terms_.rbegin();
}

std::pair<MultiPoly, MultiPoly> MultiPoly::divide(const MultiPoly& d) const {
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
    MultiPoly dd = d;
    dd.adopt_vars(*this);
    check_compatible(dd);
    MultiPoly q(vars_), rem(vars_), p = *this;
    auto [ld, lc] = dd.leading_term();
    while (!p.is_zero()) {
        auto [lp, cp] = p.leading_term();
        bool divisible = true;
        Exponent diff(lp.size());
        for (std::size_t k = 0; k < lp.size(); ++k) {
            diff[k] = lp[k] - ld[k];
            if (diff[k] < 0) divisible = false;
        }
        if (divisible) {
            GaussianRational c = cp / lc;
            q.add_term(diff, c);
            for (const auto& [e, v] : dd.terms_) {
                Exponent f(e.size());
                for (std::size_t k = 0; k < e.size(); ++k) f[k] = e[k] + diff[k];
                p.add_term(f, -(v * c));
            }
        } else {
            rem.add_term(lp, cp);
            p.terms_.erase(std::prev(p.terms_.end()));
        }
    }
    return {q, rem};
}

std::optional<MultiPoly> MultiPoly::divide_exact(const MultiPoly& d) const {
    auto [q, r] = divide(d);
    if (!r.is_zero()) return std::nullopt;
    return q;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(std::size_t idx) const {
    int deg = degree_in(idx);
    std::vector<MultiPoly> out(std::max(deg + 1, 0), MultiPoly(vars_));
    for (const auto& [e, c] : terms_) {
        Exponent f = e;
        f[idx] = 0;
        out[e[idx]].add_term(f, c);
    }
    return out;
}

MultiPoly MultiPoly::from_coefficients(const std::vector<MultiPoly>& coeffs, std::size_t idx) {
    std::vector<std::string> vars;
    for (const auto& c : coeffs)
        if (!c.vars_.empty()) vars = c.vars_;
    MultiPoly r(vars);
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        for (const auto& [e, c] : coeffs[k].terms_) {
            Exponent f = e;
            f[idx] += static_cast<int>(k);
            r.add_term(f, c);
        }
    return r;
}

MultiPoly MultiPoly::homogeneous_part(int degree) const {
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_)
        if (caustic::total_degree(e) == degree) r.add_term(e, c);
    return r;
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string mono;
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars_[k];
            if (e[k] > 1) mono += "^" + std::to_string(e[k]);
        }
        bool negative = false;
        std::string coef;
        if (c.is_real()) {
            negative = sgn(c.re()) < 0;
            mpq_class a = abs(c.re());
            if (!(a == 1) || mono.empty()) coef = a.get_str();
        } else if (sgn(c.re()) == 0) {
            negative = sgn(c.im()) < 0;
            coef = GaussianRational(0, abs(c.im())).str();
        } else {
            coef = "(" + c.str() + ")";
        }
        if (first)
            os << (negative ? "-" : "");
        else
            os << (negative ? " - " : " + ");
        first = false;
        if (!coef.empty() && !mono.empty())
            os << coef << "*" << mono;
        else
            os << coef << mono;
    }
    return os.str();
}

std::vector<std::vector<MultiPoly>> hessian_matrix(const MultiPoly& p) {
    std::size_t n = p.nvars();
    std::vector<MultiPoly> g;
    for (std::size_t k = 0; k < n; ++k) g.push_back(p.differentiate(k));
    std::vector<std::vector<MultiPoly>> h(n, std::vector<MultiPoly>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            h[a][b] = g[a].differentiate(b);
            h[b][a] = h[a][b];
        }
    return h;
}

MultiPoly determinant(std::vector<std::vector<MultiPoly>> m) {
    std::size_t n = m.size();
    if (n == 0) return MultiPoly();
    std::vector<std::string> vars;
    for (const auto& row : m)
        for (const auto& e : row)
            if (!e.vars().empty()) vars = e.vars();
    if (n == 1) return m[0][0];
    MultiPoly total(vars);
    for (std::size_t col = 0; col < n; ++col) {
        if (m[0][col].is_zero()) continue;
        std::vector<std::vector<MultiPoly>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<MultiPoly> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != col) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        MultiPoly term = m[0][col] * determinant(std::move(minor));
        if (col % 2 == 0)
            total += term;
        else
            total -= term;
    }
    return total;
}

MultiPoly hessian_det(const MultiPoly& p) { return determinant(hessian_matrix(p)); }

std::optional<MultiPoly> poly_sqrt(const MultiPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("poly_sqrt of zero");
    auto [le, lc] = p.leading_term();
    Exponent half(le.size());
    for (std::size_t k = 0; k < le.size(); ++k) {
        if (le[k] % 2) return std::nullopt;
        half[k] = le[k] / 2;
    }
    auto root = gaussian_sqrt(lc);
    if (!root) return std::nullopt;
    MultiPoly s = MultiPoly::monomial(p.vars(), half, *root);
    GaussianRational two_lead = *root * GaussianRational(2);
    int low = p.min_total_degree();
    MultiPoly rem = p - s * s;
    while (!rem.is_zero()) {
        auto [re, rc] = rem.leading_term();
        Exponent e(re.size());
        for (std::size_t k = 0; k < re.size(); ++k) {
            e[k] = re[k] - half[k];
            if (e[k] < 0) return std::nullopt;
        }
        if (2 * total_degree(e) < low) return std::nullopt;
        if (!GrlexLess()(e, half)) return std::nullopt;
        MultiPoly term = MultiPoly::monomial(p.vars(), e, rc / two_lead);
        rem -= term * (s * GaussianRational(2) + term);
        s += term;
    }
    return s;
}

}  // namespace caustic
