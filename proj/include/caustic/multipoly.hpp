#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "caustic/gaussian.hpp"

namespace caustic {

using Exponent = std::vector<int>;

// Graded lexicographic order, first variable most significant.
struct GrlexLess {
    bool operator()(const Exponent& a, const Exponent& b) const;
};

int total_degree(const Exponent& e);

class MultiPoly {
public:
    using TermMap = std::map<Exponent, GaussianRational, GrlexLess>;

    MultiPoly() = default;
    explicit MultiPoly(std::vector<std::string> vars);

    static MultiPoly constant(const std::vector<std::string>& vars, const GaussianRational& c);
    static MultiPoly variable(const std::vector<std::string>& vars, const std::string& name);
    static MultiPoly monomial(const std::vector<std::string>& vars, const Exponent& e, const GaussianRational& c);

    const std::vector<std::string>& vars() const { return vars_; }
    std::size_t nvars() const { return vars_.size(); }
    int var_index(const std::string& name) const;  // throws on unknown
    bool has_var(const std::string& name) const;
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    GaussianRational constant_term() const;
    GaussianRational coefficient(const Exponent& e) const;
    int total_degree() const;      // -1 for zero
    int min_total_degree() const;  // -1 for zero
    int degree_in(std::size_t idx) const;
    bool involves(std::size_t idx) const { return degree_in(idx) > 0; }

    void add_term(const Exponent& e, const GaussianRational& c);

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const MultiPoly& o);
    MultiPoly& operator*=(const GaussianRational& c);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(MultiPoly a, const GaussianRational& c) { return a *= c; }
    friend MultiPoly operator*(const GaussianRational& c, MultiPoly a) { return a *= c; }
    MultiPoly operator-() const;
    MultiPoly pow(unsigned k) const;

    friend bool operator==(const MultiPoly& a, const MultiPoly& b);
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    MultiPoly differentiate(std::size_t idx) const;
    MultiPoly differentiate(const std::string& name) const { return differentiate(var_index(name)); }

    GaussianRational evaluate(const std::vector<GaussianRational>& pt) const;
    std::complex<double> evaluate(const std::vector<std::complex<double>>& pt) const;
    // Largest |coefficient * monomial| at pt, used as a scale for residuals.
    double magnitude(const std::vector<std::complex<double>>& pt) const;

    // Ring morphism. Variables without an image are kept when the target
    // variable list contains them.
    MultiPoly substitute(const std::map<std::string, MultiPoly>& assignment) const;
    // Fix some variables to constants; result keeps the same variable list.
    MultiPoly partial_evaluate(std::size_t idx, const GaussianRational& value) const;
    // Re-express in another variable list; fails if a used variable is missing.
    MultiPoly with_vars(const std::vector<std::string>& vars) const;

    std::optional<int> homogeneous_degree() const;  // throws on zero polynomial
    std::pair<Exponent, GaussianRational> leading_term() const;

    // Division by one polynomial in grlex order: p = q*d + r.
    std::pair<MultiPoly, MultiPoly> divide(const MultiPoly& d) const;
    std::optional<MultiPoly> divide_exact(const MultiPoly& d) const;
    bool divisible_by(const MultiPoly& d) const { return divide(d).second.is_zero(); }

    // p = sum_k c_k * v^k with c_k free of v.
    std::vector<MultiPoly> coefficients_in(std::size_t idx) const;
    static MultiPoly from_coefficients(const std::vector<MultiPoly>& coeffs, std::size_t idx);

    // Parts of a fixed total degree.
    MultiPoly homogeneous_part(int degree) const;

    std::string str() const;

private:
    std::vector<std::string> vars_;
    TermMap terms_;
    void check_compatible(const MultiPoly& o) const;
    MultiPoly& adopt_vars(const MultiPoly& o);
};

MultiPoly hessian_det(const MultiPoly& p);
std::vector<std::vector<MultiPoly>> hessian_matrix(const MultiPoly& p);
MultiPoly determinant(std::vector<std::vector<MultiPoly>> m);

// Exact square root with the leading coefficient on the principal branch.
std::optional<MultiPoly> poly_sqrt(const MultiPoly& p);

std::vector<std::string> xyzt();

}  // namespace caustic
