#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "caustic/gaussian.hpp"
#include "caustic/multipoly.hpp"

namespace caustic {

inline bool coeff_is_zero(const GaussianRational& c) { return c.is_zero(); }
inline bool coeff_is_zero(const std::complex<double>& c) { return c == std::complex<double>(0); }
inline std::complex<double> coeff_from(const GaussianRational& c, const std::complex<double>*) { return c.to_complex(); }
inline GaussianRational coeff_from(const GaussianRational& c, const GaussianRational*) { return c; }

// Bivariate power series in (u, v) truncated at total degree < order.
template <class K>
class Series2 {
public:
    Series2() = default;
    explicit Series2(int order) : order_(order), c_(size_for(order), K(0)) {
        if (order < 1) throw std::invalid_argument("series order must be positive");
    }

    static Series2 constant(int order, const K& value) {
        Series2 s(order);
        s.c_[0] = value;
        return s;
    }
    static Series2 u(int order) {
        Series2 s(order);
        if (order > 1) s.at(1, 0) = K(1);
        return s;
    }
    static Series2 v(int order) {
        Series2 s(order);
        if (order > 1) s.at(0, 1) = K(1);
        return s;
    }

    int order() const { return order_; }
    static std::size_t index(int i, int j) {
        int n = i + j;
        return static_cast<std::size_t>(n) * (n + 1) / 2 + j;
    }
    K& at(int i, int j) { return c_[index(i, j)]; }
    const K& at(int i, int j) const { return c_[index(i, j)]; }
    const K& constant_term() const { return c_[0]; }

    Series2& operator+=(const Series2& o) {
        check(o);
        for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
        return *this;
    }
    Series2& operator-=(const Series2& o) {
        check(o);
        for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
        return *this;
    }
    Series2& operator*=(const K& s) {
        for (auto& c : c_) c *= s;
        return *this;
    }
    friend Series2 operator+(Series2 a, const Series2& b) { return a += b; }
    friend Series2 operator-(Series2 a, const Series2& b) { return a -= b; }
    friend Series2 operator*(Series2 a, const K& s) { return a *= s; }
    Series2 operator-() const {
        Series2 r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    friend Series2 operator*(const Series2& a, const Series2& b) {
        a.check(b);
        Series2 r(a.order_);
        struct Entry {
            int i, j;
            const K* c;
        };
        std::vector<Entry> na, nb;
        for (int n = 0; n < a.order_; ++n)
            for (int j = 0; j <= n; ++j) {
                if (!coeff_is_zero(a.at(n - j, j))) na.push_back({n - j, j, &a.at(n - j, j)});
                if (!coeff_is_zero(b.at(n - j, j))) nb.push_back({n - j, j, &b.at(n - j, j)});
            }
        for (const auto& x : na)
            for (const auto& y : nb) {
                if (x.i + x.j + y.i + y.j >= a.order_) break;  // entries sorted by degree
                r.at(x.i + y.i, x.j + y.j) += (*x.c) * (*y.c);
            }
        return r;
    }
    Series2& operator*=(const Series2& o) { return *this = *this * o; }

    // Minimal total degree of a nonzero term; nullopt when zero to this order.
    std::optional<int> valuation() const {
        for (int n = 0; n < order_; ++n)
            for (int j = 0; j <= n; ++j)
                if (!coeff_is_zero(at(n - j, j))) return n;
        return std::nullopt;
    }

    // Coefficients of the degree-n part, indexed by the power of v.
    std::vector<K> homogeneous(int n) const {
        std::vector<K> h;
        for (int j = 0; j <= n; ++j) h.push_back(at(n - j, j));
        return h;
    }

    Series2 truncated(int order) const {
        Series2 r(order);
        int n_max = std::min(order, order_);
        for (int n = 0; n < n_max; ++n)
            for (int j = 0; j <= n; ++j) r.at(n - j, j) = at(n - j, j);
        return r;
    }

    // Reciprocal of a series with invertible constant term.
    Series2 inverse() const {
        if (coeff_is_zero(c_[0])) throw std::domain_error("series is not a unit");
        Series2 r(order_);
        K inv0 = K(1) / c_[0];
        r.c_[0] = inv0;
        for (int n = 1; n < order_; ++n)
            for (int j = 0; j <= n; ++j) {
                int i = n - j;
                K acc(0);
                for (int a = 0; a <= i; ++a)
                    for (int b = 0; b <= j; ++b) {
                        if (a == 0 && b == 0) continue;
                        const K& x = at(a, b);
                        if (coeff_is_zero(x)) continue;
                        acc += x * r.at(i - a, j - b);
                    }
                r.at(i, j) = -(acc * inv0);
            }
        return r;
    }

    // (u, v) <- (a u + b v, c u + d v)
    Series2 linear_change(const K& a, const K& b, const K& c, const K& d) const {
        Series2 U(order_), V(order_);
        if (order_ > 1) {
            U.at(1, 0) = a;
            U.at(0, 1) = b;
            V.at(1, 0) = c;
            V.at(0, 1) = d;
        }
        std::vector<Series2> pu{constant(order_, K(1))}, pv{constant(order_, K(1))};
        for (int k = 1; k < order_; ++k) {
            pu.push_back(pu.back() * U);
            pv.push_back(pv.back() * V);
        }
        Series2 r(order_);
        for (int n = 0; n < order_; ++n)
            for (int j = 0; j <= n; ++j) {
                const K& x = at(n - j, j);
                if (coeff_is_zero(x)) continue;
                Series2 term = pu[n - j] * pv[j];
                term *= x;
                r += term;
            }
        return r;
    }

    // Evaluate as a polynomial (the truncation) at a numeric point.
    template <class Z>
    Z evaluate(const Z& uu, const Z& vv) const {
        Z s(0);
        for (int n = 0; n < order_; ++n)
            for (int j = 0; j <= n; ++j) {
                const K& x = at(n - j, j);
                if (coeff_is_zero(x)) continue;
                Z m = Z(x);
                for (int a = 0; a < n - j; ++a) m *= uu;
                for (int b = 0; b < j; ++b) m *= vv;
                s += m;
            }
        return s;
    }

    const std::vector<K>& raw() const { return c_; }

private:
    int order_ = 0;
    std::vector<K> c_;
    static std::size_t size_for(int order) { return static_cast<std::size_t>(order) * (order + 1) / 2; }
    void check(const Series2& o) const {
        if (o.order_ != order_) throw std::invalid_argument("series orders differ");
    }
};

using TruncSeries2 = Series2<GaussianRational>;
using NumSeries2 = Series2<std::complex<double>>;

// Polynomial in the two local variables with the truncation's terms.
MultiPoly series_to_poly(const TruncSeries2& s, const std::vector<std::string>& vars = {"u", "v"});
TruncSeries2 poly_to_series(const MultiPoly& p, int order);

// Numeric valuation: the first degree whose part exceeds tol times the series scale.
std::optional<int> numeric_valuation(const NumSeries2& s, double tol);

}  // namespace caustic
