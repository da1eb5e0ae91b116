#include "caustic/projpoint.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace caustic {

ProjPoint ProjPoint::exact(std::vector<GaussianRational> coords) {
    ProjPoint p;
    std::size_t k = 0;
    while (k < coords.size() && coords[k].is_zero()) ++k;
    if (k == coords.size()) throw std::invalid_argument("zero vector is not a projective point");
    GaussianRational lead = coords[k];
    for (auto& c : coords) c /= lead;
    p.exact_ = true;
    p.q_ = std::move(coords);
    return p;
}

ProjPoint ProjPoint::numeric(std::vector<std::complex<double>> coords) {
    ProjPoint p;
    std::size_t best = 0;
    for (std::size_t k = 1; k < coords.size(); ++k)
        if (std::abs(coords[k]) > std::abs(coords[best]) * (1 + 1e-12)) best = k;
    if (coords.empty() || std::abs(coords[best]) == 0) throw std::invalid_argument("zero vector is not a projective point");
    std::complex<double> lead = coords[best];
    for (auto& c : coords) c /= lead;
    p.exact_ = false;
    p.c_ = std::move(coords);
    return p;
}

const std::vector<GaussianRational>& ProjPoint::coords() const {
    if (!exact_) throw std::logic_error("numeric point has no exact coordinates");
    return q_;
}

std::vector<std::complex<double>> ProjPoint::approx() const {
    if (!exact_) return c_;
    std::vector<std::complex<double>> out;
    for (const auto& v : q_) out.push_back(v.to_complex());
    return out;
}

bool ProjPoint::same(const ProjPoint& o, double tol) const {
    if (dim() != o.dim()) return false;
    if (exact_ && o.exact_) {
        for (std::size_t k = 0; k < q_.size(); ++k)
            if (q_[k] != o.q_[k]) return false;
        return true;
    }
    auto a = approx(), b = o.approx();
    double na = 0, nb = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        na = std::max(na, std::abs(a[k]));
        nb = std::max(nb, std::abs(b[k]));
    }
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (std::abs(a[i] * b[j] - a[j] * b[i]) > tol * na * nb) return false;
    return true;
}

std::string complex_str(std::complex<double> z, int digits) {
    char buf[64];
    double re = z.real(), im = z.imag();
    double mag = std::max(std::abs(re), std::abs(im));
    if (std::abs(im) <= 1e-14 * std::max(mag, 1.0)) im = 0;
    if (std::abs(re) <= 1e-14 * std::max(mag, 1.0)) re = 0;
    if (im == 0) {
        std::snprintf(buf, sizeof buf, "%.*g", digits, re);
        return buf;
    }
    if (re == 0) {
        std::snprintf(buf, sizeof buf, "%.*g*i", digits, im);
        return buf;
    }
    std::snprintf(buf, sizeof buf, "%.*g%+.*g*i", digits, re, digits, im);
    return buf;
}

std::string ProjPoint::str() const {
    std::string s = "[";
    for (std::size_t k = 0; k < dim(); ++k) {
        if (k) s += ":";
        s += exact_ ? q_[k].str() : complex_str(c_[k]);
    }
    return s + "]";
}

}  // namespace caustic
