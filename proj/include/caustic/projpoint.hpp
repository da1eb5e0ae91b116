#pragma once

#include <complex>
#include <string>
#include <vector>

#include "caustic/gaussian.hpp"

namespace caustic {

// Homogeneous point, exact over Q(i) or floating complex.
// Exact points are scaled so the first nonzero coordinate is 1,
// numeric points so the largest-modulus coordinate is 1.
class ProjPoint {
public:
    ProjPoint() = default;
    static ProjPoint exact(std::vector<GaussianRational> coords);
    static ProjPoint numeric(std::vector<std::complex<double>> coords);

    bool is_exact() const { return exact_; }
    std::size_t dim() const { return exact_ ? q_.size() : c_.size(); }
    const std::vector<GaussianRational>& coords() const;  // exact flavor only
    std::vector<std::complex<double>> approx() const;     // both flavors

    // Same projective point. Numeric comparisons use a relative tolerance.
    bool same(const ProjPoint& o, double tol = 1e-8) const;
    friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.same(b); }

    std::string str() const;

private:
    bool exact_ = true;
    std::vector<GaussianRational> q_;
    std::vector<std::complex<double>> c_;
};

std::string complex_str(std::complex<double> z, int digits = 12);

}  // namespace caustic
