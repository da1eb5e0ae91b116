#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <string>

namespace caustic {

// Exact complex number re + im*i with rational parts.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long v) : re_(v), im_(0) {}
    GaussianRational(const mpq_class& re, const mpq_class& im = mpq_class(0));

    static GaussianRational i() { return GaussianRational(0, 1); }
    static GaussianRational frac(long num, long den);

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

    GaussianRational conj() const { return GaussianRational(re_, -im_); }
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    GaussianRational operator-() const { return GaussianRational(-re_, -im_); }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    GaussianRational pow(unsigned k) const;

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    // "3", "-1/2", "i", "-2*i", "1/2+i", "1-3/4*i"
    std::string str() const;

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

std::optional<mpq_class> rational_sqrt(const mpq_class& q);

// Square root inside Q(i), principal branch: positive real part, or
// zero real part and nonnegative imaginary part.
std::optional<GaussianRational> gaussian_sqrt(const GaussianRational& z);

// Best rational approximation with denominator bounded by max_den.
mpq_class rationalize(double x, long max_den);

}  // namespace caustic
