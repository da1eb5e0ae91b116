#include "caustic/gaussian.hpp"

#include <cmath>
#include <stdexcept>

namespace caustic {

GaussianRational::GaussianRational(const mpq_class& re, const mpq_class& im) : re_(re), im_(im) {
    re_.canonicalize();
    im_.canonicalize();
}

GaussianRational GaussianRational::frac(long num, long den) {
    if (den == 0) throw std::domain_error("zero denominator");
    return GaussianRational(mpq_class(num, den));
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero in Q(i)");
    if (sgn(o.im_) == 0) {
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    mpq_class n = o.norm();
    mpq_class r = (re_ * o.re_ + im_ * o.im_) / n;
    mpq_class i = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

GaussianRational GaussianRational::pow(unsigned k) const {
    GaussianRational result(1), base = *this;
    while (k) {
        if (k & 1u) result *= base;
        k >>= 1u;
        if (k) base *= base;
    }
    return result;
}

std::string GaussianRational::str() const {
    auto q = [](const mpq_class& v) { return v.get_str(); };
    bool has_re = sgn(re_) != 0, has_im = sgn(im_) != 0;
    if (!has_im) return q(re_);
    std::string im_part;
    mpq_class a = abs(im_);
    if (a == 1)
        im_part = "i";
    else
        im_part = q(a) + "*i";
    if (!has_re) return (sgn(im_) < 0 ? "-" : "") + im_part;
    return q(re_) + (sgn(im_) < 0 ? "-" : "+") + im_part;
}

std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
    if (sgn(q) < 0) return std::nullopt;
    if (sgn(q) == 0) return mpq_class(0);
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return mpq_class(rn, rd);
}

std::optional<GaussianRational> gaussian_sqrt(const GaussianRational& z) {
    if (z.is_zero()) return GaussianRational(0);
    auto modulus = rational_sqrt(z.norm());
    if (!modulus) return std::nullopt;
    auto a = rational_sqrt((*modulus + z.re()) / 2);
    auto b = rational_sqrt((*modulus - z.re()) / 2);
    if (!a || !b) return std::nullopt;
    mpq_class im = sgn(z.im()) < 0 ? mpq_class(-*b) : *b;
    GaussianRational r(*a, im);
    // principal branch: Re > 0, or Re == 0 and Im >= 0
    if (sgn(r.re()) < 0 || (sgn(r.re()) == 0 && sgn(r.im()) < 0)) r = -r;
    return r;
}

mpq_class rationalize(double x, long max_den) {
    if (!std::isfinite(x)) throw std::domain_error("non-finite value");
    long sign = x < 0 ? -1 : 1;
    double v = std::fabs(x);
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double rest = v;
    for (int iter = 0; iter < 64; ++iter) {
        double a = std::floor(rest);
        mpz_class ai(a);
        mpz_class p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double frac = rest - a;
        if (frac < 1e-15) break;
        rest = 1.0 / frac;
        if (rest > 1e15) break;
    }
    if (q1 == 0) return mpq_class(0);
    mpq_class r(p1 * sign, q1);
    r.canonicalize();
    return r;
}

}  // namespace caustic
