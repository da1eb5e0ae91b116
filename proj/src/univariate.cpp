#include "caustic/univariate.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace caustic {

namespace mp = boost::multiprecision;
using BigFloat = mp::cpp_bin_float_50;
using BigComplex = mp::cpp_complex_50;

void trim(UPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int degree(const UPoly& p) {
    for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k)
        if (!p[k].is_zero()) return k;
    return -1;
}

UPoly to_upoly(const MultiPoly& p, std::size_t idx) {
    UPoly out(std::max(p.degree_in(idx) + 1, 0));
    for (const auto& [e, c] : p.terms()) {
        for (std::size_t k = 0; k < e.size(); ++k)
            if (k != idx && e[k] != 0) throw std::invalid_argument("polynomial is not univariate");
        out[e[idx]] += c;
    }
    trim(out);
    return out;
}

GaussianRational eval(const UPoly& p, const GaussianRational& x) {
    GaussianRational s(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) s = s * x + *it;
    return s;
}

UPoly derivative(const UPoly& p) {
    UPoly d;
    for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * GaussianRational(static_cast<long>(k)));
    trim(d);
    return d;
}

UPoly monic(const UPoly& p) {
    UPoly q = p;
    trim(q);
    if (q.empty()) return q;
    GaussianRational lc = q.back();
    for (auto& c : q) c /= lc;
    return q;
}

void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
    UPoly bb = b;
    trim(bb);
    if (bb.empty()) throw std::domain_error("univariate division by zero");
    r = a;
    trim(r);
    int db = degree(bb);
    q.assign(std::max<int>(degree(r) - db + 1, 0), GaussianRational(0));
    while (degree(r) >= db) {
        int dr = degree(r);
        GaussianRational c = r[dr] / bb[db];
        q[dr - db] = c;
        for (int k = 0; k <= db; ++k) r[dr - db + k] -= c * bb[k];
        trim(r);
    }
    trim(q);
}

UPoly gcd(UPoly a, UPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        UPoly q, r;
        divmod(a, b, q, r);
        a = monic(b);
        b = monic(r);
    }
    return monic(a);
}

UPoly squarefree_part(const UPoly& p) {
    UPoly g = gcd(p, derivative(p));
    if (degree(g) <= 0) return monic(p);
    UPoly q, r;
    divmod(p, g, q, r);
    return monic(q);
}

std::string upoly_str(const UPoly& p, const std::string& var) {
    MultiPoly m({var});
    for (std::size_t k = 0; k < p.size(); ++k) m.add_term({static_cast<int>(k)}, p[k]);
    return m.str();
}

namespace {

BigFloat to_big(const mpq_class& q) {
    return BigFloat(q.get_num().get_str()) / BigFloat(q.get_den().get_str());
}

template <class C>
std::vector<C> aberth(const std::vector<C>& coeffs, int max_iter, double tol) {
    using std::abs;
    using R = decltype(abs(C()));
    int n = static_cast<int>(coeffs.size()) - 1;
    std::vector<C> roots;
    if (n <= 0) return roots;
    // Cauchy-type radius bound
    R lead = abs(coeffs[n]);
    R radius = 0;
    for (int k = 0; k < n; ++k) radius = std::max<R>(radius, abs(coeffs[k]) / lead);
    radius = 1 + radius;
    R start = std::min<R>(radius, R(1e6));
    for (int k = 0; k < n; ++k) {
        R ang = R(2 * M_PI * k) / R(n) + R(0.4);
        roots.push_back(C(start * R(0.5) * cos(ang), start * R(0.5) * sin(ang)));
    }
    auto evaluate = [&](const C& z, C& val, C& der) {
        val = coeffs[n];
        der = C(0);
        for (int k = n - 1; k >= 0; --k) {
            der = der * z + val;
            val = val * z + coeffs[k];
        }
    };
    for (int it = 0; it < max_iter; ++it) {
        R worst = 0;
        for (int k = 0; k < n; ++k) {
            C val, der;
            evaluate(roots[k], val, der);
            if (abs(val) == R(0)) continue;
            C ratio = val / der;
            C sum(0);
            for (int j = 0; j < n; ++j)
                if (j != k) sum += C(1) / (roots[k] - roots[j]);
            C step = ratio / (C(1) - ratio * sum);
            roots[k] -= step;
            worst = std::max<R>(worst, abs(step) / (R(1) + abs(roots[k])));
        }
        if (worst < R(tol)) break;
    }
    return roots;
}

mpq_class big_rationalize(const BigFloat& x, const mpz_class& max_den) {
    bool neg = x < 0;
    BigFloat rest = neg ? BigFloat(-x) : x;
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int iter = 0; iter < 200; ++iter) {
        BigFloat a = floor(rest);
        mpz_class ai(a.convert_to<mp::cpp_int>().str());
        mpz_class p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        BigFloat frac = rest - a;
        if (frac < BigFloat("1e-40")) break;
        rest = 1 / frac;
    }
    if (q1 == 0) return mpq_class(0);
    mpq_class r(neg ? mpz_class(-p1) : p1, q1);
    r.canonicalize();
    return r;
}

std::vector<BigComplex> big_roots(const UPoly& p) {
    std::vector<BigComplex> c;
    for (const auto& v : p) c.emplace_back(to_big(v.re()), to_big(v.im()));
    return aberth(c, 2000, 1e-45);
}

}  // namespace

UnivariateRoots solve_univariate(const UPoly& p_in) {
    UnivariateRoots out;
    UPoly p = p_in;
    trim(p);
    if (p.empty()) throw std::invalid_argument("roots of the zero polynomial");
    p = squarefree_part(p);
    // Rational roots are cheap to spot: try them first through the numeric path.
    int guard = 0;
    while (degree(p) > 0 && guard++ < 4) {
        bool found = false;
        auto approx = big_roots(p);
        for (const auto& z : approx) {
            mpz_class bound("1000000000000");
            GaussianRational cand(big_rationalize(z.real(), bound), big_rationalize(z.imag(), bound));
            if (!eval(p, cand).is_zero()) continue;
            out.exact.push_back(cand);
            UPoly lin{-cand, GaussianRational(1)}, q, r;
            divmod(p, lin, q, r);
            p = monic(q);
            found = true;
        }
        if (!found) break;
    }
    if (degree(p) > 0) {
        out.residual = p;
        for (const auto& z : big_roots(p))
            out.numeric.emplace_back(z.real().convert_to<double>(), z.imag().convert_to<double>());
    } else {
        out.residual = UPoly{GaussianRational(1)};
    }
    return out;
}

std::vector<std::complex<double>> numeric_roots(std::vector<std::complex<double>> coeffs) {
    double scale = 0;
    for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
    while (!coeffs.empty() && std::abs(coeffs.back()) <= 1e-13 * scale) coeffs.pop_back();
    if (coeffs.size() <= 1) return {};
    using LC = std::complex<long double>;
    std::vector<LC> c(coeffs.begin(), coeffs.end());
    auto r = aberth(c, 3000, 1e-17);
    std::vector<std::complex<double>> out;
    for (const auto& z : r) out.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
    return out;
}

namespace {

using Coeffs = std::vector<MultiPoly>;

int cdeg(const Coeffs& a) {
    for (int k = static_cast<int>(a.size()) - 1; k >= 0; --k)
        if (!a[k].is_zero()) return k;
    return -1;
}

void ctrim(Coeffs& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

// lc(b)^(deg a - deg b + 1) * a = q*b + r
Coeffs pseudo_remainder(Coeffs a, const Coeffs& b) {
    int db = cdeg(b);
    const MultiPoly& lb = b[db];
    int da = cdeg(a);
    int e = da - db + 1;
    while (da >= db) {
        MultiPoly la = a[da];
        for (auto& c : a) c *= lb;
        for (int k = 0; k <= db; ++k) a[da - db + k] -= la * b[k];
        a[da] = MultiPoly(lb.vars());
        ctrim(a);
        --e;
        da = cdeg(a);
    }
    if (e > 0) {
        MultiPoly f = lb.pow(e);
        for (auto& c : a) c *= f;
    }
    return a;
}

MultiPoly exact_div(const MultiPoly& a, const MultiPoly& b) {
    if (b.is_constant()) {
        MultiPoly r = a;
        r *= GaussianRational(1) / b.constant_term();
        return r;
    }
    auto q = a.divide_exact(b);
    if (!q) throw std::logic_error("inexact division in subresultant sequence");
    return *q;
}

}  // namespace

MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, std::size_t idx) {
    const auto& vars = f.vars().empty() ? g.vars() : f.vars();
    MultiPoly zero(vars);
    if (f.is_zero() || g.is_zero()) return zero;
    Coeffs A = f.coefficients_in(idx), B = g.coefficients_in(idx);
    ctrim(A);
    ctrim(B);
    MultiPoly s = MultiPoly::constant(vars, GaussianRational(1));
    if (cdeg(A) < cdeg(B)) {
        std::swap(A, B);
        if ((cdeg(A) % 2) && (cdeg(B) % 2)) s = -s;
    }
    if (cdeg(B) == 0) return s * B[0].pow(cdeg(A));
    MultiPoly gg = MultiPoly::constant(vars, GaussianRational(1));
    MultiPoly h = gg;
    while (true) {
        int delta = cdeg(A) - cdeg(B);
        if ((cdeg(A) % 2) && (cdeg(B) % 2)) s = -s;
        Coeffs R = pseudo_remainder(A, B);
        A = B;
        MultiPoly divisor = gg * h.pow(delta);
        for (auto& c : R) c = exact_div(c, divisor);
        B = R;
        ctrim(B);
        if (B.empty()) return zero;
        gg = A[cdeg(A)];
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = gg;
        } else {
            h = exact_div(gg.pow(delta), h.pow(delta - 1));
        }
        if (cdeg(B) == 0) {
            int da = cdeg(A);
            if (da == 1) return s * B[0];
            MultiPoly num = B[0].pow(da);
            return s * exact_div(num, h.pow(da - 1));
        }
    }
}

}  // namespace caustic
