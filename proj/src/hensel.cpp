#include "caustic/hensel.hpp"

#include <cmath>
#include <stdexcept>

namespace caustic {

namespace {

double modulus2(const GaussianRational& c) { return c.norm().get_d(); }
double modulus2(const std::complex<double>& c) { return std::norm(c); }

bool greater(const GaussianRational& a, const GaussianRational& b) { return a.norm() > b.norm(); }
bool greater(const std::complex<double>& a, const std::complex<double>& b) {
    return std::norm(a) > std::norm(b) * (1 + 1e-12);
}

bool is_zero_coeff(const GaussianRational& c, double) { return c.is_zero(); }
bool is_zero_coeff(const std::complex<double>& c, double scale) { return std::abs(c) <= 1e-12 * scale; }

template <class K>
std::vector<K> center_values(const ProjPoint& p);

template <>
std::vector<GaussianRational> center_values<GaussianRational>(const ProjPoint& p) {
    return p.coords();
}

template <>
std::vector<std::complex<double>> center_values<std::complex<double>>(const ProjPoint& p) {
    return p.approx();
}

template <class K>
K eval_at(const MultiPoly& p, const std::vector<K>& pt);

template <>
GaussianRational eval_at(const MultiPoly& p, const std::vector<GaussianRational>& pt) {
    return p.evaluate(pt);
}

template <>
std::complex<double> eval_at(const MultiPoly& p, const std::vector<std::complex<double>>& pt) {
    return p.evaluate(pt);
}

// p restricted to the chart, grouped by powers of the solved coordinate.
template <class K>
std::vector<Series2<K>> grouped(const MultiPoly& p, const BasicChart<K>& ch) {
    int N = ch.order;
    int dw = std::max(p.degree_in(ch.solved_var), 0);
    std::vector<Series2<K>> parts(dw + 1, Series2<K>(N));
    std::array<std::vector<std::vector<K>>, 2> pw;
    for (int f = 0; f < 2; ++f) {
        int idx = ch.free_vars[f];
        int deg = std::max(p.degree_in(idx), 0);
        const K& c = ch.center[idx];
        pw[f].push_back({K(1)});
        for (int k = 1; k <= deg; ++k) {
            const auto& prev = pw[f].back();
            std::vector<K> next(std::min<std::size_t>(prev.size() + 1, N), K(0));
            for (std::size_t j = 0; j < prev.size(); ++j) {
                if (j < next.size()) next[j] += prev[j] * c;
                if (j + 1 < next.size()) next[j + 1] += prev[j];
            }
            pw[f].push_back(std::move(next));
        }
    }
    const K* tag = nullptr;
    for (const auto& [e, c] : p.terms()) {
        K cc = coeff_from(c, tag);
        const auto& A = pw[0][e[ch.free_vars[0]]];
        const auto& B = pw[1][e[ch.free_vars[1]]];
        auto& target = parts[e[ch.solved_var]];
        for (std::size_t i = 0; i < A.size(); ++i) {
            if (coeff_is_zero(A[i])) continue;
            K ca = cc * A[i];
            for (std::size_t j = 0; j < B.size() && static_cast<int>(i + j) < N; ++j) {
                if (coeff_is_zero(B[j])) continue;
                target.at(static_cast<int>(i), static_cast<int>(j)) += ca * B[j];
            }
        }
    }
    return parts;
}

template <class K>
Series2<K> horner(const std::vector<Series2<K>>& parts, const Series2<K>& w) {
    Series2<K> r = parts.back();
    for (int k = static_cast<int>(parts.size()) - 2; k >= 0; --k) r = r * w + parts[k];
    return r;
}

template <class K>
BasicChart<K> build_chart(const MultiPoly& F, const ProjPoint& center, int order) {
    if (order < 2) throw std::invalid_argument("chart order must be at least 2");
    if (F.nvars() != 4) throw std::invalid_argument("chart needs a surface in four variables");
    if (center.dim() != 4) throw std::invalid_argument("chart center must have four coordinates");
    BasicChart<K> ch;
    ch.order = order;
    std::vector<K> c = center_values<K>(center);
    int fixed = 0;
    for (int k = 1; k < 4; ++k)
        if (greater(c[k], c[fixed])) fixed = k;
    K scale = c[fixed];
    for (auto& v : c) v = v / scale;
    ch.fixed_var = fixed;
    ch.center = c;

    double fscale = 1.0;
    if constexpr (std::is_same_v<K, std::complex<double>>) {
        fscale = std::max(F.magnitude(c), 1e-300);
        if (std::abs(F.evaluate(c)) > 1e-8 * fscale) throw std::invalid_argument("chart center is not on the surface");
    } else {
        if (!F.evaluate(c).is_zero()) throw std::invalid_argument("chart center is not on the surface");
    }
    int solved = -1;
    K best(0);
    double gscale = 0;
    std::array<K, 4> grad;
    for (int k = 0; k < 4; ++k) {
        grad[k] = eval_at<K>(F.differentiate(k), c);
        gscale = std::max(gscale, std::sqrt(modulus2(grad[k])));
    }
    for (int k = 0; k < 4; ++k) {
        if (k == fixed) continue;
        if (is_zero_coeff(grad[k], gscale)) continue;
        if (solved < 0 || greater(grad[k], best)) {
            solved = k;
            best = grad[k];
        }
    }
    if (solved < 0 || gscale == 0) throw std::invalid_argument("singular center");
    ch.solved_var = solved;
    int f = 0;
    for (int k = 0; k < 4; ++k)
        if (k != fixed && k != solved) ch.free_vars[f++] = k;

    for (int k = 0; k < 4; ++k) ch.coord_series[k] = Series2<K>::constant(order, c[k]);
    ch.coord_series[ch.free_vars[0]] += Series2<K>::u(order);
    ch.coord_series[ch.free_vars[1]] += Series2<K>::v(order);

    auto parts = grouped(F, ch);
    std::vector<Series2<K>> dparts;
    for (std::size_t k = 1; k < parts.size(); ++k) dparts.push_back(parts[k] * K(static_cast<long>(k)));
    if (dparts.empty()) throw std::invalid_argument("singular center");
    Series2<K> w = Series2<K>::constant(order, c[solved]);
    int iterations = 4;
    for (int n = 1; n < order; n *= 2) ++iterations;
    for (int it = 0; it < iterations; ++it) {
        Series2<K> g = horner(parts, w);
        bool done = true;
        for (const auto& x : g.raw())
            if (!is_zero_coeff(x, fscale * 1e-4)) {
                done = false;
                break;
            }
        if (done) break;
        Series2<K> dg = horner(dparts, w);
        w -= g * dg.inverse();
    }
    if constexpr (std::is_same_v<K, GaussianRational>) {
        if (horner(parts, w).valuation()) throw std::logic_error("Newton lifting did not converge");
    }
    ch.coord_series[solved] = w;
    return ch;
}

}  // namespace

LocalChart hensel_chart(const MultiPoly& F, const ProjPoint& center, int order) {
    if (!center.is_exact()) throw std::invalid_argument("exact chart needs an exact center");
    return build_chart<GaussianRational>(F, center, order);
}

NumChart hensel_chart_numeric(const MultiPoly& F, const ProjPoint& center, int order) {
    return build_chart<std::complex<double>>(F, center, order);
}

TruncSeries2 compose(const MultiPoly& p, const LocalChart& chart) {
    return horner(grouped(p, chart), chart.coord_series[chart.solved_var]);
}

NumSeries2 compose(const MultiPoly& p, const NumChart& chart) {
    return horner(grouped(p, chart), chart.coord_series[chart.solved_var]);
}

}  // namespace caustic
