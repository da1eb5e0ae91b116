#include "caustic/intersection.hpp"

#include "caustic/univariate.hpp"

#include <algorithm>
#include <cstdint>
#include <type_traits>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace caustic {

const std::vector<int>& default_schedule() {
    static const std::vector<int> s{6, 10, 16, 24};
    return s;
}

namespace {

// Exact field operations over Q(i).
struct GaussianField {
    using T = GaussianRational;
    T zero() const { return T(0); }
    bool is_zero(const T& a) const { return a.is_zero(); }
    T inv(const T& a) const { return T(1) / a; }
    T from(const GaussianRational& c) const { return c; }
};

// Z/p with p = 1 mod 4, so that i maps to a square root of -1.
struct ModField {
    using T = std::uint64_t;
    std::uint64_t p, root;  // root^2 = -1 mod p
    T zero() const { return 0; }
    bool is_zero(T a) const { return a == 0; }
    T add(T a, T b) const { return (a + b) % p; }
    T sub(T a, T b) const { return (a + p - b) % p; }
    T mul(T a, T b) const { return static_cast<T>(static_cast<unsigned __int128>(a) * b % p); }
    T pow(T a, std::uint64_t e) const {
        T r = 1;
        for (; e; e >>= 1, a = mul(a, a))
            if (e & 1) r = mul(r, a);
        return r;
    }
    T inv(T a) const { return pow(a, p - 2); }
    // nullopt when a denominator vanishes modulo p
    std::optional<T> reduce(const mpq_class& q) const {
        T num = mpz_fdiv_ui(q.get_num_mpz_t(), p), den = mpz_fdiv_ui(q.get_den_mpz_t(), p);
        if (den == 0) return std::nullopt;
        return mul(num, inv(den));
    }
    std::optional<T> from(const GaussianRational& c) const {
        auto a = reduce(c.re()), b = reduce(c.im());
        if (!a || !b) return std::nullopt;
        return add(*a, mul(*b, root));
    }
};

template <class T> T f_add(const GaussianField&, const T& a, const T& b) { return a + b; }
template <class T> T f_sub(const GaussianField&, const T& a, const T& b) { return a - b; }
template <class T> T f_mul(const GaussianField&, const T& a, const T& b) { return a * b; }
inline std::uint64_t f_add(const ModField& f, std::uint64_t a, std::uint64_t b) { return f.add(a, b); }
inline std::uint64_t f_sub(const ModField& f, std::uint64_t a, std::uint64_t b) { return f.sub(a, b); }
inline std::uint64_t f_mul(const ModField& f, std::uint64_t a, std::uint64_t b) { return f.mul(a, b); }

template <class Field>
using USeries = std::vector<typename Field::T>;  // polynomial in u, truncated

template <class Field>
int uval(const Field& fd, const USeries<Field>& a) {
    for (std::size_t k = 0; k < a.size(); ++k)
        if (!fd.is_zero(a[k])) return static_cast<int>(k);
    return -1;
}

// Valuation of det over K[[u]] with entries known modulo u^prec, by
// elimination on pivots of least valuation.
template <class Field>
std::optional<int> det_valuation(const Field& fd, std::vector<std::vector<USeries<Field>>> m, int prec) {
    using T = typename Field::T;
    std::size_t n = m.size();
    int total = 0;
    std::vector<std::size_t> rows(n), cols(n);
    for (std::size_t k = 0; k < n; ++k) rows[k] = cols[k] = k;
    for (std::size_t step = 0; step < n; ++step) {
        int best = -1;
        std::size_t br = 0, bc = 0;
        for (std::size_t r = step; r < n && best != 0; ++r)
            for (std::size_t c = step; c < n; ++c) {
                int v = uval(fd, m[rows[r]][cols[c]]);
                if (v >= 0 && v < prec && (best < 0 || v < best)) {
                    best = v;
                    br = r;
                    bc = c;
                    if (v == 0) break;
                }
            }
        if (best < 0) return std::nullopt;
        std::swap(rows[step], rows[br]);
        std::swap(cols[step], cols[bc]);
        const USeries<Field>& piv = m[rows[step]][cols[step]];
        int new_prec = prec - best;
        USeries<Field> unit(new_prec, fd.zero());
        for (int k = 0; k < new_prec && best + k < static_cast<int>(piv.size()); ++k) unit[k] = piv[best + k];
        USeries<Field> inv(new_prec, fd.zero());
        T inv0 = fd.inv(unit[0]);
        inv[0] = inv0;
        for (int k = 1; k < new_prec; ++k) {
            T acc = fd.zero();
            for (int j = 1; j <= k; ++j)
                if (!fd.is_zero(unit[j])) acc = f_add(fd, acc, f_mul(fd, unit[j], inv[k - j]));
            inv[k] = f_sub(fd, fd.zero(), f_mul(fd, acc, inv0));
        }
        for (std::size_t r = step + 1; r < n; ++r) {
            USeries<Field>& lead = m[rows[r]][cols[step]];
            if (uval(fd, lead) < 0) continue;
            USeries<Field> factor(new_prec, fd.zero());
            for (int i = 0; i < new_prec && best + i < static_cast<int>(lead.size()); ++i) {
                const T& sh = lead[best + i];
                if (fd.is_zero(sh)) continue;
                for (int j = 0; i + j < new_prec; ++j)
                    if (!fd.is_zero(inv[j])) factor[i + j] = f_add(fd, factor[i + j], f_mul(fd, sh, inv[j]));
            }
            for (std::size_t c = step + 1; c < n; ++c) {
                const USeries<Field>& src = m[rows[step]][cols[c]];
                USeries<Field>& dst = m[rows[r]][cols[c]];
                dst.resize(new_prec, fd.zero());
                for (int i = 0; i < new_prec; ++i) {
                    if (fd.is_zero(factor[i])) continue;
                    for (int j = 0; i + j < new_prec && j < static_cast<int>(src.size()); ++j)
                        if (!fd.is_zero(src[j])) dst[i + j] = f_sub(fd, dst[i + j], f_mul(fd, factor[i], src[j]));
                }
            }
            lead.assign(1, fd.zero());
        }
        for (std::size_t r = step + 1; r < n; ++r)
            for (std::size_t c = step + 1; c < n; ++c) m[rows[r]][cols[c]].resize(new_prec, fd.zero());
        total += best;
        prec = new_prec;
    }
    return total;
}

template <class Field>
std::optional<std::optional<int>> valuation_over(const Field& fd, const TruncSeries2& f, const TruncSeries2& g) {
    using T = typename Field::T;
    int N = f.order();
    bool bad = false;
    auto conv = [&](const GaussianRational& c) -> T {
        if constexpr (std::is_same_v<Field, GaussianField>) {
            return c;
        } else {
            auto r = fd.from(c);
            if (!r) bad = true;
            return r ? *r : 0;
        }
    };
    auto split = [&](const TruncSeries2& s) {
        std::vector<USeries<Field>> co(N, USeries<Field>(N, fd.zero()));
        int deg = -1;
        for (int n = 0; n < N; ++n)
            for (int j = 0; j <= n; ++j)
                if (!s.at(n - j, j).is_zero()) {
                    co[j][n - j] = conv(s.at(n - j, j));
                    deg = std::max(deg, j);
                }
        co.resize(deg + 1);
        return co;
    };
    auto F = split(f), G = split(g);
    if (bad) return std::nullopt;
    if (F.empty() || G.empty()) return std::optional<int>();
    int m = static_cast<int>(F.size()) - 1, n = static_cast<int>(G.size()) - 1;
    if (m == 0 && n == 0) return std::optional<int>();
    int size = m + n;
    // the resultant of the truncations has degree below (N-1)^2 + 1
    int cap = std::min(128, (N - 1) * (N - 1) + 1);
    for (int prec = std::min(16, cap);; prec = std::min(2 * prec, cap)) {
        std::vector<std::vector<USeries<Field>>> S(size, std::vector<USeries<Field>>(size, USeries<Field>(1, fd.zero())));
        for (int r = 0; r < n; ++r)
            for (int k = 0; k <= m; ++k) S[r][r + m - k] = F[k];
        for (int r = 0; r < m; ++r)
            for (int k = 0; k <= n; ++k) S[n + r][r + n - k] = G[k];
        for (auto& row : S)
            for (auto& e : row) e.resize(prec, fd.zero());
        auto v = det_valuation(fd, std::move(S), prec);
        if (v) return v;
        if (prec == cap) return std::optional<int>();
    }
}

std::pair<TruncSeries2, TruncSeries2> changed(const TruncSeries2& f, const TruncSeries2& g, const LinearChange& ch) {
    GaussianRational a(ch[0]), b(ch[1]), c(ch[2]), d(ch[3]);
    return {f.linear_change(a, b, c, d), g.linear_change(a, b, c, d)};
}

const ModField kPrimes[] = {{4611686018427387817ULL, 4490822397581186023ULL},
                            {4611686018427387761ULL, 3481184452870754207ULL},
                            {4611686018427387737ULL, 4166598643325741967ULL},
                            {4611686018427387733ULL, 678134394580861710ULL}};

}  // namespace

std::optional<int> resultant_valuation_exact(const TruncSeries2& f_in, const TruncSeries2& g_in, const LinearChange& ch) {
    if (!f_in.constant_term().is_zero() || !g_in.constant_term().is_zero()) return 0;
    auto [f, g] = changed(f_in, g_in, ch);
    return *valuation_over(GaussianField{}, f, g);
}

std::optional<int> resultant_valuation(const TruncSeries2& f_in, const TruncSeries2& g_in, const LinearChange& ch) {
    if (!f_in.constant_term().is_zero() || !g_in.constant_term().is_zero()) return 0;
    auto [f, g] = changed(f_in, g_in, ch);
    // Reduction can only raise the valuation, so the least value over two
    // good primes is exact unless both primes divide the leading coefficient.
    std::optional<int> best;
    bool any_finite = false;
    int used = 0;
    for (const ModField& fd : kPrimes) {
        auto r = valuation_over(fd, f, g);
        if (!r) continue;  // a denominator vanishes modulo this prime
        ++used;
        if (*r) {
            best = any_finite ? std::min(*best, **r) : **r;
            any_finite = true;
        }
        if (used == 2) break;
    }
    if (used == 0) return *valuation_over(GaussianField{}, f, g);
    return best;
}

IntersectionTrace local_intersection(const std::function<std::pair<TruncSeries2, TruncSeries2>(int)>& at_order,
                                     const std::vector<int>& schedule, unsigned seed) {
    if (schedule.size() < 2) throw std::invalid_argument("schedule needs at least two orders");
    std::vector<LinearChange> changes{{1, 1, 2, 3}};
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long> dist(-5, 5);
    while (changes.size() < 4) {
        LinearChange c{dist(rng), dist(rng), dist(rng), dist(rng)};
        if (c[0] * c[3] - c[1] * c[2] != 0) changes.push_back(c);
    }
    std::vector<std::pair<TruncSeries2, TruncSeries2>> cache;
    for (int ord : schedule) cache.push_back(at_order(ord));
    for (const auto& change : changes) {
        IntersectionTrace tr;
        tr.change = change;
        std::optional<int> prev;
        for (std::size_t k = 0; k < schedule.size(); ++k) {
            auto v = resultant_valuation(cache[k].first, cache[k].second, change);
            tr.by_order.push_back({schedule[k], v ? *v : -1});
            if (v && prev && *v == *prev) {
                tr.value = *v;
                return tr;
            }
            prev = v;
        }
    }
    throw std::runtime_error("intersection number did not stabilize; raise --max-order");
}

int local_intersection(const TruncSeries2& f, const TruncSeries2& g, const std::vector<int>& schedule) {
    int top = std::min(f.order(), g.order());
    std::vector<int> usable;
    for (int o : schedule)
        if (o <= top) usable.push_back(o);
    if (usable.size() < 2) usable = {std::max(2, top - 1), top};
    return local_intersection([&](int N) { return std::make_pair(f.truncated(N), g.truncated(N)); }, usable).value;
}

std::optional<int> fulton_intersection(const MultiPoly& f_in, const MultiPoly& g_in) {
    if (f_in.nvars() != 2 || g_in.nvars() != 2) throw std::invalid_argument("plane curves need two variables");
    MultiPoly F = f_in, G = g_in;
    {
        // a shared factor makes the reduction loop forever; after the shear
        // every nonconstant common factor involves v
        const auto& vs = f_in.vars();
        std::map<std::string, MultiPoly> shear{
            {vs[0], MultiPoly::variable(vs, vs[0]) + MultiPoly::variable(vs, vs[1]) * GaussianRational(3)},
            {vs[1], MultiPoly::variable(vs, vs[1])}};
        if (resultant(F.substitute(shear), G.substitute(shear), 1).is_zero()) return std::nullopt;
    }
    int total = 0;
    // restriction to v = 0 as a polynomial in u
    auto on_axis = [](const MultiPoly& p) {
        MultiPoly r(p.vars());
        for (const auto& [e, c] : p.terms())
            if (e[1] == 0) r.add_term(e, c);
        return r;
    };
    MultiPoly v = MultiPoly::variable(f_in.vars(), f_in.vars()[1]);
    for (int guard = 0; guard < 100000; ++guard) {
        if (F.is_zero() || G.is_zero()) return std::nullopt;
        if (!F.constant_term().is_zero() || !G.constant_term().is_zero()) return total;
        MultiPoly fa = on_axis(F), ga = on_axis(G);
        if (fa.is_zero() && ga.is_zero()) return std::nullopt;
        if (fa.is_zero() || ga.is_zero()) {
            if (ga.is_zero()) {
                std::swap(F, G);
                std::swap(fa, ga);
            }
            // F = v * H: I(F, G) = I(v, G) + I(H, G)
            total += ga.min_total_degree();
            F = *F.divide_exact(v);
            continue;
        }
        int r = fa.total_degree(), s = ga.total_degree();
        if (r > s) {
            std::swap(F, G);
            std::swap(fa, ga);
            std::swap(r, s);
        }
        GaussianRational lf = fa.leading_term().second, lg = ga.leading_term().second;
        MultiPoly shift = MultiPoly::monomial(F.vars(), {s - r, 0}, lg);
        G = G * lf - shift * F;
    }
    throw std::runtime_error("intersection reduction did not terminate");
}

namespace {

std::complex<double> complex_det(std::vector<std::vector<std::complex<double>>> a) {
    std::size_t n = a.size();
    std::complex<double> det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
        if (std::abs(a[p][c]) == 0) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            std::complex<double> f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

}  // namespace

std::optional<int> transversal_intersection(const NumSeries2& f, const NumSeries2& g, double f_scale, double g_scale,
                                            double tol) {
    auto low = [tol](const NumSeries2& s, double scale) -> std::optional<int> {
        for (int n = 0; n < s.order(); ++n)
            for (int j = 0; j <= n; ++j)
                if (std::abs(s.at(n - j, j)) > tol * scale) return n;
        return std::nullopt;
    };
    auto vf = low(f, f_scale), vg = low(g, g_scale);
    if (!vf || !vg) return std::nullopt;
    if (*vf == 0 || *vg == 0) return 0;
    auto hf = f.homogeneous(*vf), hg = g.homogeneous(*vg);
    // Sylvester matrix of the two binary forms
    int a = *vf, b = *vg, n = a + b;
    std::vector<std::vector<std::complex<double>>> S(n, std::vector<std::complex<double>>(n, 0));
    for (int r = 0; r < b; ++r)
        for (int k = 0; k <= a; ++k) S[r][r + k] = hf[k];
    for (int r = 0; r < a; ++r)
        for (int k = 0; k <= b; ++k) S[b + r][r + k] = hg[k];
    double nf = 0, ng = 0;
    for (auto& c : hf) nf = std::max(nf, std::abs(c));
    for (auto& c : hg) ng = std::max(ng, std::abs(c));
    double res = std::abs(complex_det(S));
    double ref = std::pow(nf, b) * std::pow(ng, a);
    if (res <= tol * ref) return std::nullopt;
    return a * b;
}

}  // namespace caustic
