#include "uplab/logint.hpp"

#include <algorithm>
#include <cmath>

#include "uplab/hardy.hpp"
#include "uplab/quad.hpp"

namespace uplab {

BernsteinWeight bernstein_weight(const std::function<double(double)>& w, double c, double Tmax, int n)
{
    if (!(c > 0) || !(Tmax > c) || n < 2) throw BadParameter("need 0 < c < Tmax and at least two nodes");
    BernsteinWeight bw;
    bw.c = c;
    bw.Tmax = Tmax;
    double s0 = std::log(c), ds = (std::log(Tmax) - s0) / (n - 1);
    bw.s.resize(n);
    bw.w.resize(n);
    bw.cum.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        bw.s[i] = s0 + i * ds;
        bw.w[i] = w(std::exp(bw.s[i]));
        if (!(bw.w[i] > 0)) throw BadParameter("weight profile must be positive");
        if (i > 0) {
            if (bw.w[i] < bw.w[i - 1] * (1 - 1e-12)) throw BadParameter("weight profile must be nondecreasing");
            bw.cum[i] = bw.cum[i - 1] + 0.5 * ds * (bw.w[i] + bw.w[i - 1]);
        }
    }
    return bw;
}

double BernsteinWeight::profile(double t) const
{
    if (t < c || t > Tmax * (1 + 1e-12)) throw BadParameter("profile evaluated outside [c, Tmax]");
    double ds = s[1] - s[0], u = (std::log(t) - s[0]) / ds;
    int i = std::clamp(int(u), 0, int(s.size()) - 2);
    double f = u - i;
    return w[i] + f * (w[i + 1] - w[i]);
}

double BernsteinWeight::log_W(double x) const
{
    double a = std::abs(x);
    if (a <= c) return 0;
    if (a > Tmax * (1 + 1e-12)) throw BadParameter("weight evaluated beyond Tmax");
    double ds = s[1] - s[0], u = (std::log(a) - s[0]) / ds;
    int i = std::clamp(int(u), 0, int(s.size()) - 2);
    double f = u - i;
    double wa = w[i] + f * (w[i + 1] - w[i]);
    return -(cum[i] + 0.5 * f * ds * (w[i] + wa));
}

MomentBound weight_moment_bound(const BernsteinWeight& bw, double xi, int grid)
{
    if (xi < std::max(bw.c, 1.0) || xi > bw.Tmax) throw BadParameter("xi must lie in [max(c, 1), Tmax]");
    MomentBound m;
    m.N = int(std::ceil(bw.profile(xi) - 1e-12));
    double best = -INFINITY, lc = std::log(bw.c), lT = std::log(bw.Tmax);
    int arg = 0;
    for (int i = 0; i < grid; ++i) {
        double lx = lc + (lT - lc) * i / (grid - 1);
        double v = m.N * lx + bw.log_W(std::exp(lx));
        if (v > best) {
            best = v;
            arg = i;
        }
    }
    m.lhs = std::exp(best);
    m.argmax = std::exp(lc + (lT - lc) * arg / (grid - 1));
    m.at_boundary = arg == grid - 1;
    m.rhs = std::exp(m.N * std::log(xi) + bw.log_W(xi));
    return m;
}

double fit_moment_constant(const BernsteinWeight& bw, const std::vector<double>& xis)
{
    double A = 0;
    for (double xi : xis) {
        auto m = weight_moment_bound(bw, xi);
        A = std::max(A, m.lhs / m.rhs);
    }
    return A;
}

// ratio of the last two increments of a sequence of partial integrals
static bool increments_diverge(const std::vector<double>& p)
{
    if (p.size() < 3) return false;
    double d1 = std::abs(p[p.size() - 1] - p[p.size() - 2]);
    double d0 = std::abs(p[p.size() - 2] - p[p.size() - 3]);
    if (d0 == 0) return d1 > 0;
    return d1 >= 0.9 * d0;
}

LogIntegralReport log_integral(const BernsteinWeight& bw)
{
    LogIntegralReport r;
    double A = std::atan(bw.Tmax), gap = pi / 2 - A;
    auto gq = gauss_legendre(16);
    auto logw = [&](double th) { return bw.log_W(std::min(std::tan(th), bw.Tmax)); };
    // uniform panels in theta, the last one refined geometrically toward the endpoint
    int panels = 2000;
    double h = A / panels, s = 0;
    for (int j = 0; j + 1 < panels; ++j) s += gauss_integrate(logw, j * h, (j + 1) * h, gq);
    double hi = A;
    for (double d = h; d > 1e-3 * gap; d *= 0.5) {
        s += gauss_integrate(logw, A - d, A - d / 2, gq);
        hi = A - d / 2;
    }
    s += gauss_integrate(logw, hi, A, gq);
    r.poisson = 2 * s;

    auto& gl = gq;
    double f = 0;
    for (size_t i = 0; i + 1 < bw.s.size(); ++i) {
        f += gauss_integrate([&](double u) {
            double t = std::exp(u);
            return bw.profile(std::min(t, bw.Tmax)) * (A - std::atan(t));
        }, bw.s[i], bw.s[i + 1], gl);
    }
    r.fubini = -2 * f;

    double acc = 0, lo = bw.c;
    r.partial.push_back(0);
    for (double T = 2 * bw.c; T <= bw.Tmax * (1 + 1e-12); T *= 2) {
        acc += gauss_integrate([&](double u) {
            double t = std::exp(u);
            return bw.profile(t) / t;
        }, std::log(lo), std::log(T), gl);
        r.partial.push_back(acc);
        lo = T;
    }
    r.divergent = increments_diverge(r.partial);
    return r;
}

cd LineMeasure::moment(int n) const
{
    cd m = 0;
    for (auto& a : atoms) m += std::pow(a.first, n) * a.second;
    if (density) {
        cd s = 0;
        for (int j = 0; j < density->size(); ++j) s += std::pow(density->x(j), n) * density->values(j);
        m += s * density->h();
    }
    return m;
}

static cd cauchy_weighted(const LineMeasure& mu, cd z, int n)
{
    if (std::abs(z.imag()) < 1e-14) throw BadParameter("Cauchy transform evaluated on the real line");
    cd s = 0;
    for (auto& a : mu.atoms) s += std::pow(a.first, n) * a.second / (a.first - z);
    if (mu.density) {
        cd d = 0;
        for (int j = 0; j < mu.density->size(); ++j) {
            double x = mu.density->x(j);
            d += std::pow(x, n) * mu.density->values(j) / (x - z);
        }
        s += d * mu.density->h();
    }
    return s;
}

cd cauchy_transform(const LineMeasure& mu, cd z)
{
    return cauchy_weighted(mu, z, 0);
}

MomentShift moment_shift_check(const LineMeasure& mu, cd z, int n)
{
    MomentShift r;
    r.lhs = cauchy_weighted(mu, z, 0);
    r.rhs = cauchy_weighted(mu, z, n) / std::pow(z, n);
    r.max_moment = 0;
    for (int k = 0; k < n; ++k) r.max_moment = std::max(r.max_moment, std::abs(mu.moment(k)));
    return r;
}

static double theta_mean_log(const std::function<double(double)>& W, int M, bool& run)
{
    double s = 0;
    bool prev = false;
    run = false;
    for (int j = 0; j < M; ++j) {
        double th = -pi + (j + 0.5) * 2 * pi / M;
        double v = W(std::tan(th / 2));
        bool fl = !(v > log_floor);
        if (fl && prev) run = true;
        prev = fl;
        s += std::log(std::max(v, log_floor));
    }
    return s / M;
}

AnnihilatingDensity annihilating_density(const std::function<double(double)>& W, int K, int M)
{
    if (M < 256 || (M & (M - 1)) != 0) throw BadParameter("grid size must be a power of two >= 256");
    if (K < 0) throw BadParameter("moment count must be nonnegative");
    bool run0, run1, run2;
    double m0 = theta_mean_log(W, M, run0);
    double m1 = theta_mean_log(W, M / 2, run1);
    double m2 = theta_mean_log(W, M / 4, run2);
    if (run0 || run1 || run2) throw NotLogIntegrable("weight vanishes on an interval");
    double d1 = std::abs(m0 - m1), d2 = std::abs(m1 - m2);
    if (d1 > 1e-6 && d1 >= 0.75 * d2) throw NotLogIntegrable("Poisson mean of log W grows with the grid");

    AnnihilatingDensity a;
    a.x.resize(M);
    a.weight.resize(M);
    GridFunction U;
    U.values.resize(M);
    U.is_real = true;
    std::vector<double> Wv(M);
    for (int j = 0; j < M; ++j) {
        double th = -pi + (j + 0.5) * 2 * pi / M;
        double x = std::tan(th / 2), c = std::cos(th / 2);
        a.x[j] = x;
        a.weight[j] = 0.5 / (c * c) * 2 * pi / M;
        Wv[j] = W(x);
        U.values(j) = std::log(std::max(Wv[j], log_floor)) - std::sqrt(std::abs(x));
    }
    a.log_integral = m0;
    GridFunction V = conjugate_circle(U);
    a.g.resize(M);
    a.modulus_deviation = 0;
    a.weighted_l1 = 0;
    for (int j = 0; j < M; ++j) {
        a.g(j) = std::exp(cd(U.values(j).real(), V.values(j).real()));
        double target = Wv[j] * std::exp(-std::sqrt(std::abs(a.x[j])));
        if (target > 0) a.modulus_deviation = std::max(a.modulus_deviation, std::abs(std::abs(a.g(j)) / target - 1));
        if (Wv[j] > 0) a.weighted_l1 += std::abs(a.g(j)) / Wv[j] * a.weight[j];
    }
    for (int n = 0; n <= K; ++n) {
        cd m = 0;
        for (int j = 0; j < M; ++j) m += std::pow(a.x[j], n) * a.g(j) * a.weight[j];
        a.moments.push_back(m);
    }
    return a;
}

cd SpectralGapFn::operator()(cd z) const
{
    // cos is even, so either square root branch gives the same value
    return std::cos(a * std::sqrt((z - c) * (z - c) - r * r));
}

SpectralGapFn spectral_gap_test_fn(double c, double r, double a)
{
    if (!(r > 0) || !(a > 0)) throw BadParameter("width and type must be positive");
    return {c, r, a};
}

SpectralGapReport spectral_gap_report(const SpectralGapFn& f, double span, int grid)
{
    SpectralGapReport r;
    r.center = f(f.c).real();
    r.max_outside = 0;
    r.min_middle = INFINITY;
    r.lower_bound = 0.5 * std::exp(f.a * f.r / std::sqrt(2.0));
    for (int i = 0; i < grid; ++i) {
        double x = f.c - span + 2 * span * i / (grid - 1);
        double v = std::abs(f(x)), d = std::abs(x - f.c);
        if (d >= f.r) r.max_outside = std::max(r.max_outside, v);
        if (d <= f.r / 2) r.min_middle = std::min(r.min_middle, v);
    }
    return r;
}

double max_on_circle(const SpectralGapFn& f, double R, int n)
{
    double m = 0;
    for (int i = 0; i < n; ++i) m = std::max(m, std::abs(f(f.c + std::polar(R, 2 * pi * i / n))));
    return m;
}

BeurlingStat beurling_vmu_stat(const std::function<double(double)>& V, double T)
{
    if (!(T > 2)) throw BadParameter("truncation point must exceed 2");
    BeurlingStat b;
    b.floored = false;
    auto gl = gauss_legendre(20);
    auto integrand = [&](double t) {
        double v = V(t);
        if (!(v > log_floor)) {
            b.floored = true;
            v = log_floor;
        }
        return std::log(v) / (1 + t * t);
    };
    double acc = 0;
    for (int k = 0; k < 8; ++k) acc += gauss_integrate(integrand, k / 8.0, (k + 1) / 8.0, gl);
    b.partial.push_back(acc);
    for (double lo = 1; lo < T; lo *= 2) {
        double hi = std::min(2 * lo, T);
        for (int k = 0; k < 8; ++k) acc += gauss_integrate(integrand, lo + (hi - lo) * k / 8, lo + (hi - lo) * (k + 1) / 8, gl);
        b.partial.push_back(acc);
    }
    b.value = acc;
    b.divergent = b.floored || increments_diverge(b.partial);
    return b;
}

BeurlingStat beurling_vmu_stat(const LineMeasure& mu, double T)
{
    std::vector<double> xs;
    std::vector<double> ms;
    for (auto& a : mu.atoms) {
        xs.push_back(a.first);
        ms.push_back(std::abs(a.second));
    }
    if (mu.density)
        for (int j = 0; j < mu.density->size(); ++j) {
            xs.push_back(mu.density->x(j));
            ms.push_back(std::abs(mu.density->values(j)) * mu.density->h());
        }
    std::vector<size_t> idx(xs.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](size_t p, size_t q) { return xs[p] < xs[q]; });
    std::vector<double> sx, tail(idx.size() + 1, 0.0);
    for (size_t i : idx) sx.push_back(xs[i]);
    for (size_t k = idx.size(); k-- > 0;) tail[k] = tail[k + 1] + ms[idx[k]];
    auto V = [&](double t) {
        size_t k = std::lower_bound(sx.begin(), sx.end(), t) - sx.begin();
        return tail[k];
    };
    return beurling_vmu_stat(V, T);
}

BeurlingStat beurling_circle_stat(const CoeffWindow& c)
{
    if (c.hi < 8) throw BadParameter("coefficient window too short for the tail statistic");
    BeurlingStat b;
    b.floored = false;
    std::vector<double> rho(c.hi + 2, 0.0);
    for (int n = c.hi; n >= 1; --n) rho[n] = rho[n + 1] + std::abs(c.at(n));
    // the last half of the window is dominated by truncation
    int stop = c.hi / 2;
    double acc = 0;
    int next = 2;
    for (int n = 1; n <= stop; ++n) {
        double r = rho[n];
        if (!(r > log_floor)) {
            b.floored = true;
            r = log_floor;
        }
        acc += std::log(r) / (double(n) * n);
        if (n + 1 == next || n == stop) {
            b.partial.push_back(acc);
            next *= 2;
        }
    }
    b.value = acc;
    b.divergent = b.floored || increments_diverge(b.partial);
    return b;
}

static BeurlingStat negative_tail_stat(const Eigen::VectorXcd& F)
{
    int M = int(F.size());
    CoeffWindow neg(0, M / 2 - 1);
    for (int n = 1; n < M / 2; ++n) neg[n] = F(M - n) / double(M);
    return beurling_circle_stat(neg);
}

BeurlingStat negative_tail_stat(const GridFunction& f)
{
    return negative_tail_stat(fft_fwd(f.values));
}

static double arc_sup(const GridFunction& f, std::pair<double, double> arc)
{
    double in = 0, all = f.values.cwiseAbs().maxCoeff();
    for (int j = 0; j < f.size(); ++j) {
        double t = f.t(j);
        double u = std::fmod(t - arc.first + 4 * pi, 2 * pi);
        if (u <= arc.second - arc.first) in = std::max(in, std::abs(f.values(j)));
    }
    return all > 0 ? in / all : 0;
}

CartwrightLevinson cartwright_levinson(const GridFunction& f, std::pair<double, double> arc,
                                       const std::function<double(int)>& w, double tol)
{
    if (!(arc.second > arc.first)) throw BadParameter("arc must have positive length");
    CartwrightLevinson r;
    int M = f.size();
    Eigen::VectorXcd F = fft_fwd(f.values);
    r.given = negative_tail_stat(F);
    r.given_arc_sup = arc_sup(f, arc);
    for (int n = 1; n <= M / 2; ++n) F(M - n) *= std::exp(-w(n));
    GridFunction g;
    g.values = fft_inv(F);
    r.forced = negative_tail_stat(F);
    r.forced_arc_sup = arc_sup(g, arc);
    r.consistent = r.given_arc_sup < tol && !r.given.divergent && r.forced.divergent && r.forced_arc_sup > tol;
    return r;
}

// double-double arithmetic for the Gram elimination
namespace {
struct dd {
    double hi = 0, lo = 0;
};
dd quick(double a, double b)
{
    double s = a + b;
    return {s, b - (s - a)};
}
dd two_sum(double a, double b)
{
    double s = a + b, bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}
dd operator+(dd a, dd b)
{
    dd s = two_sum(a.hi, b.hi);
    return quick(s.hi, s.lo + a.lo + b.lo);
}
dd operator-(dd a)
{
    return {-a.hi, -a.lo};
}
dd operator-(dd a, dd b)
{
    return a + (-b);
}
dd operator*(dd a, dd b)
{
    double p = a.hi * b.hi, e = std::fma(a.hi, b.hi, -p);
    return quick(p, e + a.hi * b.lo + a.lo * b.hi);
}
dd operator/(dd a, dd b)
{
    double q1 = a.hi / b.hi;
    dd r = a - b * dd{q1, 0};
    double q2 = r.hi / b.hi;
    r = r - b * dd{q2, 0};
    double q3 = r.hi / b.hi;
    dd q = quick(q1, q2);
    return q + dd{q3, 0};
}
} // namespace

double muntz_distance(const std::vector<double>& lambdas, double kappa)
{
    if (lambdas.size() > 20) throw IllConditioned("Gram system too large, use at most 20 exponents");
    if (!(kappa > -0.5)) throw BadParameter("exponents must exceed -1/2");
    for (size_t i = 0; i < lambdas.size(); ++i) {
        if (!(lambdas[i] > -0.5)) throw BadParameter("exponents must exceed -1/2");
        if (lambdas[i] == kappa) return 0;
        for (size_t j = 0; j < i; ++j)
            if (lambdas[i] == lambdas[j]) throw BadParameter("exponents must be distinct");
    }
    if (lambdas.empty()) return 1 / std::sqrt(2 * kappa + 1);
    std::vector<double> e(lambdas);
    e.push_back(kappa);
    size_t n = e.size();
    std::vector<std::vector<dd>> G(n, std::vector<dd>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) G[i][j] = dd{1, 0} / (two_sum(e[i], e[j]) + dd{1, 0});
    std::vector<dd> D(n);
    std::vector<std::vector<dd>> L(n, std::vector<dd>(n));
    for (size_t j = 0; j < n; ++j) {
        dd d = G[j][j];
        for (size_t k = 0; k < j; ++k) d = d - L[j][k] * L[j][k] * D[k];
        D[j] = d;
        if (!(d.hi > 1e-30 * G[j][j].hi)) {
            if (j + 1 == n && d.hi > -1e-30 * G[j][j].hi) return 0;
            throw IllConditioned("Gram pivot lost, use fewer exponents");
        }
        for (size_t i = j + 1; i < n; ++i) {
            dd s = G[i][j];
            for (size_t k = 0; k < j; ++k) s = s - L[i][k] * L[j][k] * D[k];
            L[i][j] = s / d;
        }
    }
    return std::sqrt(D[n - 1].hi + D[n - 1].lo);
}

} // namespace uplab
