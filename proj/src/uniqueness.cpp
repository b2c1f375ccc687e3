#include "uplab/uniqueness.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "uplab/quad.hpp"

namespace uplab {

Eigen::VectorXd mask_E(const LocalizationSpec& s)
{
    int M = s.M;
    double h = 2 * s.L / M;
    Eigen::VectorXd m(M);
    for (int j = 0; j < M; ++j) {
        double x = -s.L + j * h;
        m(j) = s.sharp ? (s.E.contains(x) ? 1.0 : 0.0) : std::sqrt(s.E.overlap(x - h / 2, x + h / 2) / h);
    }
    return m;
}

Eigen::VectorXd mask_F(const LocalizationSpec& s)
{
    int M = s.M;
    double d = pi / s.L;
    Eigen::VectorXd m(M);
    for (int q = 0; q < M; ++q) {
        int k = q < M / 2 ? q : q - M;
        double xi = k * d;
        m(q) = s.sharp ? (s.F.contains(xi) ? 1.0 : 0.0) : std::sqrt(s.F.overlap(xi - d / 2, xi + d / 2) / d);
    }
    return m;
}

static Eigen::VectorXcd band(const Eigen::VectorXd& mf, const Eigen::VectorXcd& f)
{
    Eigen::VectorXcd y = fft_fwd(f);
    y.array() *= mf.array();
    return fft_inv(y);
}

Eigen::VectorXcd loc_apply(const LocalizationSpec& s, const Eigen::VectorXcd& f)
{
    return (mask_E(s).array() * band(mask_F(s), f).array()).matrix();
}

Eigen::VectorXcd loc_apply_adjoint(const LocalizationSpec& s, const Eigen::VectorXcd& f)
{
    return band(mask_F(s), (mask_E(s).array() * f.array()).matrix());
}

static Eigen::VectorXcd random_vector(int M, std::mt19937_64& rng)
{
    std::normal_distribution<double> N;
    Eigen::VectorXcd v(M);
    for (int j = 0; j < M; ++j) v(j) = cd(N(rng), N(rng));
    return v;
}

NormResult loc_operator_norm(const LocalizationSpec& s, int iters, double tol)
{
    NormResult r;
    if (s.E.empty() || s.F.empty()) return r;
    Eigen::VectorXd me = mask_E(s), mf = mask_F(s);
    Eigen::VectorXd me2 = me.cwiseProduct(me);
    std::mt19937_64 rng(0x5eedULL);
    Eigen::VectorXcd x = random_vector(s.M, rng);
    x.normalize();
    double rho = 0, res = INFINITY;
    int it = 0;
    for (; it < iters; ++it) {
        Eigen::VectorXcd y = band(mf, (me2.array() * band(mf, x).array()).matrix());
        rho = x.dot(y).real();
        res = (y - rho * x).norm();
        double ny = y.norm();
        if (ny == 0) {
            rho = 0;
            res = 0;
            break;
        }
        if (res < tol) break;
        x = y / ny;
    }
    r.iterations = it;
    r.residual = res;
    r.converged = res < tol;
    r.norm = std::sqrt(std::max(rho, 0.0));
    r.lo = std::sqrt(std::max(rho - res, 0.0));
    r.hi = r.converged ? std::min(1.0, std::sqrt(rho + res)) : 1.0;
    r.vector = x;
    return r;
}

static Eigen::VectorXcd random_field(const LocalizationSpec& s, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> U(0, 1);
    std::normal_distribution<double> N;
    int K = 1 + int(rng() % 4);
    double h = 2 * s.L / s.M;
    Eigen::VectorXcd f = Eigen::VectorXcd::Zero(s.M);
    for (int k = 0; k < K; ++k) {
        cd amp(N(rng), N(rng));
        double x0 = (U(rng) - 0.5) * s.L, w = 0.2 + 2.8 * U(rng), xi0 = 8 * (U(rng) - 0.5);
        for (int j = 0; j < s.M; ++j) {
            double x = -s.L + j * h, u = (x - x0) / w;
            f(j) += amp * std::exp(-0.5 * u * u) * std::polar(1.0, xi0 * x);
        }
    }
    return f;
}

ABReport ab_inequality_check(const LocalizationSpec& s, int trials, std::uint64_t seed)
{
    NormResult nr = loc_operator_norm(s);
    if (!nr.converged || nr.hi >= 1) throw BadParameter("localization operator norm is not certified below 1");
    ABReport rep;
    rep.norm = nr.norm;
    rep.C = 1 / (1 - nr.norm);
    rep.C_squared = 2 * rep.C * rep.C;
    rep.worst_ratio = 0;
    rep.worst_trial = -1;
    Eigen::VectorXd me = mask_E(s), mf = mask_F(s);
    std::mt19937_64 rng(seed);
    double sq = std::sqrt(double(s.M));
    for (int t = 0; t < trials; ++t) {
        Eigen::VectorXcd f = random_field(s, rng);
        double nf = f.norm();
        if (nf == 0) continue;
        double outE = ((1 - me.array()) * f.array()).matrix().norm();
        Eigen::VectorXcd F = fft_fwd(f);
        double outF = ((1 - mf.array()) * F.array()).matrix().norm() / sq;
        double ratio = nf / (outE + outF);
        if (ratio > rep.worst_ratio) {
            rep.worst_ratio = ratio;
            rep.worst_trial = t;
        }
    }
    rep.holds = rep.worst_ratio <= rep.C * (1 + 1e-3);
    return rep;
}

PrescribeResult prescribe(const LineField& g, const Eigen::VectorXcd& h, const LocalizationSpec& spec,
                          double tol, int max_terms)
{
    LocalizationSpec s = spec;
    s.sharp = true;
    s.L = g.L;
    s.M = g.size();
    if (h.size() != s.M) throw BadParameter("spectrum and field sizes differ");
    NormResult nr = loc_operator_norm(s);
    if (nr.hi >= 1) throw BadParameter("localization operator is not a strict contraction");
    Eigen::VectorXd me = mask_E(s), mf = mask_F(s);
    int M = s.M;
    Eigen::VectorXd mfc(M);
    for (int i = 0; i < M; ++i) mfc(i) = mf((i - M / 2 + M) % M);

    Eigen::VectorXcd gE = (me.array() * g.values.array()).matrix();
    LineField ht = line_inverse((mfc.array() * h.array()).matrix(), s.L);
    double scale = std::max({gE.norm(), ht.values.norm(), 1e-300});
    int terms = 1;
    double q = nr.hi;
    while (std::pow(q, terms) / (1 - q) * scale >= tol) {
        if (++terms > max_terms) throw IterationBudgetExceeded("Neumann series contracts too slowly");
    }

    Eigen::VectorXcd u = gE, acc = gE;
    Eigen::VectorXcd v = ht.values, acc2 = ht.values;
    for (int k = 0; k < terms; ++k) {
        u = (me.array() * band(mf, u).array()).matrix();
        acc += u;
        v = band(mf, (me.array() * v.array()).matrix());
        acc2 += v;
    }
    PrescribeResult r;
    r.f.L = s.L;
    r.f.values = acc - band(mf, acc) + acc2 - (me.array() * acc2.array()).matrix();
    r.terms = terms;
    r.norm = nr.norm;
    r.res_E = 0;
    for (int j = 0; j < M; ++j)
        if (me(j) > 0) r.res_E = std::max(r.res_E, std::abs(r.f.values(j) - g.values(j)));
    Eigen::VectorXcd fh = line_fourier(r.f);
    r.res_F = 0;
    for (int i = 0; i < M; ++i)
        if (mfc(i) > 0) r.res_F = std::max(r.res_F, std::abs(fh(i) - h(i)));
    return r;
}

IntervalSet PeriodicSet::window(double lo, double hi) const
{
    std::vector<std::pair<double, double>> v;
    long long k0 = (long long)std::floor(lo / period) - 1, k1 = (long long)std::ceil(hi / period) + 1;
    for (long long k = k0; k <= k1; ++k)
        for (auto& b : base) {
            double a = b.first + k * period, c = b.second + k * period;
            a = std::max(a, lo);
            c = std::min(c, hi);
            if (c > a) v.push_back({a, c});
        }
    return IntervalSet(Domain::line, v);
}

PeriodicSet PeriodicSet::complement() const
{
    PeriodicSet c;
    c.period = period;
    IntervalSet b(Domain::line, base);
    c.base = b.complement(0, period).iv;
    return c;
}

double PeriodicSet::density() const
{
    double s = 0;
    for (auto& b : base) s += b.second - b.first;
    return s / period;
}

double ls_density(const IntervalSet& E, double r, double lo, double hi)
{
    if (!(r > 0)) throw BadParameter("window length must be positive");
    if (hi - lo < r) throw BadParameter("window longer than the sweep range");
    std::vector<double> cand{lo, hi - r};
    for (auto& p : E.iv)
        for (double s : {p.first, p.second, p.first - r, p.second - r})
            if (s >= lo && s <= hi - r) cand.push_back(s);
    double best = 1;
    for (double s : cand) best = std::min(best, 1 - E.overlap(s, s + r) / r);
    return std::max(best, 0.0);
}

double ls_density(const PeriodicSet& E, double r)
{
    double p = E.period;
    int n = int(std::ceil(r / p)) + 2;
    return ls_density(E.window(-n * p, (n + 1) * p), r, 0, p + r);
}

// arctan(B) - arctan(A) without cancellation when A and B share a sign
static double atan_diff(double B, double A)
{
    if (A * B > 0) return std::atan((B - A) / (1 + A * B));
    return std::atan(B) - std::atan(A);
}

double harmonic_measure_line(const IntervalSet& S, double x, double y)
{
    double s = 0;
    for (auto& p : S.iv) s += atan_diff((p.second - x) / y, (p.first - x) / y);
    return s / pi;
}

double harmonic_measure_line(const PeriodicSet& S, double x, double y, int K)
{
    double p = S.period, s = 0;
    for (auto& b : S.base) {
        double len = b.second - b.first, c = 0.5 * (b.first + b.second);
        for (int k = -K; k <= K; ++k) s += atan_diff((b.second + k * p - x) / y, (b.first + k * p - x) / y);
        // remaining copies by the midpoint rule in k
        s += len / p * (pi / 2 - std::atan(((K + 0.5) * p + c - x) / y));
        s += len / p * (pi / 2 - std::atan(((K + 0.5) * p - c + x) / y));
    }
    return s / pi;
}

double ls_gamma(const PeriodicSet& S)
{
    double p = S.period;
    int n = 400;
    double bx = 0, bv = INFINITY;
    auto f = [&](double x) { return harmonic_measure_line(S, x, 1, 4000); };
    for (int i = 0; i < n; ++i) {
        double x = p * i / n, v = f(x);
        if (v < bv) bv = v, bx = x;
    }
    double a = bx - p / n, b = bx + p / n, g = 0.5 * (std::sqrt(5.0) - 1);
    double c = b - g * (b - a), d = a + g * (b - a), fc = f(c), fd = f(d);
    for (int it = 0; it < 80; ++it) {
        if (fc < fd) b = d, d = c, fd = fc, c = b - g * (b - a), fc = f(c);
        else a = c, c = d, fc = fd, d = a + g * (b - a), fd = f(d);
    }
    return std::min({bv, fc, fd});
}

double ls_bound(double a, double gamma)
{
    if (!(gamma > 0)) throw BadParameter("harmonic measure infimum is zero, the set is not relatively dense");
    return std::pow(4 * std::exp(2 * a), 1 / gamma);
}

LSReport ls_inequality_check(const PeriodicSet& Ec, double a, int trials, std::uint64_t seed, double r)
{
    LSReport rep;
    rep.delta = ls_density(Ec.complement(), r);
    rep.gamma = ls_gamma(Ec);
    if (!(rep.delta > 0) || !(rep.gamma > 0))
        throw BadParameter("E^c is not relatively dense, so no two-constant bound is available");
    rep.bound = ls_bound(a, rep.gamma);
    rep.empirical = 0;
    rep.trials = 0;

    // partition of one period into pieces of Ec and of its complement
    std::vector<std::pair<std::pair<double, double>, bool>> cells;
    for (auto& b : Ec.base) cells.push_back({b, true});
    for (auto& b : Ec.complement().base) cells.push_back({b, false});
    auto gl = gauss_legendre(8);
    double W = 400, p = Ec.period;
    long long k0 = (long long)std::floor(-W / p), k1 = (long long)std::ceil(W / p);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0, 1);
    std::normal_distribution<double> N;
    double b = a / 4;
    for (int t = 0; t < trials; ++t) {
        int K = 1 + int(rng() % 6);
        std::vector<cd> amp(K);
        std::vector<double> x0(K), eta(K);
        for (int k = 0; k < K; ++k) {
            amp[k] = cd(N(rng), N(rng));
            x0[k] = 20 * (U(rng) - 0.5);
            eta[k] = a * (U(rng) - 0.5);
        }
        // sinc^2(b x) has spectrum [-2b, 2b] = [-a/2, a/2]
        auto f2 = [&](double x) {
            cd s = 0;
            for (int k = 0; k < K; ++k) {
                double u = b * (x - x0[k]);
                double sc = std::abs(u) < 1e-8 ? 1.0 : std::sin(u) / u;
                s += amp[k] * sc * sc * std::polar(1.0, eta[k] * x);
            }
            return std::norm(s);
        };
        double total = 0, part = 0;
        for (long long k = k0; k < k1; ++k)
            for (auto& c : cells) {
                double v = gauss_integrate(f2, c.first.first + k * p, c.first.second + k * p, gl);
                total += v;
                if (c.second) part += v;
            }
        if (total == 0) continue;
        ++rep.trials;
        rep.empirical = std::max(rep.empirical, total / part);
    }
    rep.holds = rep.empirical <= rep.bound;
    return rep;
}

UncertaintyReport uncertainty_checks(const LineField& f)
{
    UncertaintyReport r;
    int M = f.size();
    double h = f.h(), d = f.dxi();
    Eigen::VectorXcd F = line_fourier(f);
    Eigen::VectorXd px = f.values.cwiseAbs2(), pf = F.cwiseAbs2();
    r.norm2 = px.sum() * h;
    double nf = pf.sum() * d / (2 * pi);
    double mx = 0, mf = 0;
    for (int j = 0; j < M; ++j) {
        mx += f.x(j) * px(j) * h;
        mf += f.xi(j - M / 2) * pf(j) * d / (2 * pi);
    }
    r.x0 = mx / r.norm2;
    r.xi0 = mf / nf;
    double vx = 0, vf = 0, hx = 0, hf = 0;
    for (int j = 0; j < M; ++j) {
        double u = f.x(j) - r.x0, w = f.xi(j - M / 2) - r.xi0;
        vx += u * u * px(j) * h;
        vf += w * w * pf(j) * d / (2 * pi);
        double gx = px(j) / r.norm2, gf = pf(j) / nf;
        if (gx > 0) hx -= gx * std::log(gx) * h;
        if (gf > 0) hf -= gf * std::log(gf) * d / (2 * pi);
    }
    r.sigma_x = std::sqrt(vx);
    r.sigma_xi = std::sqrt(vf);
    r.heisenberg = 2 * r.sigma_x * r.sigma_xi;
    r.heisenberg_ratio = r.heisenberg / r.norm2;
    r.entropy_x = hx;
    r.entropy_xi = hf;
    r.entropy_sum = hx + hf;
    r.entropy_bound = std::log(std::exp(1.0) / 2);
    int w = std::max(1, M / 100);
    double fe = 0, se = 0;
    for (int j = 0; j < w; ++j) {
        fe = std::max({fe, std::abs(f.values(j)), std::abs(f.values(M - 1 - j))});
        se = std::max({se, std::abs(F(j)), std::abs(F(M - 1 - j))});
    }
    r.truncation_warning = fe > 1e-6 * f.values.cwiseAbs().maxCoeff() || se > 1e-6 * F.cwiseAbs().maxCoeff();
    return r;
}

cd pw_extend(const LineField& fhat, double a, cd z, double support_tol)
{
    double mx = fhat.values.cwiseAbs().maxCoeff();
    cd s = 0;
    for (int j = 0; j < fhat.size(); ++j) {
        double xi = fhat.x(j);
        if (std::abs(xi) > a + 1e-12) {
            if (std::abs(fhat.values(j)) > support_tol * mx) throw BadInput("spectrum is not supported in [-a, a]");
            continue;
        }
        s += fhat.values(j) * std::exp(cd(0, 1) * z * xi);
    }
    return s * fhat.h() / (2 * pi);
}

double pw_bound(const LineField& fhat, double a, cd z)
{
    return fhat.values.cwiseAbs().sum() * fhat.h() * std::exp(a * std::abs(z.imag()));
}

ShannonResult shannon_reconstruct(const std::vector<cd>& samples, double a, double xi)
{
    if (samples.size() % 2 == 0) throw BadParameter("samples must be indexed by n = -N..N");
    int N = int(samples.size() / 2);
    ShannonResult r{0, 0};
    for (int n = -N; n <= N; ++n) {
        double u = a * xi - pi * n;
        double sc = std::abs(u) < 1e-12 ? 1.0 : std::sin(u) / u;
        r.value += samples[n + N] * sc;
    }
    // tail estimate assuming the samples keep decaying past N
    double edge = std::abs(samples.front()) + std::abs(samples.back());
    r.tail_estimate = edge * (N + 1) / std::max(1.0, pi * (N + 1) - a * std::abs(xi));
    return r;
}

PoissonSumResult poisson_summation_check(const std::function<double(double)>& f,
                                         const std::function<double(double)>& fhat, int N)
{
    PoissonSumResult r{0, 0, 0, 0};
    for (int n = -N; n <= N; ++n) {
        r.left += 2 * pi * f(2 * pi * n);
        r.right += fhat(n);
    }
    r.tail_left = 2 * pi * (std::abs(f(2 * pi * N)) + std::abs(f(-2 * pi * N)));
    r.tail_right = std::abs(fhat(N)) + std::abs(fhat(-N));
    return r;
}

} // namespace uplab
