#include "uplab/circle.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/FFT>

namespace uplab {

Eigen::VectorXcd fft_fwd(const Eigen::VectorXcd& x)
{
    Eigen::FFT<double> fft;
    std::vector<cd> in(x.data(), x.data() + x.size()), out;
    fft.fwd(out, in);
    return Eigen::Map<Eigen::VectorXcd>(out.data(), out.size());
}

Eigen::VectorXcd fft_inv(const Eigen::VectorXcd& X)
{
    Eigen::FFT<double> fft;
    std::vector<cd> in(X.data(), X.data() + X.size()), out;
    fft.inv(out, in);
    return Eigen::Map<Eigen::VectorXcd>(out.data(), out.size());
}

int next_pow2(long n)
{
    int m = 1;
    while (m < n) m <<= 1;
    return m;
}

static void check_grid(int M)
{
    if (M < 8 || (M & (M - 1)) != 0)
        throw BadParameter("grid size must be a power of two >= 8");
}

GridFunction sample(int M, const std::function<cd(double)>& f, bool is_real)
{
    check_grid(M);
    GridFunction g;
    g.values.resize(M);
    for (int j = 0; j < M; ++j) g.values(j) = f(2.0 * pi * j / M);
    g.is_real = is_real;
    return g;
}

GridFunction sample_real(int M, const std::function<double(double)>& f)
{
    return sample(M, [&](double t) { return cd(f(t), 0.0); }, true);
}

CoeffWindow dft_coeffs(const GridFunction& f, int N)
{
    int M = f.size();
    if (N < 0) throw BadParameter("negative window");
    if (2 * N + 1 > M) throw GridTooCoarse("window 2N+1 exceeds grid size");
    Eigen::VectorXcd F = fft_fwd(f.values) / double(M);
    CoeffWindow c(-N, N);
    for (int n = -N; n <= N; ++n) c[n] = F((n % M + M) % M);
    if (f.is_real)
        for (int n = 1; n <= N; ++n) c[-n] = std::conj(c[n]);
    return c;
}

CoeffWindow dft_all(const GridFunction& f)
{
    int M = f.size();
    Eigen::VectorXcd F = fft_fwd(f.values) / double(M);
    CoeffWindow c(-M / 2, M / 2 - 1);
    for (int n = -M / 2; n < M / 2; ++n) c[n] = F((n + M) % M);
    return c;
}

GridFunction synthesize(const CoeffWindow& c, int M)
{
    check_grid(M);
    if (c.lo <= -M / 2 || c.hi >= M / 2) throw GridTooCoarse("window does not fit inside (-M/2, M/2)");
    Eigen::VectorXcd F = Eigen::VectorXcd::Zero(M);
    for (int n = c.lo; n <= c.hi; ++n) F((n + M) % M) = c.at(n);
    GridFunction g;
    g.values = fft_inv(F) * double(M);
    return g;
}

cd eval_poly(const CoeffWindow& c, double t)
{
    cd s = 0;
    for (int n = c.lo; n <= c.hi; ++n) s += c.at(n) * std::polar(1.0, n * t);
    return s;
}

static double check_order(KernelKind kind, double order)
{
    if (kind == KernelKind::poisson) {
        if (!(order > 0 && order < 1)) throw BadParameter("Poisson radius must lie in (0,1)");
    } else if (order < 1 || order != std::floor(order)) {
        throw BadParameter("kernel order must be an integer >= 1");
    }
    return order;
}

static double dirichlet_at(int N, double t)
{
    double s = std::sin(t / 2);
    if (std::abs(s) < 1e-8) {
        double v = 1;
        for (int k = 1; k <= N; ++k) v += 2 * std::cos(k * t);
        return v;
    }
    return std::sin((N + 0.5) * t) / s;
}

static double fejer_at(int N, double t)
{
    double s = std::sin(t / 2);
    if (std::abs(s) < 1e-8) {
        double v = 1;
        for (int k = 1; k < N; ++k) v += 2 * (1.0 - double(k) / N) * std::cos(k * t);
        return v;
    }
    double q = std::sin(N * t / 2) / s;
    return q * q / N;
}

GridFunction kernel(KernelKind kind, double order, int M)
{
    check_order(kind, order);
    check_grid(M);
    int N = int(order);
    if (kind == KernelKind::dlvp && 2 * (2 * N + 1) > M) throw GridTooCoarse("dlvp needs 2(2N+1) <= M");
    switch (kind) {
    case KernelKind::dirichlet:
        return sample_real(M, [N](double t) { return dirichlet_at(N, t); });
    case KernelKind::fejer:
        return sample_real(M, [N](double t) { return fejer_at(N, t); });
    case KernelKind::dlvp:
        return sample_real(M, [N](double t) { return 2 * fejer_at(2 * N, t) - fejer_at(N, t); });
    case KernelKind::poisson:
        return sample_real(M, [r = order](double t) { return (1 - r * r) / (1 - 2 * r * std::cos(t) + r * r); });
    }
    throw BadParameter("unknown kernel");
}

CoeffWindow kernel_coeffs(KernelKind kind, double order)
{
    check_order(kind, order);
    int N = int(order);
    auto fejer = [](int K, int n) { return std::max(0.0, 1.0 - std::abs(double(n)) / K); };
    switch (kind) {
    case KernelKind::dirichlet: {
        CoeffWindow c(-N, N);
        c.c.setOnes();
        return c;
    }
    case KernelKind::fejer: {
        CoeffWindow c(-N, N);
        for (int n = -N; n <= N; ++n) c[n] = fejer(N, n);
        return c;
    }
    case KernelKind::dlvp: {
        CoeffWindow c(-2 * N, 2 * N);
        for (int n = -2 * N; n <= 2 * N; ++n) c[n] = 2 * fejer(2 * N, n) - fejer(N, n);
        return c;
    }
    case KernelKind::poisson:
        throw BadParameter("Poisson kernel has no finite window");
    }
    throw BadParameter("unknown kernel");
}

double multiplier(const SummationMethod& m, int k)
{
    int a = std::abs(k);
    switch (m.kind) {
    case SumKind::partial:
        return a <= m.N ? 1.0 : 0.0;
    case SumKind::cesaro:
        return m.N == 0 ? 0.0 : std::max(0.0, 1.0 - double(a) / m.N);
    case SumKind::abel:
        return std::pow(m.r, 2.0 * a);
    }
    return 0;
}

GridFunction summation_mean(const GridFunction& f, const SummationMethod& m)
{
    if (m.N < 0) throw BadParameter("negative summation order");
    if (m.kind == SumKind::abel && !(m.r > 0 && m.r < 1)) throw BadParameter("Abel radius must lie in (0,1)");
    int M = f.size();
    if (m.kind != SumKind::abel && 2 * m.N + 1 > M) throw GridTooCoarse("summation order too large for grid");
    Eigen::VectorXcd F = fft_fwd(f.values);
    for (int j = 0; j < M; ++j) {
        int k = j < M / 2 ? j : j - M;
        double mult = (j == M / 2) ? 0.0 : multiplier(m, k);
        F(j) *= mult;
    }
    GridFunction g;
    g.values = fft_inv(F);
    g.is_real = f.is_real;
    if (g.is_real) g.values = g.values.real().cast<cd>();
    return g;
}

GridFunction convolve(const GridFunction& f, const GridFunction& g)
{
    if (f.size() != g.size()) throw BadParameter("grid mismatch");
    Eigen::VectorXcd F = fft_fwd(f.values), G = fft_fwd(g.values);
    GridFunction h;
    h.values = fft_inv(F.cwiseProduct(G) / double(f.size()));
    h.is_real = f.is_real && g.is_real;
    return h;
}

double dirichlet_l1(int N, int M)
{
    GridFunction d = kernel(KernelKind::dirichlet, N, M);
    return d.values.cwiseAbs().mean();
}

CoeffWindow multiply(const CoeffWindow& a, const CoeffWindow& b)
{
    CoeffWindow c(a.lo + b.lo, a.hi + b.hi);
    for (int i = a.lo; i <= a.hi; ++i) {
        cd ai = a.at(i);
        if (ai == cd(0)) continue;
        for (int j = b.lo; j <= b.hi; ++j) c[i + j] += ai * b.at(j);
    }
    return c;
}

double sobolev_constant()
{
    // sum_n |c_n| <= |c_0| + (sum_{n != 0} n^-2)^{1/2} ||f'||_2
    return pi / std::sqrt(3.0);
}

static double fejer_error_l1(const CoeffWindow& f, int K)
{
    double e = 0;
    for (int n = f.lo; n <= f.hi; ++n) e += std::abs(f.at(n)) * std::min(1.0, std::abs(double(n)) / K);
    return e;
}

WienerResult wiener_invert(const CoeffWindow& f, double tol)
{
    if (f.width() <= 0) throw BadParameter("empty window");
    int span = std::max(std::abs(f.lo), std::abs(f.hi));
    int Mf = std::max(1024, next_pow2(16 * (span + 1)));
    CoeffWindow fs = f;
    GridFunction fg = synthesize(fs, Mf);
    double fmin = fg.values.cwiseAbs().minCoeff();
    double fmax = fg.values.cwiseAbs().maxCoeff();
    if (fmax == 0 || fmin <= 1e-10 * fmax) throw NotInvertible("f vanishes on the evaluation grid");

    WienerResult res;
    res.scale = fmin;
    CoeffWindow F = f;
    F.c /= fmin;

    const double eps_target = 0.25;
    int lo = 1, hi = 1;
    while (fejer_error_l1(F, hi) > eps_target) {
        hi *= 2;
        if (hi > (1 << 24)) throw NoConvergence("no Fejer mean within the eps budget");
    }
    while (lo < hi) {
        int mid = (lo + hi) / 2;
        if (fejer_error_l1(F, mid) <= eps_target) hi = mid; else lo = mid + 1;
    }
    int K = lo;
    res.fejer_order = K;
    res.eps = fejer_error_l1(F, K);

    CoeffWindow P(F.lo, F.hi), D(F.lo, F.hi);
    for (int n = F.lo; n <= F.hi; ++n) {
        P[n] = F.at(n) * std::max(0.0, 1.0 - std::abs(double(n)) / K);
        D[n] = P.at(n) - F.at(n);
    }
    double eps = res.eps;
    double C = sobolev_constant();

    double Mp = 0;
    {
        CoeffWindow dP = P;
        for (int n = P.lo; n <= P.hi; ++n) dP[n] = cd(0, n) * P.at(n);
        Mp = synthesize(dP, Mf).values.cwiseAbs().maxCoeff();
    }
    auto term_bound = [&](int n) {
        return C * std::pow(eps, n) *
               (std::pow(1 - eps, -n - 1) + Mp * (n + 1) * std::pow(1 - eps, -n - 2));
    };
    auto tail_from = [&](int n) {
        double s = 0;
        for (int k = n; k < n + 400; ++k) s += term_bound(k);
        return s;
    };
    int nterms = 0;
    while (tail_from(nterms) > tol * fmin / 4) {
        ++nterms;
        if (nterms > 5000) throw NoConvergence("Neumann tail bound never met");
    }
    res.terms = nterms;
    res.tail_bound = tail_from(nterms) / fmin;

    int G = Mf;
    for (;;) {
        GridFunction pg = synthesize(P, G), dg = synthesize(D, G);
        Eigen::VectorXcd q = dg.values.cwiseQuotient(pg.values);
        Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(G), pw = Eigen::VectorXcd::Ones(G);
        for (int n = 0; n < nterms; ++n) {
            acc += pw;
            pw = pw.cwiseProduct(q);
        }
        acc = acc.cwiseQuotient(pg.values) / fmin;
        GridFunction gg;
        gg.values = acc;
        CoeffWindow full = dft_all(gg);
        double edge = 0;
        for (int n = -G / 2; n < -G / 2 + G / 8; ++n) edge += std::abs(full.at(n)) + std::abs(full.at(-n - 1));
        if (edge < tol * 1e-3 || G >= (1 << 22)) {
            int keep = 0;
            for (int n = 1; n < G / 2; ++n)
                if (std::abs(full.at(n)) > tol * 1e-6 || std::abs(full.at(-n)) > tol * 1e-6) keep = n;
            CoeffWindow g(-keep, keep);
            for (int n = -keep; n <= keep; ++n) g[n] = full.at(n);
            res.g = g;
            break;
        }
        G *= 2;
    }

    CoeffWindow prod = multiply(f, res.g);
    double r = 0;
    for (int n = prod.lo; n <= prod.hi; ++n) r += std::abs(prod.at(n) - (n == 0 ? 1.0 : 0.0));
    res.residual_l1 = r;
    if (r > tol) throw NoConvergence("l1 residual " + std::to_string(r) + " above tolerance");
    return res;
}

cd atom_mass(const CoeffWindow& mu, double zeta0, int N)
{
    if (mu.lo > -N || mu.hi < N) throw BadParameter("window does not cover |n| <= N");
    cd s = 0;
    for (int k = -N; k <= N; ++k) s += mu.at(k) * std::polar(1.0, k * zeta0);
    return s / double(2 * N + 1);
}

std::vector<double> rajchman_profile(const CoeffWindow& mu, int N)
{
    if (mu.lo > -N || mu.hi < N) throw BadParameter("window does not cover |n| <= N");
    std::vector<double> out;
    double s = std::norm(mu.at(0));
    for (int m = 1; m <= N; ++m) {
        s += std::norm(mu.at(m)) + std::norm(mu.at(-m));
        out.push_back(s / (2 * m + 1));
    }
    return out;
}

double weighted_dirichlet_sum(const CoeffWindow& c)
{
    double s = 0;
    for (int n = c.lo; n <= c.hi; ++n) s += (1 + std::abs(n)) * std::norm(c.at(n));
    return s;
}

} // namespace uplab
