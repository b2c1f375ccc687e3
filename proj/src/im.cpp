#include "uplab/im.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "uplab/hardy.hpp"

namespace uplab {

namespace {

constexpr int min_cell_points = 64;
constexpr double smoothness_budget = 1e4;

double smooth_step(double x)
{
    if (x <= 0) return 0;
    if (x >= 1) return 1;
    double a = std::exp(-1 / x), b = std::exp(-1 / (1 - x));
    return a / (a + b);
}

double bump(double u)
{
    if (u <= 0 || u >= 1) return 0;
    return std::exp(4 - 1 / (u * (1 - u)));
}

// grid indices j with t_j in [a, b], as a contiguous cyclic range
std::pair<long, long> grid_range(double a, double b, int M)
{
    double h = 2 * pi / M;
    long j0 = long(std::ceil(a / h - 1e-9));
    long j1 = long(std::floor(b / h + 1e-9));
    return {j0, j1};
}

int wrap(long j, int M)
{
    long r = j % M;
    return int(r < 0 ? r + M : r);
}

Eigen::VectorXcd coeffs(const GridFunction& f)
{
    return fft_fwd(f.values) / double(f.size());
}

}  // namespace

double MajorantSeq::operator()(long n) const
{
    n = std::abs(n);
    if (n >= long(w.size())) throw BadParameter("majorant index beyond the stored range");
    return w[size_t(n)];
}

MajorantSeq majorant_validate(const std::vector<double>& w)
{
    long N = long(w.size());
    if (N < 8) throw BadParameter("majorant needs at least 8 terms");
    for (long n = 0; n < N; ++n) {
        if (!(w[n] > 0) || !std::isfinite(w[n])) throw BadParameter("majorant must be positive");
        if (w[n] > 1 + 1e-12) throw BadParameter("majorant must satisfy w(n) <= 1");
    }
    // sparse tables of log w for range max and min
    int K = 1;
    while ((1L << K) <= N) ++K;
    std::vector<std::vector<double>> mx(K), mn(K);
    mx[0].resize(N);
    for (long n = 0; n < N; ++n) mx[0][n] = std::log(w[n]);
    mn[0] = mx[0];
    for (int k = 1; k < K; ++k) {
        long len = N - (1L << k) + 1;
        if (len <= 0) break;
        mx[k].resize(len);
        mn[k].resize(len);
        for (long n = 0; n < len; ++n) {
            mx[k][n] = std::max(mx[k - 1][n], mx[k - 1][n + (1L << (k - 1))]);
            mn[k][n] = std::min(mn[k - 1][n], mn[k - 1][n + (1L << (k - 1))]);
        }
    }
    auto query = [&](long lo, long hi, bool want_max) {
        int k = 0;
        while ((2L << k) <= hi - lo + 1) ++k;
        auto& t = want_max ? mx[k] : mn[k];
        return want_max ? std::max(t[lo], t[hi - (1L << k) + 1]) : std::min(t[lo], t[hi - (1L << k) + 1]);
    };
    auto scan = [&](long top, long& wn, long& wk) {
        double best = 0;
        for (long n = 1; 2 * n < N && n <= top; ++n) {
            double ln = mx[0][n];
            double up = query(n, 2 * n, true) - ln, dn = ln - query(n, 2 * n, false);
            double c = std::max(up, dn);
            if (c > best) {
                best = c;
                wn = n;
                wk = -1;
                for (long k = n; k <= 2 * n; ++k)
                    if (std::abs(mx[0][k] - ln) >= c - 1e-15) {
                        wk = k;
                        break;
                    }
            }
        }
        return best;
    };
    long wn = 0, wk = 0, hn = 0, hk = 0;
    double logC = scan(N / 2, wn, wk);
    double logC_half = scan(N / 4, hn, hk);
    if (!std::isfinite(logC) || (logC > logC_half + 1e-9 && logC >= 1.5 * logC_half)) {
        std::ostringstream os;
        os << "doubling constant grows with the range (log C = " << logC << " at n = " << wn << ", k = " << wk << ")";
        throw NotRegular(os.str());
    }
    MajorantSeq s;
    s.w = w;
    s.reg_constant = std::exp(logC);
    s.poly_exponent = logC / std::log(2.0);
    for (long n = 0; n < N; ++n) {
        s.sum_sq += w[n] * w[n];
        if (2 * n >= N) s.sum_sq_top += w[n] * w[n];
    }
    return s;
}

MajorantSeq power_majorant(double alpha, long N)
{
    std::vector<double> w(size_t(N + 1));
    for (long n = 0; n <= N; ++n) w[n] = std::pow(double(std::max(n, 1L)), -alpha);
    return majorant_validate(w);
}

KornerBlock korner_block(double a, double b, int N, int Msmooth, int grid, double chirp)
{
    if (N < 1) throw BadParameter("N must be positive");
    if (!(b > a) || b - a > 2 * pi) throw BadParameter("arc must satisfy a < b <= a + 2pi");
    if (!(chirp > 0)) throw BadParameter("chirp ratio must be positive");
    auto [j0, j1] = grid_range(a, b, grid);
    if (j1 - j0 + 1 < 16) throw BadParameter("arc must contain at least 16 grid cells");

    // cell edges, local frequency sweeping by the factor chirp across the arc
    std::vector<double> edges{a};
    double r = N > 1 ? std::pow(chirp, -1.0 / (N - 1)) : 1.0;
    double tot = 0;
    for (int k = 0; k < N; ++k) tot += std::pow(r, k);
    for (int k = 0; k < N; ++k) edges.push_back(edges.back() + (b - a) * std::pow(r, k) / tot);
    edges.back() = b;

    struct Cell {
        long j0, j1;
        double l, r, p;
    };
    std::vector<Cell> cells;
    double h = 2 * pi / grid;
    for (int k = 0; k < N; ++k) {
        auto [c0, c1] = grid_range(edges[k], edges[k + 1], grid);
        long pts = c1 - c0 + 1;
        if (pts < min_cell_points) throw GridTooCoarse("Korner cells fall below the grid resolution");
        double wid = edges[k + 1] - edges[k];
        double p = std::max(1.05 / 50, (std::ceil(wid / h / 50) + 0.999) * h / wid);
        cells.push_back({c0, c1, edges[k], edges[k + 1], p});
    }

    double m = (b - a) / (2 * pi);
    Eigen::VectorXd f = Eigen::VectorXd::Zero(grid);
    auto build = [&](double tau) {
        f.setZero();
        for (auto& c : cells) {
            std::vector<double> wv, bv;
            double sw = 0, sb = 0;
            for (long j = c.j0; j <= c.j1; ++j) {
                double u = (j * h - c.l) / (c.r - c.l);
                double d = std::abs(u - 0.5) - c.p / 2;
                double W = d <= 0 ? 1.0 : 1 - smooth_step(d / tau);
                double B = bump(u) * (1 - W);
                wv.push_back(W);
                bv.push_back(B);
                sw += W;
                sb += B;
            }
            double amp = 10 * sw / sb;
            for (long j = c.j0; j <= c.j1; ++j) f(wrap(j, grid)) = -10 * wv[j - c.j0] + amp * bv[j - c.j0];
        }
        return f.cwiseAbs().sum() / grid;
    };
    double pmax = 0;
    for (auto& c : cells) pmax = std::max(pmax, c.p);
    double lo = 1e-4, hi = 0.5 - pmax / 2 - 0.15;
    if (hi <= lo || build(lo) > m || build(hi) < m) throw GridTooCoarse("cannot match the L1 mass of the arc on this grid");
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        double mid = 0.5 * (lo + hi);
        (build(mid) < m ? lo : hi) = mid;
    }
    build(0.5 * (lo + hi));

    KornerBlock kb;
    kb.a = a;
    kb.b = b;
    kb.N = N;
    kb.M = Msmooth;
    kb.measure = m;
    kb.f.values = f.cast<cd>();
    kb.f.is_real = true;
    kb.fmin = f.minCoeff();
    kb.fmax = f.maxCoeff();
    kb.l1 = f.cwiseAbs().sum() / grid;
    int plat = 0;
    for (int j = 0; j < grid; ++j) plat += (f(j) == -10.0);
    kb.plateau = double(plat) / grid;
    std::vector<bool> inside(grid, false);
    for (long j = j0; j <= j1; ++j) inside[wrap(j, grid)] = true;
    for (int j = 0; j < grid; ++j)
        if (!inside[j]) kb.support_leak = std::max(kb.support_leak, std::abs(f(j)));

    Eigen::VectorXcd c = coeffs(kb.f);
    double cmax = c.tail(grid - 1).cwiseAbs().maxCoeff();
    auto fit = [&](int Ms) {
        double best = 0;
        for (int n = 1; n <= grid / 2; ++n) {
            double v = std::abs(c(n));
            if (v <= 1e-13 * cmax) continue;
            double x = n * m / N;
            double env = m / std::sqrt(double(N)) * std::min(std::pow(x, Ms), std::pow(x, -Ms));
            best = std::max(best, v / env);
        }
        return best;
    };
    double peak = 0;
    for (int n = 1; n <= grid / 2; ++n)
        if (std::abs(c(n)) > peak) {
            peak = std::abs(c(n));
            kb.peak_n = n;
        }
    kb.cfit = fit(Msmooth);
    if (kb.cfit > smoothness_budget) {
        int best = Msmooth - 1;
        while (best > 0 && fit(best) > smoothness_budget) --best;
        std::ostringstream os;
        os << "fitted C(M) = " << kb.cfit << " exceeds the budget at M = " << Msmooth << "; best achieved M = " << best;
        throw SmoothnessBudget(os.str());
    }
    return kb;
}

PsiCertificate audit_psi(const GridFunction& psi, const MajorantSeq& w, double delta, int window)
{
    int M = psi.size();
    PsiCertificate c;
    c.window = window;
    Eigen::VectorXd v = psi.values.real();
    c.min_value = v.minCoeff();
    long double s = 0;
    for (int j = 0; j < M; ++j) s += v(j);
    c.mean = double(s / M);

    std::vector<int> pre(2 * M + 1, 0);
    for (int j = 0; j < 2 * M; ++j) pre[j + 1] = pre[j] + (v(j % M) == 0.0);
    c.zero_fraction = 1;
    for (double L = delta; L <= 1 + 1e-12; L = (L < 4 * delta ? L + delta / 2 : L * 1.5)) {
        int len = std::min(M, int(std::ceil(L * M)));
        for (int j = 0; j < M; ++j) c.zero_fraction = std::min(c.zero_fraction, double(pre[j + len] - pre[j]) / len);
        if (len == M) break;
    }

    std::vector<double> cs(M), sn(M);
    for (int j = 0; j < M; ++j) {
        cs[j] = std::cos(2 * pi * j / M);
        sn[j] = std::sin(2 * pi * j / M);
    }
    for (int n = 1; n <= window; ++n) {
        long double re = 0, im = 0;
        long idx = 0;
        for (int j = 0; j < M; ++j) {
            re += v(j) * cs[idx];
            im -= v(j) * sn[idx];
            idx += n;
            if (idx >= M) idx -= M;
        }
        double a = double(std::sqrt(re * re + im * im) / M) / w(n);
        if (a > c.eps_achieved) {
            c.eps_achieved = a;
            c.worst_n = n;
        }
    }
    return c;
}

PsiStep psi_step(const MajorantSeq& w, double eps, double delta, int grid, std::uint64_t seed, int attempts, int window,
                 int octave_span)
{
    if (octave_span < 1) throw BadParameter("octave span must be positive");
    if (!(eps > 0)) throw BadParameter("eps must be positive");
    if (!(delta > 0 && delta < 1)) throw BadParameter("delta must lie in (0, 1)");
    if (window >= w.size()) throw BadParameter("majorant range must cover the audit window");

    double len_max = delta / 4, len_min = 0.6 * len_max;
    double nu_cap = double(grid) / min_cell_points;
    std::vector<int> octaves;
    double budget = 0;
    for (int d = 0; std::ldexp(1.0, d) <= nu_cap; ++d) {
        double nu = std::ldexp(1.0, d);
        if (nu * len_max < 1) continue;
        if (long(nu) >= w.size()) break;
        double t = nu * w(long(nu)) * w(long(nu));
        if (1 / nu < t) {
            octaves.push_back(d);
            budget += t;
        }
    }
    if (octaves.empty() || budget < 1) {
        std::ostringstream os;
        os << "no admissible octave partition at delta = " << delta << " on a grid of " << grid << " (budget " << budget << ")";
        throw PartitionInfeasible(os.str());
    }

    if (int(octaves.size()) > octave_span) octaves.resize(size_t(octave_span));
    PsiStep best;
    best.cert.eps_achieved = INFINITY;
    for (int at = 0; at < attempts; ++at) {
        std::mt19937_64 rng(seed * 7919 + at);
        std::uniform_real_distribution<double> U(0, 1);
        // early attempts leave every third slot empty, later ones tile the whole circle
        bool sparse = at < attempts / 2;
        std::vector<double> lens;
        std::vector<bool> filled;
        double pos = 0;
        while (pos < 1 - 1e-12) {
            bool blank = sparse && lens.size() % 3 == 2;
            double lo = blank ? 0.3 * len_max : 0.85 * len_max, hi = blank ? 0.5 * len_max : len_max;
            double len = lo + (hi - lo) * U(rng);
            if (1 - pos - len < len_min) len = 1 - pos <= len_max ? 1 - pos : (1 - pos) / 2;
            lens.push_back(len);
            filled.push_back(!blank);
            pos += len;
        }
        std::vector<int> order(lens.size());
        for (size_t k = 0; k < order.size(); ++k) order[k] = octaves[k % octaves.size()];
        std::shuffle(order.begin(), order.end(), rng);

        Eigen::VectorXd F = Eigen::VectorXd::Zero(grid);
        double start = 2 * pi * U(rng);
        pos = 0;
        int nblocks = 0;
        for (size_t k = 0; k < lens.size(); ++k) {
            double nu0 = std::ldexp(1.0, order[k]);
            double nu = std::min(nu0 * std::pow(2.0, U(rng)), nu_cap);
            double pts = lens[k] * grid;
            int Nk = std::max(1, int(std::lround(nu * lens[k])));
            double chirp = U(rng) < 0.5 ? 2.0 : 0.5;
            if (Nk > pts / 100) chirp = 1;
            Nk = std::min(Nk, std::max(1, int(pts / 66)));
            double a = start + 2 * pi * pos, b = a + 2 * pi * lens[k];
            pos += lens[k];
            if (!filled[k]) continue;
            KornerBlock kb = korner_block(a, b, Nk, 2, grid, chirp);
            F += kb.f.values.real();
            ++nblocks;
        }
        Eigen::VectorXd v = (F.array() + 10.0).matrix();
        v /= v.mean();
        GridFunction psi;
        psi.values = v.cast<cd>();
        psi.is_real = true;
        PsiCertificate c = audit_psi(psi, w, delta, window);
        c.blocks = nblocks;
        c.attempts = at + 1;
        c.partition_budget = budget;
        c.ok = c.min_value >= 0 && std::abs(c.mean - 1) <= 1e-8 && c.zero_fraction >= 0.01 && c.eps_achieved <= eps;
        if (c.ok) return {psi, c};
        if (c.eps_achieved < best.cert.eps_achieved) best = {psi, c};
    }
    std::ostringstream os;
    if (best.cert.zero_fraction < 0.01) {
        os << "zero set fraction " << best.cert.zero_fraction << " below 1/100 on arcs of length " << delta;
        throw PartitionInfeasible(os.str());
    }
    os << "best certified eps " << best.cert.eps_achieved << " at n = " << best.cert.worst_n << " exceeds " << eps << " after "
       << attempts << " constructions";
    throw FourierBudget(os.str());
}

double cover_delta(const GridFunction& f, double efficiency)
{
    int M = f.size();
    std::vector<bool> pos(M);
    int npos = 0;
    for (int j = 0; j < M; ++j) {
        pos[j] = f.values(j).real() > 0;
        npos += pos[j];
    }
    if (npos == 0) throw BadInput("function vanishes identically");
    double mE = double(npos) / M;
    if (npos == M) return 0.99 * 0.5;

    // zero runs (gaps), cyclic
    int s0 = 0;
    while (!pos[s0]) ++s0;
    struct Gap {
        int start, len;
    };
    std::vector<Gap> gaps;
    for (int k = 0; k < M;) {
        int j = (s0 + k) % M;
        if (pos[j]) {
            ++k;
            continue;
        }
        int len = 0;
        while (k < M && !pos[(s0 + k) % M]) {
            ++len;
            ++k;
        }
        gaps.push_back({j, len});
    }
    double need = 1 - efficiency * mE;
    if (need <= 0) {
        int big = 0;
        for (size_t i = 1; i < gaps.size(); ++i)
            if (gaps[i].len > gaps[big].len) big = int(i);
        return 0.99 * double(M - gaps[big].len) / M;
    }

    // largest L such that gaps pairwise separated by arcs >= L exclude enough measure;
    // the cycle is cut at the widest gap, which is always excluded
    size_t G = gaps.size();
    size_t g0 = 0;
    for (size_t i = 1; i < G; ++i)
        if (gaps[i].len > gaps[g0].len) g0 = i;
    std::vector<long> st(G), en(G);
    std::vector<double> wt(G);
    for (size_t k = 0; k < G; ++k) {
        auto& g = gaps[(g0 + k) % G];
        long s = ((long(g.start) - gaps[g0].start) % M + M) % M;
        st[k] = s;
        en[k] = s + g.len;
        wt[k] = double(g.len) / M;
    }
    auto best_excluded = [&](long L) {
        // dp[k]: best excluded measure with gap k excluded last; gap 0 is always excluded
        std::vector<double> dp(G, -1);
        dp[0] = wt[0];
        double best = -1;
        for (size_t k = 1; k < G; ++k) {
            for (size_t i = k; i-- > 0;) {
                if (dp[i] < 0) continue;
                if (st[k] - en[i] >= L) dp[k] = std::max(dp[k], dp[i] + wt[k]);
            }
            if (dp[k] >= 0 && M - en[k] >= L) best = std::max(best, dp[k]);
        }
        if (M - en[0] >= L) best = std::max(best, dp[0]);
        return best;
    };
    long lo = 1, hi = M;
    if (best_excluded(lo) < need) throw BadInput("support cannot be covered at the requested efficiency");
    while (hi - lo > 1) {
        long mid = (lo + hi) / 2;
        (best_excluded(mid) >= need ? lo : hi) = mid;
    }
    return 0.99 * double(lo) / M;
}

bool check_invariants(const IMState& s, const MajorantSeq& w, int window, std::string* why)
{
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    int n = s.level;
    if (s.f.values.real().minCoeff() < -1e-10) return fail("negative values");
    if (s.support_measure > std::pow(1 - 1e-4, n) + 1e-12) return fail("support too large");
    if (s.mean < 1 + std::ldexp(1.0, -n) - 1e-12) return fail("mean below 1 + 2^-n");
    Eigen::VectorXcd c = coeffs(s.f);
    double slack = 1 - std::ldexp(1.0, -n);
    for (int k = 1; k <= window; ++k)
        if (std::abs(c(k)) > slack * w(k) + 1e-12) {
            std::ostringstream os;
            os << "majorant violated at k = " << k << ": " << std::abs(c(k)) << " > " << slack * w(k);
            return fail(os.str());
        }
    return true;
}

static IMState make_state(int level, const GridFunction& f, const MajorantSeq& w, int window)
{
    IMState s;
    s.level = level;
    s.f = f;
    int M = f.size();
    int npos = 0;
    std::vector<std::pair<double, double>> runs;
    double h = 2 * pi / M;
    for (int j = 0; j < M; ++j)
        if (f.values(j).real() > 0) {
            ++npos;
            if (!runs.empty() && std::abs(runs.back().second - j * h) < 1e-12) runs.back().second = (j + 1) * h;
            else runs.push_back({j * h, (j + 1) * h});
        }
    s.support = IntervalSet(Domain::circle, runs);
    s.support_measure = double(npos) / M;
    s.mean = f.values.real().mean();
    s.lower_mass = 1 + std::ldexp(1.0, -level);
    s.majorant_slack = 1 - std::ldexp(1.0, -level);
    Eigen::VectorXcd c = coeffs(f);
    for (int k = 1; k <= window; ++k) s.majorant_ratio = std::max(s.majorant_ratio, std::abs(c(k)) / w(k));
    return s;
}

IMRun im_iterate(const MajorantSeq& w, int steps, int grid, std::uint64_t seed, int window)
{
    if (steps < 1) throw BadParameter("steps must be positive");
    if (grid < (1 << 12)) throw GridTooCoarse("IM iteration needs at least 2^12 grid points");
    IMRun run;
    GridFunction f = sample_real(grid, [](double) { return 2.0; });
    run.states.push_back(make_state(0, f, w, window));
    run.states[0].invariants = check_invariants(run.states[0], w, window);
    std::ostringstream diag;
    for (int n = 0; n < steps; ++n) {
        const IMState& cur = run.states.back();
        double delta = cover_delta(cur.f);
        Eigen::VectorXcd c = coeffs(cur.f);
        double l1 = c.cwiseAbs().sum();
        double tail = 0;
        for (int k = 1; k <= window; ++k) {
            double t = 0;
            for (int j = 0; j < grid; ++j) {
                int jj = j < grid / 2 ? j : j - grid;
                if (2 * std::abs(jj) > k) t += std::abs(c(j));
            }
            tail = std::max(tail, t / w(k));
        }
        double proof_eps = std::ldexp(1.0, -n - 1) / (w.reg_constant * l1 + tail);

        bool done = false;
        std::string last;
        double eps_floor = std::ldexp(1.0, -n - 4);
        for (double eps = 0.5; eps >= eps_floor * (1 - 1e-12) && !done; eps /= 2) {
            PsiStep ps;
            try {
                ps = psi_step(w, eps, delta, grid, seed + 1000 * n + std::uint64_t(std::lround(1 / eps)));
            } catch (const PartitionInfeasible& e) {
                last = e.what();
                break;
            } catch (const Error& e) {
                last = e.what();
                continue;
            }
            GridFunction g;
            g.values = (cur.f.values.real().array() * ps.psi.values.real().array()).matrix().cast<cd>();
            g.is_real = true;
            IMState nx = make_state(n + 1, g, w, window);
            nx.eps = eps;
            nx.delta = delta;
            nx.proof_eps = proof_eps;
            std::string why;
            nx.invariants = check_invariants(nx, w, window, &why);
            for (int j = 0; j < grid && nx.invariants; ++j)
                if (g.values(j).real() > 0 && !(cur.f.values(j).real() > 0)) {
                    nx.invariants = false;
                    why = "support not nested";
                }
            if (nx.invariants) {
                run.states.push_back(nx);
                done = true;
            } else {
                last = "eps " + std::to_string(eps) + ": " + why;
            }
        }
        if (!done) {
            diag << "level " << n + 1 << " halted (delta " << delta << ", proof eps " << proof_eps << "): " << last;
            run.diagnostics = diag.str();
            return run;
        }
    }
    run.complete = true;
    return run;
}

std::string im_level_csv(const IMState& s, const MajorantSeq& w, int window)
{
    Eigen::VectorXcd c = coeffs(s.f);
    std::ostringstream os;
    os.precision(12);
    os << "n,abs_fhat,bound\n";
    for (int k = 1; k <= window; ++k) os << k << ',' << std::abs(c(k)) << ',' << s.majorant_slack * w(k) << '\n';
    return os.str();
}

KornerSequence korner_negative_sequence(int J, int p, int q, int N1)
{
    if (J < 2 || J > 5) throw BadParameter("J must lie in [2, 5]");
    if (p < 1 || q < 1 || N1 < 2) throw BadParameter("need p, q >= 1 and N1 >= 2");
    KornerSequence s;
    s.p = p;
    s.q = q;
    s.log2N.push_back(std::log2((long double)N1));
    for (int j = 1; j <= J; ++j) {
        long double Nj = std::exp2(s.log2N.back());
        s.log2N.push_back(p * Nj);
    }
    for (size_t j = 0; j < s.log2N.size(); ++j) s.log2eps.push_back(-q * std::exp2(s.log2N[j]));
    // blocks [N_j, N_{j+1}) for j = 1..J-1, i.e. n < N_J
    for (int j = 0; j + 1 < J; ++j) {
        long double lj = s.log2N[j], lk = s.log2N[j + 1];
        long double ratio = std::isinf(lk) ? 0.0L : std::exp2(lj - lk);
        long double Nj = std::exp2(lj);
        long double expo = (p == 2 * q) ? 0.0L : (p - 2.0L * q) * Nj;
        long double sq = std::exp2(expo) * (1 - ratio) * (1 - s.eta) * (1 - s.eta);
        s.sq_blocks.push_back(double(sq));
        // log eps_j * (1/N_j - 1/N_{j+1}), a lower bound for the block sum of 1/n^2
        s.log_blocks.push_back(double(-q * std::log(2.0L) * (1 - ratio)));
    }
    for (double v : s.sq_blocks) s.sum_sq += v;
    for (double v : s.log_blocks) s.sum_log += v;
    s.sq_divergent = s.sq_blocks.back() >= 0.25 * s.sq_blocks.front();
    s.log_divergent = s.log_blocks.back() <= 0.25 * s.log_blocks.front();
    return s;
}

double KornerSequence::operator()(double n) const
{
    if (n < 0) throw BadParameter("index must be nonnegative");
    long double ln = std::log2((long double)std::max(n, 1.0));
    if (ln < log2N[0]) return 1;
    for (size_t j = 0; j + 1 < log2N.size(); ++j) {
        if (ln < log2N[j + 1]) {
            long double Nj = std::exp2(log2N[j]), Nk = std::exp2(log2N[j + 1]);
            long double frac = std::isinf(Nk) ? 0.0L : (n - Nj) / (Nk - Nj);
            return double(std::exp2(log2eps[j]) * (1 - eta * frac));
        }
    }
    throw BadParameter("index beyond the constructed blocks");
}

cd SAFunction::eval(double t) const
{
    double s = std::fmod(double(N) * t, 2 * pi);
    return eval_poly(F, s);
}

SAResult sa_functions(const std::function<double(double)>& w, double range, double delta, int count, double gamma0, int grid)
{
    if (!(range >= 2)) throw BadParameter("majorant range too short");
    double prevw = INFINITY;
    for (int k = 0; k <= 400; ++k) {
        double n = k == 0 ? 0.0 : std::pow(range, k / 400.0);
        double v = w(n);
        if (!(v > 0)) throw BadParameter("majorant must be positive");
        if (v > prevw) throw BadParameter("majorant must be nonincreasing");
        prevw = v;
    }
    if (!(w(range) < w(0))) throw BadParameter("majorant must decrease");
    if (!(delta > 0 && delta < 1) || count < 1) throw BadParameter("need 0 < delta < 1 and count >= 1");
    if (!(gamma0 > 0 && gamma0 < 1)) throw BadParameter("gamma must lie in (0, 1)");

    SAResult R;
    double prev = INFINITY;
    for (int j = 0; j < count; ++j) {
        SAFunction fj;
        fj.gamma = gamma0 * std::pow(0.5, j);
        fj.delta = delta / count;
        double lg = std::log(fj.gamma);
        double gap0 = 2 * pi * (1 - fj.delta);
        auto shape = [&](double t) {
            if (t <= gap0) return 0.0;
            double u = (t - gap0) / (2 * pi - gap0);
            return smooth_step(u / 0.25) * smooth_step((1 - u) / 0.25);
        };
        GridFunction B = sample_real(grid, shape);
        double cB = -lg / B.values.real().mean();
        GridFunction psi = sample_real(grid, [&](double t) { return lg + cB * shape(t); });
        GridFunction conj = conjugate_circle(psi);
        GridFunction G;
        G.values.resize(grid);
        for (int k = 0; k < grid; ++k) G.values(k) = std::exp(cd(psi.values(k).real(), conj.values(k).real()));
        Eigen::VectorXcd c = coeffs(G);
        fj.F = CoeffWindow(0, grid / 2 - 1);
        fj.F[0] = 1.0 - c(0);
        for (int n = 1; n < grid / 2; ++n) fj.F[n] = -c(n);
        fj.f0 = std::abs(fj.F[0]);

        int top = grid / 2 - 1;
        double cmax = fj.F.c.cwiseAbs().maxCoeff();
        while (top > 1 && std::abs(fj.F[top]) < 1e-16 * cmax) --top;
        auto l1w = [&](long N) {
            double s = 0;
            for (int n = 1; n <= top; ++n) s += std::abs(fj.F[n]) * w(double(N) * n);
            return s;
        };
        double target = std::min(fj.gamma, 0.999 * prev);
        long hiN = long(std::min(range / top, 9e18));
        if (hiN < 1 || l1w(hiN) > target) throw GridTooCoarse("N_j search exceeds the majorant range");
        long loN = 1;
        if (l1w(1) > target) {
            while (hiN - loN > 1) {
                long mid = loN + (hiN - loN) / 2;
                (l1w(mid) > target ? loN : hiN) = mid;
            }
            fj.N = hiN;
        } else {
            fj.N = 1;
        }
        fj.l1w = l1w(fj.N);
        prev = fj.l1w;

        std::mt19937_64 rng(12345 + j);
        std::uniform_real_distribution<double> U(0, 1);
        for (int k = 0; k < 400; ++k) {
            double u = gap0 * U(rng);
            double arc = std::floor(U(rng) * fj.N);
            double t = (u + 2 * pi * arc) / fj.N;
            fj.dev_on_E = std::max(fj.dev_on_E, std::abs(std::abs(fj.eval(t) - 1.0) - fj.gamma));
        }
        R.f.push_back(fj);
    }

    // E = intersection of the preimages, measured on a fine grid of sample points
    const int S = 1 << 20;
    std::vector<bool> inE(S, true);
    int cnt = 0;
    for (int k = 0; k < S; ++k) {
        double t = 2 * pi * (k + 0.5) / S;
        for (auto& fj : R.f) {
            double s = std::fmod(double(fj.N) * t, 2 * pi);
            if (s > 2 * pi * (1 - fj.delta)) {
                inE[k] = false;
                break;
            }
        }
        cnt += inE[k];
    }
    R.E_measure = double(cnt) / S;
    long arcs = 0;
    for (auto& fj : R.f) arcs += fj.N;
    if (arcs <= 200000) {
        std::vector<std::pair<double, double>> iv;
        for (int k = 0; k < S;) {
            if (!inE[k]) {
                ++k;
                continue;
            }
            int e = k;
            while (e < S && inE[e]) ++e;
            iv.push_back({2 * pi * k / S, 2 * pi * e / S});
            k = e;
        }
        R.E = IntervalSet(Domain::circle, iv);
    }

    R.mu0 = R.E_measure;
    int nmax = int(std::min(4096.0, range));
    Eigen::VectorXcd ind(S);
    for (int k = 0; k < S; ++k) ind(k) = inE[k] ? 1.0 : 0.0;
    Eigen::VectorXcd mc = fft_fwd(ind) / double(S);
    for (int n = 1; n <= nmax; ++n) R.mu_ratio_range = std::max(R.mu_ratio_range, std::abs(mc(n)) / w(n));
    R.mu_ratio_range = std::max(R.mu_ratio_range, R.mu0 / w(0));
    for (auto& fj : R.f) R.forced_ratio.push_back((1 - fj.gamma) * R.mu0 / fj.l1w);
    return R;
}

}  // namespace uplab
