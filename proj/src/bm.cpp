#include "uplab/bm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "uplab/hardy.hpp"
#include "uplab/quad.hpp"

namespace uplab {

namespace {

double wrap_pi(double t)
{
    return t - 2 * pi * std::floor((t + pi) / (2 * pi));
}

bool floored_run(const Eigen::VectorXd& v)
{
    int M = int(v.size());
    for (int j = 0; j < M; ++j)
        if (v(j) <= log_floor && v((j + 1) % M) <= log_floor) return true;
    return false;
}

Eigen::VectorXd real_part(const LineField& f)
{
    return f.values.real();
}

LineField from_real(double L, const Eigen::VectorXd& v)
{
    LineField f;
    f.L = L;
    f.values = v.cast<cd>();
    return f;
}

LineField conj_periodic(const LineField& f)
{
    return conjugate_line(f, INFINITY);
}

// d/dx of the conjugate function
LineField conj_derivative(const LineField& f)
{
    return line_multiplier(f, [](double xi) { return cd(std::abs(xi), 0); });
}

void check_period(double a, double L)
{
    double r = 2 * a * L;
    if (std::abs(r - std::round(r)) > 1e-9 * std::max(1.0, r))
        throw BadParameter("2aL must be an integer for e^{2 pi i a x} to be periodic on the grid");
}

} // namespace

AdmissibilityReport admissibility_necessary(const LineField& w)
{
    int M = w.size();
    AdmissibilityReport r;
    Eigen::VectorXd v = w.values.cwiseAbs();
    r.floored = floored_run(v);
    Eigen::VectorXd lw(M);
    for (int j = 0; j < M; ++j) lw(j) = std::log(std::max(v(j), log_floor)) / (1 + w.x(j) * w.x(j));

    double h = w.h();
    for (double T = 1; T <= w.L; T *= 2) {
        double s = 0;
        for (int j = 0; j < M; ++j)
            if (std::abs(w.x(j)) <= T) s += lw(j);
        r.T.push_back(T);
        r.partial.push_back(s * h);
    }
    r.poisson = lw.sum() * h;

    size_t n = r.partial.size();
    bool tail = false;
    if (n >= 3) {
        double i1 = r.partial[n - 1] - r.partial[n - 2], i0 = r.partial[n - 2] - r.partial[n - 3];
        if (std::abs(i0) > 1e-14) r.increment_ratio = i1 / i0;
        tail = r.increment_ratio >= 0.9 && std::abs(i1) > 1e-6;
    }

    double I[3] = {0, 0, 0};
    for (int k = 0; k < 3; ++k) {
        int s = 1 << k;
        for (int j = 0; j < M; j += s) I[k] += lw(j);
        I[k] *= s * h;
    }
    double d1 = std::abs(I[0] - I[1]), d2 = std::abs(I[1] - I[2]);
    r.refine_ratio = d2 > 0 ? d1 / d2 : 0;
    bool local = d1 > 1e-6 && r.refine_ratio >= 0.85;

    r.divergent = r.floored || tail || local;
    return r;
}

MildBM mild_bm(const std::function<double(double)>& w, double a, int sigma_budget, double c_factor, int M, double L)
{
    if (!(a > 0)) throw BadParameter("a must be positive");
    if (!(c_factor > 0) || c_factor > 1) throw BadParameter("c_factor must lie in (0, 1]");
    LineField ws = line_sample_real(L, M, w);
    double w0 = w(0);
    if (!(w0 > 0)) throw BadParameter("w(0) must be positive");
    for (int j = M / 2; j < M; ++j) {
        double x = ws.x(j), v = ws.values(j).real();
        if (!(v > 0) && v != 0) throw BadParameter("w must be nonnegative");
        if (std::abs(w(-x) - v) > 1e-12 * w0) throw BadParameter("w must be even");
        if (j > M / 2 && v > ws.values(j - 1).real() * (1 + 1e-12)) throw BadParameter("w must be nonincreasing on [0, L)");
    }
    auto adm = admissibility_necessary(ws);
    if (adm.divergent) throw NotLogIntegrable("log w is not Poisson integrable; w cannot be a BM majorant");

    MildBM r;
    double dxi = pi / L;
    r.K = int(std::floor(a / dxi + 1e-9));
    if (r.K < 1) throw GridTooCoarse("a is below the frequency step");
    if (4 * r.K + 2 * sigma_budget >= M / 2) throw GridTooCoarse("support of g does not fit the frequency window");
    r.a = r.K * dxi;
    r.c = c_factor / std::sqrt(8 * pi * w0);

    Eigen::VectorXd U(M);
    for (int j = 0; j < M; ++j) {
        double x = ws.x(j);
        double W = r.c * w(2 * x) * std::exp(-std::sqrt(std::abs(2 * x)));
        U(j) = std::log(std::max(W, log_floor));
    }
    LineField V = conj_periodic(from_real(L, U));
    LineField F;
    F.L = L;
    F.values.resize(M);
    for (int j = 0; j < M; ++j) F.values(j) = std::exp(cd(U(j), V.values(j).real()));

    Eigen::VectorXcd spec = line_fourier(F);
    for (int i = 0; i < M / 2; ++i) spec(i) = 0;
    LineField FP = line_inverse(spec, L);
    double Wmax = std::exp(U.maxCoeff());
    for (int j = 0; j < M; ++j)
        if (std::abs(FP.x(j)) <= L / 4) r.modulus_dev = std::max(r.modulus_dev, std::abs(std::abs(FP.values(j)) - std::exp(U(j))) / Wmax);

    double smax = spec.cwiseAbs().maxCoeff(), tol = 1e-6;
    int shift = -1;
    for (int k = 0; k <= sigma_budget; ++k) {
        if (std::abs(spec(M / 2 + r.K - k)) > tol * smax) {
            shift = k;
            break;
        }
    }
    if (shift < 0) throw ModulationSearchFailed("Fhat(a - sigma) vanishes for every sigma in the budget");
    r.sigma = shift * dxi;
    Eigen::VectorXcd sh = Eigen::VectorXcd::Zero(M);
    for (int i = shift; i < M; ++i) sh(i) = spec(i - shift);
    r.Fhat = sh;
    r.F = line_inverse(sh, L);

    int K = r.K;
    r.g.resize(2 * K + 1);
    for (int m = -K; m <= K; ++m) {
        r.s.push_back(m * dxi);
        r.g(m + K) = sh(M / 2 + K - m) * sh(M / 2 + K + m);
    }
    r.g0 = std::abs(r.g(K));
    r.mass = r.g.cwiseAbs().sum() * dxi;

    Eigen::VectorXcd G = Eigen::VectorXcd::Zero(M);
    for (int m = -K; m <= K; ++m) G((m + M) % M) = r.g(m + K) * ((m % 2 == 0) ? 1.0 : -1.0);
    Eigen::VectorXcd Gh = fft_fwd(G);
    r.ghat.L = L;
    r.ghat.values = Gh * dxi;

    double h = F.h();
    Eigen::VectorXcd B(M);
    for (int j = 0; j < M; ++j) {
        int jj = (M - j) % M;
        double x = F.x(jj);
        B(j) = r.F.values(jj) * std::exp(cd(0, -2 * r.a * x));
    }
    Eigen::VectorXcd S = fft_inv(fft_fwd(r.F.values).cwiseProduct(fft_fwd(B)));
    r.ghat_conv.L = L;
    r.ghat_conv.values.resize(M);
    for (int n = 0; n < M; ++n) {
        double x = F.x(n);
        r.ghat_conv.values(n) = 2 * pi * h * std::exp(cd(0, -r.a * x)) * S(((n - M / 2) % M + M) % M);
    }
    double gmax = r.ghat.values.cwiseAbs().maxCoeff();
    r.two_way = (r.ghat.values - r.ghat_conv.values).cwiseAbs().maxCoeff() / gmax;

    for (int n = 0; n < M; ++n) {
        double x = F.x(n), wv = w(x);
        double q = wv > 0 ? std::abs(r.ghat.values(n)) / wv : INFINITY;
        if (q > r.ratio) {
            r.ratio = q;
            r.worst_x = x;
        }
    }
    r.margin = 1 - r.ratio;
    return r;
}

BMProblem bm_problem(const LineField& Omega, double a)
{
    int M = Omega.size();
    BMProblem p;
    p.Omega = from_real(Omega.L, real_part(Omega));
    p.a = a;
    Eigen::VectorXd O = real_part(Omega);
    if (O.minCoeff() < -1e-12) throw BadInput("Omega = log(1/w) must be nonnegative");
    LineField w = Omega;
    for (int j = 0; j < M; ++j) w.values(j) = std::exp(-O(j));
    auto adm = admissibility_necessary(w);
    if (adm.divergent) throw NotLogIntegrable("Poisson integral of Omega diverges");
    p.poisson = -adm.poisson;

    double h = Omega.h();
    for (int j = 0; j + 1 < M; ++j) p.lipschitz_est = std::max(p.lipschitz_est, std::abs(O(j + 1) - O(j)) / h);

    LineField D = conj_derivative(p.Omega);
    LineField half;
    half.L = Omega.L / 2;
    half.values = p.Omega.values.segment(M / 4, M / 2);
    LineField Dh = conj_derivative(half);
    for (int j = 0; j < M; ++j) {
        double x = Omega.x(j);
        if (std::abs(x) <= Omega.L / 2) p.hilbert_sup_est = std::max(p.hilbert_sup_est, std::abs(D.values(j).real()));
        if (std::abs(x) <= Omega.L / 4)
            p.hilbert_trunc = std::max(p.hilbert_trunc, std::abs(D.values(j).real() - Dh.values(j - M / 4).real()));
    }
    return p;
}

EnvelopeGrid subharmonic_envelope(const BMProblem& p, double C, double X, double Y)
{
    const LineField& O = p.Omega;
    int M = O.size();
    double h = O.h();
    if (X >= O.L / 2 || Y <= 0) throw BadParameter("strip must sit inside the central half of the grid");

    Eigen::VectorXd lw = -real_part(O);
    LineField logw = from_real(O.L, lw);
    LineField Uy = line_multiplier(logw, [](double xi) { return cd(-std::abs(xi), 0); });
    int worst = -1;
    double worst_mass = 0;
    for (int j = 0; j < M; ++j) {
        if (std::abs(O.x(j)) > O.L / 2) continue;
        double m = 2 * (C + Uy.values(j).real());
        if (m < worst_mass) {
            worst_mass = m;
            worst = j;
        }
    }
    if (worst >= 0) {
        std::ostringstream os;
        os << "line mass 2(C + dPu/dy) = " << worst_mass << " < 0 at x = " << O.x(worst);
        throw NotSubharmonic(os.str());
    }

    EnvelopeGrid e;
    e.C = C;
    int j0 = M / 2 - int(std::floor(X / h + 1e-9)), j1 = M / 2 + int(std::floor(X / h + 1e-9));
    int nx = j1 - j0 + 1, ny = std::max(2, int(std::lround(Y / h)));
    for (int j = j0; j <= j1; ++j) e.x.push_back(O.x(j));
    for (int i = -ny; i <= ny; ++i) e.y.push_back(i * h);
    e.axis_row = ny;
    e.u.resize(2 * ny + 1, nx);

    Eigen::VectorXcd s = line_fourier(logw);
    s(0) = 0;
    for (int j = 0; j < nx; ++j) e.u(ny, j) = lw(j0 + j);
    for (int k = 1; k <= ny; ++k) {
        Eigen::VectorXcd sk = s;
        for (int i = 1; i < M; ++i) sk(i) *= std::exp(-std::abs(O.xi(i - M / 2)) * k * h);
        LineField row = line_inverse(sk, O.L);
        for (int j = 0; j < nx; ++j) {
            double v = row.values(j0 + j).real() + C * k * h;
            e.u(ny + k, j) = v;
            e.u(ny - k, j) = v;
        }
    }

    e.lap = Eigen::MatrixXd::Zero(2 * ny + 1, nx);
    e.laplacian_margin = INFINITY;
    e.five_point_margin = INFINITY;
    e.axis_min = INFINITY;
    const auto& u = e.u;
    for (int i = 1; i < 2 * ny; ++i) {
        for (int j = 1; j + 1 < nx; ++j) {
            double cross = u(i - 1, j) + u(i + 1, j) + u(i, j - 1) + u(i, j + 1);
            double diag = u(i - 1, j - 1) + u(i - 1, j + 1) + u(i + 1, j - 1) + u(i + 1, j + 1);
            double l9 = (4 * cross + diag - 20 * u(i, j)) / (6 * h * h);
            e.lap(i, j) = l9;
            if (i == ny) {
                e.axis_min = std::min(e.axis_min, l9);
            } else {
                e.laplacian_margin = std::min(e.laplacian_margin, l9);
                e.five_point_margin = std::min(e.five_point_margin, (cross - 4 * u(i, j)) / (h * h));
                double gx = (u(i, j + 1) - u(i, j - 1)) / (2 * h), gy = (u(i + 1, j) - u(i - 1, j)) / (2 * h);
                e.grad_max = std::max(e.grad_max, std::hypot(gx, gy));
            }
        }
    }
    e.grad_bound = p.lipschitz_est + p.hilbert_sup_est + C;

    e.axis_mass.resize(nx);
    for (int j = 0; j < nx; ++j) e.axis_mass(j) = 2 * (C + Uy.values(j0 + j).real());

    double suplw = lw.maxCoeff();
    e.growth_excess = -INFINITY;
    for (int i = 0; i <= 2 * ny; ++i)
        for (int j = 0; j < nx; ++j) {
            e.growth_excess = std::max(e.growth_excess, u(i, j) - C * std::abs(e.y[i]) - suplw);
            e.symmetry_error = std::max(e.symmetry_error, std::abs(u(i, j) - u(2 * ny - i, j)));
        }
    for (int j = 0; j < nx; ++j) e.trace_error = std::max(e.trace_error, std::abs(u(ny, j) - lw(j0 + j)));
    return e;
}

std::string envelope_csv(const EnvelopeGrid& e, int stride)
{
    std::ostringstream os;
    os.precision(10);
    os << "x,y,u,lap\n";
    stride = std::max(1, stride);
    for (size_t i = 0; i < e.y.size(); i += stride)
        for (size_t j = 0; j < e.x.size(); j += stride)
            os << e.x[j] << "," << e.y[i] << "," << e.u(i, j) << "," << e.lap(i, j) << "\n";
    return os.str();
}

namespace {

// root in [0, 1] of the cubic through (t, r) for t = -1, 0, 1, 2
double cubic_root(const double r[4])
{
    auto p = [&](double t) {
        double l0 = -t * (t - 1) * (t - 2) / 6, l1 = (t + 1) * (t - 1) * (t - 2) / 2;
        double l2 = -(t + 1) * t * (t - 2) / 2, l3 = (t + 1) * t * (t - 1) / 6;
        return r[0] * l0 + r[1] * l1 + r[2] * l2 + r[3] * l3;
    };
    double lo = 0, hi = 1, plo = p(0);
    if (plo == 0) return 0;
    if (p(1) == 0) return 1;
    for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi), pm = p(mid);
        if ((pm > 0) == (plo > 0)) {
            lo = mid;
            plo = pm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<double> simple_zeros(const Eigen::VectorXd& v, const LineField& f)
{
    int M = int(v.size());
    double h = f.h();
    auto at = [&](int j) { return v(((j % M) + M) % M); };
    std::vector<double> z;
    for (int j = 0; j < M; ++j) {
        double a = at(j - 1), b = at(j), c = at(j + 1);
        if (!(b < a && b <= c)) continue;
        double d2 = a - 2 * b + c;
        int p = a < c ? j - 1 : j;
        double r[4] = {at(p - 1), at(p), -at(p + 1), -at(p + 2)};
        double s1 = r[0] - 2 * r[1] + r[2], s2 = r[1] - 2 * r[2] + r[3];
        if (std::max(std::abs(s1), std::abs(s2)) > 0.25 * d2) continue;
        double x0 = f.x(0) + (p + cubic_root(r)) * h;
        z.push_back(x0 - 2 * f.L * std::floor((x0 + f.L) / (2 * f.L)));
    }
    return z;
}

} // namespace

DyakonovReport dyakonov_check(const LineField& psi, double a, bool resolve_zeros, double audit_fraction,
                              const std::vector<char>* skip_nodes)
{
    int M = psi.size();
    double L = psi.L, h = psi.h();
    check_period(a, L);
    Eigen::VectorXd v = real_part(psi);
    if (v.minCoeff() < -1e-12 * std::max(1.0, v.cwiseAbs().maxCoeff())) throw BadInput("psi must be nonnegative");
    v = v.cwiseMax(0.0);
    if (floored_run(v)) throw NotLogIntegrable("psi vanishes on an interval");

    DyakonovReport r;
    std::vector<double> zs;
    if (resolve_zeros) zs = simple_zeros(v, psi);
    r.zeros = int(zs.size());

    Eigen::VectorXd lp(M), saw = Eigen::VectorXd::Zero(M);
    std::vector<char> skip(M, 0), audit_off(M, 0);
    for (int j = 0; j < M; ++j) {
        double x = psi.x(j);
        double s = std::log(std::max(v(j), log_floor));
        for (double z : zs) {
            double phi = pi * (x - z) / L;
            phi -= 2 * pi * std::floor(phi / (2 * pi));
            double sn = std::abs(2 * std::sin(phi / 2));
            if (sn < 1e-9 * h / L) {
                skip[j] = 1;
            } else {
                s -= std::log(sn);
            }
            saw(j) += (phi - pi) / 2;
        }
        if (v(j) <= log_floor) skip[j] = 1;
        lp(j) = s;
        if (skip_nodes && (*skip_nodes)[j]) audit_off[j] = 1;
    }
    for (int j = 0; j < M; ++j)
        if (skip[j]) lp(j) = 0.5 * (lp((j + M - 1) % M) + lp((j + 1) % M));

    LineField c = conj_periodic(from_real(L, 2 * lp));
    std::vector<double> d;
    std::vector<int> idx;
    cd acc = 0;
    for (int j = 0; j < M; ++j) {
        if (skip[j] || audit_off[j] || std::abs(psi.x(j)) > audit_fraction * L) continue;
        double conj_log = c.values(j).real() + 2 * saw(j);
        double dj = wrap_pi(2 * pi * a * psi.x(j) - conj_log);
        d.push_back(dj);
        acc += std::polar(1.0, dj);
    }
    r.audited = int(d.size());
    r.constant = std::arg(acc);
    for (double dj : d) r.deviation = std::max(r.deviation, std::abs(wrap_pi(dj - r.constant)));
    return r;
}

double c2_constant(double unorm)
{
    auto H = [](double t) { return (t < 0 ? -0.5 : 0.5) * std::log1p(t * t); };
    double best = 0;
    for (int i = 0; i <= 200000; ++i) {
        double x = i * 1e-4;
        best = std::max(best, H(x + 1) - H(x - 1));
    }
    return unorm / pi * best;
}

double c3_constant(double unorm)
{
    auto J = [](double x) {
        auto G = [x](double t) { return 0.5 * std::log1p(t * t) - std::log(std::abs(x - t)); };
        std::vector<std::pair<double, double>> pieces;
        double t0 = x != 0 ? -1 / x : NAN;
        auto split = [&](double lo, double hi) {
            if (std::isfinite(t0) && t0 > lo && t0 < hi) {
                pieces.push_back({lo, t0});
                pieces.push_back({t0, hi});
            } else {
                pieces.push_back({lo, hi});
            }
        };
        split(-INFINITY, x - 1);
        split(x + 1, INFINITY);
        double s = 0;
        for (auto [lo, hi] : pieces) {
            double glo = std::isinf(lo) ? 0 : G(lo), ghi = std::isinf(hi) ? 0 : G(hi);
            s += std::abs(ghi - glo);
        }
        return s;
    };
    double best = J(0) / std::log(std::exp(1.0));
    for (int i = 0; i <= 14000; ++i) {
        double x = std::pow(10.0, -6 + i * 1e-3);
        best = std::max(best, J(x) / std::log(std::exp(1.0) + x));
    }
    return unorm / pi * best;
}

MultiplierResult conjugate_multiplier(const BMProblem& p, double a, double A, double l)
{
    const LineField& O = p.Omega;
    int M = O.size();
    double L = O.L, h = O.h();
    if (!(a > 0)) throw BadParameter("a must be positive");
    check_period(a, L);

    MultiplierResult r;
    r.a = a;
    r.C2 = c2_constant(pi / 2);
    r.C3 = c3_constant(pi / 2);
    r.A = A < 0 ? r.C3 + 1 : A;

    double s0 = 0;
    LineField D0 = conj_derivative(O);
    for (int j = 0; j < M; ++j) s0 = std::max(s0, std::abs(D0.values(j).real()));
    if (r.A > 0) {
        if (pi * a <= s0) throw SlopeBudget("sup of the conjugate slope already exceeds pi a");
        if (l <= 0) {
            double l_slope = 1.01 * 2 * r.A / (pi * a - s0);
            auto excess = [&](double ll) {
                double worst = -INFINITY;
                for (int i = 0; i <= 2000; ++i) {
                    double x = i == 0 ? 0.0 : std::pow(10.0, -3 + i * 0.005);
                    if (x > L) break;
                    worst = std::max(worst, 4 * a + r.C2 + r.C3 * std::log(std::exp(1.0) + x) + std::log1p(x * x) -
                                                r.A * std::log(ll * ll + x * x));
                }
                return worst;
            };
            double lo = 0, hi = 30;
            if (excess(std::exp(hi)) > 0) throw SlopeBudget("no l makes m w1 square integrable with this A");
            for (int it = 0; it < 60; ++it) {
                double mid = 0.5 * (lo + hi);
                (excess(std::exp(mid)) > 0 ? lo : hi) = mid;
            }
            l = std::max({l_slope, std::exp(hi), 1.0});
        }
    }
    r.l = l;

    Eigen::VectorXd O1 = real_part(O);
    for (int j = 0; j < M; ++j) O1(j) += r.A > 0 ? r.A * std::log(l * l + O.x(j) * O.x(j)) : 0.0;
    LineField O1f = from_real(L, O1);
    LineField D1 = conj_derivative(O1f);
    for (int j = 0; j < M; ++j) r.slope_sup = std::max(r.slope_sup, std::abs(D1.values(j).real()));
    if (r.slope_sup > pi * a * (1 + 1e-9)) {
        std::ostringstream os;
        os << "sup |(conj Omega_1)'| = " << r.slope_sup << " exceeds pi a = " << pi * a;
        throw SlopeBudget(os.str());
    }

    LineField V = conj_periodic(O1f);
    Eigen::VectorXd u(M);
    std::vector<long> k(M);
    std::vector<char> on_jump(M, 0);
    for (int j = 0; j < M; ++j) {
        double vj = V.values(j).real() + pi * a * O.x(j);
        k[j] = long(std::floor(vj / pi));
        u(j) = vj - pi * double(k[j]) - pi / 2;
        // a jump of k sitting on a node takes the midpoint value
        if (std::abs(vj / pi - std::round(vj / pi)) < 1e-9) {
            u(j) = 0;
            on_jump[j] = 1;
        }
        r.u_excess = std::max(r.u_excess, std::abs(u(j)) - pi / 2);
    }
    for (int j = 0; j + 1 < M; ++j) {
        long st = k[j + 1] - k[j];
        if (st < 0) throw SlopeBudget("k decreases between grid nodes");
        r.max_step = std::max(r.max_step, int(st));
    }
    if (r.max_step > 1) throw GridTooCoarse("k jumps by more than one within a grid cell");
    r.u = from_real(L, u);

    // normalize at the node near 0 farthest from the jumps of k
    int jstar = M / 2;
    double best = -1;
    for (int j = M / 2 - int(1 / h); j <= M / 2 + int(1 / h); ++j) {
        int dl = 0, dr = 0;
        while (dl < M / 4 && k[j - dl - 1] == k[j]) ++dl;
        while (dr < M / 4 && k[j + dr + 1] == k[j]) ++dr;
        double dist = std::min(dl, dr) * h;
        if (dist > best + 1e-12) {
            best = dist;
            jstar = j;
        }
    }
    double xs = O.x(jstar);
    r.norm_point = xs;
    auto ker = [xs](double t) { return t / (1 + t * t); };
    double sum = 0;
    int R = std::min(jstar, M - 1 - jstar);
    for (int i = 1; i <= R; ++i) {
        double tl = O.x(jstar - i), tr = O.x(jstar + i);
        sum += (u(jstar - i) - u(jstar + i)) / (i * h) + u(jstar - i) * ker(tl) + u(jstar + i) * ker(tr);
    }
    for (int j = 0; j < M; ++j) {
        if (std::abs(j - jstar) <= R) continue;
        double t = O.x(j);
        sum += u(j) * (1 / (xs - t) + ker(t));
    }
    sum += u(jstar) * ker(xs);
    double ustar = sum * h / pi;

    LineField ut = conj_periodic(r.u);
    Eigen::VectorXd logm(M);
    for (int j = 0; j < M; ++j) logm(j) = -(ut.values(j).real() - ut.values(jstar).real() + ustar);
    r.log_m = from_real(L, logm);

    r.audit_X = L / 4;
    r.bound_slack = INFINITY;
    r.square_slack = INFINITY;
    Eigen::VectorXd lpsi(M);
    for (int j = 0; j < M; ++j) {
        double x = O.x(j);
        lpsi(j) = logm(j) - O1(j);
        if (std::abs(x) > r.audit_X) continue;
        double bound = 4 * a + r.C2 + r.C3 * std::log(std::exp(1.0) + std::abs(x));
        r.bound_slack = std::min(r.bound_slack, bound - logm(j));
        double lg = r.A > 0 ? r.A * std::log(l * l + x * x) : 0.0;
        r.square_slack = std::min(r.square_slack, lg - std::log1p(x * x) - logm(j));
    }
    LineField psi = from_real(L, lpsi.array().exp().matrix());
    r.dyakonov = dyakonov_check(psi, a, false, r.audit_X / L, &on_jump);
    r.ok = r.u_excess <= 1e-12 && r.bound_slack >= 0 && r.square_slack >= 0 && r.dyakonov.deviation < 1e-3;
    return r;
}

std::string multiplier_csv(const MultiplierResult& r, int stride)
{
    std::ostringstream os;
    os.precision(10);
    os << "x,log_m,bound\n";
    stride = std::max(1, stride);
    for (int j = 0; j < r.log_m.size(); j += stride) {
        double x = r.log_m.x(j);
        if (std::abs(x) > r.audit_X) continue;
        os << x << "," << r.log_m.values(j).real() << "," << 4 * r.a + r.C2 + r.C3 * std::log(std::exp(1.0) + std::abs(x))
           << "\n";
    }
    return os.str();
}

long count_in(const std::vector<double>& lambda, double lo, double hi)
{
    return long(std::lower_bound(lambda.begin(), lambda.end(), hi) - std::lower_bound(lambda.begin(), lambda.end(), lo));
}

LongSystem make_long_system(std::vector<std::pair<double, double>> iv)
{
    std::sort(iv.begin(), iv.end());
    LongSystem s;
    for (size_t i = 0; i < iv.size(); ++i) {
        if (!(iv[i].first < iv[i].second)) throw BadParameter("empty interval in a long system");
        if (i > 0 && iv[i].first < iv[i - 1].second) throw BadParameter("intervals of a long system must be disjoint");
    }
    s.intervals = iv;
    std::vector<double> inc;
    for (auto [lo, hi] : iv) {
        double dist = (lo <= 0 && hi > 0) ? 0.0 : std::min(std::abs(lo), std::abs(hi));
        inc.push_back((hi - lo) * (hi - lo) / (1 + dist * dist));
        s.score += inc.back();
        s.partial.push_back(s.score);
    }
    size_t n = inc.size();
    if (n >= 4) {
        double first = 0, second = 0;
        for (size_t i = 0; i < n / 2; ++i) first += inc[i];
        for (size_t i = n - n / 2; i < n; ++i) second += inc[i];
        s.growth = first > 0 ? second / first : 0;
        s.long_flag = s.growth >= 0.5;
    }
    return s;
}

bool validate_witness(const std::vector<double>& lambda, const LongSystem& s, double d)
{
    LongSystem t;
    try {
        t = make_long_system(s.intervals);
    } catch (const BadParameter&) {
        return false;
    }
    if (!t.long_flag || std::abs(t.score - s.score) > 1e-9 * std::max(1.0, s.score)) return false;
    for (auto [lo, hi] : s.intervals)
        if (double(count_in(lambda, lo, hi)) < d * (hi - lo) * (1 - 1e-12)) return false;
    return true;
}

DensityResult bm_density(std::vector<double> lambda, int min_intervals)
{
    std::sort(lambda.begin(), lambda.end());
    DensityResult res;
    std::ostringstream log;
    log << "side,q,rho,x0,intervals,d,score,growth\n";
    if (lambda.empty()) {
        res.log = log.str();
        return res;
    }
    double T = std::max(std::abs(lambda.front()), std::abs(lambda.back()));
    const double qs[] = {1.25, 1.5, 2, 3, 4, 8};
    const double rhos[] = {0.05, 0.1, 0.25, 0.5, 1, 2, 3, 7};
    bool have = false;
    for (int side : {1, -1}) {
        std::vector<double> pts;
        for (double x : lambda)
            if (side * x > 0) pts.push_back(side * x);
        std::sort(pts.begin(), pts.end());
        std::vector<double> starts(pts.begin(), pts.begin() + std::min<size_t>(16, pts.size()));
        for (double q : qs)
            for (double rho : rhos) {
                if (1 + rho > q + 1e-12) continue;
                for (double x0 : starts) {
                    std::vector<std::pair<double, double>> iv;
                    double d = INFINITY;
                    for (double s = x0; s * (1 + rho) <= T * (1 + 1e-12); s *= q) {
                        iv.push_back({s, s * (1 + rho)});
                        d = std::min(d, double(count_in(pts, s, s * (1 + rho))) / (s * rho));
                    }
                    if (int(iv.size()) < min_intervals) continue;
                    ++res.families;
                    if (side < 0)
                        for (auto& p : iv) p = {-p.second, -p.first};
                    LongSystem sys = make_long_system(iv);
                    char buf[200];
                    std::snprintf(buf, sizeof buf, "%d,%g,%g,%.10g,%zu,%.10g,%.10g,%.6g\n", side, q, rho, x0, iv.size(), d,
                                  sys.score, sys.growth);
                    log << buf;
                    if (!sys.long_flag) continue;
                    if (!have || d > res.d) {
                        have = true;
                        res.d = d;
                        res.witness = sys;
                        res.q = q;
                        res.rho = rho;
                        res.x0 = x0;
                        res.side = side;
                    }
                }
            }
    }
    res.positive = res.d >= 1e-2;
    res.log = log.str();
    return res;
}

RadiusProbe completeness_radius_probe(const std::vector<double>& lambda, double a, int n)
{
    if (lambda.size() > 64) throw BadParameter("at most 64 frequencies");
    if (!(a > 0) || n < 0) throw BadParameter("need a > 0 and n >= 0");
    RadiusProbe r;
    if (lambda.empty()) return r;
    double lmax = 0;
    for (double l : lambda) lmax = std::max(lmax, std::abs(l));
    int Q = std::max(64, int(2 * n + 2 * lmax * a + 40));
    auto [s, wq] = gauss_legendre(Q);
    int nl = int(lambda.size());
    Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(n + 1, nl);
    for (int q = 0; q < Q; ++q) {
        double p0 = 1, p1 = s[q];
        for (int k = 0; k <= n; ++k) {
            double Pk;
            if (k == 0) {
                Pk = 1;
            } else if (k == 1) {
                Pk = s[q];
            } else {
                double p2 = ((2 * k - 1) * s[q] * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
                Pk = p2;
            }
            double nk = std::sqrt((2 * k + 1) / (2 * a)) * Pk * a * wq[q];
            for (int i = 0; i < nl; ++i) {
                B(k, i) += nk * std::polar(1.0, -lambda[i] * a * s[q]);
            }
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(B);
    auto sv = svd.singularValues();
    r.sigma_max = sv(0);
    r.sigma_min = nl >= n + 1 ? sv(sv.size() - 1) : 0.0;
    r.ill_conditioned = r.sigma_min < 1e-12 * r.sigma_max;
    return r;
}

} // namespace uplab
