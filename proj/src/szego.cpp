#include "uplab/szego.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "uplab/hardy.hpp"

namespace uplab {

std::vector<cd> moments(const SampledMeasure& mu, int n)
{
    CoeffWindow c = measure_coeffs(mu, n);
    std::vector<cd> out(n + 1);
    for (int k = 0; k <= n; ++k) out[k] = c.at(k);
    return out;
}

static cd mom(const std::vector<cd>& c, int k)
{
    return k >= 0 ? c[k] : std::conj(c[-k]);
}

// min over u of int |1 - sum_k u_k zeta^{idx_k}|^2 dmu
static double toeplitz_projection(const std::vector<cd>& c, const std::vector<int>& idx)
{
    int m = int(idx.size());
    Eigen::MatrixXcd A(m, m);
    Eigen::VectorXcd r(m);
    for (int j = 0; j < m; ++j) {
        r(j) = mom(c, idx[j]);
        for (int k = 0; k < m; ++k) A(j, k) = mom(c, idx[j] - idx[k]);
    }
    Eigen::LDLT<Eigen::MatrixXcd> ldlt(A);
    Eigen::VectorXd D = ldlt.vectorD().real();
    double dmax = D.cwiseAbs().maxCoeff(), dmin = D.minCoeff();
    if (ldlt.info() != Eigen::Success || dmin <= 1e-15 * dmax) {
        std::ostringstream os;
        if (dmin > 0) os << "Toeplitz Gram system is numerically singular, condition estimate " << dmax / dmin;
        else os << "Toeplitz Gram system is numerically indefinite, smallest pivot " << dmin;
        throw IllConditioned(os.str());
    }
    Eigen::VectorXcd x = ldlt.solve(r);
    for (int it = 0; it < 3; ++it) x += ldlt.solve(r - A * x);
    return c[0].real() - (r.adjoint() * x)(0).real();
}

// same problem posed directly over the atoms
static double atomic_projection(const std::vector<Atom>& atoms, const std::vector<int>& idx)
{
    int K = int(atoms.size()), m = int(idx.size());
    Eigen::MatrixXcd B(K, m);
    Eigen::VectorXcd y(K);
    for (int i = 0; i < K; ++i) {
        double s = std::sqrt(std::abs(atoms[i].mass));
        y(i) = s;
        for (int k = 0; k < m; ++k) B(i, k) = s * std::polar(1.0, idx[k] * atoms[i].angle);
    }
    Eigen::VectorXcd u = B.completeOrthogonalDecomposition().solve(y);
    return (y - B * u).squaredNorm();
}

static double projection(const SampledMeasure& mu, const std::vector<int>& idx, int order)
{
    if (!mu.positive) throw BadParameter("measure must be positive");
    if (!mu.density) return atomic_projection(mu.atoms, idx);
    return toeplitz_projection(moments(mu, order), idx);
}

double szego_distance(const SampledMeasure& mu, int n)
{
    if (n < 0 || n > 512) throw BadParameter("degree must lie in [0, 512]");
    std::vector<int> idx;
    for (int k = 1; k <= n + 1; ++k) idx.push_back(k);
    return projection(mu, idx, n + 1);
}

double kolmogorov_distance(const SampledMeasure& mu, int n)
{
    if (n < 0 || n > 512) throw BadParameter("degree must lie in [0, 512]");
    std::vector<int> idx;
    for (int k = 1; k <= n; ++k) {
        idx.push_back(k);
        idx.push_back(-k);
    }
    if (idx.empty()) return mu.total_variation();
    return projection(mu, idx, 2 * n);
}

double geometric_mean(const GridFunction& w)
{
    BoundaryModulus m = modulus_circle(w);
    if (m.not_log_integrable) return 0;
    return std::exp(m.log_integral);
}

double harmonic_mean(const GridFunction& w)
{
    double s = 0;
    for (int j = 0; j < w.size(); ++j) {
        double v = w.values(j).real();
        if (v <= log_floor) return 0;
        s += 1 / v;
    }
    return w.size() / s;
}

std::vector<cd> verblunsky(const std::vector<cd>& c)
{
    if (c.empty() || !(c[0].real() > 0)) throw BadParameter("c_0 must be positive");
    int m = int(c.size()) - 1;
    std::vector<cd> alpha;
    std::vector<cd> p{1.0};
    double kappa = c[0].real();
    for (int n = 0; n < m; ++n) {
        cd s = 0;
        for (int k = 0; k <= n; ++k) s += p[k] * std::conj(c[k + 1]);
        cd a = s / kappa;
        if (std::abs(a) >= 1 - 1e-14) throw MeasureTooSingular("leading Toeplitz block is degenerate");
        alpha.push_back(a);
        std::vector<cd> q(n + 2, 0.0);
        for (int k = 0; k <= n; ++k) {
            q[k + 1] += p[k];
            q[n - k] -= a * std::conj(p[k]);
        }
        p = q;
        kappa *= 1 - std::norm(a);
        if (kappa <= 1e-300) throw MeasureTooSingular("leading Toeplitz block is degenerate");
    }
    return alpha;
}

std::vector<cd> moments_from_verblunsky(const std::vector<cd>& alpha, double c0)
{
    std::vector<cd> c{c0};
    std::vector<cd> p{1.0};
    double kappa = c0;
    for (size_t n = 0; n < alpha.size(); ++n) {
        cd a = alpha[n];
        if (std::abs(a) >= 1) throw BadParameter("Verblunsky coefficients must lie in the open disc");
        cd s = a * kappa;
        for (size_t k = 0; k < n; ++k) s -= p[k] * std::conj(c[k + 1]);
        c.push_back(std::conj(s / p[n]));
        std::vector<cd> q(n + 2, 0.0);
        for (size_t k = 0; k <= n; ++k) {
            q[k + 1] += p[k];
            q[n - k] -= a * std::conj(p[k]);
        }
        p = q;
        kappa *= 1 - std::norm(a);
    }
    return c;
}

ProductReport szego_product_check(const std::vector<cd>& alpha, const SampledMeasure& mu, double rel_tol)
{
    ProductReport r;
    double c0 = mu.total_variation();
    r.prod_abs = c0;
    r.prod_sq = c0;
    for (cd a : alpha) {
        r.prod_abs *= 1 - std::abs(a);
        r.prod_sq *= 1 - std::norm(a);
    }
    r.target = mu.density ? geometric_mean(*mu.density) : 0.0;
    auto close = [&](double v) {
        if (r.target == 0) return v < rel_tol * c0;
        return std::abs(v - r.target) <= rel_tol * r.target;
    };
    r.abs_matches = close(r.prod_abs);
    r.sq_matches = close(r.prod_sq);
    return r;
}

Extrapolation extrapolate_geometric(const std::vector<double>& d)
{
    if (d.size() < 3) throw BadParameter("need at least three values to extrapolate");
    int n = int(std::min<size_t>(8, d.size()));
    Eigen::VectorXd y(n);
    for (int j = 0; j < n; ++j) y(j) = d[d.size() - n + j];
    auto fit = [&](double rho, Eigen::Vector2d& coef) {
        Eigen::MatrixXd B(n, 2);
        for (int j = 0; j < n; ++j) {
            B(j, 0) = 1;
            B(j, 1) = std::pow(rho, j);
        }
        if (rho == 0) B.col(1).setZero(), B(0, 1) = 1;
        coef = B.colPivHouseholderQr().solve(y);
        return (B * coef - y).norm() / std::sqrt(double(n));
    };
    Extrapolation best{y(n - 1), 0, INFINITY};
    Eigen::Vector2d coef;
    for (int i = 0; i <= 2000; ++i) {
        double rho = i / 2000.0 * 0.9995;
        double res = fit(rho, coef);
        if (res < best.residual) best = {coef(0), rho, res};
    }
    double lo = std::max(0.0, best.rho - 5e-4), hi = std::min(0.99995, best.rho + 5e-4);
    for (int i = 0; i <= 200; ++i) {
        double rho = lo + (hi - lo) * i / 200.0;
        double res = fit(rho, coef);
        if (res < best.residual) best = {coef(0), rho, res};
    }
    return best;
}

} // namespace uplab
