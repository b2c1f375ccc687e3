#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "uplab/line.hpp"
#include "uplab/measures.hpp"

namespace uplab {

// T = P_E F^{-1} 1_F F on the grid of half-width L with M samples.
// fhat(xi) = int f e^{-ix xi} dx, Plancherel ||f||^2 = ||fhat||^2 / 2pi.
struct LocalizationSpec {
    IntervalSet E;
    IntervalSet F;
    double L = 16;
    int M = 4096;
    bool sharp = false;  // sharp masks make P_E and P_F projections
};

// Fractional masks carry the square root of the covered fraction of each cell,
// so that |mask|^2 weights a half-covered cell by one half in ||Tf||^2.

Eigen::VectorXd mask_E(const LocalizationSpec& s);
// in FFT order, entry q holds the mask at frequency xi_k, k = q or q - M
Eigen::VectorXd mask_F(const LocalizationSpec& s);

Eigen::VectorXcd loc_apply(const LocalizationSpec& s, const Eigen::VectorXcd& f);
Eigen::VectorXcd loc_apply_adjoint(const LocalizationSpec& s, const Eigen::VectorXcd& f);

struct NormResult {
    double norm = 0;
    double lo = 0, hi = 0;
    double residual = 0;
    int iterations = 0;
    bool converged = true;
    Eigen::VectorXcd vector;
};
NormResult loc_operator_norm(const LocalizationSpec& s, int iters = 2000, double tol = 1e-6);

struct ABReport {
    double norm;
    double C;          // (1 - ||T||)^{-1} for ||f|| <= C (||1_{E^c} f|| + ||1_{F^c} fhat|| / sqrt(2pi))
    double C_squared;  // 2 C^2 for the squared form
    double worst_ratio;
    int worst_trial;
    bool holds;
};
ABReport ab_inequality_check(const LocalizationSpec& s, int trials, std::uint64_t seed);

struct PrescribeResult {
    LineField f;
    double res_E;
    double res_F;
    int terms;
    double norm;
};
// g on the x grid, h as a centered spectrum in the layout of line_fourier
PrescribeResult prescribe(const LineField& g, const Eigen::VectorXcd& h, const LocalizationSpec& s,
                          double tol = 1e-10, int max_terms = 5000);

struct PeriodicSet {
    std::vector<std::pair<double, double>> base;  // pieces inside [0, period)
    double period = 1;
    IntervalSet window(double lo, double hi) const;
    PeriodicSet complement() const;
    double density() const;
};

// inf over windows I of length r inside [lo, hi] of |I \ E| / r
double ls_density(const IntervalSet& E, double r, double lo, double hi);
double ls_density(const PeriodicSet& E, double r);

double harmonic_measure_line(const IntervalSet& S, double x, double y = 1);
double harmonic_measure_line(const PeriodicSet& S, double x, double y = 1, int K = 100000);
double ls_gamma(const PeriodicSet& S);
double ls_bound(double a, double gamma);

struct LSReport {
    double delta;
    double gamma;
    double bound;
    double empirical;
    int trials;
    bool holds;
};
// Ec is the relatively dense set, trial fields have spectrum in [-a, a]
LSReport ls_inequality_check(const PeriodicSet& Ec, double a, int trials, std::uint64_t seed, double r = 2);

struct UncertaintyReport {
    double norm2;
    double x0, xi0;
    double sigma_x, sigma_xi;
    double heisenberg;       // 2 sigma_x sigma_xi
    double heisenberg_ratio; // heisenberg / norm2
    double entropy_x;
    double entropy_xi;
    double entropy_sum;
    double entropy_bound;    // log(e/2)
    bool truncation_warning;
};
UncertaintyReport uncertainty_checks(const LineField& f);

// fhat sampled on a frequency grid (the LineField coordinate is xi)
cd pw_extend(const LineField& fhat, double a, cd z, double support_tol = 1e-10);
double pw_bound(const LineField& fhat, double a, cd z);

struct ShannonResult {
    cd value;
    double tail_estimate;
};
// samples[n + N] = fhat(pi n / a) for n = -N..N
ShannonResult shannon_reconstruct(const std::vector<cd>& samples, double a, double xi);

struct PoissonSumResult {
    double left;   // 2 pi sum f(2 pi n)
    double right;  // sum fhat(n)
    double tail_left;
    double tail_right;
};
PoissonSumResult poisson_summation_check(const std::function<double(double)>& f,
                                         const std::function<double(double)>& fhat, int N);

} // namespace uplab
