#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "uplab/line.hpp"

namespace uplab {

// W(x) = exp(-int_c^{|x|} w(t)/t dt) for |x| >= c and W = 1 on [-c, c]
struct BernsteinWeight {
    double c = 1;
    double Tmax = 1e6;
    std::vector<double> s;    // log-spaced nodes s = log t
    std::vector<double> w;    // w at the nodes
    std::vector<double> cum;  // int_c^t w(u)/u du at the nodes

    double profile(double t) const;
    double log_W(double x) const;
    double operator()(double x) const { return std::exp(log_W(x)); }
};

BernsteinWeight bernstein_weight(const std::function<double(double)>& w, double c, double Tmax, int n = 20001);

struct MomentBound {
    int N;
    double lhs;       // max over x of x^N W(x)
    double rhs;       // xi^N W(xi)
    double argmax;
    bool at_boundary; // maximum found at Tmax, so the grid may be too short
};
MomentBound weight_moment_bound(const BernsteinWeight& bw, double xi, int grid = 20001);
// smallest A with lhs <= A rhs over the sampled xi
double fit_moment_constant(const BernsteinWeight& bw, const std::vector<double>& xis);

struct LogIntegralReport {
    double poisson;          // int_{|x| <= Tmax} log W dx / (1 + x^2)
    double fubini;           // -2 int_c^Tmax w(t)/t (atan Tmax - atan t) dt
    std::vector<double> partial;  // int_c^T w(t)/t^2 dt over doubling T
    bool divergent;
};
LogIntegralReport log_integral(const BernsteinWeight& bw);

struct LineMeasure {
    std::vector<std::pair<double, cd>> atoms;
    std::optional<LineField> density;
    cd moment(int n) const;
};

cd cauchy_transform(const LineMeasure& mu, cd z);

struct MomentShift {
    cd lhs;  // K mu (z)
    cd rhs;  // z^{-n} K(x^n mu)(z)
    double max_moment;  // largest |m_k|, k < n
};
MomentShift moment_shift_check(const LineMeasure& mu, cd z, int n);

// g outer in the upper half-plane with |g| = W(x) e^{-|x|^{1/2}}, sampled on the
// nodes x_j = tan(theta_j / 2) of a uniform midpoint grid in theta
struct AnnihilatingDensity {
    std::vector<double> x;
    std::vector<double> weight;  // quadrature weights in dx
    Eigen::VectorXcd g;
    std::vector<cd> moments;
    double modulus_deviation;  // max | |g| / (W e^{-|x|^{1/2}}) - 1 |
    double weighted_l1;        // int |g| / W dx
    double log_integral;       // int log W dP
};
AnnihilatingDensity annihilating_density(const std::function<double(double)>& W, int K, int M = 1 << 16);

struct SpectralGapFn {
    double c, r, a;
    cd operator()(cd z) const;
};
struct SpectralGapReport {
    double center;       // psi(c)
    double max_outside;  // max |psi| on |x - c| >= r
    double min_middle;   // min |psi| on |x - c| <= r/2
    double lower_bound;  // e^{ar/sqrt 2} / 2
};
SpectralGapFn spectral_gap_test_fn(double c, double r, double a);
SpectralGapReport spectral_gap_report(const SpectralGapFn& f, double span, int grid = 20001);
double max_on_circle(const SpectralGapFn& f, double R, int n = 4096);

struct BeurlingStat {
    double value;
    std::vector<double> partial;  // over doubling truncation points
    bool divergent;
    bool floored;
};
BeurlingStat beurling_vmu_stat(const std::function<double(double)>& V, double T);
BeurlingStat beurling_vmu_stat(const LineMeasure& mu, double T);
BeurlingStat beurling_circle_stat(const CoeffWindow& c);

// sum over n >= 1 of log rho_n / n^2 for the negative tails rho_n = sum_{k <= -n} |fhat(k)|
BeurlingStat negative_tail_stat(const GridFunction& f);

struct CartwrightLevinson {
    BeurlingStat given;      // tails of f itself
    BeurlingStat forced;     // tails after multiplying fhat(-n) by e^{-w(n)}
    double given_arc_sup;    // sup over the arc of |f| / sup |f|
    double forced_arc_sup;   // same for the forced function
    bool consistent;         // f vanishes with finite statistic, forced one diverges and no longer vanishes
};
CartwrightLevinson cartwright_levinson(const GridFunction& f, std::pair<double, double> arc,
                                       const std::function<double(int)>& w, double tol = 1e-10);

double muntz_distance(const std::vector<double>& lambdas, double kappa);

} // namespace uplab
