#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "uplab/errors.hpp"

namespace uplab {

using cd = std::complex<double>;
constexpr double pi = 3.14159265358979323846;

// samples at t_j = 2 pi j / M
struct GridFunction {
    Eigen::VectorXcd values;
    bool is_real = false;

    int size() const { return int(values.size()); }
    double t(int j) const { return 2.0 * pi * j / size(); }
    double mean_abs2() const { return values.squaredNorm() / size(); }
};

struct CoeffWindow {
    int lo = 0, hi = -1;
    Eigen::VectorXcd c;

    CoeffWindow() = default;
    CoeffWindow(int lo_, int hi_) : lo(lo_), hi(hi_), c(Eigen::VectorXcd::Zero(hi_ - lo_ + 1)) {}

    int width() const { return hi - lo + 1; }
    cd at(int n) const { return (n < lo || n > hi) ? cd(0) : c(n - lo); }
    cd& operator[](int n) { return c(n - lo); }
    double l1() const { return c.cwiseAbs().sum(); }
};

enum class SumKind { partial, cesaro, abel };

struct SummationMethod {
    SumKind kind = SumKind::partial;
    int N = 0;
    double r = 0.5;
};

enum class KernelKind { dirichlet, fejer, dlvp, poisson };

// plain FFT wrappers: fwd has no scaling, inv carries 1/M
Eigen::VectorXcd fft_fwd(const Eigen::VectorXcd& x);
Eigen::VectorXcd fft_inv(const Eigen::VectorXcd& X);
int next_pow2(long n);

GridFunction sample(int M, const std::function<cd(double)>& f, bool is_real = false);
GridFunction sample_real(int M, const std::function<double(double)>& f);

CoeffWindow dft_coeffs(const GridFunction& f, int N);
CoeffWindow dft_all(const GridFunction& f);
GridFunction synthesize(const CoeffWindow& c, int M);
cd eval_poly(const CoeffWindow& c, double t);

GridFunction kernel(KernelKind kind, double order, int M);
CoeffWindow kernel_coeffs(KernelKind kind, double order);
GridFunction summation_mean(const GridFunction& f, const SummationMethod& m);
double multiplier(const SummationMethod& m, int k);
GridFunction convolve(const GridFunction& f, const GridFunction& g);

double dirichlet_l1(int N, int M);

CoeffWindow multiply(const CoeffWindow& a, const CoeffWindow& b);

struct WienerResult {
    CoeffWindow g;
    double residual_l1 = 0;
    double eps = 0;
    int fejer_order = 0;
    int terms = 0;
    double tail_bound = 0;
    double scale = 1;
};

double sobolev_constant();
WienerResult wiener_invert(const CoeffWindow& f, double tol = 1e-8);

cd atom_mass(const CoeffWindow& mu, double zeta0, int N);
std::vector<double> rajchman_profile(const CoeffWindow& mu, int N);

double weighted_dirichlet_sum(const CoeffWindow& c);

} // namespace uplab
