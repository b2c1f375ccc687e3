#pragma once

#include <vector>

#include "uplab/measures.hpp"

namespace uplab {

// c_k = int zeta^{-k} dmu for k = 0..n
std::vector<cd> moments(const SampledMeasure& mu, int n);

double szego_distance(const SampledMeasure& mu, int n);
double kolmogorov_distance(const SampledMeasure& mu, int n);

// exp(int log w dm) for the density part, 0 when log w is not integrable
double geometric_mean(const GridFunction& w);
// (int dm / w)^{-1}, 0 when 1/w is not integrable
double harmonic_mean(const GridFunction& w);

std::vector<cd> verblunsky(const std::vector<cd>& c);
std::vector<cd> moments_from_verblunsky(const std::vector<cd>& alpha, double c0 = 1.0);

struct ProductReport {
    double prod_abs;   // c_0 prod (1 - |alpha|)
    double prod_sq;    // c_0 prod (1 - |alpha|^2)
    double target;     // exp(int log w dm)
    bool abs_matches;
    bool sq_matches;
};
ProductReport szego_product_check(const std::vector<cd>& alpha, const SampledMeasure& mu, double rel_tol = 1e-3);

struct Extrapolation {
    double limit;
    double rho;
    double residual;
};
// least squares fit of d_n = d_inf + c rho^n over the last 8 values
Extrapolation extrapolate_geometric(const std::vector<double>& d);

} // namespace uplab
