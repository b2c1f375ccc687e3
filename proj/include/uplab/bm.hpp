#pragma once

#include <functional>
#include <string>
#include <vector>

#include "uplab/line.hpp"

namespace uplab {

struct AdmissibilityReport {
    double poisson = 0;               // int log w dx/(1+x^2) over the window
    std::vector<double> T, partial;   // partial integrals over |x| <= T, T doubling
    double increment_ratio = 0;       // last two increments of the partial integrals
    double refine_ratio = 0;          // |I_M - I_M/2| / |I_M/2 - I_M/4|
    bool floored = false;
    bool divergent = false;
};

AdmissibilityReport admissibility_necessary(const LineField& w);

struct MildBM {
    double a = 0;          // support half-width used, a multiple of the frequency step
    double c = 0;
    double sigma = 0;      // modulation found by the search
    int K = 0;             // a = K dxi
    LineField F;           // outer function after projection, modulated by e^{i sigma x}
    Eigen::VectorXcd Fhat; // centered spectrum of F
    std::vector<double> s; // nodes of g on [-a, a]
    Eigen::VectorXcd g;
    LineField ghat;        // by definition, sampled at the line nodes
    LineField ghat_conv;   // as the correlation of F with its reflection
    double two_way = 0;    // max |ghat - ghat_conv| / max |ghat|
    double ratio = 0;      // max |ghat| / w over all nodes
    double margin = 0;     // 1 - ratio
    double worst_x = 0;
    double modulus_dev = 0;  // max ||F| - W| / max W on |x| <= L/4
    double g0 = 0;
    double mass = 0;         // int |g|
};

MildBM mild_bm(const std::function<double(double)>& w, double a, int sigma_budget = 64, double c_factor = 1.0,
               int M = 1 << 18, double L = 350 * pi);

struct BMProblem {
    LineField Omega;                // log(1/w)
    double a = 0;
    double lipschitz_est = 0;
    double hilbert_sup_est = 0;     // sup |(conj Omega)'| over |x| <= L/2
    double hilbert_trunc = 0;       // change of that sup when the window is halved
    double poisson = 0;
};

BMProblem bm_problem(const LineField& Omega, double a = 0);

struct EnvelopeGrid {
    std::vector<double> x, y;
    Eigen::MatrixXd u;              // u(i, j) at (x[j], y[i])
    Eigen::MatrixXd lap;            // nine-point Laplacian, zero on the border
    double C = 0;
    int axis_row = 0;
    double laplacian_margin = 0;    // min off the axis
    double five_point_margin = 0;
    double axis_min = 0;            // min of the discrete Laplacian on the axis
    Eigen::VectorXd axis_mass;      // 2 (C + d/dy Pu (0+)) at x[j]
    double trace_error = 0;
    double growth_excess = 0;       // max of u - (C|y| + sup log w)
    double grad_max = 0, grad_bound = 0;
    double symmetry_error = 0;
};

EnvelopeGrid subharmonic_envelope(const BMProblem& p, double C, double X = 8, double Y = 2);
std::string envelope_csv(const EnvelopeGrid& e, int stride = 1);

struct DyakonovReport {
    double deviation = 0;  // worst |arg(psi^2 e^{2 pi i a x}) - conj log psi^2 - c| mod 2 pi
    double constant = 0;
    int zeros = 0;         // simple zeros factored out
    int audited = 0;
};

// nodes flagged in skip are known zeros of psi and are left out of the audit
DyakonovReport dyakonov_check(const LineField& psi, double a, bool resolve_zeros = true,
                              double audit_fraction = 0.5, const std::vector<char>* skip_nodes = nullptr);

struct MultiplierResult {
    double a = 0, A = 0, l = 0;
    double C2 = 0, C3 = 0;
    double slope_sup = 0;       // sup |(conj Omega_1)'| over the grid
    LineField log_m;
    LineField u;
    double u_excess = 0;        // max(|u| - pi/2, 0)
    int max_step = 0;           // largest jump of k between nodes
    double norm_point = 0;
    double bound_slack = 0;     // min over the audit window of bound - log m
    double square_slack = 0;    // min of 1 - m w1 (1+x^2) / w
    DyakonovReport dyakonov;
    double audit_X = 0;
    bool ok = false;
};

// A < 0 and l <= 0 select the defaults A = C3 + 1 and the smallest admissible l
MultiplierResult conjugate_multiplier(const BMProblem& p, double a, double A = -1, double l = -1);
std::string multiplier_csv(const MultiplierResult& r, int stride = 1);

double c2_constant(double unorm);
double c3_constant(double unorm);

struct LongSystem {
    std::vector<std::pair<double, double>> intervals;  // half-open, disjoint, may touch
    double score = 0;
    std::vector<double> partial;   // cumulative score
    double growth = 0;             // mean increment over the second half / over the first half
    bool long_flag = false;
};

LongSystem make_long_system(std::vector<std::pair<double, double>> iv);

struct DensityResult {
    double d = 0;
    LongSystem witness;
    double q = 0, rho = 0, x0 = 0;
    int side = 1;
    int families = 0;
    bool positive = false;   // d >= 1e-2
    std::string log;
};

// counts points of lambda (sorted) in [lo, hi)
long count_in(const std::vector<double>& lambda, double lo, double hi);
bool validate_witness(const std::vector<double>& lambda, const LongSystem& s, double d);
DensityResult bm_density(std::vector<double> lambda, int min_intervals = 6);

struct RadiusProbe {
    double sigma_min = 0;
    double sigma_max = 0;
    bool ill_conditioned = false;
};

RadiusProbe completeness_radius_probe(const std::vector<double>& lambda, double a, int n);

} // namespace uplab
