#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "uplab/measures.hpp"

namespace uplab {

struct MajorantSeq {
    std::vector<double> w;
    double reg_constant = 1;   // best C with w(k)/w(n) in [1/C, C] for n <= k <= 2n
    double poly_exponent = 0;  // log2 C
    double sum_sq = 0;         // sum of w(n)^2 over the stored range
    double sum_sq_top = 0;     // contribution of the top octave of the range

    double operator()(long n) const;
    long size() const { return long(w.size()); }
};

MajorantSeq majorant_validate(const std::vector<double>& w);
MajorantSeq power_majorant(double alpha, long N);

// cells of f_{I,N}: -10 on a central plateau, a compensating bump elsewhere, mean zero in each cell
struct KornerBlock {
    GridFunction f;
    double a = 0, b = 0;  // the arc [a, b] in radians
    int N = 1;
    int M = 2;
    double measure = 0;   // m(I), normalized
    double fmin = 0, fmax = 0;
    double l1 = 0;
    double plateau = 0;   // grid measure of {f = -10}
    double support_leak = 0;
    double cfit = 0;      // fitted C(M)
    int peak_n = 0;
};

KornerBlock korner_block(double a, double b, int N, int Msmooth, int grid = 1 << 14, double chirp = 2.0);

struct PsiCertificate {
    double min_value = 0;
    double mean = 0;
    double zero_fraction = 0;      // worst over audited arcs of length >= delta
    double eps_achieved = 0;       // max |psi^(n)| / w(n) over the window
    int worst_n = 0;
    int window = 0;
    int blocks = 0;
    int attempts = 0;
    double partition_budget = 0;   // sum over admissible octaves of 2^d w(2^d)^2
    bool ok = false;
};

struct PsiStep {
    GridFunction psi;
    PsiCertificate cert;
};

PsiStep psi_step(const MajorantSeq& w, double eps, double delta, int grid = 1 << 14,
                 std::uint64_t seed = 1, int attempts = 6, int window = 2048, int octave_span = 1);

// independent audit of the four properties on the grid
PsiCertificate audit_psi(const GridFunction& psi, const MajorantSeq& w, double delta, int window);

struct IMState {
    int level = 0;
    GridFunction f;
    IntervalSet support;
    double support_measure = 1;  // normalized
    double mean = 2;
    double lower_mass = 2;       // 1 + 2^{-n}
    double majorant_slack = 0;   // 1 - 2^{-n}
    double majorant_ratio = 0;   // max |f^(k)| / w(k) on the window
    double eps = 0;
    double delta = 0;
    double proof_eps = 0;        // epsilon required by the two proof sums
    bool invariants = true;
};

struct IMRun {
    std::vector<IMState> states;
    bool complete = false;
    std::string diagnostics;
};

double cover_delta(const GridFunction& f, double efficiency = 1.01);
bool check_invariants(const IMState& s, const MajorantSeq& w, int window, std::string* why = nullptr);
IMRun im_iterate(const MajorantSeq& w, int steps, int grid = 1 << 14, std::uint64_t seed = 1, int window = 2048);
std::string im_level_csv(const IMState& s, const MajorantSeq& w, int window);

struct KornerSequence {
    int p = 10, q = 5;
    std::vector<long double> log2N;    // log2 N_j, j = 1..J+1
    std::vector<long double> log2eps;  // log2 eps_j
    std::vector<double> sq_blocks;     // lower bounds for sum of Phi^2 over [N_j, N_{j+1})
    std::vector<double> log_blocks;    // upper bounds for sum of log Phi(n)/n^2 over the block
    double sum_sq = 0;
    double sum_log = 0;
    bool sq_divergent = false;
    bool log_divergent = false;
    double eta = 1e-3;                 // relative drop of Phi across a block

    double operator()(double n) const;
};

KornerSequence korner_negative_sequence(int J, int p = 10, int q = 5, int N1 = 2);

struct SAFunction {
    long N = 1;
    double gamma = 0, delta = 0;
    CoeffWindow F;                 // coefficients of F_{gamma,delta}, n >= 0
    double l1w = 0;                // sum |f_j^(n)| w(n)
    double dev_on_E = 0;           // max | |f_j - 1| - gamma | on audited points of E_j
    double f0 = 0;                 // |f_j(0)|
    cd eval(double t) const;       // f_j(e^{it}) from the coefficients
};

struct SAResult {
    IntervalSet E;
    double E_measure = 0;          // normalized
    std::vector<SAFunction> f;
    std::vector<double> forced_ratio;  // (1 - gamma_j) mu(E) / l1w_j, lower bound for sup |mu^|/w
    double mu0 = 0;
    double mu_ratio_range = 0;     // sup |mu^(n)|/w(n) seen for mu = 1_E dm on the range
};

// w is evaluated as a rule on [0, range]
SAResult sa_functions(const std::function<double(double)>& w, double range, double delta, int count,
                      double gamma0 = 0.5, int grid = 1 << 12);

} // namespace uplab
