#pragma once

#include <map>
#include <vector>

#include "uplab/circle.hpp"

namespace uplab {

struct LacunarySpec {
    std::vector<long long> freqs;
    double kappa = 0;
};

LacunarySpec lacunary(std::vector<long long> freqs, bool require_kappa3 = true);

enum class RieszKind { R1, R2 };

struct RieszSpec {
    LacunarySpec spec;
    std::vector<double> amps;
    RieszKind kind = RieszKind::R1;
};

using SparseCoeffs = std::map<long long, cd>;

SparseCoeffs riesz_sparse(const RieszSpec& r, int n);
CoeffWindow riesz_partial(const RieszSpec& r, int n);
bool in_block(const LacunarySpec& s, int j, long long k);
int block_of(const LacunarySpec& s, long long k);
double block_mass(const RieszSpec& r, int j, int n);
GridFunction riesz_grid(const RieszSpec& r, int n, int M);

GridFunction lacunary_synth(const LacunarySpec& s, const std::vector<cd>& c, int M);
double zygmund_l1_ratio(const LacunarySpec& s, const std::vector<cd>& c, int M = 0);
double sidon_ratio(const LacunarySpec& s, const std::vector<cd>& c, int M = 0);
double zygmund_bound();

struct HolderReport {
    double coeff_decay;  // sup |c_n| N_n^alpha
    double seminorm;     // grid Holder seminorm
    int used_terms;
};

HolderReport holder_decay_check(const LacunarySpec& s, const std::vector<cd>& c, double alpha, int M);

} // namespace uplab
