#include "uplab/riesz.hpp"

#include <algorithm>
#include <cmath>

namespace uplab {

LacunarySpec lacunary(std::vector<long long> freqs, bool require_kappa3)
{
    if (freqs.empty()) throw BadParameter("empty frequency list");
    LacunarySpec s;
    s.freqs = freqs;
    s.kappa = INFINITY;
    for (size_t j = 0; j < freqs.size(); ++j) {
        if (freqs[j] <= 0) throw BadParameter("frequencies must be positive");
        if (j > 0) {
            if (freqs[j] <= freqs[j - 1]) throw BadParameter("frequencies must increase");
            s.kappa = std::min(s.kappa, double(freqs[j]) / double(freqs[j - 1]));
        }
    }
    if (require_kappa3 && s.kappa < 3) throw BadParameter("lacunarity kappa below 3");
    return s;
}

SparseCoeffs riesz_sparse(const RieszSpec& r, int n)
{
    if (n < 0 || n > int(r.amps.size()) || n > int(r.spec.freqs.size())) throw BadParameter("factor count out of range");
    long long span = 0;
    for (int j = 0; j < n; ++j) {
        span += r.spec.freqs[j];
        if (span > (1LL << 40)) throw SpectrumTooWide("spectrum exceeds 2^40");
    }
    SparseCoeffs P{{0, 1.0}};
    for (int j = 0; j < n; ++j) {
        double a = r.amps[j];
        if (r.kind == RieszKind::R1 && std::abs(a) > 1) throw BadParameter("R1 amplitudes must lie in [-1,1]");
        if (r.kind == RieszKind::R2 && std::abs(a) >= 1) throw BadParameter("R2 amplitudes must lie in (-1,1)");
        cd half = r.kind == RieszKind::R1 ? cd(a / 2, 0) : cd(0, a / 2);
        long long N = r.spec.freqs[j];
        SparseCoeffs Q = P;
        for (auto& [k, v] : P) {
            Q[k + N] += half * v;
            Q[k - N] += half * v;
        }
        P.swap(Q);
    }
    return P;
}

CoeffWindow riesz_partial(const RieszSpec& r, int n)
{
    SparseCoeffs P = riesz_sparse(r, n);
    long long span = 0;
    for (int j = 0; j < n; ++j) span += r.spec.freqs[j];
    if (span > (1 << 26)) throw SpectrumTooWide("dense window too wide");
    CoeffWindow c(-int(span), int(span));
    for (auto& [k, v] : P) c[int(k)] = v;
    return c;
}

bool in_block(const LacunarySpec& s, int j, long long k)
{
    long long a = std::llabs(k);
    if (j == 0) return a == 0;
    double N = double(s.freqs[j - 1]);
    double w = 1.0 / (s.kappa - 1);
    return a >= (1 - w) * N && a <= (1 + w) * N;
}

int block_of(const LacunarySpec& s, long long k)
{
    for (int j = 0; j <= int(s.freqs.size()); ++j)
        if (in_block(s, j, k)) return j;
    return -1;
}

double block_mass(const RieszSpec& r, int j, int n)
{
    if (j < 0 || j > n) throw BadParameter("need j <= n");
    double s = 0;
    for (auto& [k, v] : riesz_sparse(r, n))
        if (in_block(r.spec, j, k)) s += std::norm(v);
    return s;
}

GridFunction riesz_grid(const RieszSpec& r, int n, int M)
{
    GridFunction g = sample(M, [](double) { return cd(1, 0); });
    for (int j = 0; j < n; ++j) {
        long long N = r.spec.freqs[j];
        cd fac = r.kind == RieszKind::R1 ? cd(r.amps[j], 0) : cd(0, r.amps[j]);
        for (int i = 0; i < M; ++i) g.values(i) *= 1.0 + fac * std::cos(double(N % M) * g.t(i));
    }
    g.is_real = r.kind == RieszKind::R1;
    return g;
}

GridFunction lacunary_synth(const LacunarySpec& s, const std::vector<cd>& c, int M)
{
    CoeffWindow w(-M / 2 + 1, M / 2 - 1);
    for (size_t j = 0; j < c.size() && j < s.freqs.size(); ++j) {
        if (s.freqs[j] >= M / 2) throw GridTooCoarse("frequency does not fit grid");
        w[int(s.freqs[j])] = c[j];
    }
    return synthesize(w, M);
}

static int default_grid(const LacunarySpec& s, size_t n)
{
    long long top = s.freqs[std::min(n, s.freqs.size()) - 1];
    return std::max(256, next_pow2(16 * top));
}

double zygmund_l1_ratio(const LacunarySpec& s, const std::vector<cd>& c, int M)
{
    if (M == 0) M = default_grid(s, c.size());
    double l2 = 0;
    for (auto v : c) l2 += std::norm(v);
    if (l2 == 0) throw Undefined("zero polynomial");
    GridFunction f = lacunary_synth(s, c, M);
    return std::sqrt(l2) / f.values.cwiseAbs().mean();
}

double sidon_ratio(const LacunarySpec& s, const std::vector<cd>& c, int M)
{
    if (M == 0) M = default_grid(s, c.size());
    double l1 = 0;
    for (auto v : c) l1 += std::abs(v);
    if (l1 == 0) throw Undefined("zero polynomial");
    GridFunction f = lacunary_synth(s, c, M);
    return l1 / f.values.cwiseAbs().maxCoeff();
}

double zygmund_bound() { return 2 * std::exp(0.5); }

HolderReport holder_decay_check(const LacunarySpec& s, const std::vector<cd>& c, double alpha, int M)
{
    HolderReport rep{0, 0, 0};
    std::vector<cd> used;
    for (size_t j = 0; j < c.size() && j < s.freqs.size(); ++j) {
        if (s.freqs[j] >= M / 2) break;
        used.push_back(c[j]);
        rep.coeff_decay = std::max(rep.coeff_decay, std::abs(c[j]) * std::pow(double(s.freqs[j]), alpha));
    }
    rep.used_terms = int(used.size());
    GridFunction f = lacunary_synth(s, used, M);
    for (int step = 1; step <= M / 2; step *= 2) {
        double h = 2 * pi * step / M;
        double chord = std::pow(2 * std::sin(h / 2), alpha);
        for (int i = 0; i < M; ++i) {
            double d = std::abs(f.values((i + step) % M) - f.values(i));
            rep.seminorm = std::max(rep.seminorm, d / chord);
        }
    }
    return rep;
}

} // namespace uplab
