#include "uplab/measures.hpp"

#include <algorithm>
#include <cmath>

namespace uplab {

IntervalSet normalize(Domain d, std::vector<std::pair<double, double>> v)
{
    std::vector<std::pair<double, double>> w;
    for (auto [a, b] : v) {
        if (!(a < b)) continue;
        if (d == Domain::circle) {
            if (b - a >= 2 * pi) {
                w.push_back({0, 2 * pi});
                continue;
            }
            double s = std::fmod(a, 2 * pi);
            if (s < 0) s += 2 * pi;
            double e = s + (b - a);
            if (e > 2 * pi) {
                w.push_back({s, 2 * pi});
                w.push_back({0, e - 2 * pi});
            } else {
                w.push_back({s, e});
            }
        } else {
            w.push_back({a, b});
        }
    }
    std::sort(w.begin(), w.end());
    IntervalSet out;
    out.domain = d;
    for (auto& p : w) {
        if (!out.iv.empty() && p.first <= out.iv.back().second)
            out.iv.back().second = std::max(out.iv.back().second, p.second);
        else
            out.iv.push_back(p);
    }
    return out;
}

IntervalSet::IntervalSet(Domain d, std::vector<std::pair<double, double>> v) : IntervalSet(normalize(d, std::move(v))) {}

double IntervalSet::length() const
{
    double s = 0;
    for (auto& p : iv) s += p.second - p.first;
    return s;
}

bool IntervalSet::contains(double x) const
{
    if (domain == Domain::circle) {
        x = std::fmod(x, 2 * pi);
        if (x < 0) x += 2 * pi;
    }
    for (auto& p : iv)
        if (x >= p.first && x <= p.second) return true;
    return false;
}

double IntervalSet::distance(double x) const
{
    double best = INFINITY;
    for (auto& p : iv) {
        for (int k = (domain == Domain::circle ? -1 : 0); k <= (domain == Domain::circle ? 1 : 0); ++k) {
            double a = p.first + 2 * pi * k, b = p.second + 2 * pi * k;
            double d = x < a ? a - x : (x > b ? x - b : 0.0);
            best = std::min(best, d);
        }
    }
    return best;
}

double IntervalSet::overlap(double a, double b) const
{
    double s = 0;
    for (auto& p : iv) s += std::max(0.0, std::min(b, p.second) - std::max(a, p.first));
    return s;
}

IntervalSet IntervalSet::complement(double lo, double hi) const
{
    std::vector<std::pair<double, double>> out;
    double cur = lo;
    for (auto& p : iv) {
        if (p.second <= lo || p.first >= hi) continue;
        if (p.first > cur) out.push_back({cur, p.first});
        cur = std::max(cur, p.second);
    }
    if (cur < hi) out.push_back({cur, hi});
    return IntervalSet(domain, out);
}

IntervalSet IntervalSet::circle_complement() const
{
    if (iv.empty()) return IntervalSet(Domain::circle, {{0, 2 * pi}});
    std::vector<std::pair<double, double>> out;
    for (size_t k = 0; k + 1 < iv.size(); ++k)
        if (iv[k + 1].first > iv[k].second) out.push_back({iv[k].second, iv[k + 1].first});
    double wrap = iv.front().first + 2 * pi - iv.back().second;
    if (wrap > 0) out.push_back({iv.back().second, iv.back().second + wrap});
    return IntervalSet(Domain::circle, out);
}

bool subset(const IntervalSet& a, const IntervalSet& b, double tol)
{
    for (auto& p : a.iv) {
        bool inside = false;
        for (auto& q : b.iv)
            if (p.first >= q.first - tol && p.second <= q.second + tol) inside = true;
        if (!inside) return false;
    }
    return true;
}

double SampledMeasure::total_variation() const
{
    double s = 0;
    for (auto& a : atoms) s += std::abs(a.mass);
    if (density) s += density->values.cwiseAbs().mean();
    return s;
}

SampledMeasure lebesgue(int M)
{
    SampledMeasure m;
    m.density = sample_real(M, [](double) { return 1.0; });
    return m;
}

SampledMeasure dirac(double angle, cd mass)
{
    SampledMeasure m;
    m.atoms.push_back({angle, mass});
    m.positive = mass.imag() == 0 && mass.real() >= 0;
    return m;
}

SampledMeasure weighted(const GridFunction& w)
{
    SampledMeasure m;
    m.density = w;
    m.positive = w.values.real().minCoeff() >= -1e-12;
    return m;
}

IntervalSet cantor_set(const CantorSpec& spec)
{
    if (spec.depth < 1) throw BadParameter("depth must be >= 1");
    if (int(spec.alphas.size()) < spec.depth) throw BadParameter("need one alpha per stage");
    std::vector<std::pair<double, double>> cur{{0.0, 1.0}};
    for (int n = 0; n < spec.depth; ++n) {
        double a = spec.alphas[n];
        if (!(a > 0 && a < 1)) throw BadParameter("alpha out of (0,1)");
        double gap = a / std::ldexp(1.0, n);
        std::vector<std::pair<double, double>> next;
        for (auto [l, r] : cur) {
            double len = r - l;
            if (gap >= len) throw BadParameter("removed arc longer than the interval");
            double m = 0.5 * (l + r);
            next.push_back({l, m - gap / 2});
            next.push_back({m + gap / 2, r});
        }
        cur.swap(next);
    }
    for (auto& p : cur) {
        p.first *= 2 * pi;
        p.second *= 2 * pi;
    }
    IntervalSet E;
    E.domain = Domain::circle;
    E.iv = cur;
    return E;
}

double cantor_entropy_oracle(const CantorSpec& spec)
{
    double s = 0;
    for (int n = 0; n < spec.depth; ++n) {
        double a = spec.alphas[n];
        double piece = a / std::ldexp(1.0, n);
        s += std::ldexp(1.0, n) * piece * std::log(1 / piece);
    }
    return s;
}

double bc_entropy(const IntervalSet& E)
{
    IntervalSet C = E.circle_complement();
    double s = 0;
    for (auto& p : C.iv) {
        double l = (p.second - p.first) / (2 * pi);
        if (l < 1e-15) continue;
        s += l * std::log(1 / l);
    }
    return s;
}

IntervalSet whitney(std::pair<double, double> I, const IntervalSet& E, double min_len)
{
    (void)E;
    double a = I.first, b = I.second, L = b - a;
    if (!(L > 0)) throw BadParameter("empty interval");
    std::vector<std::pair<double, double>> out;
    out.push_back({a + L / 3, a + 2 * L / 3});
    double right = a + 2 * L / 3, left = a + L / 3;
    for (int j = 1;; ++j) {
        double len = L / (3 * std::ldexp(1.0, j));
        if (len < min_len) break;
        out.push_back({right, right + len});
        out.push_back({left - len, left});
        right += len;
        left -= len;
    }
    IntervalSet W;
    W.domain = E.domain;
    std::sort(out.begin(), out.end());
    W.iv = out;
    return W;
}

CoeffWindow measure_coeffs(const SampledMeasure& mu, int N)
{
    CoeffWindow c(-N, N);
    if (mu.density) c = dft_coeffs(*mu.density, N);
    for (auto& a : mu.atoms)
        for (int n = -N; n <= N; ++n) c[n] += a.mass * std::polar(1.0, -n * a.angle);
    return c;
}

} // namespace uplab
