#include "uplab/hardy.hpp"

#include <algorithm>
#include <cmath>

namespace uplab {

static bool has_floored_run(const std::vector<bool>& fl, bool cyclic)
{
    size_t n = fl.size();
    for (size_t j = 0; j + 1 < n; ++j)
        if (fl[j] && fl[j + 1]) return true;
    return cyclic && n > 1 && fl[0] && fl[n - 1];
}

BoundaryModulus modulus_circle(const GridFunction& absf)
{
    BoundaryModulus m;
    m.domain = Domain::circle;
    int M = absf.size();
    m.circ.values.resize(M);
    m.circ.is_real = true;
    std::vector<bool> fl(M, false);
    for (int j = 0; j < M; ++j) {
        double a = std::abs(absf.values(j));
        if (a < log_floor) {
            a = log_floor;
            fl[j] = true;
            ++m.floored;
        }
        m.circ.values(j) = std::log(a);
    }
    m.floor_applied = m.floored > 0;
    m.log_integral = m.circ.values.real().mean();
    m.not_log_integrable = m.log_integral < -1e6 || has_floored_run(fl, true);
    return m;
}

BoundaryModulus modulus_line(const LineField& absf)
{
    BoundaryModulus m;
    m.domain = Domain::line;
    int M = absf.size();
    m.line = absf;
    std::vector<bool> fl(M, false);
    double s = 0;
    for (int j = 0; j < M; ++j) {
        double a = std::abs(absf.values(j));
        if (a < log_floor) {
            a = log_floor;
            fl[j] = true;
            ++m.floored;
        }
        m.line.values(j) = std::log(a);
        double x = absf.x(j);
        s += std::log(a) / (1 + x * x) * absf.h();
    }
    m.floor_applied = m.floored > 0;
    m.log_integral = s;
    m.not_log_integrable = s < -1e6 || has_floored_run(fl, false);
    return m;
}

GridFunction conjugate_circle(const GridFunction& f)
{
    int M = f.size();
    Eigen::VectorXcd F = fft_fwd(f.values);
    for (int j = 0; j < M; ++j) {
        if (j == 0 || j == M / 2) F(j) = 0;
        else F(j) *= cd(0, j < M / 2 ? -1.0 : 1.0);
    }
    GridFunction g;
    g.values = fft_inv(F);
    g.is_real = f.is_real;
    if (g.is_real) g.values = g.values.real().cast<cd>();
    return g;
}

cd poisson_extend(const GridFunction& f, cd z)
{
    double r = std::abs(z);
    if (r >= 1) throw BadParameter("evaluation point must lie inside the disc");
    double th = std::arg(z);
    CoeffWindow c = dft_all(f);
    cd s = c.at(0);
    int M = f.size();
    for (int n = 1; n < M / 2; ++n) {
        double rn = std::pow(r, n);
        if (rn < 1e-18) break;
        s += rn * (c.at(n) * std::polar(1.0, n * th) + c.at(-n) * std::polar(1.0, -n * th));
    }
    return s;
}

cd poisson_extend(const SampledMeasure& mu, cd z)
{
    double r = std::abs(z);
    if (r >= 1) throw BadParameter("evaluation point must lie inside the disc");
    cd s = mu.density ? poisson_extend(*mu.density, z) : cd(0);
    for (auto& a : mu.atoms) s += a.mass * (1 - r * r) / std::norm(std::polar(1.0, a.angle) - z);
    return s;
}

cd poisson_extend(const LineField& f, cd z)
{
    double y = z.imag(), x = z.real();
    if (y <= 0) throw BadParameter("evaluation point must lie in the upper half-plane");
    cd s = 0;
    for (int j = 0; j < f.size(); ++j) {
        double d = x - f.x(j);
        s += f.values(j) * (y / (d * d + y * y));
    }
    return s * f.h() / pi;
}

cd OuterDisc::operator()(cd z) const
{
    if (std::abs(z) >= 1) throw BadParameter("evaluation point must lie inside the disc");
    cd s = 0;
    for (int n = logc.hi; n >= 0; --n) s = s * z + logc.at(n);
    return std::exp(s);
}

OuterDisc outer_disc(const BoundaryModulus& m)
{
    if (m.domain != Domain::circle) throw BadParameter("disc outer needs circle data");
    if (m.not_log_integrable) throw NotLogIntegrable("log|f| is not integrable on the circle");
    CoeffWindow c = dft_all(m.circ);
    int M = m.circ.size();
    OuterDisc o;
    o.logc = CoeffWindow(0, M / 2 - 1);
    o.logc[0] = c.at(0).real();
    for (int n = 1; n < M / 2; ++n) o.logc[n] = 2.0 * c.at(n);
    GridFunction v = conjugate_circle(m.circ);
    o.boundary.values.resize(M);
    for (int j = 0; j < M; ++j) o.boundary.values(j) = std::exp(cd(m.circ.values(j).real(), v.values(j).real()));
    return o;
}

cd OuterLine::operator()(cd z) const
{
    if (z.imag() <= 0) throw BadParameter("evaluation point must lie in the upper half-plane");
    cd s = 0;
    for (int j = 0; j < logmod.size(); ++j) {
        double t = logmod.x(j);
        s += (1.0 / (z - t) - t / (t * t + 1)) * logmod.values(j).real();
    }
    return std::exp(cd(0, 1) * s * logmod.h() / pi);
}

OuterLine outer_line(const BoundaryModulus& m)
{
    if (m.domain != Domain::line) throw BadParameter("half-plane outer needs line data");
    if (m.not_log_integrable) throw NotLogIntegrable("log|f| is not Poisson integrable");
    OuterLine o;
    o.logmod = m.line;
    LineField v = conjugate_line(m.line);
    o.boundary = m.line;
    o.boundary.truncation_warning = v.truncation_warning;
    for (int j = 0; j < m.line.size(); ++j) o.boundary.values(j) = std::exp(cd(m.line.values(j).real(), v.values(j).real()));
    return o;
}

cd blaschke_disc(const std::vector<cd>& zeros, cd z)
{
    cd b = 1;
    for (cd l : zeros) {
        if (std::abs(l) >= 1) throw BadParameter("zero must lie inside the disc");
        if (l == cd(0)) b *= z;
        else b *= (std::abs(l) / l) * (l - z) / (1.0 - std::conj(l) * z);
    }
    return b;
}

cd blaschke_half(const std::vector<cd>& zeros, cd z)
{
    cd b = 1;
    for (cd l : zeros) {
        if (l.imag() <= 0) throw BadParameter("zero must lie in the upper half-plane");
        b *= (z - l) / (z - std::conj(l));
    }
    return b;
}

double blaschke_sum_disc(const std::vector<cd>& zeros)
{
    double s = 0;
    for (cd l : zeros) s += 1 - std::abs(l);
    return s;
}

double blaschke_sum_half(const std::vector<cd>& zeros)
{
    double s = 0;
    for (cd l : zeros) s += l.imag() / (1 + std::norm(l));
    return s;
}

cd singular_inner(const std::vector<PointMass>& masses, cd z)
{
    cd s = 0;
    for (auto& m : masses) {
        if (m.c < 0) throw BadParameter("singular masses must be nonnegative");
        cd zeta = std::polar(1.0, m.angle);
        s += m.c * (zeta + z) / (zeta - z);
    }
    return std::exp(-s);
}

JensenReport jensen_check(const GridFunction& f)
{
    CoeffWindow c = dft_all(f);
    double scale = std::max(1.0, c.c.cwiseAbs().maxCoeff());
    for (int n = c.lo; n < 0; ++n)
        if (std::abs(c.at(n)) > 1e-10 * scale) throw BadInput("coefficient window is not analytic");
    JensenReport r;
    double a0 = std::abs(c.at(0));
    r.lhs = a0 <= 1e-14 * scale ? -INFINITY : std::log(a0);
    double s = 0;
    for (int j = 0; j < f.size(); ++j) s += std::log(std::max(std::abs(f.values(j)), log_floor));
    r.rhs = s / f.size();
    r.holds = r.lhs <= r.rhs + 1e-8;
    return r;
}

cd VanishingOuter::h(size_t k, cd z) const
{
    return weights[k] * centers[k] / (radii[k] * centers[k] - z);
}

cd VanishingOuter::operator()(cd z) const
{
    cd s = 0;
    for (size_t k = 0; k < centers.size(); ++k) s += h(k, z);
    return std::exp(-s);
}

double default_lambda(double len)
{
    return std::log(std::log(16 + 1 / len));
}

VanishingOuter vanishing_outer(const IntervalSet& arcs, VanishMode mode,
                               const std::function<double(size_t, double)>& lambda, double min_len)
{
    std::vector<std::pair<double, double>> pieces;
    for (auto& a : arcs.iv) {
        IntervalSet W = whitney(a, arcs, min_len);
        pieces.insert(pieces.end(), W.iv.begin(), W.iv.end());
    }
    std::stable_sort(pieces.begin(), pieces.end(),
                     [](auto& p, auto& q) { return p.second - p.first > q.second - q.first; });
    VanishingOuter v;
    double total = 0;
    for (size_t k = 0; k < pieces.size(); ++k) {
        double len = pieces[k].second - pieces[k].first;
        double ell = len / (2 * pi);
        double lam = lambda ? lambda(k, ell) : default_lambda(ell);
        double w = lam * len;
        if (mode == VanishMode::carleson) w *= std::log(1 / ell);
        v.centers.push_back(std::polar(1.0, 0.5 * (pieces[k].first + pieces[k].second)));
        v.radii.push_back(1 + len);
        v.weights.push_back(w);
        v.lengths.push_back(len);
        total += w;
    }
    // weight left out below min_len, two flanks per arc
    double ell = min_len / (2 * pi);
    double lam = lambda ? lambda(pieces.size(), ell) : default_lambda(ell);
    double tail = 2.0 * arcs.iv.size() * lam * min_len * (mode == VanishMode::carleson ? std::log(1 / ell) : 1.0);
    if (!std::isfinite(total) || tail > 1e-3 * total) throw BadParameter("weight sum does not converge over the Whitney system");
    return v;
}

} // namespace uplab
