#include "uplab/line.hpp"

#include <cmath>

namespace uplab {

LineField line_sample(double L, int M, const std::function<cd(double)>& f)
{
    if (M < 64 || (M & (M - 1)) != 0) throw BadParameter("line grid needs a power of two >= 64");
    if (!(L > 0)) throw BadParameter("half-width must be positive");
    LineField g;
    g.L = L;
    g.values.resize(M);
    for (int j = 0; j < M; ++j) g.values(j) = f(g.x(j));
    return g;
}

LineField line_sample_real(double L, int M, const std::function<double(double)>& f)
{
    return line_sample(L, M, [&](double x) { return cd(f(x), 0); });
}

Eigen::VectorXcd line_fourier(const LineField& f)
{
    int M = f.size();
    Eigen::VectorXcd F = fft_fwd(f.values);
    Eigen::VectorXcd out(M);
    for (int i = 0; i < M; ++i) {
        int k = i - M / 2;
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        out(i) = f.h() * sign * F((k + M) % M);
    }
    return out;
}

LineField line_inverse(const Eigen::VectorXcd& spec, double L)
{
    int M = int(spec.size());
    Eigen::VectorXcd F(M);
    double h = 2 * L / M;
    for (int i = 0; i < M; ++i) {
        int k = i - M / 2;
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        F((k + M) % M) = spec(i) * sign / h;
    }
    LineField g;
    g.L = L;
    g.values = fft_inv(F);
    return g;
}

LineField line_multiplier(const LineField& f, const std::function<cd(double)>& m)
{
    Eigen::VectorXcd s = line_fourier(f);
    int M = f.size();
    for (int i = 0; i < M; ++i) s(i) *= (i == 0) ? cd(0) : m(f.xi(i - M / 2));
    LineField g = line_inverse(s, f.L);
    g.taper = f.taper;
    g.truncation_warning = f.truncation_warning;
    return g;
}

double edge_size(const LineField& f)
{
    int M = f.size(), w = std::max(1, M / 100);
    double e = 0;
    for (int j = 0; j < w; ++j) e = std::max({e, std::abs(f.values(j)), std::abs(f.values(M - 1 - j))});
    return e;
}

LineField cosine_taper(const LineField& f, double fraction)
{
    LineField g = f;
    double w = fraction * f.L;
    for (int j = 0; j < f.size(); ++j) {
        double d = f.L - std::abs(f.x(j));
        if (d < w) g.values(j) *= 0.5 * (1 - std::cos(pi * d / w));
    }
    g.taper = fraction;
    return g;
}

static LineField prepared(const LineField& f, double edge_tol)
{
    if (edge_size(f) > edge_tol) {
        LineField g = cosine_taper(f);
        g.truncation_warning = true;
        return g;
    }
    return f;
}

LineField hilbert_line(const LineField& f, double edge_tol)
{
    LineField g = prepared(f, edge_tol);
    return line_multiplier(g, [](double xi) { return cd(0, xi > 0 ? 1.0 : (xi < 0 ? -1.0 : 0.0)); });
}

LineField conjugate_line(const LineField& f, double edge_tol)
{
    LineField g = prepared(f, edge_tol);
    return line_multiplier(g, [](double xi) { return cd(0, xi > 0 ? -1.0 : (xi < 0 ? 1.0 : 0.0)); });
}

LineField derivative_line(const LineField& f)
{
    return line_multiplier(f, [](double xi) { return cd(0, xi); });
}

LineField poisson_line(const LineField& f, double y)
{
    Eigen::VectorXcd s = line_fourier(f);
    int M = f.size();
    for (int i = 0; i < M; ++i) s(i) *= std::exp(-std::abs(f.xi(i - M / 2)) * y);
    s(0) = 0;
    LineField g = line_inverse(s, f.L);
    g.taper = f.taper;
    return g;
}

double trapezoid(const LineField& f)
{
    return f.values.real().sum() * f.h();
}

} // namespace uplab
