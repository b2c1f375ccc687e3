#pragma once

#include <cmath>
#include <utility>
#include <vector>

namespace uplab {

// Gauss-Legendre nodes and weights on [-1, 1]
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n)
{
    std::vector<double> x(n), w(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5)), dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = z;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1);
            double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        double p0 = 1, p1 = z;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = 2 / ((1 - z * z) * dp * dp);
    }
    return {x, w};
}

template <class F>
double gauss_integrate(F f, double a, double b, const std::pair<std::vector<double>, std::vector<double>>& gl)
{
    double c = 0.5 * (a + b), r = 0.5 * (b - a), s = 0;
    for (size_t i = 0; i < gl.first.size(); ++i) s += gl.second[i] * f(c + r * gl.first[i]);
    return s * r;
}

} // namespace uplab
