#pragma once

#include <functional>

#include "uplab/circle.hpp"

namespace uplab {

// uniform samples x_j = -L + j h on [-L, L), h = 2L/M
struct LineField {
    double L = 1;
    Eigen::VectorXcd values;
    double taper = 0;
    bool truncation_warning = false;

    int size() const { return int(values.size()); }
    double h() const { return 2 * L / size(); }
    double x(int j) const { return -L + j * h(); }
    double dxi() const { return pi / L; }
    // frequency of centered index k in [-M/2, M/2)
    double xi(int k) const { return k * pi / L; }
    double l2sq() const { return values.squaredNorm() * h(); }
};

LineField line_sample(double L, int M, const std::function<cd(double)>& f);
LineField line_sample_real(double L, int M, const std::function<double(double)>& f);

// centered spectrum: entry i holds fhat(xi(i - M/2)), fhat = int f e^{-ix xi} dx
Eigen::VectorXcd line_fourier(const LineField& f);
LineField line_inverse(const Eigen::VectorXcd& spec, double L);

LineField line_multiplier(const LineField& f, const std::function<cd(double)>& m);
double edge_size(const LineField& f);
LineField cosine_taper(const LineField& f, double fraction = 0.05);

LineField hilbert_line(const LineField& f, double edge_tol = 1e-6);
LineField conjugate_line(const LineField& f, double edge_tol = 1e-6);
LineField derivative_line(const LineField& f);
LineField poisson_line(const LineField& f, double y);

double trapezoid(const LineField& f);

} // namespace uplab
