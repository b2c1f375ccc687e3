#pragma once

#include <functional>
#include <vector>

#include "uplab/line.hpp"
#include "uplab/measures.hpp"

namespace uplab {

constexpr double log_floor = 1e-300;

struct BoundaryModulus {
    Domain domain = Domain::circle;
    GridFunction circ;   // log|f| on the circle grid
    LineField line;      // log|f| on the line grid
    bool floor_applied = false;
    int floored = 0;
    double log_integral = 0;
    bool not_log_integrable = false;
};

BoundaryModulus modulus_circle(const GridFunction& absf);
BoundaryModulus modulus_line(const LineField& absf);

GridFunction conjugate_circle(const GridFunction& f);

cd poisson_extend(const GridFunction& f, cd z);
cd poisson_extend(const SampledMeasure& mu, cd z);
cd poisson_extend(const LineField& f, cd z);

struct OuterDisc {
    CoeffWindow logc;      // analytic coefficients of log F
    GridFunction boundary;
    cd operator()(cd z) const;
};

struct OuterLine {
    LineField logmod;
    LineField boundary;
    cd operator()(cd z) const;
};

OuterDisc outer_disc(const BoundaryModulus& m);
OuterLine outer_line(const BoundaryModulus& m);

cd blaschke_disc(const std::vector<cd>& zeros, cd z);
cd blaschke_half(const std::vector<cd>& zeros, cd z);
double blaschke_sum_disc(const std::vector<cd>& zeros);
double blaschke_sum_half(const std::vector<cd>& zeros);

struct PointMass {
    double angle;
    double c;
};
cd singular_inner(const std::vector<PointMass>& masses, cd z);

struct JensenReport {
    double lhs;  // log|f(0)|, -inf when f(0) = 0
    double rhs;  // mean of log|f|
    bool holds;
};
JensenReport jensen_check(const GridFunction& f);

enum class VanishMode { plain, carleson };

struct VanishingOuter {
    std::vector<cd> centers;
    std::vector<double> radii;
    std::vector<double> weights;  // lambda_k |J_k| (times log(1/|J_k|) in carleson mode)
    std::vector<double> lengths;
    cd h(size_t k, cd z) const;
    cd operator()(cd z) const;
};

double default_lambda(double len);
VanishingOuter vanishing_outer(const IntervalSet& arcs, VanishMode mode,
                               const std::function<double(size_t, double)>& lambda = nullptr,
                               double min_len = 1e-9);

} // namespace uplab
