#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uplab/circle.hpp"

namespace uplab {

enum class Domain { circle, line };

struct IntervalSet {
    Domain domain = Domain::line;
    std::vector<std::pair<double, double>> iv;

    IntervalSet() = default;
    IntervalSet(Domain d, std::vector<std::pair<double, double>> v);

    bool empty() const { return iv.empty(); }
    double length() const;
    bool contains(double x) const;
    double distance(double x) const;
    double overlap(double a, double b) const;
    IntervalSet complement(double lo, double hi) const;
    IntervalSet circle_complement() const;
};

IntervalSet normalize(Domain d, std::vector<std::pair<double, double>> v);
bool subset(const IntervalSet& a, const IntervalSet& b, double tol = 1e-12);

struct Atom {
    double angle;
    cd mass;
};

struct GeneratorSpec {
    std::string kind;  // "riesz" or "cantor"
    std::vector<double> freqs;
    std::vector<double> params;
};

struct SampledMeasure {
    std::vector<Atom> atoms;
    std::optional<GridFunction> density;
    std::optional<GeneratorSpec> generator;
    bool positive = true;

    double total_variation() const;
};

SampledMeasure lebesgue(int M);
SampledMeasure dirac(double angle, cd mass = 1.0);
SampledMeasure weighted(const GridFunction& w);

struct CantorSpec {
    std::vector<double> alphas;
    int depth = 1;
};

IntervalSet cantor_set(const CantorSpec& spec);
double cantor_entropy_oracle(const CantorSpec& spec);
double bc_entropy(const IntervalSet& E);
IntervalSet whitney(std::pair<double, double> I, const IntervalSet& E, double min_len = 1e-9);
CoeffWindow measure_coeffs(const SampledMeasure& mu, int N);

} // namespace uplab
