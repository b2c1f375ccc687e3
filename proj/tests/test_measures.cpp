#include "doctest.h"

#include <cmath>

#include "uplab/measures.hpp"

using namespace uplab;

TEST_CASE("cantor set lengths")
{
    CantorSpec one{{1.0 / 3}, 1};
    auto E = cantor_set(one);
    REQUIRE(E.iv.size() == 2);
    for (auto& p : E.iv) CHECK(std::abs((p.second - p.first) / (2 * pi) - 1.0 / 3) < 1e-14);

    CantorSpec s;
    s.depth = 14;
    double a = 0;
    for (int n = 0; n < 14; ++n) {
        s.alphas.push_back(0.4 * std::pow(0.5, n + 1));
        a += s.alphas.back();
    }
    auto Ed = cantor_set(s);
    CHECK(Ed.iv.size() == (1u << 14));
    CHECK(std::abs(Ed.length() / (2 * pi) - (1 - a)) < 1e-12);

    CantorSpec s2 = s;
    s2.depth = 13;
    CHECK(subset(Ed, cantor_set(s2)));
    CHECK_THROWS_AS(cantor_set({{1.5}, 1}), BadParameter);
}

TEST_CASE("entropy")
{
    double l = 0.1;
    IntervalSet E(Domain::circle, {{0, 2 * pi * (1 - l)}});
    CHECK(std::abs(bc_entropy(E) - l * std::log(1 / l)) < 1e-12);
    CHECK(bc_entropy(IntervalSet(Domain::circle, {{0, 2 * pi}})) == 0.0);

    CantorSpec s;
    s.depth = 12;
    for (int n = 0; n < 12; ++n) s.alphas.push_back(std::pow(2.0, -n - 2));
    auto C = cantor_set(s);
    double h = bc_entropy(C);
    CHECK(std::isfinite(h));
    CHECK(std::abs(h - cantor_entropy_oracle(s)) < 1e-10);
    double cmp = 0;
    for (int n = 0; n < 12; ++n) cmp += s.alphas[n] * (n + std::log(1 / s.alphas[n]));
    CHECK(h / cmp > 0.5);
    CHECK(h / cmp < 2.0);

    IntervalSet R = C;
    for (auto& p : R.iv) {
        p.first += 0.7;
        p.second += 0.7;
    }
    R = normalize(Domain::circle, R.iv);
    CHECK(std::abs(bc_entropy(R) - h) < 1e-10);
}

TEST_CASE("whitney pieces")
{
    IntervalSet ends(Domain::line, {{-1, 0}, {1, 2}});
    auto W = whitney({0, 1}, ends);
    double total = W.length();
    CHECK(std::abs(total - 1) < 1e-8);
    bool central = false;
    for (auto& p : W.iv) {
        double len = p.second - p.first;
        if (std::abs(p.first - 1.0 / 3) < 1e-15 && std::abs(len - 1.0 / 3) < 1e-15) central = true;
        double mid = 0.5 * (p.first + p.second);
        double ratio = ends.distance(mid) / len;
        CHECK(ratio >= 1.0 / 3);
        CHECK(ratio <= 3.0);
    }
    CHECK(central);
}

TEST_CASE("measure coefficients")
{
    auto d = measure_coeffs(dirac(0.0), 8);
    for (int n = -8; n <= 8; ++n) CHECK(std::abs(d.at(n) - 1.0) < 1e-15);
    auto l = measure_coeffs(lebesgue(64), 8);
    for (int n = -8; n <= 8; ++n) CHECK(std::abs(l.at(n) - (n == 0 ? 1.0 : 0.0)) < 1e-14);

    SampledMeasure mix = lebesgue(64);
    mix.density->values *= 0.5;
    mix.atoms.push_back({0.0, 0.5});
    auto m = measure_coeffs(mix, 8);
    CHECK(std::abs(m.at(0) - 1.0) < 1e-14);
    for (int n = 1; n <= 8; ++n) CHECK(std::abs(m.at(n) - 0.5) < 1e-14);
    for (int n = -8; n <= 8; ++n) CHECK(std::abs(m.at(n)) <= mix.total_variation() + 1e-14);
}

TEST_CASE("interval set normalization on the circle")
{
    IntervalSet E(Domain::circle, {{2 * pi - 0.5, 2 * pi + 0.5}});
    CHECK(E.iv.size() == 2);
    CHECK(std::abs(E.length() - 1.0) < 1e-14);
    CHECK(E.contains(0.1));
    CHECK(!E.contains(pi));
}
