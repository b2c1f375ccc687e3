#include "doctest.h"

#include <cmath>

#include "uplab/hardy.hpp"

using namespace uplab;

// principal value of (1/pi) int f(t)/(t-x) dt by subtraction of the singularity
static double pv_hilbert(const std::function<double(double)>& f, double x, double R, int n)
{
    double h = 2 * R / n, s = 0, fx = f(x);
    for (int i = 0; i < n; ++i) {
        double t = -R + (i + 0.5) * h;
        double d = t - x;
        s += std::abs(d) < 1e-14 ? 0.0 : (f(t) - fx) / d;
    }
    s *= h;
    s += fx * std::log((R - x) / (R + x));
    return s / pi;
}

TEST_CASE("conjugate on the circle")
{
    auto c = sample_real(64, [](double t) { return std::cos(t); });
    auto s = conjugate_circle(c);
    for (int j = 0; j < 64; ++j) CHECK(std::abs(s.values(j).real() - std::sin(c.t(j))) < 1e-13);
    auto k = sample_real(64, [](double) { return 3.0; });
    CHECK(conjugate_circle(k).values.cwiseAbs().maxCoeff() < 1e-14);
    auto f = sample_real(128, [](double t) { return std::exp(std::cos(t)) * std::sin(2 * t); });
    auto ff = conjugate_circle(conjugate_circle(f));
    double mean = f.values.mean().real();
    for (int j = 0; j < 128; ++j) CHECK(std::abs(ff.values(j).real() + (f.values(j).real() - mean)) < 1e-12);
}

TEST_CASE("hilbert transform on the line")
{
    auto f = line_sample_real(4096, 1 << 19, [](double t) { return 1 / (1 + t * t); });
    auto H = hilbert_line(f);
    for (double x : {-3.0, -0.5, 0.0, 1.0, 2.5}) {
        int j = int(std::lround((x + f.L) / f.h()));
        double oracle = pv_hilbert([](double t) { return 1 / (1 + t * t); }, x, 1e4, 4000000);
        CHECK(std::abs(oracle + x / (1 + x * x)) < 1e-4);
        CHECK(std::abs(H.values(j).real() - oracle) < 1e-3);
    }

    auto g = line_sample_real(32, 4096, [](double t) { return std::exp(-(t - 1.5) * (t - 1.5)); });
    auto Hg = hilbert_line(g);
    int j0 = int(std::lround((1.5 + g.L) / g.h()));
    CHECK(std::abs(Hg.values(j0)) < 1e-10);
    CHECK(!Hg.truncation_warning);
    auto d = line_sample_real(32, 4096, [](double t) { return (t - 1.5) * std::exp(-(t - 1.5) * (t - 1.5)); });
    auto HHd = hilbert_line(hilbert_line(d), 1.0);
    CHECK((HHd.values + d.values).cwiseAbs().maxCoeff() < 1e-6);

    auto flat = line_sample_real(10, 256, [](double) { return 1.0; });
    CHECK(hilbert_line(flat).truncation_warning);
}

TEST_CASE("poisson extension")
{
    auto k = sample_real(64, [](double) { return 2.0; });
    CHECK(std::abs(poisson_extend(k, cd(0.3, 0.4)) - 2.0) < 1e-13);
    auto z = sample(64, [](double t) { return std::polar(1.0, t); });
    CHECK(std::abs(poisson_extend(z, cd(0.5, 0)) - 0.5) < 1e-13);
    for (double r : {0.2, 0.7, 0.95}) CHECK(std::abs(poisson_extend(dirac(0.0), cd(r, 0)) - (1 + r) / (1 - r)) < 1e-12);
    CHECK_THROWS_AS(poisson_extend(k, cd(1.0, 0)), BadParameter);
    auto c = line_sample_real(200, 1 << 16, [](double) { return 1.0; });
    CHECK(std::abs(poisson_extend(c, cd(0.2, 1.0)) - 1.0) < 5e-3);
}

TEST_CASE("outer functions on the disc")
{
    int M = 1 << 14;
    auto c = sample_real(M, [](double) { return 3.0; });
    auto O = outer_disc(modulus_circle(c));
    CHECK(std::abs(O(cd(0.3, -0.2)) - 3.0) < 1e-12);

    auto g = sample_real(M, [M](double t) { return std::abs(1.0 - std::polar(1.0, t + pi / M)); });
    auto m = modulus_circle(g);
    auto Og = outer_disc(m);
    CHECK(std::abs(std::abs(Og(0)) - 1.0) < 1e-3);
    CHECK(std::abs(std::log(std::abs(Og(0))) - m.log_integral) < 1e-8);
    for (int j = 0; j < M; j += 97) CHECK(std::abs(std::abs(Og.boundary.values(j)) - g.values(j).real()) < 1e-6);

    auto arc = sample_real(M, [](double t) { return t < 1.0 ? 0.0 : 1.0; });
    auto ma = modulus_circle(arc);
    CHECK(ma.not_log_integrable);
    CHECK_THROWS_AS(outer_disc(ma), NotLogIntegrable);
}

TEST_CASE("factorization roundtrip")
{
    int M = 4096;
    auto w = sample_real(M, [](double t) { return 2 + std::cos(t); });
    auto O = outer_disc(modulus_circle(w));
    std::vector<cd> zeros{cd(0.5, 0), cd(0, -0.3)};
    std::vector<PointMass> sing{{2.0 + 1e-3, 0.3}};
    GridFunction f;
    f.values.resize(M);
    for (int j = 0; j < M; ++j) {
        cd zeta = std::polar(1.0, 2 * pi * j / M);
        f.values(j) = blaschke_disc(zeros, zeta) * singular_inner(sing, zeta) * O.boundary.values(j);
    }
    for (int j = 0; j < M; ++j) CHECK(std::abs(std::abs(f.values(j)) - std::abs(O.boundary.values(j))) < 1e-8);
    GridFunction absf;
    absf.values = f.values.cwiseAbs().cast<cd>();
    auto O2 = outer_disc(modulus_circle(absf));
    double a0 = std::arg(O2.boundary.values(0) / O.boundary.values(0));
    double worst = 0;
    for (int j = 0; j < M; ++j) worst = std::max(worst, std::abs(std::arg(O2.boundary.values(j) / O.boundary.values(j)) - a0));
    CHECK(worst < 1e-6);
}

TEST_CASE("blaschke and singular inner")
{
    CHECK(std::abs(blaschke_disc({cd(0)}, cd(0.3, 0.1)) - cd(0.3, 0.1)) < 1e-15);
    std::vector<cd> zs{cd(0.5, 0.2), cd(-0.7, 0.1), cd(0, 0.9)};
    for (int j = 0; j < 50; ++j) CHECK(std::abs(std::abs(blaschke_disc(zs, std::polar(1.0, 0.37 * j))) - 1) < 1e-10);
    std::vector<cd> muntz;
    for (double lam : {0.0, 0.5, 2.0}) muntz.push_back(cd(0, 1 + lam));
    CHECK(std::abs(blaschke_half(muntz, cd(0, 1))) < 1e-15);
    std::vector<cd> muntz2{cd(0, 1.5), cd(0, 3)};
    CHECK(std::abs(blaschke_half(muntz2, cd(0, 1))) > 0.05);
    CHECK_THROWS_AS(blaschke_disc({cd(1, 0)}, 0.0), BadParameter);

    double c = 0.7;
    CHECK(std::abs(singular_inner({{0.0, c}}, 0.0) - std::exp(-c)) < 1e-15);
    CHECK(std::abs(singular_inner({{0.0, c}}, cd(0.5, 0.5))) < 1);
    double prev = 0;
    for (double r : {0.9, 0.99, 0.999, 0.9999}) {
        double v = std::abs(singular_inner({{0.0, c}}, std::polar(r, 1.0)));
        CHECK(v > prev);
        prev = v;
    }
    CHECK(std::abs(prev - 1) < 1e-3);
}

TEST_CASE("jensen")
{
    auto k = sample_real(64, [](double) { return 2.0; });
    auto r = jensen_check(k);
    CHECK(std::abs(r.lhs - std::log(2.0)) < 1e-14);
    CHECK(std::abs(r.rhs - std::log(2.0)) < 1e-14);
    auto f = sample(256, [](double t) { return 1.0 + 0.5 * std::polar(1.0, t); });
    auto rf = jensen_check(f);
    CHECK(rf.holds);
    CHECK(std::abs(rf.lhs) < 1e-14);
    auto z = sample(64, [](double t) { return std::polar(1.0, t); });
    auto rz = jensen_check(z);
    CHECK(std::isinf(rz.lhs));
    CHECK(rz.holds);
    auto bad = sample(64, [](double t) { return std::polar(1.0, -t); });
    CHECK_THROWS_AS(jensen_check(bad), BadInput);
}

TEST_CASE("analytic windows are log integrable")
{
    std::vector<std::function<cd(double)>> fs{
        [](double t) { return std::pow(1.0 - std::polar(1.0, t), 3); },
        [](double t) { return std::polar(1.0, 5 * t) * (1.0 + std::polar(1.0, t)); },
        [](double t) { return 1.0 + std::polar(1.0, t) + std::polar(0.5, 2 * t); },
    };
    for (auto& f : fs) {
        auto g = sample(4096, f);
        GridFunction a;
        a.values = g.values.cwiseAbs().cast<cd>();
        auto m = modulus_circle(a);
        CHECK(!m.not_log_integrable);
        CHECK(m.log_integral > -1e6);
    }
}

TEST_CASE("vanishing outer function")
{
    IntervalSet arcs(Domain::circle, {{0.0, 2 * pi}});
    auto f = vanishing_outer(arcs, VanishMode::plain, [](size_t k, double) { return double(k + 1); });
    for (int j = 0; j < 200; ++j) {
        cd z = std::polar(0.999 * (j + 1) / 200.0, 0.37 * j);
        CHECK(std::abs(f(z)) <= 1.0);
        for (size_t k = 0; k < f.centers.size(); k += 7) CHECK(f.h(k, z).real() > 0);
    }
    CHECK(std::abs(f(-1.0)) > 0);
    double prev = 1;
    for (double t : {0.1, 0.01, 1e-3, 1e-4}) {
        double v = std::abs(f(std::polar(1.0, t)));
        CHECK(v < prev);
        prev = v;
    }
    CHECK(prev < 1e-3);
    CHECK_THROWS_AS(vanishing_outer(arcs, VanishMode::plain, [](size_t, double l) { return 1 / l; }), BadParameter);
}

TEST_CASE("carleson mode on a finite entropy cantor set")
{
    CantorSpec s;
    s.depth = 8;
    for (int n = 0; n < 8; ++n) s.alphas.push_back(std::pow(2.0, -n - 2));
    auto E = cantor_set(s);
    auto gaps = E.circle_complement();
    auto lam = [](size_t, double l) { return std::pow(1 + std::log(1 / l), 2); };
    auto f = vanishing_outer(gaps, VanishMode::carleson, lam);
    int N = 2;
    double near = 0, far = 0;
    for (auto& g : gaps.iv) {
        for (double d : {1e-6, 1e-5, 1e-4}) {
            if (2 * d >= g.second - g.first) continue;
            near = std::max(near, std::abs(f(std::polar(1.0, g.first + d))) / std::pow(d, N));
        }
        double mid = 0.5 * (g.first + g.second);
        far = std::max(far, std::abs(f(std::polar(1.0, mid))) / std::pow(0.5 * (g.second - g.first), N));
    }
    CHECK(std::isfinite(far));
    CHECK(near < far);
}

TEST_CASE("outer function in the half-plane")
{
    // |f| = (x^2+4)/(x^2+1) is the modulus of ((z+2i)/(z+i))^2
    auto f = line_sample_real(400, 1 << 16, [](double x) { return (x * x + 4) / (x * x + 1); });
    auto m = modulus_line(f);
    CHECK(!m.not_log_integrable);
    auto O = outer_line(m);
    for (cd z : {cd(0, 1), cd(1.5, 0.5), cd(-2, 3)}) {
        cd exact = std::pow((z + cd(0, 2)) / (z + cd(0, 1)), 2);
        CHECK(std::abs(std::abs(O(z)) - std::abs(exact)) < 2e-3);
    }
    CHECK_THROWS_AS(O(cd(1, 0)), BadParameter);
}
