#include "doctest.h"

#include <cmath>
#include <random>

#include "uplab/circle.hpp"

using namespace uplab;

static CoeffWindow random_poly(int deg, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    CoeffWindow c(-deg, deg);
    for (int n = -deg; n <= deg; ++n) c[n] = cd(g(rng), g(rng));
    return c;
}

TEST_CASE("dft of constants and monomials")
{
    auto one = sample_real(64, [](double) { return 1.0; });
    auto c = dft_coeffs(one, 5);
    CHECK(std::abs(c.at(0) - 1.0) < 1e-14);
    for (int n = 1; n <= 5; ++n) CHECK(std::abs(c.at(n)) < 1e-14);

    auto z = sample(64, [](double t) { return std::polar(1.0, t); });
    auto cz = dft_coeffs(z, 5);
    CHECK(std::abs(cz.at(1) - 1.0) < 1e-14);
    CHECK(std::abs(cz.at(-1)) < 1e-14);
    CHECK_THROWS_AS(dft_coeffs(z, 40), GridTooCoarse);
}

TEST_CASE("dft against direct quadrature")
{
    std::mt19937_64 rng(7);
    auto p = random_poly(16, rng);
    auto f = sample(256, [&](double t) { return eval_poly(p, t); });
    auto c = dft_coeffs(f, 16);
    for (int n = -16; n <= 16; ++n) {
        cd direct = 0;
        for (int j = 0; j < 256; ++j) direct += f.values(j) * std::polar(1.0, -n * f.t(j));
        direct /= 256.0;
        CHECK(std::abs(c.at(n) - direct) < 1e-12);
        CHECK(std::abs(c.at(n) - p.at(n)) < 1e-12);
    }
}

TEST_CASE("parseval")
{
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    GridFunction f;
    f.values.resize(128);
    for (int j = 0; j < 128; ++j) f.values(j) = cd(g(rng), g(rng));
    auto c = dft_all(f);
    CHECK(std::abs(c.c.squaredNorm() - f.mean_abs2()) < 1e-10 * f.mean_abs2());
}

TEST_CASE("kernel values")
{
    auto d = kernel(KernelKind::dirichlet, 5, 64);
    CHECK(std::abs(d.values(0).real() - 11.0) < 1e-12);
    for (int N : {1, 3, 10}) {
        auto f = kernel(KernelKind::fejer, N, 128);
        CHECK(std::abs(f.values.mean() - 1.0) < 1e-12);
        CHECK(f.values.real().minCoeff() >= -1e-12);
        auto c = dft_coeffs(f, 20);
        for (int n = -20; n <= 20; ++n) CHECK(std::abs(c.at(n) - std::max(0.0, 1.0 - std::abs(n) / double(N))) < 1e-12);
    }
    CHECK_THROWS_AS(kernel(KernelKind::fejer, 0, 64), BadParameter);
    CHECK_THROWS_AS(kernel(KernelKind::poisson, 1.0, 64), BadParameter);
    CHECK_THROWS_AS(kernel(KernelKind::dlvp, 20, 64), GridTooCoarse);
}

TEST_CASE("poisson kernel matches series")
{
    double r = 0.6;
    auto P = kernel(KernelKind::poisson, r, 64);
    for (int j = 0; j < 64; j += 7) {
        double t = 2 * pi * j / 64, s = 1;
        for (int k = 1; k < 200; ++k) s += 2 * std::pow(r, k) * std::cos(k * t);
        CHECK(std::abs(P.values(j).real() - s) < 1e-12);
    }
}

TEST_CASE("dlvp reproduces the band")
{
    int N = 6, M = 64;
    auto V = kernel(KernelKind::dlvp, N, M);
    for (int k = -20; k <= 20; ++k) {
        auto zk = sample(M, [k](double t) { return std::polar(1.0, k * t); });
        auto out = convolve(V, zk);
        double expect = std::abs(k) <= N ? 1.0 : (std::abs(k) >= 2 * N ? 0.0 : -1.0);
        if (expect >= 0) CHECK((out.values - expect * zk.values).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("summation means")
{
    int M = 64;
    for (int k : {-3, 0, 2, 5}) {
        auto zk = sample(M, [k](double t) { return std::polar(1.0, k * t); });
        auto s = summation_mean(zk, {SumKind::partial, 5, 0});
        CHECK((s.values - zk.values).cwiseAbs().maxCoeff() < 1e-12);
        auto c = summation_mean(zk, {SumKind::cesaro, 8, 0});
        CHECK((c.values - (1 - std::abs(k) / 8.0) * zk.values).cwiseAbs().maxCoeff() < 1e-12);
        auto a = summation_mean(zk, {SumKind::abel, 0, 0.7});
        CHECK((a.values - std::pow(0.7, 2 * std::abs(k)) * zk.values).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("cesaro error decreases on a Lipschitz sawtooth")
{
    int M = 1 << 14;
    auto saw = sample_real(M, [](double t) { return std::abs(t - pi); });
    double prev = 1e9;
    for (int N = 8; N <= 256; N *= 2) {
        auto s = summation_mean(saw, {SumKind::cesaro, N, 0});
        double err = (s.values - saw.values).cwiseAbs().maxCoeff();
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("wiener inversion")
{
    CoeffWindow two(0, 0);
    two[0] = 2.0;
    auto r0 = wiener_invert(two);
    CHECK(std::abs(r0.g.at(0) - 0.5) < 1e-12);

    CoeffWindow f(0, 1);
    f[0] = 2.0;
    f[1] = 1.0;
    auto r = wiener_invert(f, 1e-10);
    CHECK(r.residual_l1 < 1e-10);
    for (int n = 0; n < 30; ++n) CHECK(std::abs(r.g.at(n) - std::pow(-1.0, n) * std::pow(2.0, -n - 1)) < 1e-10);
    for (int n = -30; n < 0; ++n) CHECK(std::abs(r.g.at(n)) < 1e-10);

    CoeffWindow h(0, 1);
    h[0] = 1.0;
    h[1] = -1.0;
    CHECK_THROWS_AS(wiener_invert(h), NotInvertible);
}

TEST_CASE("sobolev embedding constant")
{
    double C = sobolev_constant();
    for (double a : {0.3, 0.6, 0.9}) {
        auto f = sample_real(1024, [a](double t) { return 1.0 / (1 - 2 * a * std::cos(t) + a * a); });
        auto df = sample_real(1024, [a](double t) {
            double d = 1 - 2 * a * std::cos(t) + a * a;
            return -2 * a * std::sin(t) / (d * d);
        });
        double l1 = dft_all(f).l1();
        double rhs = C * (f.values.cwiseAbs().maxCoeff() + df.values.cwiseAbs().maxCoeff());
        CHECK(l1 <= rhs);
    }
}

TEST_CASE("atoms and rajchman")
{
    CoeffWindow delta(-64, 64);
    delta.c.setOnes();
    CHECK(std::abs(atom_mass(delta, 0.0, 64) - 1.0) < 1e-12);
    for (double v : rajchman_profile(delta, 64)) CHECK(std::abs(v - 1.0) < 1e-12);

    CoeffWindow leb(-64, 64);
    leb[0] = 1.0;
    CHECK(std::abs(atom_mass(leb, 1.0, 64)) <= 1.0 / 129 + 1e-15);
    auto prof = rajchman_profile(leb, 64);
    CHECK(std::abs(prof.back() - 1.0 / 129) < 1e-15);

    int N = 512;
    CoeffWindow mu(-N, N);
    for (int n = -N; n <= N; ++n) mu[n] = 0.5 * std::polar(1.0, -n * pi / 2) + std::pow(0.5, std::abs(n));
    double direct = 0;
    for (int k = -N; k <= N; ++k) direct += std::real(mu.at(k) * std::polar(1.0, k * pi / 2));
    direct /= 2 * N + 1;
    cd m = atom_mass(mu, pi / 2, N);
    CHECK(std::abs(m.real() - direct) < 1e-12);
    CHECK(std::abs(m - 0.5) < 0.01);
}

TEST_CASE("dirichlet L1 against dense quadrature")
{
    for (int N : {16, 64}) {
        double coarse = dirichlet_l1(N, 1 << 14);
        double fine = 0;
        int K = 1 << 20;
        for (int j = 0; j < K; ++j) {
            double t = 2 * pi * (j + 0.5) / K;
            fine += std::abs(std::sin((N + 0.5) * t) / std::sin(t / 2));
        }
        fine /= K;
        CHECK(std::abs(coarse - fine) < 1e-3);
    }
}
