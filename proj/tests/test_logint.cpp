#include "doctest.h"

#include <cmath>

#include "uplab/logint.hpp"
#include "uplab/quad.hpp"

using namespace uplab;

// Cauchy determinant: det[1/(x_i + y_j)] ratios give the distance in closed form
static double muntz_oracle(const std::vector<double>& lam, double k)
{
    double d = 1 / std::sqrt(2 * k + 1);
    for (double l : lam) d *= std::abs(k - l) / (k + l + 1);
    return d;
}

TEST_CASE("bernstein weight evaluation")
{
    auto bw = bernstein_weight([](double) { return 3.0; }, 2.0, 1e4);
    for (double x : {2.0, 3.0, -10.0, 500.0, 9999.0}) CHECK(std::abs(bw(x) / std::pow(2.0 / std::abs(x), 3) - 1) < 1e-10);
    CHECK(bw(1.0) == 1.0);
    CHECK(bw(-0.5) == 1.0);
    CHECK_THROWS_AS(bw(2e4), BadParameter);

    double c = 1.5;
    auto lw = bernstein_weight([](double t) { return std::log(t); }, c, 1e5);
    for (double x : {1.5, 4.0, 77.0, 3e4}) {
        double exact = -0.5 * (std::pow(std::log(x), 2) - std::pow(std::log(c), 2));
        CHECK(std::abs(lw.log_W(x) - exact) < 1e-9 * (1 + std::abs(exact)));
    }
    double prev = 1;
    for (double x = 1.5; x < 1e5; x *= 1.7) {
        CHECK(lw(x) <= prev);
        CHECK(lw(x) == lw(-x));
        prev = lw(x);
    }
    CHECK_THROWS_AS(bernstein_weight([](double t) { return 1 / t; }, 1.0, 10.0), BadParameter);
    CHECK_THROWS_AS(bernstein_weight([](double) { return 0.0; }, 1.0, 10.0), BadParameter);
}

TEST_CASE("moment bound")
{
    auto bw = bernstein_weight([](double) { return 2.0; }, 1.0, 1e5);
    for (double xi : {10.0, 1000.0}) {
        auto m = weight_moment_bound(bw, xi);
        CHECK(m.N == 2);
        CHECK(std::abs(m.lhs / m.rhs - 1) < 1e-9);
    }
    auto t = weight_moment_bound(bw, 1.0);
    CHECK(std::abs(t.rhs - 1.0) < 1e-12);

    // w = log t with c = e: x^N W(x) peaks at log x = N with value e^{(N^2+1)/2}
    double e = std::exp(1.0);
    auto lw = bernstein_weight([](double s) { return std::log(s); }, e, 1e8);
    for (double xi : {5.0, 50.0, 400.0}) {
        auto m = weight_moment_bound(lw, xi);
        CHECK(m.N == int(std::ceil(std::log(xi))));
        CHECK(std::abs(std::log(m.lhs) - 0.5 * (m.N * m.N + 1)) < 1e-6);
        CHECK(std::abs(m.argmax / std::exp(double(m.N)) - 1) < 2e-3);
        CHECK(!m.at_boundary);
    }
    double A = fit_moment_constant(lw, {3.0, 5.0, 20.0, 50.0, 400.0, 3000.0});
    CHECK(A >= 1);
    CHECK(A < 10);
    for (double xi : {7.0, 100.0, 2000.0}) {
        auto m = weight_moment_bound(lw, xi);
        CHECK(m.lhs <= A * m.rhs * (1 + 1e-9));
    }
}

TEST_CASE("log integral dichotomy")
{
    double k = 2, c = 1;
    auto bw = bernstein_weight([k](double) { return k; }, c, 1e4);
    auto r = log_integral(bw);
    double T = 1e4;
    auto gl = gauss_legendre(24);
    double oracle = 0;
    for (double lo = 1; lo < T; lo *= 2)
        oracle += gauss_integrate([&](double x) { return -k * std::log(x / c) / (1 + x * x); }, lo, std::min(2 * lo, T), gl);
    CHECK(std::abs(r.poisson - 2 * oracle) < 1e-6);
    CHECK(std::abs(r.fubini - 2 * oracle) < 1e-6);

    auto sq = bernstein_weight([](double t) { return std::sqrt(t); }, 1.0, 1e6);
    auto rs = log_integral(sq);
    CHECK(!rs.divergent);
    CHECK(std::abs(rs.poisson - rs.fubini) < 1e-3 * std::abs(rs.fubini));
    auto lin = bernstein_weight([](double t) { return t; }, 1.0, 1e6);
    CHECK(log_integral(lin).divergent);
    auto tl = bernstein_weight([](double t) { return t / std::log(t + 1); }, 1.0, 1e8);
    CHECK(log_integral(tl).divergent);
}

TEST_CASE("cauchy transform")
{
    LineMeasure d;
    d.atoms = {{0.0, 1.0}};
    CHECK(std::abs(cauchy_transform(d, cd(0, 1)) - cd(0, 1)) < 1e-15);
    CHECK_THROWS_AS(cauchy_transform(d, cd(0.5, 0)), BadParameter);

    LineMeasure dip;
    dip.atoms = {{1.0, 1.0}, {-1.0, -1.0}};
    for (cd z : {cd(0.3, 0.7), cd(-2, 0.1), cd(5, -3)}) {
        auto s = moment_shift_check(dip, z, 1);
        CHECK(s.max_moment < 1e-15);
        CHECK(std::abs(s.lhs - s.rhs) < 1e-10);
        cd direct = 1.0 / (1.0 - z) - 1.0 / (-1.0 - z);
        CHECK(std::abs(s.lhs - direct) < 1e-14);
    }
    auto s2 = moment_shift_check(dip, cd(0.3, 0.7), 2);
    CHECK(s2.max_moment > 1);
    CHECK(std::abs(s2.lhs - s2.rhs) > 1e-3);

    LineMeasure g;
    g.density = line_sample_real(20, 4096, [](double x) { return std::exp(-x * x); });
    auto gl = gauss_legendre(30);
    for (cd z : {cd(0.4, 1.0), cd(-1, -0.5), cd(3, 0.2)}) {
        cd oracle = 0;
        for (int p = 0; p < 200; ++p) {
            double a = -10 + 0.1 * p, b = a + 0.1, cc = 0.5 * (a + b), r = 0.5 * (b - a);
            for (size_t i = 0; i < gl.first.size(); ++i) {
                double x = cc + r * gl.first[i];
                oracle += gl.second[i] * r * std::exp(-x * x) / (x - z);
            }
        }
        CHECK(std::abs(cauchy_transform(g, z) - oracle) < 1e-10);
    }
}

TEST_CASE("annihilating density")
{
    auto W = [](double x) { return std::pow(1 + x * x, -2.0); };
    auto a = annihilating_density(W, 6, 1 << 16);
    for (auto m : a.moments) CHECK(std::abs(m) < 1e-6);
    CHECK(a.modulus_deviation < 1e-12);
    CHECK(std::abs(a.weighted_l1 - 4) < 1e-6);
    CHECK(std::isfinite(a.log_integral));
    double norm = 0;
    for (size_t j = 0; j < a.x.size(); ++j) norm += std::abs(a.g(j)) * a.weight[j];
    CHECK(norm > 0.1);

    double prev = INFINITY;
    for (int M : {1 << 10, 1 << 12, 1 << 14}) {
        double m6 = std::abs(annihilating_density(W, 6, M).moments[6]);
        CHECK(m6 < prev);
        prev = m6;
    }

    CHECK_THROWS_AS(annihilating_density([](double x) { return x < 0 ? 0.0 : 1 / (1 + x * x); }, 3, 4096), NotLogIntegrable);
    CHECK_THROWS_AS(annihilating_density([](double x) { return std::exp(-std::abs(x)); }, 3, 4096), NotLogIntegrable);
}

TEST_CASE("spectral gap test function")
{
    for (double a : {0.5, 2.0}) {
        double c = 1.3, r = 2;
        auto f = spectral_gap_test_fn(c, r, a);
        auto rep = spectral_gap_report(f, 40);
        CHECK(std::abs(rep.center - std::cosh(a * r)) < 1e-12 * std::cosh(a * r));
        CHECK(rep.max_outside <= 1 + 1e-12);
        CHECK(rep.min_middle >= rep.lower_bound);
        double prev = 0;
        for (double R : {20.0, 40.0, 80.0}) {
            double m = max_on_circle(f, R);
            CHECK(std::log(m) / R <= a + 0.05);
            CHECK(m > prev);
            prev = m;
        }
    }
    CHECK_THROWS_AS(spectral_gap_test_fn(0, 0, 1), BadParameter);
}

TEST_CASE("beurling statistics on the line")
{
    auto fin = beurling_vmu_stat([](double t) { return std::exp(-std::sqrt(t)); }, 4096);
    CHECK(!fin.divergent);
    // with u^2 = t the statistic is -int 2u^2/(1+u^4) du
    double oracle = 0;
    int n = 2000000;
    double U = 64, h = U / n;
    for (int i = 0; i < n; ++i) {
        double u = (i + 0.5) * h;
        oracle -= 2 * u * u / (1 + u * u * u * u) * h;
    }
    CHECK(std::abs(fin.value - oracle) < 1e-6);

    CHECK(beurling_vmu_stat([](double t) { return std::exp(-t); }, 4096).divergent);
    auto gauss = beurling_vmu_stat([](double t) { return std::exp(-t * t); }, 4096);
    CHECK(gauss.divergent);
    CHECK(gauss.floored);

    LineMeasure compact;
    compact.atoms = {{0.5, 1.0}, {3.0, -2.0}};
    auto cs = beurling_vmu_stat(compact, 1024);
    CHECK(cs.divergent);
    CHECK(cs.floored);
}

TEST_CASE("beurling statistics on the circle")
{
    auto window = [](int N, const std::function<double(int)>& f) {
        CoeffWindow c(-N, N);
        for (int k = -N; k <= N; ++k) c[k] = f(std::abs(k));
        return c;
    };
    auto root = window(4096, [](int k) { return std::exp(-std::sqrt(double(k))); });
    auto s = beurling_circle_stat(root);
    CHECK(!s.divergent);
    double oracle = 0;
    for (int n = 1; n <= 2048; ++n) {
        long double t = 0;
        for (int k = 4096; k >= n; --k) t += std::exp(-std::sqrt((long double)k));
        oracle += std::log(double(t)) / (double(n) * n);
    }
    CHECK(std::abs(s.value - oracle) < 1e-10);
    CHECK(beurling_circle_stat(window(4096, [](int k) { return std::exp(-double(k)); })).divergent);
    auto g = beurling_circle_stat(window(256, [](int k) { return std::exp(-double(k) * k); }));
    CHECK(g.divergent);
    CHECK(g.floored);
}

TEST_CASE("cartwright levinson harness")
{
    int M = 4096;
    auto bump = sample_real(M, [](double t) {
        double u = (t > pi ? t - 2 * pi : t) / 0.3;
        return std::abs(u) < 1 ? std::exp(-1 / (1 - u * u)) : 0.0;
    });
    GridFunction f;
    f.values = Eigen::VectorXcd::Zero(M);
    for (auto [ang, mass] : std::vector<std::pair<double, double>>{{2.2, 1.0}, {3.0, -0.7}, {4.1, 0.4}}) {
        int s = int(std::lround(ang / (2 * pi) * M));
        for (int j = 0; j < M; ++j) f.values((j + s) % M) += mass * bump.values(j);
    }
    auto r = cartwright_levinson(f, {-1.2, 1.2}, [](int n) { return double(n); });
    CHECK(r.given_arc_sup < 1e-12);
    CHECK(!r.given.divergent);
    CHECK(r.forced.divergent);
    CHECK(r.forced_arc_sup > 1e-3);
    CHECK(r.consistent);

    auto slow = cartwright_levinson(f, {-1.2, 1.2}, [](int n) { return 0.5 * std::sqrt(double(n)); });
    CHECK(!slow.forced.divergent);
}

TEST_CASE("muntz distances")
{
    std::vector<double> L10;
    for (int k = 1; k <= 10; ++k) L10.push_back(k);
    CHECK(std::abs(muntz_distance(L10, 0.5) / muntz_oracle(L10, 0.5) - 1) < 1e-8);
    CHECK(muntz_distance(L10, 3.0) == 0);
    CHECK(std::abs(muntz_distance({}, 1.7) - 1 / std::sqrt(4.4)) < 1e-15);
    std::vector<double> mixed{0.3, 1.1, 2.5, 4.0, 7.7, 9.2};
    CHECK(std::abs(muntz_distance(mixed, 5.5) / muntz_oracle(mixed, 5.5) - 1) < 1e-8);

    double prev = INFINITY;
    std::vector<double> L;
    for (int n = 1; n <= 20; ++n) {
        L.push_back(n);
        double d = muntz_distance(L, 2.5);
        CHECK(d < prev);
        CHECK(std::abs(d / muntz_oracle(L, 2.5) - 1) < (n <= 12 ? 1e-8 : 1e-3));
        prev = d;
    }
    CHECK(prev < 1e-2);

    std::vector<double> lac;
    std::vector<double> ds;
    for (int j = 0; j < 20; ++j) {
        lac.push_back(std::pow(2.0, j));
        ds.push_back(muntz_distance(lac, 3.0));
    }
    for (size_t i = 1; i < ds.size(); ++i) CHECK(ds[i] <= ds[i - 1]);
    CHECK(std::abs(ds.back() / muntz_oracle(lac, 3.0) - 1) < 1e-6);
    CHECK(ds.back() > 1e-4);
    CHECK(std::abs(ds.back() - ds[ds.size() - 5]) < 1e-3 * ds.back());

    CHECK_THROWS_AS(muntz_distance(std::vector<double>(21, 1.0), 0.5), IllConditioned);
    CHECK_THROWS_AS(muntz_distance({1.0, 1.0}, 0.5), BadParameter);
    CHECK_THROWS_AS(muntz_distance({-0.7}, 0.5), BadParameter);
}
