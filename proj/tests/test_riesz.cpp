#include "doctest.h"

#include <cmath>
#include <map>
#include <random>

#include "uplab/riesz.hpp"

using namespace uplab;

// expand the product over sign tuples eps in {-1,0,1}^n
static std::map<long long, std::vector<std::vector<int>>> tuple_reps(const std::vector<long long>& N)
{
    std::map<long long, std::vector<std::vector<int>>> reps;
    int n = int(N.size());
    std::vector<int> eps(n, -1);
    for (;;) {
        long long f = 0;
        for (int k = 0; k < n; ++k) f += eps[k] * N[k];
        reps[f].push_back(eps);
        int k = 0;
        while (k < n && eps[k] == 1) eps[k++] = -1;
        if (k == n) break;
        ++eps[k];
    }
    return reps;
}

static double tuple_block_mass(const std::vector<long long>& N, const std::vector<double>& a, int j)
{
    double s = 0;
    for (auto& [f, list] : tuple_reps(N)) {
        for (auto& eps : list) {
            int top = 0;
            double c = 1;
            for (size_t k = 0; k < eps.size(); ++k)
                if (eps[k] != 0) {
                    top = int(k) + 1;
                    c *= a[k] / 2;
                }
            if (top == j) s += c * c;
        }
    }
    return s;
}

TEST_CASE("trivial products")
{
    RieszSpec r{lacunary({3, 9, 27}), {0.5, 0.5, 0.5}, RieszKind::R1};
    auto c0 = riesz_partial(r, 0);
    CHECK(c0.width() == 1);
    CHECK(c0.at(0) == cd(1));
    auto c1 = riesz_partial(r, 1);
    CHECK(std::abs(c1.at(0) - 1.0) < 1e-15);
    CHECK(std::abs(c1.at(3) - 0.25) < 1e-15);
    CHECK(std::abs(c1.at(-3) - 0.25) < 1e-15);
    CHECK(std::abs(block_mass(r, 1, 1) - 0.125) < 1e-15);
    CHECK_THROWS_AS(lacunary({3, 5}), BadParameter);
}

TEST_CASE("support blocks and unique representation")
{
    std::vector<long long> N{3, 9, 27, 81, 243};
    RieszSpec r{lacunary(N), {1, 1, 1, 1, 1}, RieszKind::R1};
    auto sp = riesz_sparse(r, 5);
    for (auto& [k, v] : sp)
        if (v != cd(0)) CHECK(block_of(r.spec, k) >= 0);
    auto reps = tuple_reps(N);
    for (auto& [f, list] : reps) CHECK(list.size() == 1);
    CHECK(reps.size() == 243u);
}

TEST_CASE("block masses against tuple enumeration")
{
    std::vector<long long> N{3, 9, 27, 81};
    std::vector<double> a{1, 1, 1, 1};
    RieszSpec r{lacunary(N), a, RieszKind::R1};
    for (int j = 0; j <= 4; ++j) CHECK(std::abs(block_mass(r, j, 4) - tuple_block_mass(N, a, j)) < 1e-12);
    std::vector<double> b{0.3, -0.7, 0.9, 0.5};
    RieszSpec q{lacunary({4, 13, 40, 121}), b, RieszKind::R1};
    for (int j = 1; j <= 4; ++j) {
        double closed = b[j - 1] * b[j - 1] / 2;
        for (int k = 0; k < j - 1; ++k) closed *= 1 + b[k] * b[k] / 2;
        CHECK(std::abs(block_mass(q, j, 4) - closed) < 1e-12);
    }
    RieszSpec z{lacunary(N), {0, 0, 0, 0}, RieszKind::R1};
    CHECK(block_mass(z, 2, 4) == 0.0);
}

TEST_CASE("positivity and R2 bounds")
{
    RieszSpec r{lacunary({3, 9, 27, 81}), {1, -1, 0.5, 1}, RieszKind::R1};
    auto g = riesz_grid(r, 4, 1024);
    CHECK(g.values.real().minCoeff() >= -1e-10);
    auto c = riesz_partial(r, 4);
    auto syn = synthesize(c, 1024);
    CHECK((syn.values - g.values).cwiseAbs().maxCoeff() < 1e-12);

    std::vector<double> a{0.9, -0.5, 0.7, 0.3};
    RieszSpec q{lacunary({3, 9, 27, 81}), a, RieszKind::R2};
    auto h = riesz_grid(q, 4, 1024);
    double top = 1;
    for (double v : a) top *= 1 + v * v;
    for (int i = 0; i < 1024; ++i) {
        double m = std::norm(h.values(i));
        CHECK(m >= 1 - 1e-12);
        CHECK(m <= top + 1e-12);
    }
}

TEST_CASE("zygmund and sidon ratios")
{
    std::vector<long long> N;
    for (int j = 1; j <= 8; ++j) N.push_back((long long)std::pow(3, j));
    auto s = lacunary(N);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0, 2 * pi);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<cd> c;
        for (int j = 0; j < 8; ++j) c.push_back(std::polar(1.0, u(rng)));
        double z = zygmund_l1_ratio(s, c);
        CHECK(z <= zygmund_bound());
        std::vector<cd> c2 = c;
        for (auto& v : c2) v *= 3.7;
        CHECK(std::abs(zygmund_l1_ratio(s, c2) - z) < 1e-12);

        std::vector<cd> c6(c.begin(), c.begin() + 6);
        double sr = sidon_ratio(s, c6);
        CHECK(sr <= 2.0);
        std::vector<cd> rot = c6;
        for (auto& v : rot) v *= std::polar(1.0, 0.4);
        CHECK(std::abs(sidon_ratio(s, rot) - sr) < 1e-12);
    }
    CHECK(std::abs(zygmund_l1_ratio(s, {cd(2, 0)}) - 1) < 1e-12);
    CHECK(std::abs(sidon_ratio(s, {cd(0, 1)}) - 1) < 1e-12);
    CHECK_THROWS_AS(zygmund_l1_ratio(s, {cd(0)}), Undefined);
}

TEST_CASE("holder check")
{
    std::vector<long long> N;
    for (int j = 1; j <= 14; ++j) N.push_back((long long)std::pow(3, j));
    auto s = lacunary(N);
    std::vector<cd> dec, flat;
    for (auto n : N) {
        dec.push_back(std::pow(double(n), -0.5));
        flat.push_back(1.0);
    }
    auto a1 = holder_decay_check(s, dec, 0.5, 1 << 12);
    auto a2 = holder_decay_check(s, dec, 0.5, 1 << 16);
    CHECK(std::abs(a1.coeff_decay - 1) < 1e-12);
    CHECK(a2.seminorm < 1.5 * a1.seminorm);
    auto b1 = holder_decay_check(s, flat, 0.5, 1 << 12);
    auto b2 = holder_decay_check(s, flat, 0.5, 1 << 16);
    CHECK(b2.seminorm > 3 * b1.seminorm);
}
