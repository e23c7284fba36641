#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <vector>

#include "mmaf/error.hpp"
#include "mmaf/levy.hpp"

using namespace mmaf;

namespace {

double nig_density(double x, const NigSeed& s)
{
    const double g = std::sqrt(s.alpha * s.alpha - s.beta * s.beta);
    const double q = std::sqrt(s.delta * s.delta + (x - s.mu) * (x - s.mu));
    // Far tails: K_1 underflows while exp(beta x) may overflow.
    if (s.alpha * q > 600.0)
        return 0.0;
    return s.alpha * s.delta * std::cyl_bessel_k(1.0, s.alpha * q) / (M_PI * q)
           * std::exp(s.delta * g + s.beta * (x - s.mu));
}

// Mean and variance of the NIG law by quadrature of its density.
std::pair<double, double> nig_moments_by_quadrature(const NigSeed& s)
{
    using boost::math::quadrature::gauss_kronrod;
    const double inf = std::numeric_limits<double>::infinity();
    auto integrate = [&](auto f) { return gauss_kronrod<double, 61>::integrate(f, -inf, inf, 15, 1e-12); };
    const double mass = integrate([&](double x) { return nig_density(x, s); });
    const double mean = integrate([&](double x) { return x * nig_density(x, s); }) / mass;
    const double var = integrate([&](double x) { return (x - mean) * (x - mean) * nig_density(x, s); }) / mass;
    return {mean, var};
}

struct Sample {
    double mean;
    double var;
};

Sample draw(const SeedDistribution& seed, double v, int n, std::uint64_t key)
{
    RandomStream rng(key);
    double s = 0.0, ss = 0.0;
    std::vector<double> xs(n);
    for (auto& x : xs) {
        x = sample_increment(seed, v, rng);
        s += x;
    }
    const double mean = s / n;
    for (double x : xs)
        ss += (x - mean) * (x - mean);
    return {mean, ss / (n - 1)};
}

}  // namespace

TEST_SUITE("levy")
{
    TEST_CASE("seed moments, closed form against quadrature of the NIG density")
    {
        const auto g = seed_moments(GaussianSeed{0.0, 0.5});
        CHECK(g.mean == 0.0);
        CHECK(g.variance == doctest::Approx(0.25));

        const NigSeed a{5, 0, 0, 0.2};
        const auto ma = seed_moments(a);
        const auto qa = nig_moments_by_quadrature(a);
        CHECK(ma.mean == doctest::Approx(0.0));
        CHECK(ma.variance == doctest::Approx(0.04).epsilon(1e-12));
        CHECK(ma.variance == doctest::Approx(qa.second).epsilon(1e-7));
        CHECK(std::abs(qa.first) < 1e-9);

        const NigSeed b{2, 1, 0, 1};
        const auto mb = seed_moments(b);
        const auto qb = nig_moments_by_quadrature(b);
        CHECK(mb.mean == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
        CHECK(mb.variance == doctest::Approx(4.0 / std::pow(3.0, 1.5)).epsilon(1e-12));
        CHECK(mb.mean == doctest::Approx(qb.first).epsilon(1e-7));
        CHECK(mb.variance == doctest::Approx(qb.second).epsilon(1e-7));
    }

    TEST_CASE("invalid seeds are rejected")
    {
        CHECK_THROWS_AS(seed_moments(GaussianSeed{0, 0}), Error);
        CHECK_THROWS_AS(seed_moments(NigSeed{1, 1, 0, 1}), Error);
        CHECK_THROWS_AS(seed_moments(NigSeed{1, 0, 0, -1}), Error);
        RandomStream rng(1);
        CHECK_THROWS_AS(sample_increment(GaussianSeed{}, -1.0, rng), Error);
    }

    TEST_CASE("zero measure gives a zero increment")
    {
        RandomStream rng(3);
        for (int i = 0; i < 100; ++i)
            CHECK(sample_increment(GaussianSeed{0, 0.5}, 0.0, rng) == 0.0);
    }

    TEST_CASE("gaussian increments match the closed moments")
    {
        const double v = 0.3;
        const int n = 100000;
        const auto s = draw(GaussianSeed{0, 0.5}, v, n, 11);
        CHECK(std::abs(s.mean) < 3 * 0.5 * std::sqrt(v / n));
        CHECK(s.var == doctest::Approx(0.25 * v).epsilon(0.02));
    }

    TEST_CASE("NIG increments match seed moments within 4 standard errors")
    {
        for (const NigSeed seed : {NigSeed{5, 0, 0, 0.2}, NigSeed{2, 1, 0.3, 1}}) {
            for (double v : {1.0, 0.05, 0.00125}) {
                const int n = 100000;
                const auto mom = seed_moments(seed);
                const auto s = draw(seed, v, n, 17);
                CHECK(std::abs(s.mean - v * mom.mean) < 4 * std::sqrt(v * mom.variance / n));
                CHECK(s.var == doctest::Approx(v * mom.variance).epsilon(0.1));
            }
        }
    }

    TEST_CASE("inverse gaussian sampler mean and variance")
    {
        RandomStream rng(5);
        for (auto [mu, lam] : {std::pair{1.0, 2.0}, std::pair{5e-5, 6.25e-8}}) {
            const int n = 200000;
            double s = 0.0, ss = 0.0;
            for (int i = 0; i < n; ++i) {
                const double x = sample_inverse_gaussian(mu, lam, rng);
                CHECK_UNARY(x > 0.0);
                s += x;
                ss += x * x;
            }
            const double mean = s / n;
            const double var = ss / n - mean * mean;
            CHECK(mean == doctest::Approx(mu).epsilon(0.03));
            CHECK(var == doctest::Approx(mu * mu * mu / lam).epsilon(0.15));
        }
    }

    TEST_CASE("infinite divisibility: one cell of v1 + v2 against two cells")
    {
        const NigSeed seed{3, 0.5, 0.1, 0.4};
        const double v1 = 0.2, v2 = 0.5;
        const int n = 100000;
        RandomStream r1(21), r2(22);
        double s1 = 0, q1 = 0, s2 = 0, q2 = 0;
        for (int i = 0; i < n; ++i) {
            const double a = sample_increment(seed, v1 + v2, r1);
            const double b = sample_increment(seed, v1, r2) + sample_increment(seed, v2, r2);
            s1 += a;
            q1 += a * a;
            s2 += b;
            q2 += b * b;
        }
        const double m1 = s1 / n, m2 = s2 / n;
        const double var1 = q1 / n - m1 * m1, var2 = q2 / n - m2 * m2;
        CHECK(std::abs(m1 - m2) < 4 * std::sqrt((var1 + var2) / n));
        CHECK(var1 == doctest::Approx(var2).epsilon(0.05));
    }

    TEST_CASE("streams are reproducible and split independently of consumption")
    {
        RandomStream a(42), b(42);
        for (int i = 0; i < 10; ++i)
            CHECK(a.normal() == b.normal());
        RandomStream c(42);
        const RandomStream child_fresh = c.split(7);
        for (int i = 0; i < 5; ++i)
            c.uniform();
        RandomStream x = child_fresh, y = c.split(7);
        CHECK(x.uniform() == y.uniform());
        CHECK(RandomStream(42).split(1).uniform() != RandomStream(42).split(2).uniform());
    }
}
