#include <doctest.h>

#include <cmath>
#include <numbers>

#include "shrinkrisk/linmodel.hpp"
#include "shrinkrisk/rmt.hpp"

using namespace shrinkrisk;

TEST_CASE("support edges") {
    const MPLaw law(0.25);
    CHECK(law.a == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(law.b == doctest::Approx(2.25).epsilon(1e-14));
    for (double t : {0.1, 0.5, 0.9}) {
        const MPLaw l(t);
        CHECK(l.a * l.b == doctest::Approx(std::pow(1.0 - t, 2)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(MPLaw(0.0), std::invalid_argument);
    CHECK_THROWS_AS(MPLaw(1.0), std::invalid_argument);
}

TEST_CASE("density vanishes off the support and is positive inside") {
    const MPLaw law(0.5);
    CHECK(mp_density(law.a - 0.01, 0.5) == 0.0);
    CHECK(mp_density(law.b + 0.01, 0.5) == 0.0);
    CHECK(mp_density(0.0, 0.5) == 0.0);
    CHECK(mp_density(1.0, 0.5) > 0.0);
    CHECK(mp_density((law.a + law.b) / 2.0, 0.5) > 0.0);
}

TEST_CASE("density integrates to one with unit mean") {
    for (double t : {0.1, 0.25, 0.5, 0.9}) {
        CHECK(mp_mass_quadrature(t) == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(mp_mean_quadrature(t) == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("tabulated CDF") {
    const MPCdf cdf(0.5);
    const MPLaw law(0.5);
    CHECK(cdf(law.a - 1.0) == 0.0);
    CHECK(cdf(law.b + 1.0) == 1.0);
    CHECK(cdf(law.b) == doctest::Approx(1.0).epsilon(1e-10));
    // monotone
    double prev = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double x = law.a + (law.b - law.a) * i / 100.0;
        const double v = cdf(x);
        CHECK(v >= prev - 1e-15);
        prev = v;
    }
    // cross-check one interior value against direct quadrature of the density
    const double x0 = 1.0;
    double acc = 0.0;
    const int steps = 200000;
    for (int i = 0; i < steps; ++i) {
        const double lo = law.a + (x0 - law.a) * i / steps;
        const double hi = law.a + (x0 - law.a) * (i + 1) / steps;
        acc += 0.5 * (mp_density(lo, 0.5) + mp_density(hi, 0.5)) * (hi - lo);
    }
    CHECK(cdf(x0) == doctest::Approx(acc).epsilon(1e-3));
}

TEST_CASE("inverse-square integral identity") {
    SUBCASE("closed form across aspect ratios") {
        using std::numbers::pi;
        CHECK(lemma_b1(0.25).closed == doctest::Approx(2.0 * pi / 3.0).epsilon(1e-12));
        CHECK(lemma_b1(0.0).closed == 0.0);
        CHECK(std::isinf(lemma_b1(1.0).closed));
        CHECK(!lemma_b1(1.0).quadrature.has_value());
    }
    SUBCASE("quadrature matches the closed form") {
        for (double t : {0.1, 0.25, 0.5, 0.9}) {
            const LemmaB1Result r = lemma_b1(t);
            REQUIRE(r.quadrature.has_value());
            CHECK(std::abs(*r.quadrature - r.closed) <= 1e-8);
        }
    }
}

TEST_CASE("spectrum diagnostics") {
    SUBCASE("hand-built spectrum") {
        VectorXd spec(2);
        spec << 2.0, 8.0;
        const SpectrumReport rep = spectrum_diagnostics(spec, 4, 2);
        CHECK(rep.inv_sum == doctest::Approx(0.625).epsilon(1e-14));
        CHECK(rep.max_over_n == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(rep.min_over_n == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(rep.inv_sum_target == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(rep.target_max == doctest::Approx(std::pow(1.0 + std::sqrt(0.5), 2)));
        CHECK(rep.target_min == doctest::Approx(std::pow(1.0 - std::sqrt(0.5), 2)));
    }
    SUBCASE("a zero eigenvalue gives an infinite inverse sum") {
        VectorXd spec(2);
        spec << 0.0, 5.0;
        CHECK(std::isinf(spectrum_diagnostics(spec, 4, 2).inv_sum));
    }
    SUBCASE("sampled Gaussian design at n = 2000") {
        const int n = 2000, p = 1000;
        const DesignMatrix d =
            sample_design(n, p, MatrixXd::Identity(p, p), EntryLaw::standard_normal, 31);
        const SpectrumReport rep =
            spectrum_diagnostics(d.spectrum * static_cast<double>(n), n, p);
        CHECK(std::abs(rep.inv_sum - rep.inv_sum_target) <= 0.05 * rep.inv_sum_target);
        CHECK(std::abs(rep.max_over_n - rep.target_max) <= 0.10 * rep.target_max);
        CHECK(std::abs(rep.min_over_n - rep.target_min) <= 0.10 * rep.target_min);
        CHECK(rep.ks_distance < 0.05);
    }
}
