#include "fdside/model.hpp"
#include "fdside/random.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

using namespace fdside;
using Catch::Approx;

TEST_CASE("cap is log2(1 + x)")
{
    CHECK(cap(0.0) == 0.0);
    CHECK(cap(1.0) == Approx(1.0).epsilon(1e-15));
    CHECK(cap(3.0) == Approx(2.0).epsilon(1e-15));
    CHECK(cap(1e-20) > 0.0);
    CHECK_THROWS_AS(cap(-1e-3), DomainError);
    CHECK_THROWS_AS(cap(std::numeric_limits<double>::quiet_NaN()), DomainError);
    CHECK_THROWS_AS(cap(std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("side_cap convention at zero bandwidth")
{
    for (double x : {0.0, 1e-9, 5.0, 1e6, 1e300})
        CHECK(side_cap(0.0, x) == 0.0);
    CHECK(side_cap(1.0, 3.0) == Approx(2.0).epsilon(1e-15));
    CHECK(side_cap(2.0, 2.0) == Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(side_cap(-1.0, 1.0), DomainError);
    CHECK_THROWS_AS(side_cap(1.0, -1.0), DomainError);
}

TEST_CASE("side_cap is continuous at w = 0 and approaches x / ln 2 for wide bands")
{
    for (double x : {1.0, 10.0, 1e3, 1e6})
        CHECK(std::abs(side_cap(1e-9, x)) < 1e-7);
    CHECK(side_cap(1e9, 1.0) == Approx(1.0 / std::log(2.0)).epsilon(1e-6));
}

TEST_CASE("cap and side_cap are monotone; side_cap is midpoint concave in x")
{
    DrawRng rng(11, 0);
    for (int i = 0; i < 2000; ++i) {
        const double w = rng.uniform(0.0, 4.0);
        const double a = rng.log_uniform_db(-30.0, 60.0);
        const double b = rng.log_uniform_db(-30.0, 60.0);
        const double lo = std::min(a, b), hi = std::max(a, b);
        CHECK(cap(lo) <= cap(hi));
        CHECK(side_cap(w, lo) <= side_cap(w, hi));
        CHECK(side_cap(w, a) <= side_cap(w + rng.uniform(0.0, 1.0), a) + 1e-12);
        CHECK(side_cap(w, 0.5 * (a + b)) >= 0.5 * (side_cap(w, a) + side_cap(w, b)) - 1e-12);
    }
}

TEST_CASE("regime classification with ties going to the stronger regime")
{
    CHECK(classify_regime({10, 10, 5, 0, 0}) == Regime::Weak);
    CHECK(classify_regime({10, 10, 50, 0, 0}) == Regime::Strong);
    CHECK(classify_regime({10, 10, 120, 0, 0}) == Regime::VeryStrong);
    CHECK(classify_regime({10, 10, 10, 0, 0}) == Regime::Strong);
    CHECK(classify_regime({10, 10, 110, 0, 0}) == Regime::VeryStrong);
    CHECK(classify_regime({10, 10, std::nextafter(10.0, 0.0), 0, 0}) == Regime::Weak);
    CHECK(classify_regime({10, 10, std::nextafter(110.0, 0.0), 0, 0}) == Regime::Strong);
    CHECK(to_string(Regime::VeryStrong) == "very-strong");
}

TEST_CASE("dB conversions")
{
    CHECK(db_to_linear(15.0) == Approx(31.6228).epsilon(1e-5));
    CHECK(db_to_linear(0.0) == 1.0);
    CHECK(linear_to_db(100.0) == Approx(20.0).epsilon(1e-15));
    for (double db : {-40.0, -3.0, 0.5, 17.0, 60.0, 120.0})
        CHECK(linear_to_db(db_to_linear(db)) == Approx(db).epsilon(1e-12).margin(1e-12));
    CHECK_THROWS_AS(linear_to_db(0.0), DomainError);
    CHECK_THROWS_AS(linear_to_db(-1.0), DomainError);
}

TEST_CASE("value-type validation")
{
    CHECK_NOTHROW(ChannelParams{0, 0, 0, 0, 0}.validate());
    CHECK_THROWS_AS((ChannelParams{-1, 0, 0, 0, 0}.validate()), DomainError);
    CHECK_THROWS_AS((ChannelParams{1, 1, std::numeric_limits<double>::infinity(), 0, 0}.validate()), DomainError);
    CHECK_THROWS_AS((ChannelParams{1, 1, 1, 1, std::numeric_limits<double>::quiet_NaN()}.validate()), DomainError);
    CHECK_THROWS_AS((PowerSplit{1.5, 0}.validate()), DomainError);
    CHECK_THROWS_AS((PowerSplit{0.5, -0.1}.validate()), DomainError);
    CHECK_THROWS_AS((EcScale{-1}.validate()), DomainError);
    CHECK(PowerSplit{0.25, 0.5}.lambda_bar() == 0.75);
}

TEST_CASE("draw streams are reproducible and independent of order")
{
    DrawRng a(42, 7), b(42, 7), c(42, 8);
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x != c.uniform());
    DrawRng d(1, 0);
    for (int i = 0; i < 1000; ++i) {
        const double u = d.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const double g = d.log_uniform_db(0.0, 60.0);
        CHECK(g >= 1.0);
        CHECK(g <= 1e6 * (1 + 1e-12));
    }
}
