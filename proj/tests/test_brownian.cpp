#include "ascal/brownian.hpp"

#include "ascal/fields.hpp"

#include <doctest.h>

#include <cmath>

using namespace ascal;

TEST_CASE("paths start at zero and are bit-identical for identical seeds") {
    const BrownianPath a = sample_path(1e-3, 2.0, 42);
    const BrownianPath b = sample_path(1e-3, 2.0, 42);
    CHECK(a.values[0] == 0.0);
    CHECK(a.values.size() == 2001);
    CHECK(a.values == b.values);
    const BrownianPath c = sample_path(1e-3, 2.0, 43);
    CHECK(a.values != c.values);
}

TEST_CASE("terminal variance over many seeds matches the horizon within 3 SE") {
    const int n = 100000;
    const double T = 0.7;
    double sum = 0, sum2 = 0;
    for (int i = 0; i < n; ++i) {
        const BrownianPath p = sample_path(T / 8, T, static_cast<std::uint64_t>(i) + 1);
        const double w = p.values.back();
        sum += w;
        sum2 += w * w;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    // sample variance of a normal: SE ~ var * sqrt(2/n)
    const double se = T * std::sqrt(2.0 / n);
    CHECK(std::abs(var - T) < 3 * se);
}

TEST_CASE("bridge refinement keeps coarse values and has the right conditional spread") {
    const BrownianPath p = sample_path(0.01, 1.0, 7);
    const BrownianPath f = refine_path(p);
    CHECK(f.dt == doctest::Approx(0.005));
    CHECK(f.values.size() == 2 * p.values.size() - 1);
    for (std::size_t i = 0; i < p.values.size(); ++i) CHECK(f.values[2 * i] == p.values[i]);

    // midpoint residuals are N(0, dt/4): check the sample variance crudely
    double sum2 = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i + 1 < p.values.size(); ++i) {
        const double resid = f.values[2 * i + 1] - 0.5 * (p.values[i] + p.values[i + 1]);
        sum2 += resid * resid;
        ++n;
    }
    const double var = sum2 / static_cast<double>(n);
    CHECK(var == doctest::Approx(0.01 / 4).epsilon(0.5));
}

TEST_CASE("event membership: trivial acceptance and pointwise violation") {
    BrownianPath p = sample_path(0.1, 1.0, 5);
    for (auto& v : p.values) v = 0.0;  // flat path stays under alpha + beta t
    const EventSpec e{0.5, 1.0, 1.0};
    CHECK(event_membership(p, e, false).in_event);
    CHECK(event_membership(p, e, true).in_event);

    p.values[4] = 2.0;  // nu W = 2 > alpha + beta*0.4 = 0.9
    const auto r = event_membership(p, e, false);
    CHECK(!r.in_event);
    CHECK(*r.first_violation == doctest::Approx(0.4));
}

TEST_CASE("bridge correction only removes paths") {
    const EventSpec e{1.0, 1.0, 1.2};
    int plain = 0, bridged = 0;
    for (int i = 0; i < 2000; ++i) {
        const BrownianPath p = sample_path(0.01, 3.0, 1000 + static_cast<std::uint64_t>(i));
        const bool a = event_membership(p, e, false).in_event;
        const bool b = event_membership(p, e, true).in_event;
        if (b) CHECK(a);  // bridge acceptance implies pointwise acceptance
        plain += a;
        bridged += b;
    }
    CHECK(bridged <= plain);
    CHECK(bridged > 0);
}

TEST_CASE("closed-form probability values and monotone structure") {
    CHECK(event_probability({1.0, 1.0, std::sqrt(2.0)}) == doctest::Approx(0.6321206).epsilon(1e-6));
    CHECK(event_probability({1.0, 0.45, 1.0}) == doctest::Approx(0.5934303).epsilon(1e-6));
    // nu -> 0+ approaches certainty
    CHECK(event_probability({1.0, 1.0, 1e-8}) == doctest::Approx(1.0));
    // strictly increasing in alpha and beta, decreasing in nu
    const EventSpec base{0.8, 0.6, 1.1};
    CHECK(event_probability(base) > 0.0);
    CHECK(event_probability(base) < 1.0);
    CHECK(event_probability({0.9, 0.6, 1.1}) > event_probability(base));
    CHECK(event_probability({0.8, 0.7, 1.1}) > event_probability(base));
    CHECK(event_probability({0.8, 0.6, 1.3}) < event_probability(base));
}

TEST_CASE("huge drift makes the event nearly certain in Monte Carlo") {
    const EventSpec e{1.0, 100.0, 1.0};
    const auto r = mc_event_probability(e, 2000, 1e-3, 1.0, true, 99);
    CHECK(r.estimate > 0.99);
}

TEST_CASE("mc estimate is scheduling-order independent and reproducible") {
    const EventSpec e{1.0, 1.0, 1.0};
    const auto a = mc_event_probability(e, 4000, 1e-2, 5.0, true, 123);
    const auto b = mc_event_probability(e, 4000, 1e-2, 5.0, true, 123);
    CHECK(a.n_in_event == b.n_in_event);
    CHECK(a.estimate == b.estimate);
}

TEST_CASE("mc with bridge approaches the closed form within tolerance") {
    const EventSpec e{1.0, 1.0, std::sqrt(2.0)};
    const auto r = mc_event_probability(e, 20000, 1e-3, 12.0, true, 2024);
    const double target = event_probability(e);
    CHECK(r.truncation_bound < 1e-3);
    CHECK(std::abs(r.estimate - target) <= 3 * r.std_error + r.truncation_bound);
}
