#include "fixtures.hpp"

#include "ordest/montecarlo.hpp"
#include "ordest/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace ordest;
using doctest::Approx;

namespace {

struct Moments {
    double mean, var, se_mean, se_var;
};

Moments moments(const std::vector<double>& x) {
    const double n = static_cast<double>(x.size());
    double m = 0;
    for (double v : x) m += v;
    m /= n;
    double m2 = 0, m4 = 0;
    for (double v : x) {
        const double d = (v - m) * (v - m);
        m2 += d;
        m4 += d * d;
    }
    m2 /= n;
    m4 /= n;
    return {m, m2 * n / (n - 1), std::sqrt(m2 / n), std::sqrt((m4 - m2 * m2) / n)};
}

}  // namespace

TEST_CASE("type-II reduction: examples") {
    ReducedPopulation p = reduce_type2({TypeIIScheme{5, 3}, {1, 2, 3}});
    CHECK(p.x_min == 1.0);
    CHECK(p.t == 7.0);
    CHECK(p.effective_shape == 3);
    CHECK(p.rate == 5.0);

    p = reduce_type2({TypeIIScheme{3, 3}, {1, 2, 3}});
    const ReducedPopulation c = reduce_complete({CompleteScheme{3}, {1, 2, 3}});
    CHECK(p.x_min == c.x_min);
    CHECK(p.t == c.t);
    CHECK(p.effective_shape == c.effective_shape);
    CHECK(p.rate == c.rate);

    p = reduce_type2({TypeIIScheme{4, 2}, {2, 2}});
    CHECK(p.t == 0.0);
    const SufficientStats s = make_stats(p, c);
    CHECK(fixtures::error_code_of([&] { s.validate(); }) == ErrorCode::DegenerateSample);
}

TEST_CASE("type-II plan errors") {
    CHECK(fixtures::error_code_of([] { reduce_type2({TypeIIScheme{5, 1}, {1}}); }) ==
          ErrorCode::InvalidCensoringPlan);
    CHECK(fixtures::error_code_of([] { reduce_type2({TypeIIScheme{2, 3}, {1, 2, 3}}); }) ==
          ErrorCode::InvalidCensoringPlan);
    CHECK(fixtures::error_code_of([] { reduce_type2({TypeIIScheme{5, 3}, {1, 3, 2}}); }) ==
          ErrorCode::InvalidCensoringPlan);
}

TEST_CASE("progressive reduction: examples") {
    ReducedPopulation p = reduce_progressive({ProgressiveScheme{{1, 1}, 4}, {1, 2}});
    CHECK(p.x_min == 1.0);
    CHECK(p.t == 2.0);
    CHECK(p.effective_shape == 2);
    CHECK(p.rate == 4.0);

    p = reduce_progressive({ProgressiveScheme{{0, 0, 0}, 0}, {1, 2, 3}});
    CHECK(p.t == 3.0);
    CHECK(p.effective_shape == 3);
    CHECK(p.rate == 3.0);

    p = reduce_progressive({ProgressiveScheme{{2, 0}, 4}, {1, 1}});
    CHECK(p.t == 0.0);

    CHECK(fixtures::error_code_of([] {
              reduce_progressive({ProgressiveScheme{{1, 1}, 7}, {1, 2}});
          }) == ErrorCode::InvalidCensoringPlan);
    CHECK(fixtures::error_code_of([] {
              reduce_progressive({ProgressiveScheme{{1, -1}, 0}, {1, 2}});
          }) == ErrorCode::InvalidCensoringPlan);
}

TEST_CASE("records reduction: examples") {
    ReducedPopulation p = reduce_records({RecordsScheme{3}, {1.0, 1.5, 2.5}});
    CHECK(p.x_min == 1.0);
    CHECK(p.t == 1.5);
    CHECK(p.effective_shape == 3);
    CHECK(p.rate == 1.0);

    p = reduce_records({RecordsScheme{0}, {0.3, 0.9}});
    CHECK(p.x_min == 0.3);
    CHECK(p.t == Approx(0.6));
    CHECK(p.effective_shape == 2);

    CHECK(fixtures::error_code_of([] { reduce_records({RecordsScheme{0}, {2, 1, 3}}); }) ==
          ErrorCode::NotRecordSequence);
}

TEST_CASE("scheme designs") {
    CHECK(scheme_design(CompleteScheme{6}) == PopulationDesign{6, 6.0});
    CHECK(scheme_design(TypeIIScheme{10, 6}) == PopulationDesign{6, 10.0});
    CHECK(scheme_design(ProgressiveScheme{{1, 0, 2, 0, 2}, 0}) == PopulationDesign{5, 10.0});
    CHECK(scheme_design(RecordsScheme{5}) == PopulationDesign{5, 1.0});
    CHECK(scheme_name(RecordsScheme{5}) == "records");
}

TEST_CASE("make_stats keeps scheme rates") {
    const ReducedPopulation a = reduce_type2({TypeIIScheme{5, 3}, {1, 2, 3}});
    const ReducedPopulation b = reduce_records({RecordsScheme{3}, {1.0, 1.5, 2.5}});
    const SufficientStats s = make_stats(a, b);
    CHECK(s.n1 == 3);
    CHECK(s.n2 == 3);
    CHECK(s.exp_rate1() == 5.0);
    CHECK(s.exp_rate2() == 1.0);
    // Squared-error BAEE multiplier is 1 / (rate * shape).
    CHECK(estimate_mu1(EstimatorKind::BAEE, s, LossSpec::squared()).phi_used ==
          Approx(1.0 / 15));
}

TEST_CASE("distributional calibration of each scheme") {
    const double mu = 0.7, sigma = 2.0;
    const int draws = 100000;
    const std::vector<std::pair<Scheme, double>> cases{
        {CompleteScheme{6}, 6.0},
        {TypeIIScheme{10, 6}, 10.0},
        {ProgressiveScheme{{1, 0, 2, 0, 2}, 0}, 10.0},
        {RecordsScheme{5}, 1.0},
    };
    for (const auto& [scheme, rate] : cases) {
        CAPTURE(scheme_name(scheme));
        std::vector<double> t(draws), x(draws);
        int shape = 0;
        for (int i = 0; i < draws; ++i) {
            RngStream rng(55, static_cast<std::uint64_t>(i));
            const ReducedPopulation p = draw_population(mu, sigma, scheme, rng);
            t[static_cast<std::size_t>(i)] = p.t / sigma;
            x[static_cast<std::size_t>(i)] = p.x_min;
            shape = p.effective_shape;
        }
        const Moments mt = moments(t), mx = moments(x);
        CHECK(std::abs(mt.mean - (shape - 1)) <= 3 * mt.se_mean);
        CHECK(std::abs(mt.var - (shape - 1)) <= 3 * mt.se_var);
        CHECK(std::abs(mx.mean - (mu + sigma / rate)) <= 3 * mx.se_mean);
    }
}

TEST_CASE("physical censoring agrees with the spacing sampler") {
    // Simulate a progressive test unit by unit and compare the law of T.
    const ProgressiveScheme plan{{1, 0, 2, 0, 2}, 0};
    const int draws = 40000;
    std::vector<double> t_phys(draws);
    for (int i = 0; i < draws; ++i) {
        RngStream rng(66, static_cast<std::uint64_t>(i));
        std::vector<double> alive(static_cast<std::size_t>(plan.total()));
        for (double& v : alive) v = rng.exponential();
        std::vector<double> obs;
        for (int j = 0; j < plan.observed(); ++j) {
            std::sort(alive.begin(), alive.end());
            obs.push_back(alive.front());
            alive.erase(alive.begin());
            // Withdraw survivors at random.
            for (int r = 0; r < plan.removals[static_cast<std::size_t>(j)]; ++r) {
                const auto k = static_cast<std::size_t>(rng.uniform() * alive.size());
                alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(k));
            }
        }
        t_phys[static_cast<std::size_t>(i)] = reduce_progressive({plan, obs}).t;
    }
    const Moments m = moments(t_phys);
    CHECK(std::abs(m.mean - 4.0) <= 3 * m.se_mean);
    CHECK(std::abs(m.var - 4.0) <= 3 * m.se_var);
}
