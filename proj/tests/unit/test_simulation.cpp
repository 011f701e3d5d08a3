#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "stepdown/constants.hpp"
#include "stepdown/scenarios.hpp"
#include "stepdown/simulation.hpp"

using namespace stepdown;

namespace {

ControlParams params(int s, double alpha, Rational gamma = Rational(1, 10)) {
    ControlParams p;
    p.s = s;
    p.alpha = alpha;
    p.gamma = gamma;
    return p;
}

const char* const kKeys[] = {"p_fdp_gt_gamma", "fdr", "kfwer", "mean_rejections",
                             "thm32_bound"};

}  // namespace

TEST_CASE("simulation reports every metric and echoes its inputs") {
    const auto sc = make_independent(10, 5, AltLaw{});
    const auto seq = holm_constants(params(10, 0.05));
    const auto rep = run(sc, seq, StepMode::stepdown, 500, 7, 2);
    CHECK(rep.trials == 500);
    CHECK(rep.seed == 7);
    CHECK(rep.workers == 2);
    CHECK(rep.mode == StepMode::stepdown);
    for (const char* key : kKeys) {
        REQUIRE(rep.estimates.count(key) == 1);
        const auto& e = rep.estimates.at(key);
        CHECK(std::isfinite(e.mean));
        CHECK(e.se >= 0.0);
    }
}

TEST_CASE("same seed gives bitwise-identical reports") {
    const auto sc = make_example31(0.05);
    const auto seq = fdp_base_constants(params(100, 0.05));
    const auto a = run(sc, seq, StepMode::stepdown, 3000, 99, 1);
    const auto b = run(sc, seq, StepMode::stepdown, 3000, 99, 1);
    for (const char* key : kKeys) {
        CHECK(a.estimates.at(key).mean == b.estimates.at(key).mean);
        CHECK(a.estimates.at(key).se == b.estimates.at(key).se);
    }
    const auto c = run(sc, seq, StepMode::stepdown, 3000, 100, 1);
    CHECK(c.estimates.at("p_fdp_gt_gamma").mean != a.estimates.at("p_fdp_gt_gamma").mean);
}

TEST_CASE("worker count never changes the estimates") {
    const auto sc = make_equicorrelated(30, 15, 0.25, 2.0);
    const auto seq = fdp_improved_constants(params(30, 0.05));
    // spans multiple dispatch blocks (block size 4096) plus a ragged tail
    const auto one = run(sc, seq, StepMode::stepdown, 9000, 2024, 1);
    const auto four = run(sc, seq, StepMode::stepdown, 9000, 2024, 4);
    const auto eight = run(sc, seq, StepMode::stepdown, 9000, 2024, 8);
    for (const char* key : kKeys) {
        CHECK(one.estimates.at(key).mean == four.estimates.at(key).mean);
        CHECK(one.estimates.at(key).se == four.estimates.at(key).se);
        CHECK(one.estimates.at(key).mean == eight.estimates.at(key).mean);
    }
    // more workers than trials is fine too
    const auto tiny1 = run(sc, seq, StepMode::stepdown, 5, 1, 1);
    const auto tiny8 = run(sc, seq, StepMode::stepdown, 5, 1, 8);
    CHECK(tiny1.estimates.at("mean_rejections").mean ==
          tiny8.estimates.at("mean_rejections").mean);
}

TEST_CASE("degenerate scenario with no true nulls has zero FDR and full rejection") {
    // every p-value is a point mass at zero, so each trial rejects all 5
    const auto sc = make_independent(5, 0, AltLaw{});
    const auto seq = holm_constants(params(5, 0.05));
    const auto rep = run(sc, seq, StepMode::stepdown, 200, 3, 2);
    CHECK(rep.estimates.at("fdr").mean == 0.0);
    CHECK(rep.estimates.at("fdr").se == 0.0);
    CHECK(rep.estimates.at("p_fdp_gt_gamma").mean == 0.0);
    CHECK(rep.estimates.at("kfwer").mean == 0.0);
    CHECK(rep.estimates.at("mean_rejections").mean == 5.0);
    CHECK(rep.estimates.at("mean_rejections").se == 0.0);
    CHECK(rep.estimates.at("thm32_bound").mean == 0.0);
}

TEST_CASE("example31 frequency matches the analytic union probability") {
    const double alpha = 0.05;
    const auto sc = make_example31(alpha);
    const auto seq = fdp_base_constants(params(100, alpha));
    const auto rep = run(sc, seq, StepMode::stepdown, 30000, 12345, 4);
    const double target =
        90.0 * (alpha / 92.0 + (2.0 * alpha / 91.0 - alpha / 92.0) / 2.0);
    const auto& est = rep.estimates.at("p_fdp_gt_gamma");
    CHECK(std::fabs(est.mean - target) < 4.0 * std::sqrt(target * (1 - target) / 30000));
    // the theorem-style bound event contains the union event here
    CHECK(rep.estimates.at("thm32_bound").mean >= est.mean);
}

TEST_CASE("holm keeps the familywise error near its nominal bound") {
    const auto sc = make_independent(20, 20, AltLaw{});
    const auto seq = holm_constants(params(20, 0.05));
    const auto rep = run(sc, seq, StepMode::stepdown, 20000, 5, 4);
    const auto& kf = rep.estimates.at("kfwer");
    CHECK(kf.mean <= 0.05 + 4.0 * std::max(kf.se, 1e-4));
    CHECK(kf.mean > 0.02);  // not vacuous: P{min p <= alpha/20} ~ 0.049
}

TEST_CASE("stepup mode: all-null BH has FDR equal to alpha") {
    const auto sc = make_independent(25, 25, AltLaw{});
    const auto seq = bh_stepup_constants(params(25, 0.05));
    const auto rep = run(sc, seq, StepMode::stepup, 30000, 777, 4);
    const auto& fdr = rep.estimates.at("fdr");
    CHECK(std::fabs(fdr.mean - 0.05) < 4.0 * std::sqrt(0.05 * 0.95 / 30000));
}

TEST_CASE("event standard errors follow the binomial formula") {
    const auto sc = make_independent(10, 10, AltLaw{});
    const auto seq = holm_constants(params(10, 0.2));
    const auto rep = run(sc, seq, StepMode::stepdown, 5000, 11, 3);
    const auto& kf = rep.estimates.at("kfwer");
    CHECK(kf.se ==
          doctest::Approx(std::sqrt(kf.mean * (1.0 - kf.mean) / 5000)).epsilon(1e-12));
}

TEST_CASE("run() validates its arguments") {
    const auto sc = make_independent(10, 5, AltLaw{});
    const auto seq = holm_constants(params(10, 0.05));
    CHECK_THROWS_AS(run(sc, seq, StepMode::stepdown, 0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(run(sc, seq, StepMode::stepdown, 100, 1, 0), std::invalid_argument);
    const auto wrong = holm_constants(params(9, 0.05));
    CHECK_THROWS_AS(run(sc, wrong, StepMode::stepdown, 100, 1, 1), std::invalid_argument);
}
