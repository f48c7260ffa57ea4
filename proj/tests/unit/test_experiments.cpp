#include <catch_amalgamated.hpp>

#include <otfs/experiments.hpp>
#include <otfs/metrics.hpp>

#include <cmath>

using namespace otfs;

TEST_CASE("exact-source reconstruction of the closed-loop oscillator", "[experiments][vdp]") {
    const auto report = experiments::run_vdp_ftc();
    CHECK(report.runs.size() == 4);
    CHECK(report.avg_rmse <= 1e-8);
    CHECK(report.trajectories.size() == 8);
}

TEST_CASE("tuned width is at least as accurate as c = 1 on the 25-point set", "[experiments][vdp][tuning]") {
    const auto tuned = experiments::run_vdp_surrogate();
    experiments::Settings fixed;
    fixed.fixed_c = 1.0;
    const auto untuned = experiments::run_vdp_surrogate(fixed);
    REQUIRE(tuned.variants.size() == 3);
    REQUIRE(untuned.variants.size() == 3);
    CHECK(tuned.variants[2].name == "D3");
    CHECK(tuned.variants[2].avg_rmse <= untuned.variants[2].avg_rmse);
    CHECK_FALSE(untuned.variants[2].loocv_objective.has_value());
    CHECK(tuned.variants[2].loocv_objective.has_value());
}

TEST_CASE("experiments are deterministic", "[experiments][determinism]") {
    const auto a = experiments::run_vdp_param();
    const auto b = experiments::run_vdp_param();
    CHECK(a.avg_rmse == b.avg_rmse);
    CHECK(a.variants[0].c == b.variants[0].c);
    REQUIRE(a.runs.size() == 8);
    for (std::size_t i = 0; i < a.runs.size(); ++i)
        CHECK(a.runs[i].metrics.per_state_rmse == b.runs[i].metrics.per_state_rmse);
}

TEST_CASE("small mass-spring-damper study", "[experiments][msd]") {
    experiments::Settings s;
    s.runs = 4;
    s.snapshots = 40;
    s.fixed_c = 2.0;
    s.keep_trajectories = 1;
    const auto report = experiments::run_msd(s);
    CHECK(report.runs.size() == 4);
    CHECK(report.rmse_samples.size() == 40);
    CHECK(report.trajectories.size() == 2);
    REQUIRE(report.kde.has_value());
    CHECK(std::abs(trapezoid(report.kde->grid, report.kde->density) - 1.0) <= 1e-3);
    CHECK(report.statistics.at("rmse_median") <= report.statistics.at("rmse_p90"));
    for (const auto& r : report.runs) CHECK(r.x0.tail(5).isZero(0.0));

    s.runs = 0;
    CHECK_THROWS(experiments::run_msd(s));
    CHECK_THROWS(experiments::run("nope"));
}
