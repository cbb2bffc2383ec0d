#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "fg/codes.hpp"
#include "fg/harness.hpp"
#include "fg/svgplot.hpp"

using namespace fg;

namespace {

ExperimentConfig small_experiment(std::size_t shots, std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.baseline.num_sets = 30;
    cfg.baseline.stop_nconv = 20;
    cfg.forced.num_sets = 10;
    cfg.forced.stop_nconv = 20;
    cfg.n_shots = shots;
    cfg.master_seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("sample_shot statistics and structure") {
    auto prob = repetition_problem(3, 0.1);
    Rng rng(99);
    std::size_t weight = 0;
    const std::size_t n = 100000;
    for (std::size_t i = 0; i < n; ++i) {
        auto [f, s, cls] = sample_shot(prob, rng);
        CHECK(mat_vec_mul(prob.H, f) == s);
        CHECK(mat_vec_mul(prob.A, f) == cls);
        weight += f.popcount();
    }
    double mean = static_cast<double>(weight) / n;
    double sigma = std::sqrt(3 * 0.1 * 0.9 / n);
    CHECK(std::abs(mean - 0.3) < 3 * sigma);

    auto zero = DecodingProblem::make(prob.H, prob.A, {0.0, 0.0, 0.0});
    auto [f, s, cls] = sample_shot(zero, rng);
    CHECK(!f.any());
    CHECK(!s.any());
}

TEST_CASE("run_experiment determinism across worker counts") {
    auto prob = repetition_problem(5, 0.08);
    auto cfg1 = small_experiment(200, 7);
    cfg1.worker_count = 1;
    auto cfg8 = cfg1;
    cfg8.worker_count = 8;
    auto r1 = run_experiment(prob, cfg1);
    auto r8 = run_experiment(prob, cfg8);
    std::ostringstream s1, s8;
    write_records_csv(s1, r1);
    write_records_csv(s8, r8);
    CHECK(s1.str() == s8.str());
    CHECK_THROWS(run_experiment(prob, ExperimentConfig{.n_shots = 0}));
}

TEST_CASE("records CSV round-trip") {
    auto prob = repetition_problem(5, 0.1);
    auto records = run_experiment(prob, small_experiment(50, 3));
    std::ostringstream out;
    write_records_csv(out, records);
    std::istringstream in(out.str());
    auto back = read_records_csv(in);
    REQUIRE(back.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(back[i].shot_index == records[i].shot_index);
        CHECK(back[i].shot_seed == records[i].shot_seed);
        CHECK(back[i].gap == records[i].gap);
        CHECK(back[i].erasure == records[i].erasure);
        CHECK(back[i].success == records[i].success);
        CHECK(back[i].forced_converged == records[i].forced_converged);
        CHECK(back[i].decoded_class.has_value() == records[i].decoded_class.has_value());
    }
    std::istringstream bad("wrong,header\n");
    CHECK_THROWS(read_records_csv(bad));
}

TEST_CASE("sweep_thresholds accounting") {
    auto prob = repetition_problem(5, 0.1);
    auto records = run_experiment(prob, small_experiment(500, 11));

    double inf = std::numeric_limits<double>::infinity();
    auto curve = sweep_thresholds(records, {0.0, 1e-9, 1.0, 3.0, inf}, 1);
    REQUIRE(curve.size() == 5);

    // T = 0 accepts everything, erasures count as failures
    CHECK(curve[0].ps_rate == 0.0);
    CHECK(curve[0].n_accepted == records.size());
    std::size_t failures = 0, erasures = 0;
    for (const auto& r : records) {
        if (!r.success) ++failures;
        if (r.erasure) ++erasures;
    }
    CHECK(curve[0].ler == doctest::Approx(static_cast<double>(failures) / records.size()));

    // monotone: ps_rate non-decreasing, n_accepted non-increasing
    for (std::size_t i = 1; i < curve.size(); ++i) {
        CHECK(curve[i].ps_rate >= curve[i - 1].ps_rate);
        CHECK(curve[i].n_accepted <= curve[i - 1].n_accepted);
    }
    // just above 0: all erasures and exact-zero gaps rejected
    std::size_t zero_gap = 0;
    for (const auto& r : records)
        if (r.gap == 0.0) ++zero_gap;
    CHECK(curve[1].ps_rate == doctest::Approx(static_cast<double>(zero_gap) / records.size()));
    // T = inf keeps only infinite-gap shots
    std::size_t inf_gap = 0;
    for (const auto& r : records)
        if (std::isinf(r.gap)) ++inf_gap;
    CHECK(curve[4].n_accepted == inf_gap);

    CHECK(curve[0].ci_low <= curve[0].ler);
    CHECK(curve[0].ler <= curve[0].ci_high);

    CHECK_THROWS(sweep_thresholds({}, {0.0}, 1));
    CHECK_THROWS(sweep_thresholds(records, {1.0, 0.5}, 1));
    CHECK_THROWS(sweep_thresholds(records, {-1.0}, 1));
}

TEST_CASE("per_round_ler") {
    CHECK(per_round_ler(0.0, 6) == 0.0);
    CHECK(per_round_ler(0.37, 1) == 0.37);
    CHECK(per_round_ler(0.006, 6) == doctest::Approx(1.0025e-3).epsilon(1e-4));
    // inverts
    double x = per_round_ler(0.006, 6);
    CHECK(1.0 - std::pow(1.0 - x, 6) == doctest::Approx(0.006).epsilon(1e-12));
    CHECK_THROWS(per_round_ler(1.2, 6));
    CHECK_THROWS(per_round_ler(0.5, 0));
}

TEST_CASE("wilson_ci") {
    auto [l0, h0] = wilson_ci(0, 100);
    CHECK(l0 == 0.0);
    CHECK(h0 == doctest::Approx(0.0370).epsilon(2e-3));

    auto [l5, h5] = wilson_ci(50, 100);
    CHECK((l5 + h5) / 2 == doctest::Approx(0.5).epsilon(1e-9));

    auto [ln, hn] = wilson_ci(100, 100);
    CHECK(hn == 1.0);

    auto [la, ha] = wilson_ci(3, 10);
    CHECK(la <= 0.3);
    CHECK(0.3 <= ha);
    CHECK_THROWS(wilson_ci(1, 0));
    CHECK_THROWS(wilson_ci(5, 4));
}

TEST_CASE("curve serialization") {
    CurvePoint p;
    p.threshold = 1.5;
    p.ps_rate = 0.01;
    p.ler = 0.001;
    p.ler_per_round = 0.0005;
    p.ci_low = 0.0008;
    p.ci_high = 0.0012;
    p.n_accepted = 990;
    CurvePoint q = p;
    q.threshold = std::numeric_limits<double>::infinity();
    std::ostringstream out;
    write_curve_csv(out, {p, q});
    auto text = out.str();
    CHECK(text.find("T,ps_rate,ler") == 0);
    CHECK(text.find("inf,") != std::string::npos);

    auto json = curve_to_json({p, q});
    CHECK(json.find("\"ps_rate\"") != std::string::npos);
    CHECK(json.find("\"inf\"") != std::string::npos);

    auto svg = curve_to_svg({p, q});
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("polyline") != std::string::npos);
}
