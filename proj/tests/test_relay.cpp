#include <doctest.h>

#include <cmath>

#include "fg/codes.hpp"
#include "fg/oracle.hpp"
#include "fg/relay.hpp"

using namespace fg;

namespace {

RelayConfig small_cfg(std::uint64_t seed) {
    RelayConfig cfg;
    cfg.num_sets = 30;
    cfg.stop_nconv = 20;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("RelayConfig validation and kv round-trip") {
    RelayConfig cfg;
    cfg.gamma_min = 0.2;
    cfg.gamma_max = 0.1;
    CHECK_THROWS(cfg.validate());

    RelayConfig good = RelayConfig::baseline_defaults();
    good.seed = 99;
    good.gamma_min = -0.19;
    good.gamma_max = 0.26;
    auto back = RelayConfig::from_kv(good.to_kv());
    CHECK(back.gamma0 == good.gamma0);
    CHECK(back.gamma_min == good.gamma_min);
    CHECK(back.gamma_max == good.gamma_max);
    CHECK(back.pre_iter == good.pre_iter);
    CHECK(back.set_max_iter == good.set_max_iter);
    CHECK(back.num_sets == good.num_sets);
    CHECK(back.stop_nconv == good.stop_nconv);
    CHECK(back.seed == good.seed);

    CHECK(RelayConfig::forced_defaults().num_sets == 25);
    CHECK(RelayConfig::baseline_defaults().num_sets == 1201);
    CHECK_THROWS(RelayConfig::from_kv("nonsense=1\n"));
    CHECK_THROWS(RelayConfig::from_kv("gamma0\n"));
}

TEST_CASE("sample_gammas") {
    RelayConfig cfg;
    cfg.gamma_min = cfg.gamma_max = 0.4;
    auto g = sample_gammas(cfg, 3, 10);
    for (double x : g) CHECK(x == 0.4);

    auto g0 = sample_gammas(cfg, 0, 5);
    for (double x : g0) CHECK(x == cfg.gamma0);

    cfg.gamma_min = -0.24;
    cfg.gamma_max = 0.66;
    double sum = 0;
    const int n = 100000;
    for (int leg = 1; leg <= 10; ++leg) {
        auto v = sample_gammas(cfg, leg, n / 10);
        for (double x : v) {
            CHECK(x >= cfg.gamma_min);
            CHECK(x <= cfg.gamma_max);
            sum += x;
        }
    }
    double mean = sum / n;
    double expected = (cfg.gamma_min + cfg.gamma_max) / 2;
    double sigma = (cfg.gamma_max - cfg.gamma_min) / std::sqrt(12.0 * n);
    CHECK(std::abs(mean - expected) < 3 * sigma);
}

TEST_CASE("single-check min-sum flips the least reliable variable") {
    auto h = SparseBitMatrix::from_rows(1, 2, {{0, 1}});
    std::vector<double> w = {std::log(0.9 / 0.1), std::log(0.7 / 0.3)};
    BpEngine engine(h, w, Syndrome{1});
    std::vector<double> gammas(2, 0.0);
    auto sol = engine.run_leg(gammas, 10);
    REQUIRE(sol.has_value());
    CHECK(*sol == BitVec{0, 1});
}

TEST_CASE("zero syndrome converges to the zero correction immediately") {
    auto prob = repetition_problem(5, 0.1);
    auto out = relay_decode(prob.H, prob.A, prob.priors, Syndrome(4), small_cfg(1));
    REQUIRE(out.converged);
    CHECK(out.candidates.front().correction == BitVec(5));
    CHECK(out.candidates.front().logical_class == BitVec(1));
}

TEST_CASE("rep-3 sigma=(1,0) agrees with the MLD oracle") {
    auto prob = repetition_problem(3, 0.1);
    Syndrome s{1, 0};
    auto out = relay_decode(prob.H, prob.A, prob.priors, s, small_cfg(7));
    REQUIRE(out.converged);
    CHECK(out.candidates.front().correction == BitVec{1, 0, 0});
    auto [mld_class, logp] = mld_decode(prob, s);
    CHECK(out.candidates.front().logical_class == mld_class);
    // candidate log-likelihood equals the direct formula
    CHECK(out.candidates.front().log_likelihood ==
          doctest::Approx(std::log(0.1) + 2 * std::log(0.9)).epsilon(1e-12));
}

TEST_CASE("unsatisfiable syndrome never converges") {
    auto h = SparseBitMatrix::from_rows(2, 2, {{0, 1}, {0, 1}});
    auto a = SparseBitMatrix::from_rows(1, 2, {{0}});
    std::vector<double> p = {0.1, 0.1};
    auto cfg = small_cfg(3);
    cfg.num_sets = 5;
    auto out = relay_decode(h, a, p, Syndrome{1, 0}, cfg);
    CHECK(!out.converged);
    CHECK(out.candidates.empty());
    CHECK(out.legs_run == 5);
}

TEST_CASE("candidates are valid, sorted, deduplicated, within budget") {
    auto prob = repetition_problem(5, 0.12);
    auto cfg = small_cfg(11);
    for (unsigned sv = 0; sv < 16; ++sv) {
        Syndrome s(4);
        for (unsigned i = 0; i < 4; ++i) s.set(i, (sv >> i) & 1);
        auto out = relay_decode(prob.H, prob.A, prob.priors, s, cfg);
        CHECK(out.legs_run <= cfg.num_sets);
        CHECK(out.candidates.size() <= cfg.stop_nconv);
        for (std::size_t i = 0; i < out.candidates.size(); ++i) {
            const auto& c = out.candidates[i];
            CHECK(mat_vec_mul(prob.H, c.correction) == s);
            CHECK(c.log_likelihood == doctest::Approx(log_likelihood(prob, c.correction)));
            if (i > 0) CHECK(out.candidates[i - 1].log_likelihood >= c.log_likelihood);
            for (std::size_t j = i + 1; j < out.candidates.size(); ++j)
                CHECK(c.correction != out.candidates[j].correction);
        }
    }
}

TEST_CASE("determinism in config seed") {
    auto prob = repetition_phenom_problem(5, 3, 0.05, 0.05);
    Syndrome s(prob.num_detectors());
    s.set(1, true);
    s.set(6, true);
    auto a = relay_decode(prob.H, prob.A, prob.priors, s, small_cfg(123));
    auto b = relay_decode(prob.H, prob.A, prob.priors, s, small_cfg(123));
    REQUIRE(a.candidates.size() == b.candidates.size());
    for (std::size_t i = 0; i < a.candidates.size(); ++i) {
        CHECK(a.candidates[i].correction == b.candidates[i].correction);
        CHECK(a.candidates[i].log_likelihood == b.candidates[i].log_likelihood);
        CHECK(a.candidates[i].leg_index == b.candidates[i].leg_index);
    }
    CHECK(a.legs_run == b.legs_run);
}

TEST_CASE("zero-probability faults are pinned off") {
    auto h = SparseBitMatrix::from_rows(1, 2, {{0, 1}});
    auto a = SparseBitMatrix::from_rows(1, 2, {{0}});
    std::vector<double> p = {0.0, 0.2};
    auto out = relay_decode(h, a, p, Syndrome{1}, small_cfg(5));
    REQUIRE(out.converged);
    CHECK(out.candidates.front().correction == BitVec{0, 1});
}
