#include <doctest.h>

#include <json.hpp>
#include <random>

#include "bagins/errors.hpp"
#include "bagins/individualize.hpp"
#include "bagins/random_index.hpp"
#include "support/oracles.hpp"

using namespace bagins;

namespace {

const RandomIndexTable& ri() { return RandomIndexTable::builtin(); }

LinguisticPCM pcm3(int g01, int g02, int g12) {
    return {"t", 3, default_item_names(3),
            {{0, 1, Grade(g01), Direction::i_over_j},
             {0, 2, Grade(g02), Direction::i_over_j},
             {1, 2, Grade(g12), Direction::i_over_j}}};
}

LinguisticPCM flip_all(LinguisticPCM pcm) {
    for (auto& jd : pcm.judgments) jd = jd.flipped();
    return pcm;
}

void check_scale_invariants(const ScaleAssignment& s, const IndividualizationConfig& cfg) {
    const auto& v = s.values();
    CHECK(v[0] == 1.0);
    for (std::size_t k = 1; k < v.size(); ++k) CHECK(v[k] - v[k - 1] >= cfg.eps_gap - 1e-12);
    CHECK(v[8] <= cfg.v_max + 1e-12);
}

}  // namespace

TEST_CASE("objective names") {
    CHECK(objective_from_string("cr") == Objective::cr);
    CHECK(objective_from_string("ci") == Objective::ci);
    CHECK(objective_from_string("lambda_max_gap") == Objective::lambda_max_gap);
    CHECK_FALSE(objective_from_string("CR").has_value());
}

TEST_CASE("objective measures agree with an independent 3x3 eigen oracle") {
    const auto pcm = pcm3(2, 3, 2);
    const auto scale = ScaleAssignment({1, 1.8, 3.3, 4, 5, 6, 7, 8, 9});
    const auto m = realize(pcm, scale);
    const double lambda = testing::characteristic_eigen3(testing::as_array3(m)).lambda;
    const double ci = (lambda - 3) / 2;

    IndividualizationConfig cfg;
    cfg.objective = Objective::lambda_max_gap;
    CHECK(objective(pcm, scale, cfg, ri()) == doctest::Approx(lambda - 3).epsilon(1e-8));
    cfg.objective = Objective::ci;
    CHECK(objective(pcm, scale, cfg, ri()) == doctest::Approx(ci).epsilon(1e-8));
    cfg.objective = Objective::cr;
    CHECK(objective(pcm, scale, cfg, ri()) == doctest::Approx(ci / ri().at(3)).epsilon(1e-8));
}

TEST_CASE("n = 2 has zero objective and keeps the Saaty scale") {
    const LinguisticPCM pcm{"two", 2, default_item_names(2), {{0, 1, Grade(7), Direction::j_over_i}}};
    const auto r = individualize_scale(pcm, {}, ri());
    CHECK(r.objective_value == 0.0);
    CHECK(r.scale == ScaleAssignment::saaty());
    CHECK(r.improvement == 0.0);
}

TEST_CASE("already consistent under Saaty: unchanged") {
    const auto r = individualize_scale(pcm3(2, 4, 2), {}, ri());
    CHECK(r.baseline_objective == 0.0);
    CHECK(r.objective_value == 0.0);
    CHECK(r.improvement == 0.0);
    CHECK(r.scale == ScaleAssignment::saaty());
}

TEST_CASE("all indifference: unchanged") {
    LinguisticPCM pcm{"ones", 5, default_item_names(5), {}};
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j) pcm.judgments.emplace_back(i, j, Grade(1), Direction::i_over_j);
    const auto r = individualize_scale(pcm, {}, ri());
    CHECK(r.objective_value == 0.0);
    CHECK(r.scale == ScaleAssignment::saaty());
}

TEST_CASE("a repairable 3x3 is driven to near-zero inconsistency") {
    // 2 * 2 should equal 3: any scale with v3 = v2^2 is consistent.
    const auto pcm = pcm3(2, 3, 2);
    const auto r = individualize_scale(pcm, {}, ri());
    CHECK(r.baseline_objective > 0.0);
    CHECK(r.objective_value < 1e-4);
    CHECK(r.improvement == doctest::Approx(r.baseline_objective - r.objective_value));
    const auto& v = r.scale.values();
    CHECK(v[2] == doctest::Approx(v[1] * v[1]).epsilon(0.02));
    CHECK(r.evaluations > 0);
    REQUIRE_FALSE(r.trace.empty());
    for (std::size_t t = 1; t < r.trace.size(); ++t) CHECK(r.trace[t].objective <= r.trace[t - 1].objective);
    CHECK(r.trace.back().objective == r.objective_value);
}

TEST_CASE("config validation") {
    IndividualizationConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.step_schedule = {0.5, 1.0};
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg = {};
    cfg.step_schedule = {};
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg = {};
    cfg.eps_gap = 0;
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg = {};
    cfg.v_max = 8;
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg = {};
    cfg.max_passes = 0;
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg = {};
    cfg.v_max = 12;
    CHECK_NOTHROW(cfg.validate());
    CHECK_THROWS_AS(individualize_scale(pcm3(2, 3, 2), IndividualizationConfig{.eps_gap = -1}, ri()), InputError);
}

TEST_CASE("config json") {
    const auto cfg = IndividualizationConfig::from_json(
        R"({"objective":"ci","step_schedule":[0.5,0.1],"eps_gap":0.02,"v_max":11,"max_passes":5})");
    CHECK(cfg.objective == Objective::ci);
    CHECK(cfg.step_schedule == std::vector<double>{0.5, 0.1});
    CHECK(cfg.eps_gap == 0.02);
    CHECK(cfg.v_max == 11);
    CHECK(cfg.max_passes == 5);
    const auto back = IndividualizationConfig::from_json(cfg.to_json());
    CHECK(back.to_json() == cfg.to_json());
    CHECK(IndividualizationConfig::from_json("{}").to_json() == IndividualizationConfig{}.to_json());
    CHECK_THROWS_AS(IndividualizationConfig::from_json(R"({"stepsize":1})"), InputError);
    CHECK_THROWS_AS(IndividualizationConfig::from_json(R"({"objective":"gap"})"), InputError);
}

TEST_CASE("result json shape") {
    const auto r = individualize_scale(pcm3(2, 3, 2), {}, ri());
    const auto doc = nlohmann::json::parse(result_to_json(r, "p7"));
    CHECK(doc.at("id") == "p7");
    CHECK(doc.at("scale").size() == 9);
    CHECK(doc.at("objective").get<double>() == r.objective_value);
    CHECK(doc.at("baseline").get<double>() == r.baseline_objective);
    CHECK(doc.at("improvement").get<double>() == r.improvement);
    CHECK(doc.at("evaluations").get<long>() == r.evaluations);
}

TEST_CASE("oracle argument checks") {
    std::mt19937_64 gen(3);
    const auto wide = testing::random_pcm(6, {2, 3, 4, 5, 6}, gen);
    // Force five distinct grades.
    auto pcm = wide;
    pcm.judgments[0] = Judgment(0, 1, Grade(2), Direction::i_over_j);
    pcm.judgments[1] = Judgment(0, 2, Grade(3), Direction::i_over_j);
    pcm.judgments[2] = Judgment(0, 3, Grade(4), Direction::i_over_j);
    pcm.judgments[3] = Judgment(0, 4, Grade(5), Direction::i_over_j);
    pcm.judgments[4] = Judgment(0, 5, Grade(6), Direction::i_over_j);
    CHECK_THROWS_WITH_AS(oracle_grid_search(pcm, 0.25, {}, ri()),
                         doctest::Contains("too many distinct grades for enumeration"), InputError);
    CHECK_THROWS_AS(oracle_grid_search(pcm3(2, 3, 2), 0.1, {}, ri()), InputError);
}

TEST_CASE("oracle finds the consistent lattice point of a repairable 3x3") {
    // v2 = 2, v3 = 4 is on the 0.25 lattice and gives zero inconsistency.
    const auto o = oracle_grid_search(pcm3(2, 3, 2), 0.25, {}, ri());
    CHECK(o.objective_value < 1e-12);
    CHECK(o.scale.values()[1] * o.scale.values()[1] == doctest::Approx(o.scale.values()[2]));
    check_scale_invariants(o.scale, {});
}

TEST_CASE("property: objective never exceeds baseline and scales stay feasible") {
    std::mt19937_64 gen(555);
    const IndividualizationConfig cfg;
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 3 + static_cast<std::size_t>(trial % 5);
        const auto pcm = testing::random_pcm(n, {1, 2, 3, 4, 5, 6, 7, 8, 9}, gen);
        const auto r = individualize_scale(pcm, cfg, ri());
        CHECK(r.objective_value <= r.baseline_objective);
        CHECK(r.improvement >= 0.0);
        CHECK(r.objective_value == doctest::Approx(objective(pcm, r.scale, cfg, ri())).epsilon(1e-12));
        check_scale_invariants(r.scale, cfg);
    }
}

TEST_CASE("property: idempotent and deterministic") {
    std::mt19937_64 gen(909);
    const IndividualizationConfig cfg;
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 3 + static_cast<std::size_t>(trial % 5);
        const auto pcm = testing::random_pcm(n, {1, 2, 3, 5, 7, 9}, gen);
        const auto first = individualize_scale(pcm, cfg, ri());
        const auto again = individualize_scale(pcm, cfg, ri());
        CHECK(first.scale == again.scale);
        CHECK(first.objective_value == again.objective_value);
        CHECK(first.evaluations == again.evaluations);

        const auto rerun = individualize_scale(pcm, cfg, ri(), first.scale);
        CHECK(rerun.scale == first.scale);
        CHECK(rerun.objective_value == first.objective_value);
    }
}

TEST_CASE("property: flipping every judgment leaves the objective and result unchanged") {
    std::mt19937_64 gen(1001);
    const IndividualizationConfig cfg;
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 3 + static_cast<std::size_t>(trial % 5);
        const auto pcm = testing::random_pcm(n, {1, 2, 4, 6, 8}, gen);
        const auto flipped = flip_all(pcm);
        const auto scale = ScaleAssignment({1, 1.5, 2.6, 4.4, 5, 6.1, 7.7, 8, 9});
        CHECK(objective(flipped, scale, cfg, ri()) ==
              doctest::Approx(objective(pcm, scale, cfg, ri())).epsilon(1e-10));
        const auto a = individualize_scale(pcm, cfg, ri());
        const auto b = individualize_scale(flipped, cfg, ri());
        CHECK(b.objective_value == doctest::Approx(a.objective_value).epsilon(1e-9).scale(1e-12));
    }
}

TEST_CASE("property: heuristic is no worse than the grid oracle on small instances") {
    std::mt19937_64 gen(2718);
    const IndividualizationConfig cfg;
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 3 + static_cast<std::size_t>(trial % 2);
        const auto pcm = testing::random_pcm(n, {1, 2, 3, 5}, gen);
        const auto r = individualize_scale(pcm, cfg, ri());
        const auto o = oracle_grid_search(pcm, 0.5, cfg, ri());
        CHECK(r.objective_value <= o.objective_value + std::max(0.05 * o.objective_value, 1e-3));
    }
}

TEST_CASE("objective of a contradictory n=4 PCM equals the realized CR") {
    // 0 > 1 > 2 > 3 except that 3 beats 0.
    const LinguisticPCM pcm{"c4", 4, default_item_names(4),
                            {{0, 1, Grade(3), Direction::i_over_j},
                             {0, 2, Grade(5), Direction::i_over_j},
                             {0, 3, Grade(3), Direction::j_over_i},
                             {1, 2, Grade(3), Direction::i_over_j},
                             {1, 3, Grade(5), Direction::i_over_j},
                             {2, 3, Grade(3), Direction::i_over_j}}};
    const auto scale = ScaleAssignment::saaty();
    const double value = objective(pcm, scale, {}, ri());
    CHECK(value > 0.0);
    CHECK(value == doctest::Approx(consistency(realize(pcm, scale), ri()).cr).epsilon(1e-14));

    const auto h = individualize_scale(pcm, {}, ri());
    const auto o = oracle_grid_search(pcm, 0.25, {}, ri());
    CHECK(h.objective_value < value);
    CHECK(h.objective_value <= o.objective_value + std::max(0.05 * o.objective_value, 1e-3));
}

TEST_CASE("a single grade used consistently keeps its Saaty value") {
    // Item 0 beats 1 and 2 by the same grade; 1 and 2 are equal.
    for (int g = 2; g <= 9; ++g) {
        const LinguisticPCM pcm{"star", 3, default_item_names(3),
                                {{0, 1, Grade(g), Direction::i_over_j},
                                 {0, 2, Grade(g), Direction::i_over_j},
                                 {1, 2, Grade(1), Direction::i_over_j}}};
        const auto o = oracle_grid_search(pcm, 0.25, {}, ri());
        CHECK(o.objective_value < 1e-12);
        CHECK(o.scale.values()[static_cast<std::size_t>(g - 1)] == static_cast<double>(g));
        const auto h = individualize_scale(pcm, {}, ri());
        CHECK(h.scale == ScaleAssignment::saaty());
        CHECK(h.improvement == 0.0);
    }
}

TEST_CASE("oracle on an all-indifference PCM returns the default scale") {
    LinguisticPCM pcm{"ones", 4, default_item_names(4), {}};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) pcm.judgments.emplace_back(i, j, Grade(1), Direction::i_over_j);
    const auto o = oracle_grid_search(pcm, 0.25, {}, ri());
    CHECK(o.objective_value == 0.0);
    CHECK(o.scale == ScaleAssignment::saaty());
}
