#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "bagins/errors.hpp"
#include "bagins/pcm.hpp"
#include "support/oracles.hpp"

using namespace bagins;

namespace {

LinguisticPCM make_pcm(std::size_t n, std::vector<Judgment> judgments) {
    return {"t", n, default_item_names(n), std::move(judgments)};
}

LinguisticPCM example_242() {
    return make_pcm(3, {{0, 1, Grade(2), Direction::i_over_j},
                        {0, 2, Grade(4), Direction::i_over_j},
                        {1, 2, Grade(2), Direction::i_over_j}});
}

LinguisticPCM all_indifferent(std::size_t n) {
    LinguisticPCM pcm = make_pcm(n, {});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pcm.judgments.emplace_back(i, j, Grade(1), Direction::i_over_j);
    return pcm;
}

}  // namespace

TEST_CASE("grade range") {
    CHECK_NOTHROW(Grade(1));
    CHECK_NOTHROW(Grade(9));
    CHECK_THROWS_AS(Grade(0), InputError);
    CHECK_THROWS_WITH_AS(Grade(10), doctest::Contains("label grade out of range"), InputError);
}

TEST_CASE("labels carry nine display names") {
    const auto labels = LabelSet::saaty();
    CHECK(labels.name(Grade(1)) == "Equally");
    CHECK(labels.name(Grade(9)) == "Extremely");
    CHECK(labels.label(Grade(5)).grade == Grade(5));
}

TEST_CASE("judgment invariants") {
    CHECK_THROWS_WITH_AS(Judgment(1, 1, Grade(2), Direction::i_over_j), doctest::Contains("diagonal pair not allowed"),
                         InputError);
    CHECK_THROWS_AS(Judgment(2, 1, Grade(2), Direction::i_over_j), InputError);

    SUBCASE("indifference is normalized to i_over_j") {
        const Judgment jd(0, 1, Grade(1), Direction::j_over_i);
        CHECK(jd.direction() == Direction::i_over_j);
        CHECK(jd == Judgment(0, 1, Grade(1), Direction::i_over_j));
    }
    SUBCASE("flip") {
        const Judgment jd(0, 1, Grade(3), Direction::i_over_j);
        CHECK(jd.flipped().direction() == Direction::j_over_i);
        CHECK(jd.flipped().flipped() == jd);
    }
}

TEST_CASE("validate_pcm") {
    SUBCASE("n=9 with 36 judgments is ok") {
        const auto pcm = all_indifferent(9);
        CHECK(pcm.judgments.size() == 36);
        CHECK(validate_pcm(pcm).ok());
    }
    SUBCASE("missing pair is reported with indices") {
        const auto pcm = make_pcm(3, {{0, 1, Grade(2), Direction::i_over_j}, {0, 2, Grade(2), Direction::i_over_j}});
        const auto v = validate_pcm(pcm);
        REQUIRE_FALSE(v.ok());
        const bool found = std::any_of(v.violations.begin(), v.violations.end(), [](const Violation& x) {
            return x.message == "missing pair (1,2)" && x.pair == std::pair<std::size_t, std::size_t>{1, 2};
        });
        CHECK(found);
    }
    SUBCASE("duplicate pair") {
        auto pcm = example_242();
        pcm.judgments[1] = Judgment(0, 1, Grade(3), Direction::i_over_j);
        const auto v = validate_pcm(pcm);
        REQUIRE_FALSE(v.ok());
        CHECK(v.summary().find("duplicate pair (0,1)") != std::string::npos);
        CHECK(v.summary().find("missing pair (0,2)") != std::string::npos);
    }
    SUBCASE("n below 2") {
        CHECK_FALSE(validate_pcm(make_pcm(1, {})).ok());
    }
    SUBCASE("item count mismatch") {
        auto pcm = example_242();
        pcm.items.pop_back();
        CHECK_FALSE(validate_pcm(pcm).ok());
    }
    SUBCASE("index beyond n") {
        auto pcm = example_242();
        pcm.judgments[2] = Judgment(1, 3, Grade(2), Direction::i_over_j);
        CHECK(validate_pcm(pcm).summary().find("index out of range") != std::string::npos);
    }
}

TEST_CASE("scale assignment invariants") {
    CHECK_NOTHROW(ScaleAssignment::saaty());
    CHECK_THROWS_AS(ScaleAssignment({1.5, 2, 3, 4, 5, 6, 7, 8, 9}), InputError);
    CHECK_THROWS_AS(ScaleAssignment({1, 2, 2.005, 4, 5, 6, 7, 8, 9}), InputError);
    CHECK_THROWS_AS(ScaleAssignment({1, 2, 3, 4, 5, 6, 7, 8, 9.5}), InputError);
    CHECK_NOTHROW(ScaleAssignment({1, 2, 3, 4, 5, 6, 7, 8, 9.5}, {0.01, 10.0}));
    CHECK_NOTHROW(ScaleAssignment({1, 1.01, 1.02, 1.03, 1.04, 1.05, 1.06, 1.07, 1.08}));
    CHECK(ScaleAssignment::saaty().distance_from_saaty() == 0.0);
}

TEST_CASE("numeric pcm invariants") {
    CHECK_NOTHROW(NumericPCM(2, {1, 2, 0.5, 1}));
    CHECK_THROWS_AS(NumericPCM(2, {1, 2, 0.4, 1}), InputError);
    CHECK_THROWS_AS(NumericPCM(2, {2, 2, 0.5, 1}), InputError);
    CHECK_THROWS_AS(NumericPCM(2, {1, -1, -1, 1}), InputError);
    CHECK_THROWS_AS(NumericPCM(2, {1, 2, 0.5}), InputError);

    const auto w = testing::experiment_weights();
    const auto m = NumericPCM::from_weights(w);
    CHECK(m.is_consistent());
    CHECK(NumericPCM::ones(4).is_consistent());
    CHECK_FALSE(NumericPCM(3, {1, 2, 4, 0.5, 1, 3, 0.25, 1.0 / 3, 1}).is_consistent());
}

TEST_CASE("realize") {
    SUBCASE("indifference everywhere gives all ones") {
        const auto m = realize(all_indifferent(5), ScaleAssignment::saaty());
        for (double a : m.data()) CHECK(a == 1.0);
    }
    SUBCASE("direct substitution under the Saaty scale") {
        const auto m = realize(example_242(), ScaleAssignment::saaty());
        CHECK(m(0, 1) == 2.0);
        CHECK(m(0, 2) == 4.0);
        CHECK(m(1, 2) == 2.0);
        CHECK(m(1, 0) == 0.5);
        CHECK(m(2, 0) == 0.25);
        CHECK(m(2, 1) == 0.5);
        CHECK(m.is_consistent());
    }
    SUBCASE("v2 = 3 substitutes 3") {
        const auto m = realize(example_242(), ScaleAssignment({1, 3, 3.5, 4, 5, 6, 7, 8, 9}));
        CHECK(m(0, 1) == 3.0);
        CHECK(m(0, 2) == 4.0);
    }
    SUBCASE("j_over_i puts the value below the diagonal") {
        const auto m = realize(make_pcm(2, {{0, 1, Grade(5), Direction::j_over_i}}), ScaleAssignment::saaty());
        CHECK(m(1, 0) == 5.0);
        CHECK(m(0, 1) == doctest::Approx(0.2));
    }
    SUBCASE("invalid pcm is rejected") {
        auto pcm = example_242();
        pcm.judgments.pop_back();
        CHECK_THROWS_AS(realize(pcm, ScaleAssignment::saaty()), InputError);
    }
}

TEST_CASE("property: realized matrices are positive reciprocal") {
    std::mt19937_64 gen(20240601);
    std::uniform_int_distribution<std::size_t> dim(2, 9);
    std::uniform_real_distribution<double> gap(0.01, 1.2);
    for (int trial = 0; trial < 300; ++trial) {
        const auto pcm = testing::random_pcm(dim(gen), {1, 2, 3, 4, 5, 6, 7, 8, 9}, gen);
        std::array<double, 9> v{1};
        for (std::size_t k = 1; k < 9; ++k) v[k] = v[k - 1] + gap(gen);
        const ScaleAssignment scale(v, {0.01, 20.0});
        const auto m = realize(pcm, scale);
        for (std::size_t i = 0; i < m.size(); ++i) {
            CHECK(m(i, i) == 1.0);
            for (std::size_t j = 0; j < m.size(); ++j) {
                CHECK(m(i, j) > 0);
                CHECK(m(i, j) * m(j, i) == doctest::Approx(1.0).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("property: realize is permutation-equivariant") {
    std::mt19937_64 gen(77);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 3 + static_cast<std::size_t>(trial % 7);
        const auto pcm = testing::random_pcm(n, {1, 2, 3, 5, 7, 9}, gen);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), gen);

        // Relabel: new item a is old item perm[a].
        std::vector<std::size_t> inverse(n);
        for (std::size_t a = 0; a < n; ++a) inverse[perm[a]] = a;
        LinguisticPCM relabeled{"p", n, default_item_names(n), {}};
        for (const auto& jd : pcm.judgments) {
            std::size_t a = inverse[jd.i()], b = inverse[jd.j()];
            auto dir = jd.direction();
            if (a > b) {
                std::swap(a, b);
                dir = dir == Direction::i_over_j ? Direction::j_over_i : Direction::i_over_j;
            }
            relabeled.judgments.emplace_back(a, b, jd.grade(), dir);
        }
        const auto scale = ScaleAssignment({1, 1.7, 2.9, 4.2, 5, 6.5, 7, 8.1, 9});
        const auto expected = realize(pcm, scale).permuted(perm);
        const auto actual = realize(relabeled, scale);
        for (std::size_t k = 0; k < n * n; ++k) CHECK(actual.data()[k] == doctest::Approx(expected.data()[k]));
    }
}
