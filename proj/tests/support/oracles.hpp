#pragma once

// Test-only oracles and generators. Nothing here calls into the power
// iteration or the scale search; they are the independent side of each check.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "bagins/pcm.hpp"

namespace bagins::testing {

struct Eigen3 {
    double lambda;
    std::array<double, 3> w;  // sums to 1
};

// Principal eigenpair of a positive 3x3 matrix from its characteristic
// polynomial lambda^3 - t lambda^2 + s lambda - d. Newton from above the
// largest row sum decreases monotonically onto the largest real root; the
// eigenvector is the cross product of two rows of (A - lambda I).
inline Eigen3 characteristic_eigen3(const std::array<std::array<double, 3>, 3>& a) {
    const double t = a[0][0] + a[1][1] + a[2][2];
    const double s = a[0][0] * a[1][1] - a[0][1] * a[1][0] + a[0][0] * a[2][2] - a[0][2] * a[2][0] +
                     a[1][1] * a[2][2] - a[1][2] * a[2][1];
    const double d = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                     a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                     a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    double x = 1.0;
    for (const auto& row : a) x = std::max(x, row[0] + row[1] + row[2]);
    x += 1.0;
    for (int it = 0; it < 200; ++it) {
        const double p = ((x - t) * x + s) * x - d;
        const double dp = (3 * x - 2 * t) * x + s;
        const double next = x - p / dp;
        if (std::abs(next - x) <= 1e-15 * x) {
            x = next;
            break;
        }
        x = next;
    }
    const std::array<double, 3> r0{a[0][0] - x, a[0][1], a[0][2]};
    const std::array<double, 3> r1{a[1][0], a[1][1] - x, a[1][2]};
    std::array<double, 3> v{r0[1] * r1[2] - r0[2] * r1[1], r0[2] * r1[0] - r0[0] * r1[2],
                            r0[0] * r1[1] - r0[1] * r1[0]};
    const double sum = v[0] + v[1] + v[2];
    for (double& e : v) e /= sum;
    return {x, v};
}

inline std::array<std::array<double, 3>, 3> as_array3(const NumericPCM& m) {
    std::array<std::array<double, 3>, 3> a{};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) a[i][j] = m(i, j);
    return a;
}

// Saaty ladder {1/9..1/2, 1, 2..9}.
inline double random_saaty_value(std::mt19937_64& gen) {
    std::uniform_int_distribution<int> pick(-8, 8);
    const int k = pick(gen);
    return k >= 0 ? k + 1.0 : 1.0 / (1.0 - k);
}

inline NumericPCM random_reciprocal(std::size_t n, std::mt19937_64& gen, bool continuous = false) {
    std::uniform_real_distribution<double> log_ratio(-std::log(9.0), std::log(9.0));
    std::vector<double> a(n * n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = continuous ? std::exp(log_ratio(gen)) : random_saaty_value(gen);
            a[i * n + j] = v;
            a[j * n + i] = 1.0 / v;
        }
    }
    return NumericPCM(n, std::move(a));
}

inline std::vector<double> random_weights(std::size_t n, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<double> w(n);
    for (double& x : w) x = u(gen);
    const double s = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& x : w) x /= s;
    return w;
}

// Random complete PCM; grades drawn from `grades`, directions random.
inline LinguisticPCM random_pcm(std::size_t n, const std::vector<int>& grades, std::mt19937_64& gen,
                                std::string id = "rand") {
    std::uniform_int_distribution<std::size_t> pick(0, grades.size() - 1);
    std::bernoulli_distribution coin(0.5);
    LinguisticPCM pcm{std::move(id), n, default_item_names(n), {}};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            pcm.judgments.emplace_back(i, j, Grade(grades[pick(gen)]),
                                       coin(gen) ? Direction::i_over_j : Direction::j_over_i);
        }
    }
    return pcm;
}

inline std::vector<double> experiment_weights() {
    std::vector<double> w(9);
    for (int i = 0; i < 9; ++i) w[static_cast<std::size_t>(i)] = (i + 1) / 45.0;
    return w;
}

// True weights of the dots (10..90) and bottle-mass (50..450 g) experiments, 4 decimals.
inline constexpr std::array<double, 9> kExperimentWeightsRounded = {0.0222, 0.0444, 0.0667, 0.0889, 0.1111,
                                                         0.1333, 0.1556, 0.1778, 0.2000};

}  // namespace bagins::testing
