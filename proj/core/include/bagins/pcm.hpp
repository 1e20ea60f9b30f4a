#pragma once

// Pairwise comparison data model: linguistic judgments, numerical scales and
// the positive reciprocal matrices realized from them.

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bagins {

inline constexpr int kGradeCount = 9;

/// Intensity grade of a linguistic label, 1 (indifference) through 9 (extreme dominance).
class Grade {
public:
    /// Throws InputError when `value` is outside 1..9.
    explicit Grade(int value);

    constexpr int value() const noexcept { return value_; }
    constexpr bool is_indifference() const noexcept { return value_ == 1; }

    friend constexpr auto operator<=>(Grade, Grade) = default;

private:
    int value_;
};

struct LinguisticLabel {
    Grade grade;
    std::string name;
};

/// Display names for the nine grades. Names are presentation only; grades are the contract.
class LabelSet {
public:
    explicit LabelSet(std::array<std::string, kGradeCount> names);

    /// Saaty's verbal scale.
    static LabelSet saaty();

    const std::string& name(Grade g) const { return names_[static_cast<std::size_t>(g.value() - 1)]; }
    LinguisticLabel label(Grade g) const { return {g, name(g)}; }

private:
    std::array<std::string, kGradeCount> names_;
};

enum class Direction { i_over_j, j_over_i };

const char* to_string(Direction d) noexcept;
/// Accepts "i_over_j" / "j_over_i"; nullopt otherwise.
std::optional<Direction> direction_from_string(std::string_view s) noexcept;

/// One comparison of the unordered pair (i, j), stored with i < j.
/// Indifference judgments are always stored as i_over_j.
class Judgment {
public:
    /// Throws InputError when i == j ("diagonal pair not allowed") or i > j.
    Judgment(std::size_t i, std::size_t j, Grade grade, Direction direction);

    std::size_t i() const noexcept { return i_; }
    std::size_t j() const noexcept { return j_; }
    Grade grade() const noexcept { return grade_; }
    Direction direction() const noexcept { return direction_; }

    /// Same pair, direction reversed (indifference unchanged).
    Judgment flipped() const;

    friend bool operator==(const Judgment&, const Judgment&) = default;

private:
    std::size_t i_;
    std::size_t j_;
    Grade grade_;
    Direction direction_;
};

/// A decision-maker's complete set of judgments over n alternatives.
/// Structural invariants are checked by validate_pcm, not on construction.
struct LinguisticPCM {
    std::string id;
    std::size_t n = 0;
    std::vector<std::string> items;
    std::vector<Judgment> judgments;

    friend bool operator==(const LinguisticPCM&, const LinguisticPCM&) = default;
};

std::vector<std::string> default_item_names(std::size_t n);

struct Violation {
    std::string message;
    std::optional<std::pair<std::size_t, std::size_t>> pair;
};

struct ValidationResult {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    /// All messages joined by "; ".
    std::string summary() const;
};

/// Reports every structural violation. Never throws.
ValidationResult validate_pcm(const LinguisticPCM& pcm);

constexpr std::size_t required_judgments(std::size_t n) noexcept { return n * (n - 1) / 2; }

struct ScaleBounds {
    double eps_gap = 0.01;
    double v_max = 9.0;
};

/// Numeric value for each of the nine grades. Invariants: v1 == 1,
/// v(k+1) >= v(k) + eps_gap, v9 <= v_max. Enforced on construction.
class ScaleAssignment {
public:
    explicit ScaleAssignment(const std::array<double, kGradeCount>& values, ScaleBounds bounds = {});

    /// v_k = k.
    static ScaleAssignment saaty();

    /// Empty when `values` satisfies the invariants under `bounds`.
    static std::vector<std::string> check(const std::array<double, kGradeCount>& values,
                                          ScaleBounds bounds);

    double value(Grade g) const noexcept { return values_[static_cast<std::size_t>(g.value() - 1)]; }
    const std::array<double, kGradeCount>& values() const noexcept { return values_; }
    ScaleBounds bounds() const noexcept { return bounds_; }

    /// Sum of |v_k - k|: distance from the fixed Saaty scale.
    double distance_from_saaty() const noexcept;

    friend bool operator==(const ScaleAssignment& a, const ScaleAssignment& b) {
        return a.values_ == b.values_;
    }

private:
    std::array<double, kGradeCount> values_;
    ScaleBounds bounds_;
};

/// Positive reciprocal n x n matrix, row-major.
class NumericPCM {
public:
    /// Throws InputError unless entries are positive, the diagonal is 1 and
    /// a_ij * a_ji == 1 within 1e-12 relative.
    NumericPCM(std::size_t n, std::vector<double> entries);

    /// a_ij = w_i / w_j. Weights must be positive.
    static NumericPCM from_weights(std::span<const double> weights);
    static NumericPCM ones(std::size_t n);

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * n_ + j]; }
    std::span<const double> data() const noexcept { return a_; }
    std::span<const double> row(std::size_t i) const noexcept { return {a_.data() + i * n_, n_}; }

    /// Entry (i, j) of the result is entry (perm[i], perm[j]) of this matrix.
    NumericPCM permuted(std::span<const std::size_t> perm) const;
    NumericPCM transposed() const;

    /// a_ij * a_jk == a_ik for all triples, within `rel_tol`.
    bool is_consistent(double rel_tol = 1e-9) const;

private:
    std::size_t n_;
    std::vector<double> a_;
};

/// Numeric matrix of `pcm` under `scale`. Throws InputError when the PCM is invalid.
NumericPCM realize(const LinguisticPCM& pcm, const ScaleAssignment& scale);

}  // namespace bagins
