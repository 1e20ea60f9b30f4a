#include "bagins/pcm.hpp"

#include <cmath>
#include <sstream>

#include "bagins/errors.hpp"

namespace bagins {

namespace {

constexpr double kReciprocityTol = 1e-12;
// Slack for scale invariants; candidate values are produced by floating-point
// arithmetic on neighbouring grades.
constexpr double kScaleSlack = 1e-12;

std::string pair_text(std::size_t i, std::size_t j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

Grade::Grade(int value) : value_(value) {
    if (value < 1 || value > kGradeCount) {
        throw InputError("label grade out of range: " + std::to_string(value));
    }
}

LabelSet::LabelSet(std::array<std::string, kGradeCount> names) : names_(std::move(names)) {}

LabelSet LabelSet::saaty() {
    return LabelSet({"Equally", "Equally to moderately", "Moderately", "Moderately to strongly",
                     "Strongly", "Strongly to very strongly", "Very strongly",
                     "Very strongly to extremely", "Extremely"});
}

const char* to_string(Direction d) noexcept {
    return d == Direction::i_over_j ? "i_over_j" : "j_over_i";
}

std::optional<Direction> direction_from_string(std::string_view s) noexcept {
    if (s == "i_over_j") return Direction::i_over_j;
    if (s == "j_over_i") return Direction::j_over_i;
    return std::nullopt;
}

Judgment::Judgment(std::size_t i, std::size_t j, Grade grade, Direction direction)
    : i_(i), j_(j), grade_(grade), direction_(grade.is_indifference() ? Direction::i_over_j : direction) {
    if (i == j) throw InputError("diagonal pair not allowed: " + pair_text(i, j));
    if (i > j) throw InputError("pair " + pair_text(i, j) + " not in upper triangle (need i < j)");
}

Judgment Judgment::flipped() const {
    const auto d = direction_ == Direction::i_over_j ? Direction::j_over_i : Direction::i_over_j;
    return Judgment(i_, j_, grade_, d);
}

std::vector<std::string> default_item_names(std::size_t n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t k = 0; k < n; ++k) names.push_back("item" + std::to_string(k));
    return names;
}

std::string ValidationResult::summary() const {
    std::string out;
    for (const auto& v : violations) {
        if (!out.empty()) out += "; ";
        out += v.message;
    }
    return out;
}

ValidationResult validate_pcm(const LinguisticPCM& pcm) {
    ValidationResult result;
    auto report = [&](std::string msg, std::optional<std::pair<std::size_t, std::size_t>> pair = {}) {
        result.violations.push_back({std::move(msg), pair});
    };

    if (pcm.n < 2) {
        report("n must be at least 2, got " + std::to_string(pcm.n));
        return result;
    }
    if (pcm.items.size() != pcm.n) {
        report("expected " + std::to_string(pcm.n) + " item names, got " + std::to_string(pcm.items.size()));
    }
    const std::size_t expected = required_judgments(pcm.n);
    if (pcm.judgments.size() != expected) {
        report("expected " + std::to_string(expected) + " judgments, got " +
               std::to_string(pcm.judgments.size()));
    }

    std::vector<int> seen(pcm.n * pcm.n, 0);
    for (const auto& jd : pcm.judgments) {
        if (jd.j() >= pcm.n) {
            report("pair " + pair_text(jd.i(), jd.j()) + " index out of range", std::pair{jd.i(), jd.j()});
            continue;
        }
        if (++seen[jd.i() * pcm.n + jd.j()] == 2) {
            report("duplicate pair " + pair_text(jd.i(), jd.j()), std::pair{jd.i(), jd.j()});
        }
    }
    for (std::size_t i = 0; i < pcm.n; ++i) {
        for (std::size_t j = i + 1; j < pcm.n; ++j) {
            if (seen[i * pcm.n + j] == 0) report("missing pair " + pair_text(i, j), std::pair{i, j});
        }
    }
    return result;
}

ScaleAssignment::ScaleAssignment(const std::array<double, kGradeCount>& values, ScaleBounds bounds)
    : values_(values), bounds_(bounds) {
    const auto problems = check(values, bounds);
    if (!problems.empty()) {
        std::string msg = "invalid scale assignment:";
        for (const auto& p : problems) msg += " " + p + ";";
        msg.pop_back();
        throw InputError(msg);
    }
}

ScaleAssignment ScaleAssignment::saaty() {
    return ScaleAssignment({1, 2, 3, 4, 5, 6, 7, 8, 9});
}

std::vector<std::string> ScaleAssignment::check(const std::array<double, kGradeCount>& values,
                                                ScaleBounds bounds) {
    std::vector<std::string> problems;
    if (!(bounds.eps_gap > 0)) problems.push_back("eps_gap must be positive");
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (!std::isfinite(values[k]) || values[k] <= 0) {
            problems.push_back("v" + std::to_string(k + 1) + " must be positive and finite");
        }
    }
    if (values[0] != 1.0) problems.push_back("v1 must equal 1");
    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
        if (values[k + 1] < values[k] + bounds.eps_gap - kScaleSlack) {
            std::ostringstream os;
            os << "v" << k + 2 << " must exceed v" << k + 1 << " by at least " << bounds.eps_gap;
            problems.push_back(os.str());
        }
    }
    if (values[kGradeCount - 1] > bounds.v_max + kScaleSlack) {
        std::ostringstream os;
        os << "v9 exceeds upper bound " << bounds.v_max;
        problems.push_back(os.str());
    }
    return problems;
}

double ScaleAssignment::distance_from_saaty() const noexcept {
    double d = 0;
    for (std::size_t k = 0; k < values_.size(); ++k) d += std::abs(values_[k] - static_cast<double>(k + 1));
    return d;
}

NumericPCM::NumericPCM(std::size_t n, std::vector<double> entries) : n_(n), a_(std::move(entries)) {
    if (n == 0) throw InputError("matrix dimension must be positive");
    if (a_.size() != n * n) {
        throw InputError("expected " + std::to_string(n * n) + " entries, got " + std::to_string(a_.size()));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if ((*this)(i, i) != 1.0) throw InputError("diagonal entry " + pair_text(i, i) + " must be 1");
        for (std::size_t j = 0; j < n; ++j) {
            const double v = (*this)(i, j);
            if (!std::isfinite(v) || v <= 0) {
                throw InputError("entry " + pair_text(i, j) + " must be positive and finite");
            }
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs((*this)(i, j) * (*this)(j, i) - 1.0) > kReciprocityTol) {
                throw InputError("entries " + pair_text(i, j) + " and " + pair_text(j, i) + " are not reciprocal");
            }
        }
    }
}

NumericPCM NumericPCM::from_weights(std::span<const double> weights) {
    const std::size_t n = weights.size();
    for (double w : weights) {
        if (!(w > 0) || !std::isfinite(w)) throw InputError("weights must be positive and finite");
    }
    std::vector<double> a(n * n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            a[i * n + j] = weights[i] / weights[j];
            a[j * n + i] = 1.0 / a[i * n + j];
        }
    }
    return NumericPCM(n, std::move(a));
}

NumericPCM NumericPCM::ones(std::size_t n) { return NumericPCM(n, std::vector<double>(n * n, 1.0)); }

NumericPCM NumericPCM::permuted(std::span<const std::size_t> perm) const {
    if (perm.size() != n_) throw InputError("permutation size does not match matrix dimension");
    std::vector<double> a(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) a[i * n_ + j] = (*this)(perm[i], perm[j]);
    }
    return NumericPCM(n_, std::move(a));
}

NumericPCM NumericPCM::transposed() const {
    std::vector<double> a(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) a[i * n_ + j] = (*this)(j, i);
    }
    return NumericPCM(n_, std::move(a));
}

bool NumericPCM::is_consistent(double rel_tol) const {
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            for (std::size_t k = 0; k < n_; ++k) {
                const double lhs = (*this)(i, j) * (*this)(j, k);
                const double rhs = (*this)(i, k);
                if (std::abs(lhs - rhs) > rel_tol * rhs) return false;
            }
        }
    }
    return true;
}

NumericPCM realize(const LinguisticPCM& pcm, const ScaleAssignment& scale) {
    if (const auto v = validate_pcm(pcm); !v.ok()) {
        throw InputError("invalid PCM '" + pcm.id + "': " + v.summary());
    }
    const std::size_t n = pcm.n;
    std::vector<double> a(n * n, 1.0);
    for (const auto& jd : pcm.judgments) {
        const double v = scale.value(jd.grade());
        const double fwd = jd.direction() == Direction::i_over_j ? v : 1.0 / v;
        a[jd.i() * n + jd.j()] = fwd;
        a[jd.j() * n + jd.i()] = 1.0 / fwd;
    }
    return NumericPCM(n, std::move(a));
}

}  // namespace bagins
