#pragma once

// Priority derivation and inconsistency measurement for numeric PCMs.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bagins/pcm.hpp"

namespace bagins {

class RandomIndexTable;

/// Positive weights summing to 1 (within 1e-9).
class PriorityVector {
public:
    /// Throws InputError if any weight is non-positive or the sum is off by more than 1e-9.
    explicit PriorityVector(std::vector<double> weights);

    /// Divides by the sum first. Weights must be positive.
    static PriorityVector normalized(std::vector<double> weights);
    static PriorityVector uniform(std::size_t n);

    std::size_t size() const noexcept { return w_.size(); }
    double operator[](std::size_t i) const noexcept { return w_[i]; }
    std::span<const double> weights() const noexcept { return w_; }

    friend bool operator==(const PriorityVector&, const PriorityVector&) = default;

private:
    std::vector<double> w_;
};

enum class PriorityMethod { eigenvector, geometric_mean };

const char* to_string(PriorityMethod m) noexcept;
std::optional<PriorityMethod> priority_method_from_string(std::string_view s) noexcept;

struct PowerIterationOptions {
    double tol = 1e-10;  // max-norm between successive normalized iterates
    int max_iter = 1000;
};

struct EigenResult {
    PriorityVector priorities;
    double lambda_max;
    int iterations;
};

/// Principal right eigenvector by power iteration from the uniform vector.
/// lambda_max is the mean of the component-wise ratios (Aw)_i / w_i at the
/// converged iterate. Throws ConvergenceError after max_iter steps.
EigenResult eigen_priority(const NumericPCM& m, PowerIterationOptions opts = {});

/// w_i proportional to the geometric mean of row i.
PriorityVector geomean_priority(const NumericPCM& m);

PriorityVector derive_priority(const NumericPCM& m, PriorityMethod method, PowerIterationOptions opts = {});

struct ConsistencyReport {
    double lambda_max;
    double ci;
    double cr;
    PriorityMethod method;
    int iterations;
};

/// lambda_max always comes from power iteration; `method` records the
/// priority derivation the report accompanies. ci = (lambda_max - n)/(n - 1),
/// clamped at 0 against round-off; cr = ci / RI(n) for n >= 3, and 0 when ci
/// is 0 or n < 3. Throws InputError when RI(n) is required but missing.
ConsistencyReport consistency(const NumericPCM& m, const RandomIndexTable& ri,
                              PriorityMethod method = PriorityMethod::eigenvector,
                              PowerIterationOptions opts = {});

/// ci from a known lambda_max, with the same clamping as consistency().
double consistency_index(double lambda_max, std::size_t n) noexcept;

}  // namespace bagins
