#include "bagins/priority.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bagins/errors.hpp"
#include "bagins/random_index.hpp"

namespace bagins {

namespace {

constexpr double kSumTol = 1e-9;

}  // namespace

PriorityVector::PriorityVector(std::vector<double> weights) : w_(std::move(weights)) {
    if (w_.empty()) throw InputError("priority vector must not be empty");
    for (double w : w_) {
        if (!(w > 0) || !std::isfinite(w)) throw InputError("priority weights must be positive and finite");
    }
    const double sum = std::accumulate(w_.begin(), w_.end(), 0.0);
    if (std::abs(sum - 1.0) > kSumTol) throw InputError("priority weights must sum to 1");
}

PriorityVector PriorityVector::normalized(std::vector<double> weights) {
    const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(sum > 0) || !std::isfinite(sum)) throw InputError("cannot normalize weights with non-positive sum");
    for (double& w : weights) w /= sum;
    return PriorityVector(std::move(weights));
}

PriorityVector PriorityVector::uniform(std::size_t n) {
    return PriorityVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

const char* to_string(PriorityMethod m) noexcept {
    return m == PriorityMethod::eigenvector ? "eigenvector" : "geometric_mean";
}

std::optional<PriorityMethod> priority_method_from_string(std::string_view s) noexcept {
    if (s == "eigenvector") return PriorityMethod::eigenvector;
    if (s == "geometric_mean") return PriorityMethod::geometric_mean;
    return std::nullopt;
}

EigenResult eigen_priority(const NumericPCM& m, PowerIterationOptions opts) {
    if (!(opts.tol > 0)) throw InputError("power iteration tolerance must be positive");
    if (opts.max_iter < 1) throw InputError("power iteration needs max_iter >= 1");

    const std::size_t n = m.size();
    const auto multiply = [&](const std::vector<double>& x, std::vector<double>& out) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = m.row(i);
            double acc = 0;
            for (std::size_t j = 0; j < n; ++j) acc += row[j] * x[j];
            out[i] = acc;
        }
    };

    std::vector<double> x(n, 1.0 / static_cast<double>(n));
    std::vector<double> y(n);
    for (int it = 1; it <= opts.max_iter; ++it) {
        multiply(x, y);
        const double sum = std::accumulate(y.begin(), y.end(), 0.0);
        double diff = 0;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] /= sum;
            diff = std::max(diff, std::abs(y[i] - x[i]));
        }
        std::swap(x, y);
        if (diff < opts.tol) {
            multiply(x, y);
            double lambda = 0;
            for (std::size_t i = 0; i < n; ++i) lambda += y[i] / x[i];
            lambda /= static_cast<double>(n);
            return {PriorityVector::normalized(std::move(x)), lambda, it};
        }
    }
    throw ConvergenceError("power iteration did not converge in " + std::to_string(opts.max_iter) +
                               " iterations",
                           std::move(x), opts.max_iter);
}

PriorityVector geomean_priority(const NumericPCM& m) {
    const std::size_t n = m.size();
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        double log_sum = 0;
        for (double a : m.row(i)) log_sum += std::log(a);
        w[i] = std::exp(log_sum / static_cast<double>(n));
    }
    return PriorityVector::normalized(std::move(w));
}

PriorityVector derive_priority(const NumericPCM& m, PriorityMethod method, PowerIterationOptions opts) {
    if (method == PriorityMethod::geometric_mean) return geomean_priority(m);
    return eigen_priority(m, opts).priorities;
}

double consistency_index(double lambda_max, std::size_t n) noexcept {
    if (n < 2) return 0.0;
    return std::max(0.0, (lambda_max - static_cast<double>(n)) / static_cast<double>(n - 1));
}

ConsistencyReport consistency(const NumericPCM& m, const RandomIndexTable& ri, PriorityMethod method,
                              PowerIterationOptions opts) {
    const std::size_t n = m.size();
    const auto eig = eigen_priority(m, opts);
    const double ci = consistency_index(eig.lambda_max, n);
    double cr = 0.0;
    if (n >= 3) {
        const double index = ri.at(n);
        if (ci > 0) cr = ci / index;
    }
    return {eig.lambda_max, ci, cr, method, eig.iterations};
}

}  // namespace bagins
