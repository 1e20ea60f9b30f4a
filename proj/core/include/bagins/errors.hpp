#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bagins {

// Rejected input: malformed documents, invalid matrices, bad configuration.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A numerical routine could not deliver a result within tolerance.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Power iteration ran out of iterations. Carries the last normalized iterate.
class ConvergenceError : public NumericalError {
public:
    ConvergenceError(const std::string& what, std::vector<double> last_iterate, int iterations)
        : NumericalError(what), last_iterate_(std::move(last_iterate)), iterations_(iterations) {}

    const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }
    int iterations() const noexcept { return iterations_; }

private:
    std::vector<double> last_iterate_;
    int iterations_;
};

}  // namespace bagins
