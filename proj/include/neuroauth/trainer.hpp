#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "neuroauth/errors.hpp"
#include "neuroauth/network.hpp"

namespace neuroauth {

struct TrainingConfig {
    double eta = 0.5;
    double target = 0.5;
    double epsilon = 1e-5;
    std::uint64_t max_epochs = 100000;
    std::uint64_t seed = 1;
    double lambda = kDefaultLambda;
};

// Throws Errc::invalid_argument when a field is out of range.
void validate(const TrainingConfig& config);

// |target - final_output| after each epoch's update, in epoch order.
struct LearningCurve {
    std::vector<double> errors;
};

// Same shape as the WeightSet being trained.
struct WeightGradient {
    std::vector<double> d_w1;
    std::vector<double> d_b1;
    std::vector<double> d_w2;
    double d_b2 = 0.0;
};

struct TrainResult {
    WeightSet weights;
    LearningCurve curve;
};

class NoConvergenceError final : public Error {
public:
    NoConvergenceError(const std::string& message, LearningCurve curve)
        : Error(Errc::no_convergence, message), curve_(std::move(curve)) {}

    const LearningCurve& curve() const noexcept { return curve_; }

private:
    LearningCurve curve_;
};

// Gradient of E = 1/2 (target - output)^2 with respect to every parameter.
WeightGradient compute_gradient(const WeightSet& weights, const BitVector& input,
                                double target, double lambda);

// Plain gradient descent from seeded uniform init, one pattern, full update of
// all parameters each epoch, until |target - output| < epsilon. Throws
// NoConvergenceError (carrying the curve) when max_epochs is exhausted.
TrainResult train(const BitVector& input, const TrainingConfig& config);

// CSV export: header "epoch,error", one row per epoch, scientific notation.
void write_curve_csv(std::ostream& out, const LearningCurve& curve);

} // namespace neuroauth
