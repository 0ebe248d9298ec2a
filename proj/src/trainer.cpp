#include "neuroauth/trainer.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>

#include "neuroauth/codec.hpp"

namespace neuroauth {

void validate(const TrainingConfig& config) {
    if (!(config.eta > 0.0) || !std::isfinite(config.eta))
        raise(Errc::invalid_argument, "eta must be a positive finite value");
    if (!(config.target > 0.0 && config.target < 1.0))
        raise(Errc::invalid_argument, "target must lie strictly inside (0,1)");
    if (!(config.epsilon > 0.0) || !std::isfinite(config.epsilon))
        raise(Errc::invalid_argument, "epsilon must be a positive finite value");
    if (config.max_epochs < 1)
        raise(Errc::invalid_argument, "max_epochs must be at least 1");
    if (!(config.lambda > 0.0) || !std::isfinite(config.lambda))
        raise(Errc::invalid_argument, "lambda must be a positive finite value");
}

WeightGradient compute_gradient(const WeightSet& weights, const BitVector& input,
                                double target, double lambda) {
    const ActivationRecord act = forward(weights, input, lambda);
    const double output = act.final_output;

    WeightGradient grad;
    grad.d_w1.resize(weights.w1.size());
    grad.d_b1.resize(weights.hidden_count);
    grad.d_w2.resize(weights.hidden_count);

    // dE/dz2 with E = 1/2 (target - output)^2.
    const double delta_out = -(target - output) * sigmoid_prime(output, lambda);
    grad.d_b2 = delta_out;
    for (std::size_t node = 0; node < weights.hidden_count; ++node) {
        const double h = act.hidden_outputs[node];
        grad.d_w2[node] = delta_out * h;
        const double delta_hidden = delta_out * weights.w2[node] * sigmoid_prime(h, lambda);
        grad.d_b1[node] = delta_hidden;
        double* row = grad.d_w1.data() + node * weights.input_count;
        for (std::size_t j = 0; j < weights.input_count; ++j)
            row[j] = delta_hidden * static_cast<double>(input[j]);
    }
    return grad;
}

TrainResult train(const BitVector& input, const TrainingConfig& config) {
    validate(config);

    const Architecture arch{input.size(), hidden_count_for(input.size()), config.lambda};
    WeightSet weights = init_weights(arch, config.seed);

    LearningCurve curve;
    curve.errors.reserve(256);
    for (std::uint64_t epoch = 0; epoch < config.max_epochs; ++epoch) {
        const WeightGradient grad = compute_gradient(weights, input, config.target, config.lambda);
        for (std::size_t i = 0; i < weights.w1.size(); ++i)
            weights.w1[i] -= config.eta * grad.d_w1[i];
        for (std::size_t i = 0; i < weights.hidden_count; ++i) {
            weights.b1[i] -= config.eta * grad.d_b1[i];
            weights.w2[i] -= config.eta * grad.d_w2[i];
        }
        weights.b2 -= config.eta * grad.d_b2;

        const double error =
            std::fabs(config.target - forward(weights, input, config.lambda).final_output);
        curve.errors.push_back(error);
        if (error < config.epsilon)
            return TrainResult{std::move(weights), std::move(curve)};
    }

    const std::string message = "error still " + std::to_string(curve.errors.back()) +
                                " after " + std::to_string(config.max_epochs) + " epochs";
    throw NoConvergenceError(message, std::move(curve));
}

void write_curve_csv(std::ostream& out, const LearningCurve& curve) {
    out << "epoch,error\n";
    char buf[64];
    for (std::size_t i = 0; i < curve.errors.size(); ++i) {
        auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), curve.errors[i],
                                       std::chars_format::scientific, 12);
        (void)ec;
        out << (i + 1) << ',';
        out.write(buf, end - buf);
        out << '\n';
    }
}

} // namespace neuroauth
