#include "neuroauth/network.hpp"

#include <cmath>
#include <random>
#include <string>

#include "neuroauth/errors.hpp"

namespace neuroauth {

namespace {

// 53-bit mantissa mapping onto the closed interval [0,1].
class UniformStream {
public:
    explicit UniformStream(std::uint64_t seed) : gen_(seed) {}

    double next() {
        constexpr double kScale = 1.0 / 9007199254740991.0; // 2^53 - 1
        return static_cast<double>(gen_() >> 11) * kScale;
    }

private:
    std::mt19937_64 gen_;
};

void check_architecture(const Architecture& arch) {
    if (arch.input_count == 0 || arch.hidden_count == 0)
        raise(Errc::invalid_argument, "architecture dimensions must be positive");
    if (!(arch.lambda > 0.0) || !std::isfinite(arch.lambda))
        raise(Errc::invalid_argument, "lambda must be a positive finite value");
}

} // namespace

double sigmoid(double x, double lambda) {
    return 1.0 / (1.0 + std::exp(-lambda * x));
}

double sigmoid_prime(double s, double lambda) {
    return lambda * s * (1.0 - s);
}

WeightSet init_weights(const Architecture& arch, std::uint64_t seed) {
    check_architecture(arch);

    UniformStream stream(seed);
    WeightSet w;
    w.input_count = arch.input_count;
    w.hidden_count = arch.hidden_count;
    w.w1.resize(arch.hidden_count * arch.input_count);
    w.b1.resize(arch.hidden_count);
    w.w2.resize(arch.hidden_count);
    for (double& v : w.w1) v = stream.next();
    for (double& v : w.b1) v = stream.next();
    for (double& v : w.w2) v = stream.next();
    w.b2 = stream.next();
    return w;
}

ActivationRecord forward(const WeightSet& weights, const BitVector& input, double lambda) {
    if (input.size() != weights.input_count)
        raise(Errc::dimension_mismatch,
              "input length " + std::to_string(input.size()) + " does not match network width " +
                  std::to_string(weights.input_count));

    ActivationRecord record;
    record.hidden_outputs.resize(weights.hidden_count);
    for (std::size_t node = 0; node < weights.hidden_count; ++node) {
        double sum = weights.b1[node];
        const double* row = weights.w1.data() + node * weights.input_count;
        for (std::size_t j = 0; j < weights.input_count; ++j)
            sum += row[j] * static_cast<double>(input[j]);
        record.hidden_outputs[node] = sigmoid(sum, lambda);
    }

    double sum = weights.b2;
    for (std::size_t node = 0; node < weights.hidden_count; ++node)
        sum += weights.w2[node] * record.hidden_outputs[node];
    record.final_output = sigmoid(sum, lambda);
    return record;
}

} // namespace neuroauth
