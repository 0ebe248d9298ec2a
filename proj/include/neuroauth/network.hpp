#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "neuroauth/codec.hpp"

namespace neuroauth {

// Sigmoid steepness used when a profile does not override it. Kept well below
// saturation for the 0/1 bit inputs this network sees: with uniform [0,1]
// weights the hidden pre-activations sit around half the popcount of the
// input, and steeper curves flatten the gradient to the point where training
// long passwords stalls and near-miss candidates become indistinguishable.
inline constexpr double kDefaultLambda = 0.2;

struct Architecture {
    std::size_t input_count = 0;
    std::size_t hidden_count = 0;
    double lambda = kDefaultLambda;
};

// Dense three-layer parameters. w1 is hidden_count x input_count, row-major.
struct WeightSet {
    std::size_t input_count = 0;
    std::size_t hidden_count = 0;
    std::vector<double> w1;
    std::vector<double> b1;
    std::vector<double> w2;
    double b2 = 0.0;

    double w1_at(std::size_t node, std::size_t input) const {
        return w1[node * input_count + input];
    }
    double& w1_at(std::size_t node, std::size_t input) {
        return w1[node * input_count + input];
    }
};

struct ActivationRecord {
    std::vector<double> hidden_outputs;
    double final_output = 0.0;
};

double sigmoid(double x, double lambda);

// Derivative expressed through the sigmoid output s: lambda * s * (1 - s).
double sigmoid_prime(double s, double lambda);

// Every weight and bias drawn independently uniform on [0,1] from a
// mersenne-twister stream (mt19937_64, 53-bit mantissa mapping), so identical
// (arch, seed) pairs reproduce identical weights.
WeightSet init_weights(const Architecture& arch, std::uint64_t seed);

ActivationRecord forward(const WeightSet& weights, const BitVector& input, double lambda);

} // namespace neuroauth
