#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "neuroauth/network.hpp"
#include "neuroauth/trainer.hpp"

namespace neuroauth {

// Verification tolerance on recomputed activations. Recomputation is exact
// in-process and the file encoding is bit-exact, so this only has to absorb
// platform-level float formatting edge cases; every wrong password observed
// in testing sits many orders of magnitude above it.
inline constexpr double kMatchEpsilon = 1e-12;

struct TrainingMeta {
    double eta = 0.5;
    double epsilon = 1e-5;
    std::uint64_t seed = 0;
    std::uint64_t epochs = 0;
};

// Trained weights plus the activations captured after training ("mapped
// values"); the stored analogue of a password hash. has_hidden_weights turns
// false once the hidden layer has been exported to a token device.
struct Template {
    Architecture architecture;
    WeightSet weights;
    bool has_hidden_weights = true;
    std::vector<double> mapped_hidden;
    double mapped_final = 0.0;
    TrainingMeta meta;
};

enum class RejectStage { none, length, mapped_values };

struct VerifyOutcome {
    bool authenticated = false;
    // Per-hidden-node absolute difference, final-output difference last.
    // Empty when the candidate was rejected before any forward pass.
    std::vector<double> diff_vector;
    RejectStage rejected_stage = RejectStage::none;
};

Template enroll(std::string_view password, const TrainingConfig& config);

// enroll plus the learning curve, for harnesses that plot it.
std::pair<Template, LearningCurve> enroll_traced(std::string_view password,
                                                 const TrainingConfig& config);

// Length/encoding pre-check first (no forward pass on mismatch), then one
// forward pass with the stored weights and an element-wise comparison against
// the stored mapped values. Never retrains, never mutates the template.
VerifyOutcome verify(const Template& tmpl, std::string_view candidate);

} // namespace neuroauth
