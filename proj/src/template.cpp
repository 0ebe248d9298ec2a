#include "neuroauth/template.hpp"

#include <algorithm>
#include <cmath>

#include "neuroauth/codec.hpp"
#include "neuroauth/errors.hpp"

namespace neuroauth {

std::pair<Template, LearningCurve> enroll_traced(std::string_view password,
                                                 const TrainingConfig& config) {
    const BitVector input = encode_password(password);
    TrainResult result = train(input, config);

    Template tmpl;
    tmpl.architecture =
        Architecture{input.size(), hidden_count_for(input.size()), config.lambda};
    const ActivationRecord act = forward(result.weights, input, config.lambda);
    tmpl.mapped_hidden = act.hidden_outputs;
    tmpl.mapped_final = act.final_output;
    tmpl.meta = TrainingMeta{config.eta, config.epsilon, config.seed,
                             result.curve.errors.size()};
    tmpl.weights = std::move(result.weights);
    return {std::move(tmpl), std::move(result.curve)};
}

Template enroll(std::string_view password, const TrainingConfig& config) {
    return enroll_traced(password, config).first;
}

VerifyOutcome verify(const Template& tmpl, std::string_view candidate) {
    if (!tmpl.has_hidden_weights)
        raise(Errc::missing_token,
              "template holds only the output layer; verification needs the token part");

    VerifyOutcome outcome;

    // Length/encoding pre-check; an unencodable candidate fails here too.
    BitVector bits;
    try {
        bits = encode_password(candidate);
    } catch (const Error&) {
        outcome.rejected_stage = RejectStage::length;
        return outcome;
    }
    if (bits.size() != tmpl.architecture.input_count) {
        outcome.rejected_stage = RejectStage::length;
        return outcome;
    }

    const ActivationRecord act = forward(tmpl.weights, bits, tmpl.architecture.lambda);
    outcome.diff_vector.reserve(tmpl.mapped_hidden.size() + 1);
    for (std::size_t i = 0; i < tmpl.mapped_hidden.size(); ++i)
        outcome.diff_vector.push_back(std::fabs(act.hidden_outputs[i] - tmpl.mapped_hidden[i]));
    outcome.diff_vector.push_back(std::fabs(act.final_output - tmpl.mapped_final));

    const double worst = *std::max_element(outcome.diff_vector.begin(), outcome.diff_vector.end());
    outcome.authenticated = worst <= kMatchEpsilon;
    outcome.rejected_stage = outcome.authenticated ? RejectStage::none : RejectStage::mapped_values;
    return outcome;
}

} // namespace neuroauth
