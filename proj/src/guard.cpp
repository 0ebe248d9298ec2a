#include "neuroauth/guard.hpp"

#include <string>

#include "neuroauth/codec.hpp"
#include "neuroauth/errors.hpp"

namespace neuroauth {

void validate(const GuardConfig& config) {
    if (config.max_trials < 1)
        raise(Errc::invalid_argument, "max_trials must be at least 1");
    if (config.time_min_ms >= config.time_max_ms)
        raise(Errc::invalid_argument, "time window must satisfy time_min_ms < time_max_ms");
}

const char* layer_name(GuardLayer layer) {
    switch (layer) {
        case GuardLayer::trail: return "trail";
        case GuardLayer::length: return "length";
        case GuardLayer::time: return "time";
        case GuardLayer::ann: return "ann";
    }
    return "unknown";
}

std::optional<GuardLayer> layer_from_name(std::string_view name) {
    if (name == "trail") return GuardLayer::trail;
    if (name == "length") return GuardLayer::length;
    if (name == "time") return GuardLayer::time;
    if (name == "ann") return GuardLayer::ann;
    return std::nullopt;
}

std::optional<GuardLayer> layer_of_failure(const GuardDecision& decision) {
    return decision.failed_layer;
}

namespace {

bool passes_length_layer(const CandidateVerifier& verifier, std::string_view password) {
    try {
        return encode_password(password).size() == verifier.input_count;
    } catch (const Error&) {
        return false; // unencodable candidates fail the length/encoding check
    }
}

} // namespace

AttemptOutcome evaluate_attempt(const GuardState& state, const GuardConfig& config,
                                std::span<const CandidateVerifier> verifiers,
                                std::span<const TimedCandidate> candidates) {
    validate(config);
    if (candidates.size() != verifiers.size())
        raise(Errc::invalid_argument,
              "attempt must supply exactly one candidate per enrolled password (" +
                  std::to_string(verifiers.size()) + " expected, " +
                  std::to_string(candidates.size()) + " given)");

    const auto now = std::chrono::system_clock::now();
    AttemptOutcome outcome;
    outcome.state = state;

    const auto deny = [&](GuardLayer layer, const std::vector<std::size_t>& failing) {
        outcome.decision.granted = false;
        outcome.decision.failed_layer = layer;
        for (std::size_t idx : failing)
            outcome.records.push_back(AttemptRecord{now, layer, candidates[idx].password,
                                                    candidates[idx].insertion_ms});
        outcome.state.failed_count += 1;
        if (!outcome.state.locked && outcome.state.failed_count >= config.max_trials) {
            outcome.state.locked = true;
            outcome.state.locked_at = now;
            outcome.decision.intruder_declared = true;
        }
    };

    // Layer 1, trail: a locked profile refuses the request outright; nothing
    // past this point runs, which is itself the signal to the legitimate user.
    if (state.locked) {
        std::vector<std::size_t> all(candidates.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        deny(GuardLayer::trail, all);
        return outcome;
    }

    // Layer 2, length: bit width of every candidate must match its network.
    {
        std::vector<std::size_t> failing;
        for (std::size_t i = 0; i < candidates.size(); ++i)
            if (!passes_length_layer(verifiers[i], candidates[i].password))
                failing.push_back(i);
        if (!failing.empty()) {
            deny(GuardLayer::length, failing);
            return outcome;
        }
    }

    // Layer 3, time: entry duration inside the configured window.
    if (config.time_layer_enabled) {
        std::vector<std::size_t> failing;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            const std::uint64_t ms = candidates[i].insertion_ms;
            if (ms < config.time_min_ms || ms > config.time_max_ms)
                failing.push_back(i);
        }
        if (!failing.empty()) {
            deny(GuardLayer::time, failing);
            return outcome;
        }
    }

    // Layer 4, ann: recomputed activations must match the stored mapped values.
    {
        std::vector<std::size_t> failing;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            outcome.decision.ann_invocations += 1;
            if (!verifiers[i].check(candidates[i].password).authenticated)
                failing.push_back(i);
        }
        if (!failing.empty()) {
            deny(GuardLayer::ann, failing);
            return outcome;
        }
    }

    outcome.decision.granted = true;
    outcome.state.failed_count = 0;
    return outcome;
}

AttemptOutcome evaluate_attempt(const GuardState& state, const GuardConfig& config,
                                std::span<const Template> templates,
                                std::span<const TimedCandidate> candidates) {
    std::vector<CandidateVerifier> verifiers;
    verifiers.reserve(templates.size());
    for (const Template& tmpl : templates)
        verifiers.push_back(CandidateVerifier{
            tmpl.architecture.input_count,
            [&tmpl](std::string_view candidate) { return verify(tmpl, candidate); }});
    return evaluate_attempt(state, config, verifiers, candidates);
}

} // namespace neuroauth
