#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "neuroauth/template.hpp"

namespace neuroauth {

struct GuardConfig {
    std::uint32_t max_trials = 3;
    std::uint64_t time_min_ms = 50;
    std::uint64_t time_max_ms = 30000;
    bool time_layer_enabled = true;
};

void validate(const GuardConfig& config);

struct GuardState {
    std::uint32_t failed_count = 0;
    bool locked = false;
    // In-memory only; the profile file records just failed_count and locked.
    std::optional<std::chrono::system_clock::time_point> locked_at;
};

// Access layers in evaluation order. A request needs permission from all four.
enum class GuardLayer : std::uint8_t { trail = 1, length = 2, time = 3, ann = 4 };

const char* layer_name(GuardLayer layer);
std::optional<GuardLayer> layer_from_name(std::string_view name);

struct AttemptRecord {
    std::chrono::system_clock::time_point timestamp;
    GuardLayer failed_layer = GuardLayer::trail;
    std::string attempted_password; // stored verbatim
    std::uint64_t insertion_ms = 0;
};

struct TimedCandidate {
    std::string password;
    std::uint64_t insertion_ms = 0;
};

struct GuardDecision {
    bool granted = false;
    std::optional<GuardLayer> failed_layer;
    bool intruder_declared = false; // true only on the transition into locked
    // Number of layer-4 verifications performed for this attempt; stays 0
    // whenever an outer layer already denied the request.
    std::uint32_t ann_invocations = 0;
};

std::optional<GuardLayer> layer_of_failure(const GuardDecision& decision);

// Layer-4 check for one enrolled password: expected input width for the
// length layer plus the mapped-value comparison itself.
struct CandidateVerifier {
    std::size_t input_count = 0;
    std::function<VerifyOutcome(std::string_view)> check;
};

struct AttemptOutcome {
    GuardDecision decision;
    GuardState state;
    std::vector<AttemptRecord> records; // one per failing candidate
};

// Evaluates layers strictly in order trail -> length -> time -> ann,
// short-circuiting on the first failing layer. Success resets failed_count;
// any failure increments it and locks the state once max_trials is reached.
// Locked is absorbing here; only the reset protocol clears it.
AttemptOutcome evaluate_attempt(const GuardState& state, const GuardConfig& config,
                                std::span<const CandidateVerifier> verifiers,
                                std::span<const TimedCandidate> candidates);

AttemptOutcome evaluate_attempt(const GuardState& state, const GuardConfig& config,
                                std::span<const Template> templates,
                                std::span<const TimedCandidate> candidates);

} // namespace neuroauth
