#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "neuroauth/guard.hpp"
#include "neuroauth/template.hpp"

namespace neuroauth {

inline constexpr std::uint32_t kProfileFormatVersion = 1;

enum class TemplateRole : std::uint8_t { provider, user, reset };

const char* role_name(TemplateRole role);
std::optional<TemplateRole> role_from_name(std::string_view name);

// The persisted unit: one or two resource templates, the reset template,
// guard configuration and state, and a reference to the intrusion log file.
struct Profile {
    std::uint32_t version = kProfileFormatVersion;
    double lambda = kDefaultLambda;
    GuardConfig guard_config;
    GuardState guard_state;
    std::string log_path;
    std::vector<std::pair<TemplateRole, Template>> resource_templates; // 1 or 2
    Template reset_template;
};

struct EnrollmentRequest {
    std::vector<std::string> resource_passwords; // 1 or 2; provider first when two
    std::string reset_password;
    TrainingConfig training; // per-template seeds derived as seed + index
    GuardConfig guard;
    std::string log_path;
};

Profile create_profile(const EnrollmentRequest& request);

// Canonical text format, every real as a 16-hex-digit IEEE-754 bit pattern,
// fnv-1a/64 checksum on the final line. Written atomically: temp sibling
// first, then rename over the destination.
void save_profile(const Profile& profile, const std::filesystem::path& path);
Profile load_profile(const std::filesystem::path& path);

struct ResetRequest {
    // One password per resource template in enrollment order, reset last.
    std::vector<std::string> current_passwords;
    // Replacements in the same shape; absent means retrain the same passwords.
    std::optional<std::vector<std::string>> new_passwords;
    std::uint64_t new_seed = 1;
};

// Reset-mode credential check: length and mapped-value layers on every
// supplied password, lockout deliberately not consulted so the path stays
// reachable after a seize. Failures are appended to the intrusion log and
// raised as Errc::reset_denied without naming the password that failed.
void authenticate_reset_mode(const Profile& profile,
                             std::span<const std::string> passwords);

// All-or-nothing: on success returns a profile with every template retrained
// (fresh seed, hence entirely new weights and mapped values) and the guard
// state cleared. On failure the input profile is untouched.
Profile reset_profile(const Profile& profile, const ResetRequest& request);

// Two-factor split of one template: the token side carries the hidden layer,
// the server side the output layer plus the mapped values. Neither half can
// run a verification alone.
struct TokenPart {
    std::uint32_t version = kProfileFormatVersion;
    std::size_t input_count = 0;
    std::size_t hidden_count = 0;
    double lambda = kDefaultLambda;
    std::vector<double> w1;
    std::vector<double> b1;
};

struct ServerPart {
    std::uint32_t version = kProfileFormatVersion;
    std::size_t input_count = 0;
    std::size_t hidden_count = 0;
    double lambda = kDefaultLambda;
    std::vector<double> w2;
    double b2 = 0.0;
    std::vector<double> mapped_hidden;
    double mapped_final = 0.0;
};

std::pair<TokenPart, ServerPart> split_two_factor(const Template& tmpl);

// Reconstitutes the weight set and behaves exactly like verify(). A null
// token raises Errc::missing_token; disagreeing dimensions raise
// Errc::dimension_mismatch.
VerifyOutcome verify_two_factor(const ServerPart& server, const TokenPart* token,
                                std::string_view candidate);

void save_token(const TokenPart& token, const std::filesystem::path& path);
TokenPart load_token(const std::filesystem::path& path);
void save_server_part(const ServerPart& server, const std::filesystem::path& path);
ServerPart load_server_part(const std::filesystem::path& path);

// Append-only intrusion log. A missing file reads as an empty sequence.
void append_log(const std::filesystem::path& path, std::span<const AttemptRecord> records);
std::vector<AttemptRecord> read_log(const std::filesystem::path& path);

std::string format_log_record(const AttemptRecord& record);

// Full resource-mode attempt against a profile: evaluates the guard, appends
// any attempt records to the intrusion log, and commits the new guard state
// into the profile (caller persists).
GuardDecision profile_access(Profile& profile, std::span<const TimedCandidate> candidates);

GuardDecision profile_access_two_factor(Profile& profile, const ServerPart& server,
                                        const TokenPart& token,
                                        const TimedCandidate& candidate);

} // namespace neuroauth
