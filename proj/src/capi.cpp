#include "neuroauth.h"

#include <cstdio>
#include <cstring>
#include <exception>
#include <filesystem>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "neuroauth/replicate.hpp"
#include "neuroauth/vault.hpp"

// C binding over the core library. Handles own a Profile plus the path it
// was loaded from; every state-changing call commits the profile back to
// that path before reporting success.

struct na_profile {
    neuroauth::Profile profile;
    std::filesystem::path path;
};

namespace {

thread_local std::string t_last_error;

na_status status_from(neuroauth::Errc code) {
    using neuroauth::Errc;
    switch (code) {
        case Errc::empty_password: return NA_ERR_EMPTY_PASSWORD;
        case Errc::unsupported_character: return NA_ERR_UNSUPPORTED_CHARACTER;
        case Errc::invalid_input_count: return NA_ERR_INVALID_INPUT_COUNT;
        case Errc::dimension_mismatch: return NA_ERR_DIMENSION_MISMATCH;
        case Errc::no_convergence: return NA_ERR_NO_CONVERGENCE;
        case Errc::io_failure: return NA_ERR_IO;
        case Errc::serialization_overflow: return NA_ERR_SERIALIZATION_OVERFLOW;
        case Errc::checksum_mismatch: return NA_ERR_CHECKSUM_MISMATCH;
        case Errc::version_unsupported: return NA_ERR_VERSION_UNSUPPORTED;
        case Errc::malformed_field: return NA_ERR_MALFORMED_FIELD;
        case Errc::malformed_log_line: return NA_ERR_MALFORMED_LOG_LINE;
        case Errc::reset_denied: return NA_ERR_RESET_DENIED;
        case Errc::missing_token: return NA_ERR_MISSING_TOKEN;
        case Errc::invalid_argument: return NA_ERR_INVALID_ARGUMENT;
    }
    return NA_ERR_INTERNAL;
}

na_status fail(na_status status, const char* message) {
    t_last_error = message;
    return status;
}

template <typename Fn>
na_status guarded(Fn&& fn) {
    try {
        fn();
        t_last_error.clear();
        return NA_OK;
    } catch (const neuroauth::Error& e) {
        t_last_error = e.what();
        return status_from(e.code());
    } catch (const std::bad_alloc&) {
        t_last_error = "out of memory";
        return NA_ERR_INTERNAL;
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return NA_ERR_INTERNAL;
    }
}

void fill_decision(na_decision* out, const neuroauth::GuardDecision& decision,
                   const neuroauth::GuardState& state) {
    out->granted = decision.granted ? 1 : 0;
    out->failed_layer = decision.failed_layer
                            ? static_cast<na_layer>(static_cast<int>(*decision.failed_layer))
                            : NA_LAYER_NONE;
    out->intruder_declared = decision.intruder_declared ? 1 : 0;
    out->locked = state.locked ? 1 : 0;
    out->failed_count = state.failed_count;
    out->ann_invocations = decision.ann_invocations;
}

std::vector<neuroauth::TimedCandidate> collect_candidates(const na_timed_password* candidates,
                                                          size_t count) {
    std::vector<neuroauth::TimedCandidate> out;
    out.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        if (candidates[i].password == nullptr)
            neuroauth::raise(neuroauth::Errc::invalid_argument, "candidate password is null");
        out.push_back(neuroauth::TimedCandidate{candidates[i].password,
                                                candidates[i].insertion_ms});
    }
    return out;
}

std::vector<std::string> collect_strings(const char* const* values, size_t count,
                                         const char* what) {
    std::vector<std::string> out;
    out.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        if (values[i] == nullptr)
            neuroauth::raise(neuroauth::Errc::invalid_argument,
                             std::string(what) + " entry is null");
        out.emplace_back(values[i]);
    }
    return out;
}

} // namespace

extern "C" {

void na_enroll_options_init(na_enroll_options* options) {
    if (options == nullptr) return;
    const neuroauth::TrainingConfig training;
    const neuroauth::GuardConfig guard;
    options->eta = training.eta;
    options->epsilon = training.epsilon;
    options->lambda = training.lambda;
    options->max_epochs = training.max_epochs;
    options->seed = training.seed;
    options->max_trials = guard.max_trials;
    options->time_min_ms = guard.time_min_ms;
    options->time_max_ms = guard.time_max_ms;
    options->time_layer_enabled = guard.time_layer_enabled ? 1 : 0;
}

na_status na_profile_create(const char* profile_path, const char* log_path,
                            const char* const* resource_passwords, size_t resource_count,
                            const char* reset_password, const na_enroll_options* options,
                            na_profile** out) {
    if (out == nullptr) return fail(NA_ERR_INVALID_ARGUMENT, "out handle is null");
    *out = nullptr;
    if (profile_path == nullptr || reset_password == nullptr || resource_passwords == nullptr)
        return fail(NA_ERR_INVALID_ARGUMENT, "profile path, passwords and reset password are required");

    return guarded([&] {
        na_enroll_options defaults;
        na_enroll_options_init(&defaults);
        const na_enroll_options& opt = options ? *options : defaults;

        neuroauth::EnrollmentRequest request;
        request.resource_passwords = collect_strings(resource_passwords, resource_count,
                                                     "resource password");
        request.reset_password = reset_password;
        request.training.eta = opt.eta;
        request.training.epsilon = opt.epsilon;
        request.training.lambda = opt.lambda;
        request.training.max_epochs = opt.max_epochs;
        request.training.seed = opt.seed;
        request.guard.max_trials = opt.max_trials;
        request.guard.time_min_ms = opt.time_min_ms;
        request.guard.time_max_ms = opt.time_max_ms;
        request.guard.time_layer_enabled = opt.time_layer_enabled != 0;
        request.log_path = log_path ? log_path : (std::string(profile_path) + ".log");

        auto handle = std::make_unique<na_profile>();
        handle->profile = neuroauth::create_profile(request);
        handle->path = profile_path;
        neuroauth::save_profile(handle->profile, handle->path);
        *out = handle.release();
    });
}

na_status na_profile_open(const char* profile_path, na_profile** out) {
    if (out == nullptr) return fail(NA_ERR_INVALID_ARGUMENT, "out handle is null");
    *out = nullptr;
    if (profile_path == nullptr) return fail(NA_ERR_INVALID_ARGUMENT, "profile path is null");

    return guarded([&] {
        auto handle = std::make_unique<na_profile>();
        handle->profile = neuroauth::load_profile(profile_path);
        handle->path = profile_path;
        *out = handle.release();
    });
}

na_status na_profile_save(na_profile* profile, const char* path) {
    if (profile == nullptr || path == nullptr)
        return fail(NA_ERR_INVALID_ARGUMENT, "profile handle and path are required");
    return guarded([&] {
        neuroauth::save_profile(profile->profile, path);
        profile->path = path;
    });
}

void na_profile_close(na_profile* profile) {
    delete profile;
}

na_status na_profile_access(na_profile* profile, const na_timed_password* candidates,
                            size_t candidate_count, na_decision* decision) {
    if (profile == nullptr || decision == nullptr)
        return fail(NA_ERR_INVALID_ARGUMENT, "profile handle and decision output are required");
    if (candidates == nullptr && candidate_count > 0)
        return fail(NA_ERR_INVALID_ARGUMENT, "candidate array is null");

    return guarded([&] {
        std::vector<neuroauth::TimedCandidate> timed =
            collect_candidates(candidates, candidate_count);
        // A locked profile refuses before any password is entered; callers
        // may therefore pass no candidates at all. Pad with empty entries so
        // the trail layer can log the refusal per enrolled password.
        if (profile->profile.guard_state.locked && timed.empty())
            timed.resize(profile->profile.resource_templates.size());

        const neuroauth::GuardDecision result =
            neuroauth::profile_access(profile->profile, timed);
        neuroauth::save_profile(profile->profile, profile->path);
        fill_decision(decision, result, profile->profile.guard_state);
    });
}

na_status na_profile_access_two_factor(na_profile* profile, const char* server_path,
                                       const char* token_path,
                                       const na_timed_password* candidate,
                                       na_decision* decision) {
    if (profile == nullptr || decision == nullptr || candidate == nullptr ||
        server_path == nullptr || token_path == nullptr)
        return fail(NA_ERR_INVALID_ARGUMENT,
                    "profile, server path, token path, candidate and decision are required");

    return guarded([&] {
        if (candidate->password == nullptr)
            neuroauth::raise(neuroauth::Errc::invalid_argument, "candidate password is null");
        const neuroauth::ServerPart server = neuroauth::load_server_part(server_path);
        const neuroauth::TokenPart token = neuroauth::load_token(token_path);
        const neuroauth::TimedCandidate timed{candidate->password, candidate->insertion_ms};
        const neuroauth::GuardDecision result =
            neuroauth::profile_access_two_factor(profile->profile, server, token, timed);
        neuroauth::save_profile(profile->profile, profile->path);
        fill_decision(decision, result, profile->profile.guard_state);
    });
}

na_status na_profile_reset(na_profile* profile, const char* const* current_passwords,
                           size_t current_count, const char* const* new_passwords,
                           size_t new_count, uint64_t new_seed) {
    if (profile == nullptr || current_passwords == nullptr)
        return fail(NA_ERR_INVALID_ARGUMENT, "profile handle and current passwords are required");
    if (new_passwords == nullptr && new_count > 0)
        return fail(NA_ERR_INVALID_ARGUMENT, "replacement password array is null");

    return guarded([&] {
        neuroauth::ResetRequest request;
        request.current_passwords =
            collect_strings(current_passwords, current_count, "current password");
        if (new_passwords != nullptr && new_count > 0)
            request.new_passwords =
                collect_strings(new_passwords, new_count, "replacement password");
        request.new_seed = new_seed;

        neuroauth::Profile next = neuroauth::reset_profile(profile->profile, request);
        neuroauth::save_profile(next, profile->path);
        profile->profile = std::move(next);
    });
}

na_status na_profile_read_log(na_profile* profile, const char* const* current_passwords,
                              size_t current_count, char** out_text) {
    if (profile == nullptr || current_passwords == nullptr || out_text == nullptr)
        return fail(NA_ERR_INVALID_ARGUMENT,
                    "profile handle, current passwords and output pointer are required");
    *out_text = nullptr;

    return guarded([&] {
        const std::vector<std::string> passwords =
            collect_strings(current_passwords, current_count, "current password");
        neuroauth::authenticate_reset_mode(profile->profile, passwords);

        std::string text;
        for (const neuroauth::AttemptRecord& record :
             neuroauth::read_log(profile->profile.log_path)) {
            text += neuroauth::format_log_record(record);
            text += '\n';
        }
        char* buffer = static_cast<char*>(::operator new(text.size() + 1));
        std::memcpy(buffer, text.c_str(), text.size() + 1);
        *out_text = buffer;
    });
}

na_status na_profile_export_token(na_profile* profile, const char* role,
                                  const char* token_path, const char* server_path) {
    if (profile == nullptr || role == nullptr || token_path == nullptr || server_path == nullptr)
        return fail(NA_ERR_INVALID_ARGUMENT,
                    "profile handle, role, token path and server path are required");

    return guarded([&] {
        const auto parsed = neuroauth::role_from_name(role);
        if (!parsed)
            neuroauth::raise(neuroauth::Errc::invalid_argument,
                             "role must be provider, user or reset");

        neuroauth::Template* target = nullptr;
        if (*parsed == neuroauth::TemplateRole::reset) {
            target = &profile->profile.reset_template;
        } else {
            for (auto& [r, tmpl] : profile->profile.resource_templates)
                if (r == *parsed) target = &tmpl;
        }
        if (target == nullptr)
            neuroauth::raise(neuroauth::Errc::invalid_argument,
                             "profile has no template with role '" + std::string(role) + "'");

        const auto [token, server] = neuroauth::split_two_factor(*target);
        neuroauth::save_token(token, token_path);
        neuroauth::save_server_part(server, server_path);

        // The profile keeps only the output layer from here on.
        target->weights.w1.clear();
        target->weights.b1.clear();
        target->has_hidden_weights = false;
        neuroauth::save_profile(profile->profile, profile->path);
    });
}

int na_profile_is_locked(const na_profile* profile) {
    return (profile != nullptr && profile->profile.guard_state.locked) ? 1 : 0;
}

uint32_t na_profile_failed_count(const na_profile* profile) {
    return profile != nullptr ? profile->profile.guard_state.failed_count : 0;
}

size_t na_profile_resource_count(const na_profile* profile) {
    return profile != nullptr ? profile->profile.resource_templates.size() : 0;
}

na_status na_profile_resource_info(const na_profile* profile, size_t index,
                                   na_resource_info* out) {
    if (profile == nullptr || out == nullptr)
        return fail(NA_ERR_INVALID_ARGUMENT, "profile handle and output are required");
    const size_t resources = profile->profile.resource_templates.size();
    if (index > resources)
        return fail(NA_ERR_INVALID_ARGUMENT, "resource index out of range");

    // Index == resource count addresses the reset template.
    const neuroauth::Template& tmpl = (index == resources)
                                          ? profile->profile.reset_template
                                          : profile->profile.resource_templates[index].second;
    const char* role = (index == resources)
                           ? "reset"
                           : neuroauth::role_name(profile->profile.resource_templates[index].first);
    std::snprintf(out->role, sizeof(out->role), "%s", role);
    out->input_count = static_cast<uint32_t>(tmpl.architecture.input_count);
    out->hidden_count = static_cast<uint32_t>(tmpl.architecture.hidden_count);
    out->has_hidden_weights = tmpl.has_hidden_weights ? 1 : 0;
    t_last_error.clear();
    return NA_OK;
}

na_status na_replicate_experiments(const char* out_dir) {
    if (out_dir == nullptr) return fail(NA_ERR_INVALID_ARGUMENT, "output directory is null");
    return guarded([&] { neuroauth::replicate_experiments(out_dir); });
}

const char* na_status_name(na_status status) {
    switch (status) {
        case NA_OK: return "ok";
        case NA_ERR_EMPTY_PASSWORD: return "empty_password";
        case NA_ERR_UNSUPPORTED_CHARACTER: return "unsupported_character";
        case NA_ERR_INVALID_INPUT_COUNT: return "invalid_input_count";
        case NA_ERR_DIMENSION_MISMATCH: return "dimension_mismatch";
        case NA_ERR_NO_CONVERGENCE: return "no_convergence";
        case NA_ERR_IO: return "io_failure";
        case NA_ERR_SERIALIZATION_OVERFLOW: return "serialization_overflow";
        case NA_ERR_CHECKSUM_MISMATCH: return "checksum_mismatch";
        case NA_ERR_VERSION_UNSUPPORTED: return "version_unsupported";
        case NA_ERR_MALFORMED_FIELD: return "malformed_field";
        case NA_ERR_MALFORMED_LOG_LINE: return "malformed_log_line";
        case NA_ERR_RESET_DENIED: return "reset_denied";
        case NA_ERR_MISSING_TOKEN: return "missing_token";
        case NA_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case NA_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* na_last_error_message(void) {
    return t_last_error.c_str();
}

void na_string_free(char* text) {
    ::operator delete(text);
}

const char* na_version_string(void) {
    return "1.0.0";
}

} // extern "C"
