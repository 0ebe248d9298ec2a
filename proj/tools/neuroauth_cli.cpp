// neuroauth command line front end. Two families of subcommands mirror the
// two paths a user can take: resource mode (access) and reset mode (reset,
// log). enroll, export-token and replicate manage profiles and experiments.
// Links only the public C API.
//
// Exit codes: 0 granted/success, 1 denied, 2 locked or intruder declared,
// 3 usage or I/O error.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <termios.h>
#include <unistd.h>

#include <CLI11.hpp>

#include "neuroauth.h"

namespace {

constexpr int kExitGranted = 0;
constexpr int kExitDenied = 1;
constexpr int kExitLocked = 2;
constexpr int kExitUsage = 3;

struct TimedEntry {
    std::string text;
    std::uint64_t insertion_ms = 0;
};

class EchoGuard {
public:
    EchoGuard() {
        if (tcgetattr(STDIN_FILENO, &saved_) != 0) return;
        termios quiet = saved_;
        quiet.c_lflag &= ~static_cast<tcflag_t>(ECHO);
        active_ = tcsetattr(STDIN_FILENO, TCSAFLUSH, &quiet) == 0;
    }
    ~EchoGuard() {
        if (active_) tcsetattr(STDIN_FILENO, TCSAFLUSH, &saved_);
    }

private:
    termios saved_{};
    bool active_ = false;
};

// Reads one password without echo and measures the wall-clock time between
// showing the prompt and the completed entry.
TimedEntry prompt_with_timing(const std::string& prompt) {
    if (!isatty(STDIN_FILENO)) {
        std::cerr << "error: no terminal available; use --password/--time-ms\n";
        std::exit(kExitUsage);
    }
    std::cerr << prompt << std::flush;
    const auto start = std::chrono::steady_clock::now();
    std::string line;
    {
        EchoGuard guard;
        if (!std::getline(std::cin, line)) {
            std::cerr << "\nerror: could not read password\n";
            std::exit(kExitUsage);
        }
    }
    const auto end = std::chrono::steady_clock::now();
    std::cerr << '\n';
    return TimedEntry{
        line, static_cast<std::uint64_t>(
                  std::chrono::duration_cast<std::chrono::milliseconds>(end - start).count())};
}

using ProfileHandle = std::unique_ptr<na_profile, decltype(&na_profile_close)>;

ProfileHandle open_profile(const std::string& path) {
    na_profile* raw = nullptr;
    if (na_profile_open(path.c_str(), &raw) != NA_OK) {
        std::cerr << "error: " << na_last_error_message() << '\n';
        std::exit(kExitUsage);
    }
    return ProfileHandle(raw, &na_profile_close);
}

[[noreturn]] void fail_status(na_status status) {
    std::cerr << "error: " << na_status_name(status) << ": " << na_last_error_message() << '\n';
    std::exit(kExitUsage);
}

std::string role_label(const na_resource_info& info) {
    return std::string(info.role) + " (" + std::to_string(info.input_count) + '/' +
           std::to_string(info.hidden_count) + "/1)";
}

// Scripted entries from repeated --password/--time-ms flags; prompts fill the
// gap interactively when they are absent.
std::vector<TimedEntry> gather_entries(const std::vector<std::string>& passwords,
                                       const std::vector<std::uint64_t>& times,
                                       const std::vector<std::string>& prompts) {
    std::vector<TimedEntry> entries;
    if (!passwords.empty()) {
        if (passwords.size() != prompts.size()) {
            std::cerr << "error: expected " << prompts.size() << " --password flags, got "
                      << passwords.size() << '\n';
            std::exit(kExitUsage);
        }
        if (!times.empty() && times.size() != passwords.size()) {
            std::cerr << "error: --time-ms count must match --password count\n";
            std::exit(kExitUsage);
        }
        for (std::size_t i = 0; i < passwords.size(); ++i)
            entries.push_back(TimedEntry{passwords[i], times.empty() ? 0 : times[i]});
        return entries;
    }
    for (const std::string& prompt : prompts)
        entries.push_back(prompt_with_timing(prompt));
    return entries;
}

int report_decision(const na_decision& decision) {
    if (decision.granted) {
        std::cout << "access granted\n";
        return kExitGranted;
    }
    const char* layer = "none";
    switch (decision.failed_layer) {
        case NA_LAYER_TRAIL: layer = "trail"; break;
        case NA_LAYER_LENGTH: layer = "length"; break;
        case NA_LAYER_TIME: layer = "time"; break;
        case NA_LAYER_ANN: layer = "ann"; break;
        case NA_LAYER_NONE: break;
    }
    if (decision.intruder_declared) {
        std::cout << "access denied (layer: " << layer << "); intruder declared, profile locked\n";
        return kExitLocked;
    }
    if (decision.locked) {
        std::cout << "access denied (layer: " << layer << "); profile is locked\n";
        return kExitLocked;
    }
    std::cout << "access denied (layer: " << layer << ")\n";
    return kExitDenied;
}

struct CommonEnroll {
    std::string profile_path;
    std::string log_path;
    bool two_passwords = false;
    na_enroll_options options{};
    std::vector<std::string> passwords;
};

int run_enroll(const CommonEnroll& args) {
    const std::size_t resources = args.two_passwords ? 2 : 1;
    std::vector<std::string> prompts;
    if (resources == 2) {
        prompts = {"Provider password: ", "User password: ", "Reset password: "};
    } else {
        prompts = {"Resource password: ", "Reset password: "};
    }

    std::vector<std::string> passwords = args.passwords;
    if (passwords.empty()) {
        for (const std::string& prompt : prompts)
            passwords.push_back(prompt_with_timing(prompt).text);
    } else if (passwords.size() != prompts.size()) {
        std::cerr << "error: expected " << prompts.size() << " --password flags, got "
                  << passwords.size() << '\n';
        return kExitUsage;
    }

    std::vector<const char*> resource_ptrs;
    for (std::size_t i = 0; i < resources; ++i)
        resource_ptrs.push_back(passwords[i].c_str());

    na_profile* raw = nullptr;
    const na_status status = na_profile_create(
        args.profile_path.c_str(), args.log_path.empty() ? nullptr : args.log_path.c_str(),
        resource_ptrs.data(), resource_ptrs.size(), passwords[resources].c_str(),
        &args.options, &raw);
    if (status != NA_OK) fail_status(status);
    ProfileHandle profile(raw, &na_profile_close);

    std::cout << "profile written to " << args.profile_path << '\n';
    const std::size_t count = na_profile_resource_count(profile.get());
    for (std::size_t i = 0; i <= count; ++i) {
        na_resource_info info;
        if (na_profile_resource_info(profile.get(), i, &info) == NA_OK)
            std::cout << "  template " << role_label(info) << '\n';
    }
    return kExitGranted;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"neural-network password authentication"};
    app.require_subcommand(1);

    // ---- enroll ----
    CommonEnroll enroll_args;
    na_enroll_options_init(&enroll_args.options);
    std::string time_window;
    bool no_time_layer = false;

    CLI::App* enroll = app.add_subcommand("enroll", "create a profile by training its passwords");
    enroll->add_option("--profile", enroll_args.profile_path, "profile file to write")->required();
    enroll->add_option("--log-path", enroll_args.log_path,
                       "intrusion log path (default: <profile>.log)");
    enroll->add_flag("--two-passwords", enroll_args.two_passwords,
                     "enroll provider and user resource passwords");
    enroll->add_option("--eta", enroll_args.options.eta, "learning rate");
    enroll->add_option("--epsilon", enroll_args.options.epsilon, "training stop threshold");
    enroll->add_option("--max-epochs", enroll_args.options.max_epochs, "training epoch budget");
    enroll->add_option("--seed", enroll_args.options.seed, "weight initialization seed");
    enroll->add_option("--lambda", enroll_args.options.lambda, "sigmoid steepness");
    enroll->add_option("--max-trials", enroll_args.options.max_trials,
                       "failed attempts before lockout");
    enroll->add_option("--time-window", time_window, "accepted entry time MIN,MAX in ms");
    enroll->add_flag("--no-time-layer", no_time_layer, "disable the entry-time check");
    enroll->add_option("--password", enroll_args.passwords,
                       "scripted passwords: resources in order, reset last");

    // ---- access ----
    std::string access_profile;
    std::vector<std::string> access_passwords;
    std::vector<std::uint64_t> access_times;
    std::string server_path, token_path;

    CLI::App* access = app.add_subcommand("access", "request resource access");
    access->add_option("--profile", access_profile, "profile file")->required();
    access->add_option("--password", access_passwords, "scripted candidate password(s)");
    access->add_option("--time-ms", access_times, "scripted entry time(s) in ms");
    access->add_option("--server", server_path, "server part file (two-factor mode)");
    access->add_option("--token", token_path, "token file (two-factor mode)");

    // ---- reset ----
    std::string reset_profile_path;
    bool new_passwords_flag = false;
    std::uint64_t reset_seed = 1;
    std::vector<std::string> reset_current;
    std::vector<std::string> reset_new;

    CLI::App* reset = app.add_subcommand("reset", "re-enroll passwords / clear a lockout");
    reset->add_option("--profile", reset_profile_path, "profile file")->required();
    reset->add_flag("--new-passwords", new_passwords_flag, "choose replacement passwords");
    reset->add_option("--seed", reset_seed, "seed for the re-training");
    reset->add_option("--password", reset_current,
                      "scripted current passwords: resources in order, reset last");
    reset->add_option("--new-password", reset_new, "scripted replacement passwords");

    // ---- log ----
    std::string log_profile_path;
    std::vector<std::string> log_passwords;
    CLI::App* log_cmd = app.add_subcommand("log", "print the intrusion log (reset-mode gated)");
    log_cmd->add_option("--profile", log_profile_path, "profile file")->required();
    log_cmd->add_option("--password", log_passwords,
                        "scripted current passwords: resources in order, reset last");

    // ---- export-token ----
    std::string export_profile_path, export_role, token_out, server_out;
    CLI::App* export_cmd =
        app.add_subcommand("export-token", "split a template into token and server parts");
    export_cmd->add_option("--profile", export_profile_path, "profile file")->required();
    export_cmd->add_option("--which", export_role, "provider, user or reset")->required();
    export_cmd->add_option("--token-out", token_out, "token file to write")->required();
    export_cmd->add_option("--server-out", server_out, "server part file to write")->required();

    // ---- replicate ----
    std::string out_dir;
    CLI::App* replicate = app.add_subcommand("replicate", "rerun the reference experiments");
    replicate->add_option("--out-dir", out_dir, "directory for the CSV outputs")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    if (enroll->parsed()) {
        if (!time_window.empty()) {
            const std::size_t comma = time_window.find(',');
            char* end_min = nullptr;
            char* end_max = nullptr;
            if (comma == std::string::npos) {
                std::cerr << "error: --time-window expects MIN,MAX\n";
                return kExitUsage;
            }
            const std::string min_text = time_window.substr(0, comma);
            const std::string max_text = time_window.substr(comma + 1);
            enroll_args.options.time_min_ms = std::strtoull(min_text.c_str(), &end_min, 10);
            enroll_args.options.time_max_ms = std::strtoull(max_text.c_str(), &end_max, 10);
            if (min_text.empty() || max_text.empty() || *end_min != '\0' || *end_max != '\0') {
                std::cerr << "error: --time-window expects MIN,MAX in milliseconds\n";
                return kExitUsage;
            }
        }
        if (no_time_layer) enroll_args.options.time_layer_enabled = 0;
        return run_enroll(enroll_args);
    }

    if (access->parsed()) {
        ProfileHandle profile = open_profile(access_profile);
        const bool two_factor = !server_path.empty() || !token_path.empty();
        if (two_factor && (server_path.empty() || token_path.empty())) {
            std::cerr << "error: two-factor access needs both --server and --token\n";
            return kExitUsage;
        }

        na_decision decision{};
        if (na_profile_is_locked(profile.get())) {
            // Locked: refuse before prompting; scripted candidates still count.
            std::vector<na_timed_password> scripted;
            for (std::size_t i = 0; i < access_passwords.size(); ++i)
                scripted.push_back(na_timed_password{
                    access_passwords[i].c_str(),
                    i < access_times.size() ? access_times[i] : 0});
            const na_status status = na_profile_access(profile.get(), scripted.data(),
                                                       scripted.size(), &decision);
            if (status != NA_OK) fail_status(status);
            return report_decision(decision);
        }

        if (two_factor) {
            std::vector<TimedEntry> entries =
                gather_entries(access_passwords, access_times, {"Password: "});
            const na_timed_password candidate{entries[0].text.c_str(), entries[0].insertion_ms};
            const na_status status = na_profile_access_two_factor(
                profile.get(), server_path.c_str(), token_path.c_str(), &candidate, &decision);
            if (status != NA_OK) fail_status(status);
            return report_decision(decision);
        }

        std::vector<std::string> prompts;
        const std::size_t count = na_profile_resource_count(profile.get());
        for (std::size_t i = 0; i < count; ++i) {
            na_resource_info info;
            if (na_profile_resource_info(profile.get(), i, &info) != NA_OK)
                fail_status(NA_ERR_INTERNAL);
            prompts.push_back(std::string(info.role) + " password: ");
        }
        std::vector<TimedEntry> entries = gather_entries(access_passwords, access_times, prompts);
        std::vector<na_timed_password> candidates;
        for (const TimedEntry& entry : entries)
            candidates.push_back(na_timed_password{entry.text.c_str(), entry.insertion_ms});
        const na_status status =
            na_profile_access(profile.get(), candidates.data(), candidates.size(), &decision);
        if (status != NA_OK) fail_status(status);
        return report_decision(decision);
    }

    if (reset->parsed() || log_cmd->parsed()) {
        const bool is_reset = reset->parsed();
        const std::string& path = is_reset ? reset_profile_path : log_profile_path;
        ProfileHandle profile = open_profile(path);

        std::vector<std::string> prompts;
        const std::size_t count = na_profile_resource_count(profile.get());
        for (std::size_t i = 0; i <= count; ++i) {
            na_resource_info info;
            if (na_profile_resource_info(profile.get(), i, &info) != NA_OK)
                fail_status(NA_ERR_INTERNAL);
            prompts.push_back(std::string("current ") + info.role + " password: ");
        }

        std::vector<std::string>& scripted = is_reset ? reset_current : log_passwords;
        std::vector<std::string> current;
        if (!scripted.empty()) {
            if (scripted.size() != prompts.size()) {
                std::cerr << "error: expected " << prompts.size() << " --password flags, got "
                          << scripted.size() << '\n';
                return kExitUsage;
            }
            current = scripted;
        } else {
            for (const std::string& prompt : prompts)
                current.push_back(prompt_with_timing(prompt).text);
        }
        std::vector<const char*> current_ptrs;
        for (const std::string& pw : current) current_ptrs.push_back(pw.c_str());

        if (!is_reset) {
            char* text = nullptr;
            const na_status status = na_profile_read_log(profile.get(), current_ptrs.data(),
                                                         current_ptrs.size(), &text);
            if (status == NA_ERR_RESET_DENIED) {
                std::cerr << "log access denied\n";
                return kExitDenied;
            }
            if (status != NA_OK) fail_status(status);
            std::cout << text;
            na_string_free(text);
            return kExitGranted;
        }

        std::vector<std::string> replacements = reset_new;
        if (new_passwords_flag && replacements.empty()) {
            for (std::size_t i = 0; i <= count; ++i) {
                na_resource_info info;
                na_profile_resource_info(profile.get(), i, &info);
                replacements.push_back(
                    prompt_with_timing(std::string("new ") + info.role + " password: ").text);
            }
        }
        if (!replacements.empty() && replacements.size() != prompts.size()) {
            std::cerr << "error: expected " << prompts.size() << " replacement passwords, got "
                      << replacements.size() << '\n';
            return kExitUsage;
        }
        std::vector<const char*> replacement_ptrs;
        for (const std::string& pw : replacements) replacement_ptrs.push_back(pw.c_str());

        const na_status status = na_profile_reset(
            profile.get(), current_ptrs.data(), current_ptrs.size(),
            replacement_ptrs.empty() ? nullptr : replacement_ptrs.data(),
            replacement_ptrs.size(), reset_seed);
        if (status == NA_ERR_RESET_DENIED) {
            std::cerr << "reset denied\n";
            return kExitDenied;
        }
        if (status != NA_OK) fail_status(status);
        std::cout << "reset complete; passwords re-trained and lockout cleared\n";
        return kExitGranted;
    }

    if (export_cmd->parsed()) {
        ProfileHandle profile = open_profile(export_profile_path);
        const na_status status = na_profile_export_token(
            profile.get(), export_role.c_str(), token_out.c_str(), server_out.c_str());
        if (status != NA_OK) fail_status(status);
        std::cout << "token written to " << token_out << ", server part to " << server_out << '\n';
        return kExitGranted;
    }

    if (replicate->parsed()) {
        const na_status status = na_replicate_experiments(out_dir.c_str());
        if (status != NA_OK) fail_status(status);
        std::cout << "experiment outputs written to " << out_dir << '\n';
        return kExitGranted;
    }

    return kExitUsage;
}
