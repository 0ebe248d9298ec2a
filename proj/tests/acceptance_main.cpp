// Acceptance suite: ten end-to-end criteria, one pass/fail line each.
// Exits nonzero when any criterion fails its checks or its time budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "neuroauth/codec.hpp"
#include "neuroauth/errors.hpp"
#include "neuroauth/replicate.hpp"
#include "neuroauth/template.hpp"
#include "neuroauth/trainer.hpp"
#include "neuroauth/vault.hpp"

using namespace neuroauth;
namespace fs = std::filesystem;

namespace {

struct Criterion {
    int number;
    std::string name;
    double budget_seconds;
    std::function<void(std::string&)> run; // throws on failure, may append detail
};

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void expect(bool condition, const std::string& what) {
    if (!condition) throw Failure(what);
}

fs::path g_workdir;

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    expect(static_cast<bool>(in), "cannot open " + path.string());
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

std::string random_printable(std::mt19937_64& gen, std::size_t length) {
    std::uniform_int_distribution<int> dist(0x20, 0x7e);
    std::string out;
    for (std::size_t i = 0; i < length; ++i) out.push_back(static_cast<char>(dist(gen)));
    return out;
}

// Parses "node_index,abs_difference" rows; header required.
std::vector<double> read_diff_csv(const fs::path& path) {
    std::ifstream in(path);
    expect(static_cast<bool>(in), "cannot open " + path.string());
    std::string line;
    expect(static_cast<bool>(std::getline(in, line)), path.string() + " is empty");
    expect(line == "node_index,abs_difference", path.string() + " has a wrong header");
    std::vector<double> values;
    while (std::getline(in, line)) {
        const std::size_t comma = line.find(',');
        expect(comma != std::string::npos, path.string() + " has a malformed row");
        values.push_back(std::stod(line.substr(comma + 1)));
    }
    return values;
}

double final_curve_error(const fs::path& path) {
    std::ifstream in(path);
    expect(static_cast<bool>(in), "cannot open " + path.string());
    std::string line, last;
    expect(static_cast<bool>(std::getline(in, line)), path.string() + " is empty");
    expect(line == "epoch,error", path.string() + " has a wrong header");
    while (std::getline(in, line))
        if (!line.empty()) last = line;
    expect(!last.empty(), path.string() + " has no data rows");
    return std::stod(last.substr(last.find(',') + 1));
}

EnrollmentRequest basic_enrollment(const std::string& resource, const std::string& reset_pw,
                                   std::uint64_t seed, const fs::path& log_path) {
    EnrollmentRequest request;
    request.resource_passwords = {resource};
    request.reset_password = reset_pw;
    request.training.seed = seed;
    request.log_path = log_path.string();
    return request;
}

// ---- criteria ----

void criterion_architecture(std::string& detail) {
    TrainingConfig config;
    config.seed = 11;
    const Template neural = enroll("neural", config);
    expect(neural.architecture.input_count == 42, "'neural' input count != 42");
    expect(neural.architecture.hidden_count == 13, "'neural' hidden count != 13");
    expect(neural.mapped_hidden.size() == 13, "'neural' mapped vector size != 13");

    config.seed = 12;
    const Template architecture = enroll("architecture", config);
    expect(architecture.architecture.input_count == 84, "'architecture' input count != 84");
    expect(architecture.architecture.hidden_count == 25, "'architecture' hidden count != 25");
    detail = "42/13/1 and 84/25/1";
}

void criterion_convergence(std::string& detail) {
    TrainingConfig config; // eta 0.5, target 0.5 as stated
    config.lambda = 1.0;
    config.seed = 42;
    const BitVector input = encode_password("neural");
    const TrainResult result = train(input, config);
    const double error = std::fabs(0.5 - forward(result.weights, input, 1.0).final_output);
    expect(error < 1e-5, "final error " + std::to_string(error) + " not below 1e-5");
    detail = std::to_string(result.curve.errors.size()) + " epochs, final error " +
             std::to_string(error);
}

void criterion_gradient_oracle(std::string&) {
    std::mt19937_64 gen(987654321);
    const double h = 1e-6;
    for (int instance = 0; instance < 20; ++instance) {
        const std::size_t inputs = 7 * (1 + gen() % 4); // up to 28 inputs
        const std::size_t hidden = 1 + gen() % 8;       // up to 8 hidden
        WeightSet w = init_weights(Architecture{inputs, hidden, 1.0}, gen());
        BitVector input(inputs);
        for (auto& bit : input) bit = static_cast<std::uint8_t>(gen() & 1);

        const WeightGradient grad = compute_gradient(w, input, 0.5, 1.0);
        const auto loss = [&] {
            const double out = forward(w, input, 1.0).final_output;
            return 0.5 * (0.5 - out) * (0.5 - out);
        };
        const auto check_param = [&](double* param, double analytic) {
            const double saved = *param;
            *param = saved + h;
            const double plus = loss();
            *param = saved - h;
            const double minus = loss();
            *param = saved;
            const double numeric = (plus - minus) / (2 * h);
            const double scale = std::max(std::fabs(analytic), std::fabs(numeric));
            if (scale < 1e-9) return; // parameter behind a zero input bit
            expect(std::fabs(analytic - numeric) <= 1e-4 * scale,
                   "gradient mismatch: analytic " + std::to_string(analytic) + " vs numeric " +
                       std::to_string(numeric));
        };
        for (std::size_t i = 0; i < w.w1.size(); ++i) check_param(&w.w1[i], grad.d_w1[i]);
        for (std::size_t i = 0; i < hidden; ++i) {
            check_param(&w.b1[i], grad.d_b1[i]);
            check_param(&w.w2[i], grad.d_w2[i]);
        }
        check_param(&w.b2, grad.d_b2);
    }
}

void criterion_replication(std::string& detail) {
    const fs::path out_dir = g_workdir / "replicate";
    replicate_experiments(out_dir);

    expect(final_curve_error(out_dir / "exp1_curve.csv") < 1e-5, "exp1 curve floor >= 1e-5");
    expect(final_curve_error(out_dir / "exp2_curve.csv") < 1e-5, "exp2 curve floor >= 1e-5");

    const auto all_below = [&](const char* name, std::size_t rows) {
        const std::vector<double> diffs = read_diff_csv(out_dir / name);
        expect(diffs.size() == rows, std::string(name) + ": unexpected row count");
        for (double d : diffs)
            expect(d <= 1e-12, std::string(name) + " holds a diff above 1e-12");
    };
    const auto some_above = [&](const char* name) {
        const std::vector<double> diffs = read_diff_csv(out_dir / name);
        expect(!diffs.empty(), std::string(name) + " is empty");
        expect(*std::max_element(diffs.begin(), diffs.end()) > 1e-3,
               std::string(name) + " never exceeds 1e-3");
    };

    all_below("exp1_diff_neural.csv", 14);
    all_below("exp2_diff_architecture.csv", 26);
    some_above("exp1_diff_meural.csv");
    some_above("exp1_diff_neurba.csv");
    some_above("exp1_diff_signal.csv");
    some_above("exp2_diff_manojkrsingh.csv");

    // "manoj_singh" is 11 characters against a 12-character enrollment: the
    // length pre-check rejects it before any forward pass, so its diff file
    // carries no rows.
    expect(read_diff_csv(out_dir / "exp2_diff_manoj_singh.csv").empty(),
           "manoj_singh was not length-rejected");
    TrainingConfig config;
    config.seed = 202;
    const VerifyOutcome outcome = verify(enroll("architecture", config), "manoj_singh");
    expect(outcome.rejected_stage == RejectStage::length && outcome.diff_vector.empty(),
           "manoj_singh reached the network");
    detail = "correct <= 1e-12, wrong > 1e-3, wrong length pre-rejected";
}

void criterion_false_accepts(std::string& detail) {
    std::mt19937_64 gen(1337);
    int comparisons = 0;
    for (int enrollment = 0; enrollment < 20; ++enrollment) {
        const std::size_t length = 4 + gen() % 9; // 4..12
        const std::string password = random_printable(gen, length);
        TrainingConfig config;
        config.seed = gen();
        const Template tmpl = enroll(password, config);
        for (int round = 0; round < 200; ++round) {
            std::string candidate = random_printable(gen, length);
            if (candidate == password) candidate[0] = candidate[0] == '!' ? '"' : '!';
            expect(!verify(tmpl, candidate).authenticated,
                   "false accept for '" + candidate + "' against '" + password + "'");
            ++comparisons;
        }
    }
    detail = std::to_string(comparisons) + " wrong candidates, 0 accepted";
}

void criterion_guard(std::string& detail) {
    const fs::path profile_path = g_workdir / "guard.profile";
    const fs::path log_path = g_workdir / "guard.log";
    Profile profile = create_profile(basic_enrollment("neural", "rescuecode", 5, log_path));
    expect(profile.guard_config.max_trials == 3, "default max_trials != 3");

    const std::vector<TimedCandidate> wrong{TimedCandidate{"neuros", 500}};
    const std::vector<TimedCandidate> right{TimedCandidate{"neural", 500}};

    GuardDecision decision = profile_access(profile, wrong);
    expect(!decision.granted && !decision.intruder_declared, "first failure state wrong");
    decision = profile_access(profile, wrong);
    expect(!decision.granted && !decision.intruder_declared, "second failure state wrong");
    decision = profile_access(profile, wrong);
    expect(decision.intruder_declared && profile.guard_state.locked,
           "third failure must declare the intruder");

    // Locked: the correct password is refused before the network runs.
    decision = profile_access(profile, right);
    expect(!decision.granted, "locked profile granted access");
    expect(decision.failed_layer == GuardLayer::trail, "locked denial not at trail layer");
    expect(decision.ann_invocations == 0, "network ran while locked");

    // One wrong reset password: nothing changes, on disk or in memory.
    save_profile(profile, profile_path);
    const std::string locked_bytes = read_file(profile_path);
    ResetRequest bad_reset;
    bad_reset.current_passwords = {"neural", "wrongcode!"};
    bad_reset.new_seed = 99;
    bool denied = false;
    try {
        reset_profile(profile, bad_reset);
    } catch (const Error& e) {
        denied = e.code() == Errc::reset_denied;
    }
    expect(denied, "wrong reset password was not denied");
    expect(profile.guard_state.locked, "failed reset cleared the lock");
    save_profile(profile, profile_path);
    expect(read_file(profile_path) == locked_bytes, "failed reset changed the profile");

    // All three correct: lock cleared, access works again.
    ResetRequest good_reset;
    good_reset.current_passwords = {"neural", "rescuecode"};
    good_reset.new_seed = 99;
    profile = reset_profile(profile, good_reset);
    expect(!profile.guard_state.locked && profile.guard_state.failed_count == 0,
           "reset did not clear the guard state");
    decision = profile_access(profile, right);
    expect(decision.granted, "access after reset failed");
    detail = "lockout, trail short-circuit and reset all behave";
}

void criterion_reencryption(std::string& detail) {
    Profile profile =
        create_profile(basic_enrollment("neural", "rescuecode", 7, g_workdir / "re.log"));
    ResetRequest request;
    request.current_passwords = {"neural", "rescuecode"};
    request.new_seed = 1234;
    const Profile next = reset_profile(profile, request);

    std::size_t changed = 0, total = 0;
    const auto compare = [&](const Template& a, const Template& b) {
        expect(a.weights.w1.size() == b.weights.w1.size(), "shape changed across reset");
        std::size_t local = 0;
        for (std::size_t i = 0; i < a.weights.w1.size(); ++i)
            if (a.weights.w1[i] != b.weights.w1[i]) ++local;
        for (std::size_t i = 0; i < a.weights.w2.size(); ++i)
            if (a.weights.w2[i] != b.weights.w2[i]) ++local;
        expect(local >= 1, "a template kept identical weights across reset");
        expect(a.mapped_hidden != b.mapped_hidden, "mapped values unchanged across reset");
        changed += local;
        total += a.weights.w1.size() + a.weights.w2.size();
    };
    compare(profile.resource_templates[0].second, next.resource_templates[0].second);
    compare(profile.reset_template, next.reset_template);

    expect(verify(next.resource_templates[0].second, "neural").authenticated,
           "resource password no longer verifies after reset");
    expect(verify(next.reset_template, "rescuecode").authenticated,
           "reset password no longer verifies after reset");
    std::ostringstream out;
    out << changed << "/" << total << " weights changed";
    detail = out.str();
}

void criterion_two_factor(std::string& detail) {
    Profile profile =
        create_profile(basic_enrollment("neural", "rescuecode", 31, g_workdir / "tf_a.log"));
    const Template& tmpl = profile.resource_templates[0].second;
    const auto [token, server] = split_two_factor(tmpl);

    std::mt19937_64 gen(4242);
    int agreed = 0;
    for (int round = 0; round < 20; ++round) {
        std::string candidate;
        if (round == 0) candidate = "neural";
        else if (round % 3 == 0) candidate = random_printable(gen, 6);
        else candidate = random_printable(gen, 1 + gen() % 12);
        const VerifyOutcome whole = verify(tmpl, candidate);
        const VerifyOutcome split = verify_two_factor(server, &token, candidate);
        expect(whole.authenticated == split.authenticated &&
                   whole.diff_vector == split.diff_vector &&
                   whole.rejected_stage == split.rejected_stage,
               "split verification diverged on '" + candidate + "'");
        ++agreed;
    }

    bool refused = false;
    try {
        verify_two_factor(server, nullptr, "neural");
    } catch (const Error& e) {
        refused = e.code() == Errc::missing_token;
    }
    expect(refused, "server part alone did not refuse");

    EnrollmentRequest other = basic_enrollment("neural", "rescuecode", 99, g_workdir / "tf_b.log");
    const Profile second = create_profile(other);
    const auto [foreign_token, foreign_server] =
        split_two_factor(second.resource_templates[0].second);
    (void)foreign_server;
    const VerifyOutcome crossed = verify_two_factor(server, &foreign_token, "neural");
    expect(!crossed.authenticated, "token from another enrollment was accepted");
    std::ostringstream out;
    out << agreed << " candidates agreed; lone server and crossed token refused";
    detail = out.str();
}

void criterion_persistence(std::string& detail) {
    std::mt19937_64 gen(24680);
    const fs::path dir = g_workdir / "persist";
    fs::create_directories(dir);

    for (int round = 0; round < 50; ++round) {
        Profile profile;
        profile.lambda = 0.25;
        profile.guard_config.max_trials = 1 + gen() % 4;
        profile.guard_config.time_layer_enabled = (gen() % 2) == 0;
        profile.guard_state.failed_count = gen() % profile.guard_config.max_trials;
        profile.log_path = (dir / "x.log").string();

        const auto rand_template = [&] {
            const std::size_t inputs = 7 * (1 + gen() % 8);
            const Architecture arch{inputs, hidden_count_for(inputs), 0.25};
            Template tmpl;
            tmpl.architecture = arch;
            tmpl.weights = init_weights(arch, gen());
            std::uniform_real_distribution<double> scale(-4.0, 4.0);
            for (double& v : tmpl.weights.w1) v *= scale(gen);
            for (double& v : tmpl.weights.b1) v *= scale(gen) * 1e-200;
            for (double& v : tmpl.weights.w2) v *= scale(gen) * 1e200;
            tmpl.mapped_hidden.assign(arch.hidden_count, 0.0);
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            for (double& v : tmpl.mapped_hidden) v = unit(gen);
            tmpl.mapped_final = unit(gen);
            tmpl.meta = TrainingMeta{0.5, 1e-5, gen(), gen() % 10000};
            return tmpl;
        };
        profile.resource_templates.emplace_back(TemplateRole::user, rand_template());
        if (gen() % 2 == 0)
            profile.resource_templates.insert(
                profile.resource_templates.begin(),
                {TemplateRole::provider, rand_template()});
        profile.reset_template = rand_template();

        const fs::path path = dir / ("p" + std::to_string(round));
        save_profile(profile, path);
        const std::string bytes = read_file(path);
        const Profile loaded = load_profile(path);
        const fs::path resaved = dir / "resaved";
        save_profile(loaded, resaved);
        expect(read_file(resaved) == bytes, "round trip changed the file bytes");
    }

    // Single-hex-digit tamper must trip the checksum.
    const fs::path victim = dir / "p0";
    std::string bytes = read_file(victim);
    const std::size_t pos = bytes.find("mapped_final ") + 13;
    bytes[pos] = bytes[pos] == 'f' ? 'e' : 'f';
    std::ofstream(victim, std::ios::binary | std::ios::trunc) << bytes;
    bool tripped = false;
    try {
        load_profile(victim);
    } catch (const Error& e) {
        tripped = e.code() == Errc::checksum_mismatch;
    }
    expect(tripped, "tampered profile loaded without a checksum error");
    detail = "50 profiles bit-exact; tamper detected";
}

void criterion_determinism(std::string& detail) {
    const fs::path first = g_workdir / "det_a.profile";
    const fs::path second = g_workdir / "det_b.profile";
    const EnrollmentRequest request =
        basic_enrollment("neural", "rescuecode", 2024, g_workdir / "det.log");

    save_profile(create_profile(request), first);
    save_profile(create_profile(request), second);
    const std::string a = read_file(first);
    const std::string b = read_file(second);
    expect(a == b, "two identical enrollments produced different bytes");
    detail = std::to_string(a.size()) + " bytes, identical";
}

} // namespace

int main() {
    std::mt19937_64 seed_gen(std::random_device{}());
    g_workdir = fs::temp_directory_path() /
                ("neuroauth_acceptance_" + std::to_string(seed_gen() & 0xffffffff));
    fs::create_directories(g_workdir);

    const std::vector<Criterion> criteria = {
        {1, "architecture pinning (42/13/1, 84/25/1)", 1.0, criterion_architecture},
        {2, "training convergence below 1e-5 (eta 0.5, lambda 1)", 5.0, criterion_convergence},
        {3, "gradient matches finite differences (rel 1e-4)", 10.0, criterion_gradient_oracle},
        {4, "experiment replication (diff thresholds)", 30.0, criterion_replication},
        {5, "false-accept sweep (20 x 200 candidates)", 120.0, criterion_false_accepts},
        {6, "guard state machine (lockout, trail, reset)", 5.0, criterion_guard},
        {7, "re-encryption on reset keeps authentication", 10.0, criterion_reencryption},
        {8, "two-factor split equivalence and refusals", 10.0, criterion_two_factor},
        {9, "bit-exact persistence and tamper detection", 10.0, criterion_persistence},
        {10, "byte-identical deterministic enrollment", 5.0, criterion_determinism},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        std::string detail;
        std::string error;
        const auto start = std::chrono::steady_clock::now();
        try {
            criterion.run(detail);
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        bool ok = error.empty();
        if (ok && seconds >= criterion.budget_seconds) {
            ok = false;
            error = "exceeded the " + std::to_string(criterion.budget_seconds) + " s budget";
        }
        if (!ok) ++failures;

        std::printf("%s  criterion %2d: %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL",
                    criterion.number, criterion.name.c_str(), seconds,
                    (ok && !detail.empty()) ? " -- " : (!ok ? " -- " : ""),
                    ok ? detail.c_str() : error.c_str());
    }

    std::error_code ec;
    fs::remove_all(g_workdir, ec);

    if (failures > 0) {
        std::printf("%d of %zu criteria failed\n", failures, criteria.size());
        return 1;
    }
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
}
