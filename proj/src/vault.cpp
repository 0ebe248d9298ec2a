#include "neuroauth/vault.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "neuroauth/codec.hpp"
#include "serialize_util.hpp"

namespace neuroauth {

namespace {

using detail::hex16_from_double;
using detail::malformed;
using detail::parse_hex_double_or_die;

constexpr std::string_view kTokenMagic = "neuroauth-token";
constexpr std::string_view kServerMagic = "neuroauth-server";

TrainingConfig training_config_for(const Profile& profile, const TrainingMeta& meta,
                                   std::uint64_t seed) {
    TrainingConfig config;
    config.eta = meta.eta;
    config.epsilon = meta.epsilon;
    config.lambda = profile.lambda;
    config.seed = seed;
    return config;
}

} // namespace

const char* role_name(TemplateRole role) {
    switch (role) {
        case TemplateRole::provider: return "provider";
        case TemplateRole::user: return "user";
        case TemplateRole::reset: return "reset";
    }
    return "unknown";
}

std::optional<TemplateRole> role_from_name(std::string_view name) {
    if (name == "provider") return TemplateRole::provider;
    if (name == "user") return TemplateRole::user;
    if (name == "reset") return TemplateRole::reset;
    return std::nullopt;
}

Profile create_profile(const EnrollmentRequest& request) {
    if (request.resource_passwords.empty() || request.resource_passwords.size() > 2)
        raise(Errc::invalid_argument, "enrollment needs one or two resource passwords");
    validate(request.guard);
    validate(request.training);
    if (request.log_path.empty())
        raise(Errc::invalid_argument, "enrollment needs an intrusion log path");

    Profile profile;
    profile.lambda = request.training.lambda;
    profile.guard_config = request.guard;
    profile.log_path = request.log_path;

    // Seeds derive from the configured seed by template position so that two
    // same-length passwords never start from identical weights.
    std::uint64_t index = 0;
    for (const std::string& password : request.resource_passwords) {
        TrainingConfig config = request.training;
        config.seed = request.training.seed + index;
        const TemplateRole role = (request.resource_passwords.size() == 2 && index == 0)
                                      ? TemplateRole::provider
                                      : TemplateRole::user;
        profile.resource_templates.emplace_back(role, enroll(password, config));
        ++index;
    }
    TrainingConfig config = request.training;
    config.seed = request.training.seed + index;
    profile.reset_template = enroll(request.reset_password, config);
    return profile;
}

void authenticate_reset_mode(const Profile& profile,
                             std::span<const std::string> passwords) {
    const std::size_t expected = profile.resource_templates.size() + 1;
    if (passwords.size() != expected)
        raise(Errc::invalid_argument,
              "reset mode needs " + std::to_string(expected) + " passwords, got " +
                  std::to_string(passwords.size()));

    // Length and mapped-value checks only; the trail lockout must not make
    // the reset path unreachable and entry timing is not measured here.
    const auto now = std::chrono::system_clock::now();
    std::vector<AttemptRecord> failures;
    for (std::size_t i = 0; i < passwords.size(); ++i) {
        const Template& tmpl = (i < profile.resource_templates.size())
                                   ? profile.resource_templates[i].second
                                   : profile.reset_template;
        const VerifyOutcome outcome = verify(tmpl, passwords[i]);
        if (!outcome.authenticated)
            failures.push_back(AttemptRecord{
                now,
                outcome.rejected_stage == RejectStage::length ? GuardLayer::length
                                                              : GuardLayer::ann,
                passwords[i], 0});
    }
    if (!failures.empty()) {
        append_log(profile.log_path, failures);
        // Deliberately silent about which of the passwords failed.
        raise(Errc::reset_denied, "reset denied: at least one password did not verify");
    }
}

Profile reset_profile(const Profile& profile, const ResetRequest& request) {
    authenticate_reset_mode(profile, request.current_passwords);

    const std::vector<std::string>& passwords =
        request.new_passwords ? *request.new_passwords : request.current_passwords;
    if (passwords.size() != request.current_passwords.size())
        raise(Errc::invalid_argument,
              "replacement passwords must match the enrolled template count");

    Profile next;
    next.lambda = profile.lambda;
    next.guard_config = profile.guard_config;
    next.guard_state = GuardState{}; // lockout cleared
    next.log_path = profile.log_path;

    std::uint64_t index = 0;
    for (const auto& [role, tmpl] : profile.resource_templates) {
        next.resource_templates.emplace_back(
            role, enroll(passwords[index],
                         training_config_for(profile, tmpl.meta, request.new_seed + index)));
        ++index;
    }
    next.reset_template =
        enroll(passwords[index], training_config_for(profile, profile.reset_template.meta,
                                                     request.new_seed + index));
    return next;
}

std::pair<TokenPart, ServerPart> split_two_factor(const Template& tmpl) {
    if (!tmpl.has_hidden_weights)
        raise(Errc::missing_token, "template was already split; hidden weights are gone");

    TokenPart token;
    token.input_count = tmpl.architecture.input_count;
    token.hidden_count = tmpl.architecture.hidden_count;
    token.lambda = tmpl.architecture.lambda;
    token.w1 = tmpl.weights.w1;
    token.b1 = tmpl.weights.b1;

    ServerPart server;
    server.input_count = tmpl.architecture.input_count;
    server.hidden_count = tmpl.architecture.hidden_count;
    server.lambda = tmpl.architecture.lambda;
    server.w2 = tmpl.weights.w2;
    server.b2 = tmpl.weights.b2;
    server.mapped_hidden = tmpl.mapped_hidden;
    server.mapped_final = tmpl.mapped_final;
    return {std::move(token), std::move(server)};
}

VerifyOutcome verify_two_factor(const ServerPart& server, const TokenPart* token,
                                std::string_view candidate) {
    if (token == nullptr)
        raise(Errc::missing_token, "verification needs the token part of the split");
    if (token->input_count != server.input_count ||
        token->hidden_count != server.hidden_count || token->lambda != server.lambda)
        raise(Errc::dimension_mismatch, "token and server parts describe different networks");

    Template tmpl;
    tmpl.architecture =
        Architecture{server.input_count, server.hidden_count, server.lambda};
    tmpl.weights.input_count = server.input_count;
    tmpl.weights.hidden_count = server.hidden_count;
    tmpl.weights.w1 = token->w1;
    tmpl.weights.b1 = token->b1;
    tmpl.weights.w2 = server.w2;
    tmpl.weights.b2 = server.b2;
    tmpl.mapped_hidden = server.mapped_hidden;
    tmpl.mapped_final = server.mapped_final;
    return verify(tmpl, candidate);
}

namespace {

void append_dims(std::string& out, std::size_t input_count, std::size_t hidden_count,
                 double lambda) {
    out += "input_count = " + std::to_string(input_count) + '\n';
    out += "hidden_count = " + std::to_string(hidden_count) + '\n';
    if (!std::isfinite(lambda))
        raise(Errc::serialization_overflow, "lambda holds a non-finite value");
    out += "lambda = " + hex16_from_double(lambda) + '\n';
}

void append_values(std::string& out, std::string_view tag, std::span<const double> values) {
    out += tag;
    for (double v : values) {
        if (!std::isfinite(v))
            raise(Errc::serialization_overflow, std::string(tag) + " holds a non-finite value");
        out += ' ';
        out += hex16_from_double(v);
    }
    out += '\n';
}

std::vector<double> parse_values(std::string_view line, std::string_view tag,
                                 std::size_t expected, std::size_t line_number) {
    if (line.substr(0, tag.size()) != tag)
        malformed(line_number, "expected '" + std::string(tag) + "' row");
    std::vector<double> values;
    std::string_view rest = line.substr(tag.size());
    while (!rest.empty()) {
        if (rest.front() != ' ')
            malformed(line_number, "malformed '" + std::string(tag) + "' row");
        rest.remove_prefix(1);
        const std::size_t end = rest.find(' ');
        values.push_back(parse_hex_double_or_die(rest.substr(0, end), line_number, tag));
        rest = (end == std::string_view::npos) ? std::string_view{} : rest.substr(end);
    }
    if (values.size() != expected)
        malformed(line_number, "'" + std::string(tag) + "' row holds " +
                                   std::to_string(values.size()) + " values, expected " +
                                   std::to_string(expected));
    return values;
}

struct PartHeader {
    std::size_t input_count = 0;
    std::size_t hidden_count = 0;
    double lambda = 0.0;
};

PartHeader parse_part_header(detail::LineReader& reader, std::string_view magic,
                             const std::filesystem::path& path) {
    const auto header = reader.next();
    if (!header || header->substr(0, magic.size()) != magic)
        malformed(1, path.string() + " is not a " + std::string(magic) + " file");
    if (header->substr(magic.size()) != " v1")
        raise(Errc::version_unsupported, "unsupported version in " + path.string());

    PartHeader out;
    const auto input_line = reader.next();
    const auto input = detail::parse_uint<std::size_t>(
        detail::expect_kv(input_line, reader.line_number(), "input_count"));
    const auto hidden_line = reader.next();
    const auto hidden = detail::parse_uint<std::size_t>(
        detail::expect_kv(hidden_line, reader.line_number(), "hidden_count"));
    if (!input || !hidden)
        malformed(reader.line_number(), "dimensions must be integers");
    const auto lambda_line = reader.next();
    out.lambda = parse_hex_double_or_die(
        detail::expect_kv(lambda_line, reader.line_number(), "lambda"), reader.line_number(),
        "lambda");
    out.input_count = *input;
    out.hidden_count = *hidden;
    if (out.input_count == 0 || out.hidden_count == 0 || !(out.lambda > 0.0))
        malformed(reader.line_number(), "dimensions must be positive");
    return out;
}

} // namespace

void save_token(const TokenPart& token, const std::filesystem::path& path) {
    std::string out;
    out += std::string(kTokenMagic) + " v1\n";
    append_dims(out, token.input_count, token.hidden_count, token.lambda);
    for (std::size_t node = 0; node < token.hidden_count; ++node)
        append_values(out, "w1",
                      std::span<const double>(token.w1.data() + node * token.input_count,
                                              token.input_count));
    append_values(out, "b1", token.b1);
    detail::write_checksummed_file(path, std::move(out));
}

TokenPart load_token(const std::filesystem::path& path) {
    const std::string payload = detail::read_checksummed_file(path);
    detail::LineReader reader(payload);
    const PartHeader header = parse_part_header(reader, kTokenMagic, path);

    TokenPart token;
    token.input_count = header.input_count;
    token.hidden_count = header.hidden_count;
    token.lambda = header.lambda;
    token.w1.reserve(header.input_count * header.hidden_count);
    for (std::size_t node = 0; node < header.hidden_count; ++node) {
        const auto line = reader.next();
        if (!line) malformed(reader.line_number() + 1, "missing w1 row");
        const auto row = parse_values(*line, "w1", header.input_count, reader.line_number());
        token.w1.insert(token.w1.end(), row.begin(), row.end());
    }
    const auto b1_line = reader.next();
    if (!b1_line) malformed(reader.line_number() + 1, "missing b1 row");
    token.b1 = parse_values(*b1_line, "b1", header.hidden_count, reader.line_number());
    if (!reader.at_end())
        malformed(reader.line_number() + 1, "unexpected trailing content");
    return token;
}

void save_server_part(const ServerPart& server, const std::filesystem::path& path) {
    std::string out;
    out += std::string(kServerMagic) + " v1\n";
    append_dims(out, server.input_count, server.hidden_count, server.lambda);
    append_values(out, "w2", server.w2);
    if (!std::isfinite(server.b2))
        raise(Errc::serialization_overflow, "b2 holds a non-finite value");
    out += "b2 " + hex16_from_double(server.b2) + '\n';
    append_values(out, "mapped_hidden", server.mapped_hidden);
    if (!std::isfinite(server.mapped_final))
        raise(Errc::serialization_overflow, "mapped_final holds a non-finite value");
    out += "mapped_final " + hex16_from_double(server.mapped_final) + '\n';
    detail::write_checksummed_file(path, std::move(out));
}

ServerPart load_server_part(const std::filesystem::path& path) {
    const std::string payload = detail::read_checksummed_file(path);
    detail::LineReader reader(payload);
    const PartHeader header = parse_part_header(reader, kServerMagic, path);

    ServerPart server;
    server.input_count = header.input_count;
    server.hidden_count = header.hidden_count;
    server.lambda = header.lambda;

    auto line = reader.next();
    if (!line) malformed(reader.line_number() + 1, "missing w2 row");
    server.w2 = parse_values(*line, "w2", header.hidden_count, reader.line_number());

    line = reader.next();
    if (!line || line->substr(0, 3) != "b2 ")
        malformed(reader.line_number() + (line ? 0 : 1), "expected 'b2' row");
    server.b2 = parse_hex_double_or_die(line->substr(3), reader.line_number(), "b2");

    line = reader.next();
    if (!line) malformed(reader.line_number() + 1, "missing mapped_hidden row");
    server.mapped_hidden =
        parse_values(*line, "mapped_hidden", header.hidden_count, reader.line_number());

    line = reader.next();
    if (!line || line->substr(0, 13) != "mapped_final ")
        malformed(reader.line_number() + (line ? 0 : 1), "expected 'mapped_final' row");
    server.mapped_final =
        parse_hex_double_or_die(line->substr(13), reader.line_number(), "mapped_final");
    if (!reader.at_end())
        malformed(reader.line_number() + 1, "unexpected trailing content");
    return server;
}

GuardDecision profile_access(Profile& profile, std::span<const TimedCandidate> candidates) {
    // A split template only hurts once the ann layer actually runs (verify
    // raises missing_token there); the outer layers, the trail layer in
    // particular, still apply as usual.
    std::vector<CandidateVerifier> verifiers;
    verifiers.reserve(profile.resource_templates.size());
    for (const auto& [role, tmpl] : profile.resource_templates) {
        (void)role;
        const Template* target = &tmpl;
        verifiers.push_back(CandidateVerifier{
            target->architecture.input_count,
            [target](std::string_view candidate) { return verify(*target, candidate); }});
    }

    AttemptOutcome outcome =
        evaluate_attempt(profile.guard_state, profile.guard_config, verifiers, candidates);
    append_log(profile.log_path, outcome.records);
    profile.guard_state = outcome.state;
    return outcome.decision;
}

GuardDecision profile_access_two_factor(Profile& profile, const ServerPart& server,
                                        const TokenPart& token,
                                        const TimedCandidate& candidate) {
    const CandidateVerifier verifier{
        server.input_count,
        [&](std::string_view pw) { return verify_two_factor(server, &token, pw); }};

    AttemptOutcome outcome =
        evaluate_attempt(profile.guard_state, profile.guard_config,
                         std::span<const CandidateVerifier>(&verifier, 1),
                         std::span<const TimedCandidate>(&candidate, 1));
    append_log(profile.log_path, outcome.records);
    profile.guard_state = outcome.state;
    return outcome.decision;
}

} // namespace neuroauth
