#include <cmath>
#include <string>
#include <vector>

#include "neuroauth/codec.hpp"
#include "neuroauth/vault.hpp"
#include "serialize_util.hpp"

// Profile file layout (UTF-8, LF endings):
//   neuroauth-profile v1
//   lambda / guard.* / log_path key-value lines
//   one block per template (provider/user in order, reset last):
//     template <role>
//     input_count / hidden_count / eta / epsilon / seed / epochs
//     w1 rows, b1, w2, b2, mapped_hidden, mapped_final
//     (w1/b1 lines are absent once the hidden layer went to a token device)
//   checksum <16 hex digits>  -- fnv-1a/64 over all preceding bytes
// Reals are 16-hex-digit IEEE-754 binary64 bit patterns, so round-trips are
// exact. Integrity is checked before any field parsing.

namespace neuroauth {

namespace {

using detail::expect_kv;
using detail::hex16_from_double;
using detail::malformed;
using detail::parse_hex_double_or_die;
using detail::parse_uint;

constexpr std::string_view kProfileMagic = "neuroauth-profile";

void require_finite(double value, const std::string& what) {
    if (!std::isfinite(value))
        raise(Errc::serialization_overflow, what + " holds a non-finite value");
}

void append_vector_line(std::string& out, std::string_view tag,
                        const std::vector<double>& values, const std::string& what) {
    out += tag;
    for (double v : values) {
        require_finite(v, what);
        out += ' ';
        out += hex16_from_double(v);
    }
    out += '\n';
}

void append_template(std::string& out, TemplateRole role, const Template& tmpl) {
    out += "template ";
    out += role_name(role);
    out += '\n';
    out += "input_count = " + std::to_string(tmpl.architecture.input_count) + '\n';
    out += "hidden_count = " + std::to_string(tmpl.architecture.hidden_count) + '\n';
    require_finite(tmpl.meta.eta, "eta");
    require_finite(tmpl.meta.epsilon, "epsilon");
    out += "eta = " + hex16_from_double(tmpl.meta.eta) + '\n';
    out += "epsilon = " + hex16_from_double(tmpl.meta.epsilon) + '\n';
    out += "seed = " + std::to_string(tmpl.meta.seed) + '\n';
    out += "epochs = " + std::to_string(tmpl.meta.epochs) + '\n';

    const std::size_t inputs = tmpl.architecture.input_count;
    const std::size_t hidden = tmpl.architecture.hidden_count;
    if (tmpl.has_hidden_weights) {
        for (std::size_t node = 0; node < hidden; ++node) {
            out += "w1";
            for (std::size_t j = 0; j < inputs; ++j) {
                const double v = tmpl.weights.w1_at(node, j);
                require_finite(v, "w1");
                out += ' ';
                out += hex16_from_double(v);
            }
            out += '\n';
        }
        append_vector_line(out, "b1", tmpl.weights.b1, "b1");
    }
    append_vector_line(out, "w2", tmpl.weights.w2, "w2");
    require_finite(tmpl.weights.b2, "b2");
    out += "b2 " + hex16_from_double(tmpl.weights.b2) + '\n';
    append_vector_line(out, "mapped_hidden", tmpl.mapped_hidden, "mapped_hidden");
    require_finite(tmpl.mapped_final, "mapped_final");
    out += "mapped_final " + hex16_from_double(tmpl.mapped_final) + '\n';
}

std::vector<double> parse_vector_line(std::string_view line, std::string_view tag,
                                      std::size_t expected, std::size_t line_number) {
    if (line.substr(0, tag.size()) != tag ||
        (line.size() > tag.size() && line[tag.size()] != ' '))
        malformed(line_number, "expected '" + std::string(tag) + "' row");
    std::vector<double> values;
    values.reserve(expected);
    std::string_view rest = line.substr(tag.size());
    while (!rest.empty()) {
        if (rest.front() != ' ')
            malformed(line_number, "malformed '" + std::string(tag) + "' row");
        rest.remove_prefix(1);
        const std::size_t end = rest.find(' ');
        const std::string_view word = rest.substr(0, end);
        values.push_back(parse_hex_double_or_die(word, line_number, tag));
        rest = (end == std::string_view::npos) ? std::string_view{} : rest.substr(end);
    }
    if (values.size() != expected)
        malformed(line_number, "'" + std::string(tag) + "' row holds " +
                                   std::to_string(values.size()) + " values, expected " +
                                   std::to_string(expected));
    return values;
}

template <typename Int>
Int parse_uint_kv(detail::LineReader& reader, std::string_view key) {
    const auto line = reader.next();
    const std::string_view value = expect_kv(line, reader.line_number(), key);
    const auto parsed = parse_uint<Int>(value);
    if (!parsed)
        malformed(reader.line_number(), "key '" + std::string(key) + "' is not an integer");
    return *parsed;
}

double parse_hex_kv(detail::LineReader& reader, std::string_view key) {
    const auto line = reader.next();
    const std::string_view value = expect_kv(line, reader.line_number(), key);
    return parse_hex_double_or_die(value, reader.line_number(), key);
}

bool parse_bool_kv(detail::LineReader& reader, std::string_view key) {
    const auto line = reader.next();
    const std::string_view value = expect_kv(line, reader.line_number(), key);
    if (value == "true") return true;
    if (value == "false") return false;
    malformed(reader.line_number(), "key '" + std::string(key) + "' must be true or false");
}

// Parses one template block after its "template <role>" line was consumed.
Template parse_template_body(detail::LineReader& reader) {
    Template tmpl;
    tmpl.architecture.input_count = parse_uint_kv<std::size_t>(reader, "input_count");
    tmpl.architecture.hidden_count = parse_uint_kv<std::size_t>(reader, "hidden_count");
    tmpl.meta.eta = parse_hex_kv(reader, "eta");
    tmpl.meta.epsilon = parse_hex_kv(reader, "epsilon");
    tmpl.meta.seed = parse_uint_kv<std::uint64_t>(reader, "seed");
    tmpl.meta.epochs = parse_uint_kv<std::uint64_t>(reader, "epochs");

    const std::size_t inputs = tmpl.architecture.input_count;
    const std::size_t hidden = tmpl.architecture.hidden_count;
    if (inputs < kBitsPerChar || inputs % kBitsPerChar != 0)
        malformed(reader.line_number(), "input_count must be a positive multiple of 7");
    if (hidden != hidden_count_for(inputs))
        malformed(reader.line_number(), "hidden_count disagrees with the sizing rule");

    tmpl.weights.input_count = inputs;
    tmpl.weights.hidden_count = hidden;

    auto line = reader.next();
    if (!line)
        malformed(reader.line_number() + 1, "template block truncated");

    tmpl.has_hidden_weights = line->substr(0, 3) == "w1 ";
    if (tmpl.has_hidden_weights) {
        tmpl.weights.w1.reserve(hidden * inputs);
        for (std::size_t node = 0; node < hidden; ++node) {
            if (node > 0) {
                line = reader.next();
                if (!line) malformed(reader.line_number() + 1, "missing w1 row");
            }
            const auto row = parse_vector_line(*line, "w1", inputs, reader.line_number());
            tmpl.weights.w1.insert(tmpl.weights.w1.end(), row.begin(), row.end());
        }
        line = reader.next();
        if (!line) malformed(reader.line_number() + 1, "missing b1 row");
        tmpl.weights.b1 = parse_vector_line(*line, "b1", hidden, reader.line_number());
        line = reader.next();
        if (!line) malformed(reader.line_number() + 1, "missing w2 row");
    }
    tmpl.weights.w2 = parse_vector_line(*line, "w2", hidden, reader.line_number());

    line = reader.next();
    if (!line || line->substr(0, 3) != "b2 ")
        malformed(reader.line_number() + (line ? 0 : 1), "expected 'b2' row");
    tmpl.weights.b2 = parse_hex_double_or_die(line->substr(3), reader.line_number(), "b2");

    line = reader.next();
    if (!line) malformed(reader.line_number() + 1, "missing mapped_hidden row");
    tmpl.mapped_hidden = parse_vector_line(*line, "mapped_hidden", hidden, reader.line_number());

    line = reader.next();
    if (!line || line->substr(0, 13) != "mapped_final ")
        malformed(reader.line_number() + (line ? 0 : 1), "expected 'mapped_final' row");
    tmpl.mapped_final =
        parse_hex_double_or_die(line->substr(13), reader.line_number(), "mapped_final");
    return tmpl;
}

} // namespace

void save_profile(const Profile& profile, const std::filesystem::path& path) {
    if (profile.resource_templates.empty() || profile.resource_templates.size() > 2)
        raise(Errc::invalid_argument, "profile must hold one or two resource templates");
    if (profile.log_path.find('\n') != std::string::npos)
        raise(Errc::invalid_argument, "log_path must not contain newlines");
    validate(profile.guard_config);
    require_finite(profile.lambda, "lambda");

    std::string out;
    out.reserve(4096);
    out += std::string(kProfileMagic) + " v" + std::to_string(profile.version) + '\n';
    out += "lambda = " + hex16_from_double(profile.lambda) + '\n';
    out += "guard.max_trials = " + std::to_string(profile.guard_config.max_trials) + '\n';
    out += "guard.time_min_ms = " + std::to_string(profile.guard_config.time_min_ms) + '\n';
    out += "guard.time_max_ms = " + std::to_string(profile.guard_config.time_max_ms) + '\n';
    out += std::string("guard.time_layer_enabled = ") +
           (profile.guard_config.time_layer_enabled ? "true" : "false") + '\n';
    out += "guard.failed_count = " + std::to_string(profile.guard_state.failed_count) + '\n';
    out += std::string("guard.locked = ") + (profile.guard_state.locked ? "true" : "false") + '\n';
    out += "log_path = " + profile.log_path + '\n';

    for (const auto& [role, tmpl] : profile.resource_templates) {
        if (role == TemplateRole::reset)
            raise(Errc::invalid_argument, "resource templates cannot use the reset role");
        append_template(out, role, tmpl);
    }
    append_template(out, TemplateRole::reset, profile.reset_template);

    detail::write_checksummed_file(path, std::move(out));
}

Profile load_profile(const std::filesystem::path& path) {
    const std::string payload = detail::read_checksummed_file(path);
    detail::LineReader reader(payload);

    const auto header = reader.next();
    if (!header || header->substr(0, kProfileMagic.size()) != kProfileMagic)
        malformed(1, "not a neuroauth profile");
    const std::string_view version = header->substr(kProfileMagic.size());
    if (version != " v1")
        raise(Errc::version_unsupported,
              "unsupported profile version '" +
                  std::string(version.empty() ? version : version.substr(1)) + "'");

    Profile profile;
    profile.version = 1;
    profile.lambda = parse_hex_kv(reader, "lambda");
    if (!(profile.lambda > 0.0))
        malformed(reader.line_number(), "lambda must be positive");
    profile.guard_config.max_trials = parse_uint_kv<std::uint32_t>(reader, "guard.max_trials");
    profile.guard_config.time_min_ms = parse_uint_kv<std::uint64_t>(reader, "guard.time_min_ms");
    profile.guard_config.time_max_ms = parse_uint_kv<std::uint64_t>(reader, "guard.time_max_ms");
    profile.guard_config.time_layer_enabled = parse_bool_kv(reader, "guard.time_layer_enabled");
    profile.guard_state.failed_count = parse_uint_kv<std::uint32_t>(reader, "guard.failed_count");
    profile.guard_state.locked = parse_bool_kv(reader, "guard.locked");
    {
        const auto line = reader.next();
        profile.log_path = std::string(expect_kv(line, reader.line_number(), "log_path"));
    }
    try {
        validate(profile.guard_config);
    } catch (const Error& e) {
        malformed(reader.line_number(), e.what());
    }
    if (profile.guard_state.locked && profile.guard_state.failed_count < profile.guard_config.max_trials)
        malformed(reader.line_number(), "locked profile must carry failed_count >= max_trials");

    bool seen_reset = false;
    while (!reader.at_end()) {
        const auto line = reader.next();
        if (!line || line->substr(0, 9) != "template ")
            malformed(reader.line_number(), "expected 'template <role>' line");
        const auto role = role_from_name(line->substr(9));
        if (!role)
            malformed(reader.line_number(), "unknown template role '" + std::string(line->substr(9)) + "'");
        if (seen_reset)
            malformed(reader.line_number(), "reset template must be the final block");
        Template tmpl = parse_template_body(reader);
        if (*role == TemplateRole::reset) {
            seen_reset = true;
            profile.reset_template = std::move(tmpl);
        } else {
            profile.resource_templates.emplace_back(*role, std::move(tmpl));
        }
    }
    if (!seen_reset)
        malformed(reader.line_number(), "profile is missing the reset template");
    if (profile.resource_templates.empty() || profile.resource_templates.size() > 2)
        malformed(reader.line_number(), "profile must hold one or two resource templates");
    return profile;
}

} // namespace neuroauth
