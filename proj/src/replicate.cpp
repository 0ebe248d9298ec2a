#include "neuroauth/replicate.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "neuroauth/template.hpp"
#include "serialize_util.hpp"

namespace neuroauth {

namespace {

struct Experiment {
    std::string tag;
    std::string password;
    std::vector<std::string> candidates;
    std::uint64_t seed;
};

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        raise(Errc::io_failure, "cannot open " + path.string() + " for writing");
    out << content;
    out.flush();
    if (!out)
        raise(Errc::io_failure, "write failed for " + path.string());
}

void run_experiment(const Experiment& exp, const std::filesystem::path& out_dir) {
    TrainingConfig config; // defaults; only the seed is experiment specific
    config.seed = exp.seed;

    const auto [tmpl, curve] = enroll_traced(exp.password, config);

    std::ostringstream curve_csv;
    write_curve_csv(curve_csv, curve);
    write_file(out_dir / (exp.tag + "_curve.csv"), curve_csv.str());

    for (const std::string& candidate : exp.candidates) {
        const VerifyOutcome outcome = verify(tmpl, candidate);
        std::string csv = "node_index,abs_difference\n";
        // Length-rejected candidates never reach the network; their file
        // stays header-only.
        for (std::size_t i = 0; i < outcome.diff_vector.size(); ++i)
            csv += std::to_string(i) + ',' +
                   detail::format_scientific(outcome.diff_vector[i]) + '\n';
        write_file(out_dir / (exp.tag + "_diff_" + candidate + ".csv"), csv);
    }
}

} // namespace

void replicate_experiments(const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        raise(Errc::io_failure, "cannot create " + out_dir.string() + ": " + ec.message());

    const Experiment experiments[] = {
        {"exp1", "neural", {"neural", "meural", "neurba", "signal"}, 101},
        {"exp2", "architecture", {"architecture", "manojkrsingh", "manoj_singh"}, 202},
    };
    for (const Experiment& exp : experiments)
        run_experiment(exp, out_dir);
}

} // namespace neuroauth
