#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "hidsym/cli.hpp"

namespace fs = std::filesystem;
using namespace hidsym;

namespace {

std::map<std::string, mpq_class> parse_params(const std::vector<std::string>& raw) {
    std::map<std::string, mpq_class> out;
    for (const auto& p : raw) {
        auto eq = p.find('=');
        if (eq == std::string::npos) throw cli::ValidationError("--param expects name=rational, got '" + p + "'");
        std::string name = p.substr(0, eq), value = p.substr(eq + 1);
        mpq_class q;
        if (value.empty() || q.set_str(value, 10) != 0 || q.get_den() == 0)
            throw cli::ValidationError("--param " + name + ": '" + value + "' is not a rational number");
        q.canonicalize();
        out[name] = q;
    }
    return out;
}

cli::AnalysisInput load(const std::string& target, std::map<std::string, mpq_class> params) {
    cli::AnalysisInput in;
    if (cli::is_preset(target) && !fs::exists(target)) {
        std::string text = cli::preset_text(target, params);
        in = cli::parse_input(text, target);
    } else {
        std::ifstream f(target);
        if (!f) throw cli::ValidationError(target + ": cannot open file");
        std::stringstream ss;
        ss << f.rdbuf();
        in = cli::parse_input(ss.str(), target);
    }
    cli::apply_params(in, params);
    return in;
}

int analyze(const std::string& target, const std::string& json_out, std::optional<int> degree,
            std::optional<int> samples, std::optional<std::uint64_t> seed, const std::vector<std::string>& raw_params) {
    auto in = load(target, parse_params(raw_params));
    if (degree) in.options.degree = *degree;
    if (samples) in.options.samples = *samples;
    if (seed) in.options.seed = *seed;
    auto rep = cli::run_analysis(in);
    std::cout << rep.text();
    if (!json_out.empty()) {
        std::ofstream f(json_out);
        if (!f) throw cli::ValidationError(json_out + ": cannot write");
        f << rep.json_text();
    }
    return rep.exit_code;
}

int corpus(const std::string& golden_dir, bool update, unsigned jobs) {
    auto names = cli::preset_names();
    std::vector<std::string> results(names.size());
    std::vector<int> status(names.size(), 0);
    std::mutex m;
    std::size_t next = 0;
    auto worker = [&] {
        for (;;) {
            std::size_t k;
            {
                std::lock_guard<std::mutex> lock(m);
                if (next == names.size()) return;
                k = next++;
            }
            const auto& name = names[k];
            fs::path golden = fs::path(golden_dir) / (name + ".json");
            try {
                std::map<std::string, mpq_class> none;
                auto in = cli::parse_input(cli::preset_text(name, none), name);
                auto rep = cli::run_analysis(in);
                std::string got = rep.json_text();
                if (update) {
                    std::ofstream(golden) << got;
                    results[k] = "updated " + golden.string();
                } else {
                    std::ifstream f(golden);
                    std::stringstream want;
                    want << f.rdbuf();
                    if (!f)
                        status[k] = 1, results[k] = "FAIL " + name + ": missing golden file " + golden.string();
                    else if (want.str() != got)
                        status[k] = 1, results[k] = "FAIL " + name + ": report differs from " + golden.string();
                    else
                        results[k] = "ok   " + name;
                }
                if (rep.exit_code != 0) status[k] = rep.exit_code, results[k] += " (exit " + std::to_string(rep.exit_code) + ")";
            } catch (const std::exception& e) {
                status[k] = 1;
                results[k] = "FAIL " + name + ": " + e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::max(1u, jobs); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    int rc = 0;
    for (std::size_t k = 0; k < names.size(); ++k) {
        std::cout << results[k] << "\n";
        rc = std::max(rc, status[k]);
    }
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lie point symmetries, reductions and hidden symmetries of Laplace and Klein-Gordon equations"};
    app.require_subcommand(1);

    auto* an = app.add_subcommand("analyze", "Analyze an input file or a named preset");
    std::string target, json_out;
    std::optional<int> degree, samples;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> params;
    an->add_option("input", target, "Input file or preset name")->required();
    an->add_option("--json", json_out, "Write the JSON report to this file");
    an->add_option("--degree", degree, "Polynomial degree of the CKV and symmetry ansatz");
    an->add_option("--samples", samples, "Random points per numerical zero test");
    an->add_option("--seed", seed, "Seed of the numerical zero test");
    an->add_option("--param", params, "Instantiate a parameter, name=rational");

    auto* co = app.add_subcommand("corpus", "Run every preset against its golden JSON report");
    std::string golden_dir = "tests/golden";
    bool update = false;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    co->add_option("--golden-dir", golden_dir, "Directory of <preset>.json files");
    co->add_flag("--update", update, "Rewrite the golden files");
    co->add_option("--jobs", jobs, "Worker threads");

    auto* ls = app.add_subcommand("presets", "List the preset names");

    CLI11_PARSE(app, argc, argv);
    try {
        if (an->parsed()) return analyze(target, json_out, degree, samples, seed, params);
        if (co->parsed()) return corpus(golden_dir, update, jobs);
        if (ls->parsed())
            for (const auto& n : cli::preset_names()) std::cout << n << "\n";
        return 0;
    } catch (const cli::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
