#include <filesystem>
#include <iostream>

#include "commands.hpp"
#include "hqe/core.hpp"

#ifndef HQE_PRESETS
#define HQE_PRESETS "presets/observables.json"
#endif

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hqe;
using namespace hqe::cli;

namespace {

struct Globals {
    std::string out = "out";
    std::uint64_t seed = 1;
    std::string weight = "harmonic";
    double nevo_n = 2.0;
    std::string presets = HQE_PRESETS;
    std::string config;
};

std::string option_name(std::string key) {
    for (auto& c : key)
        if (c == '_') c = '-';
    return "--" + key;
}

std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return format_double(v.get<double>());
    throw UsageError("config value " + v.dump() + " is not a scalar");
}

// Feeds a config value to an option the command line left unset.
void override_option(CLI::Option* opt, const json& value) {
    if (opt->count() > 0) return;
    opt->clear();
    if (value.is_array()) {
        for (const auto& v : value) opt->add_result(scalar_text(v));
    } else {
        opt->add_result(scalar_text(value));
    }
    opt->run_callback();
}

void apply_config(const std::string& path, CLI::App& app, CLI::App& sub) {
    json cfg;
    try {
        cfg = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw UsageError("config " + path + ": " + e.what());
    }
    if (!cfg.is_object()) throw UsageError("config " + path + " must hold a JSON object");
    for (const auto& [key, value] : cfg.items()) {
        if (key == "config") throw UsageError("config files do not nest");
        CLI::Option* opt = sub.get_option_no_throw(option_name(key));
        if (opt == nullptr) opt = app.get_option_no_throw(option_name(key));
        if (opt == nullptr) throw UsageError("config " + path + ": unknown key '" + key + "'");
        try {
            override_option(opt, value);
        } catch (const CLI::Error& e) {
            throw UsageError("config " + path + ": key '" + key + "': " + e.what());
        }
    }
}

void write_outputs(const fs::path& dir, const json& summary, const CommandResult* res) {
    fs::create_directories(dir);
    atomic_write((dir / "summary.json").string(), summary.dump(2) + "\n");
    if (res == nullptr) return;
    for (const auto& [name, table] : res->tables) atomic_write((dir / (name + ".csv")).string(), table.str());
}

std::string error_kind(const std::exception& e) {
    if (const auto* err = dynamic_cast<const Error*>(&e)) return err->kind();
    return "InternalError";
}

json provenance(const RunContext& ctx) {
    return {{"weight_convention", ctx.weight.name()},
            {"selberg_constant", ctx.weight.selberg_constant()},
            {"hs_constant", ctx.weight.hs_constant()},
            {"nevo_n", {{"value", ctx.nevo_n}, {"status", "assumed"}}},
            {"eta", "1 - q(x + 1) on [-1, 0], q(s) = 6s^5 - 15s^4 + 10s^3"},
            {"chi", "1 - (3x^2 - 2x^3)"},
            {"spectral_gap", "unchecked"},
            {"abel_normalization", "2 pi"},
            {"variance_normalization", "mean over the N window modes; sum / Vol(SX) reported alongside"}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hqe: quantum variance tools for hyperbolic surfaces"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--out", g.out, "output directory");
    app.add_option("--seed", g.seed, "random seed");
    app.add_option("--weight", g.weight, "Plancherel weight convention")
        ->check(CLI::IsMember({"paper", "harmonic"}));
    app.add_option("--nevo-n", g.nevo_n, "assumed ergodic-theorem exponent");
    app.add_option("--presets", g.presets, "observable presets file");
    app.add_option("--config", g.config, "JSON file with option defaults");

    auto commands = make_commands();
    std::vector<std::pair<CLI::App*, Command*>> subs;
    for (auto& c : commands) {
        CLI::App* sub = app.add_subcommand(c->name(), c->description());
        c->add_options(*sub);
        subs.emplace_back(sub, c.get());
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    CLI::App* sub = nullptr;
    Command* cmd = nullptr;
    for (auto& [s, c] : subs)
        if (s->parsed()) sub = s, cmd = c;

    RunContext ctx;
    fs::path dir;
    json config;
    try {
        if (!g.config.empty()) apply_config(g.config, app, *sub);
        ctx.seed = g.seed;
        ctx.weight = PlancherelWeight::parse(g.weight);
        ctx.nevo_n = g.nevo_n;
        ctx.presets_path = g.presets;
        dir = fs::path(g.out) / cmd->name();
        config = {{"seed", g.seed}, {"weight", g.weight}, {"out", g.out}, {"nevo_n", g.nevo_n},
                  {"parameters", cmd->parameters()}};
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    json summary = {{"subcommand", cmd->name()}, {"config", config}, {"provenance", provenance(ctx)}};
    try {
        CommandResult res = cmd->run(ctx);
        summary["results"] = res.results;
        summary["failures"] = res.failures;
        summary["pass"] = res.failures.empty();
        write_outputs(dir, summary, &res);
        std::cout << cmd->name() << ": " << (res.failures.empty() ? "pass" : "FAIL") << " -> "
                  << (dir / "summary.json").string() << "\n";
        for (const auto& f : res.failures) std::cout << "  failed: " << f << "\n";
        return res.failures.empty() ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        summary["pass"] = false;
        summary["error"] = {{"kind", error_kind(e)}, {"message", e.what()}};
        try {
            write_outputs(dir, summary, nullptr);
        } catch (const std::exception& w) {
            std::cerr << "could not write failure record: " << w.what() << "\n";
        }
        std::cerr << cmd->name() << ": " << error_kind(e) << ": " << e.what() << "\n";
        return 1;
    }
}
