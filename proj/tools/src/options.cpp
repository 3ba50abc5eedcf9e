#include "locrad_cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace locrad::cli {

namespace {

const std::map<std::string, std::vector<std::string>>& key_table() {
    static const std::map<std::string, std::vector<std::string>> table{
        {"bound",
         {"class", "dim", "sample", "labels", "vectors", "target", "dist", "density_bound", "n", "eps", "delta",
          "iterations", "gamma", "gamma_prime", "constants", "custom", "seed", "output", "format"}},
        {"coverage",
         {"target", "dist", "density_bound", "n", "eps", "delta", "iterations", "gamma", "gamma_prime", "constants",
          "custom", "reps", "learner", "seed", "output", "format", "summary"}},
        {"rates",
         {"class", "target", "dist", "density_bound", "n_grid", "eps", "iterations", "gamma", "gamma_prime",
          "constants", "custom", "reps", "seed", "output", "format", "summary"}},
        {"oracle", {"target", "dist", "density_bound", "sample", "n", "k_max", "seed", "output", "format"}},
        {"fixedpoint", {"entropy", "variant", "n", "n_grid", "K", "density_bound", "output", "format"}},
        {"entropy",
         {"entropy", "radii", "class", "dim", "sample", "vectors", "n", "dist", "density_bound", "seed", "output",
          "format"}},
        {"diagnose",
         {"target", "dist", "density_bound", "n", "eps", "gamma", "gamma_prime", "gamma_double_prime", "radii",
          "mc_draws", "instance", "phi4", "seed", "output", "format"}},
    };
    return table;
}

const std::map<std::string, std::string>& key_help() {
    static const std::map<std::string, std::string> help{
        {"class", "intervals | boxes | finite (rates: intervals | zero)"},
        {"dim", "box dimension"},
        {"sample", "CSV of sample points, one per row"},
        {"labels", "CSV of labels in sample order"},
        {"vectors", "CSV of class vectors for class=finite"},
        {"target", "none, lo,hi, or lo1,hi1,...,lod,hid for boxes"},
        {"dist", "uniform | piecewise:<breaks>;<densities>"},
        {"density_bound", "declared density bound B"},
        {"n", "sample size"},
        {"n_grid", "comma-separated sample sizes"},
        {"eps", "concentration level"},
        {"delta", "confidence level; sets eps = 2 ln(2 N / delta) / n"},
        {"iterations", "number of localization steps"},
        {"gamma", "gamma in (0,1)"},
        {"gamma_prime", "gamma' in (0,1)"},
        {"gamma_double_prime", "gamma'' > 0"},
        {"constants", "safe | unit | custom"},
        {"custom", "K1,K2,K3 for constants=custom"},
        {"reps", "replications"},
        {"learner", "minimal | worst"},
        {"seed", "master seed"},
        {"k_max", "last oracle step"},
        {"entropy", "power:A,g | vc:L | zero | file:<path>"},
        {"variant", "random | bracketing | inclusion"},
        {"K", "chaining constant (variant=random)"},
        {"radii", "comma-separated radii"},
        {"mc_draws", "Monte Carlo draws per expectation"},
        {"instance", "instance index"},
        {"phi4", "true | false"},
        {"output", "output file (default stdout)"},
        {"format", "csv | json"},
        {"summary", "JSON summary path (default <output>.json)"},
    };
    return help;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

const std::vector<std::string>& command_keys(const std::string& command) {
    const auto& t = key_table();
    const auto it = t.find(command);
    if (it == t.end()) throw UsageError("unknown command: " + command);
    return it->second;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
        }
        const std::string key = trim(t.substr(0, eq));
        if (key.empty()) throw UsageError("config line " + std::to_string(lineno) + ": empty key");
        if (out.count(key)) throw UsageError("config line " + std::to_string(lineno) + ": duplicate key " + key);
        out[key] = trim(t.substr(eq + 1));
    }
    return out;
}

ParsedArgs parse_args(const std::vector<std::string>& args) {
    CLI::App app{"Localized Rademacher risk bounds", "locrad"};
    app.require_subcommand(1, 1);
    std::map<std::string, std::string> flags;
    std::string config_path;
    for (const auto& [name, keys] : key_table()) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "flat key=value file; flags override it");
        for (const auto& key : keys) {
            sub->add_option_function<std::string>(
                "--" + key, [&flags, key](const std::string& v) { flags[key] = v; }, key_help().at(key));
        }
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    ParsedArgs parsed;
    for (const auto* sub : app.get_subcommands()) parsed.command = sub->get_name();
    const auto& keys = command_keys(parsed.command);
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw UsageError("cannot read config file " + config_path);
        std::ostringstream text;
        text << in.rdbuf();
        for (auto& [k, v] : parse_config_text(text.str())) {
            if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
                throw UsageError("unknown key '" + k + "' for " + parsed.command + " in " + config_path);
            }
            parsed.values[k] = v;
        }
    }
    for (auto& [k, v] : flags) parsed.values[k] = v;
    if (parsed.values.count("eps") && parsed.values.count("delta")) {
        throw UsageError("give either eps or delta, not both");
    }
    return parsed;
}

}  // namespace locrad::cli
