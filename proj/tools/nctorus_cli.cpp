#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "cli_commands.hpp"

using namespace nctorus;
using namespace nctorus::cli;

namespace {

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

void emit(const CommandResult& result, const RunConfig& config) {
    const bool csv = config.format == "csv" && !result.csv.empty();
    const std::string payload = csv ? result.csv : result.report.dump(2) + "\n";
    if (config.out_path) {
        std::ofstream out(*config.out_path);
        if (!out) throw InvalidInputError("cannot write " + *config.out_path);
        out << payload;
    } else {
        std::cout << payload;
    }
}

std::vector<int> parse_radii(const std::string& text) {
    std::vector<int> radii;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t comma = text.find(',', pos);
        radii.push_back(std::stoi(text.substr(pos, comma - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (radii.empty()) throw InvalidInputError("radii list is empty");
    return radii;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exponential calculus on noncommutative two-tori"};
    app.require_subcommand(1);

    RunConfig config;
    std::string config_path;
    std::string which = "E_l";
    std::string radii_text = "10,14,18";
    std::string halfplane_text;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file; flags override it");
        cmd->add_option("--theta", config.theta, "algebra parameter theta");
        cmd->add_option("--tau-re", config.tau_re, "Re(tau)");
        cmd->add_option("--tau-im", config.tau_im, "Im(tau), must be negative");
        cmd->add_option("--order", config.order, "truncation order N");
        cmd->add_option("--box", config.box, "truncation box radius");
        cmd->add_option("--tol", config.tol, "default tolerance");
        cmd->add_option("--seed", config.seed, "RNG seed");
        cmd->add_option("--cases", config.cases, "random cases per identity");
        cmd->add_option("--input", config.input_path, "input element (JSON file)");
        cmd->add_option("--format", config.format, "json | csv")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--out", config.out_path, "write the report to a file");
        return cmd;
    };

    CLI::App* identities = add_common(app.add_subcommand(
        "identities", "run the identity catalog on seeded random inputs"));
    identities
        ->add_flag("--corrupt-pairing", config.corrupt_pairing,
                   "test hook: flip the pairing sign inside E_r")
        ->group("");  // hidden

    CLI::App* exp_cmd =
        add_common(app.add_subcommand("exp", "compute an exponential series"));
    exp_cmd->add_option("--which", which, "E_l | E_r | Exp_l | Exp_r | s")
        ->check(CLI::IsMember({"E_l", "E_r", "Exp_l", "Exp_r", "s"}));

    CLI::App* converge =
        add_common(app.add_subcommand("converge", "evaluate e_l at t = 1 with a certificate"));
    converge->add_option("--halfplane", halfplane_text,
                         "integer form 'p,q' for the half-plane path");

    CLI::App* scan = add_common(
        app.add_subcommand("theta-scan", "spectral scan of the line C a against Theta"));
    scan->add_option("--radii", radii_text, "comma-separated truncation radii");

    CLI::App* chi_cmd =
        add_common(app.add_subcommand("chi", "logarithmic-derivative character of x"));

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty()) {
            // Flags win: re-apply them on top of the file values by parsing
            // the file first into the defaults and letting CLI11's parsed
            // values stand. CLI11 already wrote parsed flags into `config`,
            // so only fill fields the user did not pass.
            RunConfig file_config = RunConfig::from_json(load_json(config_path), RunConfig{});
            auto keep_if_unset = [&](const char* flag, auto& target, auto file_value) {
                CLI::App* sub = app.get_subcommands().front();
                if (sub->count(flag) == 0) target = file_value;
            };
            keep_if_unset("--theta", config.theta, file_config.theta);
            keep_if_unset("--tau-re", config.tau_re, file_config.tau_re);
            keep_if_unset("--tau-im", config.tau_im, file_config.tau_im);
            keep_if_unset("--order", config.order, file_config.order);
            keep_if_unset("--box", config.box, file_config.box);
            keep_if_unset("--tol", config.tol, file_config.tol);
            keep_if_unset("--seed", config.seed, file_config.seed);
            keep_if_unset("--cases", config.cases, file_config.cases);
            keep_if_unset("--format", config.format, file_config.format);
        }

        auto load_element = [&]() {
            if (!config.input_path)
                throw InvalidInputError("this command needs --input <element.json>");
            return element_from_json(load_json(*config.input_path));
        };

        CommandResult result;
        if (identities->parsed()) {
            result = cmd_identities(config);
        } else if (exp_cmd->parsed()) {
            result = cmd_exp(config, load_element(), which);
        } else if (converge->parsed()) {
            std::optional<HalfPlaneForm> h;
            if (!halfplane_text.empty()) {
                const auto comma = halfplane_text.find(',');
                if (comma == std::string::npos)
                    throw InvalidInputError("--halfplane expects 'p,q'");
                h = HalfPlaneForm{std::stoll(halfplane_text.substr(0, comma)),
                                  std::stoll(halfplane_text.substr(comma + 1))};
            }
            result = cmd_converge(config, load_element(), h);
        } else if (scan->parsed()) {
            result = cmd_theta_scan(config, load_element(), parse_radii(radii_text));
        } else if (chi_cmd->parsed()) {
            if (!config.input_path)
                throw InvalidInputError("chi needs --input <element-or-factored.json>");
            result = cmd_chi(config, factored_from_json(load_json(*config.input_path)));
        }
        emit(result, config);
        return result.exit_code;
    } catch (const InvalidInputError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const CertificateError& e) {
        std::cerr << "certificate unavailable: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
