#include "supnorm/cli.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "supnorm/bounds.hpp"
#include "supnorm/domain.hpp"
#include "supnorm/errors.hpp"
#include "supnorm/kernel_check.hpp"
#include "supnorm/report.hpp"
#include "supnorm/verifier.hpp"

namespace supnorm {

namespace {

FundamentalDomain load_selected(const CliConfig& cfg)
{
    return cfg.domain_path.empty() ? psl2z_domain() : load_domain_file(cfg.domain_path);
}

void check_config(const CliConfig& cfg)
{
    if (!(cfg.Y0 > 0.0))
        throw DomainError("--Y0 must be positive");
    if (cfg.k_min > cfg.k_max)
        throw DomainError("--k-min must not exceed --k-max");
    if (cfg.grid_size < 1)
        throw DomainError("--grid must be at least 1");
}

// Writes to --out when given, otherwise to the stream.
void emit(const CliConfig& cfg, std::ostream& out, const std::string& text)
{
    if (cfg.output_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.output_path, std::ios::binary);
    if (!f)
        throw LoadError("cannot open output file " + cfg.output_path);
    f << text;
}

std::string region_file_stem(const std::string& region)
{
    std::string s;
    for (char c : region)
        s += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    return "bound_" + s;
}

int cmd_constants(const CliConfig& cfg, std::ostream& out)
{
    const FundamentalDomain d = load_selected(cfg);
    const AlgorithmResult r = run_algorithm(d, cfg.Y0, 2, 2, cfg.Y);
    const auto ledger = constants_ledger(r.constants, d);
    if (cfg.output_format == "json")
        emit(cfg, out, ledger_to_json(ledger).dump(2) + "\n");
    else
        emit(cfg, out, ledger_to_csv(ledger));
    return kExitPass;
}

int cmd_bounds(const CliConfig& cfg, std::ostream& out)
{
    const FundamentalDomain d = load_selected(cfg);
    const AlgorithmResult r = run_algorithm(d, cfg.Y0, cfg.k_min, cfg.k_max, cfg.Y);
    if (cfg.output_format == "json") {
        emit(cfg, out, report_to_json(r.report).dump(2) + "\n");
    } else if (cfg.output_format == "plot") {
        const auto series = report_plot_series(r.report);
        if (cfg.output_path.empty()) {
            for (const auto& [region, body] : series)
                out << "# region " << region << '\n' << body;
        } else {
            // --out names a directory receiving one CSV per region.
            std::filesystem::create_directories(cfg.output_path);
            for (const auto& [region, body] : series) {
                const auto path = std::filesystem::path(cfg.output_path) / (region_file_stem(region) + ".csv");
                std::ofstream f(path, std::ios::binary);
                if (!f)
                    throw LoadError("cannot open output file " + path.string());
                f << body;
            }
        }
    } else {
        emit(cfg, out, report_to_csv(r.report));
    }
    return kExitPass;
}

int cmd_verify(const CliConfig& cfg, std::ostream& out)
{
    const FundamentalDomain d = load_selected(cfg);
    if (!d.is_modular_group())
        throw UnsupportedError("verification is only available for the modular group PSL(2,Z)");
    const VerificationReport rep = verify_all(cfg.weights, cfg.grid_size, cfg.Y0);
    if (cfg.output_format == "json")
        emit(cfg, out, rep.to_json().dump(2) + "\n");
    else
        emit(cfg, out, rep.table());
    return rep.all_passed() ? kExitPass : kExitVerificationFailed;
}

int cmd_kernel_check(const CliConfig& cfg, std::ostream& out)
{
    KernelGrid g = kernel_grid(cfg.k_max);
    if (cfg.transform_tol)
        g.transform_tol = *cfg.transform_tol;
    const KernelCheckReport rep = run_kernel_checks(g);
    if (cfg.output_format == "json")
        emit(cfg, out, rep.to_json().dump(2) + "\n");
    else
        emit(cfg, out, rep.table());
    return rep.all_passed() ? kExitPass : kExitKernelCheckFailed;
}

}  // namespace

int run_command(const CliConfig& cfg, std::ostream& out, std::ostream& err)
{
    try {
        check_config(cfg);
        if (cfg.command == "constants")
            return cmd_constants(cfg, out);
        if (cfg.command == "bounds")
            return cmd_bounds(cfg, out);
        if (cfg.command == "verify")
            return cmd_verify(cfg, out);
        if (cfg.command == "kernel-check")
            return cmd_kernel_check(cfg, out);
        err << "error: unknown command '" << cfg.command << "'\n";
        return kExitInputError;
    } catch (const UnsupportedError& e) {
        err << "error: " << e.what() << '\n';
        return cfg.command == "verify" ? kExitUnsupported : kExitInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Effective sup-norm bounds for cusp forms on Fuchsian groups"};
    app.require_subcommand(1);
    CliConfig cfg;
    std::string weights_text;

    auto add_domain = [&](CLI::App* sub) {
        sub->add_option("--domain", cfg.domain_path, "Fundamental-domain JSON file (default: built-in PSL(2,Z))");
        sub->add_option("--Y0", cfg.Y0, "Base height Y0 > 0")->capture_default_str();
    };
    auto add_format = [&](CLI::App* sub, std::vector<std::string> choices) {
        sub->add_option("--format", cfg.output_format, "Output format")
            ->check(CLI::IsMember(std::move(choices)))
            ->capture_default_str();
        sub->add_option("--out", cfg.output_path, "Output path (directory for --format plot)");
    };
    auto add_Y = [&](CLI::App* sub) {
        sub->add_option_function<double>("--Y", [&](double v) { cfg.Y = v; },
                                          "Truncation height, at least max{2 Y0, 16/sqrt 15}");
    };

    CLI::App* constants = app.add_subcommand("constants", "Print the constants ledger");
    add_domain(constants);
    add_Y(constants);
    add_format(constants, {"csv", "json"});

    CLI::App* bounds = app.add_subcommand("bounds", "Print upper and lower bounds per weight and region");
    add_domain(bounds);
    add_Y(bounds);
    bounds->add_option("--k-min", cfg.k_min, "Smallest k (weight 2k)")->capture_default_str();
    bounds->add_option("--k-max", cfg.k_max, "Largest k (weight 2k)")->capture_default_str();
    add_format(bounds, {"csv", "json", "plot"});

    CLI::App* verify = app.add_subcommand("verify", "Numerical verification for PSL(2,Z)");
    add_domain(verify);
    verify->add_option("--weights", weights_text, "Comma-separated weights from {12,16,18,20,22,26}");
    verify->add_option("--grid", cfg.grid_size, "Grid points per axis")->capture_default_str();
    add_format(verify, {"csv", "json"});

    CLI::App* kernel = app.add_subcommand("kernel-check", "Kernel identity and inequality suites");
    kernel->add_option("--k-max", cfg.k_max, "Widen the weight grid up to this k");
    kernel->add_option_function<double>("--transform-tol", [&](double v) { cfg.transform_tol = v; },
                                        "Relative tolerance for the heat-kernel transform identity");
    add_format(kernel, {"csv", "json"});

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitInputError;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    if (cfg.command == "kernel-check" && kernel->count("--k-max") == 0)
        cfg.k_max = 6;
    if (!weights_text.empty() || verify->count("--weights")) {
        cfg.weights.clear();
        std::stringstream ss(weights_text);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty())
                continue;
            try {
                std::size_t used = 0;
                cfg.weights.push_back(std::stoi(tok, &used));
                if (used != tok.size())
                    throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                err << "error: invalid weight '" << tok << "'\n";
                return kExitInputError;
            }
        }
    }
    return run_command(cfg, out, err);
}

}  // namespace supnorm
