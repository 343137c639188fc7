#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hglue/cli.hpp"

using namespace hglue;

namespace {

std::vector<double> parse_list(const std::string& text, const std::string& flag)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw cli::UsageError("--" + flag + ": cannot parse '" + item + "'");
        }
    }
    if (out.empty())
        throw cli::UsageError("--" + flag + ": empty list");
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Sp(4,R) Higgs bundle gluing laboratory"};
    app.set_config("--config", "", "TOML/INI file mirroring the flags; flags win");
    app.require_subcommand(1, 1);

    cli::RunParams p;
    std::string rText, rListText;
    bool dryRun = false;
    for (cli::Command c : cli::all_commands())
        app.add_subcommand(cli::command_name(c))->fallthrough();
    // options live on the top level so the config file can set them
    app.add_option("--g1", p.g1, "genus of the irreducible side");
    app.add_option("--g2", p.g2, "genus of the diagonal side");
    app.add_option("--s", p.s, "number of punctures per side");
    app.add_option("--C", p.C, "model constant C");
    app.add_option("--R", rText, "neck radius (a comma list for sweep)");
    app.add_option("--R-list", rListText, "comma-separated radii for sweep");
    app.add_option("--jmax", p.jmax, "largest Fourier mode |j|");
    app.add_option("--grid-ntau", p.gridNTau, "tau intervals (0: from the mixing width)");
    app.add_option("--grid-nmodes", p.gridNModes, "theta modes");
    app.add_option("--tol", p.tol, "target first-equation residual");
    app.add_option("--max-iter", p.maxIter, "Picard iteration cap");
    app.add_option("--epsilon", p.epsilon, "epsilon in the ball radius");
    app.add_option("--out", p.out, "JSON report path; tables go next to it");
    app.add_flag("--dry-run", dryRun, "validate and emit an all-skipped report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    cli::RunConfig cfg{*cli::parse_command(name), p};
    try {
        if (const char* seed = std::getenv("HGLUE_SEED")) {
            try {
                cfg.params.seed = std::stoull(seed);
            } catch (const std::exception&) {
                throw cli::UsageError(std::string("HGLUE_SEED: not an unsigned integer: ") + seed);
            }
        }
        if (!rText.empty()) {
            const auto rs = parse_list(rText, "R");
            if (rs.size() > 1 && cfg.command != cli::Command::sweep)
                throw cli::UsageError("--R: a list is only accepted by sweep");
            if (rs.size() > 1)
                cfg.params.RList = rs;
            else
                cfg.params.R = rs.front();
        }
        if (!rListText.empty())
            cfg.params.RList = parse_list(rListText, "R-list");
        cfg.params.dryRun = dryRun;

        const cli::ReportEnvelope env = cli::dispatch(cfg);
        cli::emit_report(env, cfg.params.out);
        for (const auto& v : env.verdicts)
            std::cerr << cli::status_name(v.status) << "  " << v.criterion << "\n";
        return cli::exit_code(env);
    } catch (const cli::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << e.name() << ": " << e.what() << "\n";
        return 1;
    }
}
