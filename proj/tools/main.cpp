#include <cstdio>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "app/commands.hpp"
#include "syndyn/errors.hpp"

using namespace syndyn::app;

namespace {

int fail(const std::string &kind, int code, const std::string &message, const std::string &path = {}) {
    json rec = {{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}};
    if (!path.empty()) {
        rec["error"]["path"] = path;
    }
    std::cerr << rec.dump() << "\n";
    return code;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Syndrome dynamics under energy-gap protection and local cooling"};
    app.fallthrough();
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", format = "csv";
    uint64_t seed = 0;
    size_t threads = 0;
    app.add_option("--config", config_path, "JSON run configuration")->envname("SYNDYN_CONFIG");
    app.add_option("--out", out_dir, "root directory for run outputs")->envname("SYNDYN_OUT");
    app.add_option("--seed", seed, "random seed recorded in the manifest")->envname("SYNDYN_SEED");
    app.add_option("--threads", threads, "worker threads (0 = all cores)")->envname("SYNDYN_THREADS");
    app.add_option("--format", format, "csv or csv+svg")
        ->envname("SYNDYN_FORMAT")
        ->check(CLI::IsMember({"csv", "csv+svg"}));
    app.add_flag_function("--version", [](int64_t) {
        std::cout << "syndyn " << kVersion << "\n";
        std::exit(0);
    }, "print the version");

    auto *codes = app.add_subcommand("codes", "list built-in codes, or classify a configured code");
    std::string codes_action = "list";
    codes->add_option("action", codes_action, "list or classify")->check(CLI::IsMember({"list", "classify"}));
    std::vector<std::pair<CLI::App *, Mode>> modes = {{codes, Mode::Codes}};
    modes.push_back({app.add_subcommand("graph", "syndrome graph as CSV, DOT and JSON"), Mode::Graph});
    modes.push_back({app.add_subcommand("rates", "time-dependent leakage rates of an Ohmic bath"), Mode::Rates});
    modes.push_back({app.add_subcommand("suppress", "leakage rates under EGP or DD modulation"), Mode::Suppress});
    modes.push_back({app.add_subcommand("correct", "correctable population under the rate equation"), Mode::Correct});
    modes.push_back({app.add_subcommand("stability", "hitting-time scan of concatenated codes"), Mode::Stability});
    auto *validate_cmd = app.add_subcommand("validate", "check a configuration without running it");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        return fail("usage", 2, e.what());
    }

    try {
        if (validate_cmd->parsed()) {
            if (config_path.empty()) {
                return fail("usage", 2, "validate needs --config");
            }
            json cfg;
            json report;
            try {
                cfg = load_config_file(config_path);
                report = validate(cfg, Mode::Correct);
            } catch (const ConfigError &e) {
                report = {{"valid", false},
                          {"errors", json::array({{{"path", e.path.empty() ? "/" : e.path}, {"message", e.what()}}})},
                          {"warnings", json::array()}};
            }
            std::cout << report.dump(2) << "\n";
            return 0;
        }
        if (codes->parsed() && codes_action == "list" && config_path.empty()) {
            std::cout << codes_table().csv();
            return 0;
        }
        for (auto [cmd, mode] : modes) {
            if (!cmd->parsed()) {
                continue;
            }
            if (config_path.empty()) {
                return fail("usage", 2, cmd->get_name() + " needs --config");
            }
            auto cfg = load_config_file(config_path);
            RunOptions opts{seed, threads, format == "csv+svg"};
            auto result = run(mode, cfg, opts);
            json inputs = {{"config", result.resolved}, {"seed", seed}, {"format", format}, {"version", kVersion}};
            auto dir = write_run(out_dir, inputs, result.files, kVersion);
            std::cout << dir.string() << "\n" << result.summary << "\n";
            return 0;
        }
    } catch (const ConfigError &e) {
        return fail("schema", 2, e.what(), e.path);
    } catch (const syndyn::PauliParseError &e) {
        return fail("schema", 2, e.what());
    } catch (const syndyn::NumericalError &e) {
        return fail("numerical", 3, e.what());
    } catch (const std::domain_error &e) {
        return fail("numerical", 3, e.what());
    } catch (const IoError &e) {
        return fail("io", 4, e.what());
    } catch (const std::filesystem::filesystem_error &e) {
        return fail("io", 4, e.what());
    } catch (const std::invalid_argument &e) {
        return fail("schema", 2, e.what());
    } catch (const std::exception &e) {
        return fail("internal", 1, e.what());
    }
    return fail("usage", 2, "no subcommand");
}
