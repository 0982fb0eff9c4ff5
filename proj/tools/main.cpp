#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ehq/errors.hpp"
#include "ehq/job.hpp"

namespace {

int emit(const ehq::Report& rep, const std::string& out_path) {
    const std::string text = rep.doc.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "cannot write " << out_path << "\n";
            return 4;
        }
        out << text;
    }
    // one-line human summary on stderr
    if (rep.doc.contains("error"))
        std::cerr << "error: " << rep.doc["error"].get<std::string>() << "\n";
    else if (rep.doc.contains("outcome"))
        std::cerr << rep.doc["mode"].get<std::string>() << ": "
                  << rep.doc["outcome"].get<std::string>() << "\n";
    return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Transcendence criteria and numeric validation for second-order "
                 "elliptic difference equations"};
    app.require_subcommand(1);

    std::string params_path, out_path, points_path, case_name;
    std::optional<int> trunc, nodes;
    std::optional<unsigned> seed;

    auto* check = app.add_subcommand("check", "symbolic transcendence verdict");
    check->add_option("--case", case_name, "A, B or custom")
        ->check(CLI::IsMember({"A", "B", "custom"}));
    check->add_option("--params", params_path, "job config JSON")->required();
    check->add_option("--out", out_path, "report path (default: stdout)");

    auto* validate = app.add_subcommand("validate", "numeric residual suite");
    validate->add_option("--params", params_path, "job config JSON")->required();
    validate->add_option("--trunc", trunc, "override truncation order N");
    validate->add_option("--nodes", nodes, "override quadrature node count M");
    validate->add_option("--seed", seed, "override sample seed");
    validate->add_option("--out", out_path, "report path (default: stdout)");

    auto* eval = app.add_subcommand("eval", "tabulate special-function values");
    eval->add_option("--params", params_path, "job config JSON")->required();
    eval->add_option("--points", points_path, "points JSON ([re,im] array)")->required();
    eval->add_option("--out", out_path, "report path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        nlohmann::json config = ehq::load_json_file(params_path);
        if (check->parsed()) {
            if (!case_name.empty()) config["case"] = case_name;
            return emit(ehq::run_check(config), out_path);
        }
        if (validate->parsed()) {
            ehq::ValidateOverrides ov{trunc, nodes, seed};
            return emit(ehq::run_validate(config, ov), out_path);
        }
        nlohmann::json points = ehq::load_json_file(points_path);
        return emit(ehq::run_eval(config, points), out_path);
    } catch (const ehq::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
