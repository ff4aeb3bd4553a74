// poissonlab: exact symbolic computations for polynomial Poisson
// structures on affine charts. See README.md for the file format and the
// command reference.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "poissonlab/poisson.hpp"
#include "poissonlab/report.hpp"
#include "poissonlab/residues.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitMathFailure = 1;
constexpr int kExitInputError = 2;

struct CliOptions {
    std::string input;
    std::vector<std::string> specialize;
    std::optional<std::uint64_t> seed;
    int max_degree = 4;
    std::string format = "text";
    std::string module_name;
    std::optional<int> k;
    std::string arg_f, arg_g, arg_name;
};

void add_common_options(CLI::App* cmd, CliOptions& opts) {
    cmd->add_option("--input", opts.input, "problem file")->required();
    cmd->add_option("--specialize", opts.specialize,
                    "parameter values KEY=VAL (repeatable), or the single word 'generic'");
    cmd->add_option("--seed", opts.seed, "seed for generic specialization");
    cmd->add_option("--format", opts.format,
                    "output format: text | json-v1 (alias: json-like-schema-v1)")
        ->check(CLI::IsMember({"text", "json-v1", "json-like-schema-v1"}));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw poissonlab::Error("cannot open input file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
    using poissonlab::Command;
    CLI::App app{"exact Poisson-structure computations on affine charts"};
    app.require_subcommand(1);

    CliOptions opts;
    Command cmd;

    auto* verify = app.add_subcommand("verify", "check the Jacobi identity");
    add_common_options(verify, opts);

    auto* bracket = app.add_subcommand("bracket", "Poisson bracket {f, g}");
    bracket->add_option("f", opts.arg_f, "first polynomial")->required();
    bracket->add_option("g", opts.arg_g, "second polynomial")->required();
    add_common_options(bracket, opts);

    auto* hamiltonian = app.add_subcommand("hamiltonian", "hamiltonian vector field X_f");
    hamiltonian->add_option("f", opts.arg_f, "polynomial")->required();
    add_common_options(hamiltonian, opts);

    auto* modular = app.add_subcommand("modular", "modular vector field");
    add_common_options(modular, opts);

    auto* rank = app.add_subcommand("rank", "generic rank of the structure");
    add_common_options(rank, opts);

    auto* strata = app.add_subcommand("strata", "degeneracy loci and dimensions");
    add_common_options(strata, opts);

    auto* residues = app.add_subcommand("residues", "residues of a line module");
    residues->add_option("--module", opts.module_name,
                         "named connection field (default: modular)");
    residues->add_option("--k", opts.k, "compute a single residue index");
    add_common_options(residues, opts);

    auto* foliation = app.add_subcommand("foliation-check",
                                         "membership in the symplectic foliation module");
    foliation->add_option("name", opts.arg_name, "connection field name or 'modular'")
        ->required();
    add_common_options(foliation, opts);

    auto* hamsolve = app.add_subcommand("ham-solve", "solve X_f = Z up to a degree bound");
    hamsolve->add_option("name", opts.arg_name, "connection field name or 'modular'")
        ->required();
    hamsolve->add_option("--max-degree", opts.max_degree, "degree bound for f")
        ->capture_default_str();
    add_common_options(hamsolve, opts);

    auto* report = app.add_subcommand("report", "full pipeline report");
    add_common_options(report, opts);

    CLI11_PARSE(app, argc, argv);

    if (verify->parsed()) cmd.kind = Command::Kind::verify;
    if (bracket->parsed()) {
        cmd.kind = Command::Kind::bracket;
        cmd.arg_f = opts.arg_f;
        cmd.arg_g = opts.arg_g;
    }
    if (hamiltonian->parsed()) {
        cmd.kind = Command::Kind::hamiltonian;
        cmd.arg_f = opts.arg_f;
    }
    if (modular->parsed()) cmd.kind = Command::Kind::modular;
    if (rank->parsed()) cmd.kind = Command::Kind::rank;
    if (strata->parsed()) cmd.kind = Command::Kind::strata;
    if (residues->parsed()) {
        cmd.kind = Command::Kind::residues;
        cmd.module_name = opts.module_name;
        cmd.k = opts.k;
    }
    if (foliation->parsed()) {
        cmd.kind = Command::Kind::foliation_check;
        cmd.module_name = opts.arg_name;
    }
    if (hamsolve->parsed()) {
        cmd.kind = Command::Kind::ham_solve;
        cmd.module_name = opts.arg_name;
        cmd.max_degree = opts.max_degree;
    }
    if (report->parsed()) cmd.kind = Command::Kind::report;

    try {
        poissonlab::RunOptions run;
        run.input_name = std::filesystem::path(opts.input).filename().string();

        for (const std::string& item : opts.specialize) {
            if (item == "generic") {
                run.generic = true;
                continue;
            }
            auto eq = item.find('=');
            if (eq == std::string::npos)
                throw poissonlab::Error("--specialize expects KEY=VAL or 'generic', got '" +
                                        item + "'");
            run.cli_specialization[item.substr(0, eq)] =
                poissonlab::parse_rational_literal(item.substr(eq + 1));
        }
        run.seed = opts.seed;
        if (run.generic && !run.seed) {
            std::random_device rd;
            run.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
        }

        poissonlab::ProblemFile pf = poissonlab::parse_problem_file(read_file(opts.input));
        poissonlab::Report rep = poissonlab::run_command(pf, cmd, run);
        poissonlab::ReportFormat fmt = opts.format == "text"
                                           ? poissonlab::ReportFormat::text
                                           : poissonlab::ReportFormat::json_v1;
        std::cout << poissonlab::emit_report(rep, fmt);
        return kExitSuccess;
    } catch (const poissonlab::JacobiFailure& e) {
        std::cout << "jacobi: FAILED\n[pi, pi] = " << e.obstruction.to_string() << "\n";
        return kExitMathFailure;
    } catch (const poissonlab::NotFlat& e) {
        std::cout << "flatness: FAILED\n[Z, pi] = " << e.obstruction.to_string() << "\n";
        return kExitMathFailure;
    } catch (const poissonlab::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const poissonlab::SemanticError& e) {
        std::cerr << "input error (line " << e.line << "): " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}
