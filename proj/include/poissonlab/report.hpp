#ifndef POISSONLAB_REPORT_HPP
#define POISSONLAB_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "poissonlab/parse.hpp"

namespace poissonlab {

/// Version tag of the sign conventions documented in the README
/// (contraction slot order, hamiltonian and modular signs, Schouten
/// calibration). Reports carry it so that recorded values stay
/// interpretable if conventions ever change.
inline constexpr const char* kConventionsVersion = "conventions-v1";

/// FNV-1a 64-bit digest of the input text, "fnv1a64:<16 hex digits>".
std::string input_digest(const std::string& text);

/// Distinct primes from {2, ..., 97} assigned to the parameters in
/// declaration order, drawn deterministically from the seed.
SpecMap generic_specialization(const ContextPtr& ctx, std::uint64_t seed);

struct Command {
    enum class Kind {
        verify,
        bracket,
        hamiltonian,
        modular,
        rank,
        strata,
        residues,
        foliation_check,
        ham_solve,
        report
    };
    Kind kind = Kind::report;
    std::string arg_f;        // bracket f / hamiltonian f
    std::string arg_g;        // bracket g
    std::string module_name;  // residues --module, foliation-check, ham-solve
    std::optional<int> k;     // residues --k
    int max_degree = 4;       // ham-solve bound
};

std::string command_name(Command::Kind kind);

struct RunOptions {
    std::string input_name;  // echoed in the report (basename)
    SpecMap cli_specialization;
    bool generic = false;
    std::optional<std::uint64_t> seed;  // required with generic
};

struct StratumRow {
    int k = 0;
    std::vector<std::string> generators;
    int dimension = 0;
    bool poisson_ideal = false;
    bool modular_field_tangent = false;
};

struct ResidueRow {
    int k = 0;
    std::string value;
    std::vector<std::pair<std::string, std::string>> restrictions;  // (subvariety, value)
};

struct BondalRowOut {
    int k = 0;
    int dimension = 0;
    int bound = 0;
    std::string verdict;
};

struct FoliationOut {
    std::string field_name;
    std::string field;
    bool member = false;
    std::vector<std::string> witness;
};

struct HamSolveOut {
    std::string field_name;
    std::string field;
    bool solved = false;
    std::string solution;
    int max_degree = 0;
    std::size_t unknowns = 0;
    std::size_t rank_matrix = 0;
    std::size_t rank_augmented = 0;
};

/// Structured command output. Sections are present when the command
/// produced them; serialization is deterministic given inputs and seed.
struct Report {
    std::string command;
    std::string input_name;
    std::string digest;
    std::string conventions = kConventionsVersion;

    std::string specialization_mode = "none";  // none | explicit | generic
    std::optional<std::uint64_t> seed;
    std::vector<std::pair<std::string, std::string>> specialization;

    std::optional<std::string> jacobi;
    std::optional<std::string> bracket_result;
    std::optional<std::string> hamiltonian_result;
    std::optional<std::string> modular_symbolic;
    std::optional<std::string> modular_specialized;
    std::optional<int> rank;
    std::optional<std::vector<StratumRow>> strata;
    std::optional<std::vector<BondalRowOut>> bondal;
    std::optional<std::vector<ResidueRow>> residues;
    std::optional<std::string> log_symplectic;
    std::optional<std::string> twisted_oneform;
    std::optional<FoliationOut> foliation;
    std::optional<HamSolveOut> ham_solve;
};

/// Executes one command against a parsed problem file. Mathematical
/// failures (JacobiFailure, NotFlat) and input problems propagate as
/// exceptions for the caller to map onto exit codes.
Report run_command(const ProblemFile& pf, const Command& cmd, const RunOptions& options);

enum class ReportFormat { text, json_v1 };

/// Renders the report. Text output prints all polynomial data in the
/// canonical grammar (it reparses to the same values); json_v1 is the
/// stable machine-readable schema.
std::string emit_report(const Report& report, ReportFormat format);

}  // namespace poissonlab

#endif
