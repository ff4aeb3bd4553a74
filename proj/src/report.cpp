#include "poissonlab/report.hpp"

#include <algorithm>
#include <iomanip>
#include <random>
#include <sstream>

#include <json.hpp>

#include "poissonlab/residues.hpp"

namespace poissonlab {

std::string input_digest(const std::string& text) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    std::ostringstream out;
    out << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << hash;
    return out.str();
}

SpecMap generic_specialization(const ContextPtr& ctx, std::uint64_t seed) {
    static const int kPrimePool[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                     43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    std::vector<int> pool(std::begin(kPrimePool), std::end(kPrimePool));
    if (ctx->num_params() > pool.size())
        throw Error("generic specialization supports at most " +
                    std::to_string(pool.size()) + " parameters");
    std::mt19937_64 rng(seed);
    std::shuffle(pool.begin(), pool.end(), rng);
    SpecMap values;
    for (std::size_t i = 0; i < ctx->num_params(); ++i)
        values[ctx->param_name(i)] = Rational(pool[i]);
    return values;
}

std::string command_name(Command::Kind kind) {
    switch (kind) {
        case Command::Kind::verify: return "verify";
        case Command::Kind::bracket: return "bracket";
        case Command::Kind::hamiltonian: return "hamiltonian";
        case Command::Kind::modular: return "modular";
        case Command::Kind::rank: return "rank";
        case Command::Kind::strata: return "strata";
        case Command::Kind::residues: return "residues";
        case Command::Kind::foliation_check: return "foliation-check";
        case Command::Kind::ham_solve: return "ham-solve";
        case Command::Kind::report: return "report";
    }
    return "?";
}

namespace {

std::string log_symplectic_name(LogSymplecticStatus s) {
    switch (s) {
        case LogSymplecticStatus::not_generically_symplectic:
            return "not_generically_symplectic";
        case LogSymplecticStatus::empty_divisor: return "symplectic_empty_divisor";
        case LogSymplecticStatus::log_symplectic: return "log_symplectic";
        case LogSymplecticStatus::non_reduced_divisor: return "non_reduced_divisor";
    }
    return "?";
}

// connection field referenced by name ("modular" is always available)
Multivector resolve_connection_field(const ProblemFile& pf, const PoissonStructure& p,
                                     const std::string& name) {
    if (name.empty() || name == "modular") return modular_vf(p);
    for (const auto& decl : pf.connection_fields) {
        if (decl.name != name) continue;
        return decl.is_modular ? modular_vf(p) : decl.field;
    }
    throw SemanticError(0, 0, "no connection field named '" + name +
                                  "' is declared in the problem file");
}

struct Pipeline {
    PoissonStructure structure;
    SpecMap spec;
    bool has_spec = false;
};

std::vector<StratumRow> build_strata_rows(const PoissonStructure& p, const SpecMap& spec) {
    std::vector<StratumRow> rows;
    Multivector zmod = modular_vf(p);
    for (const DegeneracyStratum& s : stratification(p, spec)) {
        StratumRow row;
        row.k = s.k;
        for (const Poly& g : s.ideal.generators()) row.generators.push_back(g.to_string());
        row.dimension = s.dimension;
        row.poisson_ideal = is_poisson_ideal(p, s.ideal);
        row.modular_field_tangent = is_tangent_vf(zmod, s.ideal);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<BondalRowOut> build_bondal_rows(const PoissonStructure& p, const SpecMap& spec) {
    std::vector<BondalRowOut> rows;
    for (const BondalRow& r : bondal_report(p, spec).rows)
        rows.push_back(BondalRowOut{r.k, r.dimension, r.bound, to_string(r.verdict)});
    return rows;
}

std::vector<ResidueRow> build_residue_rows(const ProblemFile& pf, const PoissonStructure& p,
                                           const Multivector& field, const SpecMap& spec,
                                           std::optional<int> only_k) {
    LineModule mod = make_line_module(p, field, "connection");
    const int half_rank = generic_rank(p) / 2;
    std::vector<int> ks;
    if (only_k) {
        ks.push_back(*only_k);
    } else {
        for (int k = 0; k <= half_rank; ++k) ks.push_back(k);
    }
    std::vector<ResidueRow> rows;
    for (int k : ks) {
        Residue res = residue(mod, k, spec);
        ResidueRow row;
        row.k = k;
        row.value = res.value.to_string();
        for (const auto& sub : pf.subvarieties) {
            IdealGB ideal(pf.context, sub.generators, spec);
            row.restrictions.emplace_back(sub.name,
                                          residue_restricted(mod, k, ideal).to_string());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

Report run_command(const ProblemFile& pf, const Command& cmd, const RunOptions& options) {
    Report rep;
    rep.command = command_name(cmd.kind);
    rep.input_name = options.input_name;
    rep.digest = input_digest(pf.source_text);

    // resolve the specialization: CLI values override the file's
    SpecMap spec = pf.specialization;
    bool generic = options.generic || (pf.generic_specialization && spec.empty());
    if (options.generic && !options.seed)
        throw Error("generic specialization requires a seed");
    if (!options.cli_specialization.empty()) {
        generic = false;
        for (const auto& [k, v] : options.cli_specialization) spec[k] = v;
    }
    if (generic) {
        if (!options.seed) throw Error("generic specialization requires a seed");
        spec = generic_specialization(pf.context, *options.seed);
        rep.seed = options.seed;
        rep.specialization_mode = "generic";
    } else if (!spec.empty()) {
        rep.specialization_mode = "explicit";
    }
    for (const auto& [k, v] : spec)
        rep.specialization.emplace_back(k, rational_to_string(v));

    PoissonStructure structure = make_poisson(pf.bivector);
    rep.jacobi = "verified";

    const ContextPtr& ctx = pf.context;
    const bool has_params = ctx->num_params() > 0;

    switch (cmd.kind) {
        case Command::Kind::verify:
            break;
        case Command::Kind::bracket: {
            Poly f = parse_poly(cmd.arg_f, ctx);
            Poly g = parse_poly(cmd.arg_g, ctx);
            rep.bracket_result = bracket(structure, f, g).to_string();
            break;
        }
        case Command::Kind::hamiltonian: {
            Poly f = parse_poly(cmd.arg_f, ctx);
            rep.hamiltonian_result = hamiltonian_vf(structure, f).to_string();
            break;
        }
        case Command::Kind::modular: {
            Multivector z = modular_vf(structure);
            rep.modular_symbolic = z.to_string();
            if (!spec.empty())
                rep.modular_specialized = z.specialize(spec, false).to_string();
            break;
        }
        case Command::Kind::rank:
            rep.rank = generic_rank(structure);
            break;
        case Command::Kind::strata: {
            rep.strata = build_strata_rows(structure, spec);
            rep.bondal = build_bondal_rows(structure, spec);
            break;
        }
        case Command::Kind::residues: {
            Multivector field = resolve_connection_field(pf, structure, cmd.module_name);
            rep.residues = build_residue_rows(pf, structure, field, spec, cmd.k);
            break;
        }
        case Command::Kind::foliation_check: {
            Multivector field = resolve_connection_field(pf, structure, cmd.module_name);
            ModuleMembership mm = in_symplectic_foliation(structure, field, spec);
            FoliationOut out;
            out.field_name = cmd.module_name.empty() ? "modular" : cmd.module_name;
            out.field = field.specialize(spec, false).to_string();
            out.member = mm.member;
            if (mm.member)
                for (const Poly& w : mm.witness) out.witness.push_back(w.to_string());
            rep.foliation = std::move(out);
            break;
        }
        case Command::Kind::ham_solve: {
            Multivector field = resolve_connection_field(pf, structure, cmd.module_name);
            HamSolveResult hs =
                hamiltonian_solve_bounded_degree(structure, field, cmd.max_degree, spec);
            HamSolveOut out;
            out.field_name = cmd.module_name.empty() ? "modular" : cmd.module_name;
            out.field = field.specialize(spec, false).to_string();
            out.solved = hs.solved();
            if (hs.solved()) out.solution = hs.solution->to_string();
            out.max_degree = hs.max_degree;
            out.unknowns = hs.unknowns;
            out.rank_matrix = hs.rank_matrix;
            out.rank_augmented = hs.rank_augmented;
            rep.ham_solve = std::move(out);
            break;
        }
        case Command::Kind::report: {
            rep.rank = generic_rank(structure);
            Multivector z = modular_vf(structure);
            rep.modular_symbolic = z.to_string();
            if (!spec.empty())
                rep.modular_specialized = z.specialize(spec, false).to_string();
            rep.strata = build_strata_rows(structure, spec);
            rep.bondal = build_bondal_rows(structure, spec);
            rep.residues = build_residue_rows(pf, structure, z, spec, std::nullopt);
            if (ctx->num_vars() % 2 == 0) {
                PoissonStructure for_log =
                    has_params ? make_poisson(pf.bivector.specialize(spec, true)) : structure;
                rep.log_symplectic = log_symplectic_name(log_symplectic_status(for_log));
            }
            if (pf.homogeneous)
                rep.twisted_oneform = bivector_to_twisted_oneform(pf.bivector).to_string();
            break;
        }
    }
    return rep;
}

// ------------------------------------------------------------------------ //
// serialization

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json to_json(const Report& r) {
    ordered_json j;
    j["schema"] = "poissonlab-report-v1";
    j["conventions"] = r.conventions;
    j["command"] = r.command;
    j["input"] = {{"name", r.input_name}, {"digest", r.digest}};
    ordered_json spec;
    spec["mode"] = r.specialization_mode;
    if (r.seed)
        spec["seed"] = *r.seed;
    else
        spec["seed"] = nullptr;
    ordered_json values = ordered_json::object();
    for (const auto& [k, v] : r.specialization) values[k] = v;
    spec["values"] = values;
    j["specialization"] = spec;
    if (r.jacobi) j["jacobi"] = *r.jacobi;
    if (r.bracket_result) j["bracket"] = *r.bracket_result;
    if (r.hamiltonian_result) j["hamiltonian"] = *r.hamiltonian_result;
    if (r.modular_symbolic) {
        ordered_json m;
        m["symbolic"] = *r.modular_symbolic;
        if (r.modular_specialized)
            m["specialized"] = *r.modular_specialized;
        else
            m["specialized"] = nullptr;
        j["modular_field"] = m;
    }
    if (r.rank) j["rank"] = *r.rank;
    if (r.strata) {
        ordered_json rows = ordered_json::array();
        for (const auto& s : *r.strata) {
            ordered_json row;
            row["k"] = s.k;
            row["generators"] = s.generators;
            row["dimension"] = s.dimension;
            row["poisson_ideal"] = s.poisson_ideal;
            row["modular_field_tangent"] = s.modular_field_tangent;
            rows.push_back(row);
        }
        j["strata"] = rows;
    }
    if (r.bondal) {
        ordered_json rows = ordered_json::array();
        for (const auto& b : *r.bondal) {
            ordered_json row;
            row["k"] = b.k;
            row["dimension"] = b.dimension;
            row["bound"] = b.bound;
            row["verdict"] = b.verdict;
            rows.push_back(row);
        }
        j["bondal"] = rows;
    }
    if (r.residues) {
        ordered_json rows = ordered_json::array();
        for (const auto& res : *r.residues) {
            ordered_json row;
            row["k"] = res.k;
            row["value"] = res.value;
            ordered_json restr = ordered_json::array();
            for (const auto& [name, value] : res.restrictions)
                restr.push_back(ordered_json{{"subvariety", name}, {"value", value}});
            row["restrictions"] = restr;
            rows.push_back(row);
        }
        j["residues"] = rows;
    }
    if (r.log_symplectic) j["log_symplectic"] = *r.log_symplectic;
    if (r.twisted_oneform) j["twisted_oneform"] = *r.twisted_oneform;
    if (r.foliation) {
        ordered_json f;
        f["field_name"] = r.foliation->field_name;
        f["field"] = r.foliation->field;
        f["member"] = r.foliation->member;
        f["witness"] = r.foliation->witness;
        j["foliation"] = f;
    }
    if (r.ham_solve) {
        ordered_json h;
        h["field_name"] = r.ham_solve->field_name;
        h["field"] = r.ham_solve->field;
        h["solved"] = r.ham_solve->solved;
        if (r.ham_solve->solved)
            h["solution"] = r.ham_solve->solution;
        else
            h["solution"] = nullptr;
        h["max_degree"] = r.ham_solve->max_degree;
        h["unknowns"] = r.ham_solve->unknowns;
        h["rank_matrix"] = r.ham_solve->rank_matrix;
        h["rank_augmented"] = r.ham_solve->rank_augmented;
        j["ham_solve"] = h;
    }
    return j;
}

std::string to_text(const Report& r) {
    std::ostringstream out;
    out << "poissonlab " << r.command << "\n";
    out << "input: " << r.input_name << " (" << r.digest << ")\n";
    out << "conventions: " << r.conventions << "\n";
    out << "specialization: " << r.specialization_mode;
    if (r.seed) out << " (seed " << *r.seed << ")";
    if (!r.specialization.empty()) {
        out << " ";
        for (std::size_t i = 0; i < r.specialization.size(); ++i) {
            if (i) out << ", ";
            out << r.specialization[i].first << "=" << r.specialization[i].second;
        }
    }
    out << "\n";
    if (r.jacobi) out << "jacobi: " << *r.jacobi << "\n";
    if (r.bracket_result) out << "bracket: " << *r.bracket_result << "\n";
    if (r.hamiltonian_result) out << "hamiltonian field: " << *r.hamiltonian_result << "\n";
    if (r.modular_symbolic) {
        out << "modular field: " << *r.modular_symbolic << "\n";
        if (r.modular_specialized)
            out << "modular field (specialized): " << *r.modular_specialized << "\n";
    }
    if (r.rank) out << "rank: " << *r.rank << "\n";
    if (r.strata) {
        out << "strata (" << r.strata->size() << " rows):\n";
        for (const auto& s : *r.strata) {
            out << "  k=" << s.k << " dim=" << s.dimension << " poisson_ideal="
                << (s.poisson_ideal ? "yes" : "no")
                << " modular_tangent=" << (s.modular_field_tangent ? "yes" : "no")
                << " ideal=(";
            for (std::size_t i = 0; i < s.generators.size(); ++i) {
                if (i) out << ", ";
                out << s.generators[i];
            }
            out << ")\n";
        }
    }
    if (r.bondal) {
        out << "bondal (whole-stratum dimension proxy):\n";
        for (const auto& b : *r.bondal)
            out << "  k=" << b.k << " dim=" << b.dimension << " bound=" << b.bound << " "
                << b.verdict << "\n";
    }
    if (r.residues) {
        out << "residues:\n";
        for (const auto& res : *r.residues) {
            out << "  k=" << res.k << ": " << res.value << "\n";
            for (const auto& [name, value] : res.restrictions)
                out << "    on " << name << ": " << value << "\n";
        }
    }
    if (r.log_symplectic) out << "log-symplectic: " << *r.log_symplectic << "\n";
    if (r.twisted_oneform) out << "twisted 1-form: " << *r.twisted_oneform << "\n";
    if (r.foliation) {
        out << "foliation membership of " << r.foliation->field_name << " ("
            << r.foliation->field << "): " << (r.foliation->member ? "yes" : "no") << "\n";
        if (r.foliation->member) {
            out << "  witness:";
            for (const auto& w : r.foliation->witness) out << " [" << w << "]";
            out << "\n";
        }
    }
    if (r.ham_solve) {
        out << "hamiltonian solve for " << r.ham_solve->field_name << " ("
            << r.ham_solve->field << "), degree <= " << r.ham_solve->max_degree << ": ";
        if (r.ham_solve->solved)
            out << "f = " << r.ham_solve->solution << "\n";
        else
            out << "NoSolution (rank " << r.ham_solve->rank_matrix << " vs augmented "
                << r.ham_solve->rank_augmented << " over " << r.ham_solve->unknowns
                << " unknowns)\n";
    }
    return out.str();
}

}  // namespace

std::string emit_report(const Report& report, ReportFormat format) {
    if (format == ReportFormat::json_v1) return to_json(report).dump(2) + "\n";
    return to_text(report);
}

}  // namespace poissonlab
