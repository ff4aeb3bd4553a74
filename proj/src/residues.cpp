#include "poissonlab/residues.hpp"

#include <algorithm>
#include <functional>

namespace poissonlab {

LineModule make_line_module(const PoissonStructure& p, const Multivector& z,
                            const std::string& label) {
    if (z.degree() != 1 && !z.is_zero())
        throw DegreeMismatch("connection field must be a vector field");
    Multivector zz = z.is_zero() ? Multivector::zero(p.context(), 1) : z;
    Multivector obstruction = schouten_bracket(zz, p.bivector());
    if (!obstruction.is_zero()) throw NotFlat(std::move(obstruction));
    return LineModule(p, std::move(zz), label);
}

LineModule canonical_module(const PoissonStructure& p) {
    return make_line_module(p, modular_vf(p), "canonical");
}

namespace {

Multivector normal_form_of_coefficients(const Multivector& m, const IdealGB& ideal) {
    Multivector out = Multivector::zero(m.context(), m.degree());
    for (const auto& [t, c] : m.components()) {
        Poly nf = ideal.normal_form(c);
        if (!nf.is_zero()) out.add_term(t, nf);
    }
    return out;
}

}  // namespace

Residue residue(const LineModule& l, int k, const SpecMap& specialization) {
    const PoissonStructure& p = l.structure();
    DegeneracyStratum stratum = degeneracy_ideal(p, k, specialization);
    Multivector raw = wedge(l.connection_field(), power(p.bivector(), k));
    Multivector value = normal_form_of_coefficients(raw, stratum.ideal);
    return Residue{k, std::move(value), std::move(stratum)};
}

Multivector residue_restricted(const LineModule& l, int k, const IdealGB& subvariety) {
    const PoissonStructure& p = l.structure();
    Multivector raw = wedge(l.connection_field(), power(p.bivector(), k));
    return normal_form_of_coefficients(raw, subvariety);
}

bool residue_gauge_check(const LineModule& l, const Poly& f, int k,
                         const SpecMap& specialization) {
    const PoissonStructure& p = l.structure();
    DegeneracyStratum stratum = degeneracy_ideal(p, k, specialization);
    Multivector gauge = wedge(hamiltonian_vf(p, f), power(p.bivector(), k));
    for (const auto& [t, c] : gauge.components())
        if (!stratum.ideal.contains(c)) return false;
    return true;
}

ModuleMembership in_symplectic_foliation(const PoissonStructure& p, const Multivector& z,
                                         const SpecMap& specialization) {
    if (z.degree() != 1 && !z.is_zero())
        throw DegreeMismatch("foliation membership expects a vector field");
    const ContextPtr& ctx = p.context();
    const std::size_t n = ctx->num_vars();

    auto to_vector = [&](const Multivector& x) {
        VectorOfPolys v(n, Poly::zero(ctx));
        for (const auto& [t, c] : x.components())
            v[t[0]] = c.specialize(specialization, /*require_all=*/false);
        return v;
    };

    std::vector<VectorOfPolys> gens;
    gens.reserve(n);
    for (const Multivector& g : symplectic_foliation_generators(p))
        gens.push_back(to_vector(g));
    return module_membership(to_vector(z), gens);
}

// ---------------------------------------------------------------------- //
// bounded-degree hamiltonian solve

namespace {

// all chart monomials of total degree <= d, in term order
std::vector<ExpVec> monomials_up_to_degree(const ContextPtr& ctx, int d) {
    std::vector<ExpVec> out;
    ExpVec cur(ctx->num_slots(), 0);
    const std::size_t n = ctx->num_vars();
    // iterate exponent vectors over the chart variables with |e| <= d
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int remaining) {
        if (i == n) {
            out.push_back(cur);
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            cur[i] = e;
            rec(i + 1, remaining - e);
        }
        cur[i] = 0;
    };
    rec(0, d);
    return out;
}

// exact Gaussian elimination; returns ranks and (when consistent) one
// particular solution with free unknowns set to zero
struct LinearSolve {
    std::size_t rank_matrix = 0;
    std::size_t rank_augmented = 0;
    std::optional<std::vector<Rational>> solution;
};

LinearSolve solve_exact(std::vector<std::vector<Rational>> rows, std::size_t cols) {
    // each row has cols + 1 entries, last one is the right-hand side
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t sel = r;
        while (sel < rows.size() && rows[sel][c] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        Rational inv = Rational(1) / rows[r][c];
        for (auto& v : rows[r]) v *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Rational factor = rows[i][c];
            for (std::size_t j = c; j <= cols; ++j) rows[i][j] -= factor * rows[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    LinearSolve res;
    res.rank_matrix = r;
    res.rank_augmented = r;
    for (std::size_t i = r; i < rows.size(); ++i) {
        if (rows[i][cols] != 0) {
            res.rank_augmented = r + 1;
            return res;  // inconsistent
        }
    }
    std::vector<Rational> x(cols, Rational(0));
    for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = rows[i][cols];
    res.solution = std::move(x);
    return res;
}

}  // namespace

HamSolveResult hamiltonian_solve_bounded_degree(const PoissonStructure& p,
                                                const Multivector& z, int max_degree,
                                                const SpecMap& specialization) {
    if (max_degree < 0) throw IndexOutOfRange("degree bound must be nonnegative");
    if (z.degree() != 1 && !z.is_zero())
        throw DegreeMismatch("hamiltonian solve expects a vector field");
    const ContextPtr& ctx = p.context();
    const std::size_t n = ctx->num_vars();

    Multivector target = z.specialize(specialization, /*require_all=*/false);
    if (!std::all_of(target.components().begin(), target.components().end(),
                     [](const auto& tc) { return tc.second.is_parameter_free(); }))
        throw UnspecializedParameter("hamiltonian solve requires a specialized field");

    std::vector<ExpVec> monos = monomials_up_to_degree(ctx, max_degree);
    const std::size_t unknowns = monos.size();

    // X over the candidate monomials, one vector field per unknown
    std::vector<std::vector<Poly>> columns;  // columns[u][j] = X_{m_u}^j
    columns.reserve(unknowns);
    for (const ExpVec& e : monos) {
        Multivector xm = hamiltonian_vf(p, Poly::monomial(ctx, e, Rational(1)));
        Multivector xs = xm.specialize(specialization, /*require_all=*/false);
        std::vector<Poly> comps(n, Poly::zero(ctx));
        for (const auto& [t, c] : xs.components()) {
            if (!c.is_parameter_free())
                throw UnspecializedParameter("hamiltonian solve requires a specialized structure");
            comps[t[0]] = c;
        }
        columns.push_back(std::move(comps));
    }

    std::vector<Poly> rhs(n, Poly::zero(ctx));
    for (const auto& [t, c] : target.components()) rhs[t[0]] = c;

    // index every monomial appearing in any component: one linear
    // equation per (component j, monomial m)
    std::map<std::pair<std::size_t, ExpVec>, std::size_t> row_of;
    auto intern = [&](std::size_t j, const ExpVec& e) {
        auto [it, inserted] = row_of.emplace(std::make_pair(j, e), row_of.size());
        return it->second;
    };
    for (std::size_t u = 0; u < unknowns; ++u)
        for (std::size_t j = 0; j < n; ++j)
            for (const auto& [e, c] : columns[u][j].terms()) intern(j, e);
    for (std::size_t j = 0; j < n; ++j)
        for (const auto& [e, c] : rhs[j].terms()) intern(j, e);

    std::vector<std::vector<Rational>> rows(row_of.size(),
                                            std::vector<Rational>(unknowns + 1, Rational(0)));
    for (std::size_t u = 0; u < unknowns; ++u)
        for (std::size_t j = 0; j < n; ++j)
            for (const auto& [e, c] : columns[u][j].terms())
                rows[row_of[{j, e}]][u] = c;
    for (std::size_t j = 0; j < n; ++j)
        for (const auto& [e, c] : rhs[j].terms()) rows[row_of[{j, e}]][unknowns] = c;

    LinearSolve sol = solve_exact(std::move(rows), unknowns);

    HamSolveResult result;
    result.max_degree = max_degree;
    result.unknowns = unknowns;
    result.rank_matrix = sol.rank_matrix;
    result.rank_augmented = sol.rank_augmented;
    if (!sol.solution) return result;

    Poly f = Poly::zero(ctx);
    for (std::size_t u = 0; u < unknowns; ++u)
        if ((*sol.solution)[u] != 0)
            f = f + Poly::monomial(ctx, monos[u], (*sol.solution)[u]);

    // the solver's contract: X_f reproduces Z exactly
    Multivector check = hamiltonian_vf(p, f).specialize(specialization, false);
    if (check != target)
        throw Error("internal inconsistency: hamiltonian solve verification failed");
    result.solution = std::move(f);
    return result;
}

}  // namespace poissonlab
