#include "poissonlab/strata.hpp"

namespace poissonlab {

DegeneracyStratum degeneracy_ideal(const PoissonStructure& p, int k,
                                   const SpecMap& specialization) {
    if (k < 0) throw IndexOutOfRange("degeneracy index must be nonnegative");
    Multivector pw = power(p.bivector(), k + 1);
    IdealGB ideal(p.context(), pw.coefficient_list(), specialization);
    return DegeneracyStratum{k, ideal, ideal.krull_dimension()};
}

std::vector<DegeneracyStratum> stratification(const PoissonStructure& p,
                                              const SpecMap& specialization) {
    const int half_rank = generic_rank(p) / 2;
    std::vector<DegeneracyStratum> strata;
    strata.reserve(half_rank);
    for (int k = 0; k < half_rank; ++k)
        strata.push_back(degeneracy_ideal(p, k, specialization));
    // Zeros nesting D_2k subset D_{2k+2}: the generators of I_{2k+2} lie in I_2k.
    for (std::size_t i = 0; i + 1 < strata.size(); ++i) {
        for (const Poly& g : strata[i + 1].ideal.generators()) {
            if (!strata[i].ideal.contains(g))
                throw Error("internal inconsistency: degeneracy ideals are not nested");
        }
    }
    return strata;
}

bool is_poisson_ideal(const PoissonStructure& p, const IdealGB& ideal) {
    require_same_context(p.context(), ideal.context(), "is_poisson_ideal");
    const ContextPtr& ctx = p.context();
    for (const Poly& g : ideal.generators()) {
        for (std::size_t i = 0; i < ctx->num_vars(); ++i) {
            Poly br = bracket(p, g, Poly::variable(ctx, i));
            if (!ideal.contains(br)) return false;
        }
    }
    return true;
}

bool is_tangent_vf(const Multivector& x, const IdealGB& ideal) {
    if (x.degree() != 1 && !x.is_zero())
        throw DegreeMismatch("tangency test expects a vector field");
    if (x.is_zero()) return true;
    for (const Poly& g : ideal.generators()) {
        if (!ideal.contains(x.apply_to(g))) return false;
    }
    return true;
}

std::string to_string(BondalVerdict v) {
    switch (v) {
        case BondalVerdict::meets_bound: return "meets_bound";
        case BondalVerdict::below_bound: return "below_bound";
        case BondalVerdict::empty: return "empty";
    }
    return "?";
}

BondalReport bondal_report(const PoissonStructure& p, const SpecMap& specialization) {
    BondalReport report;
    for (const DegeneracyStratum& s : stratification(p, specialization)) {
        BondalRow row;
        row.k = s.k;
        row.dimension = s.dimension;
        row.bound = 2 * s.k + 1;
        if (s.dimension < 0)
            row.verdict = BondalVerdict::empty;
        else
            row.verdict = s.dimension >= row.bound ? BondalVerdict::meets_bound
                                                   : BondalVerdict::below_bound;
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace poissonlab
