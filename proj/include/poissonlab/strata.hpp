#ifndef POISSONLAB_STRATA_HPP
#define POISSONLAB_STRATA_HPP

#include <string>
#include <vector>

#include "poissonlab/ideal.hpp"
#include "poissonlab/poisson.hpp"

namespace poissonlab {

/// Degeneracy locus D_2k = Zeros(pi^{k+1}) as the ideal generated by the
/// raw coefficients of pi^{k+1}. The dimension is the Krull dimension of
/// the whole stratum (a proxy for the component-wise statement; no
/// primary decomposition happens here).
struct DegeneracyStratum {
    int k = 0;
    IdealGB ideal;
    int dimension = 0;
};

/// Builds the stratum for one k. Parameters must be covered by the
/// specialization whenever the coefficients of pi^{k+1} carry any (the
/// dimension needs a Groebner basis). For k >= generic_rank/2 the ideal
/// is (0) and the stratum is the whole chart.
DegeneracyStratum degeneracy_ideal(const PoissonStructure& p, int k,
                                   const SpecMap& specialization = {});

/// All nontrivial strata, k = 0 .. generic_rank/2 - 1. Consecutive ideal
/// containment I_{2k+2} generators in I_{2k} is verified on the way.
std::vector<DegeneracyStratum> stratification(const PoissonStructure& p,
                                              const SpecMap& specialization = {});

/// Prop-2.4 test: true iff NF({g, x_i}, I) = 0 for every generator g and
/// coordinate x_i (sufficient by the Leibniz rule: brackets against the
/// coordinates generate all brackets against O_X over the ideal).
bool is_poisson_ideal(const PoissonStructure& p, const IdealGB& ideal);

/// True iff NF(X(g), I) = 0 for every generator g of I.
bool is_tangent_vf(const Multivector& x, const IdealGB& ideal);

enum class BondalVerdict { meets_bound, below_bound, empty };

std::string to_string(BondalVerdict v);

struct BondalRow {
    int k = 0;
    int dimension = 0;
    int bound = 0;  // 2k + 1
    BondalVerdict verdict = BondalVerdict::empty;
};

/// Dimension report against the 2k+1 bound for every nontrivial stratum.
/// The dimension is the whole-stratum Krull dimension, a proxy for the
/// component-wise bound.
struct BondalReport {
    std::vector<BondalRow> rows;
};

BondalReport bondal_report(const PoissonStructure& p, const SpecMap& specialization = {});

}  // namespace poissonlab

#endif
