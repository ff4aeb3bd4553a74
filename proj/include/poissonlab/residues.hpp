#ifndef POISSONLAB_RESIDUES_HPP
#define POISSONLAB_RESIDUES_HPP

#include <optional>
#include <string>

#include "poissonlab/strata.hpp"

namespace poissonlab {

/// Thrown when a candidate connection field is not a Poisson vector field;
/// carries the nonzero bracket [Z, pi].
struct NotFlat : Error {
    Multivector obstruction;
    explicit NotFlat(Multivector obstruction_)
        : Error("connection field is not Poisson: [Z, pi] = " + obstruction_.to_string()),
          obstruction(std::move(obstruction_)) {}
};

/// Invertible Poisson module in the chart trivialization: the connection
/// acts as nabla(s) = Z (x) s for a Poisson vector field Z. Flatness of
/// the module is taken as [Z, pi] = 0 (the constructor's requirement).
class LineModule {
public:
    const PoissonStructure& structure() const { return *structure_; }
    const Multivector& connection_field() const { return connection_field_; }
    const std::string& label() const { return label_; }

private:
    LineModule(const PoissonStructure& s, Multivector z, std::string label)
        : structure_(&s), connection_field_(std::move(z)), label_(std::move(label)) {}

    const PoissonStructure* structure_;
    Multivector connection_field_;
    std::string label_;

    friend LineModule make_line_module(const PoissonStructure& p, const Multivector& z,
                                       const std::string& label);
};

/// Succeeds iff Z is a Poisson vector field; throws NotFlat otherwise.
LineModule make_line_module(const PoissonStructure& p, const Multivector& z,
                            const std::string& label);

/// The canonical module (connection field = modular field).
LineModule canonical_module(const PoissonStructure& p);

/// (Z ^ pi^k) with every coefficient in normal form modulo the D_2k ideal.
/// Unchanged under Z -> Z + X_f (gauge invariance).
struct Residue {
    int k = 0;
    Multivector value;
    DegeneracyStratum stratum;
};

/// Needs the D_2k Groebner basis: pass a specialization whenever the
/// stratum generators carry parameters.
Residue residue(const LineModule& l, int k, const SpecMap& specialization = {});

/// Normal form of (Z ^ pi^k) against a named subvariety ideal (e.g. one
/// line of a reducible D_0); meaningful when the subvariety lies inside
/// D_2k. Works symbolically whenever the restriction ideal is
/// parameter-free.
Multivector residue_restricted(const LineModule& l, int k, const IdealGB& subvariety);

/// True iff every coefficient of X_f ^ pi^k reduces to zero modulo the
/// D_2k ideal (the gauge term of the residue).
bool residue_gauge_check(const LineModule& l, const Poly& f, int k,
                         const SpecMap& specialization = {});

/// Membership of Z in the O-module generated by the hamiltonian coordinate
/// fields X_{x1}, ..., X_{xn} (the symplectic foliation). Specialized
/// input required.
ModuleMembership in_symplectic_foliation(const PoissonStructure& p, const Multivector& z,
                                         const SpecMap& specialization = {});

/// Outcome of the bounded-degree hamiltonian solve: either a polynomial f
/// of degree <= max_degree with X_f = Z exactly, or rank data certifying
/// that the linear system has no solution at this degree bound.
struct HamSolveResult {
    std::optional<Poly> solution;
    int max_degree = 0;
    std::size_t unknowns = 0;
    std::size_t rank_matrix = 0;
    std::size_t rank_augmented = 0;

    bool solved() const { return solution.has_value(); }
};

/// Sets up X_f = Z as an exact linear system over the coefficients of all
/// monomials of degree <= max_degree and solves it by rational elimination.
HamSolveResult hamiltonian_solve_bounded_degree(const PoissonStructure& p,
                                                const Multivector& z, int max_degree,
                                                const SpecMap& specialization = {});

}  // namespace poissonlab

#endif
