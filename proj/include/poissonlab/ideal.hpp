#ifndef POISSONLAB_IDEAL_HPP
#define POISSONLAB_IDEAL_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "poissonlab/poly.hpp"

namespace poissonlab {

using SpecMap = std::map<std::string, Rational>;

/// Reduced Groebner basis of parameter-free generators under graded
/// reverse lexicographic order on the chart variables. Generators that are
/// zero are dropped; the unit ideal yields the basis {1}.
std::vector<Poly> reduced_groebner_basis(const ContextPtr& ctx,
                                         std::vector<Poly> generators);

/// Full multivariate division remainder of p by the given basis. Every
/// term of the remainder is irreducible. Dividing a polynomial that still
/// carries symbolic parameters by a parameter-free basis is well defined
/// (parameters ride along as inert symbols).
Poly normal_form_against(const Poly& p, const std::vector<Poly>& basis);

/// Polynomial ideal with a lazily computed reduced Groebner basis. A
/// specialization map is attached at construction and applied to the
/// generators before the basis is computed; if symbolic parameters survive
/// specialization the basis computation throws UnspecializedParameter.
/// Immutable and cheap to copy; the basis cache is shared and thread-safe.
class IdealGB {
public:
    IdealGB(ContextPtr ctx, std::vector<Poly> generators, SpecMap specialization = {});

    const ContextPtr& context() const { return ctx_; }
    const std::vector<Poly>& generators() const { return generators_; }
    const SpecMap& specialization() const { return specialization_; }

    /// Reduced Groebner basis (computed on first use).
    const std::vector<Poly>& basis() const;

    /// Normal form of p modulo the basis; the ideal's specialization is
    /// applied to p first (partially, for whatever parameters it covers).
    Poly normal_form(const Poly& p) const;

    /// True iff normal_form(p) == 0.
    bool contains(const Poly& p) const;

    bool is_unit_ideal() const;
    bool is_zero_ideal() const;

    /// Krull dimension of the quotient ring, read combinatorially off the
    /// leading-term ideal: the largest cardinality of a set S of chart
    /// variables such that no leading monomial involves only variables
    /// from S. Unit ideal: -1.
    int krull_dimension() const;

private:
    struct Cache {
        std::once_flag flag;
        std::vector<Poly> basis;
    };

    ContextPtr ctx_;
    std::vector<Poly> generators_;
    SpecMap specialization_;
    std::shared_ptr<Cache> cache_;
};

/// Decides membership of v in the submodule of O^n generated by gens,
/// using a Groebner basis for submodules of the free module under the
/// position-over-term extension of degrevlex. On success the witness
/// satisfies v = sum_i witness[i] * gens[i] exactly.
struct ModuleMembership {
    bool member = false;
    VectorOfPolys witness;  // over the original generators
};

ModuleMembership module_membership(const VectorOfPolys& v,
                                   const std::vector<VectorOfPolys>& gens);

}  // namespace poissonlab

#endif
