#ifndef POISSONLAB_MULTIVECTOR_HPP
#define POISSONLAB_MULTIVECTOR_HPP

#include <map>
#include <string>
#include <vector>

#include "poissonlab/poly.hpp"

namespace poissonlab {

/// Strictly increasing tuple of 0-based chart indices.
using IndexTuple = std::vector<int>;

/// Alternating multiderivation of fixed degree k on the chart: a map from
/// strictly increasing index tuples (i1 < ... < ik) to nonzero polynomial
/// coefficients. Degree 0 is a plain polynomial (single empty tuple).
/// The degree may exceed the chart dimension only for the zero value,
/// which arises as a wedge or bracket overflow.
class Multivector {
public:
    using Components = std::map<IndexTuple, Poly>;

    Multivector() = default;
    static Multivector zero(const ContextPtr& ctx, int degree);
    static Multivector from_poly(const Poly& p);
    /// The coordinate derivation d/dx_i as a degree-1 multivector.
    static Multivector basis_derivation(const ContextPtr& ctx, int var_index);

    const ContextPtr& context() const { return ctx_; }
    int degree() const { return degree_; }
    const Components& components() const { return comps_; }
    bool is_zero() const { return comps_.empty(); }

    /// Coefficient of the given strictly increasing tuple (zero if absent).
    Poly coefficient(const IndexTuple& tuple) const;
    /// All coefficients, in tuple order.
    std::vector<Poly> coefficient_list() const;

    /// Adds c on the given tuple, sorting it and folding in the permutation
    /// sign; a repeated index makes the contribution vanish.
    void add_term(IndexTuple tuple, const Poly& c);

    Multivector operator+(const Multivector& rhs) const;
    Multivector operator-(const Multivector& rhs) const;
    Multivector operator-() const;
    Multivector operator*(const Poly& p) const;
    Multivector operator*(const Rational& c) const;

    /// Degree-insensitive for zero values: all zeros are equal.
    bool operator==(const Multivector& rhs) const;
    bool operator!=(const Multivector& rhs) const { return !(*this == rhs); }

    /// Applies a degree-1 multivector to a function: X(f) = sum X^i df/dxi.
    Poly apply_to(const Poly& f) const;

    Multivector specialize(const std::map<std::string, Rational>& values,
                           bool require_all = true) const;

    std::string to_string() const;

private:
    Multivector(ContextPtr ctx, int degree) : ctx_(std::move(ctx)), degree_(degree) {}

    ContextPtr ctx_;
    int degree_ = 0;
    Components comps_;
};

/// Differential form of fixed degree with polynomial coefficients; same
/// normalization as Multivector.
class DiffForm {
public:
    using Components = std::map<IndexTuple, Poly>;

    DiffForm() = default;
    static DiffForm zero(const ContextPtr& ctx, int degree);
    static DiffForm from_poly(const Poly& p);
    /// The coordinate differential dx_i as a 1-form.
    static DiffForm basis_differential(const ContextPtr& ctx, int var_index);
    /// dx1 ^ dx2 ^ ... ^ dxn.
    static DiffForm volume(const ContextPtr& ctx);

    const ContextPtr& context() const { return ctx_; }
    int degree() const { return degree_; }
    const Components& components() const { return comps_; }
    bool is_zero() const { return comps_.empty(); }

    Poly coefficient(const IndexTuple& tuple) const;
    void add_term(IndexTuple tuple, const Poly& c);

    DiffForm operator+(const DiffForm& rhs) const;
    DiffForm operator-(const DiffForm& rhs) const;
    DiffForm operator-() const;
    DiffForm operator*(const Poly& p) const;

    bool operator==(const DiffForm& rhs) const;
    bool operator!=(const DiffForm& rhs) const { return !(*this == rhs); }

    std::string to_string() const;

private:
    DiffForm(ContextPtr ctx, int degree) : ctx_(std::move(ctx)), degree_(degree) {}

    ContextPtr ctx_;
    int degree_ = 0;
    Components comps_;
};

/// Exterior product; graded-commutative, wedge(P,Q) = (-1)^{pq} wedge(Q,P).
Multivector wedge(const Multivector& a, const Multivector& b);
DiffForm wedge(const DiffForm& a, const DiffForm& b);

/// k-fold exterior power of a degree-2 multivector; power(P, 0) = 1.
Multivector power(const Multivector& p, int k);

/// Interior contraction of a multivector into a form, filling the first
/// slots. Convention: for a decomposable X1 ^ ... ^ Xp the factors are
/// plugged in left to right, X1 first; so contracting d1 ^ d2 into
/// dx1 ^ dx2 ^ dx3 gives +dx3.
DiffForm contract_form_with_multivector(const Multivector& p, const DiffForm& omega);

/// Contraction of a 1-form into a multivector: i_alpha plugs the form
/// into the first slot (X_f = i_df(pi) lives here).
Multivector contract_oneform_into_multivector(const DiffForm& alpha, const Multivector& p);

/// Exterior derivative; d(d(omega)) = 0.
DiffForm exterior_derivative(const DiffForm& omega);
/// df of a function.
DiffForm differential(const Poly& f);

/// Schouten-Nijenhuis bracket, graded so that [X, f] = X(f), [X, Y] is the
/// Lie bracket of vector fields, [Z, P] = L_Z(P), and [pi, pi] = 0 is the
/// Jacobi identity of the bracket {f, g} = pi(df ^ dg). Computed through
/// the odd-variable representation (each d/dxi an odd symbol xi_i):
///   [P,Q] = sum_i (dP/dxi_i)(dQ/dx_i)
///           - (-1)^{(p-1)(q-1)} sum_i (dQ/dxi_i)(dP/dx_i)
/// where d/dxi_i is the right-sided odd derivative; the sign side is what
/// the calibration identities above pin down.
Multivector schouten_bracket(const Multivector& p, const Multivector& q);

/// Lie derivative along a vector field: schouten_bracket(x, p).
Multivector lie_derivative(const Multivector& x, const Multivector& p);

/// Divergence of a vector field for the standard chart volume.
Poly divergence(const Multivector& x);

}  // namespace poissonlab

#endif
