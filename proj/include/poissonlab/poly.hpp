#ifndef POISSONLAB_POLY_HPP
#define POISSONLAB_POLY_HPP

#include <map>
#include <string>
#include <vector>

#include "poissonlab/context.hpp"
#include "poissonlab/rational.hpp"

namespace poissonlab {

/// Exponent vector: one slot per chart variable, then one per parameter.
using ExpVec = std::vector<int>;

/// Total order on exponent vectors: graded reverse lexicographic on the
/// chart-variable slots (the Groebner order), parameters broken by plain
/// lexicographic comparison. Parameters never influence leading terms of
/// the parameter-free polynomials that enter ideal computations.
struct TermOrder {
    std::size_t num_vars = 0;

    bool operator()(const ExpVec& a, const ExpVec& b) const;
};

/// Returns true when a is divisible by b (componentwise over all slots).
bool monomial_divides(const ExpVec& b, const ExpVec& a);
ExpVec monomial_quotient(const ExpVec& a, const ExpVec& b);
ExpVec monomial_lcm(const ExpVec& a, const ExpVec& b);

/// Sparse multivariate polynomial with exact rational coefficients over a
/// fixed VarContext. Zero coefficients are never stored; equality is term
/// map equality. Values are immutable in spirit: every operation returns a
/// fresh Poly.
class Poly {
public:
    using TermMap = std::map<ExpVec, Rational, TermOrder>;

    Poly() = default;
    static Poly zero(const ContextPtr& ctx);
    static Poly constant(const ContextPtr& ctx, const Rational& c);
    static Poly variable(const ContextPtr& ctx, std::size_t var_index);
    static Poly parameter(const ContextPtr& ctx, std::size_t param_index);
    static Poly monomial(const ContextPtr& ctx, ExpVec exps, const Rational& c);

    const ContextPtr& context() const { return ctx_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_parameter_free() const;
    /// Constant term value (the whole value if is_constant()).
    Rational constant_value() const;

    /// Leading term under the fixed order; polynomial must be nonzero.
    const TermMap::value_type& leading_term() const;

    /// Total degree in the chart variables only; -1 for the zero polynomial.
    int degree() const;
    /// True if every term has the same chart-variable total degree.
    bool is_homogeneous() const;

    Poly operator-() const;
    Poly operator+(const Poly& rhs) const;
    Poly operator-(const Poly& rhs) const;
    Poly operator*(const Poly& rhs) const;
    Poly operator*(const Rational& c) const;
    bool operator==(const Poly& rhs) const;
    bool operator!=(const Poly& rhs) const { return !(*this == rhs); }

    Poly pow(int exponent) const;

    /// Formal partial derivative with respect to chart variable var_index
    /// (0-based); parameters are constants.
    Poly derivative(std::size_t var_index) const;

    /// Substitutes rational values for parameters. With require_all set,
    /// every parameter occurring in the polynomial must be covered;
    /// otherwise uncovered parameters remain symbolic.
    Poly specialize(const std::map<std::string, Rational>& values,
                    bool require_all = true) const;

    std::string to_string() const;

private:
    explicit Poly(ContextPtr ctx);
    void add_term(const ExpVec& e, const Rational& c);

    ContextPtr ctx_;
    TermMap terms_;
};

inline Poly operator*(const Rational& c, const Poly& p) { return p * c; }

/// Exact gcd in Q[x1..xn, params] (parameters are treated as ordinary
/// symbols). The result is the canonical associate: integer-primitive
/// with positive leading coefficient.
Poly poly_gcd(const Poly& a, const Poly& b);

/// Characteristic-zero criterion: p is squarefree iff
/// gcd(p, dp/dx1, ..., dp/dxn) is constant. Requires p nonzero and
/// parameter-free.
bool squarefree_check(const Poly& p);

/// Element of the free module O^n used for foliation membership.
using VectorOfPolys = std::vector<Poly>;

}  // namespace poissonlab

#endif
