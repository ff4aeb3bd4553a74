#ifndef POISSONLAB_POISSON_HPP
#define POISSONLAB_POISSON_HPP

#include <optional>
#include <string>
#include <vector>

#include "poissonlab/multivector.hpp"

namespace poissonlab {

/// Thrown when a candidate bivector fails the Jacobi identity; carries the
/// nonzero trivector [b, b].
struct JacobiFailure : Error {
    Multivector obstruction;
    explicit JacobiFailure(Multivector obstruction_)
        : Error("Jacobi identity fails: [pi, pi] = " + obstruction_.to_string()),
          obstruction(std::move(obstruction_)) {}
};

/// A bivector with [pi, pi] = 0, verified symbolically in the parameters
/// at construction.
class PoissonStructure {
public:
    const Multivector& bivector() const { return pi_; }
    const ContextPtr& context() const { return pi_.context(); }
    bool jacobi_verified() const { return true; }

    /// Entry pi~(i, j) of the antisymmetric coefficient matrix,
    /// pi~(i, j) = coefficient of di ^ dj for i < j.
    Poly matrix_entry(int i, int j) const;

private:
    explicit PoissonStructure(Multivector pi) : pi_(std::move(pi)) {}
    Multivector pi_;

    friend PoissonStructure make_poisson(const Multivector& b);
};

/// Verifies [b, b] = 0 symbolically and wraps the bivector. Throws
/// JacobiFailure otherwise.
PoissonStructure make_poisson(const Multivector& b);

/// {f, g} = pi(df ^ dg); equals X_f(g).
Poly bracket(const PoissonStructure& p, const Poly& f, const Poly& g);

/// X_f = i_df(pi).
Multivector hamiltonian_vf(const PoissonStructure& p, const Poly& f);

/// True iff L_X(pi) = 0 symbolically.
bool is_poisson_vf(const PoissonStructure& p, const Multivector& x);

/// True iff X_f = 0.
bool is_casimir(const PoissonStructure& p, const Poly& f);

/// (X_{x1}, ..., X_{xn}).
std::vector<Multivector> symplectic_foliation_generators(const PoissonStructure& p);

/// Modular vector field for the standard chart volume, components
/// Z^j = sum_i d(pi~(i,j))/dx_i. The sign matches the connection field of
/// the canonical module in this library's conventions; note that
/// Z(f) = -div(X_f).
Multivector modular_vf(const PoissonStructure& p);

/// Connection field of the canonical module computed through the form-side
/// formula alpha(Z) vol = -alpha ^ d(i_pi(vol)); cross-check for
/// modular_vf, with which it agrees identically.
Multivector modular_vf_via_connection_formula(const PoissonStructure& p);

/// 2r where pi^r != 0 and pi^{r+1} = 0 as symbolic multivectors.
int generic_rank(const PoissonStructure& p);

bool is_generically_symplectic(const PoissonStructure& p);

/// Top coefficient of pi^(n/2) (zero polynomial when the rank is
/// deficient); only defined for even-dimensional charts.
Poly pfaffian(const PoissonStructure& p);

enum class LogSymplecticStatus {
    not_generically_symplectic,
    empty_divisor,       // Pfaffian is a nonzero constant
    log_symplectic,      // squarefree nonconstant Pfaffian
    non_reduced_divisor  // Pfaffian has a repeated factor
};

/// Requires a parameter-free structure (specialize first).
LogSymplecticStatus log_symplectic_status(const PoissonStructure& p);
bool is_log_symplectic(const PoissonStructure& p);

/// Structure constants of a finite-dimensional Lie algebra, antisymmetric
/// in the first two indices.
class StructureConstants {
public:
    explicit StructureConstants(std::size_t dim);

    std::size_t dim() const { return dim_; }
    const Rational& at(std::size_t i, std::size_t j, std::size_t k) const;
    /// Sets c[i][j][k] and c[j][i][k] = -c[i][j][k].
    void set(std::size_t i, std::size_t j, std::size_t k, const Rational& value);

    /// Lie-Jacobi tensor identity
    /// sum_m c[i][j][m] c[m][k][l] + c[j][k][m] c[m][i][l] + c[k][i][m] c[m][j][l] = 0.
    bool jacobi_holds() const;

private:
    std::size_t dim_;
    std::vector<Rational> c_;
};

/// Kostant-Souriau linear structure on the dual of the Lie algebra:
/// pi = sum_{i<j} (sum_k c[i][j][k] x_k) di ^ dj. The Lie-Jacobi tensor
/// identity and [pi, pi] = 0 are both checked and always agree; failure
/// raises JacobiFailure.
PoissonStructure lie_poisson(const ContextPtr& ctx, const StructureConstants& sc);

/// Euler field sum_i x_i d_i.
Multivector euler_field(const ContextPtr& ctx);

/// For a bivector with homogeneous coefficients of one common degree on a
/// 4-variable chart: alpha = i_b(i_E(vol)), the twisted 1-form of the
/// projective correspondence. Satisfies i_E(alpha) = 0; integrability
/// alpha ^ d(alpha) = 0 tracks the Jacobi identity on the examples
/// exercised in the test suite (see README notes on conventions).
DiffForm bivector_to_twisted_oneform(const Multivector& b);

}  // namespace poissonlab

#endif
