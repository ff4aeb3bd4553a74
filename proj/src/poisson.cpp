#include "poissonlab/poisson.hpp"

namespace poissonlab {

PoissonStructure make_poisson(const Multivector& b) {
    if (b.degree() != 2 && !b.is_zero())
        throw DegreeMismatch("Poisson structure requires a bivector");
    Multivector bb = schouten_bracket(b, b);
    if (!bb.is_zero()) throw JacobiFailure(std::move(bb));
    if (b.degree() != 2) {
        Multivector z = Multivector::zero(b.context(), 2);
        return PoissonStructure(std::move(z));
    }
    return PoissonStructure(b);
}

Poly PoissonStructure::matrix_entry(int i, int j) const {
    if (i == j) return Poly::zero(context());
    if (i < j) return pi_.coefficient(IndexTuple{i, j});
    return -pi_.coefficient(IndexTuple{j, i});
}

Multivector hamiltonian_vf(const PoissonStructure& p, const Poly& f) {
    require_same_context(p.context(), f.context(), "hamiltonian vector field");
    DiffForm df = differential(f);
    if (df.is_zero()) return Multivector::zero(p.context(), 1);
    return contract_oneform_into_multivector(df, p.bivector());
}

Poly bracket(const PoissonStructure& p, const Poly& f, const Poly& g) {
    return hamiltonian_vf(p, f).apply_to(g);
}

bool is_poisson_vf(const PoissonStructure& p, const Multivector& x) {
    if (x.degree() != 1 && !x.is_zero())
        throw DegreeMismatch("is_poisson_vf expects a vector field");
    if (x.is_zero()) return true;
    return lie_derivative(x, p.bivector()).is_zero();
}

bool is_casimir(const PoissonStructure& p, const Poly& f) {
    return hamiltonian_vf(p, f).is_zero();
}

std::vector<Multivector> symplectic_foliation_generators(const PoissonStructure& p) {
    std::vector<Multivector> gens;
    const ContextPtr& ctx = p.context();
    gens.reserve(ctx->num_vars());
    for (std::size_t i = 0; i < ctx->num_vars(); ++i)
        gens.push_back(hamiltonian_vf(p, Poly::variable(ctx, i)));
    return gens;
}

Multivector modular_vf(const PoissonStructure& p) {
    const ContextPtr& ctx = p.context();
    const int n = static_cast<int>(ctx->num_vars());
    Multivector z = Multivector::zero(ctx, 1);
    for (int j = 0; j < n; ++j) {
        Poly comp = Poly::zero(ctx);
        for (int i = 0; i < n; ++i) {
            if (i == j) continue;
            comp = comp + p.matrix_entry(i, j).derivative(i);
        }
        if (!comp.is_zero()) z.add_term(IndexTuple{j}, comp);
    }
    return z;
}

Multivector modular_vf_via_connection_formula(const PoissonStructure& p) {
    const ContextPtr& ctx = p.context();
    const int n = static_cast<int>(ctx->num_vars());
    DiffForm vol = DiffForm::volume(ctx);
    DiffForm mu = exterior_derivative(contract_form_with_multivector(p.bivector(), vol));
    IndexTuple full(n);
    for (int i = 0; i < n; ++i) full[i] = i;
    Multivector z = Multivector::zero(ctx, 1);
    for (int j = 0; j < n; ++j) {
        DiffForm top = wedge(DiffForm::basis_differential(ctx, j), mu);
        Poly comp = -top.coefficient(full);
        if (!comp.is_zero()) z.add_term(IndexTuple{j}, comp);
    }
    return z;
}

int generic_rank(const PoissonStructure& p) {
    int r = 0;
    Multivector acc = Multivector::from_poly(Poly::constant(p.context(), Rational(1)));
    while (true) {
        acc = wedge(acc, p.bivector());
        if (acc.is_zero()) break;
        ++r;
    }
    return 2 * r;
}

bool is_generically_symplectic(const PoissonStructure& p) {
    const std::size_t n = p.context()->num_vars();
    return n % 2 == 0 && generic_rank(p) == static_cast<int>(n);
}

Poly pfaffian(const PoissonStructure& p) {
    const ContextPtr& ctx = p.context();
    const std::size_t n = ctx->num_vars();
    if (n % 2 != 0) throw DegreeMismatch("Pfaffian requires an even-dimensional chart");
    Multivector top = power(p.bivector(), static_cast<int>(n / 2));
    IndexTuple full(n);
    for (std::size_t i = 0; i < n; ++i) full[i] = static_cast<int>(i);
    return top.coefficient(full);
}

LogSymplecticStatus log_symplectic_status(const PoissonStructure& p) {
    if (!is_generically_symplectic(p)) return LogSymplecticStatus::not_generically_symplectic;
    Poly pf = pfaffian(p);
    if (!pf.is_parameter_free())
        throw UnspecializedParameter("log-symplectic check requires specialized parameters");
    if (pf.is_constant()) return LogSymplecticStatus::empty_divisor;
    return squarefree_check(pf) ? LogSymplecticStatus::log_symplectic
                                : LogSymplecticStatus::non_reduced_divisor;
}

bool is_log_symplectic(const PoissonStructure& p) {
    return log_symplectic_status(p) == LogSymplecticStatus::log_symplectic;
}

StructureConstants::StructureConstants(std::size_t dim)
    : dim_(dim), c_(dim * dim * dim, Rational(0)) {}

const Rational& StructureConstants::at(std::size_t i, std::size_t j, std::size_t k) const {
    if (i >= dim_ || j >= dim_ || k >= dim_)
        throw IndexOutOfRange("structure constant index out of range");
    return c_[(i * dim_ + j) * dim_ + k];
}

void StructureConstants::set(std::size_t i, std::size_t j, std::size_t k,
                             const Rational& value) {
    if (i >= dim_ || j >= dim_ || k >= dim_)
        throw IndexOutOfRange("structure constant index out of range");
    if (i == j && value != 0)
        throw Error("antisymmetry forces c[i][i][k] = 0");
    c_[(i * dim_ + j) * dim_ + k] = value;
    c_[(j * dim_ + i) * dim_ + k] = -value;
}

bool StructureConstants::jacobi_holds() const {
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
            for (std::size_t k = 0; k < dim_; ++k)
                for (std::size_t l = 0; l < dim_; ++l) {
                    Rational sum(0);
                    for (std::size_t m = 0; m < dim_; ++m) {
                        sum += at(i, j, m) * at(m, k, l);
                        sum += at(j, k, m) * at(m, i, l);
                        sum += at(k, i, m) * at(m, j, l);
                    }
                    if (sum != 0) return false;
                }
    return true;
}

PoissonStructure lie_poisson(const ContextPtr& ctx, const StructureConstants& sc) {
    if (ctx->num_vars() != sc.dim())
        throw LengthMismatch("chart dimension must equal the Lie algebra dimension");
    Multivector pi = Multivector::zero(ctx, 2);
    for (std::size_t i = 0; i < sc.dim(); ++i) {
        for (std::size_t j = i + 1; j < sc.dim(); ++j) {
            Poly entry = Poly::zero(ctx);
            for (std::size_t k = 0; k < sc.dim(); ++k) {
                const Rational& c = sc.at(i, j, k);
                if (c != 0) entry = entry + Poly::variable(ctx, k) * c;
            }
            if (!entry.is_zero())
                pi.add_term(IndexTuple{static_cast<int>(i), static_cast<int>(j)}, entry);
        }
    }
    const bool tensor_ok = sc.jacobi_holds();
    Multivector bb = schouten_bracket(pi, pi);
    if (tensor_ok != bb.is_zero())
        throw Error("internal inconsistency: Lie-Jacobi tensor and [pi,pi] disagree");
    if (!tensor_ok) throw JacobiFailure(std::move(bb));
    return make_poisson(pi);
}

Multivector euler_field(const ContextPtr& ctx) {
    Multivector e = Multivector::zero(ctx, 1);
    for (std::size_t i = 0; i < ctx->num_vars(); ++i)
        e.add_term(IndexTuple{static_cast<int>(i)}, Poly::variable(ctx, i));
    return e;
}

DiffForm bivector_to_twisted_oneform(const Multivector& b) {
    const ContextPtr& ctx = b.context();
    if (ctx->num_vars() != 4)
        throw DegreeMismatch("twisted 1-form correspondence requires a 4-variable chart");
    if (b.degree() != 2 && !b.is_zero())
        throw DegreeMismatch("twisted 1-form correspondence expects a bivector");
    int common = -1;
    for (const auto& [t, c] : b.components()) {
        if (!c.is_homogeneous()) throw NonHomogeneous("bivector coefficients must be homogeneous");
        int d = c.degree();
        if (common < 0)
            common = d;
        else if (d != common)
            throw NonHomogeneous("bivector coefficients must share one degree");
    }
    if (b.is_zero()) return DiffForm::zero(ctx, 1);
    DiffForm inner = contract_form_with_multivector(euler_field(ctx), DiffForm::volume(ctx));
    return contract_form_with_multivector(b, inner);
}

}  // namespace poissonlab
