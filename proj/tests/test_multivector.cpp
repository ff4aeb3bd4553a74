#include <doctest.h>

#include "poissonlab/multivector.hpp"
#include "test_support.hpp"

using namespace poissonlab;
using namespace poissonlab::testing;

namespace {

Multivector d(const ContextPtr& ctx, int i) { return Multivector::basis_derivation(ctx, i); }

// test-local oracle: coordinate Lie bracket of vector fields,
// [X,Y]^j = sum_i X^i dY^j/dxi - Y^i dX^j/dxi
Multivector lie_bracket_oracle(const Multivector& x, const Multivector& y) {
    const ContextPtr& ctx = x.context();
    const int n = static_cast<int>(ctx->num_vars());
    auto comp = [&](const Multivector& v, int j) { return v.coefficient(IndexTuple{j}); };
    Multivector out = Multivector::zero(ctx, 1);
    for (int j = 0; j < n; ++j) {
        Poly acc = Poly::zero(ctx);
        for (int i = 0; i < n; ++i) {
            acc = acc + comp(x, i) * comp(y, j).derivative(i);
            acc = acc - comp(y, i) * comp(x, j).derivative(i);
        }
        if (!acc.is_zero()) out.add_term(IndexTuple{j}, acc);
    }
    return out;
}

// test-local oracle: {f, g} read directly off a bivector's coefficients
Poly bracket_oracle(const Multivector& b, const Poly& f, const Poly& g) {
    const ContextPtr& ctx = b.context();
    Poly acc = Poly::zero(ctx);
    for (const auto& [t, c] : b.components()) {
        int i = t[0], j = t[1];
        acc = acc + c * (f.derivative(i) * g.derivative(j) - f.derivative(j) * g.derivative(i));
    }
    return acc;
}

// sum over cyclic permutations of {f, {g, h}} via the direct oracle
Poly jacobiator_oracle(const Multivector& b, const Poly& f, const Poly& g, const Poly& h) {
    return bracket_oracle(b, f, bracket_oracle(b, g, h)) +
           bracket_oracle(b, g, bracket_oracle(b, h, f)) +
           bracket_oracle(b, h, bracket_oracle(b, f, g));
}

}  // namespace

TEST_CASE("wedge basics") {
    auto ctx = chart3();
    CHECK(wedge(d(ctx, 0), d(ctx, 0)).is_zero());
    CHECK(wedge(d(ctx, 1), d(ctx, 0)) == -wedge(d(ctx, 0), d(ctx, 1)));

    Multivector x1d1 = MV("x1*d1", ctx, 1);
    Multivector x2d2 = MV("x2*d2", ctx, 1);
    CHECK(wedge(x1d1, x2d2) == MV("x1*x2*d1^d2", ctx, 2));
}

TEST_CASE("wedge graded commutativity on random multivectors") {
    auto ctx = chart3();
    Rng rng(211);
    for (int round = 0; round < 30; ++round) {
        int p = rng.uniform(0, 2);
        int q = rng.uniform(0, 2);
        Multivector a = rng.multivector(ctx, p, 2);
        Multivector b = rng.multivector(ctx, q, 2);
        Multivector lhs = wedge(a, b);
        Multivector rhs = wedge(b, a);
        if ((p * q) % 2 != 0) rhs = -rhs;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("power of bivectors") {
    auto ctx = chart3();
    Multivector pi = example_bivector();
    CHECK(power(pi, 0) == Multivector::from_poly(P("1", example_chart())));
    CHECK(power(pi, 2).is_zero());  // Lambda^4 of a 3-chart vanishes

    auto ctx4 = chart4();
    // direct expansion: (d1^d2 + d3^d4)^2 = 2 d1^d2^d3^d4
    Multivector s = MV("d1^d2 + d3^d4", ctx4, 2);
    CHECK(power(s, 2) == MV("2*d1^d2^d3^d4", ctx4, 4));
}

TEST_CASE("contraction of multivectors into forms") {
    auto ctx = chart3();
    DiffForm vol = DiffForm::volume(ctx);

    // fixed slot convention: d1^d2 into dx1^dx2^dx3 gives +dx3
    Multivector d12 = MV("d1^d2", ctx, 2);
    DiffForm dx3 = DiffForm::basis_differential(ctx, 2);
    CHECK(contract_form_with_multivector(d12, vol) == dx3);

    // degree-0 contraction is multiplication
    Multivector f = Multivector::from_poly(P("x1 + 2", ctx));
    CHECK(contract_form_with_multivector(f, vol) == vol * P("x1 + 2", ctx));

    CHECK_THROWS_AS(
        contract_form_with_multivector(d12, DiffForm::basis_differential(ctx, 0)),
        DegreeMismatch);
}

TEST_CASE("contraction of df into the example bivector") {
    auto ctx = example_chart();
    Multivector pi = example_bivector();
    Multivector xf = contract_oneform_into_multivector(differential(P("x1", ctx)), pi);
    CHECK(xf == MV("c12*x1*x2*d2 + c13*x1*x3*d3", ctx, 1));
}

TEST_CASE("exterior derivative") {
    auto ctx4 = chart4();
    CHECK(differential(P("x1", ctx4)) == DiffForm::basis_differential(ctx4, 0));

    // termwise: d(x3 dx4 - x4 dx3) = 2 dx3^dx4
    DiffForm alpha = DiffForm::zero(ctx4, 1);
    alpha.add_term(IndexTuple{3}, P("x3", ctx4));
    alpha.add_term(IndexTuple{2}, -P("x4", ctx4));
    DiffForm expect = DiffForm::zero(ctx4, 2);
    expect.add_term(IndexTuple{2, 3}, P("2", ctx4));
    CHECK(exterior_derivative(alpha) == expect);

    Rng rng(97);
    for (int round = 0; round < 20; ++round) {
        Poly p = rng.poly(ctx4, 3);
        CHECK(exterior_derivative(differential(p)).is_zero());
    }
}

TEST_CASE("schouten bracket calibrations") {
    auto ctx = chart3();
    // [d1, x1] = 1
    Multivector lhs = schouten_bracket(d(ctx, 0), Multivector::from_poly(P("x1", ctx)));
    CHECK(lhs == Multivector::from_poly(P("1", ctx)));

    // classical Lie bracket: [x1 d2, x2 d1] = x1 d1 - x2 d2
    Multivector a = MV("x1*d2", ctx, 1);
    Multivector b = MV("x2*d1", ctx, 1);
    CHECK(schouten_bracket(a, b) == MV("x1*d1 - x2*d2", ctx, 1));
    CHECK(schouten_bracket(a, b) == lie_bracket_oracle(a, b));
}

TEST_CASE("the example bivector satisfies Jacobi symbolically") {
    Multivector pi = example_bivector();
    CHECK(schouten_bracket(pi, pi).is_zero());
}

TEST_CASE("lie bracket calibration on random vector fields") {
    auto ctx = chart3();
    Rng rng(301);
    for (int round = 0; round < 20; ++round) {
        Multivector x = rng.vector_field(ctx, 2);
        Multivector y = rng.vector_field(ctx, 2);
        CHECK(schouten_bracket(x, y) == lie_bracket_oracle(x, y));
    }
}

TEST_CASE("graded antisymmetry, Leibniz and Jacobi") {
    auto ctx = chart3();
    Rng rng(555);
    int rounds = 0;
    while (rounds < 60) {
        int p = rng.uniform(0, 2);
        int q = rng.uniform(0, 2);
        int r = rng.uniform(0, 2);
        Multivector P_ = rng.multivector(ctx, p, 2);
        Multivector Q_ = rng.multivector(ctx, q, 2);
        Multivector R_ = rng.multivector(ctx, r, 2);
        ++rounds;

        // antisymmetry: [P,Q] = -(-1)^{(p-1)(q-1)} [Q,P]
        {
            Multivector rhs = schouten_bracket(Q_, P_);
            if (((p - 1) * (q - 1)) % 2 == 0) rhs = -rhs;
            CHECK(schouten_bracket(P_, Q_) == rhs);
        }

        // Leibniz: [P, Q^R] = [P,Q]^R + (-1)^{(p-1)q} Q^[P,R]
        {
            Multivector lhs = schouten_bracket(P_, wedge(Q_, R_));
            Multivector second = wedge(Q_, schouten_bracket(P_, R_));
            if (((p - 1) * q) % 2 != 0) second = -second;
            CHECK(lhs == wedge(schouten_bracket(P_, Q_), R_) + second);
        }

        // Jacobi: [P,[Q,R]] = [[P,Q],R] + (-1)^{(p-1)(q-1)} [Q,[P,R]]
        {
            Multivector lhs = schouten_bracket(P_, schouten_bracket(Q_, R_));
            Multivector first = schouten_bracket(schouten_bracket(P_, Q_), R_);
            Multivector second = schouten_bracket(Q_, schouten_bracket(P_, R_));
            if (((p - 1) * (q - 1)) % 2 != 0) second = -second;
            CHECK(lhs == first + second);
        }
    }
}

TEST_CASE("[b,b] = 0 iff the coordinate Jacobi sums vanish") {
    auto ctx = chart3();
    Rng rng(777);
    int poisson_seen = 0, non_poisson_seen = 0;
    for (int round = 0; round < 40; ++round) {
        Multivector b = rng.multivector(ctx, 2, 2);
        bool schouten_zero = schouten_bracket(b, b).is_zero();
        bool jacobi_zero = true;
        for (int i = 0; i < 3 && jacobi_zero; ++i)
            for (int j = i + 1; j < 3 && jacobi_zero; ++j)
                for (int k = j + 1; k < 3 && jacobi_zero; ++k) {
                    Poly jac = jacobiator_oracle(b, Poly::variable(ctx, i),
                                                 Poly::variable(ctx, j),
                                                 Poly::variable(ctx, k));
                    jacobi_zero = jac.is_zero();
                }
        CHECK(schouten_zero == jacobi_zero);
        (schouten_zero ? poisson_seen : non_poisson_seen) += 1;
    }
    // both sides of the equivalence must actually occur in the sample
    CHECK(poisson_seen > 0);
    CHECK(non_poisson_seen > 0);
}

TEST_CASE("lie derivative") {
    auto ctx = example_chart();
    Multivector pi = example_bivector();

    // on functions it is the directional derivative
    CHECK(lie_derivative(d(ctx, 0), Multivector::from_poly(P("x1^2", ctx))) ==
          Multivector::from_poly(P("2*x1", ctx)));

    // Euler weight: quadratic coefficients on a bivector have weight zero
    Multivector euler = MV("x1*d1 + x2*d2 + x3*d3", ctx, 1);
    CHECK(lie_derivative(euler, pi).is_zero());

    // d1 is not a symmetry: [d1, pi] differentiates the coefficients
    CHECK(lie_derivative(d(ctx, 0), pi) == MV("c12*x2*d1^d2 + c13*x3*d1^d3", ctx, 2));
}

TEST_CASE("divergence") {
    auto ctx = chart3();
    CHECK(divergence(d(ctx, 0)).is_zero());
    CHECK(divergence(MV("x1*d1", ctx, 1)) == P("1", ctx));
    CHECK(divergence(MV("x1^2*d1 + x1*x2*d2", ctx, 1)) == P("3*x1", ctx));
}

TEST_CASE("zero multivectors compare equal across degrees") {
    auto ctx = chart3();
    CHECK(Multivector::zero(ctx, 1) == Multivector::zero(ctx, 2));
    CHECK(Multivector::zero(ctx, 0) == Multivector::from_poly(Poly::zero(ctx)));
}
