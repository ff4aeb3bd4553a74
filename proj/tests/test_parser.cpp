#include <doctest.h>

#include "poissonlab/parse.hpp"
#include "test_support.hpp"

using namespace poissonlab;
using namespace poissonlab::testing;

TEST_CASE("expression parsing basics") {
    auto ctx = example_chart();

    CHECK(std::holds_alternative<Poly>(parse_expression("x1 + 2/3*x2^2", ctx)));
    CHECK(P("(x1 + x2)*(x1 - x2)", ctx) == P("x1^2 - x2^2", ctx));
    CHECK(P("  x1  +  x2 # comment", ctx) == P("x1+x2", ctx));

    Multivector pi = example_bivector();
    CHECK(pi.degree() == 2);
    CHECK(pi.coefficient(IndexTuple{0, 1}) == P("c12*x1*x2", ctx));

    // `0` is accepted wherever a multivector is expected
    CHECK(parse_multivector("0", ctx, 2).is_zero());

    // wedge order folds into the sign
    CHECK(MV("x1*d2^d1", ctx, 2) == -MV("x1*d1^d2", ctx, 2));
}

TEST_CASE("positioned syntax errors") {
    auto ctx = example_chart();

    SUBCASE("unbalanced parenthesis") {
        try {
            parse_expression("x1 + (x2", ctx);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == 1);
            CHECK(e.column == 9);
            REQUIRE_FALSE(e.expected.empty());
        }
    }

    SUBCASE("operator at end") {
        CHECK_THROWS_AS(parse_expression("x1 *", ctx), ParseError);
        CHECK_THROWS_AS(parse_expression("x1 +", ctx), ParseError);
        CHECK_THROWS_AS(parse_expression("", ctx), ParseError);
    }

    SUBCASE("exponent must be an integer") {
        CHECK_THROWS_AS(parse_expression("x1^x2", ctx), ParseError);
    }

    SUBCASE("unexpected character") {
        CHECK_THROWS_AS(parse_expression("x1 $ x2", ctx), ParseError);
    }

    SUBCASE("line and column are tracked through newlines") {
        try {
            parse_expression("x1 +\n  )", ctx);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == 2);
            CHECK(e.column == 3);
        }
    }
}

TEST_CASE("semantic errors") {
    auto ctx = example_chart();

    SUBCASE("undeclared symbol") {
        CHECK_THROWS_AS(parse_expression("y1 + x1", ctx), SemanticError);
    }

    SUBCASE("repeated derivation index is a hard error") {
        CHECK_THROWS_AS(parse_expression("x1 * d1^d1", ctx), SemanticError);
        CHECK_THROWS_AS(parse_expression("x1 * d1^d2 * d1", ctx), SemanticError);
    }

    SUBCASE("derivation index out of range") {
        CHECK_THROWS_AS(parse_expression("x1 * d7", ctx), SemanticError);
    }

    SUBCASE("mixed degrees") {
        CHECK_THROWS_AS(parse_expression("x1*d1 + x2", ctx), SemanticError);
        CHECK_THROWS_AS(parse_expression("x1*d1 + x2*d1^d2", ctx), SemanticError);
    }

    SUBCASE("derivations and differentials cannot mix") {
        CHECK_THROWS_AS(parse_expression("x1*d1 + x2*dx1", ctx), SemanticError);
        CHECK_THROWS_AS(parse_expression("x1*d1^dx2", ctx), ParseError);
    }
}

TEST_CASE("print-parse round trips") {
    auto ctx = example_chart();
    Rng rng(401);

    SUBCASE("polynomials") {
        for (int round = 0; round < 60; ++round) {
            Poly p = rng.poly(ctx, 3, 5, /*use_params=*/true);
            CHECK(P(p.to_string(), ctx) == p);
        }
    }

    SUBCASE("multivectors of every degree") {
        for (int round = 0; round < 60; ++round) {
            int degree = rng.uniform(1, 3);
            Multivector m = rng.multivector(ctx, degree, 2);
            CHECK(parse_multivector(m.to_string(), ctx, m.is_zero() ? degree : m.degree()) == m);
        }
    }

    SUBCASE("forms print with dx and parse back") {
        DiffForm alpha = DiffForm::zero(chart4(), 1);
        alpha.add_term(IndexTuple{3}, P("x3", chart4()));
        alpha.add_term(IndexTuple{2}, -P("x4", chart4()));
        CHECK(alpha.to_string() == "-x4*dx3 + x3*dx4");
        CHECK(parse_diff_form(alpha.to_string(), chart4(), 1) == alpha);
    }

    SUBCASE("printing is stable: print(parse(print(v))) == print(v)") {
        for (int round = 0; round < 30; ++round) {
            Poly p = rng.poly(ctx, 3, 5, true);
            CHECK(P(p.to_string(), ctx).to_string() == p.to_string());
        }
    }
}

TEST_CASE("problem file parsing") {
    const std::string text =
        "# worked example\n"
        "vars: x1 x2 x3\n"
        "params: c12 c13 c23\n"
        "bivector: c12*x1*x2 * d1^d2 + c13*x1*x3 * d1^d3 + c23*x2*x3 * d2^d3\n"
        "specialize: c12=1 c13=2 c23=3\n"
        "subvariety L12: x1, x2\n"
        "subvariety L13: x1, x3\n"
        "connection Zmod: modular\n"
        "connection Zero: 0\n";
    ProblemFile pf = parse_problem_file(text);
    CHECK(pf.vars == std::vector<std::string>{"x1", "x2", "x3"});
    CHECK(pf.params == std::vector<std::string>{"c12", "c13", "c23"});
    CHECK(pf.bivector == example_bivector());
    CHECK(pf.specialization.at("c23") == Rational(3));
    REQUIRE(pf.subvarieties.size() == 2);
    CHECK(pf.subvarieties[0].name == "L12");
    CHECK(pf.subvarieties[0].generators[1] == P("x2", pf.context));
    REQUIRE(pf.connection_fields.size() == 2);
    CHECK(pf.connection_fields[0].is_modular);
    CHECK(pf.connection_fields[1].field.is_zero());
}

TEST_CASE("problem file validation") {
    SUBCASE("missing sections") {
        CHECK_THROWS_AS(parse_problem_file("params: a\nbivector: 0\n"), SemanticError);
        CHECK_THROWS_AS(parse_problem_file("vars: x1 x2\n"), SemanticError);
    }

    SUBCASE("duplicate symbols") {
        CHECK_THROWS_AS(parse_problem_file("vars: x1 x1\nbivector: 0\n"), SemanticError);
        CHECK_THROWS_AS(parse_problem_file("vars: x1\nparams: x1\nbivector: 0\n"),
                        SemanticError);
    }

    SUBCASE("reserved names") {
        CHECK_THROWS_AS(parse_problem_file("vars: d1 d2\nbivector: 0\n"), SemanticError);
    }

    SUBCASE("bivector degree is checked") {
        CHECK_THROWS_AS(parse_problem_file("vars: x1 x2\nbivector: x1*d1\n"), SemanticError);
    }

    SUBCASE("undeclared parameter in specialize") {
        CHECK_THROWS_AS(
            parse_problem_file("vars: x1 x2\nbivector: 0\nspecialize: q=3\n"),
            SemanticError);
    }

    SUBCASE("generic keyword") {
        ProblemFile pf = parse_problem_file(
            "vars: x1 x2\nparams: a\nbivector: a*x1*d1^d2\nspecialize: generic\n");
        CHECK(pf.generic_specialization);
        CHECK(pf.specialization.empty());
    }

    SUBCASE("unknown section") {
        CHECK_THROWS_AS(parse_problem_file("vars: x1\nbivector: 0\nfrobnicate: 1\n"),
                        SemanticError);
    }

    SUBCASE("connection degree is checked") {
        CHECK_THROWS_AS(
            parse_problem_file("vars: x1 x2\nbivector: 0\nconnection Z: x1*d1^d2\n"),
            SemanticError);
    }
}
