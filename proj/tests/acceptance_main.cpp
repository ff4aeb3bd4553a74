// Acceptance suite: one pass/fail line per criterion, nonzero exit when
// any criterion fails. Criterion 10 drives the installed CLI binary
// end-to-end; pass --cli, --data and --golden (the CMake test target does).

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "poissonlab/parse.hpp"
#include "poissonlab/report.hpp"
#include "poissonlab/residues.hpp"

using namespace poissonlab;

namespace {

struct Failure : std::runtime_error {
    explicit Failure(const std::string& msg) : std::runtime_error(msg) {}
};

#define ACC_CHECK(cond)                                                       \
    do {                                                                      \
        if (!(cond)) throw Failure("check failed: " #cond);                   \
    } while (0)

int g_failures = 0;

void run_criterion(int id, const std::string& label, double limit_seconds,
                   const std::function<void()>& body) {
    auto start = std::chrono::steady_clock::now();
    try {
        body();
        double elapsed = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
        std::printf("[PASS] criterion %2d: %s (%.2fs, limit %.0fs)\n", id, label.c_str(),
                    elapsed, limit_seconds);
        if (elapsed >= limit_seconds) {
            std::printf("[FAIL] criterion %2d: exceeded the %.0fs runtime limit\n", id,
                        limit_seconds);
            ++g_failures;
        }
    } catch (const std::exception& e) {
        std::printf("[FAIL] criterion %2d: %s: %s\n", id, label.c_str(), e.what());
        ++g_failures;
    }
}

ContextPtr example_chart() {
    static ContextPtr ctx = VarContext::make({"x1", "x2", "x3"}, {"c12", "c13", "c23"});
    return ctx;
}

Multivector example_bivector() {
    return parse_multivector(
        "c12*x1*x2 * d1^d2 + c13*x1*x3 * d1^d3 + c23*x2*x3 * d2^d3", example_chart(), 2);
}

SpecMap example_spec() {
    return SpecMap{{"c12", Rational(1)}, {"c13", Rational(2)}, {"c23", Rational(3)}};
}

Poly P(const std::string& text, const ContextPtr& ctx) { return parse_poly(text, ctx); }

Multivector MV(const std::string& text, const ContextPtr& ctx, int degree) {
    return parse_multivector(text, ctx, degree);
}

// ---- small random generators (deterministic seeds) ----

struct Rng {
    std::mt19937_64 engine;
    explicit Rng(std::uint64_t seed) : engine(seed) {}
    int uniform(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(engine);
    }
    Rational rational() { return Rational(uniform(-4, 4)); }
    Poly poly(const ContextPtr& ctx, int max_degree, int max_terms = 4) {
        Poly acc = Poly::zero(ctx);
        for (int t = uniform(0, max_terms); t > 0; --t) {
            ExpVec e(ctx->num_slots(), 0);
            for (int d = uniform(0, max_degree); d > 0; --d)
                e[uniform(0, static_cast<int>(ctx->num_vars()) - 1)] += 1;
            acc = acc + Poly::monomial(ctx, e, rational());
        }
        return acc;
    }
    Multivector multivector(const ContextPtr& ctx, int degree, int coeff_degree) {
        Multivector m = Multivector::zero(ctx, degree);
        const int n = static_cast<int>(ctx->num_vars());
        if (degree > n) return m;
        for (int t = uniform(1, 3); t > 0; --t) {
            std::vector<int> all(n);
            for (int i = 0; i < n; ++i) all[i] = i;
            std::shuffle(all.begin(), all.end(), engine);
            std::vector<int> tuple(all.begin(), all.begin() + degree);
            std::sort(tuple.begin(), tuple.end());
            m.add_term(tuple, poly(ctx, coeff_degree, 2));
        }
        return m;
    }
};

// coordinate Lie bracket, independent of the Schouten path
Multivector lie_oracle(const Multivector& x, const Multivector& y) {
    const ContextPtr& ctx = x.context();
    const int n = static_cast<int>(ctx->num_vars());
    Multivector out = Multivector::zero(ctx, 1);
    for (int j = 0; j < n; ++j) {
        Poly acc = Poly::zero(ctx);
        for (int i = 0; i < n; ++i) {
            acc = acc + x.coefficient({i}) * y.coefficient({j}).derivative(i);
            acc = acc - y.coefficient({i}) * x.coefficient({j}).derivative(i);
        }
        if (!acc.is_zero()) out.add_term({j}, acc);
    }
    return out;
}

// ---- criterion 10 helpers ----

std::string g_cli, g_data, g_golden;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_cli(const std::string& args, std::string* stdout_text = nullptr) {
    std::string out_path = "acceptance_cli_output.tmp";
    std::string command = g_cli + " " + args + " > " + out_path + " 2>/dev/null";
    int status = std::system(command.c_str());
    if (stdout_text) *stdout_text = read_file(out_path);
    std::remove(out_path.c_str());
    if (status < 0) throw Failure("failed to launch the CLI");
    return WEXITSTATUS(status);
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; i += 2) {
        std::string flag = argv[i];
        if (flag == "--cli") g_cli = argv[i + 1];
        if (flag == "--data") g_data = argv[i + 1];
        if (flag == "--golden") g_golden = argv[i + 1];
    }

    run_criterion(1, "worked-example modular field and foliation generators (symbolic)", 1.0, [] {
        auto ctx = example_chart();
        PoissonStructure p = make_poisson(example_bivector());
        ACC_CHECK(modular_vf(p) ==
                  MV("(-c12*x1 - c13*x1)*d1 + (c12*x2 - c23*x2)*d2 + (c13*x3 + c23*x3)*d3",
                     ctx, 1));
        auto gens = symplectic_foliation_generators(p);
        ACC_CHECK(gens.size() == 3);
        ACC_CHECK(gens[0] == MV("c12*x1*x2*d2 + c13*x1*x3*d3", ctx, 1));
        ACC_CHECK(gens[1] == MV("-c12*x1*x2*d1 + c23*x2*x3*d3", ctx, 1));
        ACC_CHECK(gens[2] == MV("-c13*x1*x3*d1 - c23*x2*x3*d2", ctx, 1));
    });

    run_criterion(2, "residues of the canonical module on the three lines", 5.0, [] {
        auto ctx = example_chart();
        PoissonStructure p = make_poisson(example_bivector());
        LineModule canon = canonical_module(p);
        auto line = [&](const char* a, const char* b, SpecMap spec = {}) {
            return IdealGB(ctx, {P(a, ctx), P(b, ctx)}, std::move(spec));
        };
        // symbolic
        ACC_CHECK(residue_restricted(canon, 0, line("x1", "x2")) ==
                  MV("(c13*x3 + c23*x3)*d3", ctx, 1));
        ACC_CHECK(residue_restricted(canon, 0, line("x1", "x3")) ==
                  MV("(c12*x2 - c23*x2)*d2", ctx, 1));
        ACC_CHECK(residue_restricted(canon, 0, line("x2", "x3")) ==
                  MV("(-c12*x1 - c13*x1)*d1", ctx, 1));
        // specialized at c = (1, 2, 3)
        SpecMap c = example_spec();
        ACC_CHECK(residue_restricted(canon, 0, line("x1", "x2", c)) == MV("5*x3*d3", ctx, 1));
        ACC_CHECK(residue_restricted(canon, 0, line("x1", "x3", c)) == MV("-2*x2*d2", ctx, 1));
        ACC_CHECK(residue_restricted(canon, 0, line("x2", "x3", c)) == MV("-3*x1*d1", ctx, 1));
        // k = 1 vanishes identically, symbolically
        ACC_CHECK(residue(canon, 1).value.is_zero());
    });

    run_criterion(3, "degeneracy locus D0: dimension, Poisson ideal, tangency, bound", 5.0, [] {
        PoissonStructure p = make_poisson(example_bivector());
        DegeneracyStratum s = degeneracy_ideal(p, 0, example_spec());
        ACC_CHECK(s.dimension == 1);
        ACC_CHECK(is_poisson_ideal(p, s.ideal));
        ACC_CHECK(is_tangent_vf(modular_vf(p), s.ideal));
        BondalReport r = bondal_report(p, example_spec());
        ACC_CHECK(r.rows.size() == 1);
        ACC_CHECK(r.rows[0].bound == 1);
        ACC_CHECK(r.rows[0].verdict == BondalVerdict::meets_bound);
    });

    run_criterion(4, "Lie-Poisson construction agrees with the Lie-Jacobi tensor", 10.0, [] {
        Rng rng(1001);
        int built = 0, rejected = 0, rounds = 0;
        while (rounds < 24) {
            ++rounds;
            std::size_t dim = static_cast<std::size_t>(rng.uniform(2, 4));
            std::vector<std::string> names;
            for (std::size_t i = 0; i < dim; ++i) names.push_back("x" + std::to_string(i + 1));
            auto ctx = VarContext::make(names);
            StructureConstants sc(dim);
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = i + 1; j < dim; ++j)
                    for (std::size_t k = 0; k < dim; ++k)
                        sc.set(i, j, k, Rational(rng.uniform(-2, 2)));
            bool tensor = sc.jacobi_holds();
            bool constructed = false;
            Multivector obstruction;
            try {
                PoissonStructure p = lie_poisson(ctx, sc);
                constructed = true;
                ACC_CHECK(schouten_bracket(p.bivector(), p.bivector()).is_zero());
            } catch (const JacobiFailure& e) {
                obstruction = e.obstruction;
            }
            ACC_CHECK(constructed == tensor);
            if (!constructed) ACC_CHECK(!obstruction.is_zero());
            (constructed ? built : rejected) += 1;
        }
        ACC_CHECK(rounds >= 20);
        ACC_CHECK(built > 0);
        ACC_CHECK(rejected > 0);

        // sl(2): unimodular with the quadratic Casimir
        auto ctx3 = VarContext::make({"x1", "x2", "x3"});
        StructureConstants sl2(3);
        sl2.set(0, 1, 2, Rational(1));
        sl2.set(2, 0, 0, Rational(2));
        sl2.set(2, 1, 1, Rational(-2));
        PoissonStructure p = lie_poisson(ctx3, sl2);
        ACC_CHECK(modular_vf(p).is_zero());
        ACC_CHECK(is_casimir(p, P("x3^2 + 4*x1*x2", ctx3)));
    });

    run_criterion(5, "Schouten bracket: antisymmetry, Leibniz, Jacobi, Lie calibration", 30.0, [] {
        auto ctx = VarContext::make({"x1", "x2", "x3"});
        Rng rng(2002);
        int multivectors_used = 0;
        for (int round = 0; round < 20; ++round) {
            int dp = rng.uniform(0, 2), dq = rng.uniform(0, 2), dr = rng.uniform(0, 2);
            Multivector A = rng.multivector(ctx, dp, 2);
            Multivector B = rng.multivector(ctx, dq, 2);
            Multivector C = rng.multivector(ctx, dr, 2);
            multivectors_used += 3;

            Multivector anti = schouten_bracket(B, A);
            if (((dp - 1) * (dq - 1)) % 2 == 0) anti = -anti;
            ACC_CHECK(schouten_bracket(A, B) == anti);

            Multivector leib2 = wedge(B, schouten_bracket(A, C));
            if (((dp - 1) * dq) % 2 != 0) leib2 = -leib2;
            ACC_CHECK(schouten_bracket(A, wedge(B, C)) ==
                      wedge(schouten_bracket(A, B), C) + leib2);

            Multivector jac2 = schouten_bracket(B, schouten_bracket(A, C));
            if (((dp - 1) * (dq - 1)) % 2 != 0) jac2 = -jac2;
            ACC_CHECK(schouten_bracket(A, schouten_bracket(B, C)) ==
                      schouten_bracket(schouten_bracket(A, B), C) + jac2);
        }
        for (int round = 0; round < 20; ++round) {
            Multivector x = rng.multivector(ctx, 1, 2);
            Multivector y = rng.multivector(ctx, 1, 2);
            multivectors_used += 2;
            ACC_CHECK(schouten_bracket(x, y) == lie_oracle(x, y));
        }
        ACC_CHECK(multivectors_used >= 50);
    });

    run_criterion(6, "residue gauge invariance at k = 0, 1", 10.0, [] {
        auto ctx = example_chart();
        PoissonStructure p = make_poisson(example_bivector());
        LineModule canon = canonical_module(p);
        SpecMap c = example_spec();
        Rng rng(3003);
        for (int round = 0; round < 10; ++round) {
            Poly f = rng.poly(ctx, 3);
            LineModule shifted =
                make_line_module(p, modular_vf(p) + hamiltonian_vf(p, f), "shifted");
            for (int k = 0; k <= 1; ++k) {
                ACC_CHECK(residue(shifted, k, c).value == residue(canon, k, c).value);
                ACC_CHECK(residue_gauge_check(canon, f, k, c));
            }
        }
    });

    run_criterion(7, "modular field is not hamiltonian at desk scale", 30.0, [] {
        auto ctx = example_chart();
        PoissonStructure p = make_poisson(example_bivector());
        SpecMap c = example_spec();
        Multivector z = modular_vf(p);

        ACC_CHECK(!in_symplectic_foliation(p, z, c).member);
        HamSolveResult no = hamiltonian_solve_bounded_degree(p, z, 4, c);
        ACC_CHECK(!no.solved());
        ACC_CHECK(no.rank_augmented == no.rank_matrix + 1);

        // control: a genuinely hamiltonian field passes both tests
        Multivector control = hamiltonian_vf(p, P("x1^2", ctx));
        ModuleMembership mm = in_symplectic_foliation(p, control, c);
        ACC_CHECK(mm.member);
        auto gens = symplectic_foliation_generators(p);
        Multivector rebuilt = Multivector::zero(ctx, 1);
        for (std::size_t i = 0; i < gens.size(); ++i)
            rebuilt = rebuilt + gens[i].specialize(c, false) * mm.witness[i];
        ACC_CHECK(rebuilt == control.specialize(c, false));

        HamSolveResult yes = hamiltonian_solve_bounded_degree(p, control, 4, c);
        ACC_CHECK(yes.solved());
        ACC_CHECK(hamiltonian_vf(p, *yes.solution).specialize(c, false) ==
                  control.specialize(c, false));
    });

    run_criterion(8, "Groebner engine invariants", 30.0, [] {
        auto ctx = VarContext::make({"x1", "x2", "x3", "x4"});
        Rng rng(4004);

        // permutation invariance of the reduced basis
        for (int round = 0; round < 8; ++round) {
            std::vector<Poly> gens;
            for (int i = 0; i < 3; ++i) gens.push_back(rng.poly(ctx, 2, 3));
            IdealGB a(ctx, gens);
            std::shuffle(gens.begin(), gens.end(), rng.engine);
            IdealGB b(ctx, gens);
            ACC_CHECK(a.basis() == b.basis());
        }

        // normal-form idempotence and membership vs monomial divisibility
        for (int round = 0; round < 12; ++round) {
            std::vector<Poly> gens;
            for (int g = rng.uniform(1, 5); g > 0; --g) {
                ExpVec e(ctx->num_slots(), 0);
                for (int d = rng.uniform(1, 4); d > 0; --d) e[rng.uniform(0, 3)] += 1;
                gens.push_back(Poly::monomial(ctx, e, Rational(1)));
            }
            IdealGB I(ctx, gens);
            for (int probe = 0; probe < 6; ++probe) {
                Poly p = rng.poly(ctx, 4, 3);
                Poly nf = I.normal_form(p);
                ACC_CHECK(I.normal_form(nf) == nf);
                bool oracle = true;
                for (const auto& [e, coeff] : p.terms()) {
                    bool divisible = false;
                    for (const Poly& g : gens)
                        if (monomial_divides(g.leading_term().first, e)) divisible = true;
                    if (!divisible) oracle = false;
                }
                ACC_CHECK(I.contains(p) == oracle);
            }
        }

        // module membership witnesses reconstruct the input exactly
        auto ctx3 = VarContext::make({"x1", "x2", "x3"});
        VectorOfPolys g0 = {P("x1", ctx3), P("x2", ctx3), Poly::zero(ctx3)};
        VectorOfPolys g1 = {Poly::zero(ctx3), P("x1", ctx3), P("x3", ctx3)};
        for (int round = 0; round < 10; ++round) {
            Poly a = rng.poly(ctx3, 2, 3), b = rng.poly(ctx3, 2, 3);
            VectorOfPolys v(3, Poly::zero(ctx3));
            for (int i = 0; i < 3; ++i) v[i] = a * g0[i] + b * g1[i];
            ModuleMembership r = module_membership(v, {g0, g1});
            ACC_CHECK(r.member);
            for (int i = 0; i < 3; ++i)
                ACC_CHECK(r.witness[0] * g0[i] + r.witness[1] * g1[i] == v[i]);
        }
    });

    run_criterion(9, "twisted 1-form: integrability tracks Jacobi", 5.0, [] {
        auto ctx4 = VarContext::make({"x1", "x2", "x3", "x4"});
        DiffForm alpha = bivector_to_twisted_oneform(MV("d1^d2", ctx4, 2));
        ACC_CHECK(wedge(alpha, exterior_derivative(alpha)).is_zero());
        ACC_CHECK(contract_form_with_multivector(euler_field(ctx4), alpha).is_zero());

        Multivector bad = MV("x3^2*d1^d2 + x1^2*d3^d4", ctx4, 2);
        ACC_CHECK(!schouten_bracket(bad, bad).is_zero());
        DiffForm beta = bivector_to_twisted_oneform(bad);
        ACC_CHECK(!wedge(beta, exterior_derivative(beta)).is_zero());
    });

    run_criterion(10, "CLI end-to-end: golden report, round trips, exit codes", 10.0, [] {
        if (g_cli.empty() || g_data.empty() || g_golden.empty())
            throw Failure("pass --cli, --data and --golden");

        std::string out;
        int code = run_cli("report --input " + g_data + "/example32.pois --format json-v1",
                           &out);
        ACC_CHECK(code == 0);
        std::string golden = read_file(g_golden + "/example32_report.json");
        ACC_CHECK(out == golden);

        // parser round trip on >= 100 random values
        auto ctx = example_chart();
        Rng rng(5005);
        int round_trips = 0;
        for (int round = 0; round < 60; ++round) {
            Poly p = rng.poly(ctx, 3, 5);
            ACC_CHECK(parse_poly(p.to_string(), ctx) == p);
            ++round_trips;
            int degree = rng.uniform(1, 3);
            Multivector m = rng.multivector(ctx, degree, 2);
            ACC_CHECK(parse_multivector(m.to_string(), ctx, m.is_zero() ? degree : m.degree()) == m);
            ++round_trips;
        }
        ACC_CHECK(round_trips >= 100);

        // negative corpus: mathematical failures exit 1, input errors exit 2
        ACC_CHECK(run_cli("verify --input " + g_data + "/nonjacobi.pois") == 1);
        ACC_CHECK(run_cli("residues --module bad --input " + g_data + "/notflat.pois") == 1);
        ACC_CHECK(run_cli("verify --input " + g_data + "/badsyntax.pois") == 2);
    });

    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
