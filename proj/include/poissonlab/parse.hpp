#ifndef POISSONLAB_PARSE_HPP
#define POISSONLAB_PARSE_HPP

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "poissonlab/ideal.hpp"
#include "poissonlab/multivector.hpp"

namespace poissonlab {

/// Result of parsing one expression. A sum with no derivation symbols is a
/// Poly; `d<i>` factors build a Multivector, `dx<i>` factors a DiffForm.
using ParsedValue = std::variant<Poly, Multivector, DiffForm>;

/// Grammar:
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := INT ['/' INT]                  rational literal
///           | IDENT ['^' INT]                declared variable or parameter
///           | '(' expr ')' ['^' INT]         parenthesized polynomial
///           | d<i> ('^' d<i>)*               wedge of coordinate derivations
///           | dx<i> ('^' dx<i>)*             wedge of coordinate differentials
/// Whitespace-insensitive; '#' starts a comment that runs to the end of
/// the line. A repeated derivation index inside one term is a hard error.
/// All terms of a sum must carry the same number of derivation (or
/// differential) factors.
ParsedValue parse_expression(const std::string& text, const ContextPtr& ctx,
                             int line = 1, int column = 1);

/// Wrappers that additionally check the shape of the parsed value.
Poly parse_poly(const std::string& text, const ContextPtr& ctx, int line = 1,
                int column = 1);
Multivector parse_multivector(const std::string& text, const ContextPtr& ctx,
                              int expected_degree, int line = 1, int column = 1);
DiffForm parse_diff_form(const std::string& text, const ContextPtr& ctx,
                         int expected_degree, int line = 1, int column = 1);

/// Parses "a" or "a/b" with an optional sign.
Rational parse_rational_literal(const std::string& text, int line = 1, int column = 1);

/// Named connection-field declaration; `modular` refers to the modular
/// field of the file's structure and is resolved by the dispatcher.
struct ConnectionDecl {
    std::string name;
    bool is_modular = false;
    Multivector field;  // meaningful when !is_modular
    std::string text;
};

struct SubvarietyDecl {
    std::string name;
    std::vector<Poly> generators;
    std::vector<std::string> texts;
};

/// One affine-chart problem. Line-oriented format, '#' comments:
///   vars: x1 x2 x3
///   params: c12 c13 c23
///   bivector: c12*x1*x2 * d1^d2 + ...
///   specialize: c12=1 c13=2 c23=3      (or: specialize: generic)
///   homogeneous: true
///   subvariety L12: x1, x2
///   connection Zmod: modular
struct ProblemFile {
    std::vector<std::string> vars;
    std::vector<std::string> params;
    ContextPtr context;

    std::string bivector_text;
    Multivector bivector;  // degree 2 (zero bivector allowed)

    bool generic_specialization = false;
    SpecMap specialization;  // empty unless given explicitly

    bool homogeneous = false;

    std::vector<SubvarietyDecl> subvarieties;
    std::vector<ConnectionDecl> connection_fields;

    std::string source_text;  // verbatim input (digests, echoes)
};

ProblemFile parse_problem_file(const std::string& text);

}  // namespace poissonlab

#endif
