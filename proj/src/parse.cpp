#include "poissonlab/parse.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace poissonlab {

namespace {

enum class Tok {
    integer,
    ident,
    deriv,         // d<i>
    differential,  // dx<i>
    plus,
    minus,
    star,
    caret,
    slash,
    lparen,
    rparen,
    end
};

struct Token {
    Tok kind;
    std::string text;
    long value = 0;  // integer payload (or derivation index, 1-based)
    int line = 1;
    int col = 1;
};

const char* tok_name(Tok t) {
    switch (t) {
        case Tok::integer: return "integer";
        case Tok::ident: return "identifier";
        case Tok::deriv: return "derivation d<i>";
        case Tok::differential: return "differential dx<i>";
        case Tok::plus: return "'+'";
        case Tok::minus: return "'-'";
        case Tok::star: return "'*'";
        case Tok::caret: return "'^'";
        case Tok::slash: return "'/'";
        case Tok::lparen: return "'('";
        case Tok::rparen: return "')'";
        case Tok::end: return "end of expression";
    }
    return "?";
}

std::vector<Token> lex(const std::string& text, int line, int column) {
    std::vector<Token> out;
    int ln = line, col = column;
    std::size_t i = 0;
    auto advance = [&](std::size_t k) {
        for (std::size_t j = 0; j < k; ++j) {
            if (text[i + j] == '\n') {
                ++ln;
                col = 1;
            } else {
                ++col;
            }
        }
        i += k;
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '#') {  // comment to end of line
            std::size_t j = i;
            while (j < text.size() && text[j] != '\n') ++j;
            advance(j - i);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Token t;
        t.line = ln;
        t.col = col;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            t.kind = Tok::integer;
            t.text = text.substr(i, j - i);
            try {
                t.value = std::stol(t.text);
            } catch (const std::out_of_range&) {
                throw ParseError(ln, col, {"integer"},
                                 "integer literal too large: '" + t.text + "'");
            }
            advance(j - i);
            out.push_back(std::move(t));
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            t.text = text.substr(i, j - i);
            if (t.text.size() >= 2 && t.text[0] == 'd' &&
                std::all_of(t.text.begin() + 1, t.text.end(),
                            [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
                t.kind = Tok::deriv;
                t.value = std::stol(t.text.substr(1));
            } else if (t.text.size() >= 3 && t.text[0] == 'd' && t.text[1] == 'x' &&
                       std::all_of(t.text.begin() + 2, t.text.end(), [](char ch) {
                           return std::isdigit(static_cast<unsigned char>(ch));
                       })) {
                t.kind = Tok::differential;
                t.value = std::stol(t.text.substr(2));
            } else {
                t.kind = Tok::ident;
            }
            advance(j - i);
            out.push_back(std::move(t));
            continue;
        }
        switch (c) {
            case '+': t.kind = Tok::plus; break;
            case '-': t.kind = Tok::minus; break;
            case '*': t.kind = Tok::star; break;
            case '^': t.kind = Tok::caret; break;
            case '/': t.kind = Tok::slash; break;
            case '(': t.kind = Tok::lparen; break;
            case ')': t.kind = Tok::rparen; break;
            default:
                throw ParseError(ln, col, {},
                                 std::string("unexpected character '") + c + "'");
        }
        t.text = std::string(1, c);
        advance(1);
        out.push_back(std::move(t));
    }
    Token e;
    e.kind = Tok::end;
    e.line = ln;
    e.col = col;
    out.push_back(e);
    return out;
}

// one additive term: a polynomial coefficient and an ordered list of
// derivation (or differential) indices, 0-based
struct TermValue {
    Poly coeff;
    std::vector<int> derivs;
    std::vector<int> diffs;
    int line = 1, col = 1;
};

class ExprParser {
public:
    ExprParser(std::vector<Token> tokens, ContextPtr ctx)
        : toks_(std::move(tokens)), ctx_(std::move(ctx)) {}

    ParsedValue parse() {
        std::vector<TermValue> terms;
        std::vector<int> signs;
        int sign = 1;
        if (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            sign = peek().kind == Tok::minus ? -1 : 1;
            next();
        }
        terms.push_back(parse_term());
        signs.push_back(sign);
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            sign = peek().kind == Tok::minus ? -1 : 1;
            next();
            terms.push_back(parse_term());
            signs.push_back(sign);
        }
        expect(Tok::end);
        return assemble(terms, signs);
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }

    [[noreturn]] void fail(const std::vector<std::string>& expected) const {
        const Token& t = peek();
        std::ostringstream msg;
        msg << "syntax error at line " << t.line << ", column " << t.col << ": got "
            << tok_name(t.kind);
        if (!expected.empty()) {
            msg << ", expected ";
            for (std::size_t i = 0; i < expected.size(); ++i) {
                if (i) msg << (i + 1 == expected.size() ? " or " : ", ");
                msg << expected[i];
            }
        }
        throw ParseError(t.line, t.col, expected, msg.str());
    }

    Token expect(Tok kind) {
        if (peek().kind != kind) fail({tok_name(kind)});
        return next();
    }

    int parse_exponent() {
        Token t = expect(Tok::integer);
        if (t.value < 0) fail({"nonnegative integer"});
        if (t.value > 512)
            throw SemanticError(t.line, t.col,
                                "exponent " + t.text + " exceeds the supported range");
        return static_cast<int>(t.value);
    }

    int deriv_index(const Token& t) const {
        if (t.value < 1 || t.value > static_cast<long>(ctx_->num_vars()))
            throw SemanticError(t.line, t.col,
                                "derivation index " + t.text + " out of range (chart has " +
                                    std::to_string(ctx_->num_vars()) + " variables)");
        return static_cast<int>(t.value - 1);
    }

    TermValue parse_term() {
        TermValue term;
        term.coeff = Poly::constant(ctx_, Rational(1));
        term.line = peek().line;
        term.col = peek().col;
        parse_factor(term);
        while (peek().kind == Tok::star) {
            next();
            parse_factor(term);
        }
        // each derivation may appear once per term
        auto check_repeats = [&](const std::vector<int>& v, const char* what) {
            std::set<int> seen;
            for (int i : v) {
                if (!seen.insert(i).second)
                    throw SemanticError(term.line, term.col,
                                        std::string("repeated ") + what + " index " +
                                            std::to_string(i + 1) + " in one term");
            }
        };
        check_repeats(term.derivs, "derivation");
        check_repeats(term.diffs, "differential");
        if (!term.derivs.empty() && !term.diffs.empty())
            throw SemanticError(term.line, term.col,
                                "cannot mix derivations d<i> and differentials dx<i>");
        return term;
    }

    void parse_factor(TermValue& term) {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::integer: {
                Token num = next();
                Rational r(num.value);
                if (peek().kind == Tok::slash) {
                    next();
                    Token den = expect(Tok::integer);
                    if (den.value == 0)
                        throw SemanticError(den.line, den.col, "division by zero in rational literal");
                    r = Rational(num.value, den.value);
                    r.canonicalize();
                }
                term.coeff = term.coeff * Poly::constant(ctx_, r);
                return;
            }
            case Tok::ident: {
                Token id = next();
                auto sym = ctx_->find(id.text);
                if (!sym)
                    throw SemanticError(id.line, id.col,
                                        "undeclared symbol '" + id.text + "'");
                Poly base = sym->is_param ? Poly::parameter(ctx_, sym->index)
                                          : Poly::variable(ctx_, sym->index);
                if (peek().kind == Tok::caret) {
                    next();
                    base = base.pow(parse_exponent());
                }
                term.coeff = term.coeff * base;
                return;
            }
            case Tok::lparen: {
                next();
                ParsedValue inner = parse_subexpression();
                expect(Tok::rparen);
                if (!std::holds_alternative<Poly>(inner))
                    throw SemanticError(t.line, t.col,
                                        "parentheses may only enclose polynomial expressions");
                Poly base = std::get<Poly>(inner);
                if (peek().kind == Tok::caret) {
                    next();
                    base = base.pow(parse_exponent());
                }
                term.coeff = term.coeff * base;
                return;
            }
            case Tok::deriv: {
                Token d = next();
                term.derivs.push_back(deriv_index(d));
                while (peek().kind == Tok::caret) {
                    next();
                    if (peek().kind != Tok::deriv) fail({"derivation d<i>"});
                    term.derivs.push_back(deriv_index(next()));
                }
                return;
            }
            case Tok::differential: {
                Token d = next();
                term.diffs.push_back(deriv_index(d));
                while (peek().kind == Tok::caret) {
                    next();
                    if (peek().kind != Tok::differential) fail({"differential dx<i>"});
                    term.diffs.push_back(deriv_index(next()));
                }
                return;
            }
            default:
                fail({"integer", "identifier", "derivation d<i>", "differential dx<i>", "'('"});
        }
    }

    // parse an expr without consuming the end token (for parentheses)
    ParsedValue parse_subexpression() {
        std::vector<TermValue> terms;
        std::vector<int> signs;
        int sign = 1;
        if (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            sign = peek().kind == Tok::minus ? -1 : 1;
            next();
        }
        terms.push_back(parse_term());
        signs.push_back(sign);
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            sign = peek().kind == Tok::minus ? -1 : 1;
            next();
            terms.push_back(parse_term());
            signs.push_back(sign);
        }
        return assemble(terms, signs);
    }

    ParsedValue assemble(const std::vector<TermValue>& terms, const std::vector<int>& signs) {
        bool any_deriv = false, any_diff = false;
        for (const auto& t : terms) {
            any_deriv = any_deriv || !t.derivs.empty();
            any_diff = any_diff || !t.diffs.empty();
        }
        if (any_deriv && any_diff)
            throw SemanticError(terms.front().line, terms.front().col,
                                "cannot mix derivations d<i> and differentials dx<i>");
        if (!any_deriv && !any_diff) {
            Poly sum = Poly::zero(ctx_);
            for (std::size_t i = 0; i < terms.size(); ++i)
                sum = signs[i] == 1 ? sum + terms[i].coeff : sum - terms[i].coeff;
            return sum;
        }
        // uniform degree across terms
        std::size_t deg = any_deriv ? terms.front().derivs.size() : terms.front().diffs.size();
        for (const auto& t : terms) {
            std::size_t d = any_deriv ? t.derivs.size() : t.diffs.size();
            if (d != deg)
                throw SemanticError(t.line, t.col,
                                    "mixed degrees in one expression: expected " +
                                        std::to_string(deg) + " derivation factors, got " +
                                        std::to_string(d));
        }
        if (any_deriv) {
            Multivector mv = Multivector::zero(ctx_, static_cast<int>(deg));
            for (std::size_t i = 0; i < terms.size(); ++i) {
                Poly c = signs[i] == 1 ? terms[i].coeff : -terms[i].coeff;
                mv.add_term(terms[i].derivs, c);
            }
            return mv;
        }
        DiffForm f = DiffForm::zero(ctx_, static_cast<int>(deg));
        for (std::size_t i = 0; i < terms.size(); ++i) {
            Poly c = signs[i] == 1 ? terms[i].coeff : -terms[i].coeff;
            f.add_term(terms[i].diffs, c);
        }
        return f;
    }

    std::vector<Token> toks_;
    ContextPtr ctx_;
    std::size_t pos_ = 0;
};

}  // namespace

ParsedValue parse_expression(const std::string& text, const ContextPtr& ctx, int line,
                             int column) {
    return ExprParser(lex(text, line, column), ctx).parse();
}

Poly parse_poly(const std::string& text, const ContextPtr& ctx, int line, int column) {
    ParsedValue v = parse_expression(text, ctx, line, column);
    if (!std::holds_alternative<Poly>(v))
        throw SemanticError(line, column, "expected a polynomial expression");
    return std::get<Poly>(v);
}

Multivector parse_multivector(const std::string& text, const ContextPtr& ctx,
                              int expected_degree, int line, int column) {
    ParsedValue v = parse_expression(text, ctx, line, column);
    if (std::holds_alternative<Poly>(v)) {
        const Poly& p = std::get<Poly>(v);
        if (p.is_zero()) return Multivector::zero(ctx, expected_degree);
        if (expected_degree == 0) return Multivector::from_poly(p);
        throw SemanticError(line, column,
                            "expected a multivector of degree " +
                                std::to_string(expected_degree));
    }
    if (!std::holds_alternative<Multivector>(v))
        throw SemanticError(line, column, "expected a multivector, found a form");
    Multivector mv = std::get<Multivector>(v);
    if (mv.degree() != expected_degree && !mv.is_zero())
        throw SemanticError(line, column,
                            "expected degree " + std::to_string(expected_degree) +
                                ", found degree " + std::to_string(mv.degree()));
    return mv;
}

DiffForm parse_diff_form(const std::string& text, const ContextPtr& ctx,
                         int expected_degree, int line, int column) {
    ParsedValue v = parse_expression(text, ctx, line, column);
    if (std::holds_alternative<Poly>(v)) {
        const Poly& p = std::get<Poly>(v);
        if (p.is_zero()) return DiffForm::zero(ctx, expected_degree);
        if (expected_degree == 0) return DiffForm::from_poly(p);
        throw SemanticError(line, column,
                            "expected a form of degree " + std::to_string(expected_degree));
    }
    if (!std::holds_alternative<DiffForm>(v))
        throw SemanticError(line, column, "expected a form, found a multivector");
    DiffForm f = std::get<DiffForm>(v);
    if (f.degree() != expected_degree && !f.is_zero())
        throw SemanticError(line, column,
                            "expected degree " + std::to_string(expected_degree) +
                                ", found degree " + std::to_string(f.degree()));
    return f;
}

Rational parse_rational_literal(const std::string& text, int line, int column) {
    std::vector<Token> toks = lex(text, line, column);
    std::size_t pos = 0;
    int sign = 1;
    if (toks[pos].kind == Tok::minus) {
        sign = -1;
        ++pos;
    } else if (toks[pos].kind == Tok::plus) {
        ++pos;
    }
    if (toks[pos].kind != Tok::integer)
        throw ParseError(toks[pos].line, toks[pos].col, {"integer"},
                         "expected a rational literal, got '" + text + "'");
    long num = toks[pos].value;
    ++pos;
    long den = 1;
    if (toks[pos].kind == Tok::slash) {
        ++pos;
        if (toks[pos].kind != Tok::integer)
            throw ParseError(toks[pos].line, toks[pos].col, {"integer"},
                             "expected a denominator in '" + text + "'");
        den = toks[pos].value;
        if (den == 0)
            throw SemanticError(toks[pos].line, toks[pos].col, "zero denominator");
        ++pos;
    }
    if (toks[pos].kind != Tok::end)
        throw ParseError(toks[pos].line, toks[pos].col, {"end of expression"},
                         "trailing input after rational literal");
    Rational r(sign * num, den);
    r.canonicalize();
    return r;
}

// ------------------------------------------------------------------------ //
// problem files

namespace {

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split_names(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

bool valid_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

struct RawSection {
    std::string key;   // "vars", "bivector", "subvariety", ...
    std::string name;  // for subvariety / connection
    std::string value;
    int line = 0;
    int value_col = 0;
};

}  // namespace

ProblemFile parse_problem_file(const std::string& text) {
    ProblemFile pf;
    pf.source_text = text;

    std::vector<RawSection> sections;
    {
        std::istringstream in(text);
        std::string raw;
        int line_no = 0;
        while (std::getline(in, raw)) {
            ++line_no;
            std::string line = strip_comment(raw);
            if (trim(line).empty()) continue;
            auto colon = line.find(':');
            if (colon == std::string::npos)
                throw ParseError(line_no, 1, {"'<section>:'"},
                                 "expected 'key: value' at line " + std::to_string(line_no));
            std::string head = trim(line.substr(0, colon));
            std::vector<std::string> head_parts = split_names(head);
            RawSection sec;
            sec.line = line_no;
            sec.value = trim(line.substr(colon + 1));
            sec.value_col = static_cast<int>(colon + 2);
            if (head_parts.size() == 1) {
                sec.key = head_parts[0];
            } else if (head_parts.size() == 2) {
                sec.key = head_parts[0];
                sec.name = head_parts[1];
            } else {
                throw ParseError(line_no, 1, {"section header"},
                                 "malformed section header '" + head + "'");
            }
            sections.push_back(std::move(sec));
        }
    }

    const std::set<std::string> known = {"vars",        "params",     "bivector",
                                         "specialize",  "homogeneous", "subvariety",
                                         "connection"};
    for (const auto& s : sections) {
        if (!known.count(s.key))
            throw SemanticError(s.line, 1, "unknown section '" + s.key + "'");
        if ((s.key == "subvariety" || s.key == "connection") && s.name.empty())
            throw SemanticError(s.line, 1, s.key + " section requires a name");
        if (s.key != "subvariety" && s.key != "connection" && !s.name.empty())
            throw SemanticError(s.line, 1, "section '" + s.key + "' does not take a name");
    }

    auto find_unique = [&](const std::string& key) -> const RawSection* {
        const RawSection* found = nullptr;
        for (const auto& s : sections) {
            if (s.key != key) continue;
            if (found)
                throw SemanticError(s.line, 1, "duplicate section '" + key + "'");
            found = &s;
        }
        return found;
    };

    const RawSection* vars_sec = find_unique("vars");
    if (!vars_sec) throw SemanticError(1, 1, "missing required section 'vars'");
    pf.vars = split_names(vars_sec->value);
    if (pf.vars.empty())
        throw SemanticError(vars_sec->line, vars_sec->value_col, "no variables declared");
    for (const auto& v : pf.vars)
        if (!valid_identifier(v))
            throw SemanticError(vars_sec->line, vars_sec->value_col,
                                "invalid variable name '" + v + "'");

    if (const RawSection* params_sec = find_unique("params")) {
        pf.params = split_names(params_sec->value);
        for (const auto& v : pf.params)
            if (!valid_identifier(v))
                throw SemanticError(params_sec->line, params_sec->value_col,
                                    "invalid parameter name '" + v + "'");
    }

    try {
        pf.context = VarContext::make(pf.vars, pf.params);
    } catch (const SemanticError& e) {
        throw SemanticError(vars_sec->line, vars_sec->value_col, e.what());
    }

    const RawSection* biv_sec = find_unique("bivector");
    if (!biv_sec) throw SemanticError(1, 1, "missing required section 'bivector'");
    pf.bivector_text = biv_sec->value;
    pf.bivector =
        parse_multivector(biv_sec->value, pf.context, 2, biv_sec->line, biv_sec->value_col);

    if (const RawSection* spec_sec = find_unique("specialize")) {
        std::string v = trim(spec_sec->value);
        if (v == "generic") {
            pf.generic_specialization = true;
        } else {
            for (const std::string& item : split_names(v)) {
                auto eq = item.find('=');
                if (eq == std::string::npos)
                    throw SemanticError(spec_sec->line, spec_sec->value_col,
                                        "expected name=value in specialize, got '" + item + "'");
                std::string name = item.substr(0, eq);
                std::string val = item.substr(eq + 1);
                auto sym = pf.context->find(name);
                if (!sym || !sym->is_param)
                    throw SemanticError(spec_sec->line, spec_sec->value_col,
                                        "'" + name + "' is not a declared parameter");
                if (pf.specialization.count(name))
                    throw SemanticError(spec_sec->line, spec_sec->value_col,
                                        "parameter '" + name + "' specialized twice");
                pf.specialization[name] =
                    parse_rational_literal(val, spec_sec->line, spec_sec->value_col);
            }
        }
    }

    if (const RawSection* hom_sec = find_unique("homogeneous")) {
        std::string v = trim(hom_sec->value);
        if (v == "true")
            pf.homogeneous = true;
        else if (v == "false")
            pf.homogeneous = false;
        else
            throw SemanticError(hom_sec->line, hom_sec->value_col,
                                "homogeneous must be 'true' or 'false'");
    }

    std::set<std::string> seen_names;
    for (const auto& s : sections) {
        if (s.key == "subvariety") {
            if (!seen_names.insert("sub:" + s.name).second)
                throw SemanticError(s.line, 1, "duplicate subvariety '" + s.name + "'");
            SubvarietyDecl decl;
            decl.name = s.name;
            std::string cur;
            std::vector<std::string> pieces;
            int depth = 0;
            for (char c : s.value) {  // split on commas outside parentheses
                if (c == '(') ++depth;
                if (c == ')') --depth;
                if (c == ',' && depth == 0) {
                    pieces.push_back(cur);
                    cur.clear();
                } else {
                    cur += c;
                }
            }
            pieces.push_back(cur);
            for (const auto& piece : pieces) {
                std::string t = trim(piece);
                if (t.empty())
                    throw SemanticError(s.line, s.value_col, "empty generator in subvariety");
                decl.generators.push_back(parse_poly(t, pf.context, s.line, s.value_col));
                decl.texts.push_back(t);
            }
            pf.subvarieties.push_back(std::move(decl));
        } else if (s.key == "connection") {
            if (s.name == "modular")
                throw SemanticError(s.line, 1,
                                    "'modular' is the builtin connection-field name");
            if (!seen_names.insert("conn:" + s.name).second)
                throw SemanticError(s.line, 1, "duplicate connection '" + s.name + "'");
            ConnectionDecl decl;
            decl.name = s.name;
            decl.text = trim(s.value);
            if (decl.text == "modular") {
                decl.is_modular = true;
            } else {
                decl.field =
                    parse_multivector(decl.text, pf.context, 1, s.line, s.value_col);
            }
            pf.connection_fields.push_back(std::move(decl));
        }
    }

    return pf;
}

}  // namespace poissonlab
