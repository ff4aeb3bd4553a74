#include "poissonlab/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace poissonlab {

bool TermOrder::operator()(const ExpVec& a, const ExpVec& b) const {
    long da = 0, db = 0;
    for (std::size_t i = 0; i < num_vars; ++i) {
        da += a[i];
        db += b[i];
    }
    if (da != db) return da < db;
    // degrevlex: with equal degree, the larger monomial has the smaller
    // exponent at the last position where they differ.
    for (std::size_t i = num_vars; i-- > 0;) {
        if (a[i] != b[i]) return a[i] > b[i];
    }
    // parameter tie-break, plain lex
    for (std::size_t i = num_vars; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

bool monomial_divides(const ExpVec& b, const ExpVec& a) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (b[i] > a[i]) return false;
    return true;
}

ExpVec monomial_quotient(const ExpVec& a, const ExpVec& b) {
    ExpVec q(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) q[i] = a[i] - b[i];
    return q;
}

ExpVec monomial_lcm(const ExpVec& a, const ExpVec& b) {
    ExpVec l(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) l[i] = std::max(a[i], b[i]);
    return l;
}

Poly::Poly(ContextPtr ctx)
    : ctx_(std::move(ctx)), terms_(TermOrder{ctx_->num_vars()}) {}

Poly Poly::zero(const ContextPtr& ctx) { return Poly(ctx); }

Poly Poly::constant(const ContextPtr& ctx, const Rational& c) {
    Poly p(ctx);
    if (c != 0) p.terms_.emplace(ExpVec(ctx->num_slots(), 0), c);
    return p;
}

Poly Poly::variable(const ContextPtr& ctx, std::size_t var_index) {
    if (var_index >= ctx->num_vars())
        throw IndexOutOfRange("variable index out of range");
    ExpVec e(ctx->num_slots(), 0);
    e[var_index] = 1;
    return monomial(ctx, std::move(e), Rational(1));
}

Poly Poly::parameter(const ContextPtr& ctx, std::size_t param_index) {
    if (param_index >= ctx->num_params())
        throw IndexOutOfRange("parameter index out of range");
    ExpVec e(ctx->num_slots(), 0);
    e[ctx->num_vars() + param_index] = 1;
    return monomial(ctx, std::move(e), Rational(1));
}

Poly Poly::monomial(const ContextPtr& ctx, ExpVec exps, const Rational& c) {
    if (exps.size() != ctx->num_slots())
        throw IndexOutOfRange("exponent vector has wrong length");
    Poly p(ctx);
    if (c != 0) p.terms_.emplace(std::move(exps), c);
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const ExpVec& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

bool Poly::is_parameter_free() const {
    const std::size_t nv = ctx_->num_vars();
    for (const auto& [e, c] : terms_)
        for (std::size_t i = nv; i < e.size(); ++i)
            if (e[i] != 0) return false;
    return true;
}

Rational Poly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    ExpVec zero(ctx_->num_slots(), 0);
    auto it = terms_.find(zero);
    return it == terms_.end() ? Rational(0) : it->second;
}

const Poly::TermMap::value_type& Poly::leading_term() const {
    if (terms_.empty()) throw ZeroInput("leading term of the zero polynomial");
    return *terms_.rbegin();
}

int Poly::degree() const {
    int best = -1;
    const std::size_t nv = ctx_->num_vars();
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (std::size_t i = 0; i < nv; ++i) d += e[i];
        best = std::max(best, d);
    }
    return best;
}

bool Poly::is_homogeneous() const {
    const std::size_t nv = ctx_->num_vars();
    int common = -1;
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (std::size_t i = 0; i < nv; ++i) d += e[i];
        if (common < 0)
            common = d;
        else if (d != common)
            return false;
    }
    return true;
}

void Poly::add_term(const ExpVec& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly r(*this);
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

Poly Poly::operator+(const Poly& rhs) const {
    require_same_context(ctx_, rhs.ctx_, "poly add");
    Poly r(*this);
    for (const auto& [e, c] : rhs.terms_) r.add_term(e, c);
    return r;
}

Poly Poly::operator-(const Poly& rhs) const {
    require_same_context(ctx_, rhs.ctx_, "poly sub");
    Poly r(*this);
    for (const auto& [e, c] : rhs.terms_) r.add_term(e, -c);
    return r;
}

Poly Poly::operator*(const Poly& rhs) const {
    require_same_context(ctx_, rhs.ctx_, "poly mul");
    Poly r(ctx_);
    ExpVec e(ctx_->num_slots());
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : rhs.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Poly Poly::operator*(const Rational& c) const {
    if (c == 0) return Poly(ctx_);
    Poly r(*this);
    for (auto& [e, v] : r.terms_) v *= c;
    return r;
}

bool Poly::operator==(const Poly& rhs) const {
    if (!ctx_ || !rhs.ctx_) return terms_.empty() && rhs.terms_.empty();
    require_same_context(ctx_, rhs.ctx_, "poly compare");
    return terms_ == rhs.terms_;
}

Poly Poly::pow(int exponent) const {
    if (exponent < 0) throw IndexOutOfRange("negative polynomial power");
    Poly acc = Poly::constant(ctx_, Rational(1));
    for (int i = 0; i < exponent; ++i) acc = acc * (*this);
    return acc;
}

Poly Poly::derivative(std::size_t var_index) const {
    if (var_index >= ctx_->num_vars())
        throw IndexOutOfRange("derivative index out of range");
    Poly r(ctx_);
    for (const auto& [e, c] : terms_) {
        if (e[var_index] == 0) continue;
        ExpVec d = e;
        d[var_index] -= 1;
        r.add_term(d, c * Rational(e[var_index]));
    }
    return r;
}

Poly Poly::specialize(const std::map<std::string, Rational>& values,
                      bool require_all) const {
    const std::size_t nv = ctx_->num_vars();
    const std::size_t np = ctx_->num_params();
    // resolve values once against the context
    std::vector<const Rational*> table(np, nullptr);
    for (const auto& [name, val] : values) {
        auto sym = ctx_->find(name);
        if (!sym || !sym->is_param)
            throw MissingParameter("'" + name + "' is not a declared parameter");
        table[sym->index] = &val;
    }
    Poly r(ctx_);
    for (const auto& [e, c] : terms_) {
        Rational coeff = c;
        ExpVec out = e;
        for (std::size_t i = 0; i < np; ++i) {
            int exp = e[nv + i];
            if (exp == 0) continue;
            if (table[i] == nullptr) {
                if (require_all)
                    throw MissingParameter("no value supplied for parameter '" +
                                           ctx_->param_name(i) + "'");
                continue;
            }
            coeff *= rational_pow(*table[i], exp);
            out[nv + i] = 0;
        }
        r.add_term(out, coeff);
    }
    return r;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    const std::size_t nv = ctx_->num_vars();
    // descending order: canonical printed form
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational mag = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        // parameters print before chart variables (c12*x1*x2)
        std::vector<std::string> factors;
        bool any_symbol = false;
        auto emit = [&](std::size_t i) {
            if (e[i] == 0) return;
            any_symbol = true;
            std::string name = i < nv ? ctx_->var_name(i) : ctx_->param_name(i - nv);
            if (e[i] == 1)
                factors.push_back(name);
            else
                factors.push_back(name + "^" + std::to_string(e[i]));
        };
        for (std::size_t i = nv; i < e.size(); ++i) emit(i);
        for (std::size_t i = 0; i < nv; ++i) emit(i);
        if (!any_symbol) {
            out << rational_to_string(mag);
        } else {
            bool printed = false;
            if (mag != 1) {
                out << rational_to_string(mag);
                printed = true;
            }
            for (const auto& f : factors) {
                if (printed) out << "*";
                out << f;
                printed = true;
            }
        }
    }
    return out.str();
}

namespace {

// ---- multivariate gcd (primitive Euclidean algorithm) ----
//
// Polynomials are viewed recursively as univariate in their highest
// occurring slot with polynomial coefficients in the lower slots.

std::size_t highest_slot(const Poly& p, bool& found) {
    std::size_t best = 0;
    found = false;
    for (const auto& [e, c] : p.terms()) {
        for (std::size_t i = e.size(); i-- > 0;) {
            if (e[i] != 0) {
                if (!found || i > best) best = i;
                found = true;
                break;
            }
        }
    }
    return best;
}

// coefficients of p as a univariate polynomial in slot s, indexed by degree
std::map<int, Poly> univariate_in(const Poly& p, std::size_t s) {
    std::map<int, Poly> coeffs;
    const ContextPtr& ctx = p.context();
    for (const auto& [e, c] : p.terms()) {
        ExpVec rest = e;
        int d = rest[s];
        rest[s] = 0;
        auto it = coeffs.find(d);
        if (it == coeffs.end())
            coeffs.emplace(d, Poly::monomial(ctx, rest, c));
        else
            it->second = it->second + Poly::monomial(ctx, rest, c);
    }
    return coeffs;
}

Poly gcd_rec(Poly a, Poly b);

// gcd of all coefficients of p viewed in slot s
Poly content_in(const Poly& p, std::size_t s) {
    Poly g = Poly::zero(p.context());
    for (const auto& [d, q] : univariate_in(p, s)) g = gcd_rec(g, q);
    return g;
}

// exact division helper used for primitive parts: q must divide p termwise
// after gcd extraction; implemented by a direct division loop.
Poly exact_div(const Poly& p, const Poly& q) {
    if (q.is_zero()) throw ZeroInput("division by zero polynomial");
    Poly rem = p;
    Poly quot = Poly::zero(p.context());
    while (!rem.is_zero()) {
        const auto& [le, lc] = rem.leading_term();
        const auto& [qe, qc] = q.leading_term();
        if (!monomial_divides(qe, le))
            throw Error("exact_div: not divisible");
        Poly t = Poly::monomial(p.context(), monomial_quotient(le, qe), lc / qc);
        quot = quot + t;
        rem = rem - t * q;
    }
    return quot;
}

// canonical associate: integer-primitive content 1, positive leading coeff
Poly make_canonical(const Poly& p) {
    if (p.is_zero()) return p;
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto& [e, c] : p.terms()) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    Poly r = p * scale;
    if (r.leading_term().second < 0) r = -r;
    return r;
}

Poly gcd_rec(Poly a, Poly b) {
    if (a.is_zero()) return make_canonical(b);
    if (b.is_zero()) return make_canonical(a);
    if (a.is_constant() || b.is_constant())
        return Poly::constant(a.context(), Rational(1));

    bool fa = false, fb = false;
    std::size_t sa = highest_slot(a, fa);
    std::size_t sb = highest_slot(b, fb);
    std::size_t s = std::max(sa, sb);

    Poly ca = content_in(a, s);
    Poly cb = content_in(b, s);
    Poly cont = gcd_rec(ca, cb);
    Poly pa = exact_div(a, ca);
    Poly pb = exact_div(b, cb);

    // primitive remainder sequence in slot s
    auto deg_in = [&](const Poly& p) {
        int d = 0;
        for (const auto& [e, c] : p.terms()) d = std::max(d, e[s]);
        return d;
    };
    if (deg_in(pa) < deg_in(pb)) std::swap(pa, pb);
    while (!pb.is_zero()) {
        // pseudo-remainder of pa by pb in slot s
        auto ub = univariate_in(pb, s);
        int db = ub.rbegin()->first;
        Poly lcb = ub.rbegin()->second;
        Poly rem = pa;
        while (!rem.is_zero()) {
            auto ur = univariate_in(rem, s);
            int dr = ur.rbegin()->first;
            if (dr < db) break;
            Poly lcr = ur.rbegin()->second;
            ExpVec shift(a.context()->num_slots(), 0);
            shift[s] = dr - db;
            Poly shift_m = Poly::monomial(a.context(), shift, Rational(1));
            rem = rem * lcb - pb * lcr * shift_m;
        }
        pa = pb;
        if (rem.is_zero()) {
            pb = rem;
        } else {
            pb = exact_div(rem, content_in(rem, s));
        }
    }
    return make_canonical(cont * pa);
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
    require_same_context(a.context(), b.context(), "gcd");
    return gcd_rec(a, b);
}

bool squarefree_check(const Poly& p) {
    if (p.is_zero()) throw ZeroInput("squarefree_check of the zero polynomial");
    if (!p.is_parameter_free())
        throw UnspecializedParameter("squarefree_check requires a parameter-free polynomial");
    Poly g = p;
    for (std::size_t i = 0; i < p.context()->num_vars(); ++i) {
        Poly d = p.derivative(i);
        if (d.is_zero()) continue;
        g = poly_gcd(g, d);
    }
    // a polynomial with no variable occurrences (constant) is squarefree
    return g.is_constant() || p.is_constant();
}

}  // namespace poissonlab
