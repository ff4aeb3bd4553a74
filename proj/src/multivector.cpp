#include "poissonlab/multivector.hpp"

#include <algorithm>
#include <sstream>

namespace poissonlab {

namespace {

// Sorts the tuple in place; returns 0 when an index repeats, otherwise the
// sign of the sorting permutation.
int sort_tuple(IndexTuple& t) {
    int sign = 1;
    for (std::size_t i = 1; i < t.size(); ++i) {
        std::size_t j = i;
        while (j > 0 && t[j - 1] > t[j]) {
            std::swap(t[j - 1], t[j]);
            sign = -sign;
            --j;
        }
    }
    for (std::size_t i = 1; i < t.size(); ++i)
        if (t[i] == t[i - 1]) return 0;
    return sign;
}

// Sign accumulated when merging two disjoint increasing tuples by
// concatenation-then-sort: (-1)^{#inversions between a and b}.
int merge_sign(const IndexTuple& a, const IndexTuple& b) {
    int inv = 0;
    for (int x : a)
        for (int y : b)
            if (x > y) ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

bool tuples_disjoint(const IndexTuple& a, const IndexTuple& b) {
    for (int x : a)
        for (int y : b)
            if (x == y) return false;
    return true;
}

IndexTuple merge_tuples(const IndexTuple& a, const IndexTuple& b) {
    IndexTuple m;
    m.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(m));
    return m;
}

// Left derivative in the odd symbol of index i: removes i from the tuple
// with sign (-1)^position. Returns false when i does not occur.
bool odd_derivative_tuple(const IndexTuple& t, int i, IndexTuple& out, int& sign) {
    auto it = std::find(t.begin(), t.end(), i);
    if (it == t.end()) return false;
    sign = (it - t.begin()) % 2 == 0 ? 1 : -1;
    out.clear();
    out.reserve(t.size() - 1);
    for (int x : t)
        if (x != i) out.push_back(x);
    return true;
}

void generic_add_term(std::map<IndexTuple, Poly>& comps, IndexTuple tuple,
                      const Poly& c) {
    if (c.is_zero()) return;
    int sign = sort_tuple(tuple);
    if (sign == 0) return;
    Poly v = sign == 1 ? c : -c;
    auto [it, inserted] = comps.emplace(std::move(tuple), v);
    if (!inserted) {
        it->second = it->second + v;
        if (it->second.is_zero()) comps.erase(it);
    }
}

}  // namespace

// ---------------------------------------------------------------------- //
// Multivector

Multivector Multivector::zero(const ContextPtr& ctx, int degree) {
    if (degree < 0) throw DegreeMismatch("negative multivector degree");
    return Multivector(ctx, degree);
}

Multivector Multivector::from_poly(const Poly& p) {
    Multivector m(p.context(), 0);
    if (!p.is_zero()) m.comps_.emplace(IndexTuple{}, p);
    return m;
}

Multivector Multivector::basis_derivation(const ContextPtr& ctx, int var_index) {
    if (var_index < 0 || static_cast<std::size_t>(var_index) >= ctx->num_vars())
        throw IndexOutOfRange("derivation index out of range");
    Multivector m(ctx, 1);
    m.comps_.emplace(IndexTuple{var_index}, Poly::constant(ctx, Rational(1)));
    return m;
}

Poly Multivector::coefficient(const IndexTuple& tuple) const {
    auto it = comps_.find(tuple);
    return it == comps_.end() ? Poly::zero(ctx_) : it->second;
}

std::vector<Poly> Multivector::coefficient_list() const {
    std::vector<Poly> out;
    out.reserve(comps_.size());
    for (const auto& [t, c] : comps_) out.push_back(c);
    return out;
}

void Multivector::add_term(IndexTuple tuple, const Poly& c) {
    if (static_cast<int>(tuple.size()) != degree_)
        throw DegreeMismatch("tuple length does not match multivector degree");
    for (int i : tuple)
        if (i < 0 || static_cast<std::size_t>(i) >= ctx_->num_vars())
            throw IndexOutOfRange("derivation index out of range");
    generic_add_term(comps_, std::move(tuple), c);
}

Multivector Multivector::operator+(const Multivector& rhs) const {
    require_same_context(ctx_, rhs.ctx_, "multivector add");
    if (is_zero()) return rhs;
    if (rhs.is_zero()) return *this;
    if (degree_ != rhs.degree_)
        throw DegreeMismatch("adding multivectors of different degrees");
    Multivector r(*this);
    for (const auto& [t, c] : rhs.comps_) generic_add_term(r.comps_, t, c);
    return r;
}

Multivector Multivector::operator-(const Multivector& rhs) const { return *this + (-rhs); }

Multivector Multivector::operator-() const {
    Multivector r(*this);
    for (auto& [t, c] : r.comps_) c = -c;
    return r;
}

Multivector Multivector::operator*(const Poly& p) const {
    Multivector r(ctx_, degree_);
    for (const auto& [t, c] : comps_) {
        Poly v = c * p;
        if (!v.is_zero()) r.comps_.emplace(t, std::move(v));
    }
    return r;
}

Multivector Multivector::operator*(const Rational& c) const {
    return *this * Poly::constant(ctx_, c);
}

bool Multivector::operator==(const Multivector& rhs) const {
    if (is_zero() && rhs.is_zero()) return true;
    return degree_ == rhs.degree_ && comps_ == rhs.comps_;
}

Poly Multivector::apply_to(const Poly& f) const {
    if (degree_ != 1) throw DegreeMismatch("apply_to requires a vector field");
    require_same_context(ctx_, f.context(), "vector field application");
    Poly acc = Poly::zero(ctx_);
    for (const auto& [t, c] : comps_) acc = acc + c * f.derivative(t[0]);
    return acc;
}

Multivector Multivector::specialize(const std::map<std::string, Rational>& values,
                                    bool require_all) const {
    Multivector r(ctx_, degree_);
    for (const auto& [t, c] : comps_) {
        Poly s = c.specialize(values, require_all);
        if (!s.is_zero()) r.comps_.emplace(t, std::move(s));
    }
    return r;
}

// ---------------------------------------------------------------------- //
// DiffForm

DiffForm DiffForm::zero(const ContextPtr& ctx, int degree) {
    if (degree < 0) throw DegreeMismatch("negative form degree");
    return DiffForm(ctx, degree);
}

DiffForm DiffForm::from_poly(const Poly& p) {
    DiffForm f(p.context(), 0);
    if (!p.is_zero()) f.comps_.emplace(IndexTuple{}, p);
    return f;
}

DiffForm DiffForm::basis_differential(const ContextPtr& ctx, int var_index) {
    if (var_index < 0 || static_cast<std::size_t>(var_index) >= ctx->num_vars())
        throw IndexOutOfRange("differential index out of range");
    DiffForm f(ctx, 1);
    f.comps_.emplace(IndexTuple{var_index}, Poly::constant(ctx, Rational(1)));
    return f;
}

DiffForm DiffForm::volume(const ContextPtr& ctx) {
    DiffForm f(ctx, static_cast<int>(ctx->num_vars()));
    IndexTuple all(ctx->num_vars());
    for (std::size_t i = 0; i < ctx->num_vars(); ++i) all[i] = static_cast<int>(i);
    f.comps_.emplace(std::move(all), Poly::constant(ctx, Rational(1)));
    return f;
}

Poly DiffForm::coefficient(const IndexTuple& tuple) const {
    auto it = comps_.find(tuple);
    return it == comps_.end() ? Poly::zero(ctx_) : it->second;
}

void DiffForm::add_term(IndexTuple tuple, const Poly& c) {
    if (static_cast<int>(tuple.size()) != degree_)
        throw DegreeMismatch("tuple length does not match form degree");
    for (int i : tuple)
        if (i < 0 || static_cast<std::size_t>(i) >= ctx_->num_vars())
            throw IndexOutOfRange("differential index out of range");
    generic_add_term(comps_, std::move(tuple), c);
}

DiffForm DiffForm::operator+(const DiffForm& rhs) const {
    require_same_context(ctx_, rhs.ctx_, "form add");
    if (is_zero()) return rhs;
    if (rhs.is_zero()) return *this;
    if (degree_ != rhs.degree_) throw DegreeMismatch("adding forms of different degrees");
    DiffForm r(*this);
    for (const auto& [t, c] : rhs.comps_) generic_add_term(r.comps_, t, c);
    return r;
}

DiffForm DiffForm::operator-(const DiffForm& rhs) const { return *this + (-rhs); }

DiffForm DiffForm::operator-() const {
    DiffForm r(*this);
    for (auto& [t, c] : r.comps_) c = -c;
    return r;
}

DiffForm DiffForm::operator*(const Poly& p) const {
    DiffForm r(ctx_, degree_);
    for (const auto& [t, c] : comps_) {
        Poly v = c * p;
        if (!v.is_zero()) r.comps_.emplace(t, std::move(v));
    }
    return r;
}

bool DiffForm::operator==(const DiffForm& rhs) const {
    if (is_zero() && rhs.is_zero()) return true;
    return degree_ == rhs.degree_ && comps_ == rhs.comps_;
}

// ---------------------------------------------------------------------- //
// operations

Multivector wedge(const Multivector& a, const Multivector& b) {
    require_same_context(a.context(), b.context(), "wedge");
    Multivector r = Multivector::zero(a.context(), a.degree() + b.degree());
    for (const auto& [ta, ca] : a.components()) {
        for (const auto& [tb, cb] : b.components()) {
            if (!tuples_disjoint(ta, tb)) continue;
            Poly c = ca * cb;
            if (c.is_zero()) continue;
            int sign = merge_sign(ta, tb);
            r.add_term(merge_tuples(ta, tb), sign == 1 ? c : -c);
        }
    }
    return r;
}

DiffForm wedge(const DiffForm& a, const DiffForm& b) {
    require_same_context(a.context(), b.context(), "wedge");
    DiffForm r = DiffForm::zero(a.context(), a.degree() + b.degree());
    for (const auto& [ta, ca] : a.components()) {
        for (const auto& [tb, cb] : b.components()) {
            if (!tuples_disjoint(ta, tb)) continue;
            Poly c = ca * cb;
            if (c.is_zero()) continue;
            int sign = merge_sign(ta, tb);
            r.add_term(merge_tuples(ta, tb), sign == 1 ? c : -c);
        }
    }
    return r;
}

Multivector power(const Multivector& p, int k) {
    if (k < 0) throw IndexOutOfRange("negative multivector power");
    Multivector acc = Multivector::from_poly(Poly::constant(p.context(), Rational(1)));
    for (int i = 0; i < k; ++i) acc = wedge(acc, p);
    return acc;
}

DiffForm contract_form_with_multivector(const Multivector& p, const DiffForm& omega) {
    require_same_context(p.context(), omega.context(), "contraction");
    if (omega.degree() < p.degree())
        throw DegreeMismatch("cannot contract into a form of lower degree");
    DiffForm acc = DiffForm::zero(p.context(), omega.degree() - p.degree());
    for (const auto& [tp, cp] : p.components()) {
        // plug the factors of the multivector left to right
        std::map<IndexTuple, Poly> cur(omega.components());
        for (int idx : tp) {
            std::map<IndexTuple, Poly> next;
            IndexTuple reduced;
            int sign = 0;
            for (const auto& [t, c] : cur) {
                if (!odd_derivative_tuple(t, idx, reduced, sign)) continue;
                generic_add_term(next, reduced, sign == 1 ? c : -c);
            }
            cur = std::move(next);
            if (cur.empty()) break;
        }
        for (const auto& [t, c] : cur) acc.add_term(t, cp * c);
    }
    return acc;
}

Multivector contract_oneform_into_multivector(const DiffForm& alpha, const Multivector& p) {
    require_same_context(alpha.context(), p.context(), "contraction");
    if (alpha.degree() != 1) throw DegreeMismatch("contraction expects a 1-form");
    if (p.degree() < 1) throw DegreeMismatch("cannot contract a 1-form into a function");
    Multivector acc = Multivector::zero(p.context(), p.degree() - 1);
    IndexTuple reduced;
    int sign = 0;
    for (const auto& [ta, ca] : alpha.components()) {
        int idx = ta[0];
        for (const auto& [tp, cp] : p.components()) {
            if (!odd_derivative_tuple(tp, idx, reduced, sign)) continue;
            acc.add_term(reduced, sign == 1 ? ca * cp : -(ca * cp));
        }
    }
    return acc;
}

DiffForm exterior_derivative(const DiffForm& omega) {
    const ContextPtr& ctx = omega.context();
    DiffForm acc = DiffForm::zero(ctx, omega.degree() + 1);
    for (const auto& [t, c] : omega.components()) {
        for (std::size_t i = 0; i < ctx->num_vars(); ++i) {
            Poly dc = c.derivative(i);
            if (dc.is_zero()) continue;
            IndexTuple ext;
            ext.reserve(t.size() + 1);
            ext.push_back(static_cast<int>(i));
            ext.insert(ext.end(), t.begin(), t.end());
            acc.add_term(std::move(ext), dc);
        }
    }
    return acc;
}

DiffForm differential(const Poly& f) {
    return exterior_derivative(DiffForm::from_poly(f));
}

namespace {

// right odd derivative of a multivector in the symbol of d/dx_i: the
// symbol is commuted to the last slot before removal, so the sign is
// (-1)^(degree - 1 - position). The bracket below needs the right-sided
// derivative; contractions use the left-sided one.
Multivector odd_derivative_right(const Multivector& p, int i) {
    Multivector r = Multivector::zero(p.context(), p.degree() - 1);
    IndexTuple reduced;
    int sign = 0;
    for (const auto& [t, c] : p.components()) {
        if (!odd_derivative_tuple(t, i, reduced, sign)) continue;
        if ((t.size() - 1) % 2 != 0) sign = -sign;
        r.add_term(reduced, sign == 1 ? c : -c);
    }
    return r;
}

// coefficient-wise d/dx_i keeping tuples
Multivector coefficient_derivative(const Multivector& p, int i) {
    Multivector r = Multivector::zero(p.context(), p.degree());
    for (const auto& [t, c] : p.components()) {
        Poly dc = c.derivative(i);
        if (!dc.is_zero()) r.add_term(t, dc);
    }
    return r;
}

}  // namespace

Multivector schouten_bracket(const Multivector& p, const Multivector& q) {
    require_same_context(p.context(), q.context(), "schouten bracket");
    const ContextPtr& ctx = p.context();
    const int dp = p.degree(), dq = q.degree();
    const int out_degree = std::max(dp + dq - 1, 0);
    Multivector acc = Multivector::zero(ctx, out_degree);
    if (p.is_zero() || q.is_zero()) return acc;
    const bool flip = ((dp - 1) * (dq - 1)) % 2 != 0;
    for (std::size_t i = 0; i < ctx->num_vars(); ++i) {
        if (dp >= 1) {
            Multivector t = wedge(odd_derivative_right(p, static_cast<int>(i)),
                                  coefficient_derivative(q, static_cast<int>(i)));
            if (!t.is_zero()) acc = acc + t;
        }
        if (dq >= 1) {
            Multivector t = wedge(odd_derivative_right(q, static_cast<int>(i)),
                                  coefficient_derivative(p, static_cast<int>(i)));
            if (!t.is_zero()) acc = acc + (flip ? t : -t);
        }
    }
    return acc;
}

Multivector lie_derivative(const Multivector& x, const Multivector& p) {
    if (x.degree() != 1) throw DegreeMismatch("lie derivative expects a vector field");
    return schouten_bracket(x, p);
}

Poly divergence(const Multivector& x) {
    if (x.degree() != 1) throw DegreeMismatch("divergence expects a vector field");
    Poly acc = Poly::zero(x.context());
    for (const auto& [t, c] : x.components()) acc = acc + c.derivative(t[0]);
    return acc;
}

// ---------------------------------------------------------------------- //
// printing

namespace {

std::string symbols_to_string(const IndexTuple& t, const char* prefix) {
    std::ostringstream out;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out << "^";
        out << prefix << (t[i] + 1);
    }
    return out.str();
}

std::string components_to_string(const std::map<IndexTuple, Poly>& comps,
                                 const char* prefix) {
    if (comps.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [t, c] : comps) {
        std::string sym = symbols_to_string(t, prefix);
        std::string coeff;
        bool negative = false;
        if (t.empty()) {
            coeff = c.to_string();
            negative = !coeff.empty() && coeff[0] == '-';
            if (negative) coeff = coeff.substr(1);
        } else if (c.terms().size() == 1) {
            Poly abs = c.leading_term().second < 0 ? -c : c;
            negative = c.leading_term().second < 0;
            if (abs.is_constant() && abs.constant_value() == 1)
                coeff = sym;
            else
                coeff = abs.to_string() + "*" + sym;
        } else {
            coeff = "(" + c.to_string() + ")*" + sym;
        }
        if (first) {
            if (negative) out << "-";
            first = false;
        } else {
            out << (negative ? " - " : " + ");
        }
        out << coeff;
    }
    return out.str();
}

}  // namespace

std::string Multivector::to_string() const {
    if (degree_ == 0)
        return comps_.empty() ? "0" : comps_.begin()->second.to_string();
    return components_to_string(comps_, "d");
}

std::string DiffForm::to_string() const {
    if (degree_ == 0)
        return comps_.empty() ? "0" : comps_.begin()->second.to_string();
    return components_to_string(comps_, "dx");
}

}  // namespace poissonlab
