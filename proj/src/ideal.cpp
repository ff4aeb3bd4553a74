#include "poissonlab/ideal.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace poissonlab {

namespace {

bool lt_coprime(const ExpVec& a, const ExpVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0) return false;
    return true;
}

Poly make_monic(const Poly& p) {
    if (p.is_zero()) return p;
    return p * (Rational(1) / p.leading_term().second);
}

Poly s_polynomial(const Poly& f, const Poly& g) {
    const auto& [ef, cf] = f.leading_term();
    const auto& [eg, cg] = g.leading_term();
    ExpVec l = monomial_lcm(ef, eg);
    Poly mf = Poly::monomial(f.context(), monomial_quotient(l, ef), Rational(1) / cf);
    Poly mg = Poly::monomial(g.context(), monomial_quotient(l, eg), Rational(1) / cg);
    return f * mf - g * mg;
}

}  // namespace

Poly normal_form_against(const Poly& p, const std::vector<Poly>& basis) {
    Poly rem = Poly::zero(p.context());
    Poly h = p;
    while (!h.is_zero()) {
        const auto& [e, c] = h.leading_term();
        const Poly* divisor = nullptr;
        for (const Poly& g : basis) {
            if (!g.is_zero() && monomial_divides(g.leading_term().first, e)) {
                divisor = &g;
                break;
            }
        }
        if (divisor == nullptr) {
            Poly t = Poly::monomial(p.context(), e, c);
            rem = rem + t;
            h = h - t;
        } else {
            const auto& [eg, cg] = divisor->leading_term();
            Poly q = Poly::monomial(p.context(), monomial_quotient(e, eg), c / cg);
            h = h - q * (*divisor);
        }
    }
    return rem;
}

std::vector<Poly> reduced_groebner_basis(const ContextPtr& ctx,
                                         std::vector<Poly> generators) {
    std::vector<Poly> basis;
    for (auto& g : generators) {
        if (g.is_zero()) continue;
        if (!g.is_parameter_free())
            throw UnspecializedParameter(
                "Groebner basis requested for generators with unspecialized parameters; "
                "supply values via a 'specialize:' section or --specialize (KEY=VAL or "
                "'generic')");
        basis.push_back(make_monic(g));
    }

    std::deque<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) pairs.emplace_back(i, j);

    while (!pairs.empty()) {
        auto [i, j] = pairs.front();
        pairs.pop_front();
        // Buchberger's first criterion
        if (lt_coprime(basis[i].leading_term().first, basis[j].leading_term().first))
            continue;
        Poly s = normal_form_against(s_polynomial(basis[i], basis[j]), basis);
        if (s.is_zero()) continue;
        s = make_monic(s);
        for (std::size_t k = 0; k < basis.size(); ++k) pairs.emplace_back(k, basis.size());
        basis.push_back(std::move(s));
    }

    // minimalize: drop elements whose leading monomial is divisible by
    // another retained leading monomial
    std::vector<Poly> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (i == j) continue;
            const ExpVec& li = basis[i].leading_term().first;
            const ExpVec& lj = basis[j].leading_term().first;
            if (monomial_divides(lj, li) && (li != lj || j < i)) {
                redundant = true;
                break;
            }
        }
        if (!redundant) minimal.push_back(basis[i]);
    }

    // auto-reduce tails
    std::vector<Poly> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Poly> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        reduced.push_back(make_monic(normal_form_against(minimal[i], others)));
    }

    TermOrder order{ctx->num_vars()};
    std::sort(reduced.begin(), reduced.end(), [&](const Poly& a, const Poly& b) {
        return order(a.leading_term().first, b.leading_term().first);
    });
    return reduced;
}

IdealGB::IdealGB(ContextPtr ctx, std::vector<Poly> generators, SpecMap specialization)
    : ctx_(std::move(ctx)),
      generators_(std::move(generators)),
      specialization_(std::move(specialization)),
      cache_(std::make_shared<Cache>()) {
    for (const auto& g : generators_)
        require_same_context(ctx_, g.context(), "ideal generators");
}

const std::vector<Poly>& IdealGB::basis() const {
    std::call_once(cache_->flag, [this] {
        std::vector<Poly> gens;
        gens.reserve(generators_.size());
        for (const auto& g : generators_)
            gens.push_back(g.specialize(specialization_, /*require_all=*/false));
        cache_->basis = reduced_groebner_basis(ctx_, std::move(gens));
    });
    return cache_->basis;
}

Poly IdealGB::normal_form(const Poly& p) const {
    require_same_context(ctx_, p.context(), "normal form");
    return normal_form_against(p.specialize(specialization_, /*require_all=*/false),
                               basis());
}

bool IdealGB::contains(const Poly& p) const { return normal_form(p).is_zero(); }

bool IdealGB::is_unit_ideal() const {
    const auto& b = basis();
    return b.size() == 1 && b.front().is_constant() && !b.front().is_zero();
}

bool IdealGB::is_zero_ideal() const { return basis().empty(); }

int IdealGB::krull_dimension() const {
    const auto& b = basis();
    const std::size_t n = ctx_->num_vars();
    if (n >= 26)
        throw Error("combinatorial dimension computation supports at most 25 variables");
    std::vector<unsigned> supports;
    supports.reserve(b.size());
    for (const Poly& g : b) {
        unsigned mask = 0;
        const ExpVec& e = g.leading_term().first;
        for (std::size_t i = 0; i < n; ++i)
            if (e[i] > 0) mask |= 1u << i;
        supports.push_back(mask);
    }
    int best = -1;
    for (unsigned long s = 0; s < (1ul << n); ++s) {
        bool ok = true;
        for (unsigned m : supports) {
            if ((m & ~s) == 0) {  // support contained in s
                ok = false;
                break;
            }
        }
        if (ok) best = std::max(best, __builtin_popcountl(s));
    }
    return best;
}

// ---------------------------------------------------------------------------
// free-module Groebner machinery (position over term)

namespace {

struct ModKey {
    std::size_t pos;
    ExpVec mono;
};

struct ModLess {
    TermOrder term_order;
    bool operator()(const ModKey& a, const ModKey& b) const {
        if (a.pos != b.pos) return a.pos > b.pos;  // earlier position is larger
        return term_order(a.mono, b.mono);
    }
};

using ModMap = std::map<ModKey, Rational, ModLess>;

struct ModElem {
    ModMap terms;
    std::vector<Poly> rep;  // expression over the original generators

    bool is_zero() const { return terms.empty(); }
    const std::pair<const ModKey, Rational>& leading() const { return *terms.rbegin(); }
};

void mod_add_term(ModMap& m, const ModKey& k, const Rational& c) {
    auto [it, inserted] = m.emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) m.erase(it);
    }
}

// elem -= c * x^mono * g
void mod_axpy(ModElem& elem, const Rational& c, const ExpVec& mono, const ModElem& g,
              const ContextPtr& ctx) {
    ExpVec shifted(mono.size());
    for (const auto& [k, v] : g.terms) {
        for (std::size_t i = 0; i < mono.size(); ++i) shifted[i] = k.mono[i] + mono[i];
        mod_add_term(elem.terms, ModKey{k.pos, shifted}, -c * v);
    }
    Poly scale = Poly::monomial(ctx, mono, c);
    for (std::size_t i = 0; i < elem.rep.size(); ++i)
        elem.rep[i] = elem.rep[i] - scale * g.rep[i];
}

// full reduction; returns remainder (rep accumulates the quotients)
ModElem mod_reduce(ModElem v, const std::vector<ModElem>& basis, const ContextPtr& ctx) {
    ModMap irreducible(v.terms.key_comp());
    while (!v.is_zero()) {
        const auto& [lk, lc] = v.leading();
        const ModElem* divisor = nullptr;
        for (const ModElem& g : basis) {
            const auto& [gk, gc] = g.leading();
            if (gk.pos == lk.pos && monomial_divides(gk.mono, lk.mono)) {
                divisor = &g;
                break;
            }
        }
        if (divisor == nullptr) {
            mod_add_term(irreducible, lk, lc);
            v.terms.erase(std::prev(v.terms.end()));
        } else {
            const auto& [gk, gc] = divisor->leading();
            mod_axpy(v, lc / gc, monomial_quotient(lk.mono, gk.mono), *divisor, ctx);
        }
    }
    v.terms = std::move(irreducible);
    return v;
}

}  // namespace

ModuleMembership module_membership(const VectorOfPolys& v,
                                   const std::vector<VectorOfPolys>& gens) {
    if (v.empty()) throw LengthMismatch("module membership over an empty vector");
    const ContextPtr& ctx = v.front().context();
    const std::size_t n = v.size();
    for (const auto& p : v) require_same_context(ctx, p.context(), "module membership");
    for (const auto& g : gens) {
        if (g.size() != n)
            throw LengthMismatch("module generator has wrong length");
        for (const auto& p : g) require_same_context(ctx, p.context(), "module membership");
    }
    for (const auto& p : v)
        if (!p.is_parameter_free())
            throw UnspecializedParameter("module membership requires specialized input");
    for (const auto& g : gens)
        for (const auto& p : g)
            if (!p.is_parameter_free())
                throw UnspecializedParameter("module membership requires specialized generators");

    ModLess less{TermOrder{ctx->num_vars()}};
    auto to_elem = [&](const VectorOfPolys& w, std::size_t gen_index,
                       std::size_t num_gens) {
        ModElem e{ModMap(less), std::vector<Poly>(num_gens, Poly::zero(ctx))};
        for (std::size_t p = 0; p < w.size(); ++p)
            for (const auto& [mono, c] : w[p].terms())
                e.terms.emplace(ModKey{p, mono}, c);
        if (gen_index < num_gens)
            e.rep[gen_index] = Poly::constant(ctx, Rational(1));
        return e;
    };

    std::vector<ModElem> basis;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        ModElem e = to_elem(gens[i], i, gens.size());
        if (!e.is_zero()) basis.push_back(std::move(e));
    }

    std::deque<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) pairs.emplace_back(i, j);

    while (!pairs.empty()) {
        auto [i, j] = pairs.front();
        pairs.pop_front();
        const auto& [ki, ci] = basis[i].leading();
        const auto& [kj, cj] = basis[j].leading();
        if (ki.pos != kj.pos) continue;  // S-pairs only within one position
        ExpVec l = monomial_lcm(ki.mono, kj.mono);
        ModElem s{ModMap(less), std::vector<Poly>(gens.size(), Poly::zero(ctx))};
        mod_axpy(s, Rational(-1) / ci, monomial_quotient(l, ki.mono), basis[i], ctx);
        mod_axpy(s, Rational(1) / cj, monomial_quotient(l, kj.mono), basis[j], ctx);
        ModElem r = mod_reduce(std::move(s), basis, ctx);
        if (r.is_zero()) continue;
        for (std::size_t k = 0; k < basis.size(); ++k) pairs.emplace_back(k, basis.size());
        basis.push_back(std::move(r));
    }

    ModElem target = to_elem(v, gens.size(), gens.size());
    ModElem rem = mod_reduce(std::move(target), basis, ctx);

    ModuleMembership result;
    result.member = rem.is_zero();
    if (result.member) {
        // v - sum q_g * g reduced to zero, so v = -sum(rep) over the gens
        result.witness.reserve(gens.size());
        for (const auto& q : rem.rep) result.witness.push_back(-q);
    }
    return result;
}

}  // namespace poissonlab
