#ifndef POISSONLAB_CONTEXT_HPP
#define POISSONLAB_CONTEXT_HPP

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "poissonlab/errors.hpp"

namespace poissonlab {

/// Fixed chart: an ordered list of coordinate variables x1..xn plus an
/// ordered list of transcendental parameter symbols. Exponent vectors of
/// every Poly over the chart have one slot per variable followed by one
/// slot per parameter. Contexts are immutable and shared.
class VarContext {
public:
    struct Symbol {
        bool is_param;
        std::size_t index;  // into vars() or params()
    };

    static std::shared_ptr<const VarContext> make(std::vector<std::string> vars,
                                                  std::vector<std::string> params = {});

    const std::vector<std::string>& vars() const { return vars_; }
    const std::vector<std::string>& params() const { return params_; }
    std::size_t num_vars() const { return vars_.size(); }
    std::size_t num_params() const { return params_.size(); }
    std::size_t num_slots() const { return vars_.size() + params_.size(); }

    std::optional<Symbol> find(const std::string& name) const;

    const std::string& var_name(std::size_t i) const { return vars_.at(i); }
    const std::string& param_name(std::size_t i) const { return params_.at(i); }

    bool same_as(const VarContext& other) const {
        return this == &other || (vars_ == other.vars_ && params_ == other.params_);
    }

private:
    VarContext(std::vector<std::string> vars, std::vector<std::string> params)
        : vars_(std::move(vars)), params_(std::move(params)) {}

    std::vector<std::string> vars_;
    std::vector<std::string> params_;
    std::unordered_map<std::string, Symbol> lookup_;
};

using ContextPtr = std::shared_ptr<const VarContext>;

/// True for names the expression grammar reserves for derivations (d3)
/// and coordinate differentials (dx3).
bool is_reserved_symbol_name(const std::string& name);

inline void require_same_context(const ContextPtr& a, const ContextPtr& b,
                                 const char* where) {
    if (!a || !b || !a->same_as(*b))
        throw ContextMismatch(std::string(where) + ": operands use different variable contexts");
}

}  // namespace poissonlab

#endif
