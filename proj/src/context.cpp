#include "poissonlab/context.hpp"

#include <cctype>

namespace poissonlab {

bool is_reserved_symbol_name(const std::string& name) {
    // d<digits> and dx<digits> are derivation / differential tokens.
    auto all_digits = [](const std::string& s, std::size_t from) {
        if (from >= s.size()) return false;
        for (std::size_t i = from; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    if (name.size() >= 2 && name[0] == 'd' && all_digits(name, 1)) return true;
    if (name.size() >= 3 && name[0] == 'd' && name[1] == 'x' && all_digits(name, 2)) return true;
    return false;
}

std::shared_ptr<const VarContext> VarContext::make(std::vector<std::string> vars,
                                                   std::vector<std::string> params) {
    auto ctx = std::shared_ptr<VarContext>(
        new VarContext(std::move(vars), std::move(params)));
    for (std::size_t i = 0; i < ctx->vars_.size(); ++i) {
        const auto& name = ctx->vars_[i];
        if (name.empty()) throw SemanticError(0, 0, "empty variable name");
        if (is_reserved_symbol_name(name))
            throw SemanticError(0, 0, "variable name '" + name + "' is reserved for derivations");
        if (!ctx->lookup_.emplace(name, Symbol{false, i}).second)
            throw SemanticError(0, 0, "duplicate symbol name '" + name + "'");
    }
    for (std::size_t i = 0; i < ctx->params_.size(); ++i) {
        const auto& name = ctx->params_[i];
        if (name.empty()) throw SemanticError(0, 0, "empty parameter name");
        if (is_reserved_symbol_name(name))
            throw SemanticError(0, 0, "parameter name '" + name + "' is reserved for derivations");
        if (!ctx->lookup_.emplace(name, Symbol{true, i}).second)
            throw SemanticError(0, 0, "duplicate symbol name '" + name + "'");
    }
    return ctx;
}

std::optional<VarContext::Symbol> VarContext::find(const std::string& name) const {
    auto it = lookup_.find(name);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

}  // namespace poissonlab
