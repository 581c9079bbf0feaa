#pragma once

#include <map>
#include <optional>
#include <string>

#include "repairdb/term.hpp"

namespace repairdb {

/// Idempotent substitution: no bound variable occurs in any right-hand side.
class Substitution {
public:
    Substitution() = default;

    bool empty() const { return bindings_.empty(); }
    std::size_t size() const { return bindings_.size(); }

    const std::map<std::string, Term>& bindings() const { return bindings_; }
    const Term* lookup(const std::string& var) const;

    Term apply(const Term& t) const;
    Atom apply(const Atom& a) const;
    Literal apply(const Literal& l) const;

    /// Extends this substitution with var := term, rewriting existing
    /// right-hand sides so idempotence is preserved. The caller guarantees
    /// the occurs-check (term does not contain var after applying *this).
    void bind(const std::string& var, const Term& term);

    /// this followed by other, as a single idempotent substitution.
    Substitution composeWith(const Substitution& other) const;

    std::string toString() const;

private:
    std::map<std::string, Term> bindings_;
};

/// Martelli-Montanari unification with occurs-check; returns an idempotent
/// most general unifier, or nothing when the terms do not unify. Distinct
/// constants never unify (unique names).
std::optional<Substitution> unify(const Term& s, const Term& t);
std::optional<Substitution> unifyAll(const std::vector<Term>& ss,
                                     const std::vector<Term>& ts);

} // namespace repairdb
