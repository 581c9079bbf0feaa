#pragma once

#include <string>
#include <vector>

#include "repairdb/subst.hpp"
#include "repairdb/term.hpp"

namespace repairdb {

/// A quantified disequality forall(universalVars). lhs != rhs. Variables of
/// the two terms outside universalVars are free (Skolem placeholders).
struct Disequality {
    std::vector<std::string> universalVars;
    Term lhs;
    Term rhs;

    std::string toString() const;
    bool operator==(const Disequality& other) const;
};

/// The constraint set E of a derivation: equalities kept in solved form via
/// unification, disequalities kept in a simplified normal form and re-checked
/// on every binding. Once inconsistent, a store stays inconsistent.
class EqualityStore {
public:
    bool consistent() const { return consistent_; }
    const Substitution& solved() const { return solved_; }
    const std::vector<Disequality>& disequalities() const {
        return disequalities_;
    }

    /// Adds s = t. Returns false (and marks the store inconsistent) when the
    /// equality contradicts the store; otherwise the solved form is extended
    /// and all disequalities are re-simplified.
    bool addEquality(const Term& s, const Term& t);

    /// Adds forall(universalVars). s != t, simplified eagerly: trivially true
    /// entries are dropped, violated ones make the store inconsistent.
    bool addDisequality(std::vector<std::string> universalVars, const Term& s,
                        const Term& t);

    /// True when every disequality rejects the given grounding of its free
    /// variables (universal variables range over all ground terms).
    bool satisfiedBy(const Substitution& grounding) const;

    std::string toString() const;

private:
    bool insertSimplified(std::vector<std::string> universalVars, Term s,
                          Term t);

    Substitution solved_;
    std::vector<Disequality> disequalities_;
    bool consistent_ = true;
};

/// Bottom-up constant folding of built-in integer arithmetic ("+", "-").
Term foldArith(const Term& t);

} // namespace repairdb
