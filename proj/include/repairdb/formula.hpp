#pragma once

#include <memory>
#include <string>
#include <vector>

#include "repairdb/term.hpp"

namespace repairdb {

/// First-order integrity-constraint formula: atoms, equality atoms, and the
/// connectives ~, &, |, ->, forall, exists. Shared immutable nodes.
class Formula {
public:
    enum class Kind { Atom, Equal, Not, And, Or, Implies, Forall, Exists };
    using Ptr = std::shared_ptr<const Formula>;

    static Ptr atom(Atom a);
    static Ptr equal(Term lhs, Term rhs);
    static Ptr negate(Ptr f);
    static Ptr conj(Ptr lhs, Ptr rhs);
    static Ptr disj(Ptr lhs, Ptr rhs);
    static Ptr implies(Ptr lhs, Ptr rhs);
    static Ptr forall(std::string var, Ptr body);
    static Ptr exists(std::string var, Ptr body);

    Kind kind() const { return kind_; }
    const Atom& theAtom() const { return atom_; }
    const Term& lhsTerm() const { return lhs_; }
    const Term& rhsTerm() const { return rhs_; }
    const Ptr& left() const { return a_; }
    const Ptr& right() const { return b_; }
    const Ptr& child() const { return a_; }
    const std::string& var() const { return var_; }

    /// Free variables, in first-occurrence order.
    std::vector<std::string> freeVars() const;

    std::string toString() const;

private:
    Formula() : lhs_(Term::constant("")), rhs_(Term::constant("")) {}

    Kind kind_ = Kind::Atom;
    Atom atom_;
    Term lhs_, rhs_; // Equal
    Ptr a_, b_;
    std::string var_; // quantifiers
};

using FormulaPtr = Formula::Ptr;

/// Universal closure over the formula's free variables.
FormulaPtr universalClosure(const FormulaPtr& f);

} // namespace repairdb
