#pragma once

#include <string>
#include <vector>

#include "repairdb/subst.hpp"
#include "repairdb/term.hpp"

namespace repairdb {

/// Definite clause head <- l1 & ... & ln. Body literals may be equality
/// literals (predicate "=") or built-in comparisons over ground integers.
struct Clause {
    Atom head;
    std::vector<Literal> body;

    std::string toString() const;
};

/// Headless rule forall(universalVars). <- body. Body variables outside
/// universalVars are free placeholders for objects of unspecified identity.
struct Denial {
    std::vector<std::string> universalVars;
    std::vector<Literal> body;

    std::vector<std::string> freeVars() const;
    std::string toString() const;
    bool operator==(const Denial& other) const;
};

/// Equality literal helper (predicate "=", two arguments).
Literal eqLiteral(Term lhs, Term rhs);
Literal neqLiteral(Term lhs, Term rhs);
bool isEqualityLiteral(const Literal& l);

/// Applies a substitution to a denial body. Binding a universal variable of
/// the denial is a programming error.
Denial applyToDenial(const Substitution& sub, const Denial& d);

} // namespace repairdb
