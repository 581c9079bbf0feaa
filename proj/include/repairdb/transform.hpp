#pragma once

#include <set>
#include <string>
#include <vector>

#include "repairdb/clause.hpp"
#include "repairdb/formula.hpp"

namespace repairdb {

/// Result of converting integrity constraints to denial form: the denials
/// plus a non-recursive auxiliary program defining any predicates introduced
/// for quantifiers that cannot live inside a single denial.
struct DenialTheory {
    std::vector<Denial> denials;
    std::vector<Clause> auxiliaryClauses;
    std::set<std::string> freshPredicates;
};

/// Converts first-order integrity constraints to denial form. Names of
/// introduced predicates are deterministic in input order (aux_1, aux_2, ...
/// suffixed with the defining predicate when the definition is one positive
/// literal).
class DenialTransformer {
public:
    /// Transforms one closed constraint, accumulating into the theory.
    void transform(const FormulaPtr& ic, DenialTheory& out);

    DenialTheory transformAll(const std::vector<FormulaPtr>& ics);

private:
    int counter_ = 0;
};

DenialTheory lloydTopor(const std::vector<FormulaPtr>& ics);

/// Ranges floundering-prone quantified variables over a unary domain
/// predicate; safe formulas are returned unchanged.
FormulaPtr guardUnsafe(const FormulaPtr& ic,
                       const std::string& domainPredicate);

/// Replaces every user-predicate atom p(t) in denial bodies and auxiliary
/// clause bodies by fact(p(t)). Equality literals, built-ins, the domain
/// predicate, and the theory's fresh predicates are untouched.
DenialTheory rewriteFactLevel(const DenialTheory& theory,
                              const std::string& domainPredicate = "dom");

/// Reserved predicate names of the composer meta-program.
bool isReservedPredicate(const std::string& predicate);

} // namespace repairdb
