#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "repairdb/clause.hpp"
#include "repairdb/eqstore.hpp"
#include "repairdb/formula.hpp"
#include "repairdb/transform.hpp"

namespace repairdb {

/// Timestamped database modification (timestamp composer only).
struct DatabaseEvent {
    Atom fact;
    std::int64_t time = 0;
    bool isAdd = true;
};

struct DatabaseInstance {
    std::string sourceId;
    std::vector<Atom> facts; // ground, set semantics
    std::vector<DatabaseEvent> events;
};

/// The abductive meta-theory T = (P, A, IC'): program clauses, abducible
/// predicate names, and denial constraints. Immutable once composed.
struct AbductiveTheory {
    std::vector<Clause> program;
    std::set<std::string> abducibles;
    std::vector<Denial> constraints;
    /// Predicates that are defined (possibly by zero clauses) rather than
    /// abducible or built-in.
    std::set<std::string> defined;
    /// Constants of the active domain, in deterministic order.
    std::vector<std::string> activeDomain;

    bool isAbducible(const std::string& predicate) const {
        return abducibles.count(predicate) > 0;
    }
};

/// Repair candidate: fact sets to insert and retract, possibly non-ground
/// with residual disequalities over their free variables.
struct Repair {
    std::vector<Atom> insert;
    std::vector<Atom> retract;
    std::vector<Disequality> residual;

    bool ground() const;
    std::vector<std::string> freeVars() const;
    std::string toString() const;
    bool operator==(const Repair& other) const;
    bool operator<(const Repair& other) const;
};

struct RepairedDatabase {
    std::vector<Atom> facts;
    std::vector<FormulaPtr> constraints;
};

/// Base composer: db/fact meta-program over the union of the instances,
/// with abducibles {insert, retract}. Expects fact-level-rewritten denials.
AbductiveTheory compose(const std::vector<DatabaseInstance>& databases,
                        const DenialTheory& ics);

/// Source-identity composer: db/2 and fact/2, inserts tagged "composer",
/// plus trust facts, the more_trusted rule, and a trust-preference denial
/// specialized to each functional-dependency-shaped constraint.
AbductiveTheory composeWithSources(
    const std::vector<DatabaseInstance>& databases, const DenialTheory& ics,
    const std::map<std::string, std::int64_t>& trust);

/// Event-calculus composer: holds_at/clipped/add/del over add_db and del_db
/// events, abducibles insert/2 and retract/2; constraints fire on event
/// occurrence only.
AbductiveTheory composeWithTimestamps(
    const std::vector<DatabaseInstance>& databases, const DenialTheory& ics);

/// Strips the insert/retract wrappers from an abduced set and carries over
/// the disequalities constraining the solution's free variables.
Repair solutionToRepair(const std::vector<Atom>& delta,
                        const EqualityStore& store);

/// (D u Insert \ Retract, IC) for a grounding that satisfies the repair's
/// residual constraints; throws std::invalid_argument otherwise.
RepairedDatabase applyRepair(const std::vector<DatabaseInstance>& databases,
                             const Repair& repair,
                             const Substitution& grounding,
                             const std::vector<FormulaPtr>& constraints);

bool isNonRecursive(const std::vector<Clause>& program);

/// Union of the instances' facts, deduplicated and sorted.
std::vector<Atom> unionFacts(const std::vector<DatabaseInstance>& databases);

/// Constants appearing in the instances and constraint terms.
std::vector<std::string> activeDomainOf(
    const std::vector<DatabaseInstance>& databases, const DenialTheory& ics);

} // namespace repairdb
