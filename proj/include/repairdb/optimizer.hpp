#pragma once

#include <optional>
#include <vector>

#include "repairdb/composer.hpp"
#include "repairdb/engine.hpp"

namespace repairdb {

enum class Criterion { Inclusion, Cardinality };

/// Branch-and-bound frontier. Cardinality mode tracks the best abduced-set
/// size seen so far (never increases); inclusion mode keeps an antichain of
/// ground solutions under componentwise subset dominance.
struct Frontier {
    std::optional<std::size_t> bestBound;
    std::vector<Repair> paretoSet;
};

/// Keep/prune decision for a partial abduced set in cardinality mode:
/// prune iff |delta| strictly exceeds the bound (equality kept, to collect
/// every co-optimal solution).
bool pruneCardinality(const std::vector<Atom>& delta, const Frontier& f);

/// Keep/prune decision in inclusion mode: prune when some frontier element
/// is a proper subset of the ground projection of delta and delta has no
/// non-ground members (a non-ground member might still be constrained away
/// from the dominating set, so it blocks pruning).
bool pruneInclusion(const std::vector<Atom>& delta, const Frontier& f);

/// r1 <= r2 under componentwise set inclusion of inserts and retracts.
bool dominates(const Repair& r1, const Repair& r2);

/// A repair is preferred iff no member of all is strictly below it under
/// the criterion's pre-order.
bool isPreferred(const Repair& repair, const std::vector<Repair>& all,
                 Criterion criterion);

/// Renames a repair's free variables to _V1, _V2, ... in first-occurrence
/// order and sorts its components, so co-optimal duplicates reached along
/// different derivations compare equal.
Repair canonicalizeRepair(const Repair& r);

struct PreferredResult {
    std::vector<Repair> repairs; // canonical, sorted, preferred only
    SearchStatus status = SearchStatus::Complete;
    DerivationStats stats;
    std::vector<FlounderRecord> flounderings;
    /// Every distinct repair seen before preference filtering (canonical).
    std::vector<Repair> allSolutions;
};

/// Runs the derivation for the empty query under a branch-and-bound filter
/// and returns the preferred repairs under the given criterion.
PreferredResult preferredRepairs(const AbductiveTheory& theory,
                                 Criterion criterion,
                                 const DeriveOptions& options = {});

} // namespace repairdb
