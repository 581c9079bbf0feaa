#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "repairdb/composer.hpp"
#include "repairdb/eqstore.hpp"

namespace repairdb {

/// A goal formula: either a positive conjunction of literals or a denial.
/// Conjunction goals never carry universal variables.
struct GoalFormula {
    bool isDenial = false;
    std::vector<std::string> universalVars;
    std::vector<Literal> body;

    std::string toString() const;
};

/// A resolved-upon denial retained for future abductions: the abducible
/// atom it was resolved against plus the remaining body literals.
struct DeltaStarEntry {
    std::vector<std::string> universalVars;
    Atom atom;
    std::vector<Literal> rest;

    std::string toString() const;
};

/// The store (Delta, Delta*, E) threaded through a derivation.
struct Store {
    std::vector<Atom> delta;
    std::vector<DeltaStarEntry> deltaStar;
    EqualityStore equalities;
};

struct State {
    std::vector<GoalFormula> goals;
    Store store;
};

/// A solution state: empty goal set, consistent store.
struct SolutionState {
    std::vector<Atom> delta; // solved form applied
    EqualityStore equalities;
};

struct FlounderRecord {
    std::string goal;
};

enum class SearchStatus { Complete, BudgetExhausted };

struct DerivationStats {
    long steps = 0;
    long branches = 0;
    long pruned = 0;
};

struct DerivationResult {
    std::vector<SolutionState> solutions;
    std::vector<FlounderRecord> flounderings;
    SearchStatus status = SearchStatus::Complete;
    DerivationStats stats;
};

/// Branch-and-bound hook; the optimizer implements it. keep() is consulted
/// whenever the abduced set grows, onSolution() on every solution state.
class SearchFilter {
public:
    virtual ~SearchFilter() = default;
    virtual bool keep(const std::vector<Atom>& delta,
                      const EqualityStore& equalities) = 0;
    virtual void onSolution(const SolutionState& solution) = 0;
};

struct DeriveOptions {
    long maxSteps = 500000;
    int maxDelta = 32;
    enum class Strategy { DeterministicFirst, LeftFirst } strategy =
        Strategy::DeterministicFirst;
    bool reuseFirst = true;
    std::ostream* trace = nullptr; // replay log sink
    SearchFilter* filter = nullptr;
};

/// Runs the abductive derivation for a query (conjunction of literals;
/// empty = the query 'true') and emits every solution state reachable
/// within budget, backtracking over all nondeterministic choices.
DerivationResult derive(const AbductiveTheory& theory,
                        const std::vector<Literal>& query,
                        const DeriveOptions& options = {});

/// All groundings of a solution's free variables over the given constants
/// plus one fresh constant, filtered by the solution's disequalities.
std::vector<Substitution> answerSubstitutions(
    const SolutionState& solution, const std::vector<std::string>& domain,
    bool includeFreshConstant = true);

} // namespace repairdb
