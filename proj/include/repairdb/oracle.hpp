#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "repairdb/composer.hpp"
#include "repairdb/formula.hpp"
#include "repairdb/transform.hpp"

namespace repairdb {
namespace oracle {

/// The structure THREE: truth order f <= Top <= t, knowledge order with
/// Top on top and t, f incomparable. Designated values are t and Top.
enum class TruthValue { False, Both, True }; // enumerator order = truth order

bool designated(TruthValue v);
TruthValue and3(TruthValue a, TruthValue b); // meet of the truth order
TruthValue or3(TruthValue a, TruthValue b);  // join of the truth order
TruthValue not3(TruthValue v);               // truth-order involution
TruthValue knowledgeJoin(TruthValue a, TruthValue b); // k-order join
bool leqK(TruthValue a, TruthValue b);

/// Total valuation over a fixed finite atom universe.
struct Valuation {
    std::map<Atom, TruthValue> atoms;

    TruthValue at(const Atom& a) const;
    bool twoValued() const;
    /// Atoms valued Top.
    std::vector<Atom> topSet() const;
    /// Atoms valued t (two-valued use).
    std::vector<Atom> trueSet() const;
    bool operator==(const Valuation& other) const {
        return atoms == other.atoms;
    }
    bool operator<(const Valuation& other) const { return atoms < other.atoms; }
    std::string toString() const;
};

/// All ground atoms of the given predicate/arity pairs over the constants,
/// in deterministic order.
std::vector<Atom> atomUniverse(
    const std::map<std::string, std::size_t>& predicates,
    const std::vector<std::string>& constants);

/// Predicate/arity pairs occurring in facts and constraints.
std::map<std::string, std::size_t> declaredPredicates(
    const std::vector<Atom>& facts, const std::vector<FormulaPtr>& constraints);

/// Minimal Herbrand model: facts true, everything else in universe false.
Valuation herbrandMinModel(const std::vector<Atom>& facts,
                           const std::vector<Atom>& universe);

/// Three-valued evaluation; quantifiers range over domain; equality and
/// integer comparisons between ground terms evaluate by unique names.
TruthValue eval3(const Valuation& v, const FormulaPtr& f,
                 const std::vector<std::string>& domain);

/// All two-valued models of every formula in ics over the universe.
/// Throws std::invalid_argument when the universe exceeds the cap.
std::vector<Valuation> twoValuedModels(const std::vector<FormulaPtr>& ics,
                                       const std::vector<Atom>& universe,
                                       const std::vector<std::string>& domain,
                                       std::size_t cap = 16);

/// (M^t \ D, D \ M^t) per the model-to-repair correspondence.
Repair repairFromModel(const Valuation& m, const std::vector<Atom>& facts);

/// Pointwise knowledge join of two two-valued valuations.
Valuation knowledgeJoin(const Valuation& hd, const Valuation& m);

/// Symmetric difference of ground fact sets.
std::vector<Atom> dist(const std::vector<Atom>& d1,
                       const std::vector<Atom>& d2);

enum class OracleCriterion { Inclusion, Cardinality };

struct OracleInput {
    std::vector<Atom> facts;
    std::vector<FormulaPtr> constraints;
    /// Domain constants; when empty, the active domain of facts/constraints.
    std::vector<std::string> domain;
    std::size_t cap = 16;
};

/// The generators H^D (+) M for M ranging over the two-valued models,
/// restricted to the k-minimal ones.
std::vector<Valuation> mdbMinElements(const OracleInput& input);

/// All repairs (no preference filter), via direct subset enumeration.
std::vector<Repair> allRepairsOracle(const OracleInput& input);

/// Preferred repairs via the maximally-consistent-model route, cross-checked
/// against direct subset enumeration; throws std::logic_error on mismatch.
std::vector<Repair> preferredRepairsOracle(const OracleInput& input,
                                           OracleCriterion criterion);

/// True when the set of true ground atoms, completed through the theory's
/// auxiliary clauses, violates no denial over the domain.
bool satisfiesDenialTheory(const std::vector<Atom>& trueAtoms,
                           const DenialTheory& theory,
                           const std::vector<std::string>& domain);

} // namespace oracle
} // namespace repairdb
