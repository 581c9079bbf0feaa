#include "repairdb/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace repairdb {
namespace oracle {

bool designated(TruthValue v) { return v != TruthValue::False; }

TruthValue and3(TruthValue a, TruthValue b) { return std::min(a, b); }
TruthValue or3(TruthValue a, TruthValue b) { return std::max(a, b); }

TruthValue not3(TruthValue v) {
    switch (v) {
    case TruthValue::True: return TruthValue::False;
    case TruthValue::False: return TruthValue::True;
    case TruthValue::Both: return TruthValue::Both;
    }
    return v;
}

TruthValue knowledgeJoin(TruthValue a, TruthValue b) {
    if (a == b) return a;
    return TruthValue::Both; // t (+) f = Top; x (+) Top = Top
}

bool leqK(TruthValue a, TruthValue b) {
    return a == b || b == TruthValue::Both;
}

TruthValue Valuation::at(const Atom& a) const {
    auto it = atoms.find(a);
    return it == atoms.end() ? TruthValue::False : it->second;
}

bool Valuation::twoValued() const {
    for (const auto& [a, v] : atoms)
        if (v == TruthValue::Both) return false;
    return true;
}

std::vector<Atom> Valuation::topSet() const {
    std::vector<Atom> out;
    for (const auto& [a, v] : atoms)
        if (v == TruthValue::Both) out.push_back(a);
    return out;
}

std::vector<Atom> Valuation::trueSet() const {
    std::vector<Atom> out;
    for (const auto& [a, v] : atoms)
        if (v == TruthValue::True) out.push_back(a);
    return out;
}

std::string Valuation::toString() const {
    std::string out = "{";
    bool first = true;
    for (const auto& [a, v] : atoms) {
        if (!first) out += ", ";
        first = false;
        out += a.toString();
        out += ":";
        out += v == TruthValue::True ? "t"
               : v == TruthValue::False ? "f"
                                        : "T";
    }
    out += "}";
    return out;
}

std::vector<Atom> atomUniverse(
    const std::map<std::string, std::size_t>& predicates,
    const std::vector<std::string>& constants) {
    std::vector<Atom> out;
    for (const auto& [pred, arity] : predicates) {
        if (arity > 0 && constants.empty()) continue;
        std::vector<std::size_t> idx(arity, 0);
        for (;;) {
            Atom a;
            a.predicate = pred;
            for (std::size_t i = 0; i < arity; ++i)
                a.args.push_back(Term::constant(constants[idx[i]]));
            out.push_back(std::move(a));
            if (arity == 0) break;
            std::size_t i = 0;
            while (i < arity && ++idx[i] == constants.size()) idx[i++] = 0;
            if (i == arity) break;
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

void collectPredicates(const FormulaPtr& f,
                       std::map<std::string, std::size_t>& out) {
    if (!f) return;
    switch (f->kind()) {
    case Formula::Kind::Atom: {
        const Atom& a = f->theAtom();
        if (isBuiltinComparison(a.predicate)) return;
        auto [it, inserted] = out.emplace(a.predicate, a.args.size());
        if (!inserted && it->second != a.args.size())
            throw std::invalid_argument("predicate " + a.predicate +
                                        " used with conflicting arities");
        return;
    }
    case Formula::Kind::Equal:
        return;
    case Formula::Kind::Not:
        collectPredicates(f->child(), out);
        return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
        collectPredicates(f->left(), out);
        collectPredicates(f->right(), out);
        return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
        collectPredicates(f->child(), out);
        return;
    }
}

FormulaPtr substitute(const FormulaPtr& f, const std::string& var,
                      const Term& value) {
    Substitution one;
    one.bind(var, value);
    switch (f->kind()) {
    case Formula::Kind::Atom:
        return Formula::atom(one.apply(f->theAtom()));
    case Formula::Kind::Equal:
        return Formula::equal(one.apply(f->lhsTerm()), one.apply(f->rhsTerm()));
    case Formula::Kind::Not:
        return Formula::negate(substitute(f->child(), var, value));
    case Formula::Kind::And:
        return Formula::conj(substitute(f->left(), var, value),
                             substitute(f->right(), var, value));
    case Formula::Kind::Or:
        return Formula::disj(substitute(f->left(), var, value),
                             substitute(f->right(), var, value));
    case Formula::Kind::Implies:
        return Formula::implies(substitute(f->left(), var, value),
                                substitute(f->right(), var, value));
    case Formula::Kind::Forall:
        if (f->var() == var) return f; // shadowed
        return Formula::forall(f->var(), substitute(f->child(), var, value));
    case Formula::Kind::Exists:
        if (f->var() == var) return f;
        return Formula::exists(f->var(), substitute(f->child(), var, value));
    }
    return f;
}

bool groundComparison(const Atom& a, bool& holds) {
    if (a.args.size() != 2) return false;
    Term l = foldArith(a.args[0]);
    Term r = foldArith(a.args[1]);
    auto lv = l.intValue();
    auto rv = r.intValue();
    if (!lv || !rv) return false;
    if (a.predicate == "<") holds = *lv < *rv;
    else if (a.predicate == "<=") holds = *lv <= *rv;
    else if (a.predicate == ">") holds = *lv > *rv;
    else holds = *lv >= *rv;
    return true;
}

} // namespace

std::map<std::string, std::size_t> declaredPredicates(
    const std::vector<Atom>& facts,
    const std::vector<FormulaPtr>& constraints) {
    std::map<std::string, std::size_t> out;
    for (const auto& a : facts) {
        auto [it, inserted] = out.emplace(a.predicate, a.args.size());
        if (!inserted && it->second != a.args.size())
            throw std::invalid_argument("predicate " + a.predicate +
                                        " used with conflicting arities");
    }
    for (const auto& c : constraints) collectPredicates(c, out);
    return out;
}

Valuation herbrandMinModel(const std::vector<Atom>& facts,
                           const std::vector<Atom>& universe) {
    Valuation v;
    for (const auto& a : universe) v.atoms[a] = TruthValue::False;
    for (const auto& a : facts) v.atoms[a] = TruthValue::True;
    return v;
}

TruthValue eval3(const Valuation& v, const FormulaPtr& f,
                 const std::vector<std::string>& domain) {
    switch (f->kind()) {
    case Formula::Kind::Atom: {
        const Atom& a = f->theAtom();
        if (isBuiltinComparison(a.predicate)) {
            bool holds = false;
            if (!groundComparison(a, holds))
                throw std::invalid_argument(
                    "non-ground comparison in oracle evaluation: " +
                    a.toString());
            return holds ? TruthValue::True : TruthValue::False;
        }
        if (!a.ground())
            throw std::invalid_argument("non-ground atom in oracle "
                                        "evaluation: " +
                                        a.toString());
        return v.at(a);
    }
    case Formula::Kind::Equal: {
        Term l = foldArith(f->lhsTerm());
        Term r = foldArith(f->rhsTerm());
        if (!l.ground() || !r.ground())
            throw std::invalid_argument("non-ground equality in oracle "
                                        "evaluation");
        return l == r ? TruthValue::True : TruthValue::False;
    }
    case Formula::Kind::Not:
        return not3(eval3(v, f->child(), domain));
    case Formula::Kind::And:
        return and3(eval3(v, f->left(), domain),
                    eval3(v, f->right(), domain));
    case Formula::Kind::Or:
        return or3(eval3(v, f->left(), domain), eval3(v, f->right(), domain));
    case Formula::Kind::Implies:
        return or3(not3(eval3(v, f->left(), domain)),
                   eval3(v, f->right(), domain));
    case Formula::Kind::Forall: {
        TruthValue acc = TruthValue::True;
        for (const auto& c : domain)
            acc = and3(acc, eval3(v, substitute(f->child(), f->var(),
                                                Term::constant(c)),
                                  domain));
        return acc;
    }
    case Formula::Kind::Exists: {
        TruthValue acc = TruthValue::False;
        for (const auto& c : domain)
            acc = or3(acc, eval3(v, substitute(f->child(), f->var(),
                                               Term::constant(c)),
                                 domain));
        return acc;
    }
    }
    return TruthValue::False;
}

std::vector<Valuation> twoValuedModels(const std::vector<FormulaPtr>& ics,
                                       const std::vector<Atom>& universe,
                                       const std::vector<std::string>& domain,
                                       std::size_t cap) {
    if (universe.size() > cap)
        throw std::invalid_argument("atom universe of size " +
                                    std::to_string(universe.size()) +
                                    " exceeds the oracle cap " +
                                    std::to_string(cap));
    std::vector<Valuation> out;
    const std::size_t n = universe.size();
    for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
        Valuation v;
        for (std::size_t i = 0; i < n; ++i)
            v.atoms[universe[i]] = (bits >> i) & 1 ? TruthValue::True
                                                   : TruthValue::False;
        bool model = true;
        for (const auto& ic : ics)
            if (!designated(eval3(v, universalClosure(ic), domain))) {
                model = false;
                break;
            }
        if (model) out.push_back(std::move(v));
    }
    return out;
}

Repair repairFromModel(const Valuation& m, const std::vector<Atom>& facts) {
    Repair r;
    std::set<Atom> d(facts.begin(), facts.end());
    for (const auto& a : m.trueSet())
        if (!d.count(a)) r.insert.push_back(a);
    for (const auto& a : facts)
        if (m.at(a) != TruthValue::True) r.retract.push_back(a);
    std::sort(r.insert.begin(), r.insert.end());
    std::sort(r.retract.begin(), r.retract.end());
    r.retract.erase(std::unique(r.retract.begin(), r.retract.end()),
                    r.retract.end());
    return r;
}

Valuation knowledgeJoin(const Valuation& hd, const Valuation& m) {
    Valuation out = hd;
    for (const auto& [a, v] : m.atoms)
        out.atoms[a] = knowledgeJoin(out.at(a), v);
    return out;
}

std::vector<Atom> dist(const std::vector<Atom>& d1,
                       const std::vector<Atom>& d2) {
    std::set<Atom> s1(d1.begin(), d1.end());
    std::set<Atom> s2(d2.begin(), d2.end());
    std::vector<Atom> out;
    for (const auto& a : s1)
        if (!s2.count(a)) out.push_back(a);
    for (const auto& a : s2)
        if (!s1.count(a)) out.push_back(a);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::vector<std::string> effectiveDomain(const OracleInput& input) {
    if (!input.domain.empty()) return input.domain;
    std::set<std::string> cs;
    std::function<void(const Term&)> scan = [&](const Term& t) {
        if (t.isConstant()) {
            if (!t.intValue()) cs.insert(t.name());
        } else if (t.isCompound()) {
            for (const auto& a : t.args()) scan(a);
        }
    };
    for (const auto& a : input.facts)
        for (const auto& t : a.args) scan(t);
    std::function<void(const FormulaPtr&)> scanF = [&](const FormulaPtr& f) {
        switch (f->kind()) {
        case Formula::Kind::Atom:
            for (const auto& t : f->theAtom().args) scan(t);
            return;
        case Formula::Kind::Equal:
            scan(f->lhsTerm());
            scan(f->rhsTerm());
            return;
        case Formula::Kind::Not:
        case Formula::Kind::Forall:
        case Formula::Kind::Exists:
            scanF(f->child());
            return;
        default:
            scanF(f->left());
            scanF(f->right());
            return;
        }
    };
    for (const auto& c : input.constraints) scanF(c);
    return {cs.begin(), cs.end()};
}

std::vector<Valuation> generators(const OracleInput& input,
                                  const std::vector<Atom>& universe,
                                  const std::vector<std::string>& domain) {
    Valuation hd = herbrandMinModel(input.facts, universe);
    std::set<Valuation> seen;
    for (const auto& m :
         twoValuedModels(input.constraints, universe, domain, input.cap))
        seen.insert(knowledgeJoin(hd, m));
    return {seen.begin(), seen.end()};
}

/// Indices of the inclusion-minimal sets. Each set must be sorted. Builds
/// the antichain in ascending size order so candidates are only compared
/// against already-kept (never larger) sets.
std::vector<std::size_t> minimalSetIndices(
    const std::vector<std::vector<Atom>>& sets) {
    std::vector<std::size_t> order(sets.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                         return sets[a].size() < sets[b].size();
                     });
    std::vector<std::size_t> kept;
    for (std::size_t i : order) {
        bool dominated = false;
        for (std::size_t j : kept) {
            if (sets[j].size() < sets[i].size() &&
                std::includes(sets[i].begin(), sets[i].end(), sets[j].begin(),
                              sets[j].end())) {
                dominated = true;
                break;
            }
        }
        if (!dominated) kept.push_back(i);
    }
    return kept;
}


std::vector<Repair> filterPreferred(std::vector<Repair> all,
                                    OracleCriterion criterion) {
    std::vector<Repair> out;
    if (criterion == OracleCriterion::Cardinality) {
        std::size_t best = SIZE_MAX;
        for (const auto& r : all)
            best = std::min(best, r.insert.size() + r.retract.size());
        for (const auto& r : all)
            if (r.insert.size() + r.retract.size() == best) out.push_back(r);
    } else {
        // Componentwise inclusion of (insert, retract) pairs is inclusion of
        // the combined change set: inserts and retracts can never collide
        // (one is outside the database, the other inside).
        std::vector<std::vector<Atom>> diffs;
        diffs.reserve(all.size());
        for (const auto& r : all) {
            std::vector<Atom> d = r.insert;
            d.insert(d.end(), r.retract.begin(), r.retract.end());
            std::sort(d.begin(), d.end());
            diffs.push_back(std::move(d));
        }
        for (std::size_t i : minimalSetIndices(diffs)) out.push_back(all[i]);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

std::vector<Valuation> mdbMinElements(const OracleInput& input) {
    std::vector<std::string> domain = effectiveDomain(input);
    std::vector<Atom> universe = atomUniverse(
        declaredPredicates(input.facts, input.constraints), domain);
    std::vector<Valuation> gens = generators(input, universe, domain);
    // All generators agree with H^D outside their Top set, so the pointwise
    // knowledge order over them is exactly inclusion of Top sets.
    std::vector<std::vector<Atom>> tops;
    tops.reserve(gens.size());
    for (const auto& g : gens) tops.push_back(g.topSet());
    std::vector<Valuation> out;
    for (std::size_t i : minimalSetIndices(tops)) out.push_back(gens[i]);
    return out;
}

std::vector<Repair> allRepairsOracle(const OracleInput& input) {
    std::vector<std::string> domain = effectiveDomain(input);
    std::vector<Atom> universe = atomUniverse(
        declaredPredicates(input.facts, input.constraints), domain);
    std::vector<Repair> out;
    for (const auto& m :
         twoValuedModels(input.constraints, universe, domain, input.cap)) {
        Repair r = repairFromModel(m, input.facts);
        if (std::find(out.begin(), out.end(), r) == out.end())
            out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Repair> preferredRepairsOracle(const OracleInput& input,
                                           OracleCriterion criterion) {
    std::vector<std::string> domain = effectiveDomain(input);
    std::vector<Atom> universe = atomUniverse(
        declaredPredicates(input.facts, input.constraints), domain);

    // Route 1: maximally consistent (+)-form three-valued models. The Top
    // set of H^D (+) M is exactly dist(D, M^t), so consistency-maximality
    // is Top-set minimality under the criterion's order.
    std::vector<Valuation> gens = generators(input, universe, domain);
    std::vector<std::vector<Atom>> tops;
    tops.reserve(gens.size());
    for (const auto& g : gens) tops.push_back(g.topSet());

    // Consistency-maximality is Top-set minimality under the criterion.
    std::vector<std::size_t> maximal;
    if (criterion == OracleCriterion::Cardinality) {
        std::size_t best = SIZE_MAX;
        for (const auto& t : tops) best = std::min(best, t.size());
        for (std::size_t i = 0; i < tops.size(); ++i)
            if (tops[i].size() == best) maximal.push_back(i);
    } else {
        maximal = minimalSetIndices(tops);
    }

    std::set<Atom> d(input.facts.begin(), input.facts.end());
    std::vector<Repair> viaModels;
    for (std::size_t i : maximal) {
        Repair r;
        for (const auto& a : tops[i])
            (d.count(a) ? r.retract : r.insert).push_back(a);
        std::sort(r.insert.begin(), r.insert.end());
        std::sort(r.retract.begin(), r.retract.end());
        viaModels.push_back(std::move(r));
    }
    std::sort(viaModels.begin(), viaModels.end());
    viaModels.erase(std::unique(viaModels.begin(), viaModels.end()),
                    viaModels.end());

    // Route 2: direct preference filtering over all repairs.
    std::vector<Repair> viaEnumeration =
        filterPreferred(allRepairsOracle(input), criterion);

    if (viaModels != viaEnumeration)
        throw std::logic_error("oracle routes disagree: models gave " +
                               std::to_string(viaModels.size()) +
                               " repairs, enumeration gave " +
                               std::to_string(viaEnumeration.size()));
    return viaEnumeration;
}

bool satisfiesDenialTheory(const std::vector<Atom>& trueAtoms,
                           const DenialTheory& theory,
                           const std::vector<std::string>& domain) {
    std::set<Atom> interp(trueAtoms.begin(), trueAtoms.end());

    // Complete the auxiliary predicates bottom-up. The transformation only
    // produces non-recursive definitions, so iterating clause application
    // in dependency order terminates; a plain fixpoint over strata suffices
    // because negated auxiliaries only refer to earlier-introduced ones.
    auto literalHolds = [&](const Literal& l) -> bool {
        const Atom& a = l.atom;
        if (a.predicate == "=") {
            bool eq = foldArith(a.args[0]) == foldArith(a.args[1]);
            return eq == l.positive;
        }
        if (isBuiltinComparison(a.predicate)) {
            bool holds = false;
            if (!groundComparison(a, holds))
                throw std::invalid_argument("non-ground comparison in "
                                            "denial-theory check");
            return holds == l.positive;
        }
        return (interp.count(a) > 0) == l.positive;
    };

    auto forEachGrounding = [&](const std::vector<std::string>& vars,
                                auto&& callback) {
        if (vars.empty()) {
            Substitution empty;
            callback(empty);
            return;
        }
        std::vector<std::size_t> idx(vars.size(), 0);
        if (domain.empty()) return;
        for (;;) {
            Substitution g;
            for (std::size_t i = 0; i < vars.size(); ++i)
                g.bind(vars[i], Term::constant(domain[idx[i]]));
            callback(g);
            std::size_t i = 0;
            while (i < idx.size() && ++idx[i] == domain.size()) idx[i++] = 0;
            if (i == idx.size()) break;
        }
    };

    // Complete the auxiliary predicates in dependency order: a predicate is
    // evaluated only after every auxiliary it (possibly negatively) depends
    // on is fully decided. The definitions are acyclic by construction.
    std::vector<std::string> pending(theory.freshPredicates.begin(),
                                     theory.freshPredicates.end());
    std::set<std::string> done;
    while (!pending.empty()) {
        auto ready = std::find_if(
            pending.begin(), pending.end(), [&](const std::string& p) {
                for (const auto& c : theory.auxiliaryClauses) {
                    if (c.head.predicate != p) continue;
                    for (const auto& l : c.body)
                        if (theory.freshPredicates.count(l.atom.predicate) &&
                            !done.count(l.atom.predicate) &&
                            l.atom.predicate != p)
                            return false;
                }
                return true;
            });
        if (ready == pending.end())
            throw std::logic_error("cyclic auxiliary definitions");
        const std::string pred = *ready;
        pending.erase(ready);
        for (const auto& c : theory.auxiliaryClauses) {
            if (c.head.predicate != pred) continue;
            std::vector<std::string> vars = c.head.vars();
            for (const auto& l : c.body) l.atom.collectVars(vars);
            std::sort(vars.begin(), vars.end());
            vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
            forEachGrounding(vars, [&](const Substitution& g) {
                for (const auto& l : c.body)
                    if (!literalHolds(g.apply(l))) return;
                interp.insert(g.apply(c.head));
            });
        }
        done.insert(pred);
    }

    for (const auto& d : theory.denials) {
        std::vector<std::string> vars = d.universalVars;
        for (const auto& l : d.body) l.atom.collectVars(vars);
        std::sort(vars.begin(), vars.end());
        vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
        bool violated = false;
        forEachGrounding(vars, [&](const Substitution& g) {
            if (violated) return;
            bool all = true;
            for (const auto& l : d.body)
                if (!literalHolds(g.apply(l))) {
                    all = false;
                    break;
                }
            if (all) violated = true;
        });
        if (violated) return false;
    }
    return true;
}

} // namespace oracle
} // namespace repairdb
