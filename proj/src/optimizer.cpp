#include "repairdb/optimizer.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <string>

namespace repairdb {

namespace {

std::size_t repairSize(const Repair& r) {
    return r.insert.size() + r.retract.size();
}

bool subsetOf(const std::vector<Atom>& small, const std::vector<Atom>& big) {
    for (const auto& a : small)
        if (std::find(big.begin(), big.end(), a) == big.end()) return false;
    return true;
}

Term renameVars(const Term& t, std::map<std::string, std::string>& names,
                const std::string& prefix, int& counter) {
    switch (t.kind()) {
    case TermKind::Variable: {
        auto it = names.find(t.name());
        if (it == names.end())
            it = names.emplace(t.name(), prefix + std::to_string(++counter))
                     .first;
        return Term::var(it->second);
    }
    case TermKind::Constant:
        return t;
    case TermKind::Compound: {
        std::vector<Term> args;
        args.reserve(t.args().size());
        for (const auto& a : t.args())
            args.push_back(renameVars(a, names, prefix, counter));
        return Term::compound(t.name(), std::move(args));
    }
    }
    return t;
}

Term renameFixed(const Term& t,
                 const std::map<std::string, std::string>& names) {
    switch (t.kind()) {
    case TermKind::Variable: {
        auto it = names.find(t.name());
        return it == names.end() ? t : Term::var(it->second);
    }
    case TermKind::Constant:
        return t;
    case TermKind::Compound: {
        std::vector<Term> args;
        args.reserve(t.args().size());
        for (const auto& a : t.args()) args.push_back(renameFixed(a, names));
        return Term::compound(t.name(), std::move(args));
    }
    }
    return t;
}

} // namespace

bool pruneCardinality(const std::vector<Atom>& delta, const Frontier& f) {
    return f.bestBound && delta.size() > *f.bestBound;
}

bool pruneInclusion(const std::vector<Atom>& delta, const Frontier& f) {
    for (const auto& a : delta)
        if (!a.ground()) return false; // conservative: might unify away
    EqualityStore empty;
    Repair current = solutionToRepair(delta, empty);
    for (const auto& e : f.paretoSet) {
        if (!e.ground()) continue;
        if (dominates(e, current) && !(e == current)) return true;
    }
    return false;
}

bool dominates(const Repair& r1, const Repair& r2) {
    return subsetOf(r1.insert, r2.insert) && subsetOf(r1.retract, r2.retract);
}

bool isPreferred(const Repair& repair, const std::vector<Repair>& all,
                 Criterion criterion) {
    for (const auto& other : all) {
        if (other == repair) continue;
        if (criterion == Criterion::Cardinality) {
            if (repairSize(other) < repairSize(repair)) return false;
        } else {
            if (dominates(other, repair) && !dominates(repair, other))
                return false;
        }
    }
    return true;
}

Repair canonicalizeRepair(const Repair& r) {
    Repair out = r;
    std::sort(out.insert.begin(), out.insert.end());
    std::sort(out.retract.begin(), out.retract.end());
    std::map<std::string, std::string> names;
    int counter = 0;
    auto renameAtoms = [&](std::vector<Atom>& atoms) {
        for (auto& a : atoms)
            for (auto& arg : a.args) arg = renameVars(arg, names, "_V", counter);
    };
    renameAtoms(out.insert);
    renameAtoms(out.retract);
    for (auto& d : out.residual) {
        // Universal variables are local to the disequality and get _U
        // names; the remaining free variables share the repair-wide _V map.
        std::map<std::string, std::string> univ;
        int ucounter = 0;
        for (auto& v : d.universalVars) {
            auto it = univ.emplace(v, "_U" + std::to_string(++ucounter)).first;
            v = it->second;
        }
        d.lhs = renameFixed(d.lhs, univ);
        d.rhs = renameFixed(d.rhs, univ);
        // Map the _U names to themselves so the shared pass leaves them be.
        for (const auto& [from, to] : univ) names.emplace(to, to);
        d.lhs = renameVars(d.lhs, names, "_V", counter);
        d.rhs = renameVars(d.rhs, names, "_V", counter);
    }
    std::sort(out.insert.begin(), out.insert.end());
    std::sort(out.retract.begin(), out.retract.end());
    std::sort(out.residual.begin(), out.residual.end(),
              [](const Disequality& a, const Disequality& b) {
                  return a.toString() < b.toString();
              });
    out.residual.erase(std::unique(out.residual.begin(), out.residual.end()),
                       out.residual.end());
    out.insert.erase(std::unique(out.insert.begin(), out.insert.end()),
                     out.insert.end());
    out.retract.erase(std::unique(out.retract.begin(), out.retract.end()),
                      out.retract.end());
    return out;
}

namespace {

class BoundFilter : public SearchFilter {
public:
    BoundFilter(Criterion criterion) : criterion_(criterion) {}

    bool keep(const std::vector<Atom>& delta,
              const EqualityStore& equalities) override {
        (void)equalities;
        if (criterion_ == Criterion::Cardinality)
            return !pruneCardinality(delta, frontier_);
        return !pruneInclusion(delta, frontier_);
    }

    void onSolution(const SolutionState& solution) override {
        Repair r = canonicalizeRepair(
            solutionToRepair(solution.delta, solution.equalities));
        if (criterion_ == Criterion::Cardinality) {
            const std::size_t size = repairSize(r);
            if (!frontier_.bestBound || size < *frontier_.bestBound)
                frontier_.bestBound = size;
            return;
        }
        if (!r.ground()) return; // conservative: never enters the frontier
        for (const auto& e : frontier_.paretoSet)
            if (dominates(e, r)) return; // dominated or duplicate
        std::erase_if(frontier_.paretoSet,
                      [&](const Repair& e) { return dominates(r, e); });
        frontier_.paretoSet.push_back(std::move(r));
        assertAntichain();
    }

    const Frontier& frontier() const { return frontier_; }

private:
    void assertAntichain() const {
        for (std::size_t i = 0; i < frontier_.paretoSet.size(); ++i)
            for (std::size_t j = 0; j < frontier_.paretoSet.size(); ++j)
                assert(i == j || !dominates(frontier_.paretoSet[i],
                                            frontier_.paretoSet[j]));
    }

    Criterion criterion_;
    Frontier frontier_;
};

} // namespace

PreferredResult preferredRepairs(const AbductiveTheory& theory,
                                 Criterion criterion,
                                 const DeriveOptions& options) {
    BoundFilter filter(criterion);
    DeriveOptions opts = options;
    opts.filter = &filter;
    DerivationResult derived = derive(theory, {}, opts);

    PreferredResult result;
    result.status = derived.status;
    result.stats = derived.stats;
    result.flounderings = std::move(derived.flounderings);

    std::set<Repair> seen;
    for (const auto& sol : derived.solutions)
        seen.insert(
            canonicalizeRepair(solutionToRepair(sol.delta, sol.equalities)));
    result.allSolutions.assign(seen.begin(), seen.end());

    for (const auto& r : result.allSolutions)
        if (isPreferred(r, result.allSolutions, criterion))
            result.repairs.push_back(r);
    return result;
}

} // namespace repairdb
