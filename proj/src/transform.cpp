#include "repairdb/transform.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace repairdb {

namespace {

using Kind = Formula::Kind;

/// Negation normal form; implications are eliminated first, negations are
/// pushed onto atoms and equalities.
FormulaPtr nnf(const FormulaPtr& f, bool negated) {
    switch (f->kind()) {
    case Kind::Atom:
    case Kind::Equal:
        return negated ? Formula::negate(f) : f;
    case Kind::Not:
        return nnf(f->child(), !negated);
    case Kind::And:
        return negated ? Formula::disj(nnf(f->left(), true),
                                       nnf(f->right(), true))
                       : Formula::conj(nnf(f->left(), false),
                                       nnf(f->right(), false));
    case Kind::Or:
        return negated ? Formula::conj(nnf(f->left(), true),
                                       nnf(f->right(), true))
                       : Formula::disj(nnf(f->left(), false),
                                       nnf(f->right(), false));
    case Kind::Implies:
        // A -> B is ~A | B
        return nnf(Formula::disj(Formula::negate(f->left()), f->right()),
                   negated);
    case Kind::Forall:
        return negated ? Formula::exists(f->var(), nnf(f->child(), true))
                       : Formula::forall(f->var(), nnf(f->child(), false));
    case Kind::Exists:
        return negated ? Formula::forall(f->var(), nnf(f->child(), true))
                       : Formula::exists(f->var(), nnf(f->child(), false));
    }
    throw std::logic_error("unreachable formula kind");
}

/// Capture-free renaming of a (quantifier-bound) variable in an NNF body.
FormulaPtr renameVar(const FormulaPtr& f, const std::string& from,
                     const std::string& to) {
    Substitution sub;
    sub.bind(from, Term::var(to));
    switch (f->kind()) {
    case Kind::Atom:
        return Formula::atom(sub.apply(f->theAtom()));
    case Kind::Equal:
        return Formula::equal(sub.apply(f->lhsTerm()), sub.apply(f->rhsTerm()));
    case Kind::Not:
        return Formula::negate(renameVar(f->child(), from, to));
    case Kind::And:
        return Formula::conj(renameVar(f->left(), from, to),
                             renameVar(f->right(), from, to));
    case Kind::Or:
        return Formula::disj(renameVar(f->left(), from, to),
                             renameVar(f->right(), from, to));
    case Kind::Implies:
        return Formula::implies(renameVar(f->left(), from, to),
                                renameVar(f->right(), from, to));
    case Kind::Forall:
    case Kind::Exists: {
        if (f->var() == from) return f; // shadowed
        auto body = renameVar(f->child(), from, to);
        return f->kind() == Kind::Forall ? Formula::forall(f->var(), body)
                                         : Formula::exists(f->var(), body);
    }
    }
    throw std::logic_error("unreachable formula kind");
}

bool isLiteralFormula(const Formula& f) {
    if (f.kind() == Kind::Atom || f.kind() == Kind::Equal) return true;
    return f.kind() == Kind::Not && (f.child()->kind() == Kind::Atom ||
                                     f.child()->kind() == Kind::Equal);
}

Literal toLiteral(const Formula& f) {
    bool positive = true;
    const Formula* g = &f;
    if (f.kind() == Kind::Not) {
        positive = false;
        g = f.child().get();
    }
    if (g->kind() == Kind::Equal)
        return Literal{Atom{"=", {g->lhsTerm(), g->rhsTerm()}}, positive};
    return Literal{g->theAtom(), positive};
}

} // namespace

class LloydToporRun {
public:
    LloydToporRun(DenialTheory& out, int& counter)
        : out_(out), counter_(counter) {}

    void transform(const FormulaPtr& ic) {
        FormulaPtr closed = universalClosure(ic);
        // <- ~ic, rewritten by De Morgan / distribution into denials.
        FormulaPtr body = nnf(closed, /*negated=*/true);
        for (auto& d : denialsOf(body)) out_.denials.push_back(std::move(d));
    }

private:
    struct Branch {
        std::vector<std::string> universalVars;
        std::vector<FormulaPtr> pending;
        std::vector<Literal> literals;
    };

    std::string freshVar(const std::string& base) {
        return base + "_" + std::to_string(++varCounter_);
    }

    bool varInUse(const Branch& b, const std::string& v) const {
        if (std::find(b.universalVars.begin(), b.universalVars.end(), v) !=
            b.universalVars.end())
            return true;
        for (const auto& l : b.literals)
            for (const auto& t : l.atom.args)
                if (t.containsVar(v)) return true;
        return false;
    }

    /// Expands an NNF body into denial bodies. Existentials widen the
    /// quantifier prefix, disjunctions split, positive universals become
    /// negated auxiliary atoms.
    std::vector<Denial> denialsOf(const FormulaPtr& body) {
        std::vector<Denial> result;
        std::vector<Branch> work;
        work.push_back(Branch{{}, {body}, {}});
        while (!work.empty()) {
            Branch b = std::move(work.back());
            work.pop_back();
            if (b.pending.empty()) {
                Denial d;
                std::vector<std::string> used;
                for (const auto& l : b.literals) l.atom.collectVars(used);
                for (const auto& v : b.universalVars)
                    if (std::find(used.begin(), used.end(), v) != used.end())
                        d.universalVars.push_back(v);
                d.body = std::move(b.literals);
                result.push_back(std::move(d));
                continue;
            }
            FormulaPtr f = b.pending.back();
            b.pending.pop_back();
            if (isLiteralFormula(*f)) {
                b.literals.push_back(toLiteral(*f));
                work.push_back(std::move(b));
            } else if (f->kind() == Kind::And) {
                b.pending.push_back(f->right());
                b.pending.push_back(f->left());
                work.push_back(std::move(b));
            } else if (f->kind() == Kind::Or) {
                Branch other = b;
                b.pending.push_back(f->left());
                other.pending.push_back(f->right());
                work.push_back(std::move(b));
                work.push_back(std::move(other));
            } else if (f->kind() == Kind::Exists) {
                std::string v = f->var();
                FormulaPtr inner = f->child();
                if (varInUse(b, v)) {
                    std::string renamed = freshVar(v);
                    inner = renameVar(inner, v, renamed);
                    v = renamed;
                }
                b.universalVars.push_back(v);
                b.pending.push_back(inner);
                work.push_back(std::move(b));
            } else if (f->kind() == Kind::Forall) {
                b.pending.push_back(auxiliaryFor(f));
                work.push_back(std::move(b));
            } else {
                throw std::logic_error("unexpected connective in NNF body");
            }
        }
        return result;
    }

    /// A positive universal forall X. G inside a denial body is replaced by
    /// ~aux(Ys) where aux(Ys) holds iff exists X. ~G (Ys the free variables).
    FormulaPtr auxiliaryFor(const FormulaPtr& forallNode) {
        auto freeVars = forallNode->freeVars();
        std::vector<Term> headArgs;
        headArgs.reserve(freeVars.size());
        for (const auto& v : freeVars) headArgs.push_back(Term::var(v));

        FormulaPtr negBody = nnf(forallNode->child(), /*negated=*/true);
        std::vector<std::vector<Literal>> bodies = clauseBodiesOf(negBody);

        std::string name = "aux_" + std::to_string(++counter_);
        if (bodies.size() == 1 && bodies[0].size() == 1 &&
            bodies[0][0].positive && !isEqualityLiteral(bodies[0][0]))
            name += "_" + bodies[0][0].atom.predicate;
        out_.freshPredicates.insert(name);

        Atom head{name, headArgs};
        for (auto& body : bodies)
            out_.auxiliaryClauses.push_back(Clause{head, std::move(body)});
        return Formula::negate(Formula::atom(head));
    }

    /// DNF-style expansion of an NNF formula into clause bodies; existential
    /// variables become clause-local variables, universals recurse into
    /// further auxiliaries.
    std::vector<std::vector<Literal>> clauseBodiesOf(const FormulaPtr& f) {
        if (isLiteralFormula(*f)) return {{toLiteral(*f)}};
        switch (f->kind()) {
        case Kind::And: {
            auto ls = clauseBodiesOf(f->left());
            auto rs = clauseBodiesOf(f->right());
            std::vector<std::vector<Literal>> out;
            for (const auto& l : ls)
                for (const auto& r : rs) {
                    std::vector<Literal> both = l;
                    both.insert(both.end(), r.begin(), r.end());
                    out.push_back(std::move(both));
                }
            return out;
        }
        case Kind::Or: {
            auto out = clauseBodiesOf(f->left());
            auto rs = clauseBodiesOf(f->right());
            out.insert(out.end(), rs.begin(), rs.end());
            return out;
        }
        case Kind::Exists:
            return clauseBodiesOf(f->child());
        case Kind::Forall:
            return clauseBodiesOf(auxiliaryFor(f));
        default:
            throw std::logic_error("unexpected connective in clause body");
        }
    }

    DenialTheory& out_;
    int& counter_;
    int varCounter_ = 0;
};

void DenialTransformer::transform(const FormulaPtr& ic, DenialTheory& out) {
    LloydToporRun run(out, counter_);
    run.transform(ic);
}

DenialTheory DenialTransformer::transformAll(
    const std::vector<FormulaPtr>& ics) {
    DenialTheory out;
    for (const auto& ic : ics) transform(ic, out);
    return out;
}

DenialTheory lloydTopor(const std::vector<FormulaPtr>& ics) {
    DenialTransformer t;
    return t.transformAll(ics);
}

namespace {

/// Does x occur in a non-equality atom at the given polarity (true =
/// positive position relative to the constraint root)?
bool occursAtPolarity(const FormulaPtr& f, const std::string& x,
                      bool polarity, bool wanted) {
    switch (f->kind()) {
    case Kind::Atom:
        return polarity == wanted &&
               std::any_of(f->theAtom().args.begin(), f->theAtom().args.end(),
                           [&](const Term& t) { return t.containsVar(x); });
    case Kind::Equal:
        return false; // equalities never ground a variable
    case Kind::Not:
        return occursAtPolarity(f->child(), x, !polarity, wanted);
    case Kind::And:
    case Kind::Or:
        return occursAtPolarity(f->left(), x, polarity, wanted) ||
               occursAtPolarity(f->right(), x, polarity, wanted);
    case Kind::Implies:
        return occursAtPolarity(f->left(), x, !polarity, wanted) ||
               occursAtPolarity(f->right(), x, polarity, wanted);
    case Kind::Forall:
    case Kind::Exists:
        if (f->var() == x) return false; // shadowed
        return occursAtPolarity(f->child(), x, polarity, wanted);
    }
    return false;
}

FormulaPtr guardRec(const FormulaPtr& f, const std::string& domPred,
                    bool polarity) {
    switch (f->kind()) {
    case Kind::Atom:
    case Kind::Equal:
        return f;
    case Kind::Not:
        return Formula::negate(guardRec(f->child(), domPred, !polarity));
    case Kind::And:
        return Formula::conj(guardRec(f->left(), domPred, polarity),
                             guardRec(f->right(), domPred, polarity));
    case Kind::Or:
        return Formula::disj(guardRec(f->left(), domPred, polarity),
                             guardRec(f->right(), domPred, polarity));
    case Kind::Implies:
        return Formula::implies(guardRec(f->left(), domPred, !polarity),
                                guardRec(f->right(), domPred, polarity));
    case Kind::Forall:
    case Kind::Exists: {
        bool isForall = f->kind() == Kind::Forall;
        FormulaPtr body = guardRec(f->child(), domPred, polarity);
        // A universal at positive polarity (or existential at negative)
        // ends up ranging in a denial: its variable must be bound by a
        // positive body literal, i.e. occur at negative polarity here.
        // The dual case needs a positive occurrence.
        bool wanted = isForall != polarity;
        bool safe = occursAtPolarity(f->child(), f->var(), polarity, wanted);
        if (!safe) {
            FormulaPtr guard =
                Formula::atom(Atom{domPred, {Term::var(f->var())}});
            body = isForall ? Formula::implies(guard, body)
                            : Formula::conj(guard, body);
        }
        return isForall ? Formula::forall(f->var(), body)
                        : Formula::exists(f->var(), body);
    }
    }
    throw std::logic_error("unreachable formula kind");
}

} // namespace

FormulaPtr guardUnsafe(const FormulaPtr& ic,
                       const std::string& domainPredicate) {
    return guardRec(universalClosure(ic), domainPredicate, /*polarity=*/true);
}

bool isReservedPredicate(const std::string& predicate) {
    return predicate == "db" || predicate == "fact" || predicate == "insert" ||
           predicate == "retract";
}

DenialTheory rewriteFactLevel(const DenialTheory& theory,
                              const std::string& domainPredicate) {
    auto rewriteLiteral = [&](const Literal& l) -> Literal {
        const std::string& p = l.atom.predicate;
        if (isEqualityLiteral(l) || isBuiltinComparison(p) ||
            p == domainPredicate || theory.freshPredicates.count(p) ||
            isReservedPredicate(p))
            return l;
        return Literal{Atom{"fact", {atomToTerm(l.atom)}}, l.positive};
    };
    DenialTheory out;
    out.freshPredicates = theory.freshPredicates;
    for (const auto& d : theory.denials) {
        Denial nd{d.universalVars, {}};
        for (const auto& l : d.body) nd.body.push_back(rewriteLiteral(l));
        out.denials.push_back(std::move(nd));
    }
    for (const auto& c : theory.auxiliaryClauses) {
        Clause nc{c.head, {}};
        for (const auto& l : c.body) nc.body.push_back(rewriteLiteral(l));
        out.auxiliaryClauses.push_back(std::move(nc));
    }
    return out;
}

} // namespace repairdb
