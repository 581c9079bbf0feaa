#include "repairdb/engine.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

namespace repairdb {

namespace {

std::string joinLiterals(const std::vector<Literal>& body) {
    std::string out;
    for (std::size_t i = 0; i < body.size(); ++i) {
        if (i > 0) out += " & ";
        out += body[i].toString();
    }
    return out;
}

bool containsAny(const std::vector<Term>& terms,
                 const std::vector<std::string>& vars) {
    for (const auto& t : terms)
        for (const auto& v : vars)
            if (t.containsVar(v)) return true;
    return false;
}

std::vector<Literal> argEquations(const std::vector<Term>& lhs,
                                  const std::vector<Term>& rhs) {
    std::vector<Literal> out;
    out.reserve(lhs.size());
    for (std::size_t i = 0; i < lhs.size(); ++i)
        out.push_back(eqLiteral(lhs[i], rhs[i]));
    return out;
}

bool evalComparison(const std::string& predicate, std::int64_t a,
                    std::int64_t b) {
    if (predicate == "<") return a < b;
    if (predicate == "<=") return a <= b;
    if (predicate == ">") return a > b;
    return a >= b; // ">="
}

/// The rule applicable to a selected literal, precomputed during selection
/// so the priority ordering can be decided without expanding.
enum class RuleId {
    UnfoldConj,     // D.1
    UnfoldDenial,   // D.2
    NegConj,        // N.1
    NegDenial,      // N.2
    AbduceConj,     // A.1
    AbduceDenial,   // A.2
    EqConj,         // E.1
    EqDecompose,    // E.2 (non-unifiable, decomposition, or trivial drop)
    EqUniversal,    // E.3
    EqFree,         // E.4
    BuiltinConj,    // ground comparison in a conjunction
    BuiltinDenial,  // ground comparison in a denial
    FalseDenial,    // empty denial body
};

const char* ruleName(RuleId r) {
    switch (r) {
    case RuleId::UnfoldConj: return "D.1";
    case RuleId::UnfoldDenial: return "D.2";
    case RuleId::NegConj: return "N.1";
    case RuleId::NegDenial: return "N.2";
    case RuleId::AbduceConj: return "A.1";
    case RuleId::AbduceDenial: return "A.2";
    case RuleId::EqConj: return "E.1";
    case RuleId::EqDecompose: return "E.2";
    case RuleId::EqUniversal: return "E.3";
    case RuleId::EqFree: return "E.4";
    case RuleId::BuiltinConj: return "B.1";
    case RuleId::BuiltinDenial: return "B.2";
    case RuleId::FalseDenial: return "F";
    }
    return "?";
}

struct Action {
    std::size_t goalIdx = 0;
    std::size_t litIdx = 0;
    RuleId rule = RuleId::FalseDenial;
    bool deterministic = true;
    bool groundSelected = false;
};

class Engine {
public:
    Engine(const AbductiveTheory& theory, const DeriveOptions& options)
        : theory_(theory), opts_(options) {}

    DerivationResult run(const std::vector<Literal>& query) {
        State initial;
        GoalFormula q;
        q.isDenial = false;
        q.body = query;
        initial.goals.push_back(std::move(q));
        for (const auto& ic : theory_.constraints)
            initial.goals.push_back(freshDenial(ic.universalVars, ic.body));
        explore(std::move(initial));
        return std::move(result_);
    }

private:
    // ---- fresh renaming -------------------------------------------------

    std::string freshVar(const std::string& base) {
        return base + "#" + std::to_string(++freshCounter_);
    }

    Term renameTerm(const Term& t,
                    const std::map<std::string, std::string>& names) const {
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
            for (const auto& a : t.args()) args.push_back(renameTerm(a, names));
            return Term::compound(t.name(), std::move(args));
        }
        }
        return t;
    }

    Literal renameLiteral(const Literal& l,
                          const std::map<std::string, std::string>& names) const {
        Literal out = l;
        for (auto& a : out.atom.args) a = renameTerm(a, names);
        return out;
    }

    /// Denial goal with its universal variables standardized apart, so no
    /// universal name is ever shared between live goals or with the store.
    GoalFormula freshDenial(const std::vector<std::string>& universalVars,
                            const std::vector<Literal>& body) {
        std::map<std::string, std::string> names;
        GoalFormula g;
        g.isDenial = true;
        for (const auto& v : universalVars) {
            names[v] = freshVar(v);
            g.universalVars.push_back(names[v]);
        }
        g.body.reserve(body.size());
        for (const auto& l : body) g.body.push_back(renameLiteral(l, names));
        return g;
    }

    Clause freshClause(const Clause& c) {
        std::vector<std::string> vars = c.head.vars();
        for (const auto& l : c.body) l.atom.collectVars(vars);
        std::map<std::string, std::string> names;
        for (const auto& v : vars)
            if (!names.count(v)) names[v] = freshVar(v);
        Clause out;
        out.head = c.head;
        for (auto& a : out.head.args) a = renameTerm(a, names);
        out.body.reserve(c.body.size());
        for (const auto& l : c.body) out.body.push_back(renameLiteral(l, names));
        return out;
    }

    // ---- views through the equality store -------------------------------

    Literal view(const State& st, const Literal& l) const {
        Literal out = st.store.equalities.solved().apply(l);
        for (auto& a : out.atom.args) a = foldArith(a);
        return out;
    }

    std::vector<Clause> clausesFor(const std::string& predicate,
                                   std::size_t arity) const {
        std::vector<Clause> out;
        for (const auto& c : theory_.program)
            if (c.head.predicate == predicate && c.head.args.size() == arity)
                out.push_back(c);
        return out;
    }

    bool isDefinedPredicate(const std::string& p) const {
        return !theory_.isAbducible(p) && p != "=" && !isBuiltinComparison(p);
    }

    // ---- selection -------------------------------------------------------

    /// Classifies the rule for goal gi / literal li, or nothing when the
    /// literal is not selectable yet (non-ground built-in, or a negative
    /// literal over universal variables).
    std::optional<Action> classify(const State& st, std::size_t gi,
                                   std::size_t li) const {
        const GoalFormula& g = st.goals[gi];
        Literal l = view(st, g.body[li]);
        Action act;
        act.goalIdx = gi;
        act.litIdx = li;
        act.groundSelected = l.atom.ground();
        const std::string& p = l.atom.predicate;

        if (isBuiltinComparison(p)) {
            bool ground = l.atom.args.size() == 2 &&
                          l.atom.args[0].intValue() && l.atom.args[1].intValue();
            if (!ground) return std::nullopt;
            act.rule = g.isDenial ? RuleId::BuiltinDenial : RuleId::BuiltinConj;
            return act;
        }

        if (!g.isDenial) {
            if (p == "=") {
                act.rule = l.positive ? RuleId::EqConj : RuleId::NegConj;
            } else if (!l.positive) {
                act.rule = RuleId::NegConj;
            } else if (theory_.isAbducible(p)) {
                act.rule = RuleId::AbduceConj;
                std::size_t reuse = 0;
                for (const auto& a : st.store.delta)
                    if (a.predicate == p && a.args.size() == l.atom.args.size())
                        ++reuse;
                act.deterministic = reuse == 0;
            } else {
                act.rule = RuleId::UnfoldConj;
                act.deterministic =
                    clausesFor(p, l.atom.args.size()).size() <= 1;
            }
            return act;
        }

        // Denial goal.
        if (!l.positive) {
            // N.2 side condition: no universal variables in the literal.
            if (containsAny(l.atom.args, g.universalVars)) return std::nullopt;
            act.rule = RuleId::NegDenial;
            act.deterministic = false;
            return act;
        }
        if (p == "=") {
            const Term s = l.atom.args[0];
            const Term t = l.atom.args[1];
            auto mgu = unify(s, t);
            if (!mgu || mgu->empty()) {
                act.rule = RuleId::EqDecompose; // drop denial / drop literal
                return act;
            }
            if (s.isVar() || t.isVar()) {
                const bool sUniv =
                    s.isVar() && std::count(g.universalVars.begin(),
                                            g.universalVars.end(), s.name());
                const bool tUniv =
                    t.isVar() && std::count(g.universalVars.begin(),
                                            g.universalVars.end(), t.name());
                if (sUniv || tUniv) {
                    act.rule = RuleId::EqUniversal;
                } else {
                    act.rule = RuleId::EqFree;
                    act.deterministic = false;
                }
                return act;
            }
            act.rule = RuleId::EqDecompose;
            return act;
        }
        if (theory_.isAbducible(p)) {
            act.rule = RuleId::AbduceDenial;
            return act;
        }
        act.rule = RuleId::UnfoldDenial;
        return act;
    }

    std::optional<Action> select(const State& st) const {
        std::optional<Action> firstNondet;
        std::optional<Action> firstGroundNondet;
        for (std::size_t gi = 0; gi < st.goals.size(); ++gi) {
            const GoalFormula& g = st.goals[gi];
            if (g.isDenial && g.body.empty()) {
                Action act;
                act.goalIdx = gi;
                act.rule = RuleId::FalseDenial;
                return act; // fail fast
            }
            for (std::size_t li = 0; li < g.body.size(); ++li) {
                auto act = classify(st, gi, li);
                if (!act) continue;
                if (opts_.strategy == DeriveOptions::Strategy::LeftFirst)
                    return act;
                if (act->deterministic) return act;
                if (act->groundSelected && !firstGroundNondet)
                    firstGroundNondet = act;
                if (!firstNondet) firstNondet = act;
            }
        }
        if (firstGroundNondet) return firstGroundNondet;
        return firstNondet;
    }

    // ---- expansion -------------------------------------------------------

    /// Body of goal gi with literal li removed.
    static std::vector<Literal> restOf(const GoalFormula& g, std::size_t li) {
        std::vector<Literal> rest;
        rest.reserve(g.body.size() - 1);
        for (std::size_t i = 0; i < g.body.size(); ++i)
            if (i != li) rest.push_back(g.body[i]);
        return rest;
    }

    static void replaceGoal(State& st, std::size_t gi,
                            std::vector<GoalFormula> replacements) {
        st.goals.erase(st.goals.begin() + static_cast<long>(gi));
        for (auto& g : replacements)
            st.goals.insert(st.goals.begin() + static_cast<long>(gi),
                            std::move(g));
    }

    static GoalFormula conjunction(std::vector<Literal> body) {
        GoalFormula g;
        g.isDenial = false;
        g.body = std::move(body);
        return g;
    }

    std::vector<State> expand(const State& st, const Action& act) {
        const GoalFormula goal = st.goals[act.goalIdx];
        const Literal sel =
            goal.body.empty() ? Literal{} : view(st, goal.body[act.litIdx]);
        std::vector<Literal> rest =
            goal.body.empty() ? std::vector<Literal>{} : restOf(goal, act.litIdx);

        switch (act.rule) {
        case RuleId::FalseDenial:
            return {};

        case RuleId::EqConj: {
            State next = st;
            replaceGoal(next, act.goalIdx, {conjunction(std::move(rest))});
            if (!next.store.equalities.addEquality(sel.atom.args[0],
                                                   sel.atom.args[1]))
                return {};
            return {std::move(next)};
        }

        case RuleId::NegConj: {
            State next = st;
            GoalFormula den;
            den.isDenial = true;
            den.body = {Literal{sel.atom, true}};
            replaceGoal(next, act.goalIdx,
                        {conjunction(std::move(rest)), std::move(den)});
            return {std::move(next)};
        }

        case RuleId::BuiltinConj:
        case RuleId::BuiltinDenial: {
            const bool holds = evalComparison(sel.atom.predicate,
                                              *sel.atom.args[0].intValue(),
                                              *sel.atom.args[1].intValue()) ==
                               sel.positive;
            State next = st;
            if (act.rule == RuleId::BuiltinConj) {
                if (!holds) return {};
                replaceGoal(next, act.goalIdx, {conjunction(std::move(rest))});
            } else if (holds) {
                GoalFormula den = goal;
                den.body = std::move(rest);
                replaceGoal(next, act.goalIdx, {std::move(den)});
            } else {
                replaceGoal(next, act.goalIdx, {});
            }
            return {std::move(next)};
        }

        case RuleId::UnfoldConj: {
            std::vector<State> branches;
            for (const auto& c :
                 clausesFor(sel.atom.predicate, sel.atom.args.size())) {
                Clause rc = freshClause(c);
                std::vector<Literal> body =
                    argEquations(sel.atom.args, rc.head.args);
                body.insert(body.end(), rc.body.begin(), rc.body.end());
                body.insert(body.end(), rest.begin(), rest.end());
                State next = st;
                replaceGoal(next, act.goalIdx, {conjunction(std::move(body))});
                branches.push_back(std::move(next));
            }
            return branches;
        }

        case RuleId::UnfoldDenial: {
            std::vector<GoalFormula> replacements;
            for (const auto& c :
                 clausesFor(sel.atom.predicate, sel.atom.args.size())) {
                Clause rc = freshClause(c);
                std::vector<Literal> body =
                    argEquations(sel.atom.args, rc.head.args);
                body.insert(body.end(), rc.body.begin(), rc.body.end());
                body.insert(body.end(), rest.begin(), rest.end());
                std::vector<std::string> uvars = goal.universalVars;
                for (const auto& a : rc.head.args) a.collectVars(uvars);
                for (const auto& l : rc.body) l.atom.collectVars(uvars);
                replacements.push_back(freshDenial(uvars, body));
            }
            State next = st;
            replaceGoal(next, act.goalIdx, std::move(replacements));
            return {std::move(next)};
        }

        case RuleId::NegDenial: {
            // N.2. Branch 1: make the complement hold.
            State pos = st;
            replaceGoal(pos, act.goalIdx,
                        {conjunction({Literal{sel.atom, true}})});
            // Branch 2: deny the complement, keep denying the rest.
            State neg = st;
            GoalFormula complement;
            complement.isDenial = true;
            complement.body = {Literal{sel.atom, true}};
            replaceGoal(neg, act.goalIdx,
                        {std::move(complement),
                         freshDenial(goal.universalVars, rest)});
            std::vector<State> branches;
            branches.push_back(std::move(pos));
            branches.push_back(std::move(neg));
            return branches;
        }

        case RuleId::AbduceConj: {
            std::vector<State> branches;
            auto addReuse = [&] {
                for (const auto& a : st.store.delta) {
                    if (a.predicate != sel.atom.predicate ||
                        a.args.size() != sel.atom.args.size())
                        continue;
                    std::vector<Literal> body =
                        argEquations(a.args, sel.atom.args);
                    body.insert(body.end(), rest.begin(), rest.end());
                    State next = st;
                    replaceGoal(next, act.goalIdx,
                                {conjunction(std::move(body))});
                    branches.push_back(std::move(next));
                }
            };
            auto addFresh = [&]() {
                State next = st;
                if (static_cast<int>(next.store.delta.size()) >=
                    opts_.maxDelta) {
                    result_.status = SearchStatus::BudgetExhausted;
                    return;
                }
                std::vector<GoalFormula> replacements;
                replacements.push_back(conjunction(rest));
                for (const auto& e : st.store.deltaStar) {
                    if (e.atom.predicate != sel.atom.predicate ||
                        e.atom.args.size() != sel.atom.args.size())
                        continue;
                    std::map<std::string, std::string> names;
                    std::vector<std::string> uvars;
                    for (const auto& v : e.universalVars) {
                        names[v] = freshVar(v);
                        uvars.push_back(names[v]);
                    }
                    Atom head = e.atom;
                    for (auto& a : head.args) a = renameTerm(a, names);
                    std::vector<Literal> body =
                        argEquations(head.args, sel.atom.args);
                    for (const auto& l : e.rest)
                        body.push_back(renameLiteral(l, names));
                    GoalFormula den;
                    den.isDenial = true;
                    den.universalVars = std::move(uvars);
                    den.body = std::move(body);
                    replacements.push_back(std::move(den));
                }
                for (const auto& a : st.store.delta) {
                    if (a.predicate != sel.atom.predicate ||
                        a.args.size() != sel.atom.args.size())
                        continue;
                    GoalFormula den;
                    den.isDenial = true;
                    den.body = argEquations(sel.atom.args, a.args);
                    replacements.push_back(std::move(den));
                }
                next.store.delta.push_back(sel.atom);
                if (opts_.filter &&
                    !opts_.filter->keep(next.store.delta,
                                        next.store.equalities)) {
                    ++result_.stats.pruned;
                    return;
                }
                replaceGoal(next, act.goalIdx, std::move(replacements));
                branches.push_back(std::move(next));
            };
            if (opts_.reuseFirst) {
                addReuse();
                addFresh();
            } else {
                addFresh();
                addReuse();
            }
            return branches;
        }

        case RuleId::AbduceDenial: {
            State next = st;
            std::vector<GoalFormula> replacements;
            for (const auto& a : st.store.delta) {
                if (a.predicate != sel.atom.predicate ||
                    a.args.size() != sel.atom.args.size())
                    continue;
                std::vector<Literal> body = argEquations(a.args, sel.atom.args);
                body.insert(body.end(), rest.begin(), rest.end());
                replacements.push_back(freshDenial(goal.universalVars, body));
            }
            DeltaStarEntry entry;
            entry.universalVars = goal.universalVars;
            entry.atom = sel.atom;
            entry.rest = rest;
            next.store.deltaStar.push_back(std::move(entry));
            replaceGoal(next, act.goalIdx, std::move(replacements));
            return {std::move(next)};
        }

        case RuleId::EqDecompose: {
            const Term& s = sel.atom.args[0];
            const Term& t = sel.atom.args[1];
            auto mgu = unify(s, t);
            State next = st;
            if (!mgu) {
                // The equation has no instance: the denial is vacuous.
                replaceGoal(next, act.goalIdx, {});
                return {std::move(next)};
            }
            GoalFormula den = goal;
            den.body = std::move(rest);
            if (!mgu->empty()) {
                // Replace s = t by its solved form, processed one equation
                // at a time by the variable-elimination rules.
                for (const auto& [v, term] : mgu->bindings())
                    den.body.insert(den.body.begin(),
                                    eqLiteral(Term::var(v), term));
            }
            replaceGoal(next, act.goalIdx, {std::move(den)});
            return {std::move(next)};
        }

        case RuleId::EqUniversal: {
            Term s = sel.atom.args[0];
            Term t = sel.atom.args[1];
            const auto isUniv = [&](const Term& x) {
                return x.isVar() && std::count(goal.universalVars.begin(),
                                               goal.universalVars.end(),
                                               x.name());
            };
            if (!isUniv(s)) std::swap(s, t);
            Substitution sub;
            sub.bind(s.name(), t);
            std::vector<std::string> uvars;
            for (const auto& v : goal.universalVars)
                if (v != s.name()) uvars.push_back(v);
            std::vector<Literal> body;
            body.reserve(rest.size());
            for (const auto& l : rest) body.push_back(sub.apply(l));
            GoalFormula den;
            den.isDenial = true;
            den.universalVars = std::move(uvars);
            den.body = std::move(body);
            State next = st;
            replaceGoal(next, act.goalIdx, {std::move(den)});
            return {std::move(next)};
        }

        case RuleId::EqFree: {
            Term s = sel.atom.args[0];
            Term t = sel.atom.args[1];
            if (!s.isVar()) std::swap(s, t);
            // Universal variables of t become free on the equality branch.
            std::vector<std::string> tUnivVars;
            std::vector<std::string> keptUnivVars;
            for (const auto& v : goal.universalVars) {
                if (t.containsVar(v))
                    tUnivVars.push_back(v);
                else
                    keptUnivVars.push_back(v);
            }
            // Branch 1: record the quantified disequality, drop the denial.
            State diff = st;
            replaceGoal(diff, act.goalIdx, {});
            bool diffOk = diff.store.equalities.addDisequality(tUnivVars, s, t);
            // Branch 2: commit to the equality, keep denying the rest.
            State eq = st;
            Substitution sub;
            sub.bind(s.name(), t);
            std::vector<Literal> body;
            body.reserve(rest.size());
            for (const auto& l : rest) body.push_back(sub.apply(l));
            GoalFormula den;
            den.isDenial = true;
            den.universalVars = std::move(keptUnivVars);
            den.body = std::move(body);
            replaceGoal(eq, act.goalIdx,
                        {conjunction({eqLiteral(s, t)}), std::move(den)});
            std::vector<State> branches;
            if (diffOk) branches.push_back(std::move(diff));
            branches.push_back(std::move(eq));
            return branches;
        }
        }
        return {};
    }

    // ---- search ----------------------------------------------------------

    void emitSolution(const State& st) {
        SolutionState sol;
        sol.equalities = st.store.equalities;
        sol.delta.reserve(st.store.delta.size());
        for (const auto& a : st.store.delta) {
            Atom ga = st.store.equalities.solved().apply(a);
            for (auto& arg : ga.args) arg = foldArith(arg);
            sol.delta.push_back(std::move(ga));
        }
        std::sort(sol.delta.begin(), sol.delta.end());
        sol.delta.erase(std::unique(sol.delta.begin(), sol.delta.end()),
                        sol.delta.end());
        if (opts_.filter) opts_.filter->onSolution(sol);
        result_.solutions.push_back(std::move(sol));
    }

    void explore(State st) {
        for (;;) {
            if (result_.status == SearchStatus::BudgetExhausted &&
                result_.stats.steps > opts_.maxSteps)
                return;
            if (!st.store.equalities.consistent()) return;
            // Solved conjunctions disappear silently.
            std::erase_if(st.goals, [](const GoalFormula& g) {
                return !g.isDenial && g.body.empty();
            });
            if (st.goals.empty()) {
                emitSolution(st);
                return;
            }
            auto act = select(st);
            if (!act) {
                // No literal in any remaining goal is selectable, and no
                // other goal can ever ground the blockers: flounder.
                result_.flounderings.push_back({st.goals.front().toString()});
                return;
            }
            ++result_.stats.steps;
            if (result_.stats.steps > opts_.maxSteps) {
                result_.status = SearchStatus::BudgetExhausted;
                return;
            }
            const long stepNo = result_.stats.steps;
            std::vector<State> branches = expand(st, *act);
            if (branches.empty()) return;
            result_.stats.branches +=
                static_cast<long>(branches.size()) - 1;
            if (branches.size() == 1) {
                if (opts_.trace)
                    *opts_.trace << "step " << stepNo << " rule "
                                 << ruleName(act->rule) << " goal "
                                 << act->goalIdx << " branch 0\n";
                st = std::move(branches.front());
                continue;
            }
            for (std::size_t i = 0; i < branches.size(); ++i) {
                if (opts_.trace)
                    *opts_.trace << "step " << stepNo << " rule "
                                 << ruleName(act->rule) << " goal "
                                 << act->goalIdx << " branch " << i << "\n";
                explore(std::move(branches[i]));
            }
            return;
        }
    }

    const AbductiveTheory& theory_;
    DeriveOptions opts_;
    DerivationResult result_;
    long freshCounter_ = 0;
};

} // namespace

std::string GoalFormula::toString() const {
    std::string out;
    if (isDenial) {
        if (!universalVars.empty()) {
            out += "forall ";
            for (std::size_t i = 0; i < universalVars.size(); ++i) {
                if (i > 0) out += ",";
                out += universalVars[i];
            }
            out += ". ";
        }
        out += "<- ";
    }
    out += joinLiterals(body);
    return out;
}

std::string DeltaStarEntry::toString() const {
    Denial d;
    d.universalVars = universalVars;
    d.body.push_back(Literal{atom, true});
    d.body.insert(d.body.end(), rest.begin(), rest.end());
    return d.toString();
}

DerivationResult derive(const AbductiveTheory& theory,
                        const std::vector<Literal>& query,
                        const DeriveOptions& options) {
    Engine engine(theory, options);
    return engine.run(query);
}

std::vector<Substitution> answerSubstitutions(
    const SolutionState& solution, const std::vector<std::string>& domain,
    bool includeFreshConstant) {
    std::vector<std::string> freeVars;
    for (const auto& a : solution.delta) a.collectVars(freeVars);
    std::sort(freeVars.begin(), freeVars.end());
    freeVars.erase(std::unique(freeVars.begin(), freeVars.end()),
                   freeVars.end());

    std::vector<Term> values;
    for (const auto& c : domain) values.push_back(Term::constant(c));
    if (includeFreshConstant) {
        std::string fresh = "c_new";
        int n = 0;
        while (std::count(domain.begin(), domain.end(), fresh))
            fresh = "c_new" + std::to_string(++n);
        values.push_back(Term::constant(fresh));
    }

    std::vector<Substitution> out;
    if (freeVars.empty()) {
        Substitution empty;
        if (solution.equalities.satisfiedBy(empty)) out.push_back(empty);
        return out;
    }
    std::vector<std::size_t> idx(freeVars.size(), 0);
    for (;;) {
        Substitution g;
        for (std::size_t i = 0; i < freeVars.size(); ++i)
            g.bind(freeVars[i], values[idx[i]]);
        if (solution.equalities.satisfiedBy(g)) out.push_back(std::move(g));
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == values.size()) idx[i++] = 0;
        if (i == idx.size()) break;
    }
    return out;
}

} // namespace repairdb
