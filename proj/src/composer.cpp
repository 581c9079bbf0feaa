#include "repairdb/composer.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace repairdb {

namespace {

Term V(const std::string& name) { return Term::var(name); }

void addSorted(std::vector<Atom>& atoms, const Atom& a) {
    auto it = std::lower_bound(atoms.begin(), atoms.end(), a);
    if (it == atoms.end() || !(*it == a)) atoms.insert(it, a);
}

void collectConstants(const Term& t, std::set<std::string>& out) {
    if (t.isConstant()) out.insert(t.name());
    for (const Term& a : t.args()) collectConstants(a, out);
}

void collectConstants(const Atom& a, std::set<std::string>& out) {
    for (const Term& t : a.args) collectConstants(t, out);
}

bool mentionsPredicate(const DenialTheory& ics, const std::string& pred) {
    auto inBody = [&](const std::vector<Literal>& body) {
        return std::any_of(body.begin(), body.end(), [&](const Literal& l) {
            return l.atom.predicate == pred;
        });
    };
    for (const auto& d : ics.denials)
        if (inBody(d.body)) return true;
    for (const auto& c : ics.auxiliaryClauses)
        if (inBody(c.body)) return true;
    return false;
}

void addComposerDefinitions(AbductiveTheory& t) {
    t.defined.insert({"db", "fact", "dom"});
    t.abducibles = {"insert", "retract"};
}

void addAuxiliaries(AbductiveTheory& t, const DenialTheory& ics) {
    for (const auto& c : ics.auxiliaryClauses) {
        t.program.push_back(c);
        t.defined.insert(c.head.predicate);
    }
    for (const auto& d : ics.denials) t.constraints.push_back(d);
}

void addDomainFacts(AbductiveTheory& t, const DenialTheory& ics) {
    if (!mentionsPredicate(ics, "dom")) return;
    for (const auto& c : t.activeDomain)
        t.program.push_back(Clause{Atom{"dom", {Term::constant(c)}}, {}});
}

} // namespace

std::vector<Atom> unionFacts(const std::vector<DatabaseInstance>& databases) {
    std::vector<Atom> facts;
    for (const auto& db : databases)
        for (const auto& f : db.facts) addSorted(facts, f);
    return facts;
}

std::vector<std::string> activeDomainOf(
    const std::vector<DatabaseInstance>& databases, const DenialTheory& ics) {
    std::set<std::string> constants;
    for (const auto& db : databases) {
        for (const auto& f : db.facts) collectConstants(f, constants);
        for (const auto& e : db.events) collectConstants(e.fact, constants);
    }
    for (const auto& d : ics.denials)
        for (const auto& l : d.body) collectConstants(l.atom, constants);
    for (const auto& c : ics.auxiliaryClauses)
        for (const auto& l : c.body) collectConstants(l.atom, constants);
    return {constants.begin(), constants.end()};
}

AbductiveTheory compose(const std::vector<DatabaseInstance>& databases,
                        const DenialTheory& ics) {
    AbductiveTheory t;
    addComposerDefinitions(t);
    t.activeDomain = activeDomainOf(databases, ics);

    for (const auto& f : unionFacts(databases))
        t.program.push_back(Clause{Atom{"db", {atomToTerm(f)}}, {}});

    t.program.push_back(Clause{Atom{"fact", {V("X")}},
                               {Literal{Atom{"db", {V("X")}}, true},
                                Literal{Atom{"retract", {V("X")}}, false}}});
    t.program.push_back(Clause{Atom{"fact", {V("X")}},
                               {Literal{Atom{"insert", {V("X")}}, true}}});
    addAuxiliaries(t, ics);
    addDomainFacts(t, ics);

    t.constraints.push_back(Denial{{"X"},
                                   {Literal{Atom{"insert", {V("X")}}, true},
                                    Literal{Atom{"db", {V("X")}}, true}}});
    t.constraints.push_back(Denial{{"X"},
                                   {Literal{Atom{"retract", {V("X")}}, true},
                                    Literal{Atom{"db", {V("X")}}, false}}});
    return t;
}

namespace {

/// Source-mode rewriting of a fact-level body: positive fact(p) literals get
/// a fresh source variable, negative ones go through the source-erasing
/// projection fact_any.
std::vector<Literal> annotateSources(const std::vector<Literal>& body,
                                     int& sourceVarCounter,
                                     std::vector<std::string>* newVars) {
    std::vector<Literal> out;
    for (const auto& l : body) {
        if (l.atom.predicate == "fact") {
            if (l.positive) {
                std::string sv = "Src_" + std::to_string(++sourceVarCounter);
                if (newVars) newVars->push_back(sv);
                out.push_back(
                    Literal{Atom{"fact", {l.atom.args[0], V(sv)}}, true});
            } else {
                out.push_back(
                    Literal{Atom{"fact_any", {l.atom.args[0]}}, false});
            }
        } else {
            out.push_back(l);
        }
    }
    return out;
}

/// A functional-dependency-shaped denial: exactly two positive fact literals
/// over the same inner predicate plus equality literals only.
bool isFdShape(const Denial& d, Atom& fst, Atom& snd) {
    std::vector<const Literal*> factLits;
    for (const auto& l : d.body) {
        if (l.atom.predicate == "fact" && l.positive)
            factLits.push_back(&l);
        else if (!isEqualityLiteral(l))
            return false;
    }
    if (factLits.size() != 2) return false;
    Atom a = termToAtom(factLits[0]->atom.args[0]);
    Atom b = termToAtom(factLits[1]->atom.args[0]);
    if (a.predicate != b.predicate) return false;
    fst = std::move(a);
    snd = std::move(b);
    return true;
}

} // namespace

AbductiveTheory composeWithSources(
    const std::vector<DatabaseInstance>& databases, const DenialTheory& ics,
    const std::map<std::string, std::int64_t>& trust) {
    for (const auto& [source, amount] : trust) {
        (void)amount;
        if (std::none_of(databases.begin(), databases.end(),
                         [&](const DatabaseInstance& db) {
                             return db.sourceId == source;
                         }))
            throw std::invalid_argument("trust entry for unknown source: " +
                                        source);
    }

    AbductiveTheory t;
    addComposerDefinitions(t);
    t.defined.insert({"fact_any", "db_any", "trust", "more_trusted"});
    t.activeDomain = activeDomainOf(databases, ics);

    // Each (fact, source) pair is a distinct db/2 atom.
    std::vector<std::pair<Atom, std::string>> tagged;
    for (const auto& db : databases)
        for (const auto& f : db.facts) tagged.emplace_back(f, db.sourceId);
    std::sort(tagged.begin(), tagged.end(), [](const auto& a, const auto& b) {
        return a.first < b.first ||
               (a.first == b.first && a.second < b.second);
    });
    tagged.erase(std::unique(tagged.begin(), tagged.end(),
                             [](const auto& a, const auto& b) {
                                 return a.first == b.first &&
                                        a.second == b.second;
                             }),
                 tagged.end());
    for (const auto& [f, source] : tagged)
        t.program.push_back(Clause{
            Atom{"db", {atomToTerm(f), Term::constant(source)}}, {}});

    t.program.push_back(
        Clause{Atom{"fact", {V("X"), V("S")}},
               {Literal{Atom{"db", {V("X"), V("S")}}, true},
                Literal{Atom{"retract", {V("X")}}, false}}});
    t.program.push_back(
        Clause{Atom{"fact", {V("X"), Term::constant("composer")}},
               {Literal{Atom{"insert", {V("X")}}, true}}});
    t.program.push_back(Clause{Atom{"fact_any", {V("X")}},
                               {Literal{Atom{"fact", {V("X"), V("S")}}, true}}});
    t.program.push_back(Clause{Atom{"db_any", {V("X")}},
                               {Literal{Atom{"db", {V("X"), V("S")}}, true}}});

    for (const auto& [source, amount] : trust)
        t.program.push_back(
            Clause{Atom{"trust",
                        {Term::constant(source), Term::intConstant(amount)}},
                   {}});
    t.program.push_back(
        Clause{Atom{"more_trusted", {V("S0"), V("S")}},
               {Literal{Atom{"trust", {V("S0"), V("A0")}}, true},
                Literal{Atom{"trust", {V("S"), V("A")}}, true},
                Literal{Atom{">", {V("A0"), V("A")}}, true}}});

    int sourceVarCounter = 0;
    DenialTheory annotated;
    annotated.freshPredicates = ics.freshPredicates;
    for (const auto& d : ics.denials) {
        Denial nd{d.universalVars, {}};
        nd.body = annotateSources(d.body, sourceVarCounter, &nd.universalVars);
        annotated.denials.push_back(std::move(nd));
    }
    for (const auto& c : ics.auxiliaryClauses) {
        Clause nc{c.head, annotateSources(c.body, sourceVarCounter, nullptr)};
        annotated.auxiliaryClauses.push_back(std::move(nc));
    }
    addAuxiliaries(t, annotated);
    addDomainFacts(t, annotated);

    // Trust preference, specialized to each functional-dependency-style
    // constraint: a kept fact loses against a more trusted source's
    // conflicting db entry.
    for (const auto& d : ics.denials) {
        Atom kept, rival;
        if (!isFdShape(d, kept, rival)) continue;
        Denial pref;
        pref.universalVars = d.universalVars;
        pref.universalVars.push_back("Src_kept");
        pref.universalVars.push_back("Src_rival");
        pref.body = {
            Literal{Atom{"fact", {atomToTerm(kept), V("Src_kept")}}, true},
            Literal{Atom{"db", {atomToTerm(rival), V("Src_rival")}}, true},
            neqLiteral(V("Src_kept"), V("Src_rival")),
            Literal{Atom{"more_trusted", {V("Src_rival"), V("Src_kept")}},
                    true}};
        t.constraints.push_back(std::move(pref));
    }

    t.constraints.push_back(
        Denial{{"X", "S"},
               {Literal{Atom{"insert", {V("X")}}, true},
                Literal{Atom{"db", {V("X"), V("S")}}, true}}});
    t.constraints.push_back(Denial{{"X"},
                                   {Literal{Atom{"retract", {V("X")}}, true},
                                    Literal{Atom{"db_any", {V("X")}}, false}}});
    return t;
}

AbductiveTheory composeWithTimestamps(
    const std::vector<DatabaseInstance>& databases, const DenialTheory& ics) {
    for (const auto& db : databases)
        for (const auto& e : db.events)
            if (e.time < 0)
                throw std::invalid_argument("negative timestamp on event " +
                                            e.fact.toString());

    AbductiveTheory t;
    t.abducibles = {"insert", "retract"};
    t.defined.insert({"holds_at", "clipped", "add", "del", "add_db", "del_db",
                      "initially", "time", "dom"});
    t.activeDomain = activeDomainOf(databases, ics);

    for (const auto& db : databases) {
        for (const auto& f : db.facts)
            t.program.push_back(
                Clause{Atom{"initially", {atomToTerm(f)}}, {}});
        for (const auto& e : db.events)
            t.program.push_back(
                Clause{Atom{e.isAdd ? "add_db" : "del_db",
                            {atomToTerm(e.fact), Term::intConstant(e.time)}},
                       {}});
    }

    // Finite event horizon: abduced inserts/retracts happen at known clock
    // ticks (0 .. latest event + 1), which keeps every comparison groundable.
    std::int64_t horizon = 0;
    for (const auto& db : databases)
        for (const auto& e : db.events) horizon = std::max(horizon, e.time);
    for (std::int64_t tick = 0; tick <= horizon + 1; ++tick)
        t.program.push_back(
            Clause{Atom{"time", {Term::intConstant(tick)}}, {}});

    auto lit = [](const char* p, std::vector<Term> args, bool pos = true) {
        return Literal{Atom{p, std::move(args)}, pos};
    };
    t.program.push_back(
        Clause{Atom{"holds_at", {V("P"), V("T")}},
               {lit("initially", {V("P")}),
                lit("clipped", {Term::intConstant(0), V("P"), V("T")}, false)}});
    t.program.push_back(
        Clause{Atom{"holds_at", {V("P"), V("T")}},
               {lit("add", {V("P"), V("E")}), lit("time", {V("E")}),
                lit("<", {V("E"), V("T")}),
                lit("clipped", {V("E"), V("P"), V("T")}, false)}});
    t.program.push_back(
        Clause{Atom{"clipped", {V("E"), V("P"), V("T")}},
               {lit("del", {V("P"), V("C")}), lit("time", {V("C")}),
                lit("<=", {V("E"), V("C")}), lit("<", {V("C"), V("T")})}});
    t.program.push_back(Clause{Atom{"add", {V("P"), V("T")}},
                               {lit("add_db", {V("P"), V("T")})}});
    t.program.push_back(Clause{Atom{"add", {V("P"), V("T")}},
                               {lit("insert", {V("P"), V("T")})}});
    t.program.push_back(Clause{Atom{"del", {V("P"), V("T")}},
                               {lit("del_db", {V("P"), V("T")})}});
    t.program.push_back(Clause{Atom{"del", {V("P"), V("T")}},
                               {lit("retract", {V("P"), V("T")})}});

    t.constraints.push_back(Denial{
        {"P", "T"},
        {lit("insert", {V("P"), V("T")}), lit("retract", {V("P"), V("T")})}});
    t.constraints.push_back(Denial{
        {"P", "T"},
        {lit("insert", {V("P"), V("T")}), lit("add_db", {V("P"), V("T")})}});
    t.constraints.push_back(Denial{
        {"P", "T"},
        {lit("retract", {V("P"), V("T")}), lit("del_db", {V("P"), V("T")})}});

    // Each user constraint becomes a time-indexed check that fires one step
    // after any event touching one of its predicates.
    int icCounter = 0;
    for (const auto& d : ics.denials) {
        std::string icPred = "ic_" + std::to_string(++icCounter);
        t.defined.insert(icPred);
        Clause icClause{Atom{icPred, {V("T")}}, {}};
        std::set<std::string> predicates;
        std::set<std::size_t> arities;
        for (const auto& l : d.body) {
            if (l.atom.predicate == "fact") {
                Atom inner = termToAtom(l.atom.args[0]);
                predicates.insert(inner.predicate);
                arities.insert(inner.args.size());
                icClause.body.push_back(Literal{
                    Atom{"holds_at", {l.atom.args[0], V("T")}}, l.positive});
            } else {
                icClause.body.push_back(l);
            }
        }
        t.program.push_back(std::move(icClause));

        for (const auto& pred : predicates) {
            for (std::size_t arity : arities) {
                std::vector<Term> args;
                for (std::size_t i = 0; i < arity; ++i)
                    args.push_back(V("A" + std::to_string(i + 1)));
                Term pattern = args.empty()
                                   ? Term::constant(pred)
                                   : Term::compound(pred, args);
                std::vector<std::string> uvars = pattern.vars();
                uvars.push_back("T");
                uvars.push_back("NT");
                for (const char* trigger : {"add_db", "insert"}) {
                    Denial guard;
                    guard.universalVars = uvars;
                    guard.body = {
                        lit(trigger, {pattern, V("T")}),
                        eqLiteral(V("NT"),
                                  Term::compound(
                                      "+", {V("T"), Term::intConstant(1)})),
                        lit(icPred.c_str(), {V("NT")})};
                    t.constraints.push_back(std::move(guard));
                }
            }
        }
        t.constraints.push_back(Denial{
            {}, {lit(icPred.c_str(), {Term::intConstant(0)})}});
    }
    for (const auto& c : ics.auxiliaryClauses) {
        t.program.push_back(c);
        t.defined.insert(c.head.predicate);
    }
    return t;
}

bool Repair::ground() const {
    return std::all_of(insert.begin(), insert.end(),
                       [](const Atom& a) { return a.ground(); }) &&
           std::all_of(retract.begin(), retract.end(),
                       [](const Atom& a) { return a.ground(); });
}

std::vector<std::string> Repair::freeVars() const {
    std::vector<std::string> out;
    for (const auto& a : insert) a.collectVars(out);
    for (const auto& a : retract) a.collectVars(out);
    return out;
}

std::string Repair::toString() const {
    std::ostringstream os;
    auto atoms = [&](const std::vector<Atom>& as) {
        os << '{';
        for (std::size_t i = 0; i < as.size(); ++i) {
            if (i > 0) os << ", ";
            os << as[i].toString();
        }
        os << '}';
    };
    os << '(';
    atoms(insert);
    os << ", ";
    atoms(retract);
    os << ')';
    for (const auto& d : residual) os << " where " << d.toString();
    return os.str();
}

bool Repair::operator==(const Repair& other) const {
    return insert == other.insert && retract == other.retract &&
           residual == other.residual;
}

bool Repair::operator<(const Repair& other) const {
    if (insert != other.insert) return insert < other.insert;
    if (retract != other.retract) return retract < other.retract;
    return residual.size() < other.residual.size();
}

Repair solutionToRepair(const std::vector<Atom>& delta,
                        const EqualityStore& store) {
    Repair r;
    const Substitution& solved = store.solved();
    std::vector<std::string> free;
    for (const auto& a : delta) {
        Atom grounded = solved.apply(a);
        Atom inner;
        if (grounded.args.size() == 1) {
            inner = termToAtom(grounded.args[0]);
        } else {
            // Timestamped abducible insert(P,T)/retract(P,T).
            inner = Atom{"at", grounded.args};
        }
        inner.collectVars(free);
        if (grounded.predicate == "insert")
            addSorted(r.insert, inner);
        else if (grounded.predicate == "retract")
            addSorted(r.retract, inner);
        else
            throw std::invalid_argument("non insert/retract abducible: " +
                                        grounded.predicate);
    }
    for (const auto& d : store.disequalities()) {
        bool relevant = std::any_of(
            free.begin(), free.end(), [&](const std::string& v) {
                return d.lhs.containsVar(v) || d.rhs.containsVar(v);
            });
        if (relevant) r.residual.push_back(d);
    }
    return r;
}

RepairedDatabase applyRepair(const std::vector<DatabaseInstance>& databases,
                             const Repair& repair,
                             const Substitution& grounding,
                             const std::vector<FormulaPtr>& constraints) {
    for (const auto& v : repair.freeVars())
        if (!grounding.lookup(v))
            throw std::invalid_argument("grounding misses free variable " + v);
    for (const auto& d : repair.residual) {
        auto mgu = unify(grounding.apply(d.lhs), grounding.apply(d.rhs));
        bool violated =
            mgu && std::all_of(mgu->bindings().begin(), mgu->bindings().end(),
                               [&](const auto& b) {
                                   return std::find(d.universalVars.begin(),
                                                    d.universalVars.end(),
                                                    b.first) !=
                                          d.universalVars.end();
                               });
        if (violated)
            throw std::invalid_argument(
                "grounding violates residual constraint " + d.toString());
    }
    RepairedDatabase out;
    out.constraints = constraints;
    out.facts = unionFacts(databases);
    for (const auto& a : repair.retract) {
        Atom g = grounding.apply(a);
        out.facts.erase(std::remove(out.facts.begin(), out.facts.end(), g),
                        out.facts.end());
    }
    for (const auto& a : repair.insert) addSorted(out.facts, grounding.apply(a));
    return out;
}

bool isNonRecursive(const std::vector<Clause>& program) {
    // Depends-on graph over predicates; recursive iff it has a cycle.
    std::map<std::string, std::set<std::string>> deps;
    for (const auto& c : program)
        for (const auto& l : c.body)
            deps[c.head.predicate].insert(l.atom.predicate);
    std::map<std::string, int> mark; // 0 unseen, 1 in progress, 2 done
    std::vector<std::string> stack;
    for (const auto& [p, _] : deps) {
        (void)_;
        if (mark[p]) continue;
        stack.push_back(p);
        std::vector<std::pair<std::string, std::size_t>> dfs{{p, 0}};
        mark[p] = 1;
        while (!dfs.empty()) {
            auto& [cur, idx] = dfs.back();
            const auto& next = deps[cur];
            if (idx >= next.size()) {
                mark[cur] = 2;
                dfs.pop_back();
                continue;
            }
            auto it = next.begin();
            std::advance(it, idx++);
            const std::string& child = *it;
            if (mark[child] == 1) return false;
            if (mark[child] == 0 && deps.count(child)) {
                mark[child] = 1;
                dfs.emplace_back(child, 0);
            }
        }
    }
    return true;
}

} // namespace repairdb
