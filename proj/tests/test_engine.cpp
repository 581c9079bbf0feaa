#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <regex>
#include <sstream>

#include "repairdb/composer.hpp"
#include "repairdb/engine.hpp"
#include "repairdb/optimizer.hpp"
#include "repairdb/transform.hpp"

using namespace repairdb;

namespace {

Term V(const char* n) { return Term::var(n); }
Term C(const char* n) { return Term::constant(n); }

Atom teaches(const char* a, const char* b) {
    return Atom{"teaches", {C(a), C(b)}};
}

FormulaPtr atomF(const char* p, std::vector<Term> args) {
    return Formula::atom(Atom{p, std::move(args)});
}

/// forall X,Y,Z (teaches(X,Y) & teaches(X,Z) -> Y = Z)
FormulaPtr oneTeacherPerCourse() {
    return Formula::forall(
        "X",
        Formula::forall(
            "Y", Formula::forall(
                     "Z", Formula::implies(
                              Formula::conj(atomF("teaches", {V("X"), V("Y")}),
                                            atomF("teaches", {V("X"), V("Z")})),
                              Formula::equal(V("Y"), V("Z"))))));
}

AbductiveTheory example1Theory() {
    DatabaseInstance d1{"d1", {teaches("c1", "n1"), teaches("c2", "n2")}, {}};
    DatabaseInstance d2{"d2", {teaches("c2", "n3")}, {}};
    return compose({d1, d2},
                   rewriteFactLevel(lloydTopor({oneTeacherPerCourse()})));
}

/// Example 1 plus "someone teaches n3" — the non-ground-solution theory.
AbductiveTheory teachesN3Theory() {
    DatabaseInstance d1{"d1", {teaches("c1", "n1"), teaches("c2", "n2")}, {}};
    DatabaseInstance d2{"d2", {teaches("c2", "n3")}, {}};
    FormulaPtr someoneTeachesN3 =
        Formula::exists("Y", atomF("teaches", {V("Y"), C("n3")}));
    return compose(
        {d1, d2},
        rewriteFactLevel(lloydTopor({oneTeacherPerCourse(),
                                     someoneTeachesN3})));
}

std::set<Repair> repairSet(const DerivationResult& result) {
    std::set<Repair> out;
    for (const auto& s : result.solutions)
        out.insert(canonicalizeRepair(solutionToRepair(s.delta, s.equalities)));
    return out;
}

} // namespace

TEST_CASE("empty theory: the single solution is the empty delta") {
    AbductiveTheory t = compose({}, DenialTheory{});
    DerivationResult result = derive(t, {});
    CHECK(result.status == SearchStatus::Complete);
    CHECK(result.flounderings.empty());
    REQUIRE(result.solutions.size() == 1);
    CHECK(result.solutions[0].delta.empty());
}

TEST_CASE("Example 1: solutions filter to exactly the two known repairs") {
    DerivationResult result = derive(example1Theory(), {});
    CHECK(result.status == SearchStatus::Complete);
    CHECK(result.flounderings.empty());
    std::set<Repair> distinct = repairSet(result);
    std::vector<Repair> all(distinct.begin(), distinct.end());
    std::vector<Repair> preferred;
    for (const auto& r : all)
        if (isPreferred(r, all, Criterion::Inclusion)) preferred.push_back(r);

    Repair r1;
    r1.retract.push_back(teaches("c2", "n2"));
    Repair r2;
    r2.retract.push_back(teaches("c2", "n3"));
    CHECK(preferred == std::vector<Repair>{r1, r2});
}

TEST_CASE("non-ground solution with residual constraints (teaches n3)") {
    DerivationResult result = derive(teachesN3Theory(), {});
    CHECK(result.status == SearchStatus::Complete);
    bool found = false;
    for (const auto& s : result.solutions) {
        Repair r = canonicalizeRepair(solutionToRepair(s.delta, s.equalities));
        if (r.retract == std::vector<Atom>{teaches("c2", "n3")} &&
            r.insert.size() == 1 &&
            r.insert[0] == Atom{"teaches", {V("_V1"), C("n3")}}) {
            // residual: _V1 != c1 and _V1 != c2
            REQUIRE(r.residual.size() == 2);
            CHECK(r.residual[0] == Disequality{{}, V("_V1"), C("c1")});
            CHECK(r.residual[1] == Disequality{{}, V("_V1"), C("c2")});
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("every solution state is consistent and ground within budget") {
    DerivationResult result = derive(teachesN3Theory(), {});
    for (const auto& s : result.solutions) {
        CHECK(s.equalities.consistent());
        for (const auto& a : s.delta) {
            CHECK((a.predicate == "insert" || a.predicate == "retract"));
        }
    }
}

TEST_CASE("floundering: universal variable under negation") {
    AbductiveTheory t;
    t.defined.insert("p");
    t.constraints.push_back(
        Denial{{"X"}, {Literal{Atom{"p", {V("X")}}, false}}});
    DerivationResult result = derive(t, {});
    CHECK(result.solutions.empty());
    REQUIRE(result.flounderings.size() == 1);
    CHECK(result.flounderings[0].goal.find("p(") != std::string::npos);
}

TEST_CASE("budget exhaustion is reported distinctly from failure") {
    DeriveOptions opts;
    opts.maxSteps = 3;
    DerivationResult result = derive(example1Theory(), {}, opts);
    CHECK(result.status == SearchStatus::BudgetExhausted);

    // a genuinely failing theory is Complete with no solutions
    AbductiveTheory t;
    t.defined.insert("p");
    t.constraints.push_back(Denial{{}, {Literal{Atom{"p", {}}, false}}});
    DerivationResult failed = derive(t, {});
    CHECK(failed.status == SearchStatus::Complete);
    CHECK(failed.solutions.empty());
    CHECK(failed.flounderings.empty());
}

TEST_CASE("abduced-set budget reports incomplete search") {
    DeriveOptions opts;
    opts.maxDelta = 0;
    DerivationResult result = derive(example1Theory(), {}, opts);
    CHECK(result.status == SearchStatus::BudgetExhausted);
    CHECK(result.solutions.empty());
}

TEST_CASE("solution set is independent of the selection strategy") {
    for (AbductiveTheory t : {example1Theory(), teachesN3Theory()}) {
        DeriveOptions def;
        DeriveOptions left;
        left.strategy = DeriveOptions::Strategy::LeftFirst;
        DeriveOptions fresh;
        fresh.reuseFirst = false;
        auto a = repairSet(derive(t, {}, def));
        auto b = repairSet(derive(t, {}, left));
        auto c = repairSet(derive(t, {}, fresh));
        CHECK(a == b);
        CHECK(a == c);
    }
}

TEST_CASE("query entailment: positive query forces supporting abductions") {
    // No facts at all; query fact(p(a)) can only be satisfied by abducing
    // insert(p(a)).
    AbductiveTheory t = compose({}, DenialTheory{});
    std::vector<Literal> query{
        Literal{Atom{"fact", {Term::compound("p", {C("a")})}}, true}};
    DerivationResult result = derive(t, query);
    REQUIRE(!result.solutions.empty());
    for (const auto& s : result.solutions) {
        REQUIRE(s.delta.size() == 1);
        CHECK(s.delta[0] ==
              Atom{"insert", {Term::compound("p", {C("a")})}});
    }
}

TEST_CASE("answer substitutions") {
    SUBCASE("footnote-style residual: Y != c1, Y != c2 over {c1,c2,c3}") {
        SolutionState sol;
        sol.delta.push_back(
            Atom{"insert", {Term::compound("teaches", {V("Y"), C("n3")})}});
        sol.equalities.addDisequality({}, V("Y"), C("c1"));
        sol.equalities.addDisequality({}, V("Y"), C("c2"));
        auto subs = answerSubstitutions(sol, {"c1", "c2", "c3"}, true);
        REQUIRE(subs.size() == 2); // c3 and the fresh constant
        CHECK(subs[0].apply(V("Y")) == C("c3"));
        CHECK(subs[1].apply(V("Y")).isConstant());
        CHECK(subs[1].apply(V("Y")) != C("c1"));
        CHECK(subs[1].apply(V("Y")) != C("c2"));
        CHECK(subs[1].apply(V("Y")) != C("c3"));
    }
    SUBCASE("ground solution yields the single empty substitution") {
        SolutionState sol;
        sol.delta.push_back(Atom{"retract", {C("p")}});
        auto subs = answerSubstitutions(sol, {"a", "b"}, true);
        REQUIRE(subs.size() == 1);
        CHECK(subs[0].empty());
    }
    SUBCASE("all domain constants excluded: only the fresh witness remains") {
        SolutionState sol;
        sol.delta.push_back(Atom{"insert", {V("X")}});
        sol.equalities.addDisequality({}, V("X"), C("a"));
        sol.equalities.addDisequality({}, V("X"), C("b"));
        auto subs = answerSubstitutions(sol, {"a", "b"}, true);
        REQUIRE(subs.size() == 1);
        CHECK(subs[0].apply(V("X")).isConstant());
    }
}

TEST_CASE("trace log matches the replay format") {
    std::ostringstream trace;
    DeriveOptions opts;
    opts.trace = &trace;
    derive(example1Theory(), {}, opts);
    std::istringstream in(trace.str());
    std::string line;
    std::regex pattern(
        R"(step \d+ rule (D\.1|D\.2|N\.1|N\.2|A\.1|A\.2|E\.1|E\.2|E\.3|E\.4|B\.1|B\.2|F) goal \d+ branch \d+)");
    int lines = 0;
    while (std::getline(in, line)) {
        CHECK(std::regex_match(line, pattern));
        ++lines;
    }
    CHECK(lines > 10);
}

TEST_CASE("trace is reproducible: identical runs give identical logs") {
    std::ostringstream a, b;
    DeriveOptions oa;
    oa.trace = &a;
    DeriveOptions ob;
    ob.trace = &b;
    derive(teachesN3Theory(), {}, oa);
    derive(teachesN3Theory(), {}, ob);
    CHECK(a.str() == b.str());
    CHECK(!a.str().empty());
}
