#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "repairdb/oracle.hpp"

using namespace repairdb;
using namespace repairdb::oracle;

namespace {

Term C(const char* n) { return Term::constant(n); }
Term V(const char* n) { return Term::var(n); }
Atom prop(const char* p) { return Atom{p, {}}; }
FormulaPtr propF(const char* p) { return Formula::atom(prop(p)); }

constexpr TruthValue T = TruthValue::True;
constexpr TruthValue F = TruthValue::False;
constexpr TruthValue B = TruthValue::Both;

Valuation val(std::map<Atom, TruthValue> m) { return Valuation{std::move(m)}; }

Repair mk(std::vector<Atom> insert, std::vector<Atom> retract) {
    Repair r;
    r.insert = std::move(insert);
    r.retract = std::move(retract);
    std::sort(r.insert.begin(), r.insert.end());
    std::sort(r.retract.begin(), r.retract.end());
    return r;
}

/// {p, r} under p -> q: the running propositional example.
OracleInput propositionalInput() {
    OracleInput in;
    in.facts = {prop("p"), prop("r")};
    in.constraints = {Formula::implies(propF("p"), propF("q"))};
    return in;
}

} // namespace

TEST_CASE("three-valued connectives") {
    SUBCASE("designated values are t and the inconsistent value") {
        CHECK(designated(T));
        CHECK(designated(B));
        CHECK(!designated(F));
    }
    SUBCASE("truth-order meet, join, involution") {
        CHECK(and3(T, F) == F);
        CHECK(and3(T, B) == B);
        CHECK(and3(B, F) == F);
        CHECK(or3(F, B) == B);
        CHECK(or3(B, T) == T);
        CHECK(not3(B) == B);
        CHECK(not3(T) == F);
    }
    SUBCASE("knowledge join: t with f gives the inconsistent value") {
        CHECK(knowledgeJoin(T, F) == B);
        CHECK(knowledgeJoin(T, T) == T);
        CHECK(knowledgeJoin(F, F) == F);
        CHECK(knowledgeJoin(B, T) == B);
    }
    SUBCASE("knowledge order") {
        CHECK(leqK(T, B));
        CHECK(leqK(F, B));
        CHECK(!leqK(B, T));
        CHECK(!leqK(T, F));
        CHECK(leqK(T, T));
    }
}

TEST_CASE("atom universe and Herbrand minimum") {
    auto universe = atomUniverse({{"p", 1}, {"q", 2}}, {"a", "b"});
    CHECK(universe.size() == 2 + 4);
    Valuation h = herbrandMinModel({Atom{"p", {C("a")}}}, universe);
    CHECK(h.at(Atom{"p", {C("a")}}) == T);
    CHECK(h.at(Atom{"p", {C("b")}}) == F);
    CHECK(h.at(Atom{"q", {C("a"), C("b")}}) == F);
    CHECK(h.twoValued());
}

TEST_CASE("eval3") {
    Valuation v = val({{prop("p"), B}, {prop("q"), F}, {prop("r"), T}});
    SUBCASE("an inconsistent atom is designated") {
        CHECK(eval3(v, propF("p"), {}) == B);
        CHECK(designated(eval3(v, propF("p"), {})));
    }
    SUBCASE("implication with inconsistent antecedent, false consequent") {
        // p -> q is ~p | q = B | F = B: designated, so the constraint is
        // not falsified by an inconsistent database.
        CHECK(eval3(v, Formula::implies(propF("p"), propF("q")), {}) == B);
    }
    SUBCASE("two-valued fragment agrees with classical logic") {
        FormulaPtr f = Formula::disj(Formula::negate(propF("q")), propF("r"));
        CHECK(eval3(v, f, {}) == T);
        CHECK(eval3(v, Formula::conj(propF("q"), propF("r")), {}) == F);
    }
    SUBCASE("quantifiers range over the domain") {
        Valuation w = val({{Atom{"p", {C("a")}}, T}, {Atom{"p", {C("b")}}, F}});
        FormulaPtr all = Formula::forall("X", Formula::atom(Atom{"p", {V("X")}}));
        FormulaPtr some = Formula::exists("X", Formula::atom(Atom{"p", {V("X")}}));
        CHECK(eval3(w, all, {"a", "b"}) == F);
        CHECK(eval3(w, some, {"a", "b"}) == T);
        CHECK(eval3(w, all, {"a"}) == T);
    }
    SUBCASE("equality and comparisons by unique names") {
        CHECK(eval3({}, Formula::equal(C("a"), C("a")), {}) == T);
        CHECK(eval3({}, Formula::equal(C("a"), C("b")), {}) == F);
        CHECK(eval3({}, Formula::atom(Atom{
                            "<", {Term::intConstant(1), Term::intConstant(2)}}),
                    {}) == T);
        CHECK(eval3({}, Formula::atom(Atom{">=", {Term::intConstant(1),
                                                  Term::intConstant(2)}}),
                    {}) == F);
    }
}

TEST_CASE("twoValuedModels") {
    auto universe = atomUniverse({{"p", 0}, {"q", 0}, {"r", 0}}, {});
    SUBCASE("p -> q over {p,q,r} has six models") {
        auto models = twoValuedModels(
            {Formula::implies(propF("p"), propF("q"))}, universe, {});
        CHECK(models.size() == 6);
        for (const auto& m : models) {
            CHECK(m.twoValued());
            if (m.at(prop("p")) == T) CHECK(m.at(prop("q")) == T);
        }
    }
    SUBCASE("no constraints: all interpretations") {
        CHECK(twoValuedModels({}, universe, {}).size() == 8);
    }
    SUBCASE("unsatisfiable: no models") {
        auto models = twoValuedModels(
            {propF("p"), Formula::negate(propF("p"))}, universe, {});
        CHECK(models.empty());
    }
    SUBCASE("oversized universe is rejected") {
        auto big = atomUniverse({{"e", 2}}, {"a", "b", "c", "d", "e"});
        CHECK(big.size() == 25);
        CHECK_THROWS_AS(twoValuedModels({}, big, {}), std::invalid_argument);
    }
}

TEST_CASE("repairFromModel") {
    std::vector<Atom> facts{prop("p"), prop("r")};
    SUBCASE("model {p,q,r}: insert q") {
        Valuation m = val({{prop("p"), T}, {prop("q"), T}, {prop("r"), T}});
        CHECK(repairFromModel(m, facts) == mk({prop("q")}, {}));
    }
    SUBCASE("model where everything is false: retract p and r") {
        Valuation m = val({{prop("p"), F}, {prop("q"), F}, {prop("r"), F}});
        CHECK(repairFromModel(m, facts) == mk({}, {prop("p"), prop("r")}));
    }
    SUBCASE("model equals database: empty repair") {
        Valuation m = val({{prop("p"), T}, {prop("q"), F}, {prop("r"), T}});
        Repair r = repairFromModel(m, facts);
        CHECK(r.insert.empty());
        CHECK(r.retract.empty());
    }
}

TEST_CASE("valuation knowledge join") {
    Valuation a = val({{prop("p"), T}, {prop("q"), F}, {prop("r"), T}});
    Valuation b = val({{prop("p"), T}, {prop("q"), T}, {prop("r"), T}});
    Valuation joined = knowledgeJoin(a, b);
    CHECK(joined.at(prop("p")) == T);
    CHECK(joined.at(prop("q")) == B);
    CHECK(joined.at(prop("r")) == T);
    CHECK(knowledgeJoin(a, a) == a);
    // {p:B, q:t} is NOT of the form D (+) M for any two-valued M over {p,q}
    // with database {p}: the join always values q in {t,f} agreeing with M,
    // but can only make p inconsistent when M differs from D on p.
    Valuation odd = val({{prop("p"), B}, {prop("q"), T}});
    Valuation hd = herbrandMinModel({prop("p")}, {prop("p"), prop("q")});
    bool reachable = false;
    for (const auto& m : twoValuedModels({}, {prop("p"), prop("q")}, {}))
        if (knowledgeJoin(hd, m) == odd) reachable = true;
    CHECK(!reachable);
    // but Top on q IS reachable: D (+) {q} = {p:t.. wait p agrees} ->
    // join of {p:t,q:f} with {p:t,q:t} = {p:t,q:B}
    Valuation even = val({{prop("p"), T}, {prop("q"), B}});
    reachable = false;
    for (const auto& m : twoValuedModels({}, {prop("p"), prop("q")}, {}))
        if (knowledgeJoin(hd, m) == even) reachable = true;
    CHECK(reachable);
}

TEST_CASE("dist is the symmetric difference") {
    std::vector<Atom> d1{prop("p"), prop("q")};
    std::vector<Atom> d2{prop("q"), prop("r")};
    auto d = dist(d1, d2);
    std::sort(d.begin(), d.end());
    CHECK(d == std::vector<Atom>{prop("p"), prop("r")});
    CHECK(dist(d1, d1).empty());
}

TEST_CASE("k-minimal elements of the repair space") {
    OracleInput in = propositionalInput();
    auto mins = mdbMinElements(in);
    // Two k-minimal elements: {p:t, q:B, r:t} (add q, keep p) and
    // {p:B, q:f, r:t} (drop p).
    Valuation m1 = val({{prop("p"), T}, {prop("q"), B}, {prop("r"), T}});
    Valuation m2 = val({{prop("p"), B}, {prop("q"), F}, {prop("r"), T}});
    std::set<Valuation> got(mins.begin(), mins.end());
    CHECK(got == std::set<Valuation>{m1, m2});
}

TEST_CASE("k-minimal elements with binary facts") {
    // D = {p(a), p(b), q(a), q(c)}, constraint forall X (p(X) -> q(X)).
    OracleInput in;
    in.facts = {Atom{"p", {C("a")}}, Atom{"p", {C("b")}}, Atom{"q", {C("a")}},
                Atom{"q", {C("c")}}};
    in.constraints = {Formula::forall(
        "X", Formula::implies(Formula::atom(Atom{"p", {V("X")}}),
                              Formula::atom(Atom{"q", {V("X")}})))};
    in.domain = {"a", "b", "c"};
    auto mins = mdbMinElements(in);
    CHECK(mins.size() == 2);
    auto repairs = preferredRepairsOracle(in, OracleCriterion::Inclusion);
    std::set<Repair> got(repairs.begin(), repairs.end());
    std::set<Repair> want{mk({}, {Atom{"p", {C("b")}}}),
                          mk({Atom{"q", {C("b")}}}, {})};
    CHECK(got == want);
}

TEST_CASE("preferred repairs, propositional example") {
    OracleInput in = propositionalInput();
    for (auto crit : {OracleCriterion::Inclusion, OracleCriterion::Cardinality}) {
        auto repairs = preferredRepairsOracle(in, crit);
        std::set<Repair> got(repairs.begin(), repairs.end());
        std::set<Repair> want{mk({prop("q")}, {}), mk({}, {prop("p")})};
        CHECK(got == want);
    }
}

TEST_CASE("preferred repairs of a consistent database: empty repair only") {
    OracleInput in;
    in.facts = {prop("p"), prop("q")};
    in.constraints = {Formula::implies(propF("p"), propF("q"))};
    auto repairs = preferredRepairsOracle(in, OracleCriterion::Inclusion);
    REQUIRE(repairs.size() == 1);
    CHECK(repairs[0].insert.empty());
    CHECK(repairs[0].retract.empty());
}

TEST_CASE("model/repair correspondence round-trips") {
    OracleInput in = propositionalInput();
    auto universe = atomUniverse({{"p", 0}, {"q", 0}, {"r", 0}}, {});
    Valuation hd = herbrandMinModel(in.facts, universe);
    for (const auto& m : twoValuedModels(in.constraints, universe, {})) {
        Repair r = repairFromModel(m, in.facts);
        // Applying the repair to D reproduces M's true set.
        std::set<Atom> repaired(in.facts.begin(), in.facts.end());
        for (const auto& a : r.retract) repaired.erase(a);
        for (const auto& a : r.insert) repaired.insert(a);
        auto trueSet = m.trueSet();
        CHECK(repaired == std::set<Atom>(trueSet.begin(), trueSet.end()));
        // dist(D, M^t) is exactly the Top-set of the knowledge join.
        auto top = knowledgeJoin(hd, m).topSet();
        auto d = dist(in.facts, trueSet);
        std::sort(d.begin(), d.end());
        std::sort(top.begin(), top.end());
        CHECK(top == d);
    }
}

TEST_CASE("knowledge-monotonicity of positive information (exhaustive)") {
    // For formulas built without negation, moving knowledge-upward in the
    // valuation never destroys designatedness — checked exhaustively over
    // all valuation pairs on a three-atom universe.
    std::vector<Atom> universe{prop("p"), prop("q"), prop("r")};
    std::vector<FormulaPtr> formulas{
        propF("p"),
        Formula::conj(propF("p"), propF("q")),
        Formula::disj(propF("p"), propF("r")),
        Formula::conj(Formula::disj(propF("p"), propF("q")), propF("r")),
        Formula::implies(propF("p"), propF("q")), // contains negation: skip
    };
    TruthValue values[] = {F, B, T};
    std::vector<Valuation> all;
    for (auto a : values)
        for (auto b : values)
            for (auto c : values)
                all.push_back(val(
                    {{prop("p"), a}, {prop("q"), b}, {prop("r"), c}}));
    CHECK(all.size() == 27);
    auto pointwiseLeqK = [&](const Valuation& lo, const Valuation& hi) {
        for (const auto& a : universe)
            if (!leqK(lo.at(a), hi.at(a))) return false;
        return true;
    };
    for (std::size_t fi = 0; fi + 1 < formulas.size(); ++fi) { // skip the last
        for (const auto& lo : all)
            for (const auto& hi : all) {
                if (!pointwiseLeqK(lo, hi)) continue;
                if (designated(eval3(lo, formulas[fi], {})))
                    CHECK(designated(eval3(hi, formulas[fi], {})));
            }
    }
    // Negation breaks the property; exhibit a witness for the skipped one.
    Valuation lo = val({{prop("p"), F}, {prop("q"), F}, {prop("r"), F}});
    Valuation hi = val({{prop("p"), T}, {prop("q"), F}, {prop("r"), F}});
    CHECK(designated(eval3(lo, formulas.back(), {})));
    CHECK(!designated(eval3(hi, formulas.back(), {})));
}

TEST_CASE("satisfiesDenialTheory handles auxiliary definitions") {
    // constraint: forall X (p(X) -> q(X)) as a denial <- p(X) & ~q(X)
    DenialTheory t;
    t.denials.push_back(Denial{
        {},
        {Literal{Atom{"p", {V("X")}}, true}, Literal{Atom{"q", {V("X")}}, false}}});
    CHECK(satisfiesDenialTheory({Atom{"p", {C("a")}}, Atom{"q", {C("a")}}}, t,
                                {"a", "b"}));
    CHECK(!satisfiesDenialTheory({Atom{"p", {C("a")}}}, t, {"a", "b"}));
    CHECK(satisfiesDenialTheory({Atom{"q", {C("b")}}}, t, {"a", "b"}));
}
