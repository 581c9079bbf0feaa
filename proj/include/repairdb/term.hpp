#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace repairdb {

enum class TermKind { Variable, Constant, Compound };

/// Immutable first-order term: a variable, a constant, or a compound
/// term f(t1,...,tn) with n >= 1. Zero-ary compounds are constants.
class Term {
public:
    static Term var(std::string name);
    static Term constant(std::string name);
    static Term intConstant(std::int64_t value);
    static Term compound(std::string functor, std::vector<Term> args);

    TermKind kind() const { return kind_; }
    bool isVar() const { return kind_ == TermKind::Variable; }
    bool isConstant() const { return kind_ == TermKind::Constant; }
    bool isCompound() const { return kind_ == TermKind::Compound; }

    /// Variable name, constant name, or functor.
    const std::string& name() const { return name_; }
    const std::vector<Term>& args() const { return args_; }

    /// Integer value of a numeric constant, if it is one.
    std::optional<std::int64_t> intValue() const;

    bool ground() const;
    void collectVars(std::vector<std::string>& out) const;
    std::vector<std::string> vars() const;
    bool containsVar(const std::string& name) const;

    std::string toString() const;

    bool operator==(const Term& other) const;
    bool operator!=(const Term& other) const { return !(*this == other); }
    bool operator<(const Term& other) const;

private:
    Term(TermKind kind, std::string name, std::vector<Term> args)
        : kind_(kind), name_(std::move(name)), args_(std::move(args)) {}

    TermKind kind_;
    std::string name_;
    std::vector<Term> args_;
};

/// Predicate applied to terms. The predicate/arity pair identifies the
/// relation; arity consistency is enforced at theory-building time.
struct Atom {
    std::string predicate;
    std::vector<Term> args;

    bool ground() const;
    std::vector<std::string> vars() const;
    void collectVars(std::vector<std::string>& out) const;
    std::string toString() const;

    bool operator==(const Atom& other) const;
    bool operator!=(const Atom& other) const { return !(*this == other); }
    bool operator<(const Atom& other) const;
};

struct Literal {
    Atom atom;
    bool positive = true;

    std::string toString() const;
    bool operator==(const Literal& other) const;
    bool operator<(const Literal& other) const;
};

/// Reification between atoms and terms, used by the composer meta-level
/// (facts appear as arguments of db/fact/insert/retract).
Term atomToTerm(const Atom& a);
Atom termToAtom(const Term& t);

/// Built-in predicates evaluated over ground integers.
bool isBuiltinComparison(const std::string& predicate);

} // namespace repairdb
