#include "repairdb/term.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <sstream>

namespace repairdb {

Term Term::var(std::string name) {
    return Term(TermKind::Variable, std::move(name), {});
}

Term Term::constant(std::string name) {
    return Term(TermKind::Constant, std::move(name), {});
}

Term Term::intConstant(std::int64_t value) {
    return Term(TermKind::Constant, std::to_string(value), {});
}

Term Term::compound(std::string functor, std::vector<Term> args) {
    assert(!args.empty() && "zero-ary compounds must be constants");
    return Term(TermKind::Compound, std::move(functor), std::move(args));
}

std::optional<std::int64_t> Term::intValue() const {
    if (kind_ != TermKind::Constant || name_.empty()) return std::nullopt;
    std::int64_t value = 0;
    const char* first = name_.data();
    const char* last = first + name_.size();
    if (*first == '-') ++first;
    if (first == last) return std::nullopt;
    auto [ptr, ec] = std::from_chars(name_.data(), last, value);
    if (ec != std::errc() || ptr != last) return std::nullopt;
    return value;
}

bool Term::ground() const {
    if (isVar()) return false;
    return std::all_of(args_.begin(), args_.end(),
                       [](const Term& t) { return t.ground(); });
}

void Term::collectVars(std::vector<std::string>& out) const {
    if (isVar()) {
        if (std::find(out.begin(), out.end(), name_) == out.end())
            out.push_back(name_);
        return;
    }
    for (const Term& a : args_) a.collectVars(out);
}

std::vector<std::string> Term::vars() const {
    std::vector<std::string> out;
    collectVars(out);
    return out;
}

bool Term::containsVar(const std::string& name) const {
    if (isVar()) return name_ == name;
    return std::any_of(args_.begin(), args_.end(),
                       [&](const Term& t) { return t.containsVar(name); });
}

std::string Term::toString() const {
    if (!isCompound()) return name_;
    std::ostringstream os;
    os << name_ << '(';
    for (std::size_t i = 0; i < args_.size(); ++i) {
        if (i > 0) os << ',';
        os << args_[i].toString();
    }
    os << ')';
    return os.str();
}

bool Term::operator==(const Term& other) const {
    return kind_ == other.kind_ && name_ == other.name_ && args_ == other.args_;
}

bool Term::operator<(const Term& other) const {
    if (kind_ != other.kind_) return kind_ < other.kind_;
    if (name_ != other.name_) return name_ < other.name_;
    return args_ < other.args_;
}

bool Atom::ground() const {
    return std::all_of(args.begin(), args.end(),
                       [](const Term& t) { return t.ground(); });
}

void Atom::collectVars(std::vector<std::string>& out) const {
    for (const Term& a : args) a.collectVars(out);
}

std::vector<std::string> Atom::vars() const {
    std::vector<std::string> out;
    collectVars(out);
    return out;
}

std::string Atom::toString() const {
    if (args.empty()) return predicate;
    std::ostringstream os;
    os << predicate << '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i > 0) os << ',';
        os << args[i].toString();
    }
    os << ')';
    return os.str();
}

bool Atom::operator==(const Atom& other) const {
    return predicate == other.predicate && args == other.args;
}

bool Atom::operator<(const Atom& other) const {
    if (predicate != other.predicate) return predicate < other.predicate;
    return args < other.args;
}

std::string Literal::toString() const {
    if (atom.predicate == "=" && atom.args.size() == 2) {
        return atom.args[0].toString() + (positive ? " = " : " != ") +
               atom.args[1].toString();
    }
    return positive ? atom.toString() : "~" + atom.toString();
}

bool Literal::operator==(const Literal& other) const {
    return positive == other.positive && atom == other.atom;
}

bool Literal::operator<(const Literal& other) const {
    if (positive != other.positive) return positive < other.positive;
    return atom < other.atom;
}

Term atomToTerm(const Atom& a) {
    if (a.args.empty()) return Term::constant(a.predicate);
    return Term::compound(a.predicate, a.args);
}

Atom termToAtom(const Term& t) {
    assert(!t.isVar() && "cannot read an atom off a variable");
    return Atom{t.name(), t.args()};
}

bool isBuiltinComparison(const std::string& predicate) {
    return predicate == "<" || predicate == "<=" || predicate == ">" ||
           predicate == ">=";
}

} // namespace repairdb
