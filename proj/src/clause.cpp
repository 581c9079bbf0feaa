#include "repairdb/clause.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace repairdb {

std::string Clause::toString() const {
    std::ostringstream os;
    os << head.toString();
    if (!body.empty()) {
        os << " <- ";
        for (std::size_t i = 0; i < body.size(); ++i) {
            if (i > 0) os << " & ";
            os << body[i].toString();
        }
    }
    return os.str();
}

std::vector<std::string> Denial::freeVars() const {
    std::vector<std::string> all;
    for (const Literal& l : body) l.atom.collectVars(all);
    std::vector<std::string> free;
    for (const auto& v : all)
        if (std::find(universalVars.begin(), universalVars.end(), v) ==
            universalVars.end())
            free.push_back(v);
    return free;
}

std::string Denial::toString() const {
    std::ostringstream os;
    if (!universalVars.empty()) {
        os << "forall ";
        for (std::size_t i = 0; i < universalVars.size(); ++i) {
            if (i > 0) os << ',';
            os << universalVars[i];
        }
        os << ". ";
    }
    os << "<-";
    for (std::size_t i = 0; i < body.size(); ++i)
        os << (i == 0 ? " " : " & ") << body[i].toString();
    return os.str();
}

bool Denial::operator==(const Denial& other) const {
    return universalVars == other.universalVars && body == other.body;
}

Literal eqLiteral(Term lhs, Term rhs) {
    return Literal{Atom{"=", {std::move(lhs), std::move(rhs)}}, true};
}

Literal neqLiteral(Term lhs, Term rhs) {
    return Literal{Atom{"=", {std::move(lhs), std::move(rhs)}}, false};
}

bool isEqualityLiteral(const Literal& l) {
    return l.atom.predicate == "=" && l.atom.args.size() == 2;
}

Denial applyToDenial(const Substitution& sub, const Denial& d) {
    for (const auto& v : d.universalVars) {
        if (sub.lookup(v))
            throw std::logic_error("substitution captures universal variable " +
                                   v);
    }
    Denial out{d.universalVars, {}};
    out.body.reserve(d.body.size());
    for (const Literal& l : d.body) out.body.push_back(sub.apply(l));
    return out;
}

} // namespace repairdb
