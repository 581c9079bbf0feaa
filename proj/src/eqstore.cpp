#include "repairdb/eqstore.hpp"

#include <algorithm>
#include <sstream>

namespace repairdb {

std::string Disequality::toString() const {
    std::ostringstream os;
    if (!universalVars.empty()) {
        os << "forall ";
        for (std::size_t i = 0; i < universalVars.size(); ++i) {
            if (i > 0) os << ',';
            os << universalVars[i];
        }
        os << ". ";
    }
    os << lhs.toString() << " != " << rhs.toString();
    return os.str();
}

bool Disequality::operator==(const Disequality& other) const {
    return universalVars == other.universalVars && lhs == other.lhs &&
           rhs == other.rhs;
}

Term foldArith(const Term& t) {
    if (!t.isCompound()) return t;
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args()) args.push_back(foldArith(a));
    if (args.size() == 2 && (t.name() == "+" || t.name() == "-")) {
        auto l = args[0].intValue();
        auto r = args[1].intValue();
        if (l && r)
            return Term::intConstant(t.name() == "+" ? *l + *r : *l - *r);
    }
    return Term::compound(t.name(), std::move(args));
}

namespace {

/// A disequality is violated when some instantiation of its universal
/// variables equates the two sides for every value of the free variables,
/// i.e. when the mgu binds universal variables only.
bool violates(const std::vector<std::string>& universalVars,
              const Substitution& mgu) {
    return std::all_of(mgu.bindings().begin(), mgu.bindings().end(),
                       [&](const auto& binding) {
                           return std::find(universalVars.begin(),
                                            universalVars.end(),
                                            binding.first) !=
                                  universalVars.end();
                       });
}

} // namespace

bool EqualityStore::insertSimplified(std::vector<std::string> universalVars,
                                     Term s, Term t) {
    s = foldArith(solved_.apply(s));
    t = foldArith(solved_.apply(t));
    // Restrict the quantifier prefix to variables still present.
    std::vector<std::string> occurring;
    for (const auto& v : universalVars)
        if (s.containsVar(v) || t.containsVar(v)) occurring.push_back(v);

    auto mgu = unify(s, t);
    if (!mgu) return true; // non-unifiable: trivially true, dropped
    if (violates(occurring, *mgu)) {
        consistent_ = false;
        return false;
    }
    disequalities_.push_back({std::move(occurring), std::move(s), std::move(t)});
    return true;
}

bool EqualityStore::addEquality(const Term& s, const Term& t) {
    if (!consistent_) return false;
    auto mgu = unify(foldArith(solved_.apply(s)), foldArith(solved_.apply(t)));
    if (!mgu) {
        consistent_ = false;
        return false;
    }
    solved_ = solved_.composeWith(*mgu);
    std::vector<Disequality> pending = std::move(disequalities_);
    disequalities_.clear();
    for (auto& d : pending) {
        if (!insertSimplified(std::move(d.universalVars), d.lhs, d.rhs))
            return false;
    }
    return true;
}

bool EqualityStore::addDisequality(std::vector<std::string> universalVars,
                                   const Term& s, const Term& t) {
    if (!consistent_) return false;
    return insertSimplified(std::move(universalVars), s, t);
}

bool EqualityStore::satisfiedBy(const Substitution& grounding) const {
    if (!consistent_) return false;
    for (const auto& d : disequalities_) {
        auto mgu = unify(grounding.apply(d.lhs), grounding.apply(d.rhs));
        if (mgu && violates(d.universalVars, *mgu)) return false;
    }
    return true;
}

std::string EqualityStore::toString() const {
    std::ostringstream os;
    os << solved_.toString();
    for (const auto& d : disequalities_) os << ", " << d.toString();
    if (!consistent_) os << " [inconsistent]";
    return os.str();
}

} // namespace repairdb
