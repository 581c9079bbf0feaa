#include "repairdb/subst.hpp"

#include <sstream>
#include <utility>
#include <vector>

namespace repairdb {

const Term* Substitution::lookup(const std::string& var) const {
    auto it = bindings_.find(var);
    return it == bindings_.end() ? nullptr : &it->second;
}

Term Substitution::apply(const Term& t) const {
    switch (t.kind()) {
    case TermKind::Variable: {
        const Term* bound = lookup(t.name());
        return bound ? *bound : t;
    }
    case TermKind::Constant:
        return t;
    case TermKind::Compound: {
        std::vector<Term> args;
        args.reserve(t.args().size());
        for (const Term& a : t.args()) args.push_back(apply(a));
        return Term::compound(t.name(), std::move(args));
    }
    }
    return t;
}

Atom Substitution::apply(const Atom& a) const {
    Atom out{a.predicate, {}};
    out.args.reserve(a.args.size());
    for (const Term& t : a.args) out.args.push_back(apply(t));
    return out;
}

Literal Substitution::apply(const Literal& l) const {
    return Literal{apply(l.atom), l.positive};
}

void Substitution::bind(const std::string& var, const Term& term) {
    Substitution single;
    single.bindings_.emplace(var, term);
    for (auto& [v, t] : bindings_) t = single.apply(t);
    bindings_.insert_or_assign(var, term);
}

Substitution Substitution::composeWith(const Substitution& other) const {
    Substitution out;
    for (const auto& [v, t] : bindings_) {
        Term rewritten = other.apply(t);
        // Drop trivial bindings X := X created by the rewrite.
        if (rewritten.isVar() && rewritten.name() == v) continue;
        out.bindings_.emplace(v, rewritten);
    }
    for (const auto& [v, t] : other.bindings_) out.bindings_.emplace(v, t);
    return out;
}

std::string Substitution::toString() const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& [v, t] : bindings_) {
        if (!first) os << ", ";
        first = false;
        os << v << " -> " << t.toString();
    }
    os << '}';
    return os.str();
}

namespace {

bool unifyInto(Term s, Term t, Substitution& sigma) {
    s = sigma.apply(s);
    t = sigma.apply(t);
    if (s == t) return true;
    if (s.isVar()) {
        if (t.containsVar(s.name())) return false; // occurs-check
        sigma.bind(s.name(), t);
        return true;
    }
    if (t.isVar()) return unifyInto(t, s, sigma);
    if (s.kind() != t.kind()) return false;
    if (s.name() != t.name() || s.args().size() != t.args().size())
        return false;
    for (std::size_t i = 0; i < s.args().size(); ++i)
        if (!unifyInto(s.args()[i], t.args()[i], sigma)) return false;
    return true;
}

} // namespace

std::optional<Substitution> unify(const Term& s, const Term& t) {
    Substitution sigma;
    if (!unifyInto(s, t, sigma)) return std::nullopt;
    return sigma;
}

std::optional<Substitution> unifyAll(const std::vector<Term>& ss,
                                     const std::vector<Term>& ts) {
    if (ss.size() != ts.size()) return std::nullopt;
    Substitution sigma;
    for (std::size_t i = 0; i < ss.size(); ++i)
        if (!unifyInto(ss[i], ts[i], sigma)) return std::nullopt;
    return sigma;
}

} // namespace repairdb
