#include "repairdb/formula.hpp"

#include <algorithm>
#include <sstream>

namespace repairdb {

FormulaPtr Formula::atom(Atom a) {
    struct Enable : Formula {};
    auto node = std::make_shared<Enable>();
    node->kind_ = Kind::Atom;
    node->atom_ = std::move(a);
    return node;
}

FormulaPtr Formula::equal(Term lhs, Term rhs) {
    struct Enable : Formula {};
    auto node = std::make_shared<Enable>();
    node->kind_ = Kind::Equal;
    node->lhs_ = std::move(lhs);
    node->rhs_ = std::move(rhs);
    return node;
}

FormulaPtr Formula::negate(Ptr f) {
    struct Enable : Formula {};
    auto node = std::make_shared<Enable>();
    node->kind_ = Kind::Not;
    node->a_ = std::move(f);
    return node;
}

FormulaPtr Formula::conj(Ptr lhs, Ptr rhs) {
    struct Enable : Formula {};
    auto node = std::make_shared<Enable>();
    node->kind_ = Kind::And;
    node->a_ = std::move(lhs);
    node->b_ = std::move(rhs);
    return node;
}

FormulaPtr Formula::disj(Ptr lhs, Ptr rhs) {
    struct Enable : Formula {};
    auto node = std::make_shared<Enable>();
    node->kind_ = Kind::Or;
    node->a_ = std::move(lhs);
    node->b_ = std::move(rhs);
    return node;
}

FormulaPtr Formula::implies(Ptr lhs, Ptr rhs) {
    struct Enable : Formula {};
    auto node = std::make_shared<Enable>();
    node->kind_ = Kind::Implies;
    node->a_ = std::move(lhs);
    node->b_ = std::move(rhs);
    return node;
}

FormulaPtr Formula::forall(std::string var, Ptr body) {
    struct Enable : Formula {};
    auto node = std::make_shared<Enable>();
    node->kind_ = Kind::Forall;
    node->var_ = std::move(var);
    node->a_ = std::move(body);
    return node;
}

FormulaPtr Formula::exists(std::string var, Ptr body) {
    struct Enable : Formula {};
    auto node = std::make_shared<Enable>();
    node->kind_ = Kind::Exists;
    node->var_ = std::move(var);
    node->a_ = std::move(body);
    return node;
}

namespace {

void collectFree(const Formula& f, std::vector<std::string>& bound,
                 std::vector<std::string>& out) {
    auto record = [&](const std::vector<std::string>& vars) {
        for (const auto& v : vars) {
            if (std::find(bound.begin(), bound.end(), v) != bound.end())
                continue;
            if (std::find(out.begin(), out.end(), v) == out.end())
                out.push_back(v);
        }
    };
    switch (f.kind()) {
    case Formula::Kind::Atom:
        record(f.theAtom().vars());
        break;
    case Formula::Kind::Equal:
        record(f.lhsTerm().vars());
        record(f.rhsTerm().vars());
        break;
    case Formula::Kind::Not:
        collectFree(*f.child(), bound, out);
        break;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
        collectFree(*f.left(), bound, out);
        collectFree(*f.right(), bound, out);
        break;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
        bound.push_back(f.var());
        collectFree(*f.child(), bound, out);
        bound.pop_back();
        break;
    }
}

} // namespace

std::vector<std::string> Formula::freeVars() const {
    std::vector<std::string> bound, out;
    collectFree(*this, bound, out);
    return out;
}

std::string Formula::toString() const {
    switch (kind_) {
    case Kind::Atom:
        return atom_.toString();
    case Kind::Equal:
        return lhs_.toString() + " = " + rhs_.toString();
    case Kind::Not:
        return "~(" + a_->toString() + ")";
    case Kind::And:
        return "(" + a_->toString() + " & " + b_->toString() + ")";
    case Kind::Or:
        return "(" + a_->toString() + " | " + b_->toString() + ")";
    case Kind::Implies:
        return "(" + a_->toString() + " -> " + b_->toString() + ")";
    case Kind::Forall:
        return "forall " + var_ + ": (" + a_->toString() + ")";
    case Kind::Exists:
        return "exists " + var_ + ": (" + a_->toString() + ")";
    }
    return "";
}

FormulaPtr universalClosure(const FormulaPtr& f) {
    auto free = f->freeVars();
    FormulaPtr out = f;
    for (auto it = free.rbegin(); it != free.rend(); ++it)
        out = Formula::forall(*it, out);
    return out;
}

} // namespace repairdb
