#include "repairdb/frontend.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include <json.hpp>

#include "repairdb/oracle.hpp"
#include "repairdb/transform.hpp"

namespace repairdb {

ParseError::ParseError(std::string message, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column) {}

namespace {

struct Token {
    enum class Kind { Ident, Var, Int, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    int line = 0;
    int column = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    std::vector<Token> all() {
        std::vector<Token> out;
        for (;;) {
            Token t = next();
            out.push_back(t);
            if (t.kind == Token::Kind::End) break;
        }
        return out;
    }

private:
    Token next() {
        skipSpaceAndComments();
        Token t;
        t.line = line_;
        t.column = column_;
        if (pos_ >= text_.size()) return t;
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && pos_ + 1 < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
            t.kind = Token::Kind::Int;
            t.text += take();
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_])))
                t.text += take();
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                    text_[pos_] == '_'))
                t.text += take();
            t.kind = (std::isupper(static_cast<unsigned char>(t.text[0])) ||
                      t.text[0] == '_')
                         ? Token::Kind::Var
                         : Token::Kind::Ident;
            return t;
        }
        t.kind = Token::Kind::Punct;
        // multi-character operators first
        for (const char* op : {"->", "!=", "<=", ">="}) {
            if (text_.compare(pos_, 2, op) == 0) {
                t.text = op;
                take();
                take();
                return t;
            }
        }
        if (std::string("().,:@&|~=<>").find(c) != std::string::npos) {
            t.text = take();
            return t;
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "'",
                         line_, column_);
    }

    void skipSpaceAndComments() {
        for (;;) {
            while (pos_ < text_.size() &&
                   std::isspace(static_cast<unsigned char>(text_[pos_])))
                take();
            if (pos_ < text_.size() && text_[pos_] == '%') {
                while (pos_ < text_.size() && text_[pos_] != '\n') take();
                continue;
            }
            return;
        }
    }

    char take() {
        const char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    ProblemFile parse() {
        ProblemFile out;
        while (!at(Token::Kind::End)) {
            const Token& head = peek();
            if (head.kind != Token::Kind::Ident)
                fail("expected 'source', 'fact', or 'constraint'");
            if (head.text == "source") {
                parseSource(out);
            } else if (head.text == "fact") {
                parseFact(out);
            } else if (head.text == "constraint") {
                advance();
                out.constraints.push_back(parseFormula());
                expectPunct(".");
            } else {
                fail("unknown statement '" + head.text + "'");
            }
        }
        return out;
    }

private:
    void parseSource(ProblemFile& out) {
        advance(); // source
        ParsedSource src;
        if (!at(Token::Kind::Ident)) fail("expected source identifier");
        src.id = advance().text;
        if (at(Token::Kind::Ident) && peek().text == "trust") {
            advance();
            if (!at(Token::Kind::Int)) fail("expected trust integer");
            src.trust = std::stoll(advance().text);
        }
        expectPunct(".");
        out.sources.push_back(std::move(src));
    }

    void parseFact(ProblemFile& out) {
        const Token& head = peek();
        advance(); // fact
        if (out.sources.empty())
            throw ParseError("'fact' before any 'source'", head.line,
                             head.column);
        Term t = parseTerm();
        if (t.isVar()) fail("facts must be ground atoms");
        Atom a = termToAtom(t);
        if (!a.ground()) fail("facts must be ground atoms");
        if (at(Token::Kind::Punct) && peek().text == "@") {
            advance();
            if (!at(Token::Kind::Int)) fail("expected timestamp integer");
            DatabaseEvent ev;
            ev.fact = std::move(a);
            ev.time = std::stoll(advance().text);
            ev.isAdd = true;
            out.sources.back().events.push_back(std::move(ev));
        } else {
            out.sources.back().facts.push_back(std::move(a));
        }
        expectPunct(".");
    }

    // formula := implies
    // implies := disj ['->' implies]
    // disj    := conj {'|' conj}
    // conj    := unary {'&' unary}
    // unary   := '~' unary | 'forall' Var {',' Var} ':' implies
    //          | 'exists' Var {',' Var} ':' implies | primary
    // primary := '(' formula ')' | term [cmp term]
    FormulaPtr parseFormula() { return parseImplies(); }

    FormulaPtr parseImplies() {
        FormulaPtr lhs = parseDisj();
        if (atPunct("->")) {
            advance();
            return Formula::implies(lhs, parseImplies());
        }
        return lhs;
    }

    FormulaPtr parseDisj() {
        FormulaPtr f = parseConj();
        while (atPunct("|")) {
            advance();
            f = Formula::disj(f, parseConj());
        }
        return f;
    }

    FormulaPtr parseConj() {
        FormulaPtr f = parseUnary();
        while (atPunct("&")) {
            advance();
            f = Formula::conj(f, parseUnary());
        }
        return f;
    }

    FormulaPtr parseUnary() {
        if (atPunct("~")) {
            advance();
            return Formula::negate(parseUnary());
        }
        if (at(Token::Kind::Ident) &&
            (peek().text == "forall" || peek().text == "exists")) {
            const bool isForall = peek().text == "forall";
            advance();
            std::vector<std::string> vars;
            for (;;) {
                if (!at(Token::Kind::Var)) fail("expected a variable");
                vars.push_back(advance().text);
                if (atPunct(",")) {
                    advance();
                    continue;
                }
                break;
            }
            expectPunct(":");
            FormulaPtr body = parseImplies();
            for (auto it = vars.rbegin(); it != vars.rend(); ++it)
                body = isForall ? Formula::forall(*it, body)
                                : Formula::exists(*it, body);
            return body;
        }
        return parsePrimary();
    }

    FormulaPtr parsePrimary() {
        if (atPunct("(")) {
            advance();
            FormulaPtr f = parseFormula();
            expectPunct(")");
            return f;
        }
        Term lhs = parseTerm();
        for (const char* cmp : {"=", "!=", "<", "<=", ">", ">="}) {
            if (atPunct(cmp)) {
                advance();
                Term rhs = parseTerm();
                std::string op = cmp;
                if (op == "=") return Formula::equal(lhs, rhs);
                if (op == "!=")
                    return Formula::negate(Formula::equal(lhs, rhs));
                Atom a;
                a.predicate = op;
                a.args = {lhs, rhs};
                return Formula::atom(std::move(a));
            }
        }
        if (lhs.isVar()) fail("a variable is not a formula");
        return Formula::atom(termToAtom(lhs));
    }

    Term parseTerm() {
        if (at(Token::Kind::Int)) return Term::intConstant(
            std::stoll(advance().text));
        if (at(Token::Kind::Var)) return Term::var(advance().text);
        if (!at(Token::Kind::Ident)) fail("expected a term");
        std::string name = advance().text;
        if (!atPunct("(")) return Term::constant(std::move(name));
        advance();
        std::vector<Term> args;
        for (;;) {
            args.push_back(parseTerm());
            if (atPunct(",")) {
                advance();
                continue;
            }
            break;
        }
        expectPunct(")");
        return Term::compound(std::move(name), std::move(args));
    }

    const Token& peek() const { return tokens_[pos_]; }
    const Token& advance() { return tokens_[pos_++]; }
    bool at(Token::Kind k) const { return peek().kind == k; }
    bool atPunct(const std::string& p) const {
        return peek().kind == Token::Kind::Punct && peek().text == p;
    }
    void expectPunct(const std::string& p) {
        if (!atPunct(p)) fail("expected '" + p + "'");
        advance();
    }
    [[noreturn]] void fail(const std::string& message) const {
        const Token& t = peek();
        std::string got = t.kind == Token::Kind::End
                              ? "end of input"
                              : "'" + t.text + "'";
        throw ParseError(message + ", got " + got, t.line, t.column);
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

std::vector<DatabaseInstance> toInstances(const ProblemFile& problem) {
    std::vector<DatabaseInstance> out;
    for (const auto& s : problem.sources) {
        DatabaseInstance db;
        db.sourceId = s.id;
        db.facts = s.facts;
        db.events = s.events;
        out.push_back(std::move(db));
    }
    return out;
}

RepairReport::Status combineStatus(const PreferredResult& result) {
    if (!result.flounderings.empty())
        return RepairReport::Status::Floundered;
    if (result.status == SearchStatus::BudgetExhausted)
        return RepairReport::Status::BudgetExhausted;
    return RepairReport::Status::Complete;
}

std::string statusName(RepairReport::Status s) {
    switch (s) {
    case RepairReport::Status::Complete: return "complete";
    case RepairReport::Status::BudgetExhausted: return "budget_exhausted";
    case RepairReport::Status::Floundered: return "floundered";
    }
    return "?";
}

/// Groundings of a repair's free variables over domain + one fresh constant
/// that satisfy its residual disequalities.
std::vector<Substitution> groundingsOf(const Repair& repair,
                                       const std::vector<std::string>& domain) {
    EqualityStore store;
    for (const auto& d : repair.residual)
        store.addDisequality(d.universalVars, d.lhs, d.rhs);
    SolutionState sol;
    sol.equalities = store;
    for (const auto& a : repair.insert) sol.delta.push_back(a);
    for (const auto& a : repair.retract) sol.delta.push_back(a);
    return answerSubstitutions(sol, domain, true);
}

} // namespace

namespace {

void recordArity(const Atom& a, std::map<std::string, std::size_t>& arities) {
    auto [it, fresh] = arities.emplace(a.predicate, a.args.size());
    if (!fresh && it->second != a.args.size())
        throw ParseError("predicate '" + a.predicate + "' used with arity " +
                             std::to_string(a.args.size()) + " and " +
                             std::to_string(it->second),
                         0, 0);
}

void recordArities(const FormulaPtr& f,
                   std::map<std::string, std::size_t>& arities) {
    switch (f->kind()) {
    case Formula::Kind::Atom:
        recordArity(f->theAtom(), arities);
        break;
    case Formula::Kind::Equal:
        break;
    case Formula::Kind::Not:
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
        recordArities(f->child(), arities);
        break;
    default:
        recordArities(f->left(), arities);
        recordArities(f->right(), arities);
        break;
    }
}

} // namespace

ProblemFile parseProblem(const std::string& text) {
    Lexer lexer(text);
    Parser parser(lexer.all());
    ProblemFile problem = parser.parse();

    std::map<std::string, std::size_t> arities;
    for (const auto& s : problem.sources) {
        for (const auto& f : s.facts) recordArity(f, arities);
        for (const auto& e : s.events) recordArity(e.fact, arities);
    }
    for (const auto& c : problem.constraints) recordArities(c, arities);
    return problem;
}

std::string printProblem(const ProblemFile& problem) {
    std::string out;
    for (const auto& s : problem.sources) {
        out += "source " + s.id;
        if (s.trust) out += " trust " + std::to_string(*s.trust);
        out += ".\n";
        for (const auto& f : s.facts) out += "fact " + f.toString() + ".\n";
        for (const auto& e : s.events)
            out += "fact " + e.fact.toString() + " @ " +
                   std::to_string(e.time) + ".\n";
    }
    for (const auto& c : problem.constraints)
        out += "constraint " + c->toString() + ".\n";
    return out;
}

RepairReport run(const ProblemFile& problem, const RunOptions& options) {
    std::vector<DatabaseInstance> databases = toInstances(problem);

    std::vector<FormulaPtr> guarded;
    guarded.reserve(problem.constraints.size());
    for (const auto& c : problem.constraints)
        guarded.push_back(guardUnsafe(universalClosure(c), "dom"));
    DenialTheory denials = lloydTopor(guarded);
    DenialTheory factLevel = rewriteFactLevel(denials);

    AbductiveTheory theory;
    if (options.useSources) {
        std::map<std::string, std::int64_t> trust;
        for (const auto& s : problem.sources)
            if (s.trust) trust[s.id] = *s.trust;
        theory = composeWithSources(databases, factLevel, trust);
    } else if (options.useTimestamps) {
        theory = composeWithTimestamps(databases, factLevel);
    } else {
        theory = compose(databases, factLevel);
    }

    DeriveOptions derive;
    derive.maxSteps = options.maxSteps;
    derive.maxDelta = options.maxDelta;
    derive.trace = options.trace;
    PreferredResult result =
        preferredRepairs(theory, options.criterion, derive);

    RepairReport report;
    report.repairs = result.repairs;
    std::sort(report.repairs.begin(), report.repairs.end());
    report.status = combineStatus(result);
    report.stats = result.stats;
    for (const auto& f : result.flounderings)
        report.diagnostics.push_back("floundered on: " + f.goal);
    if (options.ground) {
        for (const auto& r : report.repairs)
            report.groundings.push_back(groundingsOf(r, theory.activeDomain));
    }
    return report;
}

RepairReport runOracle(const ProblemFile& problem, const RunOptions& options) {
    oracle::OracleInput input;
    input.facts = unionFacts(toInstances(problem));
    for (const auto& c : problem.constraints)
        input.constraints.push_back(universalClosure(c));
    input.cap = options.oracleCap;

    RepairReport report;
    std::vector<Repair> repairs =
        options.allRepairs
            ? oracle::allRepairsOracle(input)
            : oracle::preferredRepairsOracle(
                  input, options.criterion == Criterion::Cardinality
                             ? oracle::OracleCriterion::Cardinality
                             : oracle::OracleCriterion::Inclusion);
    for (auto& r : repairs)
        report.repairs.push_back(canonicalizeRepair(r));
    std::sort(report.repairs.begin(), report.repairs.end());
    report.status = RepairReport::Status::Complete;
    return report;
}

namespace {

nlohmann::json repairToJson(const Repair& r) {
    nlohmann::json j;
    j["insert"] = nlohmann::json::array();
    for (const auto& a : r.insert) j["insert"].push_back(a.toString());
    j["retract"] = nlohmann::json::array();
    for (const auto& a : r.retract) j["retract"].push_back(a.toString());
    j["where"] = nlohmann::json::array();
    for (const auto& d : r.residual) j["where"].push_back(d.toString());
    return j;
}

} // namespace

std::string renderText(const RepairReport& report) {
    std::ostringstream out;
    out << "status: " << statusName(report.status) << "\n";
    out << "repairs: " << report.repairs.size() << "\n";
    for (std::size_t i = 0; i < report.repairs.size(); ++i) {
        const Repair& r = report.repairs[i];
        out << "repair " << i + 1 << ":\n";
        out << "  insert:";
        for (const auto& a : r.insert) out << " " << a.toString();
        out << "\n  retract:";
        for (const auto& a : r.retract) out << " " << a.toString();
        out << "\n";
        if (!r.residual.empty()) {
            out << "  where:";
            for (const auto& d : r.residual) out << " " << d.toString();
            out << "\n";
        }
        if (i < report.groundings.size() && !report.groundings[i].empty()) {
            out << "  groundings:";
            for (const auto& g : report.groundings[i])
                out << " " << (g.empty() ? std::string("{}") : g.toString());
            out << "\n";
        }
    }
    out << "stats: steps=" << report.stats.steps
        << " branches=" << report.stats.branches
        << " pruned=" << report.stats.pruned << "\n";
    for (const auto& d : report.diagnostics) out << d << "\n";
    return out.str();
}

std::string renderJson(const RepairReport& report) {
    nlohmann::json j;
    j["repairs"] = nlohmann::json::array();
    for (std::size_t i = 0; i < report.repairs.size(); ++i) {
        nlohmann::json r = repairToJson(report.repairs[i]);
        if (i < report.groundings.size()) {
            r["groundings"] = nlohmann::json::array();
            for (const auto& g : report.groundings[i])
                r["groundings"].push_back(g.toString());
        }
        j["repairs"].push_back(std::move(r));
    }
    j["status"] = statusName(report.status);
    j["stats"] = {{"steps", report.stats.steps},
                  {"branches", report.stats.branches},
                  {"pruned", report.stats.pruned}};
    return j.dump();
}

std::vector<Repair> diffReports(const RepairReport& a, const RepairReport& b) {
    std::vector<Repair> out;
    for (const auto& r : a.repairs)
        if (std::find(b.repairs.begin(), b.repairs.end(), r) ==
            b.repairs.end())
            out.push_back(r);
    for (const auto& r : b.repairs)
        if (std::find(a.repairs.begin(), a.repairs.end(), r) ==
            a.repairs.end())
            out.push_back(r);
    return out;
}

} // namespace repairdb
