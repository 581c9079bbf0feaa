#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "repairdb/composer.hpp"
#include "repairdb/formula.hpp"
#include "repairdb/optimizer.hpp"

namespace repairdb {

struct ParsedSource {
    std::string id;
    std::optional<std::int64_t> trust;
    std::vector<Atom> facts;               // untimestamped
    std::vector<DatabaseEvent> events;     // `fact a @ t.` lines
};

struct ProblemFile {
    std::vector<ParsedSource> sources;
    std::vector<FormulaPtr> constraints;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, int line, int column);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Parses the line-oriented surface syntax:
///   source <id> [trust <int>].
///   fact <atom> [@ <int>].
///   constraint <formula>.
/// with formulas over forall/exists, &, |, ->, ~, =, != and parentheses;
/// `%` starts a comment. Statements may span lines and end with a period.
ProblemFile parseProblem(const std::string& text);

/// Renders a problem back to surface syntax (print-parse round trip).
std::string printProblem(const ProblemFile& problem);

struct RunOptions {
    Criterion criterion = Criterion::Inclusion;
    bool useSources = false;
    bool useTimestamps = false;
    bool ground = false;      // enumerate answer substitutions
    bool allRepairs = false;  // oracle: skip the preference filter
    long maxSteps = 500000;
    int maxDelta = 32;
    std::size_t oracleCap = 16;
    std::ostream* trace = nullptr;
};

struct RepairReport {
    enum class Status { Complete, BudgetExhausted, Floundered };

    std::vector<Repair> repairs; // canonical order
    /// Parallel to repairs when RunOptions::ground is set: the answer
    /// substitutions over the active domain plus one fresh constant.
    std::vector<std::vector<Substitution>> groundings;
    Status status = Status::Complete;
    DerivationStats stats;
    std::vector<std::string> diagnostics;
};

/// Full pipeline: guard unsafe quantifiers, transform constraints to denial
/// form, rewrite to the fact level, compose the requested meta-theory, and
/// compute the preferred repairs.
RepairReport run(const ProblemFile& problem, const RunOptions& options = {});

/// The same report computed by the model-theoretic oracle (plain fact-level
/// semantics; source trust and timestamps are outside its scope).
RepairReport runOracle(const ProblemFile& problem,
                       const RunOptions& options = {});

std::string renderText(const RepairReport& report);
std::string renderJson(const RepairReport& report);

/// Repairs present in exactly one of the two reports (set difference both
/// ways), used by --check.
std::vector<Repair> diffReports(const RepairReport& a, const RepairReport& b);

} // namespace repairdb
