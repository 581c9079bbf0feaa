#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "repairdb/frontend.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDiff = 1;
constexpr int kExitBudget = 2;
constexpr int kExitFloundered = 3;
constexpr int kExitUsage = 4;

struct CliOptions {
    std::string file;
    std::string criterion = "inclusion";
    std::string format = "text";
    std::string traceFile;
    bool sources = false;
    bool timestamps = false;
    bool check = false;
    bool allRepairs = false;
    bool ground = false;
    long maxSteps = 500000;
    int maxDelta = 32;
};

int statusToExit(repairdb::RepairReport::Status s) {
    switch (s) {
    case repairdb::RepairReport::Status::Complete: return kExitOk;
    case repairdb::RepairReport::Status::BudgetExhausted: return kExitBudget;
    case repairdb::RepairReport::Status::Floundered: return kExitFloundered;
    }
    return kExitUsage;
}

void addCommon(CLI::App* cmd, CliOptions& opts) {
    cmd->add_option("file", opts.file, "problem file")->required();
    cmd->add_option("--criterion", opts.criterion, "preference criterion")
        ->check(CLI::IsMember({"inclusion", "cardinality"}));
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_flag("--all-repairs", opts.allRepairs,
                  "skip preference filtering (oracle)");
}

repairdb::RunOptions toRunOptions(const CliOptions& opts,
                                  std::ostream* trace) {
    repairdb::RunOptions run;
    run.criterion = opts.criterion == "cardinality"
                        ? repairdb::Criterion::Cardinality
                        : repairdb::Criterion::Inclusion;
    run.useSources = opts.sources;
    run.useTimestamps = opts.timestamps;
    run.ground = opts.ground;
    run.allRepairs = opts.allRepairs;
    run.maxSteps = opts.maxSteps;
    run.maxDelta = opts.maxDelta;
    run.trace = trace;
    return run;
}

int execute(const CliOptions& opts, bool oracleMode) {
    std::ifstream in(opts.file);
    if (!in) {
        std::cerr << "error: cannot open " << opts.file << "\n";
        return kExitUsage;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();

    repairdb::ProblemFile problem;
    try {
        problem = repairdb::parseProblem(buffer.str());
    } catch (const repairdb::ParseError& e) {
        std::cerr << opts.file << ":" << e.what() << "\n";
        return kExitUsage;
    }

    std::ofstream traceOut;
    std::ostream* trace = nullptr;
    if (!opts.traceFile.empty()) {
        traceOut.open(opts.traceFile);
        if (!traceOut) {
            std::cerr << "error: cannot open trace file " << opts.traceFile
                      << "\n";
            return kExitUsage;
        }
        trace = &traceOut;
    }

    const repairdb::RunOptions runOpts = toRunOptions(opts, trace);
    try {
        repairdb::RepairReport report = oracleMode
                                            ? repairdb::runOracle(problem,
                                                                  runOpts)
                                            : repairdb::run(problem, runOpts);
        if (opts.check) {
            repairdb::RepairReport other =
                oracleMode ? repairdb::run(problem, runOpts)
                           : repairdb::runOracle(problem, runOpts);
            auto diff = repairdb::diffReports(report, other);
            if (!diff.empty()) {
                std::cerr << "check failed: " << diff.size()
                          << " repair(s) differ between engine and oracle\n";
                for (const auto& r : diff)
                    std::cerr << "  " << r.toString() << "\n";
                return kExitDiff;
            }
            std::cerr << "check passed: engine and oracle agree on "
                      << report.repairs.size() << " repair(s)\n";
        }
        std::cout << (opts.format == "json" ? repairdb::renderJson(report)
                                            : repairdb::renderText(report));
        if (opts.format == "json") std::cout << "\n";
        return statusToExit(report.status);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"database repair under first-order integrity constraints"};
    app.require_subcommand(1);

    CliOptions opts;
    CLI::App* run = app.add_subcommand(
        "run", "compute preferred repairs with the abductive engine");
    addCommon(run, opts);
    run->add_flag("--sources", opts.sources, "source-identity composer");
    run->add_flag("--timestamps", opts.timestamps, "timestamp composer");
    run->add_flag("--check", opts.check, "cross-check against the oracle");
    run->add_flag("--ground", opts.ground, "enumerate answer substitutions");
    run->add_option("--max-steps", opts.maxSteps, "derivation step budget");
    run->add_option("--max-delta", opts.maxDelta, "abduced-set size budget");
    run->add_option("--trace", opts.traceFile, "write a replay log");

    CLI::App* oracleCmd = app.add_subcommand(
        "oracle", "compute repairs by model enumeration (desk scale)");
    addCommon(oracleCmd, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    return execute(opts, oracleCmd->parsed());
}
