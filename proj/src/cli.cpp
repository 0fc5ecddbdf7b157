#include "bppcheck/driver.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <map>
#include <ostream>
#include <thread>

namespace bppcheck {

namespace {

struct Job
{
    RunConfig config;
    std::optional<Report> report;
    std::string error;
    int code = 3;
};

void run_job(Job& job)
{
    try {
        job.report = run_check(job.config);
        job.code = exit_code(job.report->verdict.result);
    } catch (const ParseError& e) {
        job.error = std::string(to_string(e.kind())) + ": " + e.what();
        job.code = 3;
    } catch (const Error& e) {
        job.error = std::string(to_string(e.kind())) + ": " + e.what();
        job.code = exit_code(e.kind());
    } catch (const std::exception& e) {
        job.error = e.what();
        job.code = 3;
    }
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Model checker for CTL without Until on Basic Parallel Processes"};
    app.name("bppcheck");

    std::vector<std::string> inputs;
    std::string mode = "auto";
    std::string format = "text";
    int k = 10;
    std::optional<std::string> solver;
    double timeout = 60;
    std::optional<std::string> emit_smt;
    std::optional<std::string> dot;
    bool stats = false;
    bool acs = false;
    int jobs = 1;

    app.add_option("inputs", inputs, "Problem file(s), or system/property pairs with --acs")->required();
    app.add_option("--mode", mode, "Engine selection")->check(CLI::IsMember({"auto", "ef", "eg"}))->capture_default_str();
    app.add_option("-k", k, "Bound for the EG engine")->check(CLI::NonNegativeNumber)->capture_default_str();
    app.add_option("--solver", solver, "SMT solver executable (default $BPPCHECK_SOLVER, then z3)");
    app.add_option("--timeout", timeout, "Per-call solver timeout in seconds")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--emit-smt", emit_smt, "Write the SMT-LIB script(s) sent to the solver");
    app.add_option("--dot", dot, "Write the explored transition graph in Graphviz format");
    app.add_flag("--stats", stats, "Print statistics and the constraint listing");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    app.add_flag("--acs", acs, "Inputs are ACS system files, each followed by a property file");
    app.add_option("--jobs", jobs, "Concurrent checks in batch mode")->check(CLI::PositiveNumber)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 3;
    }

    RunConfig base;
    base.acs = acs;
    base.k = k;
    base.mode = mode == "ef" ? Mode::Ef : mode == "eg" ? Mode::Eg : Mode::Auto;
    base.solver = solver;
    base.timeout_s = timeout;
    base.emit_smt = emit_smt;
    base.dot = dot;
    base.stats = stats;
    base.format = format == "json" ? Format::Json : Format::Text;

    std::vector<Job> batch;
    if (acs) {
        if (inputs.size() % 2 != 0) {
            err << "bppcheck: --acs expects system/property file pairs\n";
            return 3;
        }
        for (std::size_t i = 0; i < inputs.size(); i += 2) {
            Job j;
            j.config = base;
            j.config.input = inputs[i];
            j.config.property = inputs[i + 1];
            batch.push_back(std::move(j));
        }
    } else {
        for (const auto& in : inputs) {
            Job j;
            j.config = base;
            j.config.input = in;
            batch.push_back(std::move(j));
        }
    }
    if (batch.size() > 1 && (emit_smt || dot)) {
        err << "bppcheck: --emit-smt and --dot take a single input\n";
        return 3;
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < batch.size(); i = next++)
            run_job(batch[i]);
    };
    std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(jobs), batch.size());
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < n_threads; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();

    int code = 0;
    const bool many = batch.size() > 1;
    if (many && base.format == Format::Json)
        out << "[\n";
    bool first = true;
    for (const auto& job : batch) {
        code = std::max(code, job.code);
        if (!job.report) {
            err << "bppcheck: " << job.config.input << ": " << job.error << "\n";
            continue;
        }
        std::string text = render_report(*job.report, base.format, stats);
        if (many && base.format == Format::Json) {
            if (!first)
                out << ",\n";
            text.pop_back();
            out << text;
        } else {
            if (many)
                out << "== " << job.config.input << " ==\n";
            out << text;
        }
        first = false;
    }
    if (many && base.format == Format::Json)
        out << "\n]\n";
    return code;
}

} // namespace bppcheck
