#include "bppcheck/driver.hpp"

#include "bppcheck/acs.hpp"
#include "bppcheck/ef.hpp"
#include "bppcheck/eg.hpp"
#include "bppcheck/oracle.hpp"
#include "bppcheck/parser.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace bppcheck {

namespace {

struct Loaded
{
    Bpp bpp;
    Marking initial;
    Formula formula;
};

Loaded load(const RunConfig& config)
{
    if (!config.acs) {
        if (config.property)
            throw Error(ErrorKind::IllFormed, "a property file is only accepted with --acs");
        auto p = parse_problem(read_file(config.input));
        return {std::move(p.bpp), std::move(p.initial), std::move(p.formula)};
    }
    if (!config.property)
        throw Error(ErrorKind::IllFormed, "--acs needs a system file and a property file");
    auto sys = parse_acs(read_file(config.input));
    ParseOptions opts;
    opts.allow_mail = true;
    auto f = parse_formula(read_file(*config.property), opts);
    auto conv = convert(sys.acs);
    auto init = convert_place(sys.acs, sys.initial, conv);
    auto lifted = lift_formula(f, sys.acs, conv);
    return {std::move(conv.bpp), std::move(init), std::move(lifted)};
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    out << text;
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
}

double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

std::string fixed3(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

} // namespace

Report run_check(const RunConfig& config)
{
    using clock = std::chrono::steady_clock;
    auto start = clock::now();
    if (config.k < 0)
        throw Error(ErrorKind::IllFormed, "k must be nonnegative");
    if (!(config.timeout_s > 0))
        throw Error(ErrorKind::IllFormed, "timeout must be positive");

    Loaded in = load(config);
    resolve(in.formula, in.bpp);
    CoreFormula core = desugar(in.formula);
    FormulaClass cls = classify(core);

    Engine engine = Engine::Ef;
    switch (config.mode) {
    case Mode::Auto:
        if (cls == FormulaClass::Mixed)
            throw Error(ErrorKind::MixedFormula, "formula mixes EF with EG or EX: " + mixed_reason(core));
        engine = cls == FormulaClass::Ef ? Engine::Ef : Engine::EgBounded;
        break;
    case Mode::Ef:
        if (cls != FormulaClass::Ef)
            throw Error(ErrorKind::MixedFormula,
                        cls == FormulaClass::Mixed ? "formula mixes EF with EG or EX: " + mixed_reason(core)
                                                   : "--mode ef does not accept EG or EX operators");
        engine = Engine::Ef;
        break;
    case Mode::Eg:
        if (core.formula().contains(Op::EF))
            throw Error(ErrorKind::MixedFormula, "--mode eg does not accept EF operators");
        engine = Engine::EgBounded;
        break;
    }

    if (config.dot) {
        ExplorationBudget budget;
        budget.max_states = 10000;
        write_file(*config.dot, to_dot(in.bpp, reachable_set(in.bpp, in.initial, budget)));
    }

    Report report;
    auto timeout = std::chrono::milliseconds(static_cast<long long>(std::ceil(config.timeout_s * 1000.0)));
    auto solver = smt::solver_config_from(config.solver, timeout);
    auto hook = [&](std::size_t index, const smt::SmtScript& script) {
        if (config.emit_smt)
            write_file(index == 0 ? *config.emit_smt : *config.emit_smt + "." + std::to_string(index), script.text);
        if (config.stats) {
            const auto& a = script.assertion;
            if (a.kind() == smt::Kind::And) {
                for (const auto& c : a.kids())
                    report.constraints.push_back(smt::to_smtlib(c));
            } else {
                report.constraints.push_back(smt::to_smtlib(a));
            }
        }
    };

    if (engine == Engine::Ef) {
        EfOptions opts;
        opts.solver = solver;
        opts.on_script = hook;
        opts.realize = false;
        report.verdict = check_ef(in.bpp, in.initial, core, opts).verdict;
    } else {
        EgOptions opts;
        opts.solver = solver;
        opts.on_script = hook;
        report.verdict = check_eg(in.bpp, in.initial, core, config.k, opts).verdict;
    }
    report.total_ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();
    return report;
}

std::string render_report(const Report& report, Format format, bool stats)
{
    const auto& v = report.verdict;
    if (format == Format::Json) {
        nlohmann::ordered_json j;
        j["result"] = to_string(v.result);
        j["engine"] = to_string(v.engine);
        j["k"] = v.k ? nlohmann::ordered_json(*v.k) : nlohmann::ordered_json(nullptr);
        j["time_ms"] = round3(report.total_ms);
        if (v.witness) {
            nlohmann::ordered_json w = nlohmann::ordered_json::object();
            for (const auto& [name, value] : *v.witness)
                w[name] = value;
            j["witness"] = std::move(w);
        } else {
            j["witness"] = nullptr;
        }
        nlohmann::ordered_json s;
        s["n_vars"] = v.stats.n_vars;
        s["n_asserts"] = v.stats.n_asserts;
        s["solver_ms"] = round3(v.stats.solver_ms);
        if (stats)
            s["constraints"] = report.constraints;
        j["stats"] = std::move(s);
        return j.dump(2) + "\n";
    }

    std::string out;
    out += std::string("result: ") + to_string(v.result) + "\n";
    out += std::string("engine: ") + to_string(v.engine) + "\n";
    if (v.k)
        out += "k: " + std::to_string(*v.k) + "\n";
    out += "time_ms: " + fixed3(report.total_ms) + "\n";
    if (v.witness) {
        for (const auto& [name, value] : *v.witness)
            out += "(" + name + ", " + std::to_string(value) + ")\n";
    }
    if (stats) {
        out += "n_vars: " + std::to_string(v.stats.n_vars) + "\n";
        out += "n_asserts: " + std::to_string(v.stats.n_asserts) + "\n";
        out += "solver_ms: " + fixed3(v.stats.solver_ms) + "\n";
        out += "constraints:\n";
        for (const auto& c : report.constraints)
            out += "  " + c + "\n";
    }
    return out;
}

int exit_code(Result r)
{
    switch (r) {
    case Result::Holds:
        return 0;
    case Result::NotHolds:
        return 1;
    case Result::Unknown:
        return 2;
    }
    return 2;
}

int exit_code(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::SolverNotFound:
    case ErrorKind::SolverCrashed:
    case ErrorKind::ProtocolError:
    case ErrorKind::MissingBinding:
    case ErrorKind::NonIntegerBinding:
        return 4;
    default:
        return 3;
    }
}

} // namespace bppcheck
