#include "bppcheck/error.hpp"
#include "bppcheck/smt.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <csignal>
#include <cstdlib>
#include <cstring>
#include <fcntl.h>
#include <mutex>
#include <poll.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <thread>
#include <unistd.h>

namespace bppcheck::smt {

namespace {

// Minimal s-expression reader for solver responses.
struct Sexp
{
    std::string atom;
    std::vector<Sexp> list;
    bool is_list = false;
};

class SexpReader
{
    const std::string& _s;
    std::size_t _i = 0;

    void skip()
    {
        while (_i < _s.size()) {
            if (std::isspace(static_cast<unsigned char>(_s[_i]))) {
                ++_i;
            } else if (_s[_i] == ';') {
                while (_i < _s.size() && _s[_i] != '\n')
                    ++_i;
            } else {
                break;
            }
        }
    }

public:
    explicit SexpReader(const std::string& s) : _s(s) {}

    bool done()
    {
        skip();
        return _i >= _s.size();
    }

    Sexp read()
    {
        skip();
        if (_i >= _s.size())
            throw Error(ErrorKind::ProtocolError, "unexpected end of solver output");
        Sexp e;
        char c = _s[_i];
        if (c == '(') {
            ++_i;
            e.is_list = true;
            while (true) {
                skip();
                if (_i >= _s.size())
                    throw Error(ErrorKind::ProtocolError, "unbalanced parentheses in solver output");
                if (_s[_i] == ')') {
                    ++_i;
                    break;
                }
                e.list.push_back(read());
            }
        } else if (c == ')') {
            throw Error(ErrorKind::ProtocolError, "unexpected ')' in solver output");
        } else if (c == '"') {
            std::size_t start = _i++;
            while (_i < _s.size()) {
                if (_s[_i] == '"') {
                    if (_i + 1 < _s.size() && _s[_i + 1] == '"') {
                        _i += 2;
                        continue;
                    }
                    break;
                }
                ++_i;
            }
            ++_i;
            e.atom = _s.substr(start, _i - start);
        } else if (c == '|') {
            std::size_t start = ++_i;
            while (_i < _s.size() && _s[_i] != '|')
                ++_i;
            e.atom = _s.substr(start, _i - start);
            ++_i;
        } else {
            std::size_t start = _i;
            while (_i < _s.size() && !std::isspace(static_cast<unsigned char>(_s[_i])) && _s[_i] != '(' &&
                   _s[_i] != ')')
                ++_i;
            e.atom = _s.substr(start, _i - start);
        }
        return e;
    }
};

std::optional<std::int64_t> integer_value(const Sexp& e)
{
    auto parse_nat = [](const std::string& s) -> std::optional<std::int64_t> {
        if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
            return std::nullopt;
        errno = 0;
        char* end = nullptr;
        long long v = std::strtoll(s.c_str(), &end, 10);
        if (errno == ERANGE)
            return std::nullopt;
        return static_cast<std::int64_t>(v);
    };
    if (!e.is_list)
        return parse_nat(e.atom);
    if (e.list.size() == 2 && !e.list[0].is_list && e.list[0].atom == "-") {
        if (auto v = integer_value(e.list[1]))
            return -*v;
    }
    return std::nullopt;
}

void collect_bindings(const Sexp& e, std::map<std::string, const Sexp*>& out)
{
    if (!e.is_list)
        return;
    if (e.list.size() == 5 && !e.list[0].is_list && e.list[0].atom == "define-fun" && !e.list[1].is_list &&
        e.list[2].is_list && e.list[2].list.empty()) {
        out.emplace(e.list[1].atom, &e);
        return;
    }
    for (const auto& k : e.list)
        collect_bindings(k, out);
}

std::optional<std::string> resolve_executable(const std::string& exe)
{
    if (exe.find('/') != std::string::npos)
        return access(exe.c_str(), X_OK) == 0 ? std::optional<std::string>(exe) : std::nullopt;
    const char* path = std::getenv("PATH");
    std::string dirs = path ? path : "/usr/local/bin:/usr/bin:/bin";
    std::size_t start = 0;
    while (start <= dirs.size()) {
        auto end = dirs.find(':', start);
        if (end == std::string::npos)
            end = dirs.size();
        std::string dir = dirs.substr(start, end - start);
        std::string candidate = (dir.empty() ? std::string(".") : dir) + "/" + exe;
        if (access(candidate.c_str(), X_OK) == 0)
            return candidate;
        start = end + 1;
    }
    return std::nullopt;
}

void ignore_sigpipe()
{
    static std::once_flag once;
    std::call_once(once, [] { std::signal(SIGPIPE, SIG_IGN); });
}

struct Fd
{
    int fd = -1;
    Fd() = default;
    explicit Fd(int f) : fd(f) {}
    Fd(const Fd&) = delete;
    Fd& operator=(const Fd&) = delete;
    ~Fd() { reset(); }
    void reset()
    {
        if (fd >= 0)
            ::close(fd);
        fd = -1;
    }
};

void make_pipe(Fd& r, Fd& w)
{
    int fds[2];
    if (::pipe2(fds, O_CLOEXEC) != 0)
        throw Error(ErrorKind::SolverCrashed, std::string("pipe: ") + std::strerror(errno));
    r.fd = fds[0];
    w.fd = fds[1];
}

} // namespace

std::vector<std::string> default_solver_args(const std::string& executable)
{
    auto base = executable.substr(executable.find_last_of('/') == std::string::npos
                                      ? 0
                                      : executable.find_last_of('/') + 1);
    if (base.find("cvc5") != std::string::npos || base.find("cvc4") != std::string::npos)
        return {"--lang=smt2"};
    if (base.find("yices") != std::string::npos)
        return {};
    return {"-in", "-smt2"};
}

SolverConfig solver_config_from(const std::optional<std::string>& path, std::chrono::milliseconds timeout)
{
    SolverConfig c;
    if (path && !path->empty()) {
        c.executable = *path;
    } else if (const char* env = std::getenv("BPPCHECK_SOLVER"); env && *env) {
        c.executable = env;
    }
    c.args = default_solver_args(c.executable);
    c.timeout = timeout;
    return c;
}

Model parse_model(const std::string& raw, const std::vector<std::string>& expected)
{
    SexpReader reader(raw);
    std::vector<Sexp> top;
    while (!reader.done())
        top.push_back(reader.read());
    std::map<std::string, const Sexp*> bindings;
    for (const auto& e : top)
        collect_bindings(e, bindings);
    Model m;
    for (const auto& name : expected) {
        auto it = bindings.find(name);
        if (it == bindings.end())
            throw Error(ErrorKind::MissingBinding, "solver model has no binding for '" + name + "'");
        const auto& def = *it->second;
        auto v = integer_value(def.list[4]);
        if (def.list[3].is_list || def.list[3].atom != "Int" || !v)
            throw Error(ErrorKind::NonIntegerBinding, "binding for '" + name + "' is not an integer");
        m[name] = *v;
    }
    return m;
}

SolverOutcome run_solver(const SmtScript& script, const SolverConfig& config)
{
    using clock = std::chrono::steady_clock;
    ignore_sigpipe();

    auto exe = resolve_executable(config.executable);
    if (!exe)
        throw Error(ErrorKind::SolverNotFound, "solver executable '" + config.executable + "' not found");

    std::vector<std::string> argv_store{*exe};
    argv_store.insert(argv_store.end(), config.args.begin(), config.args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store)
        argv.push_back(a.data());
    argv.push_back(nullptr);

    Fd in_r, in_w, out_r, out_w, err_r, err_w, exec_r, exec_w;
    make_pipe(in_r, in_w);
    make_pipe(out_r, out_w);
    make_pipe(err_r, err_w);
    make_pipe(exec_r, exec_w);

    auto start = clock::now();
    pid_t pid = ::fork();
    if (pid < 0)
        throw Error(ErrorKind::SolverCrashed, std::string("fork: ") + std::strerror(errno));
    if (pid == 0) {
        ::dup2(in_r.fd, 0);
        ::dup2(out_w.fd, 1);
        ::dup2(err_w.fd, 2);
        ::execv(argv[0], argv.data());
        int e = errno;
        [[maybe_unused]] auto n = ::write(exec_w.fd, &e, sizeof e);
        ::_exit(127);
    }
    in_r.reset();
    out_w.reset();
    err_w.reset();
    exec_w.reset();

    int exec_errno = 0;
    if (::read(exec_r.fd, &exec_errno, sizeof exec_errno) == sizeof exec_errno) {
        ::waitpid(pid, nullptr, 0);
        throw Error(ErrorKind::SolverNotFound,
                    "cannot execute '" + *exe + "': " + std::string(std::strerror(exec_errno)));
    }

    for (int fd : {in_w.fd, out_r.fd, err_r.fd})
        ::fcntl(fd, F_SETFL, ::fcntl(fd, F_GETFL) | O_NONBLOCK);

    const auto deadline = start + config.timeout;
    const std::string& input = script.text;
    std::size_t written = 0;
    std::string out, err;
    bool timed_out = false;
    char buf[65536];

    while (out_r.fd >= 0 || err_r.fd >= 0) {
        auto now = clock::now();
        if (now >= deadline) {
            timed_out = true;
            break;
        }
        std::vector<pollfd> fds;
        if (in_w.fd >= 0)
            fds.push_back({in_w.fd, POLLOUT, 0});
        if (out_r.fd >= 0)
            fds.push_back({out_r.fd, POLLIN, 0});
        if (err_r.fd >= 0)
            fds.push_back({err_r.fd, POLLIN, 0});
        auto wait_ms = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count();
        int rc = ::poll(fds.data(), fds.size(), static_cast<int>(std::min<long long>(wait_ms + 1, 1000)));
        if (rc < 0 && errno != EINTR)
            break;
        for (const auto& p : fds) {
            if (!p.revents)
                continue;
            if (p.fd == in_w.fd) {
                if (p.revents & (POLLERR | POLLHUP)) {
                    in_w.reset();
                    continue;
                }
                auto n = ::write(in_w.fd, input.data() + written, input.size() - written);
                if (n > 0)
                    written += static_cast<std::size_t>(n);
                else if (n < 0 && errno != EAGAIN && errno != EINTR)
                    in_w.reset();
                if (written == input.size())
                    in_w.reset();
            } else {
                auto& target = p.fd == out_r.fd ? out : err;
                auto& owner = p.fd == out_r.fd ? out_r : err_r;
                auto n = ::read(p.fd, buf, sizeof buf);
                if (n > 0)
                    target.append(buf, static_cast<std::size_t>(n));
                else if (n == 0 || (errno != EAGAIN && errno != EINTR))
                    owner.reset();
            }
        }
    }

    int status = 0;
    if (!timed_out) {
        while (true) {
            pid_t r = ::waitpid(pid, &status, WNOHANG);
            if (r == pid)
                break;
            if (clock::now() >= deadline) {
                timed_out = true;
                break;
            }
            std::this_thread::sleep_for(std::chrono::milliseconds(1));
        }
    }
    if (timed_out) {
        ::kill(pid, SIGKILL);
        ::waitpid(pid, &status, 0);
    }
    auto elapsed = std::chrono::duration<double, std::milli>(clock::now() - start).count();

    SolverOutcome outcome;
    outcome.wall_ms = elapsed;
    outcome.raw = out;
    outcome.timed_out = timed_out;
    if (timed_out) {
        outcome.status = Status::Unknown;
        return outcome;
    }

    std::optional<Status> verdict;
    {
        SexpReader reader(out);
        while (!reader.done()) {
            Sexp e = reader.read();
            if (!e.is_list) {
                if (e.atom == "sat")
                    verdict = Status::Sat;
                else if (e.atom == "unsat")
                    verdict = Status::Unsat;
                else if (e.atom == "unknown")
                    verdict = Status::Unknown;
                if (verdict)
                    break;
            } else if (!e.list.empty() && e.list[0].atom == "error") {
                std::string msg = e.list.size() > 1 ? e.list[1].atom : "";
                throw Error(ErrorKind::ProtocolError, "solver reported an error: " + msg);
            }
        }
    }
    if (!verdict) {
        bool clean = WIFEXITED(status) && WEXITSTATUS(status) == 0;
        if (!clean)
            throw Error(ErrorKind::SolverCrashed,
                        "solver exited abnormally without a verdict: " + (err.empty() ? out : err));
        throw Error(ErrorKind::ProtocolError, "solver output has no sat/unsat/unknown verdict: " + out);
    }
    outcome.status = *verdict;
    if (*verdict == Status::Sat && script.produce_models)
        outcome.model = parse_model(out, script.declarations);
    return outcome;
}

} // namespace bppcheck::smt
