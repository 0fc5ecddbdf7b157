#include "bppcheck/oracle.hpp"

#include "bppcheck/error.hpp"

#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

namespace bppcheck {

OracleAnswer OracleAnswer::definitely(bool v)
{
    OracleAnswer a;
    a._exhausted = false;
    a._value = v;
    return a;
}

OracleAnswer OracleAnswer::exhausted_budget() { return OracleAnswer{}; }

bool OracleAnswer::value() const
{
    if (_exhausted)
        throw Error(ErrorKind::IllFormed, "oracle answer is not definite");
    return _value;
}

std::string to_string(const OracleAnswer& a)
{
    if (!a.is_definite())
        return "ExhaustedBudget";
    return a.value() ? "Definitely(true)" : "Definitely(false)";
}

static bool over_cap(const Marking& m, std::int64_t cap)
{
    for (auto c : m.counts())
        if (c > cap)
            return true;
    return false;
}

namespace {

// Shared BFS driver. visit returns true to stop early.
template <class Visit>
Exploration explore(const Bpp& bpp, const Marking& init, const ExplorationBudget& budget, bool keep_edges,
                    Visit&& visit, bool& stopped)
{
    Exploration e;
    std::unordered_map<Marking, std::size_t, MarkingHash> index;
    e.states.push_back(init);
    e.depth.push_back(0);
    index.emplace(init, 0);
    bool cut = over_cap(init, budget.count_cap);
    stopped = false;
    if (visit(init)) {
        stopped = true;
        return e;
    }
    for (std::size_t head = 0; head < e.states.size(); ++head) {
        const Marking current = e.states[head];
        const std::size_t d = e.depth[head];
        auto succ = successors(bpp, current);
        if (budget.max_depth && d >= *budget.max_depth) {
            if (!succ.empty())
                cut = true;
            continue;
        }
        for (auto& s : succ) {
            if (over_cap(s.marking, budget.count_cap)) {
                cut = true;
                continue;
            }
            auto it = index.find(s.marking);
            if (it == index.end()) {
                if (e.states.size() >= budget.max_states) {
                    cut = true;
                    continue;
                }
                it = index.emplace(s.marking, e.states.size()).first;
                e.states.push_back(s.marking);
                e.depth.push_back(d + 1);
                if (keep_edges)
                    e.edges.push_back({head, it->second, s.rule});
                if (visit(s.marking)) {
                    stopped = true;
                    return e;
                }
            } else if (keep_edges) {
                e.edges.push_back({head, it->second, s.rule});
            }
        }
    }
    e.complete = !cut;
    return e;
}

} // namespace

Exploration reachable_set(const Bpp& bpp, const Marking& init, const ExplorationBudget& budget)
{
    if (init.size() != bpp.dimension())
        throw Error(ErrorKind::DimensionMismatch, "initial marking dimension mismatch");
    bool stopped = false;
    return explore(bpp, init, budget, true, [](const Marking&) { return false; }, stopped);
}

OracleAnswer check_ef_oracle(const Bpp& bpp, const Marking& init, const Formula& psi, const ExplorationBudget& budget)
{
    if (init.size() != bpp.dimension())
        throw Error(ErrorKind::DimensionMismatch, "initial marking dimension mismatch");
    bool found = false;
    auto e = explore(bpp, init, budget, false, [&](const Marking& m) { return eval_propositional(psi, m, bpp); },
                     found);
    if (found)
        return OracleAnswer::definitely(true);
    return e.complete ? OracleAnswer::definitely(false) : OracleAnswer::exhausted_budget();
}

namespace {

struct Exhausted
{
};

struct MemoKey
{
    Marking m;
    const void* node;
    int steps; // -1 for a state formula, remaining path length otherwise
    bool operator==(const MemoKey&) const = default;
};

struct MemoKeyHash
{
    std::size_t operator()(const MemoKey& k) const noexcept
    {
        std::size_t h = MarkingHash{}(k.m);
        h ^= std::hash<const void*>{}(k.node) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= std::hash<int>{}(k.steps) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

class BoundedEvaluator
{
    const Bpp& _bpp;
    int _k;
    ExplorationBudget _budget;
    std::unordered_map<MemoKey, bool, MemoKeyHash> _memo;

    void charge()
    {
        if (_memo.size() >= _budget.max_states)
            throw Exhausted{};
    }

    std::vector<Successor> next(const Marking& m)
    {
        auto succ = successors(_bpp, m);
        for (const auto& s : succ)
            if (over_cap(s.marking, _budget.count_cap))
                throw Exhausted{};
        return succ;
    }

    // Some path of `steps` more transitions from m with every position satisfying f
    // (or, with negate, violating f).
    bool path(const Formula& f, bool negate, const Marking& m, int steps)
    {
        MemoKey key{m, f.identity(), negate ? -2 - steps : steps};
        if (auto it = _memo.find(key); it != _memo.end())
            return it->second;
        bool ok = eval(f, m) != negate;
        if (ok && steps > 0) {
            ok = false;
            for (const auto& s : next(m)) {
                if (path(f, negate, s.marking, steps - 1)) {
                    ok = true;
                    break;
                }
            }
        }
        charge();
        _memo.emplace(std::move(key), ok);
        return ok;
    }

    bool reach(const Formula& f, const Marking& m)
    {
        ExplorationBudget b = _budget;
        bool found = false;
        auto e = explore(_bpp, m, b, false, [&](const Marking& x) { return eval(f, x); }, found);
        if (found)
            return true;
        if (!e.complete)
            throw Exhausted{};
        return false;
    }

public:
    BoundedEvaluator(const Bpp& bpp, int k, const ExplorationBudget& budget) : _bpp(bpp), _k(k), _budget(budget) {}

    bool eval(const Formula& f, const Marking& m)
    {
        switch (f.op()) {
        case Op::Atom:
            return eval_atomic(f.atom(), m, _bpp);
        case Op::Not:
            return !eval(f.child(0), m);
        case Op::And:
            return eval(f.child(0), m) && eval(f.child(1), m);
        case Op::Or:
            return eval(f.child(0), m) || eval(f.child(1), m);
        case Op::Imp:
            return !eval(f.child(0), m) || eval(f.child(1), m);
        default:
            break;
        }
        MemoKey key{m, f.identity(), -1};
        if (auto it = _memo.find(key); it != _memo.end())
            return it->second;
        bool v = false;
        switch (f.op()) {
        case Op::ENext:
            if (_k >= 1) {
                for (const auto& s : next(m)) {
                    if (s.action == f.action() && eval(f.child(0), s.marking)) {
                        v = true;
                        break;
                    }
                }
            }
            break;
        case Op::ANext:
            v = true;
            if (_k >= 1) {
                for (const auto& s : next(m)) {
                    if (s.action == f.action() && !eval(f.child(0), s.marking)) {
                        v = false;
                        break;
                    }
                }
            }
            break;
        case Op::EG:
            v = path(f.child(0), false, m, _k);
            break;
        case Op::AF:
            v = !path(f.child(0), true, m, _k);
            break;
        case Op::EF:
            v = reach(f.child(0), m);
            break;
        default:
            break;
        }
        charge();
        _memo.emplace(std::move(key), v);
        return v;
    }
};

} // namespace

OracleAnswer eval_bounded(const Formula& f, const Marking& m, int k, const Bpp& bpp, const ExplorationBudget& budget)
{
    if (k < 0)
        throw Error(ErrorKind::IllFormed, "negative bound k");
    if (m.size() != bpp.dimension())
        throw Error(ErrorKind::DimensionMismatch, "marking dimension mismatch");
    BoundedEvaluator ev(bpp, k, budget);
    try {
        return OracleAnswer::definitely(ev.eval(f, m));
    } catch (const Exhausted&) {
        return OracleAnswer::exhausted_budget();
    }
}

std::string to_dot(const Bpp& bpp, const Exploration& e)
{
    std::ostringstream out;
    out << "digraph bpp {\n";
    out << "  // symbols:";
    for (const auto& s : bpp.symbols())
        out << ' ' << s;
    out << "\n";
    if (!e.complete)
        out << "  // exploration truncated\n";
    out << "  node [shape=box];\n";
    for (std::size_t i = 0; i < e.states.size(); ++i) {
        out << "  n" << i << " [label=\"" << to_string(e.states[i]) << "\"";
        if (i == 0)
            out << ", style=bold";
        out << "];\n";
    }
    for (const auto& edge : e.edges) {
        const auto& r = bpp.rule(edge.rule);
        out << "  n" << edge.from << " -> n" << edge.to << " [label=\"" << r.action << " (r" << r.id.value + 1
            << ")\"];\n";
    }
    out << "}\n";
    return out.str();
}

AcsExploration acs_reachable(const Acs& acs, const AcsPlace& init, const ExplorationBudget& budget)
{
    if (init.u.size() != acs.states().size() || init.v.size() != acs.mailbox_count())
        throw Error(ErrorKind::DimensionMismatch, "place dimension mismatch");
    AcsExploration e;
    std::map<AcsPlace, std::size_t> index;
    e.places.push_back(init);
    e.depth.push_back(0);
    index.emplace(init, 0);
    bool cut = false;
    for (std::size_t head = 0; head < e.places.size(); ++head) {
        const AcsPlace current = e.places[head];
        const std::size_t d = e.depth[head];
        for (const auto& r : acs.rules()) {
            auto next = acs_step(acs, current, r);
            if (!next)
                continue;
            if (budget.max_depth && d >= *budget.max_depth) {
                cut = true;
                break;
            }
            if (index.count(*next))
                continue;
            if (e.places.size() >= budget.max_states) {
                cut = true;
                continue;
            }
            index.emplace(*next, e.places.size());
            e.places.push_back(std::move(*next));
            e.depth.push_back(d + 1);
        }
    }
    e.complete = !cut;
    return e;
}

} // namespace bppcheck
