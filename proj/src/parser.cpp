#include "bppcheck/parser.hpp"

#include "bppcheck/error.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace bppcheck {

namespace {

enum class Tok { Ident, Number, Arrow, Comma, LParen, RParen, Star, Plus, Minus, Compare, Bang, Question, Colon, End };

struct Token
{
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::vector<Token> lex(std::string_view src)
{
    std::vector<Token> out;
    std::size_t i = 0, line = 1, col = 1;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            unsigned char c = static_cast<unsigned char>(src[i]);
            if (c == '\n') {
                ++line;
                col = 1;
            } else if ((c & 0xC0) != 0x80) {
                ++col;
            }
        }
    };
    auto is_alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    auto is_digit = [](char c) { return c >= '0' && c <= '9'; };

    while (i < src.size()) {
        char c = src[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n')
                advance(1);
            continue;
        }
        Token t{Tok::End, {}, line, col};
        std::size_t len = 1;
        if (is_alpha(c)) {
            while (i + len < src.size() && (is_alpha(src[i + len]) || is_digit(src[i + len])))
                ++len;
            t.kind = Tok::Ident;
        } else if (is_digit(c)) {
            if (c != '0') {
                while (i + len < src.size() && is_digit(src[i + len]))
                    ++len;
            }
            t.kind = Tok::Number;
        } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
            t.kind = Tok::Arrow;
            len = 2;
        } else if ((c == '=' || c == '!' || c == '>' || c == '<') && i + 1 < src.size() && src[i + 1] == '=') {
            t.kind = Tok::Compare;
            len = 2;
        } else if (c == '>' || c == '<') {
            t.kind = Tok::Compare;
        } else {
            switch (c) {
            case ',': t.kind = Tok::Comma; break;
            case '(': t.kind = Tok::LParen; break;
            case ')': t.kind = Tok::RParen; break;
            case '*': t.kind = Tok::Star; break;
            case '+': t.kind = Tok::Plus; break;
            case '-': t.kind = Tok::Minus; break;
            case '!': t.kind = Tok::Bang; break;
            case '?': t.kind = Tok::Question; break;
            case ':': t.kind = Tok::Colon; break;
            default: {
                std::size_t n = 1;
                while (i + n < src.size() && (static_cast<unsigned char>(src[i + n]) & 0xC0) == 0x80)
                    ++n;
                throw ParseError(line, col, "token", std::string(src.substr(i, n)));
            }
            }
        }
        t.text = std::string(src.substr(i, len));
        advance(len);
        out.push_back(std::move(t));
    }
    out.push_back(Token{Tok::End, {}, line, col});
    return out;
}

bool is_keyword(std::string_view s)
{
    return s == "initial" || s == "rules" || s == "formula" || s == "nil";
}

bool is_acs_keyword(std::string_view s)
{
    return s == "states" || s == "procs" || s == "msgs" || s == "rules" || s == "init" || s == "nop" ||
           s == "new";
}

const std::unordered_map<std::string_view, Production>& unary_ops()
{
    static const std::unordered_map<std::string_view, Production> ops{
        {"Neg", Production::UnaryNeg}, {"EG", Production::UnaryEG},
        {"AF", Production::UnaryAF},   {"EF", Production::UnaryEF}};
    return ops;
}

const std::unordered_map<std::string_view, Production>& binary_ops()
{
    static const std::unordered_map<std::string_view, Production> ops{
        {"Conj", Production::BinaryConj}, {"Disj", Production::BinaryDisj}, {"Imp", Production::BinaryImp}};
    return ops;
}

struct NamePos
{
    std::string name;
    std::size_t line;
    std::size_t column;
};

class Parser
{
public:
    Parser(std::string_view text, const ParseOptions& options) : _toks(lex(text)), _opts(options) {}

    ProblemFile problem();
    Formula standalone_formula();
    AcsFile acs();

private:
    std::vector<Token> _toks;
    std::size_t _pos = 0;
    const ParseOptions& _opts;

    std::vector<NamePos> _formula_symbols;
    std::vector<NamePos> _formula_labels;

    const Token& peek(std::size_t ahead = 0) const
    {
        return _toks[std::min(_pos + ahead, _toks.size() - 1)];
    }
    Token take() { return _toks[std::min(_pos++, _toks.size() - 1)]; }

    [[noreturn]] void fail(const std::string& expected) const
    {
        const auto& t = peek();
        throw ParseError(t.line, t.column, expected, t.text);
    }

    void cover(Production p)
    {
        if (_opts.coverage)
            _opts.coverage->insert(p);
    }

    bool at_keyword(std::string_view kw) const { return peek().kind == Tok::Ident && peek().text == kw; }

    void expect_keyword(std::string_view kw)
    {
        if (!at_keyword(kw))
            fail("'" + std::string(kw) + "'");
        take();
    }

    Token expect(Tok kind, const std::string& what)
    {
        if (peek().kind != kind)
            fail(what);
        return take();
    }

    std::string var()
    {
        const auto& t = peek();
        if (t.kind != Tok::Ident || is_keyword(t.text) || !is_valid_symbol_name(t.text))
            fail("symbol");
        cover(Production::Var);
        return take().text;
    }

    std::string label()
    {
        const auto& t = peek();
        bool ok = t.kind == Tok::Ident && !is_keyword(t.text) &&
                  (is_valid_symbol_name(t.text) || t.text == kTauAction);
        if (!ok)
            fail("action label");
        cover(Production::Label);
        return take().text;
    }

    std::int64_t number()
    {
        const auto& t = peek();
        if (t.kind != Tok::Number)
            fail("number");
        std::int64_t v = 0;
        for (char c : t.text) {
            if (v > (std::numeric_limits<std::int64_t>::max() - (c - '0')) / 10)
                fail("number below 2^63");
            v = v * 10 + (c - '0');
        }
        cover(Production::Number);
        take();
        return v;
    }

    // SYMBOLS, or the keyword nil for the empty multiset.
    std::vector<std::string> symbols(bool allow_nil)
    {
        std::vector<std::string> out;
        if (allow_nil && at_keyword("nil")) {
            take();
            return out;
        }
        out.push_back(var());
        while (peek().kind == Tok::Comma) {
            take();
            out.push_back(var());
        }
        cover(out.size() == 1 ? Production::SymbolsSingle : Production::SymbolsList);
        return out;
    }

    RuleDecl rule()
    {
        RuleDecl r;
        r.lhs = var();
        expect(Tok::Arrow, "'->'");
        if (peek().kind == Tok::Ident && peek(1).kind == Tok::Arrow) {
            r.action = label();
            take();
            cover(Production::RuleLabeled);
        } else {
            cover(Production::RuleUnlabeled);
        }
        r.rhs = symbols(true);
        return r;
    }

    Formula formula();
    Formula query();
    AtomTerm mult();
};

ProblemFile Parser::problem()
{
    cover(Production::Problem);
    cover(Production::Bpp);
    expect_keyword("initial");
    auto initial = symbols(true);
    expect_keyword("rules");

    std::vector<RuleDecl> rules;
    while (!at_keyword("formula")) {
        if (peek().kind != Tok::Ident)
            fail(rules.empty() ? "rule" : "rule or 'formula'");
        rules.push_back(rule());
    }
    if (rules.empty())
        fail("rule");
    cover(rules.size() == 1 ? Production::RulesSingle : Production::RulesMany);
    expect_keyword("formula");
    Formula f = formula();
    if (peek().kind != Tok::End)
        fail("end of input");

    std::vector<std::string> order;
    auto declare = [&](const std::string& s) {
        if (std::find(order.begin(), order.end(), s) == order.end())
            order.push_back(s);
    };
    for (const auto& s : initial)
        declare(s);
    for (const auto& r : rules) {
        declare(r.lhs);
        for (const auto& s : r.rhs)
            declare(s);
    }

    Bpp bpp(order, rules);
    for (const auto& s : _formula_symbols) {
        if (!bpp.find_symbol(s.name))
            throw Error(ErrorKind::UnknownSymbol, std::to_string(s.line) + ":" + std::to_string(s.column) +
                                                      ": unknown symbol '" + s.name + "'");
    }
    for (const auto& l : _formula_labels) {
        if (!bpp.has_action(l.name))
            throw Error(ErrorKind::UnknownLabel, std::to_string(l.line) + ":" + std::to_string(l.column) +
                                                     ": unknown action label '" + l.name + "'");
    }
    Marking init = parikh(bpp, std::span<const std::string>(initial));
    return ProblemFile{std::move(bpp), std::move(init), std::move(f), {}, {}};
}

Formula Parser::standalone_formula()
{
    if (at_keyword("formula"))
        take();
    Formula f = formula();
    if (peek().kind != Tok::End)
        fail("end of input");
    return f;
}

Formula Parser::formula()
{
    const auto& t = peek();
    if (t.kind == Tok::Ident && peek(1).kind == Tok::LParen && !(_opts.allow_mail && t.text == "mail")) {
        std::string op = t.text;
        if (auto u = unary_ops().find(op); u != unary_ops().end()) {
            take();
            take();
            cover(Production::FormulaUnary);
            cover(u->second);
            Formula inner = formula();
            expect(Tok::RParen, "')'");
            if (op == "Neg")
                return Formula::negation(std::move(inner));
            if (op == "EG")
                return Formula::exists_globally(std::move(inner));
            if (op == "AF")
                return Formula::forall_finally(std::move(inner));
            return Formula::exists_finally(std::move(inner));
        }
        if (auto b = binary_ops().find(op); b != binary_ops().end()) {
            take();
            take();
            cover(Production::FormulaBinary);
            cover(b->second);
            Formula lhs = formula();
            expect(Tok::Comma, "','");
            Formula rhs = formula();
            expect(Tok::RParen, "')'");
            if (op == "Conj")
                return Formula::conjunction(std::move(lhs), std::move(rhs));
            if (op == "Disj")
                return Formula::disjunction(std::move(lhs), std::move(rhs));
            return Formula::implication(std::move(lhs), std::move(rhs));
        }
        if (op == "EX" || op == "AX") {
            take();
            take();
            cover(Production::FormulaNext);
            cover(op == "EX" ? Production::NextEX : Production::NextAX);
            const auto& lt = peek();
            std::size_t line = lt.line, column = lt.column;
            std::string a = label();
            _formula_labels.push_back({a, line, column});
            expect(Tok::Comma, "','");
            Formula inner = formula();
            expect(Tok::RParen, "')'");
            return op == "EX" ? Formula::exists_next(std::move(a), std::move(inner))
                              : Formula::forall_next(std::move(a), std::move(inner));
        }
        fail("formula operator (Neg, EG, AF, EF, Conj, Disj, Imp, EX, AX) or query");
    }
    if (t.kind != Tok::Ident)
        fail("formula");
    cover(Production::FormulaQuery);
    return query();
}

AtomTerm Parser::mult()
{
    AtomTerm term;
    if (_opts.allow_mail && at_keyword("mail") && peek(1).kind == Tok::LParen) {
        take();
        take();
        MailboxRef mb;
        mb.proc = var();
        expect(Tok::Comma, "','");
        mb.msg = var();
        expect(Tok::RParen, "')'");
        term.ref = std::move(mb);
    } else {
        const auto& t = peek();
        std::size_t line = t.line, column = t.column;
        std::string name = var();
        _formula_symbols.push_back({name, line, column});
        term.ref = std::move(name);
    }
    if (peek().kind == Tok::Star) {
        take();
        term.coeff = number();
        cover(Production::MultScaled);
    } else {
        cover(Production::MultVar);
    }
    return term;
}

Formula Parser::query()
{
    cover(Production::Query);
    LinearAtom a;
    a.terms.push_back(mult());
    bool connected = false;
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
        bool minus = take().kind == Tok::Minus;
        cover(minus ? Production::ConnectMinus : Production::ConnectPlus);
        connected = true;
        AtomTerm t = mult();
        if (minus)
            t.coeff = -t.coeff;
        a.terms.push_back(std::move(t));
    }
    cover(connected ? Production::AccConnect : Production::AccMult);
    if (peek().kind != Tok::Compare)
        fail(a.terms.size() == 1 && peek().kind != Tok::Star ? "'*', '+', '-' or comparison operator"
                                                              : "'+', '-' or comparison operator");
    std::string cmp = take().text;
    if (cmp == "==") {
        a.cmp = Cmp::Eq;
        cover(Production::CompareEq);
    } else if (cmp == "!=") {
        a.cmp = Cmp::Ne;
        cover(Production::CompareNe);
    } else if (cmp == ">=") {
        a.cmp = Cmp::Ge;
        cover(Production::CompareGe);
    } else if (cmp == "<=") {
        a.cmp = Cmp::Le;
        cover(Production::CompareLe);
    } else if (cmp == ">") {
        a.cmp = Cmp::Gt;
        cover(Production::CompareGt);
    } else {
        a.cmp = Cmp::Lt;
        cover(Production::CompareLt);
    }
    a.bound = number();
    return Formula::atom(std::move(a));
}

// ---------------------------------------------------------------------------
// ACS files

AcsFile Parser::acs()
{
    struct Decl
    {
        std::vector<std::string> names;
        std::vector<std::pair<std::size_t, std::size_t>> pos;
    };
    auto name_list = [&](const char* what) {
        Decl d;
        while (true) {
            const auto& t = peek();
            if (t.kind != Tok::Ident || is_acs_keyword(t.text) || !is_valid_symbol_name(t.text))
                fail(what);
            if (std::find(d.names.begin(), d.names.end(), t.text) != d.names.end())
                throw Error(ErrorKind::Duplicate, std::to_string(t.line) + ":" + std::to_string(t.column) +
                                                      ": duplicate " + what + " '" + t.text + "'");
            d.names.push_back(t.text);
            d.pos.emplace_back(t.line, t.column);
            take();
            if (peek().kind != Tok::Comma)
                break;
            take();
        }
        return d;
    };

    expect_keyword("states");
    auto states = name_list("state");
    Decl procs, msgs;
    if (at_keyword("procs")) {
        take();
        procs = name_list("process");
    }
    if (at_keyword("msgs")) {
        take();
        msgs = name_list("message");
    }
    expect_keyword("rules");

    auto where = [](const Token& t) { return std::to_string(t.line) + ":" + std::to_string(t.column) + ": "; };
    auto state_ref = [&]() -> std::size_t {
        const auto& t = peek();
        if (t.kind != Tok::Ident || is_acs_keyword(t.text))
            fail("state");
        auto it = std::find(states.names.begin(), states.names.end(), t.text);
        if (it == states.names.end())
            throw Error(ErrorKind::UnknownState, where(t) + "undeclared state '" + t.text + "'");
        take();
        return static_cast<std::size_t>(it - states.names.begin());
    };
    auto ref = [&](const Decl& d, const char* what) -> std::size_t {
        const auto& t = peek();
        if (t.kind != Tok::Ident || is_acs_keyword(t.text))
            fail(what);
        auto it = std::find(d.names.begin(), d.names.end(), t.text);
        if (it == d.names.end())
            throw Error(ErrorKind::UnknownReference, where(t) + "undeclared " + what + " '" + t.text + "'");
        take();
        return static_cast<std::size_t>(it - d.names.begin());
    };

    std::vector<AcsRule> rules;
    while (peek().kind == Tok::Ident && !at_keyword("init")) {
        AcsRule r{};
        r.from = state_ref();
        expect(Tok::Arrow, "'->'");
        if (at_keyword("nop")) {
            take();
            r.op = acs_op::Nop{};
        } else if (at_keyword("new")) {
            take();
            r.op = acs_op::Spawn{state_ref()};
        } else {
            std::size_t p = ref(procs, "process");
            if (peek().kind != Tok::Bang && peek().kind != Tok::Question)
                fail("'!' or '?'");
            bool send = take().kind == Tok::Bang;
            std::size_t m = ref(msgs, "message");
            if (send)
                r.op = acs_op::Send{p, m};
            else
                r.op = acs_op::Recv{p, m};
        }
        expect(Tok::Arrow, "'->'");
        r.to = state_ref();
        rules.push_back(r);
    }
    expect_keyword("init");

    Acs system(states.names, procs.names, msgs.names, rules);
    AcsPlace place = zero_place(system);
    std::vector<bool> seen_u(states.names.size(), false), seen_v(system.mailbox_count(), false);
    while (true) {
        const Token start = peek();
        if (start.kind == Tok::LParen) {
            take();
            std::size_t p = ref(procs, "process");
            expect(Tok::Comma, "','");
            std::size_t m = ref(msgs, "message");
            expect(Tok::RParen, "')'");
            expect(Tok::Colon, "':'");
            auto b = system.mailbox(p, m);
            if (seen_v[b])
                throw Error(ErrorKind::Duplicate, where(start) + "mailbox initialised twice");
            seen_v[b] = true;
            place.v[b] = number();
        } else if (start.kind == Tok::Ident) {
            std::size_t q = state_ref();
            expect(Tok::Colon, "':'");
            if (seen_u[q])
                throw Error(ErrorKind::Duplicate, where(start) + "state '" + start.text + "' initialised twice");
            seen_u[q] = true;
            place.u[q] = number();
        } else {
            fail("state or (process,message)");
        }
        if (peek().kind != Tok::Comma)
            break;
        take();
    }
    if (peek().kind != Tok::End)
        fail("',' or end of input");
    return AcsFile{std::move(system), std::move(place)};
}

} // namespace

const std::vector<Production>& all_productions()
{
    static const std::vector<Production> all = [] {
        std::vector<Production> v;
        for (int i = static_cast<int>(Production::Problem); i <= static_cast<int>(Production::Number); ++i)
            v.push_back(static_cast<Production>(i));
        return v;
    }();
    return all;
}

const char* to_string(Production p)
{
    static constexpr std::array names{
        "PROBLEM",        "BPP",           "SYMBOLS(single)", "SYMBOLS(list)", "RULES(single)",
        "RULES(many)",    "RULE(unlabeled)", "RULE(labeled)",  "FORMULA(unary)", "FORMULA(binary)",
        "FORMULA(next)",  "FORMULA(query)", "QUERY",          "ACC(mult)",     "ACC(connect)",
        "MULT(var)",      "MULT(scaled)",  "CONNECT(+)",      "CONNECT(-)",    "COMPARE(==)",
        "COMPARE(!=)",    "COMPARE(>=)",   "COMPARE(<=)",     "COMPARE(>)",    "COMPARE(<)",
        "UNARY(Neg)",     "UNARY(EG)",     "UNARY(AF)",       "UNARY(EF)",     "BINARY(Conj)",
        "BINARY(Disj)",   "BINARY(Imp)",   "NEXT(EX)",        "NEXT(AX)",      "VAR",
        "LABEL",          "NUMBER"};
    return names.at(static_cast<std::size_t>(p));
}

bool same_problem(const ProblemFile& a, const ProblemFile& b)
{
    return a.bpp == b.bpp && a.initial == b.initial && a.formula == b.formula;
}

ProblemFile parse_problem(std::string_view text, const ParseOptions& options)
{
    Parser p(text, options);
    auto out = p.problem();
    out.text = std::string(text);
    return out;
}

Formula parse_formula(std::string_view text, const ParseOptions& options)
{
    Parser p(text, options);
    return p.standalone_formula();
}

AcsFile parse_acs(std::string_view text)
{
    ParseOptions options;
    Parser p(text, options);
    return p.acs();
}

std::string to_problem_text(const Bpp& bpp, const Marking& initial, const Formula& f)
{
    std::ostringstream os;
    os << "initial\n";
    bool first = true;
    for (std::size_t i = 0; i < bpp.dimension(); ++i) {
        for (std::int64_t c = 0; c < initial.at(i); ++c) {
            os << (first ? "" : ", ") << bpp.symbols()[i];
            first = false;
        }
    }
    os << (first ? "nil\n" : "\n");
    os << "rules\n";
    for (const auto& r : bpp.rules()) {
        os << bpp.symbol_name(r.lhs) << " -> ";
        if (r.action != kTauAction)
            os << r.action << " -> ";
        if (r.rhs.empty())
            os << "nil";
        for (std::size_t i = 0; i < r.rhs.size(); ++i)
            os << (i ? ", " : "") << bpp.symbol_name(r.rhs[i]);
        os << "\n";
    }
    os << "formula\n" << to_text(f) << "\n";
    return os.str();
}

std::string to_text(const ProblemFile& p) { return to_problem_text(p.bpp, p.initial, p.formula); }

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace bppcheck
