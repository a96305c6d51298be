#include <algorithm>
#include <set>
#include <sstream>

#include "occ/errors.hpp"
#include "occ/symbolic.hpp"

namespace occ {

namespace {

const std::vector<std::pair<std::string, std::string>> kAliases = {
    {"alpha_-", "α_-"}, {"alpha_+", "α_+"}, {"am", "α_-"}, {"ap", "α_+"}};

}  // namespace

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (n.empty()) throw MalformedSpec("empty symbol name");
        if (n.find_first_of(" \t\n") != std::string::npos) throw MalformedSpec("symbol name with whitespace: " + n);
        if (!seen.insert(n).second) throw MalformedSpec("duplicate symbol name " + n);
    }
}

bool Alphabet::contains(const std::string& name) const {
    return std::find(names_.begin(), names_.end(), name) != names_.end();
}

Sym Alphabet::id(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it != names_.end()) return static_cast<Sym>(it - names_.begin());
    for (const auto& [alias, real] : kAliases)
        if (alias == name) return id(real);
    throw MalformedSpec("unknown symbol " + name);
}

std::string Alphabet::str(const Word& w) const {
    if (w.empty()) return "ε";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) out += (i ? " " : "") + name(w[i]);
    return out;
}

Word Alphabet::parse(const std::string& text) const {
    std::istringstream is(text);
    Word w;
    std::string tok;
    while (is >> tok)
        if (tok != "ε") w.push_back(id(tok));
    return w;
}

MarkovCode MarkovCode::plain(std::vector<std::string> symbols, std::vector<std::vector<std::string>> words) {
    MarkovCode m;
    m.symbols = std::move(symbols);
    m.words = std::move(words);
    m.gamma = {"*"};
    m.s.assign(m.words.size(), {0});
    m.t.assign(m.words.size(), {0});
    m.A = {{1}};
    return m;
}

void MarkovCode::validate() const {
    Alphabet alpha(symbols);
    if (words.empty()) throw MalformedSpec("markov code without words");
    if (gamma.empty()) throw MalformedSpec("markov code with empty index set");
    if (s.size() != words.size() || t.size() != words.size())
        throw MalformedSpec("s and t must be given for every word");
    if (A.size() != gamma.size()) throw MalformedSpec("transition matrix has the wrong number of rows");
    for (const auto& row : A) {
        if (row.size() != gamma.size()) throw MalformedSpec("transition matrix is not square");
        for (int v : row)
            if (v != 0 && v != 1) throw MalformedSpec("transition matrix entries must be 0 or 1");
    }
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (words[i].empty()) throw MalformedSpec("empty code word");
        for (const auto& sym : words[i])
            if (!alpha.contains(sym)) throw MalformedSpec("code word uses undeclared symbol " + sym);
        for (const auto* set : {&s[i], &t[i]}) {
            if (set->empty()) throw MalformedSpec("empty s or t value for word " + std::to_string(i));
            for (auto g : *set)
                if (g >= gamma.size()) throw MalformedSpec("index out of range for word " + std::to_string(i));
        }
    }
}

bool MarkovCode::allows(const std::vector<std::size_t>& from, const std::vector<std::size_t>& to) const {
    for (auto i : from)
        for (auto j : to)
            if (A[i][j]) return true;
    return false;
}

CodeSpec CodeSpec::reset(int N) {
    if (N < 1) throw MalformedSpec("N must be at least 1");
    CodeSpec c;
    c.kind = Kind::Reset;
    c.N = N;
    return c;
}

CodeSpec CodeSpec::counter(int N) {
    if (N < 1) throw MalformedSpec("N must be at least 1");
    CodeSpec c;
    c.kind = Kind::Counter;
    c.N = N;
    return c;
}

CodeSpec CodeSpec::unite(std::vector<CodeSpec> parts) {
    if (parts.empty()) throw MalformedSpec("union of nothing");
    CodeSpec c;
    c.kind = Kind::Union;
    for (auto& p : parts) {
        if (p.kind == Kind::Union)
            for (auto& q : p.parts) c.parts.push_back(q);
        else
            c.parts.push_back(std::move(p));
    }
    return c;
}

CodeSpec CodeSpec::reversed(CodeSpec base) {
    CodeSpec c;
    c.kind = Kind::Reversed;
    c.parts.push_back(std::move(base));
    return c;
}

CodeSpec CodeSpec::higher_block(CodeSpec base, int n) {
    if (n < 2) throw MalformedSpec("higher block order must be at least 2");
    CodeSpec c;
    c.kind = Kind::HigherBlock;
    c.n = n;
    c.parts.push_back(std::move(base));
    return c;
}

CodeSpec CodeSpec::expand(CodeSpec base, std::string sigma, std::string sigma_new) {
    CodeSpec c;
    c.kind = Kind::Expand;
    c.sigma = std::move(sigma);
    c.sigma_new = sigma_new.empty() ? primed(c.sigma) : std::move(sigma_new);
    c.parts.push_back(std::move(base));
    return c;
}

CodeSpec CodeSpec::explicit_markov(MarkovCode code) {
    code.validate();
    CodeSpec c;
    c.kind = Kind::Markov;
    c.markov = std::move(code);
    return c;
}

CodeSpec CodeSpec::full_shift(const std::vector<std::string>& symbols) {
    std::vector<std::vector<std::string>> words;
    for (const auto& s : symbols) words.push_back({s});
    return explicit_markov(MarkovCode::plain(symbols, words));
}

std::string CodeSpec::describe() const {
    switch (kind) {
        case Kind::Reset: return "reset(" + std::to_string(N) + ")";
        case Kind::Counter: return "counter(" + std::to_string(N) + ")";
        case Kind::Union: {
            std::string s = "union(";
            for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + parts[i].describe();
            return s + ")";
        }
        case Kind::Reversed: return "reversed(" + base().describe() + ")";
        case Kind::HigherBlock: return "higher_block(" + base().describe() + "," + std::to_string(n) + ")";
        case Kind::Expand: return "expand(" + base().describe() + "," + sigma + "->" + sigma + sigma_new + ")";
        case Kind::Markov: return "markov(" + std::to_string(markov.words.size()) + " words)";
    }
    return "?";
}

bool operator==(const CodeSpec& a, const CodeSpec& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case CodeSpec::Kind::Reset:
        case CodeSpec::Kind::Counter: return a.N == b.N;
        case CodeSpec::Kind::Union:
        case CodeSpec::Kind::Reversed: return a.parts == b.parts;
        case CodeSpec::Kind::HigherBlock: return a.n == b.n && a.parts == b.parts;
        case CodeSpec::Kind::Expand: return a.sigma == b.sigma && a.sigma_new == b.sigma_new && a.parts == b.parts;
        case CodeSpec::Kind::Markov: return a.markov == b.markov;
    }
    return false;
}

std::string primed(const std::string& sigma) { return sigma + "'"; }

CodeSpec transform(const CodeSpec& spec, const Transform& t) {
    switch (t.kind) {
        case Transform::Kind::Reverse:
            return spec.kind == CodeSpec::Kind::Reversed ? spec.base() : CodeSpec::reversed(spec);
        case Transform::Kind::HigherBlock: return CodeSpec::higher_block(spec, t.n);
        case Transform::Kind::Expand: {
            CodeSpec c = CodeSpec::expand(spec, t.sigma, t.sigma_new);
            spec_alphabet(c);  // validates freshness
            return c;
        }
        case Transform::Kind::Union: {
            CodeSpec c = CodeSpec::unite({spec, t.other});
            spec_alphabet(c);
            return c;
        }
    }
    throw MalformedSpec("unknown transform");
}

bool length_lex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

Word reversed(Word w) {
    std::reverse(w.begin(), w.end());
    return w;
}

std::string to_string(Direction d) { return d == Direction::Future ? "future" : "past"; }

CfgSet Stepper::step(const CfgSet& s, Sym a) const {
    CfgSet out;
    for (Cfg c : s) successors(c, a, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

CfgSet Stepper::run(const CfgSet& s, const Word& w) const {
    CfgSet cur = s;
    for (Sym a : w) {
        if (cur.empty()) break;
        cur = step(cur, a);
    }
    return cur;
}

}  // namespace occ
