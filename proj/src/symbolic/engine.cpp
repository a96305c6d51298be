// Admissibility engine: code specs compile to one-counter automata over bounded counters,
// wrapped by block and expansion steppers. Subset simulation decides words.
#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <unordered_map>

#include "occ/errors.hpp"
#include "occ/symbolic.hpp"

namespace occ {

namespace {

// Counter relations; each has a transpose so automata can be reversed.
enum class Op : std::uint8_t { Id, Zero, Pos, Inc, Dec, Set0, ZeroGuess, Guess };

Op transpose(Op op) {
    switch (op) {
        case Op::Inc: return Op::Dec;
        case Op::Dec: return Op::Inc;
        case Op::Set0: return Op::ZeroGuess;
        case Op::ZeroGuess: return Op::Set0;
        default: return op;
    }
}

struct Edge {
    std::uint32_t from;
    Sym sym;
    Op op;
    std::uint32_t to;
    auto key() const { return std::tuple(from, sym, static_cast<int>(op), to); }
};

// Word boundaries are boundary states with counter 0.
struct Automaton {
    std::uint32_t states = 0;
    std::vector<Edge> edges;
    std::vector<bool> boundary;

    std::uint32_t add_state(bool is_boundary) {
        boundary.push_back(is_boundary);
        return states++;
    }
    void add(std::uint32_t from, Sym sym, Op op, std::uint32_t to) { edges.push_back({from, sym, op, to}); }

    Automaton transposed() const {
        Automaton t = *this;
        for (auto& e : t.edges) e = {e.to, e.sym, transpose(e.op), e.from};
        return t;
    }
    bool counter_free() const {
        return std::all_of(edges.begin(), edges.end(), [](const Edge& e) { return e.op == Op::Id; });
    }
    void dedupe() {
        std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.key() < b.key(); });
        edges.erase(std::unique(edges.begin(), edges.end(),
                                [](const Edge& a, const Edge& b) { return a.key() == b.key(); }),
                    edges.end());
    }
};

bool code_presentable(const CodeSpec& s) {
    switch (s.kind) {
        case CodeSpec::Kind::Reset:
        case CodeSpec::Kind::Counter:
        case CodeSpec::Kind::Markov: return true;
        case CodeSpec::Kind::Reversed: return code_presentable(s.base());
        case CodeSpec::Kind::Union:
            return std::all_of(s.parts.begin(), s.parts.end(), [](const CodeSpec& p) { return code_presentable(p); });
        default: return false;
    }
}

std::vector<std::string> indexed(const std::string& stem, int n) {
    std::vector<std::string> v;
    for (int i = 1; i <= n; ++i) v.push_back(stem + "_" + std::to_string(i));
    return v;
}

// alpha_-^k alpha_+^m x with m <= k (exits via Set0) or m = k (exits via Zero).
Automaton builtin_automaton(const CodeSpec& s, const Alphabet& a) {
    Automaton m;
    auto s0 = m.add_state(true), up = m.add_state(false), down = m.add_state(false);
    Sym am = a.id("α_-"), ap = a.id("α_+");
    m.add(s0, am, Op::Inc, up);
    m.add(up, am, Op::Inc, up);
    m.add(up, ap, Op::Dec, down);
    m.add(down, ap, Op::Dec, down);
    bool reset = s.kind == CodeSpec::Kind::Reset;
    for (const auto& name : indexed(reset ? "a" : "b", s.N)) m.add(down, a.id(name), reset ? Op::Set0 : Op::Zero, s0);
    return m;
}

Automaton markov_automaton(const MarkovCode& c, const Alphabet& a) {
    Automaton m;
    for (std::size_t g = 0; g < c.gamma.size(); ++g) m.add_state(true);
    for (std::size_t w = 0; w < c.words.size(); ++w) {
        const auto& word = c.words[w];
        std::vector<std::uint32_t> entry;
        for (std::uint32_t g = 0; g < c.gamma.size(); ++g)
            if (c.allows({g}, c.s[w])) entry.push_back(g);
        std::vector<std::uint32_t> cur = entry;
        for (std::size_t i = 0; i < word.size(); ++i) {
            std::vector<std::uint32_t> next;
            if (i + 1 == word.size())
                next.assign(c.t[w].begin(), c.t[w].end());
            else
                next.push_back(m.add_state(false));
            for (auto p : cur)
                for (auto q : next) m.add(p, a.id(word[i]), Op::Id, q);
            cur = next;
        }
    }
    m.dedupe();
    return m;
}

Automaton automaton_of(const CodeSpec& s, const Alphabet& a, bool rev) {
    switch (s.kind) {
        case CodeSpec::Kind::Reset:
        case CodeSpec::Kind::Counter: {
            Automaton m = builtin_automaton(s, a);
            return rev ? m.transposed() : m;
        }
        case CodeSpec::Kind::Markov: {
            Automaton m = markov_automaton(s.markov, a);
            return rev ? m.transposed() : m;
        }
        case CodeSpec::Kind::Reversed: return automaton_of(s.base(), a, !rev);
        case CodeSpec::Kind::Union: {
            // Disjoint union; any component's word may follow any other component's word.
            Automaton u;
            std::vector<std::vector<std::uint32_t>> bounds;
            std::vector<std::vector<Edge>> starts;
            for (const auto& p : s.parts) {
                Automaton m = automaton_of(p, a, rev);
                std::uint32_t off = u.states;
                bounds.emplace_back();
                starts.emplace_back();
                for (std::uint32_t q = 0; q < m.states; ++q) {
                    u.add_state(m.boundary[q]);
                    if (m.boundary[q]) bounds.back().push_back(off + q);
                }
                for (const auto& e : m.edges) {
                    Edge f{e.from + off, e.sym, e.op, e.to + off};
                    u.edges.push_back(f);
                    if (m.boundary[e.from]) starts.back().push_back(f);
                }
            }
            for (std::size_t j = 0; j < s.parts.size(); ++j)
                for (const auto& e : starts[j])
                    for (std::size_t i = 0; i < s.parts.size(); ++i)
                        if (i != j)
                            for (auto b : bounds[i]) u.add(b, e.sym, e.op, e.to);
            u.dedupe();
            return u;
        }
        default: throw MalformedSpec("union components must be code-presented: " + s.describe());
    }
}

// One-counter automaton with counters truncated at H, restricted to trim configurations.
class OcaStepper final : public Stepper {
public:
    OcaStepper(const Automaton& m, std::size_t nsym, std::size_t budget) : m_(m), nsym_(nsym), budget_(budget) {
        if (m.counter_free()) {
            cap_ = 0;
            H_ = 0;
        } else {
            cap_ = budget + 1;
            H_ = cap_ + budget + 2 * m.states + 8;
        }
        by_state_.resize(m.states);
        for (std::size_t i = 0; i < m.edges.size(); ++i) by_state_[m.edges[i].from].push_back(i);
        trim();
        trans_.resize(total() * nsym_);
        for (Cfg c = 0; c < total(); ++c) {
            if (!trim_[c]) continue;
            for (Sym a = 0; a < nsym_; ++a) {
                auto& out = trans_[c * nsym_ + a];
                raw_successors(c, a, out);
                out.erase(std::remove_if(out.begin(), out.end(), [&](Cfg d) { return !trim_[d]; }), out.end());
                std::sort(out.begin(), out.end());
                out.erase(std::unique(out.begin(), out.end()), out.end());
            }
        }
        for (Cfg c = 0; c < total(); ++c)
            if (trim_[c] && counter(c) <= cap_) init_.push_back(c);
    }

    std::size_t alphabet_size() const override { return nsym_; }
    const CfgSet& init() const override { return init_; }
    std::size_t budget() const override { return budget_; }
    void successors(Cfg c, Sym a, CfgSet& out) const override {
        const auto& t = trans_[c * nsym_ + a];
        out.insert(out.end(), t.begin(), t.end());
    }

private:
    Cfg total() const { return static_cast<Cfg>(m_.states * (H_ + 1)); }
    Cfg cfg(std::uint32_t q, std::size_t c) const { return static_cast<Cfg>(q * (H_ + 1) + c); }
    std::size_t counter(Cfg c) const { return c % (H_ + 1); }
    std::uint32_t state(Cfg c) const { return static_cast<std::uint32_t>(c / (H_ + 1)); }

    template <class F>
    void apply(const Edge& e, std::size_t c, F&& emit) const {
        switch (e.op) {
            case Op::Id: emit(cfg(e.to, c)); break;
            case Op::Zero: if (c == 0) emit(cfg(e.to, 0)); break;
            case Op::Pos: if (c > 0) emit(cfg(e.to, c)); break;
            case Op::Inc: if (c < H_) emit(cfg(e.to, c + 1)); break;
            case Op::Dec: if (c > 0) emit(cfg(e.to, c - 1)); break;
            case Op::Set0: emit(cfg(e.to, 0)); break;
            case Op::ZeroGuess: if (c == 0) for (std::size_t g = 0; g <= H_; ++g) emit(cfg(e.to, g)); break;
            case Op::Guess: for (std::size_t g = 0; g <= H_; ++g) emit(cfg(e.to, g)); break;
        }
    }

    void raw_successors(Cfg c, Sym a, CfgSet& out) const {
        for (auto i : by_state_[state(c)]) {
            const Edge& e = m_.edges[i];
            if (e.sym == a) apply(e, counter(c), [&](Cfg d) { out.push_back(d); });
        }
    }

    template <class F>
    void all_successors(Cfg c, F&& emit) const {
        for (auto i : by_state_[state(c)]) apply(m_.edges[i], counter(c), emit);
    }

    // Trim = reachable from and co-reachable to boundary configurations on bi-infinite paths.
    void trim() {
        Cfg n = total();
        std::vector<std::vector<Cfg>> pred(n);
        for (Cfg c = 0; c < n; ++c) all_successors(c, [&](Cfg d) { pred[d].push_back(c); });

        std::vector<std::uint32_t> bnd;
        for (std::uint32_t q = 0; q < m_.states; ++q)
            if (m_.boundary[q]) bnd.push_back(q);
        std::map<std::uint32_t, std::vector<std::uint32_t>> next;  // boundary graph
        for (auto b : bnd) {
            std::vector<bool> seen(n, false);
            std::deque<Cfg> q;
            all_successors(cfg(b, 0), [&](Cfg d) { if (!seen[d]) { seen[d] = true; q.push_back(d); } });
            while (!q.empty()) {
                Cfg c = q.front();
                q.pop_front();
                all_successors(c, [&](Cfg d) { if (!seen[d]) { seen[d] = true; q.push_back(d); } });
            }
            for (auto b2 : bnd)
                if (seen[cfg(b2, 0)]) next[b].push_back(b2);
        }
        std::vector<bool> live(m_.states, false);
        for (auto b : bnd) live[b] = true;
        for (bool changed = true; changed;) {
            changed = false;
            for (auto b : bnd) {
                if (!live[b]) continue;
                bool out = false, in = false;
                for (auto b2 : next[b]) out = out || live[b2];
                for (auto b1 : bnd)
                    if (live[b1])
                        for (auto b2 : next[b1]) in = in || b2 == b;
                if (!out || !in) {
                    live[b] = false;
                    changed = true;
                }
            }
        }
        std::vector<bool> fwd(n, false), bwd(n, false);
        std::deque<Cfg> q;
        for (auto b : bnd)
            if (live[b]) {
                fwd[cfg(b, 0)] = true;
                q.push_back(cfg(b, 0));
            }
        while (!q.empty()) {
            Cfg c = q.front();
            q.pop_front();
            all_successors(c, [&](Cfg d) { if (!fwd[d]) { fwd[d] = true; q.push_back(d); } });
        }
        for (auto b : bnd)
            if (live[b]) {
                bwd[cfg(b, 0)] = true;
                q.push_back(cfg(b, 0));
            }
        while (!q.empty()) {
            Cfg c = q.front();
            q.pop_front();
            for (Cfg d : pred[c])
                if (!bwd[d]) {
                    bwd[d] = true;
                    q.push_back(d);
                }
        }
        trim_.assign(n, false);
        for (Cfg c = 0; c < n; ++c) trim_[c] = fwd[c] && bwd[c];
    }

    Automaton m_;
    std::size_t nsym_, budget_, cap_ = 0, H_ = 0;
    std::vector<std::vector<std::size_t>> by_state_;
    std::vector<bool> trim_;
    std::vector<CfgSet> trans_;
    CfgSet init_;
};

// Thread-safe interning of composite configurations.
class Interner {
public:
    Cfg intern(std::uint64_t key) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto [it, fresh] = ids_.emplace(key, static_cast<Cfg>(keys_.size()));
        if (fresh) keys_.push_back(key);
        return it->second;
    }
    std::uint64_t key(Cfg c) const {
        std::lock_guard<std::mutex> lock(mu_);
        return keys_.at(c);
    }

private:
    mutable std::mutex mu_;
    mutable std::unordered_map<std::uint64_t, Cfg> ids_;
    mutable std::vector<std::uint64_t> keys_;
};

// Symbols are n-blocks of the base; consecutive blocks must overlap in n-1 symbols.
class BlockStepper final : public Stepper {
public:
    BlockStepper(std::shared_ptr<const Stepper> base, std::vector<Word> blocks, std::size_t budget)
        : base_(std::move(base)), blocks_(std::move(blocks)), budget_(budget) {
        start_ = ids_.intern(kStart);
        init_ = {start_};
        std::size_t k = blocks_.size();
        overlap_.assign(k * k, false);
        for (std::size_t v = 0; v < k; ++v)
            for (std::size_t u = 0; u < k; ++u)
                overlap_[v * k + u] = std::equal(blocks_[v].begin() + 1, blocks_[v].end(), blocks_[u].begin());
    }
    std::size_t alphabet_size() const override { return blocks_.size(); }
    const CfgSet& init() const override { return init_; }
    std::size_t budget() const override { return budget_; }
    void successors(Cfg c, Sym u, CfgSet& out) const override {
        std::uint64_t key = ids_.key(c);
        CfgSet next;
        if (key == kStart) {
            next = base_->run(blocks_[u]);
        } else {
            std::size_t v = key & 0xffffffffu;
            if (!overlap_[v * blocks_.size() + u]) return;
            base_->successors(static_cast<Cfg>(key >> 32), blocks_[u].back(), next);
        }
        for (Cfg b : next) out.push_back(ids_.intern((std::uint64_t(b) << 32) | u));
    }

private:
    static constexpr std::uint64_t kStart = ~std::uint64_t(0);
    std::shared_ptr<const Stepper> base_;
    std::vector<Word> blocks_;
    std::size_t budget_;
    std::vector<bool> overlap_;
    Interner ids_;
    Cfg start_;
    CfgSet init_;
};

// sigma is written sigma sigma' (after = true) or sigma' sigma (after = false).
class ExpandStepper final : public Stepper {
public:
    ExpandStepper(std::shared_ptr<const Stepper> base, Sym sigma, bool after, std::size_t budget)
        : base_(std::move(base)), sigma_(sigma), fresh_(static_cast<Sym>(base_->alphabet_size())), after_(after),
          budget_(budget) {
        for (Cfg c : base_->init()) init_.push_back(2 * c);
        // pending: sigma has been read by the base and its partner symbol is still owed
        for (Cfg c : base_->step(base_->init(), sigma_)) init_.push_back(2 * c + 1);
        std::sort(init_.begin(), init_.end());
        init_.erase(std::unique(init_.begin(), init_.end()), init_.end());
    }
    std::size_t alphabet_size() const override { return base_->alphabet_size() + 1; }
    const CfgSet& init() const override { return init_; }
    std::size_t budget() const override { return budget_; }
    void successors(Cfg c, Sym a, CfgSet& out) const override {
        Cfg b = c / 2;
        bool pending = c % 2;
        CfgSet next;
        if (after_) {
            if (pending) {
                if (a == fresh_) out.push_back(2 * b);
                return;
            }
            if (a == fresh_) return;
            base_->successors(b, a, next);
            for (Cfg d : next) out.push_back(2 * d + (a == sigma_ ? 1 : 0));
        } else {
            if (pending) {
                if (a == sigma_) out.push_back(2 * b);
                return;
            }
            if (a == sigma_) return;
            base_->successors(b, a == fresh_ ? sigma_ : a, next);
            for (Cfg d : next) out.push_back(2 * d + (a == fresh_ ? 1 : 0));
        }
    }

private:
    std::shared_ptr<const Stepper> base_;
    Sym sigma_, fresh_;
    bool after_;
    std::size_t budget_;
    CfgSet init_;
};

std::vector<std::string> merged_names(const std::vector<Alphabet>& parts) {
    std::vector<std::string> out;
    for (const auto& a : parts)
        for (const auto& n : a.names())
            if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
    return out;
}

std::string block_name(const Alphabet& a, const Word& w) {
    std::string s = "[";
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "." : "") + a.name(w[i]);
    return s + "]";
}

std::shared_ptr<const Stepper> build_stepper(const CodeSpec& s, const Alphabet& a, bool rev, std::size_t budget);

std::vector<Word> base_blocks(const CodeSpec& s) { return language(SubshiftOracle(s.base()), s.n); }

std::shared_ptr<const Stepper> build_stepper(const CodeSpec& s, const Alphabet& a, bool rev, std::size_t budget) {
    if (code_presentable(s)) return std::make_shared<OcaStepper>(automaton_of(s, a, rev), a.size(), budget);
    switch (s.kind) {
        case CodeSpec::Kind::Reversed: return build_stepper(s.base(), a, !rev, budget);
        case CodeSpec::Kind::HigherBlock: {
            std::vector<Word> blocks = base_blocks(s);
            if (rev)
                for (auto& b : blocks) b = reversed(b);
            Alphabet ba = spec_alphabet(s.base());
            return std::make_shared<BlockStepper>(build_stepper(s.base(), ba, rev, budget + s.n), blocks, budget);
        }
        case CodeSpec::Kind::Expand: {
            Alphabet ba = spec_alphabet(s.base());
            return std::make_shared<ExpandStepper>(build_stepper(s.base(), ba, rev, budget + 1), ba.id(s.sigma), !rev,
                                                   budget);
        }
        case CodeSpec::Kind::Union: throw MalformedSpec("union components must be code-presented: " + s.describe());
        default: throw MalformedSpec("unsupported spec " + s.describe());
    }
}

}  // namespace

Alphabet spec_alphabet(const CodeSpec& s) {
    switch (s.kind) {
        case CodeSpec::Kind::Reset:
        case CodeSpec::Kind::Counter: {
            std::vector<std::string> names{"α_-", "α_+"};
            for (const auto& n : indexed(s.kind == CodeSpec::Kind::Reset ? "a" : "b", s.N)) names.push_back(n);
            return Alphabet(names);
        }
        case CodeSpec::Kind::Markov: return Alphabet(s.markov.symbols);
        case CodeSpec::Kind::Reversed: return spec_alphabet(s.base());
        case CodeSpec::Kind::Union: {
            std::vector<Alphabet> parts;
            for (const auto& p : s.parts) parts.push_back(spec_alphabet(p));
            return Alphabet(merged_names(parts));
        }
        case CodeSpec::Kind::HigherBlock: {
            Alphabet ba = spec_alphabet(s.base());
            std::vector<std::string> names;
            for (const auto& w : base_blocks(s)) names.push_back(block_name(ba, w));
            return Alphabet(names);
        }
        case CodeSpec::Kind::Expand: {
            Alphabet ba = spec_alphabet(s.base());
            if (!ba.contains(s.sigma)) throw MalformedSpec("expanded symbol " + s.sigma + " not in the alphabet");
            if (ba.contains(s.sigma_new)) throw MalformedSpec("expansion symbol " + s.sigma_new + " is not fresh");
            auto names = ba.names();
            names.push_back(s.sigma_new);
            return Alphabet(names);
        }
    }
    throw MalformedSpec("unknown spec kind");
}

class Engine {
public:
    Engine(CodeSpec spec, Alphabet a) : spec_(std::move(spec)), alphabet_(std::move(a)) {}

    std::shared_ptr<const Stepper> get(std::size_t budget, bool rev) {
        std::size_t rounded = (budget + 15) / 16 * 16;
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::pair(rounded, rev);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        auto st = build_stepper(spec_, alphabet_, rev, rounded);
        cache_.emplace(key, st);
        return st;
    }

private:
    CodeSpec spec_;
    Alphabet alphabet_;
    std::mutex mu_;
    std::map<std::pair<std::size_t, bool>, std::shared_ptr<const Stepper>> cache_;
};

SubshiftOracle::SubshiftOracle(const CodeSpec& spec)
    : spec_(spec), alphabet_(spec_alphabet(spec)), engine_(std::make_shared<Engine>(spec_, alphabet_)) {
    engine_->get(0, false);  // surfaces MalformedSpec early
}

std::shared_ptr<const Stepper> SubshiftOracle::stepper(std::size_t budget, bool rev) const {
    return engine_->get(budget, rev);
}

bool SubshiftOracle::decide(const Word& w) const {
    if (w.empty()) return true;
    for (Sym s : w)
        if (s >= alphabet_.size()) return false;
    return !stepper(w.size())->run(w).empty();
}

SubshiftOracle SubshiftOracle::reverse() const { return SubshiftOracle(transform(spec_, Transform::reverse())); }

namespace {

void grow(const Stepper& st, const CfgSet& s, std::size_t depth, Word& cur, std::vector<Word>& out) {
    if (depth == 0) {
        out.push_back(cur);
        return;
    }
    for (Sym a = 0; a < st.alphabet_size(); ++a) {
        CfgSet t = st.step(s, a);
        if (t.empty()) continue;
        cur.push_back(a);
        grow(st, t, depth - 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Word> language(const SubshiftOracle& o, std::size_t n) {
    auto st = o.stepper(n);
    std::vector<Word> out;
    Word cur;
    if (n == 0) return {Word{}};
    grow(*st, st->init(), n, cur, out);
    return out;
}

std::vector<Word> extender_set(const SubshiftOracle& o, const Word& a, std::size_t l, Direction d) {
    if (!o.decide(a)) throw InadmissibleWord(o.alphabet().str(a));
    bool past = d == Direction::Past;
    auto st = o.stepper(a.size() + l, past);
    CfgSet s = st->run(past ? reversed(a) : a);
    std::vector<Word> out;
    Word cur;
    grow(*st, s, l, cur, out);
    if (past) {
        for (auto& w : out) w = reversed(w);
        std::sort(out.begin(), out.end(), length_lex_less);
    }
    return out;
}

}  // namespace occ
