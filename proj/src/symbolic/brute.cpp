// Reference oracle: explicit truncated code word lists and a split-point search.
// Shares no machinery with the automaton engine beyond the alphabet naming.
#include <algorithm>

#include "occ/errors.hpp"
#include "occ/symbolic.hpp"

namespace occ {

namespace {

struct Node {
    virtual ~Node() = default;
    virtual bool decide(const Word& w) const = 0;
};

// Code words with index sets; consecutive words v, v' are allowed when some
// gamma in t(v) and s in s(v') have A[gamma][s] = 1.
struct Leaf {
    std::vector<Word> words;
    std::size_t ng = 1;
    std::vector<std::vector<std::size_t>> s, t;
    std::vector<std::vector<bool>> A;
};

Leaf plain_leaf(std::vector<Word> words) {
    Leaf l;
    l.words = std::move(words);
    l.s.assign(l.words.size(), {0});
    l.t.assign(l.words.size(), {0});
    l.A = {{true}};
    return l;
}

bool presentable(const CodeSpec& s) {
    switch (s.kind) {
        case CodeSpec::Kind::Reset:
        case CodeSpec::Kind::Counter:
        case CodeSpec::Kind::Markov: return true;
        case CodeSpec::Kind::Reversed: return presentable(s.base());
        case CodeSpec::Kind::Union:
            return std::all_of(s.parts.begin(), s.parts.end(), [](const CodeSpec& p) { return presentable(p); });
        default: return false;
    }
}

Leaf leaf_of(const CodeSpec& s, const Alphabet& a, std::size_t longest) {
    switch (s.kind) {
        case CodeSpec::Kind::Reset:
        case CodeSpec::Kind::Counter: {
            bool reset = s.kind == CodeSpec::Kind::Reset;
            Sym am = a.id("α_-"), ap = a.id("α_+");
            std::vector<Word> words;
            for (std::size_t k = 1; 2 * k + 1 <= longest + k; ++k)
                for (std::size_t m = reset ? 1 : k; m <= k && k + m + 1 <= longest; ++m)
                    for (int i = 1; i <= s.N; ++i) {
                        Word w(k, am);
                        w.insert(w.end(), m, ap);
                        w.push_back(a.id((reset ? "a_" : "b_") + std::to_string(i)));
                        words.push_back(w);
                    }
            return plain_leaf(words);
        }
        case CodeSpec::Kind::Markov: {
            const MarkovCode& c = s.markov;
            Leaf l;
            for (const auto& w : c.words) {
                Word x;
                for (const auto& n : w) x.push_back(a.id(n));
                l.words.push_back(x);
            }
            l.ng = c.gamma.size();
            l.s = c.s;
            l.t = c.t;
            l.A.assign(l.ng, std::vector<bool>(l.ng));
            for (std::size_t i = 0; i < l.ng; ++i)
                for (std::size_t j = 0; j < l.ng; ++j) l.A[i][j] = c.A[i][j] != 0;
            return l;
        }
        case CodeSpec::Kind::Reversed: {
            Leaf l = leaf_of(s.base(), a, longest);
            for (auto& w : l.words) std::reverse(w.begin(), w.end());
            std::swap(l.s, l.t);
            auto A = l.A;
            for (std::size_t i = 0; i < l.ng; ++i)
                for (std::size_t j = 0; j < l.ng; ++j) l.A[i][j] = A[j][i];
            return l;
        }
        case CodeSpec::Kind::Union: {
            std::vector<Leaf> parts;
            std::size_t total = 0;
            for (const auto& p : s.parts) {
                parts.push_back(leaf_of(p, a, longest));
                total += parts.back().ng;
            }
            Leaf u;
            u.ng = total;
            u.A.assign(total, std::vector<bool>(total, true));
            std::size_t off = 0;
            for (const auto& p : parts) {
                for (std::size_t i = 0; i < p.words.size(); ++i) {
                    u.words.push_back(p.words[i]);
                    auto shift = [&](std::vector<std::size_t> v) {
                        for (auto& g : v) g += off;
                        return v;
                    };
                    u.s.push_back(shift(p.s[i]));
                    u.t.push_back(shift(p.t[i]));
                }
                for (std::size_t i = 0; i < p.ng; ++i)
                    for (std::size_t j = 0; j < p.ng; ++j) u.A[off + i][off + j] = p.A[i][j];
                off += p.ng;
            }
            return u;
        }
        default: throw MalformedSpec("not a code: " + s.describe());
    }
}

class CodeNode final : public Node {
public:
    explicit CodeNode(Leaf l) : l_(std::move(l)) {
        std::size_t nw = l_.words.size();
        elig_.assign(nw, std::vector<bool>(l_.ng, false));
        for (std::size_t v = 0; v < nw; ++v)
            for (std::size_t g = 0; g < l_.ng; ++g)
                for (auto x : l_.s[v]) elig_[v][g] = elig_[v][g] || l_.A[g][x];
        // Indices lying on a bi-infinite chain of words.
        ess_.assign(l_.ng, true);
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t g = 0; g < l_.ng; ++g) {
                if (!ess_[g]) continue;
                bool out = false, in = false;
                for (std::size_t v = 0; v < nw; ++v) {
                    bool hits_live = std::any_of(l_.t[v].begin(), l_.t[v].end(), [&](auto x) { return ess_[x]; });
                    if (elig_[v][g] && hits_live) out = true;
                    if (std::find(l_.t[v].begin(), l_.t[v].end(), g) != l_.t[v].end())
                        for (std::size_t h = 0; h < l_.ng; ++h) in = in || (ess_[h] && elig_[v][h]);
                }
                if (!out || !in) {
                    ess_[g] = false;
                    changed = true;
                }
            }
        }
        targets_.resize(nw);
        usable_.assign(nw, false);
        for (std::size_t v = 0; v < nw; ++v) {
            for (auto x : l_.t[v])
                if (ess_[x]) targets_[v].push_back(x);
            bool from = false;
            for (std::size_t g = 0; g < l_.ng; ++g) from = from || (ess_[g] && elig_[v][g]);
            usable_[v] = from && !targets_[v].empty();
        }
    }

    bool decide(const Word& w) const override {
        if (w.empty()) return true;
        const std::size_t n = w.size(), nw = l_.words.size();
        for (std::size_t v = 0; v < nw; ++v)
            if (usable_[v] && std::search(l_.words[v].begin(), l_.words[v].end(), w.begin(), w.end()) !=
                                  l_.words[v].end())
                return true;
        // reach[i][g]: position i can be a word boundary entered in index g.
        std::vector<std::vector<bool>> reach(n + 1, std::vector<bool>(l_.ng, false));
        reach[0] = ess_;
        for (std::size_t v = 0; v < nw; ++v) {
            if (!usable_[v]) continue;
            const Word& x = l_.words[v];
            for (std::size_t i = 1; i <= std::min(n, x.size()); ++i)
                if (std::equal(x.end() - i, x.end(), w.begin()))
                    for (auto g : targets_[v]) reach[i][g] = true;
        }
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t g = 0; g < l_.ng; ++g) {
                if (!reach[i][g]) continue;
                if (i == n) return true;
                for (std::size_t v = 0; v < nw; ++v) {
                    if (!elig_[v][g] || targets_[v].empty()) continue;
                    const Word& x = l_.words[v];
                    std::size_t rest = n - i;
                    if (x.size() <= rest) {
                        if (std::equal(x.begin(), x.end(), w.begin() + i))
                            for (auto h : targets_[v]) reach[i + x.size()][h] = true;
                    } else if (std::equal(w.begin() + i, w.end(), x.begin())) {
                        return true;
                    }
                }
            }
        return false;
    }

private:
    Leaf l_;
    std::vector<std::vector<bool>> elig_;
    std::vector<bool> ess_, usable_;
    std::vector<std::vector<std::size_t>> targets_;
};

class ReverseNode final : public Node {
public:
    explicit ReverseNode(std::unique_ptr<Node> base) : base_(std::move(base)) {}
    bool decide(const Word& w) const override { return base_->decide(Word(w.rbegin(), w.rend())); }

private:
    std::unique_ptr<Node> base_;
};

class BlockNode final : public Node {
public:
    BlockNode(std::unique_ptr<Node> base, std::vector<Word> blocks) : base_(std::move(base)), blocks_(std::move(blocks)) {}
    bool decide(const Word& w) const override {
        if (w.empty()) return true;
        for (Sym s : w)
            if (s >= blocks_.size()) return false;
        Word x = blocks_[w[0]];
        for (std::size_t i = 1; i < w.size(); ++i) {
            const Word& p = blocks_[w[i - 1]];
            const Word& q = blocks_[w[i]];
            if (!std::equal(p.begin() + 1, p.end(), q.begin())) return false;
            x.push_back(q.back());
        }
        return base_->decide(x);
    }

private:
    std::unique_ptr<Node> base_;
    std::vector<Word> blocks_;
};

class ExpandNode final : public Node {
public:
    ExpandNode(std::unique_ptr<Node> base, Sym sigma, Sym fresh)
        : base_(std::move(base)), sigma_(sigma), fresh_(fresh) {}
    bool decide(const Word& w) const override {
        if (w.empty()) return true;
        Word x = w;
        if (x.front() == fresh_) x.insert(x.begin(), sigma_);
        if (x.back() == sigma_) x.push_back(fresh_);
        Word contracted;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] == sigma_) {
                if (i + 1 >= x.size() || x[i + 1] != fresh_) return false;
                contracted.push_back(sigma_);
                ++i;
            } else if (x[i] == fresh_) {
                return false;
            } else {
                contracted.push_back(x[i]);
            }
        }
        return base_->decide(contracted);
    }

private:
    std::unique_ptr<Node> base_;
    Sym sigma_, fresh_;
};

std::vector<Word> enumerate(const Node& node, std::size_t nsym, std::size_t n) {
    std::vector<Word> out;
    Word cur;
    auto rec = [&](auto& self) -> void {
        if (cur.size() == n) {
            out.push_back(cur);
            return;
        }
        for (Sym a = 0; a < nsym; ++a) {
            cur.push_back(a);
            if (node.decide(cur)) self(self);
            cur.pop_back();
        }
    };
    rec(rec);
    return out;
}

std::string block_label(const Alphabet& a, const Word& w) {
    std::string s = "[";
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "." : "") + a.name(w[i]);
    return s + "]";
}

struct Built {
    std::unique_ptr<Node> node;
    Alphabet alphabet;
};

Built build(const CodeSpec& s, std::size_t max_len) {
    if (presentable(s)) {
        Alphabet a = spec_alphabet(s);
        return {std::make_unique<CodeNode>(leaf_of(s, a, 2 * max_len + 2)), a};
    }
    switch (s.kind) {
        case CodeSpec::Kind::Reversed: {
            Built b = build(s.base(), max_len);
            return {std::make_unique<ReverseNode>(std::move(b.node)), b.alphabet};
        }
        case CodeSpec::Kind::HigherBlock: {
            Built b = build(s.base(), max_len + s.n);
            auto blocks = enumerate(*b.node, b.alphabet.size(), s.n);
            std::vector<std::string> names;
            for (const auto& w : blocks) names.push_back(block_label(b.alphabet, w));
            return {std::make_unique<BlockNode>(std::move(b.node), blocks), Alphabet(names)};
        }
        case CodeSpec::Kind::Expand: {
            Built b = build(s.base(), max_len + 1);
            if (!b.alphabet.contains(s.sigma)) throw MalformedSpec("expanded symbol " + s.sigma + " not in the alphabet");
            auto names = b.alphabet.names();
            names.push_back(s.sigma_new);
            Sym sigma = b.alphabet.id(s.sigma), fresh = static_cast<Sym>(b.alphabet.size());
            return {std::make_unique<ExpandNode>(std::move(b.node), sigma, fresh), Alphabet(names)};
        }
        default: throw MalformedSpec("union components must be code-presented: " + s.describe());
    }
}

}  // namespace

struct BruteForceOracle::Impl {
    std::unique_ptr<Node> node;
    Alphabet alphabet;
    std::size_t max_len;
};

BruteForceOracle::BruteForceOracle(const CodeSpec& spec, std::size_t max_len) : impl_(std::make_unique<Impl>()) {
    Built b = build(spec, max_len);
    impl_->node = std::move(b.node);
    impl_->alphabet = std::move(b.alphabet);
    impl_->max_len = max_len;
}

BruteForceOracle::~BruteForceOracle() = default;
BruteForceOracle::BruteForceOracle(BruteForceOracle&&) noexcept = default;

const Alphabet& BruteForceOracle::alphabet() const { return impl_->alphabet; }

bool BruteForceOracle::decide(const Word& w) const {
    if (w.size() > impl_->max_len) throw WordTooLong(std::to_string(w.size()) + " > " + std::to_string(impl_->max_len));
    for (Sym s : w)
        if (s >= impl_->alphabet.size()) return false;
    return impl_->node->decide(w);
}

std::vector<Word> BruteForceOracle::language(std::size_t n) const {
    if (n > impl_->max_len) throw WordTooLong(std::to_string(n) + " > " + std::to_string(impl_->max_len));
    return enumerate(*impl_->node, impl_->alphabet.size(), n);
}

BruteForceOracle brute_force_oracle(const CodeSpec& spec, std::size_t max_len) { return BruteForceOracle(spec, max_len); }

}  // namespace occ
