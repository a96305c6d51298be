#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "occ/errors.hpp"
#include "occ/lambda.hpp"

namespace occ {

namespace {

// N when the built object is the future system of reset(N) in its own orientation.
std::optional<int> effective_reset(const CodeSpec& spec, Direction d) {
    if (d == Direction::Future && spec.kind == CodeSpec::Kind::Reset) return spec.N;
    if (d == Direction::Past && spec.kind == CodeSpec::Kind::Reversed && spec.base().kind == CodeSpec::Kind::Reset)
        return spec.base().N;
    return std::nullopt;
}

// Pasts whose classes are v_1^l, ..., v_{2l+2}^l of the reset family, read in reset orientation.
std::vector<Word> reset_class_pasts(const Alphabet& a, std::size_t l) {
    Sym am = a.id("α_-"), ap = a.id("α_+"), a1 = a.id("a_1");
    std::vector<Word> out;
    for (std::size_t i = 1; i <= l + 1; ++i) {
        Word w{a1};
        w.insert(w.end(), l + 2 - i, am);
        w.push_back(ap);
        out.push_back(w);
    }
    out.push_back({a1});
    for (std::size_t j = 1; j <= l; ++j) {
        Word w{a1};
        w.insert(w.end(), j, am);
        out.push_back(w);
    }
    return out;
}

}  // namespace

std::vector<Word> LambdaGraphSystem::extender(std::size_t level, std::size_t index) const {
    auto ws = trie->words(levels.at(level).vertices.at(index - 1).node);
    if (direction == Direction::Past) {
        for (auto& w : ws) w = reversed(w);
        std::sort(ws.begin(), ws.end(), length_lex_less);
    }
    return ws;
}

LambdaGraphSystem build(const SubshiftOracle& oracle, Direction direction, std::size_t L, const Config& cfg) {
    if (L < 1) throw UsageError("lambda-graph level must be at least 1");
    const std::size_t W = L + cfg.window;
    const std::size_t p_max = 4 * W + 16;
    auto st = oracle.stepper(p_max + L + 1, direction == Direction::Past);
    auto trie = std::make_shared<FollowerTrie>();

    // A past a is probed through the pair (S(a), S(a with its first W symbols dropped)).
    // Follower sets shrink as the past grows to the left, so equal level-L sets on both
    // ends of the pair mean the class no longer depends on anything beyond W symbols back.
    using Pair = std::pair<CfgSet, CfgSet>;
    std::set<Pair> layer{{st->init(), st->init()}};
    std::set<std::uint32_t> top, prev;
    std::size_t same = 0, probe = 0;
    for (std::size_t p = 1; p <= p_max && !probe; ++p) {
        std::set<Pair> next;
        for (const auto& [s0, sw] : layer)
            for (Sym g = 0; g < st->alphabet_size(); ++g) {
                CfgSet n0 = st->step(s0, g);
                if (n0.empty()) continue;
                CfgSet nw = p - 1 >= W ? st->step(sw, g) : st->init();
                next.emplace(std::move(n0), std::move(nw));
            }
        layer = std::move(next);
        if (p < W + 1) continue;
        std::set<std::uint32_t> cur;
        for (const auto& [s0, sw] : layer) {
            auto a = trie->follow(*st, s0, L);
            if (a != FollowerTrie::kNone && a == trie->follow(*st, sw, L)) cur.insert(a);
        }
        same = (!cur.empty() && cur == prev) ? same + 1 : 0;
        prev = cur;
        if (same >= cfg.window) {
            probe = p;
            top = cur;
        }
    }
    if (!probe)
        throw NotStabilized("level-" + std::to_string(L) + " classes still changing at past length " +
                            std::to_string(p_max) + " (" + std::to_string(prev.size()) + " classes at the last probe)");

    std::vector<std::vector<std::uint32_t>> nodes(L + 1);
    nodes[L].assign(top.begin(), top.end());
    for (std::size_t l = L; l-- > 0;) {
        std::set<std::uint32_t> s;
        for (auto n : nodes[l + 1]) s.insert(trie->truncate(n));
        nodes[l].assign(s.begin(), s.end());
    }

    // Shortest representatives: breadth-first over pasts, deduplicated by configuration set.
    std::vector<std::map<std::uint32_t, Word>> rep(L + 1);
    {
        std::size_t missing = 0;
        for (const auto& lv : nodes) missing += lv.size();
        std::set<CfgSet> seen{st->init()};
        std::vector<std::pair<Word, CfgSet>> frontier{{Word{}, st->init()}};
        for (std::size_t len = 0; missing && !frontier.empty() && len <= probe; ++len) {
            std::vector<std::pair<Word, CfgSet>> nextf;
            for (const auto& [w, s] : frontier) {
                for (std::size_t l = 0; l <= L; ++l) {
                    auto n = trie->follow(*st, s, l);
                    if (rep[l].count(n) || !std::binary_search(nodes[l].begin(), nodes[l].end(), n)) continue;
                    rep[l][n] = w;
                    --missing;
                }
                for (Sym g = 0; g < st->alphabet_size(); ++g) {
                    CfgSet n = st->step(s, g);
                    if (n.empty() || !seen.insert(n).second) continue;
                    Word v = w;
                    v.push_back(g);
                    nextf.emplace_back(std::move(v), std::move(n));
                }
            }
            frontier = std::move(nextf);
        }
        if (missing) throw NotStabilized("no representative past found for " + std::to_string(missing) + " classes");
    }
    auto shown = [&](const Word& w) { return direction == Direction::Past ? reversed(w) : w; };

    LambdaGraphSystem g;
    g.direction = direction;
    g.spec = oracle.spec();
    g.alphabet = oracle.alphabet();
    g.probe_length = probe;
    g.trie = trie;
    g.levels.resize(L + 1);

    auto reset_n = effective_reset(oracle.spec(), direction);
    g.ordering = reset_n ? "F-classes" : "minimal-representative";
    for (std::size_t l = 0; l <= L; ++l) {
        std::vector<std::uint32_t> order;
        if (reset_n && l >= 1) {
            for (const auto& w : reset_class_pasts(oracle.alphabet(), l)) order.push_back(trie->follow(*st, st->run(w), l));
            auto sorted = order;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || sorted != nodes[l])
                throw StructureViolation("F-class order does not match the computed classes at level " +
                                         std::to_string(l) + " (" + std::to_string(nodes[l].size()) + " classes)");
        } else {
            order = nodes[l];
            // Sorted in reading order, so a past system and the future system of the reverse agree.
            std::sort(order.begin(), order.end(),
                      [&](auto x, auto y) { return length_lex_less(rep[l][x], rep[l][y]); });
        }
        auto& vs = g.levels[l].vertices;
        for (std::size_t i = 0; i < order.size(); ++i) vs.push_back({l, i + 1, order[i], shown(rep[l][order[i]])});
    }

    for (std::size_t l = 0; l <= L; ++l) {
        std::map<std::uint32_t, std::size_t> here;
        for (const auto& v : g.levels[l].vertices) here[v.node] = v.index;
        if (l < L) {
            auto& edges = g.levels[l].edges;
            for (const auto& w : g.levels[l + 1].vertices)
                for (auto [a, c] : trie->children(w.node)) {
                    auto it = here.find(c);
                    if (it == here.end())
                        throw NotStabilized("edge target missing at level " + std::to_string(l) +
                                            "; raise the probe window");
                    edges.push_back({it->second, a, w.index});
                }
            std::sort(edges.begin(), edges.end(), [](const GraphEdge& x, const GraphEdge& y) {
                return std::tie(x.source, x.target, x.label) < std::tie(y.source, y.target, y.label);
            });
        }
        if (l > 0) {
            std::map<std::uint32_t, std::size_t> below;
            for (const auto& v : g.levels[l - 1].vertices) below[v.node] = v.index;
            for (const auto& v : g.levels[l].vertices) g.levels[l].iota.push_back(below.at(trie->truncate(v.node)));
        }
    }
    return g;
}

}  // namespace occ
