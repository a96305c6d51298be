#include <algorithm>
#include <functional>

#include "occ/lambda.hpp"

namespace occ {

FollowerTrie::FollowerTrie() {
    kids_.emplace_back();
    depth_.push_back(0);
}

std::uint32_t FollowerTrie::intern(std::vector<std::pair<Sym, std::uint32_t>> children, std::size_t depth) {
    if (depth == 0) return kLeaf;
    if (children.empty()) return kNone;
    auto it = index_.find(children);
    if (it != index_.end()) return it->second;
    auto id = static_cast<std::uint32_t>(kids_.size());
    index_.emplace(children, id);
    kids_.push_back(std::move(children));
    depth_.push_back(depth);
    return id;
}

std::uint32_t FollowerTrie::follow(const Stepper& st, const CfgSet& s, std::size_t depth) {
    if (s.empty()) return kNone;
    if (depth == 0) return kLeaf;
    auto key = std::make_pair(s, depth);
    if (auto it = follow_memo_.find(key); it != follow_memo_.end()) return it->second;
    std::vector<std::pair<Sym, std::uint32_t>> kids;
    for (Sym a = 0; a < st.alphabet_size(); ++a) {
        CfgSet n = st.step(s, a);
        if (n.empty()) continue;
        std::uint32_t c = follow(st, n, depth - 1);
        if (c != kNone) kids.emplace_back(a, c);
    }
    std::uint32_t id = intern(std::move(kids), depth);
    follow_memo_.emplace(std::move(key), id);
    return id;
}

std::uint32_t FollowerTrie::truncate(std::uint32_t node) {
    std::size_t d = depth(node);
    if (d == 0) return kNone;
    if (d == 1) return kLeaf;
    if (auto it = trunc_memo_.find(node); it != trunc_memo_.end()) return it->second;
    std::vector<std::pair<Sym, std::uint32_t>> kids;
    for (auto [a, c] : kids_[node]) kids.emplace_back(a, truncate(c));
    std::uint32_t id = intern(std::move(kids), d - 1);
    trunc_memo_.emplace(node, id);
    return id;
}

std::uint32_t FollowerTrie::child(std::uint32_t node, Sym sym) const {
    for (auto [a, c] : kids_.at(node))
        if (a == sym) return c;
    return kNone;
}

std::vector<Word> FollowerTrie::words(std::uint32_t node) const {
    std::vector<Word> out;
    Word cur;
    std::function<void(std::uint32_t)> rec = [&](std::uint32_t n) {
        if (depth_[n] == 0) {
            out.push_back(cur);
            return;
        }
        for (auto [a, c] : kids_[n]) {
            cur.push_back(a);
            rec(c);
            cur.pop_back();
        }
    };
    rec(node);
    // Children are stored by increasing symbol and all words share a length, so DFS order is length-lex.
    return out;
}

}  // namespace occ
