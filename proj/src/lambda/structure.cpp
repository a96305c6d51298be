#include <algorithm>
#include <set>
#include <sstream>

#include "occ/errors.hpp"
#include "occ/lambda.hpp"

namespace occ {

std::string SymbolicMatrixSystem::entry(std::size_t l, std::size_t i, std::size_t j, const Alphabet& a) const {
    const auto& e = M.at(l).at(i - 1).at(j - 1);
    if (e.empty()) return "0";
    std::string out;
    for (auto [s, k] : e) {
        if (!out.empty()) out += " + ";
        if (k > 1) out += std::to_string(k) + "·";
        out += a.name(s);
    }
    return out;
}

MatrixSystems matrix_systems(const LambdaGraphSystem& g) {
    MatrixSystems out;
    auto& sym = out.symbolic;
    auto& nn = out.nonneg;
    nn.first_level = 0;
    for (std::size_t l = 0; l <= g.top(); ++l) nn.m.push_back(g.m(l));
    for (std::size_t l = 0; l < g.top(); ++l) {
        std::size_t r = g.m(l), c = g.m(l + 1);
        std::vector<std::vector<std::map<Sym, int>>> S(r, std::vector<std::map<Sym, int>>(c));
        IntMatrix M(r, c), I(r, c);
        for (const auto& e : g.levels[l].edges) {
            ++S[e.source - 1][e.target - 1][e.label];
            M(e.source - 1, e.target - 1) += 1;
        }
        const auto& iota = g.levels[l + 1].iota;
        for (std::size_t j = 0; j < iota.size(); ++j) I(iota[j] - 1, j) = 1;
        sym.M.push_back(std::move(S));
        sym.I.push_back(I);
        nn.M.push_back(std::move(M));
        nn.I.push_back(std::move(I));
    }
    return out;
}

StructureReport verify_structure(const LambdaGraphSystem& g) {
    StructureReport rep;
    auto fail = [](const std::string& what, std::size_t l, const std::string& msg) {
        throw StructureViolation(what + ", level " + std::to_string(l) + ": " + msg);
    };
    if (g.levels.empty() || g.m(0) != 1) fail("vertices", 0, "level 0 must hold exactly the class of the empty word");
    auto& trie = *g.trie;
    for (std::size_t l = 0; l <= g.top(); ++l) {
        const auto& lv = g.levels[l];
        std::set<std::uint32_t> nodes;
        for (std::size_t i = 0; i < lv.vertices.size(); ++i) {
            const auto& v = lv.vertices[i];
            if (v.index != i + 1 || v.level != l) fail("vertices", l, "index or level field out of order");
            if (v.node == FollowerTrie::kNone || trie.depth(v.node) != l) fail("vertices", l, "empty or misdepth extender");
            if (!nodes.insert(v.node).second) fail("vertices", l, "extenders of two vertices coincide");
            ++rep.checks;
        }
        if (l > 0) {
            if (lv.iota.size() != lv.vertices.size()) fail("iota", l, "not defined on every vertex");
            std::vector<bool> hit(g.m(l - 1), false);
            for (std::size_t j = 0; j < lv.iota.size(); ++j) {
                std::size_t i = lv.iota[j];
                if (i < 1 || i > g.m(l - 1)) fail("iota", l, "vertex " + std::to_string(j + 1) + " has no image");
                if (g.levels[l - 1].vertices[i - 1].node != trie.truncate(lv.vertices[j].node))
                    fail("iota", l, "vertex " + std::to_string(j + 1) + " is not sent to its truncation");
                hit[i - 1] = true;
                ++rep.checks;
            }
            if (std::find(hit.begin(), hit.end(), false) != hit.end()) fail("iota", l, "not surjective");
        }
        if (l < g.top()) {
            std::set<std::tuple<std::size_t, Sym, std::size_t>> want, have;
            for (const auto& w : g.levels[l + 1].vertices)
                for (const auto& v : lv.vertices)
                    for (Sym a = 0; a < g.alphabet.size(); ++a)
                        if (trie.child(w.node, a) == v.node) want.emplace(v.index, a, w.index);
            for (const auto& e : lv.edges) have.emplace(e.source, e.label, e.target);
            if (have.size() != lv.edges.size()) fail("edges", l, "repeated edge");
            for (const auto& e : want)
                if (!have.count(e))
                    fail("edges", l, "missing edge " + std::to_string(std::get<0>(e)) + " -" + g.alphabet.name(std::get<1>(e)) +
                                         "-> " + std::to_string(std::get<2>(e)));
            for (const auto& e : have)
                if (!want.count(e))
                    fail("edges", l, "edge " + std::to_string(std::get<0>(e)) + " -" + g.alphabet.name(std::get<1>(e)) +
                                         "-> " + std::to_string(std::get<2>(e)) + " without extender containment");
            std::vector<bool> out(g.m(l), false), in(g.m(l + 1), false);
            for (const auto& e : lv.edges) out[e.source - 1] = in[e.target - 1] = true;
            if (std::find(out.begin(), out.end(), false) != out.end()) fail("edges", l, "vertex without outgoing edge");
            if (std::find(in.begin(), in.end(), false) != in.end()) fail("edges", l + 1, "vertex without incoming edge");
            rep.checks += want.size();
        }
    }
    auto ms = matrix_systems(g);
    for (std::size_t l = 0; l + 2 <= g.top(); ++l) {
        const auto& nn = ms.nonneg;
        if (!(nn.Il(l) * nn.Ml(l + 1) == nn.Ml(l) * nn.Il(l + 1)))
            fail("compatibility", l, "I_{l,l+1} M_{l+1,l+2} differs from M_{l,l+1} I_{l+1,l+2}");
        ++rep.checks;
    }
    rep.levels_checked = g.top();
    return rep;
}

namespace {

using Marks = std::vector<std::vector<bool>>;

// Smallest set containing w that is closed under iota and under taking sources of incoming edges.
Marks down_closure(const LambdaGraphSystem& g, std::size_t level, std::size_t index) {
    Marks c(g.top() + 1);
    for (std::size_t l = 0; l <= g.top(); ++l) c[l].assign(g.m(l), false);
    c[level][index - 1] = true;
    for (std::size_t l = level; l > 0; --l) {
        for (std::size_t j = 0; j < g.m(l); ++j)
            if (c[l][j]) c[l - 1][g.levels[l].iota[j] - 1] = true;
        for (const auto& e : g.levels[l - 1].edges)
            if (c[l][e.target - 1]) c[l - 1][e.source - 1] = true;
    }
    return c;
}

}  // namespace

bool is_hereditary(const LambdaGraphSystem& g, const std::vector<std::vector<std::size_t>>& subset) {
    if (subset.size() != g.top() + 1) return false;
    Marks in(g.top() + 1);
    bool nonempty = false;
    for (std::size_t l = 0; l <= g.top(); ++l) {
        in[l].assign(g.m(l), false);
        for (auto i : subset[l]) {
            if (i < 1 || i > g.m(l)) return false;
            in[l][i - 1] = true;
            nonempty = true;
        }
        if (l >= 1 && subset[l].size() >= g.m(l)) return false;
    }
    if (!nonempty) return false;
    for (std::size_t l = 1; l <= g.top(); ++l)
        for (std::size_t j = 0; j < g.m(l); ++j)
            if (in[l - 1][g.levels[l].iota[j] - 1] && !in[l][j]) return false;
    for (std::size_t l = 0; l < g.top(); ++l)
        for (const auto& e : g.levels[l].edges)
            if (in[l][e.source - 1] && !in[l + 1][e.target - 1]) return false;
    return true;
}

HereditaryVerdict hereditary_subsets(const LambdaGraphSystem& g, std::size_t window) {
    HereditaryVerdict v;
    const std::size_t L = g.top();
    v.level_checked = L;
    v.strategy = "complement of the iota/edge-source closure of one top-level vertex, accepted when the level-1 "
                 "vertices it keeps are the same for the closure of the vertex " + std::to_string(window) +
                 " iota steps below";
    if (L < 3 || L <= window) {
        v.strategy += "; not searched below level " + std::to_string(std::max<std::size_t>(3, window + 1));
        return v;
    }
    auto kept_at_1 = [&](std::size_t level, std::size_t index) {
        auto c = down_closure(g, level, index);
        std::vector<std::size_t> kept;
        for (std::size_t i = 0; i < g.m(1); ++i)
            if (!c[1][i]) kept.push_back(i + 1);
        return std::make_pair(kept, c);
    };
    std::size_t best = 0;
    for (std::size_t w = 1; w <= g.m(L); ++w) {
        auto [kept, c] = kept_at_1(L, w);
        if (kept.size() <= best) continue;
        std::size_t u = w;
        for (std::size_t l = L; l > L - window; --l) u = g.levels[l].iota[u - 1];
        if (kept_at_1(L - window, u).first != kept) continue;
        best = kept.size();
        v.subset.assign(L + 1, {});
        for (std::size_t l = 0; l <= L; ++l)
            for (std::size_t i = 0; i < g.m(l); ++i)
                if (!c[l][i]) v.subset[l].push_back(i + 1);
    }
    v.found = best > 0;
    v.proper = v.found;
    if (v.found && !is_hereditary(g, v.subset))
        throw StructureViolation("hereditary search produced a set that fails the closure rules");
    return v;
}

std::string to_string(Simplicity s) {
    switch (s) {
        case Simplicity::Simple: return "simple";
        case Simplicity::NotSimple: return "not_simple";
        default: return "unknown";
    }
}

SimplicityVerdict simplicity_verdict(const LambdaGraphSystem& g, const ResetReport& reset, std::size_t window) {
    SimplicityVerdict s;
    s.hereditary = hereditary_subsets(g, window);
    if (s.hereditary.found) {
        s.verdict = Simplicity::NotSimple;
        s.reason = "proper hereditary subset found";
    } else if (reset.has_reset.is_true()) {
        s.verdict = Simplicity::Simple;
        s.reason = "no proper hereditary subset up to level " + std::to_string(g.top()) + " and reset certified for the " +
                   (g.direction == Direction::Future ? "shift" : "reversed shift");
    } else {
        s.verdict = Simplicity::Unknown;
        s.reason = std::string("no proper hereditary subset found, reset not certified for the ") +
                   (g.direction == Direction::Future ? "shift" : "reversed shift");
    }
    return s;
}

std::string to_dot(const LambdaGraphSystem& g) {
    std::ostringstream os;
    os << "digraph lambda {\n  rankdir=TB;\n";
    for (std::size_t l = 0; l <= g.top(); ++l) {
        os << "  { rank=same;";
        for (const auto& v : g.levels[l].vertices) os << " \"v" << l << "_" << v.index << "\";";
        os << " }\n";
        for (const auto& v : g.levels[l].vertices)
            os << "  \"v" << l << "_" << v.index << "\" [label=\"v" << v.index << "^" << l << "\\n"
               << g.alphabet.str(v.representative) << "\"];\n";
    }
    for (std::size_t l = 0; l <= g.top(); ++l) {
        for (const auto& e : g.levels[l].edges)
            os << "  \"v" << l << "_" << e.source << "\" -> \"v" << l + 1 << "_" << e.target << "\" [label=\""
               << g.alphabet.name(e.label) << "\"];\n";
        for (std::size_t j = 0; j < g.levels[l].iota.size(); ++j)
            os << "  \"v" << l << "_" << j + 1 << "\" -> \"v" << l - 1 << "_" << g.levels[l].iota[j]
               << "\" [style=dashed];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace occ
