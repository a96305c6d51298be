#pragma once
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "occ/config.hpp"
#include "occ/ktheory.hpp"
#include "occ/symbolic.hpp"
#include "occ/sync.hpp"

namespace occ {

// Hash-consed trie of finite word sets of a fixed depth; node ids are stable for the trie's life.
class FollowerTrie {
public:
    static constexpr std::uint32_t kNone = ~0u;
    static constexpr std::uint32_t kLeaf = 0;  // {ε}

    FollowerTrie();

    std::uint32_t intern(std::vector<std::pair<Sym, std::uint32_t>> children, std::size_t depth);
    // Set of words of length depth readable from the configuration set; kNone when empty.
    std::uint32_t follow(const Stepper& st, const CfgSet& s, std::size_t depth);
    // Drops the last symbol of every word.
    std::uint32_t truncate(std::uint32_t node);
    // {w : sym w in node}; kNone when no word starts with sym.
    std::uint32_t child(std::uint32_t node, Sym sym) const;

    std::size_t depth(std::uint32_t node) const { return depth_.at(node); }
    const std::vector<std::pair<Sym, std::uint32_t>>& children(std::uint32_t node) const { return kids_.at(node); }
    std::vector<Word> words(std::uint32_t node) const;  // length-lex order
    std::size_t size() const { return kids_.size(); }

private:
    std::vector<std::vector<std::pair<Sym, std::uint32_t>>> kids_;
    std::vector<std::size_t> depth_;
    std::map<std::vector<std::pair<Sym, std::uint32_t>>, std::uint32_t> index_;
    std::map<std::pair<CfgSet, std::size_t>, std::uint32_t> follow_memo_;
    std::map<std::uint32_t, std::uint32_t> trunc_memo_;
};

struct VertexClass {
    std::size_t level = 0;
    std::size_t index = 0;      // 1-based within the level
    std::uint32_t node = 0;     // extender set in the trie, in the builder's reading order
    Word representative;        // in the original orientation of the shift
};

struct GraphEdge {
    std::size_t source = 0;  // 1-based at level l
    Sym label = 0;
    std::size_t target = 0;  // 1-based at level l+1
    friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

struct GraphLevel {
    std::vector<VertexClass> vertices;
    std::vector<GraphEdge> edges;   // into the next level
    std::vector<std::size_t> iota;  // for each vertex, 1-based index at the previous level (empty at level 0)
};

struct LambdaGraphSystem {
    Direction direction = Direction::Future;
    CodeSpec spec;
    Alphabet alphabet;
    std::vector<GraphLevel> levels;  // 0..L
    std::string ordering;            // "F-classes" or "minimal-representative"
    std::size_t probe_length = 0;    // past length at which the classes stabilized
    std::shared_ptr<FollowerTrie> trie;

    std::size_t top() const { return levels.size() - 1; }
    std::size_t m(std::size_t l) const { return levels.at(l).vertices.size(); }
    // Extender set of v_index^level in the original orientation, length-lex order.
    std::vector<Word> extender(std::size_t level, std::size_t index) const;
};

// Builds levels 0..L. Past systems are built as the future system of the reversed shift.
LambdaGraphSystem build(const SubshiftOracle& oracle, Direction direction, std::size_t L, const Config& cfg);

// Per level l: entries (i,j) of the symbolic matrix as label -> multiplicity.
struct SymbolicMatrixSystem {
    std::vector<std::vector<std::vector<std::map<Sym, int>>>> M;
    std::vector<IntMatrix> I;
    std::string entry(std::size_t l, std::size_t i, std::size_t j, const Alphabet& a) const;  // 1-based, "0" if empty
};

struct MatrixSystems {
    SymbolicMatrixSystem symbolic;
    NonnegMatrixSystem nonneg;
};

MatrixSystems matrix_systems(const LambdaGraphSystem& g);

struct StructureReport {
    std::size_t levels_checked = 0;
    std::size_t checks = 0;
};

// Throws StructureViolation naming the failed axiom and level.
StructureReport verify_structure(const LambdaGraphSystem& g);

struct HereditaryVerdict {
    bool found = false;
    std::vector<std::vector<std::size_t>> subset;  // per level, 1-based indices
    bool proper = false;
    std::size_t level_checked = 0;
    std::string strategy;
};

HereditaryVerdict hereditary_subsets(const LambdaGraphSystem& g, std::size_t window = 3);
// Checks both closure rules and properness on levels 1..top directly.
bool is_hereditary(const LambdaGraphSystem& g, const std::vector<std::vector<std::size_t>>& subset);

enum class Simplicity { Simple, NotSimple, Unknown };
std::string to_string(Simplicity s);

struct SimplicityVerdict {
    Simplicity verdict = Simplicity::Unknown;
    std::string reason;
    HereditaryVerdict hereditary;
};

// `reset` belongs to the shift whose future system g is: the shift itself for a future graph,
// its reversal for a past graph.
SimplicityVerdict simplicity_verdict(const LambdaGraphSystem& g, const ResetReport& reset, std::size_t window = 3);

std::string to_dot(const LambdaGraphSystem& g);

}  // namespace occ
