#pragma once
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace occ {

using Sym = std::uint16_t;
using Word = std::vector<Sym>;

// Symbols are identified by dense ids; display names are unique.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(Sym s) const { return names_.at(s); }
    const std::vector<std::string>& names() const { return names_; }
    bool contains(const std::string& name) const;
    Sym id(const std::string& name) const;  // accepts ASCII aliases such as "alpha_-"

    std::string str(const Word& w) const;  // space separated; "ε" for the empty word
    Word parse(const std::string& text) const;

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    std::vector<std::string> names_;
};

// Explicit Markov code over named symbols; s and t map each word to subsets of gamma.
struct MarkovCode {
    std::vector<std::string> symbols;
    std::vector<std::vector<std::string>> words;
    std::vector<std::string> gamma;
    std::vector<std::vector<std::size_t>> s, t;
    std::vector<std::vector<int>> A;

    // Single-index code with every transition allowed.
    static MarkovCode plain(std::vector<std::string> symbols, std::vector<std::vector<std::string>> words);
    void validate() const;  // MalformedSpec on violation
    bool allows(const std::vector<std::size_t>& from, const std::vector<std::size_t>& to) const;
    friend bool operator==(const MarkovCode&, const MarkovCode&) = default;
};

struct CodeSpec {
    enum class Kind { Reset, Counter, Union, Reversed, HigherBlock, Expand, Markov };

    Kind kind = Kind::Reset;
    int N = 1;                     // Reset, Counter
    std::vector<CodeSpec> parts;   // Union components, or the single base
    int n = 2;                     // HigherBlock
    std::string sigma, sigma_new;  // Expand: sigma -> sigma sigma_new
    MarkovCode markov;

    static CodeSpec reset(int N);
    static CodeSpec counter(int N);
    static CodeSpec unite(std::vector<CodeSpec> parts);
    static CodeSpec reversed(CodeSpec base);
    static CodeSpec higher_block(CodeSpec base, int n);
    static CodeSpec expand(CodeSpec base, std::string sigma, std::string sigma_new);
    static CodeSpec explicit_markov(MarkovCode code);
    static CodeSpec full_shift(const std::vector<std::string>& symbols);

    const CodeSpec& base() const { return parts.at(0); }
    std::string describe() const;  // e.g. "reversed(reset(2))"
    friend bool operator==(const CodeSpec&, const CodeSpec&);
};

// Word-level transforms of a spec.
struct Transform {
    enum class Kind { Reverse, HigherBlock, Expand, Union };
    Kind kind = Kind::Reverse;
    int n = 2;
    std::string sigma, sigma_new;
    CodeSpec other;

    static Transform reverse() { return {}; }
    static Transform higher_block(int n) {
        Transform t;
        t.kind = Kind::HigherBlock;
        t.n = n;
        return t;
    }
    static Transform expand(std::string sigma, std::string sigma_new = "") {
        Transform t;
        t.kind = Kind::Expand;
        t.sigma = std::move(sigma);
        t.sigma_new = std::move(sigma_new);
        return t;
    }
    static Transform union_with(CodeSpec other) {
        Transform t;
        t.kind = Kind::Union;
        t.other = std::move(other);
        return t;
    }
};
CodeSpec transform(const CodeSpec& spec, const Transform& t);

// Name of the fresh symbol sigma' introduced by an expansion.
std::string primed(const std::string& sigma);

// ---- configuration steppers -------------------------------------------------------------

using Cfg = std::uint32_t;
using CfgSet = std::vector<Cfg>;  // sorted, unique

// Nondeterministic machine over configurations, exact for words up to budget().
class Stepper {
public:
    virtual ~Stepper() = default;
    virtual std::size_t alphabet_size() const = 0;
    virtual const CfgSet& init() const = 0;
    virtual std::size_t budget() const = 0;
    // Appends the successors of one configuration (unsorted, possibly repeated).
    virtual void successors(Cfg c, Sym a, CfgSet& out) const = 0;

    CfgSet step(const CfgSet& s, Sym a) const;

    CfgSet run(const CfgSet& s, const Word& w) const;
    CfgSet run(const Word& w) const { return run(init(), w); }
};

class Engine;

// Membership oracle for the language of the subshift presented by a spec.
class SubshiftOracle {
public:
    explicit SubshiftOracle(const CodeSpec& spec);

    const Alphabet& alphabet() const { return alphabet_; }
    const CodeSpec& spec() const { return spec_; }
    bool decide(const Word& w) const;

    // Stepper exact for words up to `budget`; reversed = stepper of the reversed shift.
    std::shared_ptr<const Stepper> stepper(std::size_t budget, bool reversed = false) const;
    SubshiftOracle reverse() const;

private:
    CodeSpec spec_;
    Alphabet alphabet_;
    std::shared_ptr<Engine> engine_;
};

enum class Direction { Future, Past };
std::string to_string(Direction d);

// Accepted words of length n in length-lex order.
std::vector<Word> language(const SubshiftOracle& o, std::size_t n);
// future: {b in L_l : ab accepted}; past: {b in L_l : ba accepted}.
std::vector<Word> extender_set(const SubshiftOracle& o, const Word& a, std::size_t l, Direction d);

Alphabet spec_alphabet(const CodeSpec& spec);

// Length-lex comparison by symbol id.
bool length_lex_less(const Word& a, const Word& b);
Word reversed(Word w);

// ---- independent reference oracle ---------------------------------------------------------

// Decides words up to max_len by explicit concatenation of truncated code word lists.
class BruteForceOracle {
public:
    BruteForceOracle(const CodeSpec& spec, std::size_t max_len);
    ~BruteForceOracle();
    BruteForceOracle(BruteForceOracle&&) noexcept;

    const Alphabet& alphabet() const;
    bool decide(const Word& w) const;  // WordTooLong beyond max_len
    std::vector<Word> language(std::size_t n) const;

    struct Impl;

private:
    std::unique_ptr<Impl> impl_;
};

BruteForceOracle brute_force_oracle(const CodeSpec& spec, std::size_t max_len);

}  // namespace occ
