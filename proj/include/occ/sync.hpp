#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "occ/config.hpp"
#include "occ/symbolic.hpp"

namespace occ {

enum class Verdict { CertifiedTrue, CertifiedFalse, Unknown };
std::string to_string(Verdict v);

struct Certainty {
    Verdict verdict = Verdict::Unknown;
    std::vector<Word> witness;  // counterexample for CertifiedFalse, supporting words otherwise
    std::size_t horizon = 0;

    static Certainty yes(std::size_t h, std::vector<Word> w = {}) { return {Verdict::CertifiedTrue, std::move(w), h}; }
    static Certainty no(std::size_t h, std::vector<Word> w) { return {Verdict::CertifiedFalse, std::move(w), h}; }
    static Certainty unknown(std::size_t h, std::vector<Word> w = {}) { return {Verdict::Unknown, std::move(w), h}; }
    bool is_true() const { return verdict == Verdict::CertifiedTrue; }
    bool is_false() const { return verdict == Verdict::CertifiedFalse; }
};

// Weakest of two certainties: unknown beats false beats true.
Certainty weakest(const Certainty& a, const Certainty& b);

// False carries (u, w) with uv, vw admissible and uvw not.
Certainty certify_synchronizing(const SubshiftOracle& o, const Word& v, const Config& cfg);

struct SyncSymbols {
    std::vector<Sym> symbols;
    Certainty certainty;
};
SyncSymbols synchronizing_symbols(const SubshiftOracle& o, const Config& cfg);

struct CharacteristicPairReport {
    Sym alpha_minus = 0, alpha_plus = 0;
    Word c_X;
    Certainty condition_a, condition_b, condition_c_minus, condition_c_plus;
    std::size_t K_bound = 0, Q_bound = 0;
    std::vector<Sym> synchronizing;
};
// NotFound with per-pair diagnostics when no unique pair passes.
CharacteristicPairReport characteristic_pair(const SubshiftOracle& o, const Config& cfg);

using WordSets = std::map<Sym, std::vector<Word>>;

struct BoundarySets {
    std::vector<Sym> sigma_minus, sigma_plus, sigma_minus_plus, sigma_plus_minus;
    WordSets d_minus;       // D(sigma, alpha_-): sigma d alpha_-^k admissible
    WordSets d_minus_plus;  // D(sigma, alpha_+): sigma d alpha_+^k admissible
    WordSets d_plus;        // D(alpha_+, sigma): alpha_+^k d sigma admissible
    WordSets d_plus_minus;  // D(alpha_-, sigma): alpha_-^k d sigma admissible
    std::vector<Word> omega_plus, omega_minus, omega_plus_reset, omega_plus_counter;
    std::map<Word, std::size_t> reset_defect;  // smallest D for each member of omega_plus_reset
    Certainty stable;  // D-sets agree between horizon - window and horizon
};
BoundarySets boundary_sets(const SubshiftOracle& o, const CharacteristicPairReport& pair, const Config& cfg);

struct ResetReport {
    Certainty has_reset, reset_condition;
    BoundarySets boundary;
};
ResetReport reset_analysis(const SubshiftOracle& o, const CharacteristicPairReport& pair, const Config& cfg);

// Members of C(X) up to cfg.cutoff; gamma holds the subsets {sigma} and t(c), named like "{a_1,a_2}".
MarkovCode markov_code_truncation(const SubshiftOracle& o, const Config& cfg);

}  // namespace occ
