// One pass/fail line per acceptance criterion; exit status 1 when any criterion fails.
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "occ/cli.hpp"
#include "occ/errors.hpp"
#include "occ/reports.hpp"

using namespace occ;
using nlohmann::json;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;  // shown in the summary line
    std::vector<std::string> errors;

    void expect(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            errors.push_back(what);
        }
    }
};

json run_cli(const std::vector<std::string>& args, int& code) {
    std::ostringstream out, err;
    code = cli::run(args, out, err);
    return out.str().empty() ? json(nullptr) : json::parse(out.str());
}

double seconds_since(std::chrono::steady_clock::time_point t) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

FgAbelianGroup grp(std::vector<Int> orders) { return FgAbelianGroup::from_cyclic(orders); }

json group_json(const FgAbelianGroup& g) { return to_json(g); }

// kgroups through the command line at level 12; checks groups, detection level and time.
void kgroups_criterion(Outcome& o, const std::string& family, int N, const FgAbelianGroup& k0, const FgAbelianGroup& k1) {
    auto t = std::chrono::steady_clock::now();
    int code = 0;
    auto j = run_cli({"kgroups", "--family", family, "--N", std::to_string(N), "--level", "12"}, code);
    double s = seconds_since(t);
    std::string tag = family + "(" + std::to_string(N) + ")";
    o.expect(code == 0, tag + ": exit " + std::to_string(code));
    if (code != 0) return;
    o.expect(j["K0"] == group_json(k0), tag + ": K0 = " + j["K0"].dump());
    o.expect(j["K1"] == group_json(k1), tag + ": K1 = " + j["K1"].dump());
    // Deepest graph level the certificate reads: the last of `window` agreeing image maps
    // compares G_{t+lag+1}, and G_t comes from the matrices between levels t and t+1.
    std::size_t detect = 0;
    for (const char* k : {"K0", "K1"})
        detect = std::max(detect, j["stable_from"][k].get<std::size_t>() + j["window"].get<std::size_t>() +
                                      j["lag"][k].get<std::size_t>() + 1);
    o.expect(detect <= 12, tag + ": stabilization detected only at level " + std::to_string(detect));
    o.expect(s <= 60.0, tag + ": took " + std::to_string(s) + " s");
    auto shown = [](const json& g) {
        std::vector<Int> orders;
        for (const auto& d : g["torsion"]) orders.push_back(d.get<long>());
        for (std::size_t r = 0; r < g["rank"].get<std::size_t>(); ++r) orders.push_back(0);
        return FgAbelianGroup::from_cyclic(orders).str();
    };
    std::ostringstream n;
    n << tag << ": K0 = " << shown(j["K0"]) << ", K1 = " << shown(j["K1"]) << ", certified by level " << detect << " in "
      << std::fixed << std::setprecision(1) << s << "s";
    o.notes.push_back(n.str());
}

// ---- displayed closed forms of the reset family on the F-class bases ----------------------

using Entry = std::map<Sym, int>;

Entry golden_M(const Alphabet& a, int N, std::size_t l, std::size_t i, std::size_t j) {
    Entry e;
    Sym b = a.id("α_+"), c = a.id("α_-");
    if (i == l + 2 && j <= l + 2)
        for (int n = 1; n <= N; ++n) e[a.id("a_" + std::to_string(n))] = 1;
    if (i <= l + 1 && (i == j || i + j == 2 * l + 5)) ++e[b];
    if (i >= l + 3 && i == j) ++e[c];
    if (i == 2 * l + 2 && (j == 2 * l + 3 || j == 2 * l + 4)) ++e[c];
    return e;
}

int golden_I(std::size_t l, std::size_t i, std::size_t j) {
    return (i == 1 && j == 1) || (j == i + 1 && j >= 2 && j <= 2 * l + 3) || (i == 2 * l + 2 && j == 2 * l + 4);
}

std::size_t golden_iota(std::size_t l, std::size_t j) {  // iota of v_j^{l+1}
    if (j == 1) return 1;
    if (j <= 2 * l + 3) return j - 1;
    return 2 * l + 2;
}

Int gcd_of_minors(const IntMatrix& a, std::size_t k) {
    std::vector<std::size_t> rs(k), cs(k);
    Int g = 0;
    std::function<void(std::size_t, std::size_t)> cols = [&](std::size_t start, std::size_t depth) {
        if (depth == k) {
            IntMatrix m(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) m(i, j) = a(rs[i], cs[j]);
            Int d = determinant(m);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
            return;
        }
        for (std::size_t c = start; c < a.cols(); ++c) {
            cs[depth] = c;
            cols(c + 1, depth + 1);
        }
    };
    std::function<void(std::size_t, std::size_t)> rows = [&](std::size_t start, std::size_t depth) {
        if (depth == k) return cols(0, 0);
        for (std::size_t r = start; r < a.rows(); ++r) {
            rs[depth] = r;
            rows(r + 1, depth + 1);
        }
    };
    rows(0, 0);
    return g;
}

const Config cfg{};

// ---- criteria -----------------------------------------------------------------------------

Outcome c1() {
    Outcome o;
    for (int N = 1; N <= 4; ++N) kgroups_criterion(o, "reset-rev", N, grp({N, 0}), grp({}));
    return o;
}

Outcome c2() {
    Outcome o;
    for (int N = 1; N <= 4; ++N) kgroups_criterion(o, "reset", N, grp({N, 0}), grp({}));
    return o;
}

Outcome c3() {
    Outcome o;
    for (int N = 1; N <= 3; ++N) kgroups_criterion(o, "counter", N, grp({N, 0, 0}), grp({0}));
    return o;
}

Outcome c4() {
    Outcome o;
    std::size_t compared = 0;
    for (int N = 1; N <= 2; ++N) {
        SubshiftOracle oracle(CodeSpec::reversed(CodeSpec::reset(N)));
        const auto& a = oracle.alphabet();
        auto g = build(oracle, Direction::Past, 9, cfg);
        auto ms = matrix_systems(g);
        for (std::size_t l = 2; l <= 8; ++l) {
            std::string at = "N=" + std::to_string(N) + ", l=" + std::to_string(l);
            o.expect(g.m(l) == 2 * l + 2, at + ": m(l) = " + std::to_string(g.m(l)));
            if (g.m(l) != 2 * l + 2 || g.m(l + 1) != 2 * l + 4) continue;
            std::vector<GraphEdge> edges;
            for (std::size_t i = 1; i <= g.m(l); ++i)
                for (std::size_t j = 1; j <= g.m(l + 1); ++j) {
                    auto e = golden_M(a, N, l, i, j);
                    o.expect(ms.symbolic.M[l][i - 1][j - 1] == e, at + ": M entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
                    o.expect(ms.nonneg.Il(l)(i - 1, j - 1) == golden_I(l, i, j),
                             at + ": I entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
                    for (auto [s, k] : e)
                        for (int r = 0; r < k; ++r) edges.push_back({i, s, j});
                    compared += 2;
                }
            std::sort(edges.begin(), edges.end(), [](const GraphEdge& x, const GraphEdge& y) {
                return std::tie(x.source, x.target, x.label) < std::tie(y.source, y.target, y.label);
            });
            o.expect(g.levels[l].edges == edges, at + ": edge list");
            for (std::size_t j = 1; j <= g.m(l + 1); ++j)
                o.expect(g.levels[l + 1].iota[j - 1] == golden_iota(l, j), at + ": iota of v_" + std::to_string(j));
            o.expect(ms.nonneg.MtminusIt(l) == closed_form_fixtures(Family::ResetRev, N, l).MtminusIt, at + ": M^t - I^t");
        }
    }
    o.notes.push_back(std::to_string(compared) + " M/I entries, edge lists, iota and M^t-I^t for N=1,2, l=2..8");
    return o;
}

Outcome c5() {
    Outcome o;
    for (auto fam : {Family::ResetRev, Family::Reset})
        for (int N = 1; N <= 2; ++N) {
            auto built = matrix_systems(fixture_graph(fam, N, 9, cfg)).nonneg;
            for (std::size_t l = 2; l <= 8; ++l) {
                std::string at = to_string(fam) + " N=" + std::to_string(N) + " l=" + std::to_string(l);
                o.expect(kernel_basis(closed_form_fixtures(fam, N, l).MtminusIt).empty(), at + ": closed form has a kernel");
                o.expect(kernel_basis(built.MtminusIt(l)).empty(), at + ": built matrix has a kernel");
            }
        }
    o.notes.push_back("closed-form and built M^t-I^t, both families, N=1,2, l=2..8");
    return o;
}

Outcome c6() {
    Outcome o;
    for (int N = 1; N <= 2; ++N)
        for (std::size_t l = 2; l <= 8; ++l) {
            auto rep = crosscheck_items(Family::ResetRev, N, l, cfg);
            for (const auto& i : rep.items) {
                std::string at = "N=" + std::to_string(N) + " l=" + std::to_string(l) + " " + i.name;
                o.expect(i.applicable, at + " not applicable");
                o.expect(i.passed, at + ": " + i.detail);
            }
        }
    // Reported, not scored: the same identities for the other closed-form family.
    std::size_t lattice_fail = 0;
    for (int N = 1; N <= 2; ++N)
        for (std::size_t l = 2; l <= 8; ++l)
            for (const auto& i : crosscheck_items(Family::Reset, N, l, cfg).items)
                lattice_fail += i.name == "lattice" && !i.passed;
    o.notes.push_back("reset-rev: lattice, square, J index, decomposition (100 vectors), L-conjugacy, kernel, cokernel, builder");
    o.notes.push_back("reset family lattice identity fails at " + std::to_string(lattice_fail) + "/14 levels (N=2)");
    return o;
}

Outcome c7() {
    Outcome o;
    auto verdict = [&](const CodeSpec& s, Direction d, Simplicity want, bool want_found, const std::string& tag) {
        std::vector<std::string> u;
        auto g = graph_summary(SubshiftOracle(s), d, cfg, u);
        o.expect(g.simplicity.has_value(), tag + ": " + g.error);
        if (!g.simplicity) return;
        o.expect(g.simplicity->hereditary.found == want_found, tag + ": hereditary search");
        o.expect(!want_found || g.simplicity->hereditary.proper, tag + ": subset not proper");
        o.expect(g.simplicity->verdict == want, tag + ": verdict " + to_string(g.simplicity->verdict));
        o.expect(g.simplicity->hereditary.level_checked == 10, tag + ": checked to level " +
                                                                   std::to_string(g.simplicity->hereditary.level_checked));
        o.notes.push_back(tag + " " + to_string(g.simplicity->verdict));
    };
    verdict(CodeSpec::reset(2), Direction::Future, Simplicity::Simple, false, "reset(2) future");
    verdict(CodeSpec::reset(2), Direction::Past, Simplicity::NotSimple, true, "reset(2) past");
    verdict(CodeSpec::counter(2), Direction::Future, Simplicity::NotSimple, true, "counter(2) future");
    return o;
}

Outcome c8() {
    Outcome o;
    auto r2 = full_report(CodeSpec::reset(2), cfg);
    auto v2 = full_report(CodeSpec::reversed(CodeSpec::reset(2)), cfg);
    auto r3 = full_report(CodeSpec::reset(3), cfg);
    auto a = compare(r2, v2);
    o.expect(a.distinguished && a.reason.rfind("ideal structure", 0) == 0, "reverse: " + a.reason);
    o.expect(r2.k0.value && v2.k0.value && *r2.k0.value == *v2.k0.value, "reverse: K0 differs");
    o.expect(r2.k1.value && v2.k1.value && *r2.k1.value == *v2.k1.value, "reverse: K1 differs");
    auto b = compare(r2, r3);
    o.expect(b.distinguished && b.reason == "torsion of K0 (Z/2 vs Z/3)", "reset(3): " + b.reason);
    o.expect(!compare(r2, r2).distinguished, "self-comparison distinguishes");
    o.notes.push_back("vs reverse: " + a.reason);
    o.notes.push_back("vs reset(3): " + b.reason);
    return o;
}

Outcome c9() {
    Outcome o;
    for (const std::string fam : {"reset", "reset-rev"})
        for (int N = 1; N <= 4; ++N) {
            std::string tag = fam + "(" + std::to_string(N) + ")";
            int code = 0;
            auto j = run_cli({"bf", "--family", fam, "--N", std::to_string(N)}, code);
            o.expect(code == 0, tag + ": exit " + std::to_string(code));
            if (code != 0) continue;
            o.expect(j["BF0"] == group_json(grp({N})), tag + ": BF0 = " + j["BF0"].dump());
            o.expect(j["BF1"] == group_json(FgAbelianGroup::free(1)), tag + ": BF1 = " + j["BF1"].dump());
            o.expect(j["reference_BF1"] == group_json(FgAbelianGroup::free(2)), tag + ": reference value missing");
            auto note = j["note"].get<std::string>();
            o.expect(note.find("Z^2") != std::string::npos && note.find("formula gives Z") != std::string::npos,
                     tag + ": note = " + note);
        }
    o.notes.push_back("BF0 = Z/N, BF1 = Z by the formula, reference Z^2 carried with the note");
    return o;
}

Outcome c10() {
    Outcome o;
    // Oracle equivalence on five built-in specs.
    std::vector<CodeSpec> specs{CodeSpec::reset(1), CodeSpec::reset(2), CodeSpec::counter(1), CodeSpec::counter(2),
                                CodeSpec::unite({CodeSpec::reset(2), CodeSpec::counter(2)})};
    std::size_t words = 0;
    for (const auto& s : specs) {
        SubshiftOracle dp(s);
        BruteForceOracle bf(s, 10);
        const auto& a = dp.alphabet();
        // Every word of length <= 10 over the alphabet, pruned only where both reject a prefix.
        std::vector<Word> layer{Word{}};
        for (std::size_t n = 0; n <= 10 && !layer.empty(); ++n) {
            std::vector<Word> next;
            for (const auto& w : layer) {
                bool x = dp.decide(w), y = bf.decide(w);
                ++words;
                o.expect(x == y, s.describe() + ": disagree on " + a.str(w));
                // A rejected word has only rejected extensions in both oracles (factor closure).
                if (!x || n == 10) continue;
                for (Sym g = 0; g < a.size(); ++g) {
                    Word v = w;
                    v.push_back(g);
                    next.push_back(v);
                }
            }
            layer = std::move(next);
        }
    }
    o.notes.push_back("oracles agree on " + std::to_string(words) + " words");

    // Smith normal form on 200 seeded random matrices.
    std::mt19937 rng(cfg.seed);
    std::uniform_int_distribution<std::size_t> dim(1, 8);
    std::uniform_int_distribution<int> entry(-9, 9);
    for (int t = 0; t < 200; ++t) {
        std::size_t r = dim(rng), c = dim(rng);
        IntMatrix a(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) a(i, j) = entry(rng);
        auto s = smith_form(a);
        bool ok = s.U * s.S * s.V == a && abs(determinant(s.U)) == 1 && abs(determinant(s.V)) == 1;
        for (std::size_t k = 0; k + 1 < s.diag.size(); ++k)
            ok = ok && (sgn(s.diag[k]) == 0 ? sgn(s.diag[k + 1]) == 0
                                            : mpz_divisible_p(s.diag[k + 1].get_mpz_t(), s.diag[k].get_mpz_t()) != 0);
        if (std::max(r, c) <= 5) {
            Int prod = 1;
            for (std::size_t k = 1; k <= s.diag.size(); ++k) {
                prod *= s.diag[k - 1];
                ok = ok && prod == gcd_of_minors(a, k);
            }
        }
        o.expect(ok, "smith form of random matrix " + std::to_string(t));
    }
    o.notes.push_back("200 Smith forms valid");

    // Flow-move invariance of the K-groups.
    for (const auto& base : {CodeSpec::reset(2), CodeSpec::counter(2)}) {
        auto k = k_groups(matrix_systems(build(SubshiftOracle(base), Direction::Past, cfg.level, cfg)).nonneg, cfg.window);
        o.expect(k.resolved(), base.describe() + ": K unresolved");
        if (!k.resolved()) continue;
        for (const auto& moved : {CodeSpec::higher_block(base, 2), CodeSpec::expand(base, "α_-", "α_-'")}) {
            auto km = k_groups(matrix_systems(build(SubshiftOracle(moved), Direction::Past, cfg.level, cfg)).nonneg,
                               cfg.window);
            o.expect(km.resolved() && *km.K0 == *k.K0 && *km.K1 == *k.K1, moved.describe() + ": K-groups changed");
        }
    }
    o.notes.push_back("K unchanged under 2-blocks and expanding α_-");

    // Horizon monotonicity: a decided certification never changes or reverts as the horizon grows.
    std::size_t certs = 0;
    for (const auto& s : {CodeSpec::reset(2), CodeSpec::counter(2), CodeSpec::reversed(CodeSpec::reset(2)),
                          CodeSpec::unite({CodeSpec::reset(1), CodeSpec::counter(1)})}) {
        SubshiftOracle oracle(s);
        std::map<std::string, Verdict> seen;
        auto track = [&](const std::string& name, const Certainty& c, std::size_t h) {
            ++certs;
            auto it = seen.find(name);
            if (it != seen.end() && it->second != Verdict::Unknown)
                o.expect(c.verdict == it->second, s.describe() + ": " + name + " changed at horizon " + std::to_string(h));
            seen[name] = c.verdict;
        };
        for (std::size_t h = 4; h <= 12; h += 2) {
            Config c = cfg;
            c.horizon = h;
            for (Sym g = 0; g < oracle.alphabet().size(); ++g)
                track("sync " + oracle.alphabet().name(g), certify_synchronizing(oracle, {g}, c), h);
            try {
                auto p = characteristic_pair(oracle, c);
                track("condition a", p.condition_a, h);
                track("condition b", p.condition_b, h);
                track("condition c-", p.condition_c_minus, h);
                track("condition c+", p.condition_c_plus, h);
                auto r = reset_analysis(oracle, p, c);
                track("reset", r.has_reset, h);
                track("reset condition", r.reset_condition, h);
            } catch (const Error& e) {
                o.expect(h < 8, s.describe() + ": no pair at horizon " + std::to_string(h) + " (" + e.what() + ")");
            }
        }
    }
    o.notes.push_back(std::to_string(certs) + " certifications monotone in the horizon");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"K-groups of the reversed reset shifts, N=1..4", c1},
        {"K-groups of the reset shifts, N=1..4", c2},
        {"K-groups of the counter shifts, N=1..3", c3},
        {"golden lambda-graph structure of the reset family", c4},
        {"M^t - I^t has trivial kernel", c5},
        {"closed-form cross-checks", c6},
        {"hereditary subsets and simplicity", c7},
        {"flow-equivalence distinguishers", c8},
        {"Bowen-Franks groups with the BF1 note", c9},
        {"property suites", c10}};
    int failed = 0;
    auto start = std::chrono::steady_clock::now();
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        auto t = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.errors.push_back(std::string("exception: ") + e.what());
        }
        failed += !o.pass;
        std::ostringstream line;
        line << "criterion " << std::setw(2) << k + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[k].first
             << " (" << std::fixed << std::setprecision(1) << seconds_since(t) << "s)";
        std::cout << line.str() << "\n";
        for (const auto& n : o.notes) std::cout << "      " << n << "\n";
        for (std::size_t e = 0; e < o.errors.size() && e < 10; ++e) std::cout << "      ! " << o.errors[e] << "\n";
        if (o.errors.size() > 10) std::cout << "      ! ... " << o.errors.size() - 10 << " more\n";
        std::cout.flush();
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << " in "
              << std::fixed << std::setprecision(1) << seconds_since(start) << "s\n";
    return failed ? 1 : 0;
}
