// Bounded certification of synchronization, characteristic pairs and boundary words.
// Every "for all k" clause is checked for k up to the horizon.
#include "occ/sync.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include "occ/errors.hpp"

namespace occ {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::CertifiedTrue: return "certified_true";
        case Verdict::CertifiedFalse: return "certified_false";
        case Verdict::Unknown: return "unknown";
    }
    return "?";
}

Certainty weakest(const Certainty& a, const Certainty& b) {
    auto rank = [](Verdict v) { return v == Verdict::Unknown ? 2 : v == Verdict::CertifiedFalse ? 1 : 0; };
    return rank(b.verdict) > rank(a.verdict) ? b : a;
}

namespace {

Word power(Sym s, std::size_t k) { return Word(k, s); }

Word cat(std::initializer_list<Word> parts) {
    Word w;
    for (const auto& p : parts) w.insert(w.end(), p.begin(), p.end());
    return w;
}

bool contains_any(const Word& w, const std::vector<Sym>& syms) {
    return std::any_of(w.begin(), w.end(),
                       [&](Sym s) { return std::find(syms.begin(), syms.end(), s) != syms.end(); });
}

std::vector<Sym> complement(const Alphabet& a, const std::vector<Sym>& syms) {
    std::vector<Sym> out;
    for (Sym s = 0; s < a.size(); ++s)
        if (std::find(syms.begin(), syms.end(), s) == syms.end()) out.push_back(s);
    return out;
}

// Words d over `letters`, |d| <= max_len, with prefix(d) admissible for every prefix; length-lex order.
std::vector<Word> grow_words(const std::vector<Sym>& letters, std::size_t max_len,
                             const std::function<bool(const Word&)>& prefix_ok) {
    std::vector<Word> out{Word{}};
    std::vector<Word> layer{Word{}};
    for (std::size_t n = 1; n <= max_len && !layer.empty(); ++n) {
        std::vector<Word> next;
        for (const auto& w : layer)
            for (Sym s : letters) {
                Word x = w;
                x.push_back(s);
                if (prefix_ok(x)) next.push_back(x);
            }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

// D(sigma, alpha): sigma d alpha^k admissible, d free of synchronizing symbols and not ending with alpha.
std::vector<Word> d_left(const SubshiftOracle& o, Sym sigma, Sym alpha, const std::vector<Sym>& nonsync,
                         std::size_t k, std::size_t max_len) {
    std::vector<Word> out;
    auto cands = grow_words(nonsync, max_len, [&](const Word& d) { return o.decide(cat({{sigma}, d})); });
    for (const auto& d : cands)
        if ((d.empty() || d.back() != alpha) && o.decide(cat({{sigma}, d, power(alpha, k)}))) out.push_back(d);
    return out;
}

// D(alpha, sigma): alpha^k d sigma admissible, d free of synchronizing symbols and not beginning with alpha.
std::vector<Word> d_right(const SubshiftOracle& o, Sym alpha, Sym sigma, const std::vector<Sym>& nonsync,
                          std::size_t k, std::size_t max_len) {
    std::vector<Word> out;
    auto cands = grow_words(nonsync, max_len, [&](const Word& d) {
        return d.front() != alpha && o.decide(cat({power(alpha, k), d}));
    });
    for (const auto& d : cands)
        if (o.decide(cat({power(alpha, k), d, {sigma}}))) out.push_back(d);
    return out;
}

std::size_t max_length(const std::vector<Word>& ws) {
    std::size_t m = 0;
    for (const auto& w : ws) m = std::max(m, w.size());
    return m;
}

// Boundary-word finiteness: no member longer than cutoff among those up to cutoff + window.
Certainty bounded_family(const std::vector<Word>& ws, const Config& cfg, std::size_t& K) {
    std::vector<Word> long_ones;
    for (const auto& w : ws)
        if (w.size() > cfg.cutoff) long_ones.push_back(w);
    if (!long_ones.empty()) return Certainty::unknown(cfg.horizon, {long_ones.front()});
    K = std::max(K, max_length(ws) + 1);
    return Certainty::yes(cfg.horizon);
}

}  // namespace

Certainty certify_synchronizing(const SubshiftOracle& o, const Word& v, const Config& cfg) {
    if (!o.decide(v)) throw InadmissibleWord(o.alphabet().str(v));
    const std::size_t h = cfg.horizon;
    auto st = o.stepper(2 * h + v.size());
    auto rst = o.stepper(2 * h + v.size(), true);
    const std::size_t nsym = o.alphabet().size();

    // Left contexts u with uv admissible, in length-lex order of u.
    std::vector<Word> us;
    {
        std::vector<std::pair<Word, CfgSet>> layer{{Word{}, rst->run(reversed(v))}};
        us.push_back({});
        for (std::size_t n = 1; n <= h; ++n) {
            std::vector<std::pair<Word, CfgSet>> next;
            for (const auto& [ru, s] : layer)
                for (Sym a = 0; a < nsym; ++a) {
                    CfgSet t = rst->step(s, a);
                    if (t.empty()) continue;
                    Word x = ru;
                    x.push_back(a);
                    next.emplace_back(std::move(x), std::move(t));
                }
            std::vector<Word> found;
            for (const auto& [ru, s] : next) found.push_back(reversed(ru));
            std::sort(found.begin(), found.end());
            us.insert(us.end(), found.begin(), found.end());
            layer = std::move(next);
        }
    }
    const CfgSet sv = st->run(v);
    std::set<CfgSet> seen_contexts;
    for (const auto& u : us) {
        CfgSet c = st->run(cat({u, v}));
        if (!seen_contexts.insert(c).second) continue;
        // Breadth-first over w in length-lex order, deduplicated on the pair of configuration sets.
        std::set<std::pair<CfgSet, CfgSet>> seen;
        std::deque<std::tuple<Word, CfgSet, CfgSet>> q;
        q.emplace_back(Word{}, sv, c);
        while (!q.empty()) {
            auto [w, a, b] = q.front();
            q.pop_front();
            if (w.size() == h) continue;
            for (Sym s = 0; s < nsym; ++s) {
                CfgSet a2 = st->step(a, s);
                if (a2.empty()) continue;
                CfgSet b2 = st->step(b, s);
                Word w2 = w;
                w2.push_back(s);
                if (b2.empty()) return Certainty::no(h, {u, w2});
                if (seen.emplace(a2, b2).second) q.emplace_back(std::move(w2), std::move(a2), std::move(b2));
            }
        }
    }
    if (h < cfg.window) return Certainty::unknown(h);
    return Certainty::yes(h);
}

SyncSymbols synchronizing_symbols(const SubshiftOracle& o, const Config& cfg) {
    SyncSymbols out;
    out.certainty = Certainty::yes(cfg.horizon);
    for (Sym s = 0; s < o.alphabet().size(); ++s) {
        if (!o.decide({s})) continue;
        Certainty c = certify_synchronizing(o, {s}, cfg);
        if (c.is_true()) out.symbols.push_back(s);
        if (c.verdict == Verdict::Unknown) out.certainty = weakest(out.certainty, c);
    }
    return out;
}

CharacteristicPairReport characteristic_pair(const SubshiftOracle& o, const Config& cfg) {
    const std::size_t h = cfg.horizon, lo = h > cfg.window ? h - cfg.window : 1;
    const std::size_t span = cfg.cutoff + cfg.window;
    auto sync = synchronizing_symbols(o, cfg).symbols;
    auto nonsync = complement(o.alphabet(), sync);
    const Alphabet& A = o.alphabet();

    std::vector<Sym> fixed;
    for (Sym s = 0; s < A.size(); ++s)
        if (o.decide(power(s, h))) fixed.push_back(s);

    std::vector<CharacteristicPairReport> found;
    std::string diagnostics;
    for (Sym p : fixed)
        for (Sym q : fixed) {
            if (p == q) continue;
            CharacteristicPairReport r;
            r.alpha_minus = p;
            r.alpha_plus = q;
            r.synchronizing = sync;
            r.Q_bound = h;

            // (a) bridges p^inf w q^inf without synchronizing words, up to shift.
            if (contains_any({p, q}, sync)) {
                r.condition_a = Certainty::no(h, {Word{contains_any({p}, sync) ? p : q}});
            } else {
                auto cores_at = [&](std::size_t k) {
                    std::vector<Word> cores;
                    auto cands = grow_words(nonsync, span, [&](const Word& w) {
                        return w.front() != p && o.decide(cat({power(p, k), w}));
                    });
                    for (const auto& w : cands)
                        if ((w.empty() || w.back() != q) && o.decide(cat({power(p, k), w, power(q, k)})))
                            cores.push_back(w);
                    return cores;
                };
                auto cores = cores_at(h);
                if (cores.empty())
                    r.condition_a = Certainty::no(h, {cat({power(p, h), power(q, h)})});
                else if (cores.size() > 1)
                    r.condition_a = Certainty::no(h, {cores[0], cores[1]});
                else if (cores[0].size() > cfg.cutoff || cores_at(lo) != cores)
                    r.condition_a = Certainty::unknown(h, cores);
                else
                    r.condition_a = Certainty::yes(h, cores);
                if (cores.size() == 1) r.c_X = cores[0];
            }

            // (b) a point q^inf s p^inf through a synchronizing symbol.
            r.condition_b = Certainty::unknown(h);
            {
                std::vector<Sym> all(A.size());
                for (Sym s = 0; s < A.size(); ++s) all[s] = s;
                auto cands = grow_words(all, cfg.cutoff, [&](const Word& s) { return o.decide(cat({power(q, h), s})); });
                for (const auto& s : cands)
                    if (contains_any(s, sync) && o.decide(cat({power(q, h), s, power(p, h)}))) {
                        r.condition_b = Certainty::yes(h, {s});
                        break;
                    }
            }

            // (c-) after the last synchronizing symbol the p-tail starts within K; (c+) mirrored.
            r.condition_c_minus = Certainty::yes(h);
            r.condition_c_plus = Certainty::yes(h);
            for (Sym s : sync) {
                r.condition_c_minus = weakest(r.condition_c_minus,
                                              bounded_family(d_left(o, s, p, nonsync, h, span), cfg, r.K_bound));
                r.condition_c_plus = weakest(r.condition_c_plus,
                                             bounded_family(d_right(o, q, s, nonsync, h, span), cfg, r.K_bound));
            }
            if (sync.empty()) {
                r.condition_c_minus = Certainty::unknown(h);
                r.condition_c_plus = Certainty::unknown(h);
            }

            diagnostics += " (" + A.name(p) + "," + A.name(q) + "): a=" + to_string(r.condition_a.verdict) +
                           " b=" + to_string(r.condition_b.verdict) + " c-=" + to_string(r.condition_c_minus.verdict) +
                           " c+=" + to_string(r.condition_c_plus.verdict) + ";";
            if (r.condition_a.is_true() && r.condition_b.is_true() && r.condition_c_minus.is_true() &&
                r.condition_c_plus.is_true())
                found.push_back(r);
        }
    if (found.size() != 1)
        throw NotFound(std::to_string(found.size()) + " qualifying pairs among fixed letters;" +
                       (diagnostics.empty() ? std::string(" no fixed points") : diagnostics));
    return found[0];
}

namespace {

struct Omega {
    WordSets d_plus, d_plus_minus;
    std::vector<Sym> sigma_plus, sigma_plus_minus;
    std::vector<Word> omega_plus, omega_minus;
};

Omega right_sets(const SubshiftOracle& o, const CharacteristicPairReport& pair, const std::vector<Sym>& nonsync,
                 std::size_t k, std::size_t max_len) {
    Omega om;
    for (Sym s : pair.synchronizing) {
        auto dp = d_right(o, pair.alpha_plus, s, nonsync, k, max_len);
        auto dm = d_right(o, pair.alpha_minus, s, nonsync, k, max_len);
        if (!dp.empty()) {
            om.sigma_plus.push_back(s);
            for (const auto& d : dp) om.omega_plus.push_back(cat({d, {s}}));
            om.d_plus[s] = dp;
        }
        if (!dm.empty()) {
            om.sigma_plus_minus.push_back(s);
            for (const auto& d : dm) om.omega_minus.push_back(cat({d, {s}}));
            om.d_plus_minus[s] = dm;
        }
    }
    std::sort(om.omega_plus.begin(), om.omega_plus.end(), length_lex_less);
    std::sort(om.omega_minus.begin(), om.omega_minus.end(), length_lex_less);
    return om;
}

// Smallest D <= horizon - window with alpha_-^{k-} c_X alpha_+^{k+ + D} e admissible for all probed k+-.
std::optional<std::size_t> reset_defect(const SubshiftOracle& o, const CharacteristicPairReport& pair, const Word& e,
                                        const Config& cfg, Word& failure) {
    const std::size_t h = cfg.horizon, top = h > cfg.window ? h - cfg.window : 0;
    for (std::size_t D = 0; D <= top; ++D) {
        bool ok = true;
        for (std::size_t km = 1; km <= h && ok; ++km)
            for (std::size_t kp = 1; kp <= h && ok; ++kp) {
                Word w = cat({power(pair.alpha_minus, km), pair.c_X, power(pair.alpha_plus, kp + D), e});
                if (!o.decide(w)) {
                    ok = false;
                    failure = w;
                }
            }
        if (ok) return D;
    }
    return std::nullopt;
}

bool in_omega_minus_reset(const Word& w, const CharacteristicPairReport& pair, const std::map<Word, std::size_t>& defect) {
    if (w.size() < pair.c_X.size() || !std::equal(pair.c_X.begin(), pair.c_X.end(), w.begin())) return false;
    std::size_t i = pair.c_X.size(), j = 0;
    while (i < w.size() && w[i] == pair.alpha_plus) ++i, ++j;
    auto it = defect.find(Word(w.begin() + i, w.end()));
    return it != defect.end() && j >= 1 + it->second;
}

}  // namespace

BoundarySets boundary_sets(const SubshiftOracle& o, const CharacteristicPairReport& pair, const Config& cfg) {
    const std::size_t h = cfg.horizon, lo = h > cfg.window ? h - cfg.window : 1;
    auto nonsync = complement(o.alphabet(), pair.synchronizing);
    BoundarySets b;
    auto left_sets = [&](std::size_t k, WordSets& dm, WordSets& dmp, std::vector<Sym>& sm, std::vector<Sym>& smp) {
        for (Sym s : pair.synchronizing) {
            auto x = d_left(o, s, pair.alpha_minus, nonsync, k, cfg.cutoff);
            auto y = d_left(o, s, pair.alpha_plus, nonsync, k, cfg.cutoff);
            if (!x.empty()) {
                sm.push_back(s);
                dm[s] = x;
            }
            if (!y.empty()) {
                smp.push_back(s);
                dmp[s] = y;
            }
        }
    };
    left_sets(h, b.d_minus, b.d_minus_plus, b.sigma_minus, b.sigma_minus_plus);
    Omega om = right_sets(o, pair, nonsync, h, cfg.cutoff);
    b.d_plus = om.d_plus;
    b.d_plus_minus = om.d_plus_minus;
    b.sigma_plus = om.sigma_plus;
    b.sigma_plus_minus = om.sigma_plus_minus;
    b.omega_plus = om.omega_plus;
    b.omega_minus = om.omega_minus;

    WordSets dm2, dmp2;
    std::vector<Sym> sm2, smp2;
    left_sets(lo, dm2, dmp2, sm2, smp2);
    Omega om2 = right_sets(o, pair, nonsync, lo, cfg.cutoff);
    bool stable = dm2 == b.d_minus && dmp2 == b.d_minus_plus && om2.d_plus == b.d_plus &&
                  om2.d_plus_minus == b.d_plus_minus;
    b.stable = stable ? Certainty::yes(h) : Certainty::unknown(h);

    for (const auto& e : b.omega_plus) {
        Word failure;
        if (auto D = reset_defect(o, pair, e, cfg, failure)) {
            b.omega_plus_reset.push_back(e);
            b.reset_defect[e] = *D;
        } else {
            b.omega_plus_counter.push_back(e);
        }
    }
    return b;
}

ResetReport reset_analysis(const SubshiftOracle& o, const CharacteristicPairReport& pair, const Config& cfg) {
    const std::size_t h = cfg.horizon;
    ResetReport r;
    r.boundary = boundary_sets(o, pair, cfg);
    const auto& b = r.boundary;
    if (!b.omega_plus_reset.empty()) {
        const Word& e = b.omega_plus_reset.front();
        r.has_reset = Certainty::yes(h, {e});
    } else if (!b.omega_plus.empty()) {
        // Every boundary word fails for every admissible defect; report the failure of the first.
        Word failure;
        reset_defect(o, pair, b.omega_plus.front(), cfg, failure);
        r.has_reset = b.stable.is_true() ? Certainty::no(h, {b.omega_plus.front(), failure})
                                         : Certainty::unknown(h, {b.omega_plus.front(), failure});
    } else {
        r.has_reset = Certainty::unknown(h);
    }

    // Finiteness of Omega^- minus Omega^-_reset: nothing beyond the cutoff within the window.
    auto nonsync = complement(o.alphabet(), pair.synchronizing);
    Omega wide = right_sets(o, pair, nonsync, h, cfg.cutoff + cfg.window);
    std::vector<Word> rest, beyond;
    for (const auto& w : wide.omega_minus)
        if (!in_omega_minus_reset(w, pair, b.reset_defect)) {
            rest.push_back(w);
            if (w.size() > cfg.cutoff) beyond.push_back(w);
        }
    r.reset_condition = beyond.empty() ? Certainty::yes(h, rest) : Certainty::unknown(h, beyond);
    return r;
}

MarkovCode markov_code_truncation(const SubshiftOracle& o, const Config& cfg) {
    const Alphabet& A = o.alphabet();
    auto sync = synchronizing_symbols(o, cfg).symbols;
    if (sync.empty()) throw NoSynchronizingSymbols("no certified synchronizing symbol at horizon " +
                                                   std::to_string(cfg.horizon));
    auto nonsync = complement(A, sync);
    auto set_name = [&](const std::vector<Sym>& s) {
        std::string n = "{";
        for (std::size_t i = 0; i < s.size(); ++i) n += (i ? "," : "") + A.name(s[i]);
        return n + "}";
    };
    MarkovCode m;
    m.symbols = A.names();
    std::vector<std::vector<Sym>> gamma;
    auto index = [&](const std::vector<Sym>& s) {
        auto it = std::find(gamma.begin(), gamma.end(), s);
        if (it != gamma.end()) return static_cast<std::size_t>(it - gamma.begin());
        gamma.push_back(s);
        return gamma.size() - 1;
    };
    for (Sym s : sync) index({s});
    std::vector<bool> is_t;
    struct Entry {
        Word c;
        std::size_t s, t;
    };
    std::vector<Entry> entries;
    for (Sym first : sync) {
        if (!o.decide({first})) continue;
        auto tails = grow_words(nonsync, cfg.cutoff - 1, [&](const Word& d) { return o.decide(cat({{first}, d})); });
        for (const auto& d : tails) {
            Word c = cat({{first}, d});
            std::vector<Sym> t;
            for (Sym s : sync)
                if (o.decide(cat({c, {s}}))) t.push_back(s);
            if (t.empty()) continue;
            entries.push_back({c, index({first}), index(t)});
        }
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) { return length_lex_less(x.c, y.c); });
    std::vector<bool> t_set(gamma.size(), false);
    for (const auto& e : entries) {
        std::vector<std::string> names;
        for (Sym s : e.c) names.push_back(A.name(s));
        m.words.push_back(names);
        m.s.push_back({e.s});
        m.t.push_back({e.t});
        t_set[e.t] = true;
    }
    for (const auto& g : gamma) m.gamma.push_back(set_name(g));
    m.A.assign(gamma.size(), std::vector<int>(gamma.size(), 0));
    for (std::size_t i = 0; i < gamma.size(); ++i)
        for (std::size_t j = 0; j < gamma.size(); ++j)
            if (t_set[i] && gamma[j].size() == 1 &&
                std::find(gamma[i].begin(), gamma[i].end(), gamma[j][0]) != gamma[i].end())
                m.A[i][j] = 1;
    return m;
}

}  // namespace occ
