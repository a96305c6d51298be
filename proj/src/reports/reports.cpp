#include <future>
#include <sstream>

#include "occ/errors.hpp"
#include "occ/reports.hpp"
#include "occ/spec_json.hpp"

namespace occ {

using nlohmann::json;

namespace {

json int_json(const Int& v) {
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
}

json opt_size(const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); }

void note_certainty(std::vector<std::string>& out, const std::string& name, const Certainty& c) {
    if (c.verdict == Verdict::Unknown)
        out.push_back(name + ": unknown at horizon " + std::to_string(c.horizon));
}

// The reset analysis of the shift whose future system is the graph in direction d.
std::optional<ResetReport> reset_for(const SubshiftOracle& o, Direction d, const Config& cfg, std::string& err) {
    try {
        SubshiftOracle r = d == Direction::Future ? o : o.reverse();
        return reset_analysis(r, characteristic_pair(r, cfg), cfg);
    } catch (const Error& e) {
        err = e.what();
        return std::nullopt;
    }
}

GraphSummary summarize(const SubshiftOracle& o, Direction d, const Config& cfg, std::optional<LambdaGraphSystem>& out,
                       std::vector<std::string>& unresolved) {
    GraphSummary s;
    s.direction = d;
    const std::string tag = "graph." + to_string(d);
    try {
        out = build(o, d, cfg.level, cfg);
        s.levels = out->top();
        for (std::size_t l = 0; l <= out->top(); ++l) s.m.push_back(out->m(l));
        s.ordering = out->ordering;
        s.probe_length = out->probe_length;
        s.structure = verify_structure(*out);
    } catch (const Error& e) {
        s.error = e.what();
        unresolved.push_back(tag + ": " + s.error);
        out.reset();
        return s;
    }
    std::string err;
    auto reset = reset_for(o, d, cfg, err);
    s.simplicity = simplicity_verdict(*out, reset.value_or(ResetReport{}), cfg.window);
    if (!reset && s.simplicity->verdict == Simplicity::Unknown) s.simplicity->reason += " (" + err + ")";
    if (s.simplicity->verdict == Simplicity::Unknown)
        unresolved.push_back("simplicity." + to_string(d) + ": " + s.simplicity->reason);
    return s;
}

json group_value_json(const GroupValue& g) {
    return {{"value", g.value ? to_json(*g.value) : json(nullptr)},
            {"stable_from", opt_size(g.stable_from)},
            {"note", g.note}};
}

json words_json(const std::vector<Word>& ws, const Alphabet& a) {
    json j = json::array();
    for (const auto& w : ws) j.push_back(a.str(w));
    return j;
}

json syms_json(const std::vector<Sym>& ss, const Alphabet& a) {
    json j = json::array();
    for (auto s : ss) j.push_back(a.name(s));
    return j;
}

std::string simplicity_str(const GraphSummary& g) {
    return g.simplicity ? to_string(g.simplicity->verdict) : "unknown";
}

}  // namespace

GraphSummary graph_summary(const SubshiftOracle& o, Direction d, const Config& cfg,
                           std::vector<std::string>& unresolved) {
    std::optional<LambdaGraphSystem> g;
    return summarize(o, d, cfg, g, unresolved);
}

InvariantReport full_report(const CodeSpec& spec, const Config& cfg) {
    InvariantReport r;
    r.spec = spec;
    r.config = cfg;
    SubshiftOracle o(spec);

    try {
        r.pair = characteristic_pair(o, cfg);
        r.reset = reset_analysis(o, *r.pair, cfg);
        note_certainty(r.unresolved, "sync.condition_a", r.pair->condition_a);
        note_certainty(r.unresolved, "sync.condition_b", r.pair->condition_b);
        note_certainty(r.unresolved, "sync.condition_c_minus", r.pair->condition_c_minus);
        note_certainty(r.unresolved, "sync.condition_c_plus", r.pair->condition_c_plus);
        note_certainty(r.unresolved, "sync.has_reset", r.reset->has_reset);
        note_certainty(r.unresolved, "sync.reset_condition", r.reset->reset_condition);
    } catch (const Error& e) {
        r.sync_error = e.what();
        r.unresolved.push_back("sync: " + r.sync_error);
    }

    std::optional<LambdaGraphSystem> gf, gp;
    r.future = summarize(o, Direction::Future, cfg, gf, r.unresolved);
    r.past = summarize(o, Direction::Past, cfg, gp, r.unresolved);

    r.k_direction = Direction::Past;
    if (!gp) {
        for (auto* g : {&r.k0, &r.k1, &r.bf0, &r.bf1}) g->note = "past graph unavailable";
        r.unresolved.push_back("K: past graph unavailable");
        return r;
    }
    auto k = k_groups(matrix_systems(*gp).nonneg, cfg.window);
    auto fill = [&](GroupValue& g, const std::optional<FgAbelianGroup>& v, const DirectLimitTrace& t,
                    const std::string& name) {
        g.value = v;
        g.stable_from = t.stable_from;
        if (v) {
            g.note = "direct limit of the past system, image maps stable for " + std::to_string(cfg.window) +
                     " levels from level " + std::to_string(*t.stable_from);
        } else {
            g.note = "not stabilized through level " + std::to_string(gp->top());
            r.unresolved.push_back(name + ": " + g.note);
        }
    };
    fill(r.k0, k.K0, k.trace0, "K0");
    fill(r.k1, k.K1, k.trace1, "K1");
    if (k.resolved()) {
        auto bf = bowen_franks(*k.K0, *k.K1);
        auto from = std::max(*k.trace0.stable_from, *k.trace1.stable_from);
        r.bf0 = {bf.BF0, from, bf.note};
        r.bf1 = {bf.BF1, from, bf.note};
        r.reference_bf1 = bf.reference_BF1;
    } else {
        r.bf0.note = r.bf1.note = "requires both K-groups";
        r.unresolved.push_back("BF: requires both K-groups");
    }
    return r;
}

FlowVerdict compare(const InvariantReport& a, const InvariantReport& b) {
    FlowVerdict v;
    auto groups = [&](const char* name, const GroupValue& x, const GroupValue& y) {
        if (v.distinguished) return;
        if (!x.value || !y.value) {
            v.caveats.push_back(std::string(name) + " unresolved for " + (x.value ? "the second" : "the first") + " shift");
            return;
        }
        if (*x.value == *y.value) return;
        v.distinguished = true;
        if (x.value->torsion != y.value->torsion)
            v.reason = std::string("torsion of ") + name + " (" + x.value->torsion_part().str() + " vs " +
                       y.value->torsion_part().str() + ")";
        else
            v.reason = std::string(name) + " (" + x.value->str() + " vs " + y.value->str() + ")";
    };
    groups("K0", a.k0, b.k0);
    groups("K1", a.k1, b.k1);
    groups("BF0", a.bf0, b.bf0);
    groups("BF1", a.bf1, b.bf1);

    if (!v.distinguished) {
        // The ideal structure of the algebra of each direction is a flow invariant.
        for (auto [name, x, y] : {std::tuple{"future", &a.future, &b.future}, std::tuple{"past", &a.past, &b.past}}) {
            auto sx = x->simplicity ? x->simplicity->verdict : Simplicity::Unknown;
            auto sy = y->simplicity ? y->simplicity->verdict : Simplicity::Unknown;
            if (sx == Simplicity::Unknown || sy == Simplicity::Unknown) {
                v.caveats.push_back(std::string(name) + " simplicity unresolved");
                continue;
            }
            if (sx != sy) {
                v.distinguished = true;
                v.reason = std::string("ideal structure (") + name + " " + (sx == Simplicity::Simple ? "simple" : "not simple") +
                           " vs " + (sy == Simplicity::Simple ? "simple" : "not simple") + ")";
                break;
            }
        }
    }
    if (!v.distinguished) v.reason = "no computed invariant differs";
    return v;
}

FlowVerdict compare(const CodeSpec& a, const CodeSpec& b, const Config& cfg) {
    if (cfg.jobs > 1) {
        auto fa = std::async(std::launch::async, [&] { return full_report(a, cfg); });
        auto rb = full_report(b, cfg);
        return compare(fa.get(), rb);
    }
    return compare(full_report(a, cfg), full_report(b, cfg));
}

// ---- serialization ------------------------------------------------------------------------

json to_json(const FgAbelianGroup& g) {
    json t = json::array();
    for (const auto& d : g.torsion) t.push_back(int_json(d));
    return {{"rank", g.rank}, {"torsion", t}};
}

json to_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(int_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

json to_json(const Certainty& c, const Alphabet& a) {
    return {{"verdict", to_string(c.verdict)}, {"horizon", c.horizon}, {"witness", words_json(c.witness, a)}};
}

json to_json(const CharacteristicPairReport& p, const Alphabet& a) {
    return {{"alpha_minus", a.name(p.alpha_minus)},
            {"alpha_plus", a.name(p.alpha_plus)},
            {"c_X", a.str(p.c_X)},
            {"condition_a", to_json(p.condition_a, a)},
            {"condition_b", to_json(p.condition_b, a)},
            {"condition_c_minus", to_json(p.condition_c_minus, a)},
            {"condition_c_plus", to_json(p.condition_c_plus, a)},
            {"K_bound", p.K_bound},
            {"Q_bound", p.Q_bound},
            {"synchronizing", syms_json(p.synchronizing, a)}};
}

json to_json(const ResetReport& r, const Alphabet& a) {
    const auto& bs = r.boundary;
    return {{"has_reset", to_json(r.has_reset, a)},
            {"reset_condition", to_json(r.reset_condition, a)},
            {"boundary_stable", to_json(bs.stable, a)},
            {"omega_plus_reset", words_json(bs.omega_plus_reset, a)},
            {"omega_plus_counter", words_json(bs.omega_plus_counter, a)}};
}

json to_json(const Config& c) {
    return {{"level", c.level}, {"horizon", c.horizon}, {"window", c.window}, {"cutoff", c.cutoff}, {"seed", c.seed}};
}

json to_json(const SimplicityVerdict& s) {
    json subset = json::array();
    for (const auto& lv : s.hereditary.subset) subset.push_back(lv);
    return {{"verdict", to_string(s.verdict)},
            {"reason", s.reason},
            {"hereditary",
             {{"found", s.hereditary.found},
              {"proper", s.hereditary.proper},
              {"level_checked", s.hereditary.level_checked},
              {"strategy", s.hereditary.strategy},
              {"subset", subset}}}};
}

json to_json(const GraphSummary& g) {
    json j{{"direction", to_string(g.direction)},
           {"levels", opt_size(g.levels)},
           {"m", g.m},
           {"ordering", g.ordering},
           {"probe_length", g.probe_length},
           {"error", g.error}};
    j["structure"] = g.structure ? json{{"levels_checked", g.structure->levels_checked}, {"checks", g.structure->checks}}
                                 : json(nullptr);
    j["simplicity"] = g.simplicity ? to_json(*g.simplicity) : json(nullptr);
    return j;
}

json to_json(const InvariantReport& r) {
    const Alphabet a = spec_alphabet(r.spec);
    json sync{{"error", r.sync_error}};
    sync["pair"] = r.pair ? to_json(*r.pair, a) : json(nullptr);
    sync["reset"] = r.reset ? to_json(*r.reset, a) : json(nullptr);
    return {{"schema", kReportSchema},
            {"spec", spec_to_json(r.spec)},
            {"name", r.spec.describe()},
            {"config", to_json(r.config)},
            {"sync", sync},
            {"graphs", {{"future", to_json(r.future)}, {"past", to_json(r.past)}}},
            {"k_direction", to_string(r.k_direction)},
            {"K0", group_value_json(r.k0)},
            {"K1", group_value_json(r.k1)},
            {"BF0", group_value_json(r.bf0)},
            {"BF1", group_value_json(r.bf1)},
            {"reference_BF1", r.reference_bf1 ? to_json(*r.reference_bf1) : json(nullptr)},
            {"complete", r.complete()},
            {"unresolved", r.unresolved}};
}

json to_json(const FlowVerdict& v) {
    return {{"schema", "occ.compare/1"},
            {"verdict", v.distinguished ? "distinguished" : "not_distinguished"},
            {"reason", v.reason},
            {"caveats", v.caveats}};
}

json to_json(const CrosscheckReport& r) {
    json items = json::array();
    for (const auto& i : r.items)
        items.push_back({{"name", i.name}, {"passed", i.passed}, {"applicable", i.applicable}, {"detail", i.detail}});
    return {{"schema", "occ.crosscheck/1"},
            {"family", to_string(r.family)},
            {"N", r.N},
            {"l", r.l},
            {"passed", r.passed()},
            {"items", items}};
}

json to_json(const FixtureBundle& b) {
    return {{"schema", "occ.fixtures/1"},
            {"family", to_string(b.family)},
            {"N", b.N},
            {"l", b.l},
            {"MtminusIt", to_json(b.MtminusIt)},
            {"B", to_json(b.B)},
            {"P", to_json(b.P)},
            {"P_prev", to_json(b.Pprev)},
            {"It", to_json(b.It)},
            {"J", to_json(b.J)},
            {"J_printed", to_json(b.J_printed)},
            {"L", to_json(b.L)}};
}

json graph_json(const LambdaGraphSystem& g) {
    json levels = json::array();
    for (std::size_t l = 0; l <= g.top(); ++l) {
        const auto& lv = g.levels[l];
        json vs = json::array(), es = json::array();
        for (const auto& v : lv.vertices)
            vs.push_back({{"index", v.index}, {"representative", g.alphabet.str(v.representative)}});
        for (const auto& e : lv.edges)
            es.push_back({{"source", e.source}, {"label", g.alphabet.name(e.label)}, {"target", e.target}});
        levels.push_back({{"level", l}, {"vertices", vs}, {"edges", es}, {"iota", lv.iota}});
    }
    return {{"schema", "occ.graph/1"},
            {"spec", spec_to_json(g.spec)},
            {"name", g.spec.describe()},
            {"direction", to_string(g.direction)},
            {"ordering", g.ordering},
            {"probe_length", g.probe_length},
            {"levels", levels}};
}

json matrices_json(const LambdaGraphSystem& g, const MatrixSystems& ms) {
    json levels = json::array();
    const auto& n = ms.nonneg;
    for (std::size_t l = n.first_level; l < n.last_level(); ++l) {
        json sym = json::array();
        for (std::size_t i = 1; i <= g.m(l); ++i) {
            json row = json::array();
            for (std::size_t j = 1; j <= g.m(l + 1); ++j) row.push_back(ms.symbolic.entry(l, i, j, g.alphabet));
            sym.push_back(row);
        }
        levels.push_back({{"level", l},
                          {"m", {g.m(l), g.m(l + 1)}},
                          {"M_symbolic", sym},
                          {"M", to_json(n.Ml(l))},
                          {"I", to_json(n.Il(l))},
                          {"MtminusIt", to_json(n.MtminusIt(l))}});
    }
    return {{"schema", "occ.matrices/1"},
            {"spec", spec_to_json(g.spec)},
            {"name", g.spec.describe()},
            {"direction", to_string(g.direction)},
            {"ordering", g.ordering},
            {"levels", levels}};
}

std::string to_text(const InvariantReport& r) {
    std::ostringstream os;
    auto gv = [](const GroupValue& g) { return g.value ? g.value->str() : std::string("unresolved"); };
    os << "shift: " << r.spec.describe() << "\n";
    if (r.pair) {
        const Alphabet a = spec_alphabet(r.spec);
        os << "characteristic pair: (" << a.name(r.pair->alpha_minus) << ", " << a.name(r.pair->alpha_plus) << ")\n";
    } else {
        os << "characteristic pair: " << r.sync_error << "\n";
    }
    if (r.reset) os << "reset: " << to_string(r.reset->has_reset.verdict) << "\n";
    for (const auto* g : {&r.future, &r.past}) {
        os << to_string(g->direction) << " graph: ";
        if (!g->error.empty()) {
            os << g->error << "\n";
            continue;
        }
        os << "levels 0.." << *g->levels << ", m = (";
        for (std::size_t i = 0; i < g->m.size(); ++i) os << (i ? "," : "") << g->m[i];
        os << "), " << simplicity_str(*g) << "\n";
    }
    os << "K0 = " << gv(r.k0) << ", K1 = " << gv(r.k1) << "  (" << to_string(r.k_direction) << " system";
    if (r.k0.stable_from && r.k1.stable_from)
        os << ", stable from level " << std::max(*r.k0.stable_from, *r.k1.stable_from);
    os << ")\n";
    os << "BF0 = " << gv(r.bf0) << ", BF1 = " << gv(r.bf1);
    if (r.reference_bf1) os << "  (reference BF1: " << r.reference_bf1->str() << ")";
    os << "\n";
    if (!r.bf1.note.empty()) os << "note: " << r.bf1.note << "\n";
    for (const auto& u : r.unresolved) os << "unresolved: " << u << "\n";
    return os.str();
}

}  // namespace occ
