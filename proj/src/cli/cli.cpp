#include <CLI11.hpp>
#include <fstream>
#include <future>
#include <sstream>

#include "occ/cli.hpp"
#include "occ/errors.hpp"
#include "occ/reports.hpp"
#include "occ/spec_json.hpp"

namespace occ::cli {

using nlohmann::json;

namespace {

const std::vector<std::string> kSubcommands{"lang",       "sync",   "graph",   "matrices", "kgroups",
                                            "bf",         "simplicity", "report", "compare", "fixtures"};

struct Options {
    std::string family;
    int N = 1;
    std::string spec_file;
    std::string other_family;
    int other_N = 1;
    std::string other_spec_file;
    bool against_reverse = false;
    Config cfg;
    std::string format = "json";
    std::string out;
    std::string direction = "past";
    std::size_t length = 4;
};

// Artifact plus the gaps that make it partial.
struct Output {
    json doc;
    std::string text;
    std::vector<std::string> unresolved;
};

CodeSpec family_spec(const std::string& fam, int N) {
    if (fam == "reset") return CodeSpec::reset(N);
    if (fam == "counter") return CodeSpec::counter(N);
    if (fam == "reset-rev") return CodeSpec::reversed(CodeSpec::reset(N));
    if (fam == "union") return CodeSpec::unite({CodeSpec::reset(N), CodeSpec::counter(N)});
    throw UsageError("unknown family '" + fam + "'");
}

CodeSpec spec_from(const std::string& fam, int N, const std::string& file, const char* which) {
    if (!fam.empty() && !file.empty()) throw UsageError(std::string("give either ") + which + "family or " + which + "spec-file");
    if (!file.empty()) return validate_spec_file(file);
    if (fam.empty()) throw UsageError(std::string("a spec source is required: --") + which + "family or --" + which + "spec-file");
    if (N < 1) throw UsageError("N must be >= 1");
    return family_spec(fam, N);
}

Direction direction_of(const std::string& d) { return d == "future" ? Direction::Future : Direction::Past; }

void add_spec_options(CLI::App* sub, Options& o) {
    sub->add_option("--family", o.family, "Built-in shift")->check(CLI::IsMember({"reset", "counter", "reset-rev", "union"}));
    sub->add_option("--N", o.N, "Number of terminal symbols of the built-in code")->check(CLI::PositiveNumber);
    sub->add_option("--spec-file", o.spec_file, "Code specification as JSON (see schema/codespec.schema.json)");
}

void add_config_options(CLI::App* sub, Options& o) {
    sub->add_option("--level", o.cfg.level, "Deepest lambda-graph level");
    sub->add_option("--horizon", o.cfg.horizon, "Longest probe word of the bounded certifications");
    sub->add_option("--window", o.cfg.window, "Consecutive agreeing steps required for stability");
    sub->add_option("--cutoff", o.cfg.cutoff, "Longest enumerated boundary or code word");
    sub->add_option("--seed", o.cfg.seed, "Seed of every sampled check");
    sub->add_option("--jobs", o.cfg.jobs, "Worker threads; never changes the output")->check(CLI::PositiveNumber);
}

void add_output_options(CLI::App* sub, Options& o, bool dot) {
    std::vector<std::string> formats{"json", "text"};
    if (dot) formats.push_back("dot");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember(formats));
    sub->add_option("--out", o.out, "Write the artifact to this file instead of stdout");
}

void add_direction_option(CLI::App* sub, Options& o) {
    sub->add_option("--direction", o.direction, "Lambda-graph system: past (the K-theory system) or future")
        ->check(CLI::IsMember({"past", "future"}));
}

json base_doc(const char* schema, const CodeSpec& spec) {
    return {{"schema", schema}, {"spec", spec_to_json(spec)}, {"name", spec.describe()}};
}

std::string group_str(const std::optional<FgAbelianGroup>& g) { return g ? g->str() : "unresolved"; }
json group_json(const std::optional<FgAbelianGroup>& g) { return g ? to_json(*g) : json(nullptr); }

// ---- subcommands ---------------------------------------------------------------------------

Output cmd_lang(const Options& o, const CodeSpec& spec) {
    SubshiftOracle oracle(spec);
    auto words = language(oracle, o.length);
    Output r;
    r.doc = base_doc("occ.lang/1", spec);
    json ws = json::array();
    std::ostringstream os;
    for (const auto& w : words) {
        ws.push_back(oracle.alphabet().str(w));
        os << oracle.alphabet().str(w) << "\n";
    }
    r.doc["length"] = o.length;
    r.doc["count"] = words.size();
    r.doc["words"] = ws;
    r.text = os.str();
    return r;
}

Output cmd_sync(const Options& o, const CodeSpec& spec) {
    SubshiftOracle oracle(spec);
    const auto& a = oracle.alphabet();
    Output r;
    r.doc = base_doc("occ.sync/1", spec);
    std::ostringstream os;
    try {
        auto ss = synchronizing_symbols(oracle, o.cfg);
        json syms = json::array();
        for (auto s : ss.symbols) syms.push_back(a.name(s));
        r.doc["synchronizing_symbols"] = {{"symbols", syms}, {"certainty", to_json(ss.certainty, a)}};
        os << "synchronizing symbols: " << syms.dump() << " (" << to_string(ss.certainty.verdict) << ")\n";
        if (ss.certainty.verdict == Verdict::Unknown) r.unresolved.push_back("synchronizing_symbols: unknown");
    } catch (const Error& e) {
        r.doc["synchronizing_symbols"] = nullptr;
        r.unresolved.push_back(std::string("synchronizing_symbols: ") + e.what());
    }
    try {
        auto pair = characteristic_pair(oracle, o.cfg);
        auto reset = reset_analysis(oracle, pair, o.cfg);
        r.doc["pair"] = to_json(pair, a);
        r.doc["reset"] = to_json(reset, a);
        os << "characteristic pair: (" << a.name(pair.alpha_minus) << ", " << a.name(pair.alpha_plus) << ")\n"
           << "c_X: " << a.str(pair.c_X) << "\n"
           << "reset: " << to_string(reset.has_reset.verdict) << "\n"
           << "reset condition: " << to_string(reset.reset_condition.verdict) << "\n";
        for (auto [n, c] : {std::pair{"has_reset", &reset.has_reset}, std::pair{"reset_condition", &reset.reset_condition},
                            std::pair{"condition_a", &pair.condition_a}, std::pair{"condition_b", &pair.condition_b}})
            if (c->verdict == Verdict::Unknown) r.unresolved.push_back(std::string(n) + ": unknown");
    } catch (const Error& e) {
        r.doc["pair"] = nullptr;
        r.doc["reset"] = nullptr;
        r.unresolved.push_back(std::string("pair: ") + e.what());
    }
    r.text = os.str();
    return r;
}

std::string graph_text(const LambdaGraphSystem& g) {
    std::ostringstream os;
    os << g.spec.describe() << ", " << to_string(g.direction) << " lambda-graph system (" << g.ordering << ")\n";
    for (std::size_t l = 0; l <= g.top(); ++l) {
        const auto& lv = g.levels[l];
        os << "level " << l << ": " << lv.vertices.size() << " vertices\n";
        for (const auto& v : lv.vertices) {
            os << "  v" << v.index << "  " << g.alphabet.str(v.representative);
            if (l > 0) os << "  iota -> v" << lv.iota[v.index - 1];
            os << "\n";
        }
        for (const auto& e : lv.edges)
            os << "  v" << e.source << "^" << l << " -" << g.alphabet.name(e.label) << "-> v" << e.target << "^" << l + 1
               << "\n";
    }
    return os.str();
}

Output cmd_graph(const Options& o, const CodeSpec& spec) {
    auto g = build(SubshiftOracle(spec), direction_of(o.direction), o.cfg.level, o.cfg);
    verify_structure(g);
    Output r;
    r.doc = graph_json(g);
    r.text = o.format == "dot" ? to_dot(g) : graph_text(g);
    return r;
}

std::string matrix_text(const IntMatrix& m) {
    std::ostringstream os;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << "   ";
        for (std::size_t j = 0; j < m.cols(); ++j) os << " " << std::setw(3) << m(i, j).get_str();
        os << "\n";
    }
    return os.str();
}

Output cmd_matrices(const Options& o, const CodeSpec& spec) {
    auto g = build(SubshiftOracle(spec), direction_of(o.direction), o.cfg.level + 1, o.cfg);
    auto ms = matrix_systems(g);
    Output r;
    r.doc = matrices_json(g, ms);
    std::ostringstream os;
    for (std::size_t l = 0; l <= o.cfg.level; ++l) {
        os << "level " << l << ": M is " << g.m(l) << " x " << g.m(l + 1) << "\n  M:\n";
        for (std::size_t i = 1; i <= g.m(l); ++i) {
            os << "   ";
            for (std::size_t j = 1; j <= g.m(l + 1); ++j) os << " " << ms.symbolic.entry(l, i, j, g.alphabet);
            os << "\n";
        }
        os << "  I:\n" << matrix_text(ms.nonneg.Il(l)) << "  M^t - I^t:\n" << matrix_text(ms.nonneg.MtminusIt(l));
    }
    r.text = os.str();
    return r;
}

struct KResult {
    KGroups k;
    std::vector<std::string> unresolved;
};

KResult compute_k(const Options& o, const CodeSpec& spec) {
    KResult kr;
    try {
        auto g = build(SubshiftOracle(spec), direction_of(o.direction), o.cfg.level, o.cfg);
        kr.k = k_groups(matrix_systems(g).nonneg, o.cfg.window);
        if (!kr.k.K0) kr.unresolved.push_back("K0: not stabilized through level " + std::to_string(o.cfg.level));
        if (!kr.k.K1) kr.unresolved.push_back("K1: not stabilized through level " + std::to_string(o.cfg.level));
    } catch (const NotStabilized& e) {
        kr.unresolved.push_back(std::string("graph: ") + e.what());
    }
    return kr;
}

Output cmd_kgroups(const Options& o, const CodeSpec& spec) {
    auto kr = compute_k(o, spec);
    Output r;
    r.unresolved = kr.unresolved;
    r.doc = base_doc("occ.kgroups/1", spec);
    r.doc["direction"] = o.direction;
    r.doc["K0"] = group_json(kr.k.K0);
    r.doc["K1"] = group_json(kr.k.K1);
    auto sf = [](const DirectLimitTrace& t) { return t.stable_from ? json(*t.stable_from) : json(nullptr); };
    r.doc["stable_from"] = {{"K0", sf(kr.k.trace0)}, {"K1", sf(kr.k.trace1)}};
    r.doc["lag"] = {{"K0", kr.k.trace0.lag}, {"K1", kr.k.trace1.lag}};
    r.doc["window"] = o.cfg.window;
    r.text = "K0 = " + group_str(kr.k.K0) + "\nK1 = " + group_str(kr.k.K1) + "\n";
    return r;
}

Output cmd_bf(const Options& o, const CodeSpec& spec) {
    auto kr = compute_k(o, spec);
    Output r;
    r.unresolved = kr.unresolved;
    r.doc = base_doc("occ.bf/1", spec);
    r.doc["direction"] = o.direction;
    if (kr.k.resolved()) {
        auto bf = bowen_franks(*kr.k.K0, *kr.k.K1);
        r.doc["BF0"] = to_json(bf.BF0);
        r.doc["BF1"] = to_json(bf.BF1);
        r.doc["reference_BF1"] = group_json(bf.reference_BF1);
        r.doc["note"] = bf.note;
        r.text = "BF0 = " + bf.BF0.str() + "\nBF1 = " + bf.BF1.str() + "\n";
        if (bf.reference_BF1) r.text += "reference BF1 = " + bf.reference_BF1->str() + "\n";
        r.text += "note: " + bf.note + "\n";
    } else {
        r.doc["BF0"] = r.doc["BF1"] = r.doc["reference_BF1"] = nullptr;
        r.doc["note"] = "requires both K-groups";
        r.text = "BF0 = unresolved\nBF1 = unresolved\n";
    }
    return r;
}

Output cmd_simplicity(const Options& o, const CodeSpec& spec) {
    SubshiftOracle oracle(spec);
    Output r;
    r.doc = base_doc("occ.simplicity/1", spec);
    std::ostringstream os;
    std::vector<GraphSummary> gs(2);
    auto one = [&](Direction d, std::vector<std::string>& u) { return graph_summary(oracle, d, o.cfg, u); };
    std::vector<std::string> uf, up;
    if (o.cfg.jobs > 1) {
        auto f = std::async(std::launch::async, [&] { return one(Direction::Future, uf); });
        gs[1] = one(Direction::Past, up);
        gs[0] = f.get();
    } else {
        gs[0] = one(Direction::Future, uf);
        gs[1] = one(Direction::Past, up);
    }
    r.unresolved = uf;
    r.unresolved.insert(r.unresolved.end(), up.begin(), up.end());
    for (const auto& g : gs) {
        auto d = to_string(g.direction);
        r.doc[d] = g.simplicity ? to_json(*g.simplicity) : json{{"verdict", "unknown"}, {"reason", g.error}};
        os << d << ": " << (g.simplicity ? to_string(g.simplicity->verdict) + " (" + g.simplicity->reason + ")" : g.error)
           << "\n";
    }
    r.text = os.str();
    return r;
}

Output cmd_report(const Options& o, const CodeSpec& spec) {
    auto rep = full_report(spec, o.cfg);
    return {to_json(rep), to_text(rep), rep.unresolved};
}

Output cmd_compare(const Options& o, const CodeSpec& spec) {
    CodeSpec other;
    if (o.against_reverse) {
        if (!o.other_family.empty() || !o.other_spec_file.empty())
            throw UsageError("--against-reverse excludes --other-family and --other-spec-file");
        other = transform(spec, Transform::reverse());
    } else {
        other = spec_from(o.other_family, o.other_N, o.other_spec_file, "other-");
    }
    InvariantReport a, b;
    if (o.cfg.jobs > 1) {
        auto f = std::async(std::launch::async, [&] { return full_report(spec, o.cfg); });
        b = full_report(other, o.cfg);
        a = f.get();
    } else {
        a = full_report(spec, o.cfg);
        b = full_report(other, o.cfg);
    }
    auto v = compare(a, b);
    Output r;
    r.doc = to_json(v);
    r.doc["first"] = {{"name", spec.describe()}, {"spec", spec_to_json(spec)}};
    r.doc["second"] = {{"name", other.describe()}, {"spec", spec_to_json(other)}};
    std::ostringstream os;
    os << (v.distinguished ? "distinguished: " : "not distinguished: ") << v.reason << "\n";
    for (const auto& c : v.caveats) os << "caveat: " << c << "\n";
    r.text = os.str();
    // Only a verdict that rests on unresolved invariants is partial.
    if (!v.distinguished)
        for (const auto& c : v.caveats) r.unresolved.push_back("compare: " + c);
    return r;
}

Output cmd_fixtures(const Options& o) {
    if (o.family != "reset" && o.family != "reset-rev") throw UsageError("fixtures needs --family reset or reset-rev");
    auto fam = family_from_string(o.family);
    auto b = closed_form_fixtures(fam, o.N, o.cfg.level);
    auto rep = crosscheck_items(fam, o.N, o.cfg.level, o.cfg);
    Output r;
    r.doc = to_json(b);
    r.doc["crosscheck"] = to_json(rep);
    std::ostringstream os;
    os << o.family << ", N = " << o.N << ", l = " << o.cfg.level << "\nM^t - I^t:\n"
       << matrix_text(b.MtminusIt) << "B:\n" << matrix_text(b.B) << "J:\n" << matrix_text(b.J);
    for (const auto& i : rep.items)
        os << (i.applicable ? (i.passed ? "pass " : "FAIL ") : "n/a  ") << i.name << ": " << i.detail << "\n";
    r.text = os.str();
    return r;
}

// Builds the parser; `o` receives the parsed values.
std::unique_ptr<CLI::App> make_app(Options& o) {
    auto app = std::make_unique<CLI::App>("Invariants of subshifts presented by one-counter codes", "occ");
    app->require_subcommand(1);
    app->set_help_all_flag("--help-all", "Print the help of every subcommand and exit");
    app->option_defaults()->always_capture_default();
    const std::map<std::string, std::string> about{
        {"lang", "List the admissible words of one length"},
        {"sync", "Synchronizing symbols, characteristic pair and reset analysis"},
        {"graph", "Lambda-graph system with vertices, edges and iota"},
        {"matrices", "Matrix system M, I and M^t - I^t for levels 0..--level"},
        {"kgroups", "K0 and K1 as direct limits over the lambda-graph levels"},
        {"bf", "Bowen-Franks groups from the K-groups"},
        {"simplicity", "Hereditary-subset search and simplicity verdicts in both directions"},
        {"report", "Every invariant of one shift"},
        {"compare", "Flow-equivalence distinguishers between two shifts"},
        {"fixtures", "Closed-form matrices of the reset families at level --level with cross-checks"}};
    for (const auto& name : kSubcommands) {
        auto* sub = app->add_subcommand(name, about.at(name));
        if (name == "fixtures") {
            sub->add_option("--family", o.family, "Closed-form family")->check(CLI::IsMember({"reset", "reset-rev"}));
            sub->add_option("--N", o.N, "Number of terminal symbols")->check(CLI::PositiveNumber);
        } else {
            add_spec_options(sub, o);
        }
        add_config_options(sub, o);
        add_output_options(sub, o, name == "graph");
        if (name == "lang") sub->add_option("--length", o.length, "Word length");
        if (name == "graph" || name == "matrices" || name == "kgroups" || name == "bf") add_direction_option(sub, o);
        if (name == "compare") {
            sub->add_flag("--against-reverse", o.against_reverse, "Compare with the reversed shift");
            sub->add_option("--other-family", o.other_family, "Built-in second shift")
                ->check(CLI::IsMember({"reset", "counter", "reset-rev", "union"}));
            sub->add_option("--other-N", o.other_N, "N of the second built-in shift")->check(CLI::PositiveNumber);
            sub->add_option("--other-spec-file", o.other_spec_file, "Second shift as a JSON code specification");
        }
    }
    return app;
}

void emit(const Output& r, const Options& o, std::ostream& out) {
    std::string body;
    if (o.format == "json") {
        json doc = r.doc;
        if (!r.unresolved.empty()) doc["unresolved"] = r.unresolved;
        body = doc.dump(2) + "\n";
    } else {
        body = r.text;
        for (const auto& u : r.unresolved) body += "unresolved: " + u + "\n";
    }
    if (o.out.empty()) {
        out << body;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw UsageError("cannot write " + o.out);
    f << body;
}

}  // namespace

std::string help_text() {
    Options o;
    auto app = make_app(o);
    std::string s = app->help();
    for (const auto& name : kSubcommands) s += "\n" + app->get_subcommand(name)->help();
    return s;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    auto app = make_app(o);
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app->parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app->help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << help_text();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        // Subcommand help requests surface here with a zero exit code.
        if (e.get_exit_code() == 0) {
            for (auto* sub : app->get_subcommands()) out << sub->help();
            return kExitOk;
        }
        err << "occ: " << e.what() << "\n" << "run 'occ --help' for usage\n";
        return kExitUsage;
    }
    const std::string cmd = app->get_subcommands().front()->get_name();
    try {
        if (o.format == "dot" && cmd != "graph") throw UsageError("--format dot applies to graph only");
        Output r;
        if (cmd == "fixtures") {
            r = cmd_fixtures(o);
        } else {
            CodeSpec spec = spec_from(o.family, o.N, o.spec_file, "");
            if (cmd == "lang") r = cmd_lang(o, spec);
            else if (cmd == "sync") r = cmd_sync(o, spec);
            else if (cmd == "graph") r = cmd_graph(o, spec);
            else if (cmd == "matrices") r = cmd_matrices(o, spec);
            else if (cmd == "kgroups") r = cmd_kgroups(o, spec);
            else if (cmd == "bf") r = cmd_bf(o, spec);
            else if (cmd == "simplicity") r = cmd_simplicity(o, spec);
            else if (cmd == "report") r = cmd_report(o, spec);
            else r = cmd_compare(o, spec);
        }
        emit(r, o, out);
        if (cmd == "fixtures" && !r.doc["crosscheck"]["passed"].get<bool>()) {
            err << "occ: fixture cross-check failed\n";
            return kExitFailure;
        }
        return r.unresolved.empty() ? kExitOk : kExitUnresolved;
    } catch (const UsageError& e) {
        err << "occ: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "occ: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SchemaError& e) {
        err << "occ: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UnsupportedLevel& e) {
        err << "occ: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NotStabilized& e) {
        // Partial outcome with nothing to show but the gap.
        emit({json{{"schema", "occ.unresolved/1"}}, "", {cmd + ": " + e.what()}}, o, out);
        return kExitUnresolved;
    } catch (const Error& e) {
        err << "occ: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace occ::cli
