#include "occ/spec_json.hpp"

#include <fstream>
#include <sstream>

#include "occ/errors.hpp"

namespace occ {

using nlohmann::json;

namespace {

const char* variant_name(CodeSpec::Kind k) {
    switch (k) {
        case CodeSpec::Kind::Reset: return "BuiltinReset";
        case CodeSpec::Kind::Counter: return "BuiltinCounter";
        case CodeSpec::Kind::Union: return "Union";
        case CodeSpec::Kind::Reversed: return "Reversed";
        case CodeSpec::Kind::HigherBlock: return "HigherBlock";
        case CodeSpec::Kind::Expand: return "ExpandSymbol";
        case CodeSpec::Kind::Markov: return "ExplicitMarkov";
    }
    return "?";
}

json body(const CodeSpec& s) {
    json j{{"variant", variant_name(s.kind)}};
    switch (s.kind) {
        case CodeSpec::Kind::Reset:
        case CodeSpec::Kind::Counter: j["N"] = s.N; break;
        case CodeSpec::Kind::Union: {
            j["parts"] = json::array();
            for (const auto& p : s.parts) j["parts"].push_back(body(p));
            break;
        }
        case CodeSpec::Kind::Reversed: j["base"] = body(s.base()); break;
        case CodeSpec::Kind::HigherBlock:
            j["base"] = body(s.base());
            j["n"] = s.n;
            break;
        case CodeSpec::Kind::Expand:
            j["base"] = body(s.base());
            j["sigma"] = s.sigma;
            j["sigma_new"] = s.sigma_new;
            break;
        case CodeSpec::Kind::Markov: {
            const auto& m = s.markov;
            j["symbols"] = m.symbols;
            j["words"] = m.words;
            j["gamma"] = m.gamma;
            j["s"] = m.s;
            j["t"] = m.t;
            j["A"] = m.A;
            break;
        }
    }
    return j;
}

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw SchemaError((path.empty() ? "/" : path) + ": " + msg);
}

const json& field(const json& j, const std::string& path, const char* key) {
    if (!j.contains(key)) fail(path, std::string("missing field \"") + key + "\"");
    return j.at(key);
}

template <class T>
T typed(const json& j, const std::string& path, const char* what) {
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        fail(path, std::string("expected ") + what);
    }
}

void only(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = it.key() == "variant" || it.key() == "schema";
        for (const char* k : keys) known = known || it.key() == k;
        if (!known) fail(path + "/" + it.key(), "unknown field");
    }
}

CodeSpec read(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    auto variant = typed<std::string>(field(j, path, "variant"), path + "/variant", "a string");
    auto count = [&](const char* key, int lo, const std::string& msg) {
        auto v = typed<long long>(field(j, path, key), path + "/" + key, "an integer");
        if (v < lo) fail(path + "/" + key, msg);
        return static_cast<int>(v);
    };
    auto sub = [&](const char* key) { return read(field(j, path, key), path + "/" + key); };
    if (variant == "BuiltinReset" || variant == "BuiltinCounter") {
        only(j, path, {"N"});
        int N = count("N", 1, "N must be ≥ 1");
        return variant == "BuiltinReset" ? CodeSpec::reset(N) : CodeSpec::counter(N);
    }
    if (variant == "Union") {
        only(j, path, {"parts"});
        const json& parts = field(j, path, "parts");
        if (!parts.is_array() || parts.empty()) fail(path + "/parts", "expected a nonempty array");
        std::vector<CodeSpec> ps;
        for (std::size_t i = 0; i < parts.size(); ++i) ps.push_back(read(parts[i], path + "/parts/" + std::to_string(i)));
        return CodeSpec::unite(ps);
    }
    if (variant == "Reversed") {
        only(j, path, {"base"});
        return CodeSpec::reversed(sub("base"));
    }
    if (variant == "HigherBlock") {
        only(j, path, {"base", "n"});
        return CodeSpec::higher_block(sub("base"), count("n", 2, "n must be ≥ 2"));
    }
    if (variant == "ExpandSymbol") {
        only(j, path, {"base", "sigma", "sigma_new"});
        auto sigma = typed<std::string>(field(j, path, "sigma"), path + "/sigma", "a string");
        std::string fresh;
        if (j.contains("sigma_new")) fresh = typed<std::string>(j["sigma_new"], path + "/sigma_new", "a string");
        return CodeSpec::expand(sub("base"), sigma, fresh);
    }
    if (variant == "ExplicitMarkov") {
        only(j, path, {"symbols", "words", "gamma", "s", "t", "A"});
        MarkovCode m;
        m.symbols = typed<std::vector<std::string>>(field(j, path, "symbols"), path + "/symbols", "a list of strings");
        m.words = typed<std::vector<std::vector<std::string>>>(field(j, path, "words"), path + "/words",
                                                                "a list of symbol lists");
        if (j.contains("gamma")) {
            m.gamma = typed<std::vector<std::string>>(j["gamma"], path + "/gamma", "a list of strings");
            m.s = typed<std::vector<std::vector<std::size_t>>>(field(j, path, "s"), path + "/s", "a list of index lists");
            m.t = typed<std::vector<std::vector<std::size_t>>>(field(j, path, "t"), path + "/t", "a list of index lists");
            m.A = typed<std::vector<std::vector<int>>>(field(j, path, "A"), path + "/A", "a 0/1 matrix");
        } else {
            m = MarkovCode::plain(m.symbols, m.words);
        }
        for (std::size_t i = 0; i < m.words.size(); ++i)
            if (m.words[i].empty()) fail(path + "/words/" + std::to_string(i), "code words must be nonempty");
        try {
            return CodeSpec::explicit_markov(m);
        } catch (const MalformedSpec& e) {
            fail(path, e.what());
        }
    }
    fail(path + "/variant", "unknown variant \"" + variant + "\"");
}

}  // namespace

json spec_to_json(const CodeSpec& spec) {
    json j = body(spec);
    j["schema"] = kSpecSchema;
    return j;
}

CodeSpec spec_from_json(const json& j) {
    if (j.is_object() && j.contains("schema") && j["schema"] != kSpecSchema)
        fail("/schema", "unsupported schema " + j["schema"].dump());
    CodeSpec s = read(j, "");
    try {
        spec_alphabet(s);
    } catch (const MalformedSpec& e) {
        fail("", e.what());
    }
    return s;
}

CodeSpec parse_spec(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
    }
    return spec_from_json(j);
}

CodeSpec validate_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_spec(ss.str());
}

}  // namespace occ
