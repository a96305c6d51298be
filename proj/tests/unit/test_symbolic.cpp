#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "occ/errors.hpp"
#include "occ/spec_json.hpp"
#include "occ/symbolic.hpp"

using namespace occ;

namespace {

std::set<std::string> names(const Alphabet& a, const std::vector<Word>& ws) {
    std::set<std::string> out;
    for (const auto& w : ws) out.insert(a.str(w));
    return out;
}

CodeSpec full2() { return CodeSpec::full_shift({"0", "1"}); }

}  // namespace

TEST_CASE("decide on the counter code") {
    SubshiftOracle o(CodeSpec::counter(1));
    CHECK_FALSE(o.decide(o.alphabet().parse("α_+ α_-")));
    CHECK(o.decide(o.alphabet().parse("α_- α_+ α_+ b_1")));
    CHECK(o.decide({}));
    CHECK(o.decide(o.alphabet().parse("alpha_- alpha_- alpha_+ alpha_+ b_1")));
    CHECK(o.decide(o.alphabet().parse("α_- α_+ α_+ α_+ b_1")));
    CHECK_FALSE(o.decide(o.alphabet().parse("α_- α_+ α_+ b_1 α_+")));
    CHECK_FALSE(o.decide(o.alphabet().parse("b_1 α_- α_+ α_+")));
}

TEST_CASE("language examples") {
    CHECK(language(SubshiftOracle(full2()), 2).size() == 4);
    SubshiftOracle r(CodeSpec::reset(1));
    CHECK(names(r.alphabet(), language(r, 1)) == std::set<std::string>{"α_-", "α_+", "a_1"});
    SubshiftOracle c(CodeSpec::counter(1));
    CHECK(names(c.alphabet(), language(c, 2)) ==
          std::set<std::string>{"α_- α_-", "α_- α_+", "α_+ α_+", "α_+ b_1", "b_1 α_-"});
    CHECK(language(c, 0) == std::vector<Word>{Word{}});
    auto l5 = language(c, 5);
    CHECK(std::is_sorted(l5.begin(), l5.end(), length_lex_less));
}

TEST_CASE("extender set examples") {
    SubshiftOracle rr(CodeSpec::reversed(CodeSpec::reset(1)));
    CHECK(names(rr.alphabet(), extender_set(rr, rr.alphabet().parse("a_1"), 1, Direction::Future)) ==
          std::set<std::string>{"α_+"});
    SubshiftOracle c(CodeSpec::counter(1));
    CHECK(names(c.alphabet(), extender_set(c, c.alphabet().parse("b_1"), 1, Direction::Past)) ==
          std::set<std::string>{"α_+"});
    SubshiftOracle f(full2());
    CHECK(extender_set(f, f.alphabet().parse("0 1"), 3, Direction::Future).size() == 8);
    CHECK_THROWS_AS(extender_set(c, c.alphabet().parse("α_+ α_-"), 1, Direction::Future), InadmissibleWord);
}

TEST_CASE("extender sets agree with decide") {
    for (const auto& spec : {CodeSpec::reset(2), CodeSpec::counter(1), CodeSpec::reversed(CodeSpec::reset(1))}) {
        SubshiftOracle o(spec);
        for (std::size_t la = 0; la <= 4; ++la)
            for (const auto& a : language(o, la))
                for (std::size_t l = 1; l <= 3; ++l) {
                    auto fut = extender_set(o, a, l, Direction::Future);
                    auto past = extender_set(o, a, l, Direction::Past);
                    std::vector<Word> ef, ep;
                    for (const auto& b : language(o, l)) {
                        Word ab = a, ba = b;
                        ab.insert(ab.end(), b.begin(), b.end());
                        ba.insert(ba.end(), a.begin(), a.end());
                        if (o.decide(ab)) ef.push_back(b);
                        if (o.decide(ba)) ep.push_back(b);
                    }
                    CHECK(fut == ef);
                    CHECK(past == ep);
                }
    }
}

TEST_CASE("expansion examples") {
    CodeSpec e = transform(full2(), Transform::expand("0", "0'"));
    SubshiftOracle o(e);
    CHECK_FALSE(o.decide(o.alphabet().parse("0 1 0 0'")));
    CHECK(o.decide(o.alphabet().parse("0 0' 1 0")));
    CHECK(o.decide(o.alphabet().parse("0' 1 0")));
    CHECK_FALSE(o.decide(o.alphabet().parse("1 0' 1")));
    CHECK_THROWS_AS(transform(full2(), Transform::expand("0", "1")), MalformedSpec);
    CHECK_THROWS_AS(transform(full2(), Transform::expand("7", "")), MalformedSpec);
}

TEST_CASE("oracle agrees with brute force up to length 10") {
    std::vector<CodeSpec> specs;
    for (int N = 1; N <= 3; ++N) {
        specs.push_back(CodeSpec::reset(N));
        specs.push_back(CodeSpec::counter(N));
        specs.push_back(CodeSpec::unite({CodeSpec::reset(N), CodeSpec::counter(N)}));
    }
    specs.push_back(CodeSpec::reversed(CodeSpec::reset(2)));
    specs.push_back(CodeSpec::reversed(CodeSpec::counter(2)));
    for (const auto& spec : specs) {
        CAPTURE(spec.describe());
        SubshiftOracle o(spec);
        BruteForceOracle b(spec, 10);
        REQUIRE(o.alphabet() == b.alphabet());
        // Both are factor closed, so equal languages at every length means equal decisions everywhere.
        for (std::size_t n = 0; n <= 10; ++n) {
            CAPTURE(n);
            CHECK(language(o, n) == b.language(n));
        }
    }
}

TEST_CASE("transformed specs agree with brute force") {
    std::vector<CodeSpec> specs = {
        CodeSpec::higher_block(CodeSpec::reset(1), 2),
        CodeSpec::higher_block(CodeSpec::counter(1), 3),
        CodeSpec::reversed(CodeSpec::higher_block(CodeSpec::reset(2), 2)),
        CodeSpec::expand(CodeSpec::reset(2), "a_1", ""),
        CodeSpec::expand(CodeSpec::counter(2), "α_-", ""),
        CodeSpec::reversed(CodeSpec::expand(CodeSpec::reset(1), "α_+", "")),
        CodeSpec::expand(CodeSpec::higher_block(CodeSpec::counter(1), 2), "[b_1.α_-]", ""),
    };
    for (const auto& spec : specs) {
        CAPTURE(spec.describe());
        SubshiftOracle o(spec);
        BruteForceOracle b(spec, 8);
        REQUIRE(o.alphabet() == b.alphabet());
        for (std::size_t n = 0; n <= 8; ++n) CHECK(language(o, n) == b.language(n));
    }
}

TEST_CASE("explicit Markov codes agree with brute force") {
    MarkovCode m;
    m.symbols = {"x", "y", "z"};
    m.words = {{"x"}, {"y", "y"}, {"z", "x", "y"}, {"y", "z"}};
    m.gamma = {"p", "q", "r"};
    m.s = {{0}, {1}, {0, 2}, {1}};
    m.t = {{1}, {0}, {2}, {2}};
    m.A = {{0, 1, 0}, {1, 0, 0}, {1, 0, 1}};
    for (const auto& spec : {CodeSpec::explicit_markov(m), CodeSpec::reversed(CodeSpec::explicit_markov(m)),
                             CodeSpec::unite({CodeSpec::explicit_markov(m), CodeSpec::reset(1)})}) {
        CAPTURE(spec.describe());
        SubshiftOracle o(spec);
        BruteForceOracle b(spec, 9);
        for (std::size_t n = 0; n <= 9; ++n) CHECK(language(o, n) == b.language(n));
    }
}

TEST_CASE("brute force oracle basics") {
    BruteForceOracle b = brute_force_oracle(CodeSpec::reset(2), 6);
    CHECK(b.decide({}));
    CHECK(b.decide(b.alphabet().parse("α_- α_- α_+ a_2")));
    CHECK_THROWS_AS(b.decide(Word(7, 0)), WordTooLong);
}

TEST_CASE("factor closure and extendability") {
    for (const auto& spec : {CodeSpec::reset(2), CodeSpec::counter(2), CodeSpec::reversed(CodeSpec::counter(1))}) {
        SubshiftOracle o(spec);
        for (const auto& w : language(o, 10)) {
            for (std::size_t i = 0; i < w.size(); ++i)
                for (std::size_t j = i; j <= w.size(); ++j) REQUIRE(o.decide(Word(w.begin() + i, w.begin() + j)));
        }
        for (const auto& w : language(o, 7)) {
            bool left = false, right = false;
            for (Sym a = 0; a < o.alphabet().size(); ++a) {
                Word l = w, r = w;
                l.insert(l.begin(), a);
                r.push_back(a);
                left = left || o.decide(l);
                right = right || o.decide(r);
            }
            CHECK(left);
            CHECK(right);
        }
    }
}

TEST_CASE("reversal duality") {
    for (const auto& spec : {CodeSpec::reset(2), CodeSpec::counter(1),
                             CodeSpec::unite({CodeSpec::reset(1), CodeSpec::counter(1)})}) {
        SubshiftOracle o(spec), r = o.reverse();
        CHECK(r.reverse().spec() == spec);
        for (std::size_t n = 0; n <= 8; ++n) {
            std::vector<Word> rev;
            for (const auto& w : language(o, n)) rev.push_back(reversed(w));
            std::sort(rev.begin(), rev.end(), length_lex_less);
            CHECK(language(r, n) == rev);
        }
    }
}

TEST_CASE("higher block counting") {
    for (const auto& base : {CodeSpec::reset(1), CodeSpec::counter(2)})
        for (int n : {2, 3}) {
            SubshiftOracle b(base), h(CodeSpec::higher_block(base, n));
            for (std::size_t k = 1; k <= 6; ++k) CHECK(language(h, k).size() == language(b, k + n - 1).size());
        }
}

TEST_CASE("spec json round trip") {
    MarkovCode m = MarkovCode::plain({"x", "y"}, {{"x"}, {"x", "y"}});
    std::vector<CodeSpec> specs = {
        CodeSpec::reset(3),
        CodeSpec::reversed(CodeSpec::counter(2)),
        CodeSpec::unite({CodeSpec::reset(1), CodeSpec::counter(1)}),
        CodeSpec::higher_block(CodeSpec::reset(2), 3),
        CodeSpec::expand(CodeSpec::reset(1), "a_1", ""),
        CodeSpec::explicit_markov(m),
    };
    for (const auto& s : specs) {
        auto j = spec_to_json(s);
        CHECK(j["schema"] == kSpecSchema);
        CHECK(parse_spec(j.dump()) == s);
    }
    CHECK(parse_spec(R"({"variant":"BuiltinReset","N":3})") == CodeSpec::reset(3));
}

TEST_CASE("spec json diagnostics") {
    auto message = [](const std::string& text) {
        try {
            parse_spec(text);
        } catch (const Error& e) {
            return e.kind() + " " + e.what();
        }
        return std::string("ok");
    };
    CHECK(message(R"({"variant":"BuiltinReset","N":0})").find("SchemaError") == 0);
    CHECK(message(R"({"variant":"BuiltinReset","N":0})").find("N must be ≥ 1") != std::string::npos);
    CHECK(message(R"({"variant":"Reversed","base":{"variant":"BuiltinCounter","N":-2}})").find("/base/N") !=
          std::string::npos);
    CHECK(message(R"({"variant":"ExplicitMarkov","symbols":["x"],"words":[["x"],[]]})").find("/words/1") !=
          std::string::npos);
    CHECK(message("{\n  \"variant\": \"BuiltinReset\",\n  \"N\": }").find("ParseError ParseError: line 3") == 0);
    CHECK(message(R"({"variant":"Nope"})").find("unknown variant") != std::string::npos);
    CHECK(message(R"({"variant":"BuiltinReset","N":1,"M":2})").find("/M") != std::string::npos);
}
