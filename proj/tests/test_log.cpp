#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "synabs/io.hpp"
#include "synabs/log.hpp"
#include "synabs/semantics.hpp"

using namespace synabs;

TEST_CASE("event log multiset") {
    EventLog log;
    log.add(Word{"a", "b"});
    log.add(Word{"a", "c"}, 3);
    log.add(Word{"a", "b"}, 2);
    CHECK(log.entries().size() == 2);
    CHECK(log.num_traces() == 6);
    CHECK(log.total_events() == 12);
    CHECK(log.count({"a", "b"}) == 3);
    CHECK(log.count({"b"}) == 0);
    CHECK(log.alphabet() == std::set<std::string>{"a", "b", "c"});
    CHECK(render_word(word_of(log.entries()[0].trace)) == "<a,b>");
    CHECK(log_metrics(log) == LogMetrics{6, 12});
}

TEST_CASE("attribute identity") {
    Trace t1{{"a", {{"k", "1"}}}};
    Trace t2{{"a", {{"k", "2"}}}};
    EventLog plain;
    plain.add(t1);
    plain.add(t2);
    CHECK(plain.entries().size() == 1);
    CHECK(plain.num_traces() == 2);

    EventLog attr(true);
    attr.add(t1);
    attr.add(t2);
    CHECK(attr.entries().size() == 2);
    CHECK(attr.variants().size() == 1);
    CHECK(attr.same_multiset(plain));
}

TEST_CASE("merge sums multiplicities") {
    EventLog a = log_of({{{"x"}, 2}, {{"y", "z"}, 1}});
    EventLog b = log_of({{{"y", "z"}, 4}});
    a.merge(b);
    CHECK(a.count({"y", "z"}) == 5);
    CHECK(a.num_traces() == 7);
}

TEST_CASE("directly-follows graph") {
    EventLog log = log_of({{{"a", "b", "c"}, 1}, {{"a", "c"}, 1}});
    Dfg g = dfg_of_log(log);
    CHECK(g.activities() == std::set<std::string>{"a", "b", "c"});
    CHECK(g.has(kStart, "a"));
    CHECK(g.has("a", "b"));
    CHECK(g.has("a", "c"));
    CHECK(g.has("c", kEnd));
    CHECK_FALSE(g.has("b", "a"));
    CHECK(g.starts() == std::set<std::string>{"a"});
    CHECK(g.ends() == std::set<std::string>{"c"});
    CHECK(g.edges.size() == 5);

    EventLog empty_trace = log_of({{{}, 1}});
    CHECK(dfg_of_log(empty_trace).has(kStart, kEnd));
}

TEST_CASE("df-completeness against a model") {
    ProcessTree m = parse_tree("seq(a,and(b,c))");
    CHECK(df_complete(log_of({{{"a", "b", "c"}, 1}, {{"a", "c", "b"}, 1}}), m));
    CHECK_FALSE(df_complete(log_of({{{"a", "b", "c"}, 1}}), m));
    CHECK(dfg_of_model(m) == dfg_of_log(minimal_log(m)));
}

TEST_CASE("bag sorts labels") {
    CHECK(bag({"c", "a", "b", "a"}) == Word{"a", "a", "b", "c"});
    CHECK(bag({}).empty());
}

TEST_CASE("csv round-trip keeps multiplicities and attributes") {
    EventLog log(true);
    log.add(Trace{{"a", {}}, {"b", {{"who", "x,y"}}}}, 2);
    log.add(Trace{{"c", {{"note", "say \"hi\""}}}});
    std::stringstream ss;
    write_csv(ss, log);
    EventLog back = read_csv(ss, true);
    CHECK(back.num_traces() == 3);
    CHECK(back.entries().size() == 2);
    CHECK(back.entries()[0].trace == log.entries()[0].trace);
    CHECK(back.entries()[1].trace[0].attributes.at("note") == "say \"hi\"");
}

TEST_CASE("csv orders by timestamp and groups by case") {
    std::stringstream ss("case,activity,timestamp\n1,b,2\n2,x,1\n1,a,1\n\n2,y,2\n");
    EventLog log = read_csv(ss);
    CHECK(log.count({"a", "b"}) == 1);
    CHECK(log.count({"x", "y"}) == 1);
    CHECK(word_of(log.entries()[0].trace) == Word{"a", "b"});
}

TEST_CASE("csv errors") {
    std::stringstream none("");
    CHECK_THROWS_AS(read_csv(none), FormatError);
    std::stringstream header("id,act\n1,a\n");
    CHECK_THROWS_AS(read_csv(header), FormatError);
    std::stringstream ragged("case,activity\n1,a,z\n");
    try {
        read_csv(ragged);
        FAIL("no error");
    } catch (const FormatError& e) {
        CHECK(e.line == 2);
    }
    std::stringstream quote("case,activity\n1,\"a\n");
    CHECK_THROWS_AS(read_csv(quote), FormatError);
    std::stringstream blank("case,activity\n1, \n");
    CHECK_THROWS_AS(read_csv(blank), FormatError);
}

TEST_CASE("compact round-trip") {
    std::stringstream ss("# comment\nx3 a,b\n<>\na , c # trailing\n");
    EventLog log = read_compact(ss);
    CHECK(log.count({"a", "b"}) == 3);
    CHECK(log.count({}) == 1);
    CHECK(log.count({"a", "c"}) == 1);
    std::stringstream out;
    write_compact(out, log);
    CHECK(out.str() == "<>\nx3 a,b\na,c\n");
    std::stringstream again(out.str());
    CHECK(read_compact(again).same_multiset(log));
}

TEST_CASE("compact errors") {
    std::stringstream zero("x0 a\n");
    CHECK_THROWS_AS(read_compact(zero), FormatError);
    std::stringstream gap("a,,b\n");
    CHECK_THROWS_AS(read_compact(gap), FormatError);
    std::stringstream bare("x2\n");
    CHECK_THROWS_AS(read_compact(bare), FormatError);
}

TEST_CASE("spec json") {
    AggSpec s = parse_agg_spec(R"({"AB": ["CBW", "CD"], "w_t": "1/2"})");
    CHECK(s.groups.at("AB") == std::set<std::string>{"CBW", "CD"});
    CHECK(s.w_t == Rational(1, 2));
    CHECK(parse_agg_spec(agg_spec_to_json(s)).groups == s.groups);
    CHECK(parse_agg_spec(R"({"X": ["a","b"], "w_t": "0.4"})").w_t == Rational(2, 5));
    CHECK(parse_agg_spec(R"({"X": ["a","b"]})").w_t == Rational(1, 2));
    CHECK_THROWS_AS(parse_agg_spec("[1]"), SpecError);
    CHECK_THROWS_AS(parse_agg_spec("{"), SpecError);
    CHECK_THROWS_AS(parse_agg_spec(R"({"X": "a"})"), SpecError);
    CHECK_THROWS_AS(parse_agg_spec(R"({"X": [1]})"), SpecError);
    CHECK_THROWS_AS(parse_agg_spec(R"({"w_t": 0.5})"), SpecError);
}

TEST_CASE("rationals") {
    CHECK(parse_rational("5/9") == Rational(5, 9));
    CHECK(parse_rational(" 3 ") == Rational(3));
    CHECK(parse_rational("-0.25") == Rational(-1, 4));
    CHECK(parse_rational("0.05") == Rational(1, 20));
    CHECK(parse_rational("010/012") == Rational(5, 6));
    CHECK(format_rational(Rational(6, 8)) == "3/4");
    CHECK(format_rational(Rational(2)) == "2");
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("a/b"));
    CHECK_THROWS(parse_rational("1."));
}
