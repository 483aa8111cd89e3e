#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "json.hpp"
#include "synabs/io.hpp"
#include "synabs/pipeline.hpp"
#include "synabs/semantics.hpp"

using namespace synabs;
using nlohmann::json;

const std::string kData = TEST_DATA_DIR;

TEST_CASE("seed 42 instance snapshot") {
    Instance in = generate_instance(GenParams{});
    CHECK(render_tree(in.m) == "xor(seq(xor(t4,t9),xor(t0,t7)),seq(xor(t2,t3),xor(t1,t6,t8)),t5)");
    CHECK(in.spec.groups.at("X0") == std::set<std::string>{"t4", "t5"});
    CHECK(in.spec.groups.at("X1") == std::set<std::string>{"t6", "t9"});
    CHECK(in.spec.w_t == Rational(1, 2));
    CHECK(log_metrics(in.log) == LogMetrics{57, 110});
    CHECK(instance_seed(42, 0) == 5592132763777985307ULL);
    Instance again = generate_instance(GenParams{});
    CHECK(again.m == in.m);
    CHECK(again.log.same_multiset(in.log));
}

TEST_CASE("generated instances satisfy the generator contract") {
    for (std::uint64_t i = 0; i < 30; ++i) {
        GenParams p;
        p.seed = instance_seed(7, i);
        Instance in = generate_instance(p);
        CAPTURE(render_tree(in.m));
        CHECK(check_class(in.m, TreeClass::Cc).in_class);
        CHECK(model_structure(in.m).in_class);
        CHECK(applicable(in.m, in.spec).in_class);
        CHECK(df_complete(in.log, in.m));
        CHECK(check_restricted(in.log).in_class);
        CHECK(in.log.variants().size() <= p.max_traces);
    }
}

TEST_CASE("random tree shape") {
    std::mt19937_64 rng(47);
    TreeShape shape;
    shape.max_activities = 5;
    for (int i = 0; i < 100; ++i) {
        ProcessTree t = random_tree(rng, shape);
        CHECK(activities(t).size() <= 5);
        CHECK(model_structure(t).in_class);
    }
}

TEST_CASE("roundtrip stops on the restriction gate") {
    EventLog l = read_log_file(kData + "/running_log.txt");
    AggSpec spec = read_agg_spec_file(kData + "/running_spec.json");
    RoundtripReport r = roundtrip(l, spec);
    CHECK(r.stopped_at_gate);
    CHECK(r.stopped == "event log is not restricted");
    CHECK(r.restricted.has_rule("4"));
    CHECK_FALSE(r.m_a);
    json j = json::parse(r.to_json());
    CHECK(j["M_a"].is_null());
    CHECK(j["L"]["events"] == 500);
    CHECK(j["restricted"]["ok"] == false);
}

TEST_CASE("forced roundtrip of the running example") {
    EventLog l = read_log_file(kData + "/running_log.txt");
    AggSpec spec = read_agg_spec_file(kData + "/running_spec.json");
    RoundtripReport r = roundtrip(l, spec, {false});
    CHECK(r.stopped.empty());
    CHECK_FALSE(r.stopped_at_gate);
    CHECK(r.isomorphic);
    CHECK(r.df_complete);
    CHECK(r.l == LogMetrics{46, 500});
    CHECK(r.l_r == LogMetrics{46, 318});
    CHECK(r.l_a == LogMetrics{4, 24});
    CHECK(r.transpositions == 45);
    REQUIRE(r.m_a);
    CHECK(isomorphic(*r.m_a, read_tree_file(kData + "/running_abstract.tree")));
    json j = json::parse(r.to_json(true));
    CHECK(j["M_a"] == render_tree(*r.m_a));
    CHECK(j["isomorphic"] == true);
    CHECK(j["transpositions"] == 45);
    CHECK(j["audit"]["cuts"]["sequence"] == 4);
    CHECK(j.contains("timings_ms"));
    CHECK_FALSE(json::parse(r.to_json()).contains("timings_ms"));
}

TEST_CASE("roundtrip on an applicability failure") {
    EventLog l = minimal_log(parse_tree("xor(a,seq(b,c))"));
    AggSpec spec;
    spec.groups["Z"] = {"a"};
    RoundtripReport r = roundtrip(l, spec, {false});
    CHECK(r.stopped_at_gate);
    CHECK(r.applicable.has_rule("4"));
}

TEST_CASE("verify bookkeeping") {
    VerifyStats s = verify(20, 42);
    CHECK(s.runs == 20);
    CHECK(s.passed + s.failed + s.generation_failures == s.runs);
    CHECK(s.size_violations == 0);
    CHECK(s.rediscovery_violations == 0);
    CHECK(s.ea_contract_violations == 0);
    CHECK(s.df_violations == 0);
    REQUIRE(s.first_failure);
    CHECK(s.first_failure->index == 0);
    CHECK(s.first_failure->seed == instance_seed(42, 0));
    CHECK(render_tree(s.first_failure->m) == "xor(seq(and(t0,t9),and(t3,t6),xor(t5,loop(t7,tau))),t1)");
    REQUIRE(s.shrunk);
    CHECK(size(s.shrunk->m) <= size(s.first_failure->m));
    CHECK(json::parse(s.to_json())["runs"] == 20);
}

TEST_CASE("shrinking keeps the failure") {
    VerifyStats s = verify(5, 42, GenParams{}, false);
    REQUIRE(s.first_failure);
    CHECK_FALSE(s.shrunk);
    FailureCase f = shrink_failure(*s.first_failure, false);
    CHECK_FALSE(f.reason.empty());
    CHECK(size(f.m) < size(s.first_failure->m));
    CHECK(applicable(f.m, f.spec).in_class);
}
