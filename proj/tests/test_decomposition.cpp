#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "synabs/abstraction.hpp"
#include "synabs/decomposition.hpp"
#include "synabs/io.hpp"
#include "synabs/pipeline.hpp"

using namespace synabs;

const std::string kData = TEST_DATA_DIR;

namespace {

void check_against_oracle(const Digraph& g) {
    ModularDecomposition d = modular_decomposition(g);
    auto strong = oracle::strong_modules(g);
    std::set<std::vector<std::size_t>> got;
    for (const Module* m : d.modules()) {
        got.insert(m->members);
        CHECK(is_module(g, m->members));
        CHECK(m->kind == oracle::module_kind(g, m->members, strong));
    }
    CHECK(got == strong);
}

}  // namespace

TEST_CASE("abstract running profile decomposes into the expected tree") {
    ProcessTree m = read_tree_file(kData + "/running.tree");
    AggSpec spec = read_agg_spec_file(kData + "/running_spec.json");
    AbstractionContext c = abstraction_context(m, spec);
    CHECK(c.mdt.render() == "linear[RBP, xor-complete[linear[AB, and-complete[AC, FDD], SC], RP], AP]");
    CHECK_FALSE(c.mdt.has_primitive());
    check_against_oracle(order_relations_graph(c.p_ma));
}

TEST_CASE("a high threshold leaves a primitive module") {
    ProcessTree m = read_tree_file(kData + "/running.tree");
    AggSpec spec = read_agg_spec_file(kData + "/running_spec.json");
    spec.w_t = Rational(3, 5);
    BehavioralProfile p = derive_profile(behavioral_profile(m), spec);
    ModularDecomposition d = modular_decomposition(order_relations_graph(p));
    CHECK(d.has_primitive());
    CHECK(d.render() == "linear[RBP, primitive[AB, AC, FDD, RP, SC], AP]");
    Synthesis s = synthesize(p);
    CHECK_FALSE(s.tree);
    CHECK_FALSE(s.failure.empty());
}

TEST_CASE("edgeless and complete graphs") {
    Digraph e({"a", "b", "c"});
    CHECK(modular_decomposition(e).render() == "and-complete[a, b, c]");
    Digraph k({"a", "b", "c"});
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (i != j) k.add_edge(i, j);
    CHECK(modular_decomposition(k).render() == "xor-complete[a, b, c]");
    Digraph one({"a"});
    CHECK(modular_decomposition(one).render() == "a");
    CHECK(modular_decomposition(Digraph{}).render().empty());
}

TEST_CASE("linear children follow the order") {
    Digraph g({"a", "b", "c"});
    // c -> a -> b, transitively closed
    g.add_edge(2, 0);
    g.add_edge(0, 1);
    g.add_edge(2, 1);
    ModularDecomposition d = modular_decomposition(g);
    CHECK(d.root.kind == ModuleKind::Linear);
    CHECK(d.render() == "linear[c, a, b]");
}

TEST_CASE("is_module") {
    Digraph g({"a", "b", "c"});
    g.add_edge(0, 2);
    g.add_edge(1, 2);
    CHECK(is_module(g, {0, 1}));
    CHECK_FALSE(is_module(g, {0, 2}));
    CHECK(is_module(g, {0, 1, 2}));
}

TEST_CASE("order relations graph") {
    BehavioralProfile p({"a", "b", "c"});
    p.set("a", "b", Relation::Strict);
    p.set("a", "c", Relation::Parallel);
    Digraph g = order_relations_graph(p);
    CHECK(g.edge(0, 1));
    CHECK_FALSE(g.edge(1, 0));
    CHECK_FALSE(g.edge(0, 2));
    CHECK(g.edge(1, 2));
    CHECK(g.edge(2, 1));
    CHECK_FALSE(g.edge(0, 0));
    CHECK(g.to_dot().find("digraph") != std::string::npos);
}

TEST_CASE("random graphs against brute-force strong modules") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 120; ++i) {
        std::size_t n = 1 + i % 7;
        if (i % 2)
            check_against_oracle(order_relations_graph(oracle::random_profile(rng, n)));
        else {
            TreeShape shape;
            shape.max_activities = 7;
            check_against_oracle(order_relations_graph(behavioral_profile(random_tree(rng, shape))));
        }
    }
}

TEST_CASE("tree profiles never decompose into primitives") {
    std::mt19937_64 rng(29);
    TreeShape shape;
    for (int i = 0; i < 100; ++i) {
        ProcessTree t = random_tree(rng, shape);
        Synthesis s = synthesize(behavioral_profile(t));
        CHECK_FALSE(s.mdt.has_primitive());
        REQUIRE(s.tree);
        CHECK(behavioral_profile(*s.tree) == behavioral_profile(t));
    }
}
