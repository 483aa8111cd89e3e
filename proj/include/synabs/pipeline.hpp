#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "synabs/abstraction.hpp"
#include "synabs/event_abstraction.hpp"
#include "synabs/log.hpp"
#include "synabs/miner.hpp"
#include "synabs/tree.hpp"

namespace synabs {

struct StageTimings {
    double discover_ms = 0, applicable_ms = 0, abstract_model_ms = 0, abstract_log_ms = 0, rediscover_ms = 0;
};

struct RoundtripOptions {
    // false runs the abstraction even when the log is not restricted
    bool stop_on_restriction = true;
};

struct RoundtripReport {
    std::optional<ProcessTree> m, m_a, m_a_rediscovered;
    LogMetrics l, l_r, l_a;
    bool isomorphic = false;
    bool df_complete = false;
    ClassReport restricted, applicable;
    // empty when every stage ran
    std::string stopped;
    bool stopped_at_gate = false;  // restriction or applicability
    std::uint64_t transpositions = 0;
    std::vector<ClassMatch> matches;
    EventLog l_r_log{true};
    DiscoveryAudit audit;
    StageTimings timings;

    std::string to_json(bool with_timings = false) const;
};

RoundtripReport roundtrip(const EventLog& log, const AggSpec& spec, RoundtripOptions opts = {});

struct TreeShape {
    unsigned max_depth = 3;
    unsigned max_children = 3;
    unsigned max_activities = 10;
    double self_loop_prob = 0.2;
    double tau_prob = 0.0;  // tau as an extra xor child
    // operators with an activity or self-loop child are xor or and
    bool model_structure = true;
};

// tree in C_c and in normal form
ProcessTree random_tree(std::mt19937_64& rng, const TreeShape& shape);

struct GenParams {
    std::uint64_t seed = 42;
    unsigned max_depth = 3;
    unsigned max_children = 3;
    unsigned activity_budget = 10;
    double self_loop_prob = 0.2;
    unsigned agg_group_count = 2;
    unsigned agg_group_size = 2;
    bool inflate = true;   // multiplicities 1 to 10
    bool violate = false;  // drop the model-structure rule and the restriction check
    unsigned max_attempts = 2000;
    std::uint64_t max_traces = 3000;
};

struct Instance {
    ProcessTree m;
    EventLog log;
    AggSpec spec;
    unsigned attempts = 0;
};

// throws std::runtime_error when the attempt budget runs out
Instance generate_instance(const GenParams& p);
std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t index);

struct FailureCase {
    std::uint64_t index = 0;
    std::uint64_t seed = 0;
    ProcessTree m;
    AggSpec spec;
    std::string reason;
};

struct VerifyStats {
    std::uint64_t runs = 0, passed = 0, failed = 0, generation_failures = 0;
    std::uint64_t size_violations = 0;   // L_m(M_a) not smaller than L_m(M)
    std::uint64_t rediscovery_violations = 0;  // M_a not rediscovered from its minimal log
    std::uint64_t matching_violations = 0;   // matching missing or undersized class
    std::uint64_t ea_contract_violations = 0;
    std::uint64_t df_violations = 0;
    std::optional<FailureCase> first_failure;
    std::optional<FailureCase> shrunk;

    std::string to_json() const;
};

VerifyStats verify(std::uint64_t n, std::uint64_t seed, GenParams base = {}, bool shrink = true);

// greedy reduction of a failing instance; keeps generator validity
FailureCase shrink_failure(const FailureCase& f, bool violate);

}  // namespace synabs
