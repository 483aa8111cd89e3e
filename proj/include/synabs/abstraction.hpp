#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "synabs/decomposition.hpp"
#include "synabs/profile.hpp"
#include "synabs/rational.hpp"
#include "synabs/tree.hpp"

namespace synabs {

// Abstract name to covered concrete activities. Activities not covered by
// any group keep their name.
struct AggSpec {
    std::map<std::string, std::set<std::string>> groups;
    Rational w_t = Rational(1, 2);
};

class SpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// agg resolved against the concrete alphabet of a model
struct Aggregation {
    std::map<std::string, std::vector<std::string>> agg;
    std::set<std::string> a_new;
    std::set<std::string> a_c;

    std::vector<std::string> abstract_activities() const;
    const std::vector<std::string>& of(const std::string& x) const;
    // abstract activities whose group holds concrete activity `a`, sorted by name
    std::vector<std::string> covering(const std::string& a) const;
};

// throws SpecError when a group names an unknown activity or is empty
Aggregation resolve(const AggSpec& spec, const std::set<std::string>& concrete);

struct RelationWeights {
    std::uint64_t x_succ_y = 0, y_succ_x = 0, x_nsucc_y = 0, y_nsucc_x = 0, prod = 0;
    Rational choice, strict, inverse, parallel;

    Rational max() const;
};

struct OrderingResult {
    Relation relation = Relation::Parallel;
    RelationWeights weights;
    bool default_branch = false;
};

RelationWeights relation_weights(const std::string& x, const std::string& y, const BehavioralProfile& p_m,
                                 const Aggregation& agg);
OrderingResult derive_ordering_relation(const std::string& x, const std::string& y, const BehavioralProfile& p_m,
                                        const Aggregation& agg, const Rational& w_t);
OrderingResult derive_ordering_relation(const std::string& x, const std::string& y, const BehavioralProfile& p_m,
                                        const AggSpec& spec);

Rational w_minmax(const BehavioralProfile& p_m, const Aggregation& agg);
Rational w_minmax(const BehavioralProfile& p_m, const AggSpec& spec);

// pairs that fell through to the default branch are appended to `diagnostics`
BehavioralProfile derive_profile(const BehavioralProfile& p_m, const Aggregation& agg, const Rational& w_t,
                                 std::vector<std::string>* diagnostics = nullptr);
BehavioralProfile derive_profile(const BehavioralProfile& p_m, const AggSpec& spec,
                                 std::vector<std::string>* diagnostics = nullptr);

struct Synthesis {
    std::optional<ProcessTree> tree;
    ModularDecomposition mdt;
    std::string failure;
};

Synthesis synthesize(const BehavioralProfile& p);

// rules "1" to "5" name the failed applicability condition; "Cc" flags a model outside C_c
ClassReport applicable(const ProcessTree& m, const AggSpec& spec);

class NotApplicable : public std::runtime_error {
public:
    explicit NotApplicable(const ClassReport& r) : std::runtime_error("not applicable: " + r.summary()), report(r) {}
    ClassReport report;
};

struct AbstractionContext {
    AggSpec spec;
    Aggregation agg;
    BehavioralProfile p_m;
    BehavioralProfile p_ma;
    ModularDecomposition mdt;
    ProcessTree m_a;
};

// throws NotApplicable
AbstractionContext abstraction_context(const ProcessTree& m, const AggSpec& spec);
ProcessTree ma_bpa(const ProcessTree& m, const AggSpec& spec);

}  // namespace synabs
