#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "synabs/abstraction.hpp"
#include "synabs/log.hpp"

namespace synabs {

struct KendallResult {
    bool defined = false;
    std::uint64_t distance = 0;
    // swap positions (i, i+1), applied left to right to the source
    std::vector<std::size_t> transpositions;
};

KendallResult kendall_distance(const Word& source, const Word& target);
// moved events get attribute transposed=true
Trace apply_transpositions(Trace t, const std::vector<std::size_t>& swaps);

struct QuotientClass {
    Word bag;
    std::vector<Trace> traces;  // one entry per trace instance, log order
};

std::vector<QuotientClass> quotient(const EventLog& log);

std::vector<std::uint64_t> even_split_sizes(std::uint64_t m, std::uint64_t k);

class EaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// each group lists mutually exclusive member sets of abstract activities
using ChoiceGroups = std::vector<std::vector<std::set<std::string>>>;

ChoiceGroups choice_groups(const AbstractionContext& ctx);
EventLog delete_choice_activities(const EventLog& log, const ChoiceGroups& groups);

// abstract events carry attribute concrete = covered activities, ';'-joined in first-occurrence order
EventLog ea1(const EventLog& log, const AbstractionContext& ctx);

struct ClassMatch {
    Word bag;
    std::uint64_t reference_size = 0;
    std::uint64_t input_size = 0;
};

struct Ea2Result {
    EventLog log{true};
    std::uint64_t transpositions = 0;
    std::vector<ClassMatch> matches;
};

// throws EaError on an unmatched or undersized class
Ea2Result ea2(const EventLog& tmp, const ProcessTree& m_a);

EventLog ea_bpa(const EventLog& log, const AbstractionContext& ctx);
EventLog ea_bpa(const EventLog& log, const AggSpec& spec);

}  // namespace synabs
