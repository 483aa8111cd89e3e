#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "synabs/log.hpp"
#include "synabs/tree.hpp"

namespace synabs {

enum class CutKind { Choice, Sequence, Parallel, Loop };
enum class FallThrough { EmptyTraces, StrictTauLoop, TauLoop, ActivityOncePerTrace, ActivityConcurrent, Flower };

const char* cut_name(CutKind k);
const char* fallthrough_name(FallThrough f);

using WordSet = std::set<Word>;

struct Cut {
    CutKind kind;
    // Sequence: in order. Loop: body first.
    std::vector<std::set<std::string>> parts;
};

struct CutRecord {
    Cut cut;
    WordSet log;  // the sublog the cut was found on
};

struct DiscoveryAudit {
    std::map<CutKind, std::uint64_t> cuts_used;
    std::map<FallThrough, std::uint64_t> fallthroughs_used;
    std::vector<std::string> failures;
    std::vector<CutRecord> records;

    std::uint64_t cuts(CutKind k) const;
    std::uint64_t fallthroughs(FallThrough f) const;
    std::string summary() const;
};

struct Discovery {
    ProcessTree tree;
    DiscoveryAudit audit;
};

Discovery discover(const EventLog& log);
Discovery discover(const WordSet& log);

// the first cut in miner order, without splitting
std::optional<Cut> find_cut(const WordSet& log);

// rule "4": every operator with an activity or self-loop child is xor or and
ClassReport model_structure(const ProcessTree& m);
// rules "1" fall-throughs, "2" cuts, "4" model structure
ClassReport restriction_report(const Discovery& d);
ClassReport check_restricted(const EventLog& log);

}  // namespace synabs
