#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "synabs/tree.hpp"

namespace synabs {

struct Event {
    std::string activity;
    std::map<std::string, std::string> attributes;

    bool operator==(const Event& o) const { return activity == o.activity && attributes == o.attributes; }
};

using Trace = std::vector<Event>;
using Word = std::vector<std::string>;

Word word_of(const Trace& t);
Trace trace_of(const Word& w);
std::string render_word(const Word& w);

// Multiset of traces. Entries keep first-insertion order.
class EventLog {
public:
    struct Entry {
        Trace trace;
        std::uint64_t count;
    };

    explicit EventLog(bool attribute_identity = false) : attribute_identity_(attribute_identity) {}

    void add(Trace trace, std::uint64_t count = 1);
    void add(const Word& word, std::uint64_t count = 1) { add(trace_of(word), count); }
    void merge(const EventLog& other);

    const std::vector<Entry>& entries() const { return entries_; }
    bool attribute_identity() const { return attribute_identity_; }
    bool empty() const { return entries_.empty(); }

    std::uint64_t num_traces() const;
    std::uint64_t total_events() const;
    std::uint64_t count(const Word& w) const;
    std::set<std::string> alphabet() const;
    // control-flow variants with summed multiplicities
    std::map<Word, std::uint64_t> variants() const;

    bool same_multiset(const EventLog& other) const { return variants() == other.variants(); }

private:
    std::string key(const Trace& t) const;

    bool attribute_identity_;
    std::vector<Entry> entries_;
    std::map<std::string, std::size_t> index_;
};

EventLog log_of(const std::vector<std::pair<Word, std::uint64_t>>& variants);

inline const std::string kStart = "\xe2\x96\xb7";  // ▷
inline const std::string kEnd = "\xe2\x97\x81";    // ◁

struct Dfg {
    std::set<std::string> nodes;
    std::set<std::pair<std::string, std::string>> edges;

    bool operator==(const Dfg& o) const { return nodes == o.nodes && edges == o.edges; }
    bool has(const std::string& a, const std::string& b) const { return edges.count({a, b}) > 0; }
    std::set<std::string> activities() const;
    std::set<std::string> starts() const;
    std::set<std::string> ends() const;
};

Dfg dfg_of_log(const EventLog& log);
Dfg dfg_of_words(const std::map<Word, std::uint64_t>& words);
// requires M in C_c; the DFG of its minimal log
Dfg dfg_of_model(const ProcessTree& m);
bool df_complete(const EventLog& log, const ProcessTree& m);

struct LogMetrics {
    std::uint64_t traces = 0;
    std::uint64_t events = 0;
    bool operator==(const LogMetrics& o) const { return traces == o.traces && events == o.events; }
};

LogMetrics log_metrics(const EventLog& log);

// Multiset of activity labels, sorted.
Word bag(const Word& w);

}  // namespace synabs
