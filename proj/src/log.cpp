#include "synabs/log.hpp"

#include <algorithm>

#include "synabs/semantics.hpp"

namespace synabs {

Word word_of(const Trace& t) {
    Word w;
    w.reserve(t.size());
    for (const auto& e : t) w.push_back(e.activity);
    return w;
}

Trace trace_of(const Word& w) {
    Trace t;
    t.reserve(w.size());
    for (const auto& a : w) t.push_back(Event{a, {}});
    return t;
}

std::string render_word(const Word& w) {
    std::string out = "<";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ",";
        out += w[i];
    }
    return out + ">";
}

std::string EventLog::key(const Trace& t) const {
    std::string k;
    for (const auto& e : t) {
        k += e.activity;
        k += '\x1f';
        if (attribute_identity_) {
            for (const auto& [name, value] : e.attributes) {
                k += name;
                k += '\x1d';
                k += value;
                k += '\x1e';
            }
        }
        k += '\x1c';
    }
    return k;
}

void EventLog::add(Trace trace, std::uint64_t count) {
    if (count == 0) return;
    std::string k = key(trace);
    auto it = index_.find(k);
    if (it != index_.end()) {
        entries_[it->second].count += count;
        return;
    }
    index_.emplace(std::move(k), entries_.size());
    entries_.push_back(Entry{std::move(trace), count});
}

void EventLog::merge(const EventLog& other) {
    for (const auto& e : other.entries()) add(e.trace, e.count);
}

std::uint64_t EventLog::num_traces() const {
    std::uint64_t n = 0;
    for (const auto& e : entries_) n += e.count;
    return n;
}

std::uint64_t EventLog::total_events() const {
    std::uint64_t n = 0;
    for (const auto& e : entries_) n += e.count * e.trace.size();
    return n;
}

std::uint64_t EventLog::count(const Word& w) const {
    std::uint64_t n = 0;
    for (const auto& e : entries_)
        if (word_of(e.trace) == w) n += e.count;
    return n;
}

std::set<std::string> EventLog::alphabet() const {
    std::set<std::string> out;
    for (const auto& e : entries_)
        for (const auto& ev : e.trace) out.insert(ev.activity);
    return out;
}

std::map<Word, std::uint64_t> EventLog::variants() const {
    std::map<Word, std::uint64_t> out;
    for (const auto& e : entries_) out[word_of(e.trace)] += e.count;
    return out;
}

EventLog log_of(const std::vector<std::pair<Word, std::uint64_t>>& variants) {
    EventLog log;
    for (const auto& [w, n] : variants) log.add(w, n);
    return log;
}

std::set<std::string> Dfg::activities() const {
    std::set<std::string> out = nodes;
    out.erase(kStart);
    out.erase(kEnd);
    return out;
}

std::set<std::string> Dfg::starts() const {
    std::set<std::string> out;
    for (const auto& [a, b] : edges)
        if (a == kStart && b != kEnd) out.insert(b);
    return out;
}

std::set<std::string> Dfg::ends() const {
    std::set<std::string> out;
    for (const auto& [a, b] : edges)
        if (b == kEnd && a != kStart) out.insert(a);
    return out;
}

Dfg dfg_of_words(const std::map<Word, std::uint64_t>& words) {
    Dfg g;
    g.nodes = {kStart, kEnd};
    for (const auto& [w, n] : words) {
        if (n == 0) continue;
        if (w.empty()) {
            g.edges.insert({kStart, kEnd});
            continue;
        }
        g.edges.insert({kStart, w.front()});
        g.edges.insert({w.back(), kEnd});
        for (std::size_t i = 0; i < w.size(); ++i) {
            g.nodes.insert(w[i]);
            if (i + 1 < w.size()) g.edges.insert({w[i], w[i + 1]});
        }
    }
    return g;
}

Dfg dfg_of_log(const EventLog& log) { return dfg_of_words(log.variants()); }

Dfg dfg_of_model(const ProcessTree& m) { return dfg_of_log(minimal_log(m)); }

bool df_complete(const EventLog& log, const ProcessTree& m) { return dfg_of_log(log) == dfg_of_model(m); }

LogMetrics log_metrics(const EventLog& log) { return {log.num_traces(), log.total_events()}; }

Word bag(const Word& w) {
    Word b = w;
    std::sort(b.begin(), b.end());
    return b;
}

}  // namespace synabs
