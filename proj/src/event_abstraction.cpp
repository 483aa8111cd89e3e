#include "synabs/event_abstraction.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "synabs/miner.hpp"
#include "synabs/semantics.hpp"

namespace synabs {

KendallResult kendall_distance(const Word& source, const Word& target) {
    KendallResult r;
    if (bag(source) != bag(target)) return r;
    r.defined = true;
    // i-th occurrence of a symbol in source goes to its i-th occurrence in target
    std::map<std::string, std::vector<std::size_t>> slots;
    for (std::size_t i = target.size(); i-- > 0;) slots[target[i]].push_back(i);
    std::vector<std::size_t> pi;
    for (const auto& a : source) {
        pi.push_back(slots[a].back());
        slots[a].pop_back();
    }
    // bubble sort records one adjacent swap per inversion
    bool swapped = true;
    while (swapped) {
        swapped = false;
        for (std::size_t i = 0; i + 1 < pi.size(); ++i)
            if (pi[i] > pi[i + 1]) {
                std::swap(pi[i], pi[i + 1]);
                r.transpositions.push_back(i);
                swapped = true;
            }
    }
    r.distance = r.transpositions.size();
    return r;
}

Trace apply_transpositions(Trace t, const std::vector<std::size_t>& swaps) {
    for (auto i : swaps) {
        std::swap(t[i], t[i + 1]);
        t[i].attributes["transposed"] = "true";
        t[i + 1].attributes["transposed"] = "true";
    }
    return t;
}

std::vector<QuotientClass> quotient(const EventLog& log) {
    std::vector<QuotientClass> out;
    std::map<Word, std::size_t> index;
    for (const auto& e : log.entries()) {
        Word b = bag(word_of(e.trace));
        auto [it, fresh] = index.emplace(b, out.size());
        if (fresh) out.push_back({b, {}});
        auto& cls = out[it->second].traces;
        cls.insert(cls.end(), e.count, e.trace);
    }
    return out;
}

std::vector<std::uint64_t> even_split_sizes(std::uint64_t m, std::uint64_t k) {
    if (k == 0 || m < k) throw std::invalid_argument("cannot split " + std::to_string(m) + " into " + std::to_string(k));
    std::vector<std::uint64_t> out(k, m / k);
    for (std::uint64_t i = 0; i < m % k; ++i) ++out[i];
    return out;
}

ChoiceGroups choice_groups(const AbstractionContext& ctx) {
    ChoiceGroups out;
    const auto& names = ctx.mdt.vertices;
    for (const Module* m : ctx.mdt.modules()) {
        if (m->kind != ModuleKind::XorComplete) continue;
        std::vector<std::set<std::string>> members;
        for (const auto& c : m->children) {
            std::set<std::string> s;
            for (auto v : c.members)
                if (ctx.agg.a_new.count(names[v])) s.insert(names[v]);
            if (!s.empty()) members.push_back(s);
        }
        if (members.size() > 1) {
            std::sort(members.begin(), members.end());
            out.push_back(members);
        }
    }
    return out;
}

EventLog delete_choice_activities(const EventLog& log, const ChoiceGroups& groups) {
    std::vector<Trace> traces;
    for (const auto& e : log.entries()) traces.insert(traces.end(), e.count, e.trace);
    for (const auto& g : groups) {
        std::size_t turn = 0;
        for (auto& t : traces) {
            std::vector<std::size_t> touched;
            for (std::size_t k = 0; k < g.size(); ++k)
                for (const auto& ev : t)
                    if (g[k].count(ev.activity)) {
                        touched.push_back(k);
                        break;
                    }
            if (touched.size() < 2) continue;
            std::size_t keep = touched[turn++ % touched.size()];
            Trace kept;
            for (auto& ev : t) {
                bool drop = false;
                for (auto k : touched)
                    if (k != keep && g[k].count(ev.activity)) drop = true;
                if (!drop) kept.push_back(ev);
            }
            t = std::move(kept);
        }
    }
    EventLog out(true);
    for (auto& t : traces) out.add(std::move(t));
    return out;
}

EventLog ea1(const EventLog& log, const AbstractionContext& ctx) {
    const auto& p = ctx.p_ma;
    EventLog tmp(true);
    for (const auto& entry : log.entries()) {
        const Trace& sigma = entry.trace;
        std::set<std::string> kept;
        std::vector<std::vector<std::string>> cover(sigma.size());
        for (std::size_t i = 0; i < sigma.size(); ++i) {
            const auto& a = sigma[i].activity;
            for (const auto& x : ctx.agg.covering(a))
                if (ctx.agg.a_new.count(x)) cover[i].push_back(x);
            if (cover[i].empty()) {
                if (!ctx.agg.a_c.count(a)) throw EaError("activity '" + a + "' is not covered by the aggregation");
                kept.insert(a);
            }
        }
        std::set<std::string> seen;
        std::map<std::string, std::vector<std::string>> origin;
        std::vector<std::pair<std::string, bool>> out;  // (activity, abstract)
        std::vector<std::size_t> source;
        for (std::size_t i = 0; i < sigma.size(); ++i) {
            const auto& a = sigma[i].activity;
            for (const auto& x : cover[i]) {
                auto& o = origin[x];
                if (std::find(o.begin(), o.end(), a) == o.end()) o.push_back(a);
            }
            if (cover[i].empty()) {
                out.push_back({a, false});
                source.push_back(i);
                continue;
            }
            for (const auto& x : cover[i]) {
                if (!seen.insert(x).second) continue;
                bool blocked = false;
                for (const auto& v : kept) blocked = blocked || p.rel(v, x) == Relation::Choice;
                if (blocked) continue;
                int copies = p.rel(x, x) == Relation::Parallel ? 2 : 1;
                for (int c = 0; c < copies; ++c) {
                    out.push_back({x, true});
                    source.push_back(i);
                }
            }
        }
        Trace abs;
        for (std::size_t k = 0; k < out.size(); ++k) {
            if (!out[k].second) {
                abs.push_back(sigma[source[k]]);
                continue;
            }
            Event ev{out[k].first, {}};
            std::string joined;
            for (const auto& c : origin[out[k].first]) joined += (joined.empty() ? "" : ";") + c;
            ev.attributes["concrete"] = joined;
            abs.push_back(std::move(ev));
        }
        tmp.add(std::move(abs), entry.count);
    }
    return delete_choice_activities(tmp, choice_groups(ctx));
}

Ea2Result ea2(const EventLog& tmp, const ProcessTree& m_a) {
    Ea2Result r;
    EventLog reference = minimal_log(m_a);
    auto ref_classes = quotient(reference);
    auto tmp_classes = quotient(tmp);
    std::vector<char> used(tmp_classes.size(), 0);
    for (const auto& ref : ref_classes) {
        bool matched = false;
        for (std::size_t c = 0; c < tmp_classes.size() && !matched; ++c) {
            if (used[c] || tmp_classes[c].bag != ref.bag) continue;
            matched = true;
            used[c] = 1;
            auto pool = tmp_classes[c].traces;
            r.matches.push_back({ref.bag, ref.traces.size(), pool.size()});
            if (pool.size() < ref.traces.size())
                throw EaError("class " + render_word(ref.bag) + " has fewer input traces than reference traces");
            auto sizes = even_split_sizes(pool.size(), ref.traces.size());
            for (std::size_t j = 0; j < ref.traces.size(); ++j) {
                Word sigma = word_of(ref.traces[j]);
                std::vector<KendallResult> dist;
                for (const auto& t : pool) dist.push_back(kendall_distance(word_of(t), sigma));
                std::vector<std::size_t> order(pool.size());
                std::iota(order.begin(), order.end(), 0);
                std::stable_sort(order.begin(), order.end(),
                                 [&](std::size_t a, std::size_t b) { return dist[a].distance < dist[b].distance; });
                std::vector<char> take(pool.size(), 0);
                for (std::size_t k = 0; k < sizes[j]; ++k) {
                    std::size_t i = order[k];
                    take[i] = 1;
                    r.transpositions += dist[i].distance;
                    r.log.add(apply_transpositions(pool[i], dist[i].transpositions));
                }
                std::vector<Trace> rest;
                for (std::size_t i = 0; i < pool.size(); ++i)
                    if (!take[i]) rest.push_back(std::move(pool[i]));
                pool = std::move(rest);
            }
        }
        if (!matched) throw EaError("no input class matches reference class " + render_word(ref.bag));
    }
    for (std::size_t c = 0; c < tmp_classes.size(); ++c)
        if (!used[c]) throw EaError("input class " + render_word(tmp_classes[c].bag) + " has no reference class");
    return r;
}

EventLog ea_bpa(const EventLog& log, const AbstractionContext& ctx) { return ea2(ea1(log, ctx), ctx.m_a).log; }

EventLog ea_bpa(const EventLog& log, const AggSpec& spec) {
    return ea_bpa(log, abstraction_context(discover(log).tree, spec));
}

}  // namespace synabs
