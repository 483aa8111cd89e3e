#include "synabs/miner.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace synabs {

const char* cut_name(CutKind k) {
    switch (k) {
        case CutKind::Choice: return "choice";
        case CutKind::Sequence: return "sequence";
        case CutKind::Parallel: return "parallel";
        case CutKind::Loop: return "loop";
    }
    return "?";
}

const char* fallthrough_name(FallThrough f) {
    switch (f) {
        case FallThrough::EmptyTraces: return "empty-traces";
        case FallThrough::StrictTauLoop: return "strict-tau-loop";
        case FallThrough::TauLoop: return "tau-loop";
        case FallThrough::ActivityOncePerTrace: return "activity-once-per-trace";
        case FallThrough::ActivityConcurrent: return "activity-concurrent";
        case FallThrough::Flower: return "flower";
    }
    return "?";
}

std::uint64_t DiscoveryAudit::cuts(CutKind k) const {
    auto it = cuts_used.find(k);
    return it == cuts_used.end() ? 0 : it->second;
}

std::uint64_t DiscoveryAudit::fallthroughs(FallThrough f) const {
    auto it = fallthroughs_used.find(f);
    return it == fallthroughs_used.end() ? 0 : it->second;
}

std::string DiscoveryAudit::summary() const {
    std::ostringstream os;
    os << "cuts:";
    for (const auto& [k, n] : cuts_used) os << ' ' << cut_name(k) << '=' << n;
    os << "\nfall-throughs:";
    for (const auto& [f, n] : fallthroughs_used) os << ' ' << fallthrough_name(f) << '=' << n;
    for (const auto& f : failures) os << "\nnote: " << f;
    return os.str();
}

namespace {

struct Graph {
    std::vector<std::string> acts;
    std::map<std::string, std::size_t> idx;
    std::vector<std::vector<char>> edge;
    std::vector<char> start, end;

    explicit Graph(const WordSet& log) {
        std::set<std::string> a;
        for (const auto& w : log) a.insert(w.begin(), w.end());
        acts.assign(a.begin(), a.end());
        for (std::size_t i = 0; i < acts.size(); ++i) idx[acts[i]] = i;
        std::size_t n = acts.size();
        edge.assign(n, std::vector<char>(n, 0));
        start.assign(n, 0);
        end.assign(n, 0);
        for (const auto& w : log) {
            if (w.empty()) continue;
            start[idx[w.front()]] = 1;
            end[idx[w.back()]] = 1;
            for (std::size_t i = 0; i + 1 < w.size(); ++i) edge[idx[w[i]]][idx[w[i + 1]]] = 1;
        }
    }
    std::size_t size() const { return acts.size(); }

    std::set<std::string> names(const std::vector<std::size_t>& part) const {
        std::set<std::string> out;
        for (auto i : part) out.insert(acts[i]);
        return out;
    }
};

using Parts = std::vector<std::vector<std::size_t>>;

Parts components(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& linked,
                 const std::vector<char>* include = nullptr) {
    std::vector<int> comp(n, -1);
    Parts out;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0 || (include && !(*include)[s])) continue;
        int c = static_cast<int>(out.size());
        out.emplace_back();
        std::vector<std::size_t> stack{s};
        comp[s] = c;
        while (!stack.empty()) {
            auto a = stack.back();
            stack.pop_back();
            out[c].push_back(a);
            for (std::size_t b = 0; b < n; ++b)
                if (comp[b] < 0 && (!include || (*include)[b]) && linked(a, b)) {
                    comp[b] = c;
                    stack.push_back(b);
                }
        }
        std::sort(out[c].begin(), out[c].end());
    }
    return out;
}

std::optional<Parts> choice_cut(const Graph& g) {
    auto parts = components(g.size(), [&](std::size_t a, std::size_t b) { return g.edge[a][b] || g.edge[b][a]; });
    if (parts.size() < 2) return std::nullopt;
    return parts;
}

std::optional<Parts> sequence_cut(const Graph& g) {
    std::size_t n = g.size();
    auto reach = g.edge;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (reach[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (reach[k][j]) reach[i][j] = 1;

    Parts groups;
    for (std::size_t i = 0; i < n; ++i) groups.push_back({i});
    auto reaches = [&](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
        for (auto x : a)
            for (auto y : b)
                if (reach[x][y]) return true;
        return false;
    };
    // activities that are mutually reachable or mutually unreachable share a part
    auto tied = [&](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
        for (auto x : a)
            for (auto y : b)
                if (reach[x][y] == reach[y][x]) return true;
        return false;
    };
    bool merged = true;
    while (merged) {
        merged = false;
        for (std::size_t i = 0; i < groups.size() && !merged; ++i)
            for (std::size_t j = i + 1; j < groups.size() && !merged; ++j) {
                if (tied(groups[i], groups[j])) {
                    groups[i].insert(groups[i].end(), groups[j].begin(), groups[j].end());
                    groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(j));
                    merged = true;
                }
            }
    }
    if (groups.size() < 2) return std::nullopt;
    for (auto& p : groups) std::sort(p.begin(), p.end());
    std::sort(groups.begin(), groups.end(), [&](const auto& a, const auto& b) { return reaches(a, b); });
    for (std::size_t i = 0; i < groups.size(); ++i)
        for (std::size_t j = i + 1; j < groups.size(); ++j)
            for (auto a : groups[i])
                for (auto b : groups[j])
                    if (!reach[a][b] || reach[b][a]) return std::nullopt;
    return groups;
}

std::optional<Parts> parallel_cut(const Graph& g) {
    auto parts =
        components(g.size(), [&](std::size_t a, std::size_t b) { return a != b && !(g.edge[a][b] && g.edge[b][a]); });
    auto complete = [&](const std::vector<std::size_t>& p) {
        bool s = false, e = false;
        for (auto a : p) {
            s = s || g.start[a];
            e = e || g.end[a];
        }
        return s && e;
    };
    Parts good;
    std::vector<std::size_t> bad;
    for (auto& p : parts) {
        if (complete(p))
            good.push_back(p);
        else
            bad.insert(bad.end(), p.begin(), p.end());
    }
    if (good.empty()) return std::nullopt;
    if (!bad.empty()) {
        good.front().insert(good.front().end(), bad.begin(), bad.end());
        std::sort(good.front().begin(), good.front().end());
    }
    if (good.size() < 2) return std::nullopt;
    std::sort(good.begin(), good.end());
    return good;
}

std::optional<Parts> loop_cut(const Graph& g) {
    std::size_t n = g.size();
    std::vector<char> body(n, 0), rest(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        body[i] = g.start[i] || g.end[i];
        rest[i] = !body[i];
    }
    auto comps = components(
        n, [&](std::size_t a, std::size_t b) { return g.edge[a][b] || g.edge[b][a]; }, &rest);
    Parts redo;
    std::vector<std::size_t> body_part;
    for (std::size_t i = 0; i < n; ++i)
        if (body[i]) body_part.push_back(i);
    for (auto& c : comps) {
        bool is_body = false;
        for (auto a : c) {
            for (std::size_t b = 0; b < n && !is_body; ++b) {
                if (!body[b]) continue;
                if (g.edge[b][a] && !g.end[b]) is_body = true;
                if (g.edge[a][b] && !g.start[b]) is_body = true;
            }
            bool from_end = false, from_all_ends = true, to_start = false, to_all_starts = true;
            for (std::size_t b = 0; b < n; ++b) {
                if (g.end[b]) {
                    from_end = from_end || g.edge[b][a];
                    from_all_ends = from_all_ends && g.edge[b][a];
                }
                if (g.start[b]) {
                    to_start = to_start || g.edge[a][b];
                    to_all_starts = to_all_starts && g.edge[a][b];
                }
            }
            if ((from_end && !from_all_ends) || (to_start && !to_all_starts)) is_body = true;
            if (is_body) break;
        }
        if (is_body)
            body_part.insert(body_part.end(), c.begin(), c.end());
        else
            redo.push_back(c);
    }
    if (redo.empty() || body_part.empty()) return std::nullopt;
    std::sort(body_part.begin(), body_part.end());
    Parts out{body_part};
    out.insert(out.end(), redo.begin(), redo.end());
    return out;
}

std::optional<Cut> cut_of(const Graph& g) {
    auto named = [&](CutKind k, const Parts& p) {
        Cut c{k, {}};
        for (const auto& part : p) c.parts.push_back(g.names(part));
        return c;
    };
    if (auto p = choice_cut(g)) return named(CutKind::Choice, *p);
    if (auto p = sequence_cut(g)) return named(CutKind::Sequence, *p);
    if (auto p = parallel_cut(g)) return named(CutKind::Parallel, *p);
    if (auto p = loop_cut(g)) return named(CutKind::Loop, *p);
    return std::nullopt;
}

WordSet project(const WordSet& log, const std::set<std::string>& keep) {
    WordSet out;
    for (const auto& w : log) {
        Word p;
        for (const auto& a : w)
            if (keep.count(a)) p.push_back(a);
        out.insert(p);
    }
    return out;
}

// splits every trace before positions that satisfy `cut_here`
WordSet split_traces(const WordSet& log, const std::function<bool(const std::string&, const std::string&)>& cut_here) {
    WordSet out;
    for (const auto& w : log) {
        Word cur;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i > 0 && cut_here(w[i - 1], w[i])) {
                out.insert(cur);
                cur.clear();
            }
            cur.push_back(w[i]);
        }
        out.insert(cur);
    }
    return out;
}

class Miner {
public:
    DiscoveryAudit audit;

    ProcessTree run(const WordSet& log) {
        if (log.empty()) {
            audit.failures.push_back("empty sublog");
            return ProcessTree::tau();
        }
        WordSet nonempty;
        for (const auto& w : log)
            if (!w.empty()) nonempty.insert(w);
        if (nonempty.empty()) return ProcessTree::tau();
        if (nonempty.size() < log.size()) {
            ++audit.fallthroughs_used[FallThrough::EmptyTraces];
            return ProcessTree::node(Kind::Xor, {ProcessTree::tau(), run(nonempty)});
        }
        if (log.size() == 1 && log.begin()->size() == 1) return ProcessTree::leaf(log.begin()->front());

        Graph g(log);
        if (auto cut = cut_of(g)) {
            ++audit.cuts_used[cut->kind];
            audit.records.push_back({*cut, log});
            if (cut->kind == CutKind::Loop) {
                audit.failures.push_back("loop cut replaced by a flower model");
                return flower(g);
            }
            return split(*cut, log);
        }

        if (g.size() == 1) {
            WordSet parts = split_traces(log, [](const std::string&, const std::string&) { return true; });
            ++audit.fallthroughs_used[FallThrough::StrictTauLoop];
            return ProcessTree::node(Kind::Loop, {run(parts), ProcessTree::tau()});
        }

        if (auto f = forbidden(log, g)) {
            ++audit.fallthroughs_used[*f];
            audit.failures.push_back(std::string(fallthrough_name(*f)) + " replaced by a flower model");
        }
        return flower(g);
    }

private:
    ProcessTree split(const Cut& cut, const WordSet& log) {
        std::vector<ProcessTree> kids;
        if (cut.kind == CutKind::Choice) {
            for (const auto& part : cut.parts) {
                WordSet sub;
                for (const auto& w : log)
                    if (part.count(w.front())) sub.insert(w);
                kids.push_back(run(sub));
            }
            return ProcessTree::node(Kind::Xor, std::move(kids));
        }
        if (cut.kind == CutKind::Parallel) {
            for (const auto& part : cut.parts) kids.push_back(run(project(log, part)));
            return ProcessTree::node(Kind::And, std::move(kids));
        }
        std::vector<WordSet> subs(cut.parts.size());
        for (const auto& w : log) {
            std::size_t pos = 0;
            for (std::size_t k = 0; k < cut.parts.size(); ++k) {
                Word seg;
                while (pos < w.size() && cut.parts[k].count(w[pos])) seg.push_back(w[pos++]);
                // events out of order for this part are skipped
                while (pos < w.size() && !cut.parts[k].count(w[pos])) {
                    bool later = false;
                    for (std::size_t q = k + 1; q < cut.parts.size(); ++q) later = later || cut.parts[q].count(w[pos]);
                    if (later) break;
                    ++pos;
                }
                subs[k].insert(seg);
            }
        }
        for (const auto& s : subs) kids.push_back(run(s));
        return ProcessTree::node(Kind::Seq, std::move(kids));
    }

    std::optional<FallThrough> forbidden(const WordSet& log, const Graph& g) {
        for (const auto& a : g.acts) {
            bool once = true;
            for (const auto& w : log) once = once && std::count(w.begin(), w.end(), a) == 1;
            if (once) return FallThrough::ActivityOncePerTrace;
        }
        for (const auto& a : g.acts) {
            std::set<std::string> keep(g.acts.begin(), g.acts.end());
            keep.erase(a);
            WordSet sub;
            for (const auto& w : project(log, keep))
                if (!w.empty()) sub.insert(w);
            if (!sub.empty() && cut_of(Graph(sub))) return FallThrough::ActivityConcurrent;
        }
        auto starts = [&](const std::string& a) { return g.start[g.idx.at(a)] != 0; };
        if (split_traces(log, [&](const std::string&, const std::string& b) { return starts(b); }) != log)
            return FallThrough::TauLoop;
        return std::nullopt;
    }

    ProcessTree flower(const Graph& g) {
        ++audit.fallthroughs_used[FallThrough::Flower];
        std::vector<ProcessTree> leaves;
        for (const auto& a : g.acts) leaves.push_back(ProcessTree::leaf(a));
        ProcessTree body = leaves.size() == 1 ? leaves.front() : ProcessTree::node(Kind::Xor, std::move(leaves));
        return ProcessTree::node(Kind::Loop, {body, ProcessTree::tau()});
    }
};

}  // namespace

std::optional<Cut> find_cut(const WordSet& log) {
    WordSet nonempty;
    for (const auto& w : log)
        if (!w.empty()) nonempty.insert(w);
    if (nonempty.empty()) return std::nullopt;
    return cut_of(Graph(nonempty));
}

Discovery discover(const WordSet& log) {
    Miner m;
    ProcessTree t = m.run(log);
    return {normal_form(t), std::move(m.audit)};
}

Discovery discover(const EventLog& log) {
    WordSet ws;
    for (const auto& [w, n] : log.variants()) ws.insert(w);
    return discover(ws);
}

ClassReport model_structure(const ProcessTree& m) {
    ClassReport r;
    std::function<void(const ProcessTree&, const std::string&)> walk = [&](const ProcessTree& n, const std::string& path) {
        if (!n.is_operator() || n.is_self_loop()) return;
        bool atomic_child = false;
        for (const auto& c : n.children()) atomic_child = atomic_child || c.is_leaf() || c.is_self_loop();
        if (atomic_child && n.kind() != Kind::Xor && n.kind() != Kind::And)
            r.add("4", path, std::string(keyword(n.kind())) + " node has an activity or self-loop child");
        for (std::size_t i = 0; i < n.children().size(); ++i) walk(n.children()[i], path + "/" + std::to_string(i));
    };
    walk(m, "root");
    return r;
}

ClassReport restriction_report(const Discovery& d) {
    ClassReport r;
    for (const auto& [f, n] : d.audit.fallthroughs_used)
        if (f != FallThrough::EmptyTraces && f != FallThrough::StrictTauLoop)
            r.add("1", "audit", std::string(fallthrough_name(f)) + " executed " + std::to_string(n) + "x");
    if (auto n = d.audit.cuts(CutKind::Loop)) r.add("2", "audit", "loop cut found " + std::to_string(n) + "x");
    r.merge(model_structure(d.tree));
    return r;
}

ClassReport check_restricted(const EventLog& log) { return restriction_report(discover(log)); }

}  // namespace synabs
