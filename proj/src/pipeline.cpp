#include "synabs/pipeline.hpp"

#include <chrono>
#include <functional>

#include <boost/random/bernoulli_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>

#include "json.hpp"
#include "synabs/profile.hpp"
#include "synabs/rational.hpp"
#include "synabs/semantics.hpp"

namespace synabs {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

nlohmann::ordered_json report_json(const ClassReport& r) {
    nlohmann::ordered_json j;
    j["ok"] = r.in_class;
    j["violations"] = nlohmann::ordered_json::array();
    for (const auto& v : r.violations) j["violations"].push_back({{"rule", v.rule}, {"path", v.path}, {"message", v.message}});
    return j;
}

nlohmann::ordered_json metrics_json(const LogMetrics& m) { return {{"traces", m.traces}, {"events", m.events}}; }

nlohmann::ordered_json tree_json(const std::optional<ProcessTree>& t) {
    return t ? nlohmann::ordered_json(render_tree(*t)) : nlohmann::ordered_json(nullptr);
}

}  // namespace

std::string RoundtripReport::to_json(bool with_timings) const {
    nlohmann::ordered_json j;
    j["M"] = tree_json(m);
    j["M_a"] = tree_json(m_a);
    j["M_a_rediscovered"] = tree_json(m_a_rediscovered);
    j["L"] = metrics_json(l);
    j["L_r"] = metrics_json(l_r);
    j["L_a"] = metrics_json(l_a);
    j["isomorphic"] = isomorphic;
    j["df_complete"] = df_complete;
    j["restricted"] = report_json(restricted);
    j["applicable"] = report_json(applicable);
    j["stopped"] = stopped;
    j["transpositions"] = transpositions;
    nlohmann::ordered_json cuts = nlohmann::ordered_json::object(), falls = nlohmann::ordered_json::object();
    for (const auto& [k, n] : audit.cuts_used) cuts[cut_name(k)] = n;
    for (const auto& [f, n] : audit.fallthroughs_used) falls[fallthrough_name(f)] = n;
    j["audit"] = {{"cuts", cuts}, {"fallthroughs", falls}};
    if (with_timings)
        j["timings_ms"] = {{"discover", timings.discover_ms},
                           {"applicable", timings.applicable_ms},
                           {"abstract_model", timings.abstract_model_ms},
                           {"abstract_log", timings.abstract_log_ms},
                           {"rediscover", timings.rediscover_ms}};
    return j.dump(2);
}

RoundtripReport roundtrip(const EventLog& log, const AggSpec& spec, RoundtripOptions opts) {
    RoundtripReport r;
    r.l = log_metrics(log);

    auto t0 = Clock::now();
    Discovery d = discover(log);
    r.timings.discover_ms = ms_since(t0);
    r.m = d.tree;
    r.audit = d.audit;
    r.restricted = restriction_report(d);
    if (!r.restricted.in_class && opts.stop_on_restriction) {
        r.stopped = "event log is not restricted";
        r.stopped_at_gate = true;
        return r;
    }

    t0 = Clock::now();
    r.applicable = applicable(d.tree, spec);
    r.timings.applicable_ms = ms_since(t0);
    if (!r.applicable.in_class) {
        r.stopped = "abstraction is not applicable";
        r.stopped_at_gate = true;
        return r;
    }

    t0 = Clock::now();
    AbstractionContext ctx = abstraction_context(d.tree, spec);
    r.timings.abstract_model_ms = ms_since(t0);
    r.m_a = ctx.m_a;
    r.l_a = log_metrics(minimal_log(ctx.m_a));

    t0 = Clock::now();
    try {
        Ea2Result e = ea2(ea1(log, ctx), ctx.m_a);
        r.l_r_log = std::move(e.log);
        r.transpositions = e.transpositions;
        r.matches = std::move(e.matches);
    } catch (const EaError& e) {
        r.timings.abstract_log_ms = ms_since(t0);
        r.stopped = std::string("event abstraction failed: ") + e.what();
        return r;
    }
    r.timings.abstract_log_ms = ms_since(t0);
    r.l_r = log_metrics(r.l_r_log);
    r.df_complete = df_complete(r.l_r_log, ctx.m_a);

    t0 = Clock::now();
    r.m_a_rediscovered = discover(r.l_r_log).tree;
    r.timings.rediscover_ms = ms_since(t0);
    r.isomorphic = isomorphic(*r.m_a, *r.m_a_rediscovered);
    return r;
}

namespace {

class TreeGen {
public:
    TreeGen(std::mt19937_64& rng, const TreeShape& s) : rng_(rng), s_(s) {
        for (unsigned i = 0; i < s.max_activities; ++i) pool_.push_back("t" + std::to_string(i));
        for (std::size_t i = pool_.size(); i > 1; --i) std::swap(pool_[i - 1], pool_[pick(0, static_cast<unsigned>(i - 1))]);
    }

    std::optional<ProcessTree> run() {
        ProcessTree t = node(0, Kind::Leaf, false);
        if (overflow_) return std::nullopt;
        return normal_form(t);
    }

private:
    std::mt19937_64& rng_;
    const TreeShape& s_;
    std::vector<std::string> pool_;
    std::size_t used_ = 0;
    bool overflow_ = false;

    bool coin(double p) { return boost::random::bernoulli_distribution<double>(p)(rng_); }
    unsigned pick(unsigned lo, unsigned hi) { return boost::random::uniform_int_distribution<unsigned>(lo, hi)(rng_); }

    ProcessTree atom() {
        if (used_ >= pool_.size()) {
            overflow_ = true;
            return ProcessTree::leaf("overflow");
        }
        const std::string& name = pool_[used_++];
        return coin(s_.self_loop_prob) ? ProcessTree::self_loop(name) : ProcessTree::leaf(name);
    }

    ProcessTree node(unsigned depth, Kind parent, bool operator_only) {
        bool must_op = operator_only || depth == 0;
        bool must_atom = !must_op && depth >= s_.max_depth;
        if (!must_op && (must_atom || coin(0.45))) return atom();
        std::vector<Kind> kinds;
        for (Kind k : {Kind::Xor, Kind::And, Kind::Seq}) {
            if (k == parent) continue;
            if (k == Kind::Seq && (operator_only || depth >= s_.max_depth)) continue;
            kinds.push_back(k);
        }
        Kind k = kinds[pick(0, static_cast<unsigned>(kinds.size() - 1))];
        unsigned n = pick(2, std::max(2u, s_.max_children));
        std::vector<ProcessTree> kids;
        bool child_ops = k == Kind::Seq && s_.model_structure;
        for (unsigned i = 0; i < n; ++i) kids.push_back(node(depth + 1, k, child_ops));
        if (k == Kind::Xor && s_.tau_prob > 0 && coin(s_.tau_prob)) kids.push_back(ProcessTree::tau());
        return ProcessTree::node(k, std::move(kids));
    }
};

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

ProcessTree random_tree(std::mt19937_64& rng, const TreeShape& shape) {
    for (;;) {
        TreeGen g(rng, shape);
        if (auto t = g.run()) return *t;
    }
}

std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t index) { return splitmix(seed ^ splitmix(index)); }

Instance generate_instance(const GenParams& p) {
    if (p.agg_group_count == 0 || p.agg_group_size == 0) throw std::invalid_argument("agg groups must be non-empty");
    std::mt19937_64 rng(p.seed);
    TreeShape shape;
    shape.max_depth = p.max_depth;
    shape.max_children = p.max_children;
    shape.max_activities = p.activity_budget;
    shape.self_loop_prob = p.self_loop_prob;
    shape.model_structure = !p.violate;
    auto pick = [&](unsigned lo, unsigned hi) { return boost::random::uniform_int_distribution<unsigned>(lo, hi)(rng); };

    for (unsigned attempt = 1; attempt <= p.max_attempts; ++attempt) {
        ProcessTree t = random_tree(rng, shape);
        auto acts = activities(t);
        if (acts.size() < p.agg_group_count * p.agg_group_size) continue;
        if (ntl(t, 0).tr > p.max_traces) continue;

        EventLog log;
        for (const auto& w : minimal_words(t, p.max_traces)) log.add(w, p.inflate ? pick(1, 10) : 1);
        Discovery d = discover(log);
        if (!p.violate && !restriction_report(d).in_class) continue;

        std::vector<std::string> pool(acts.begin(), acts.end());
        for (std::size_t i = pool.size(); i > 1; --i) std::swap(pool[i - 1], pool[pick(0, static_cast<unsigned>(i - 1))]);
        AggSpec spec;
        for (unsigned g = 0; g < p.agg_group_count; ++g) {
            auto& members = spec.groups["X" + std::to_string(g)];
            for (unsigned k = 0; k < p.agg_group_size; ++k) members.insert(pool[g * p.agg_group_size + k]);
        }
        ClassReport shape_only = applicable(d.tree, AggSpec{spec.groups, Rational(1, 1000000)});
        if (shape_only.has_rule("1") || shape_only.has_rule("3") || shape_only.has_rule("4") || shape_only.has_rule("Cc"))
            continue;
        spec.w_t = w_minmax(behavioral_profile(d.tree), spec);
        if (!applicable(d.tree, spec).in_class) continue;
        if (p.violate && ntl(ma_bpa(d.tree, spec), 0).tr > p.max_traces) continue;
        return {d.tree, log, spec, attempt};
    }
    throw std::runtime_error("no valid instance within " + std::to_string(p.max_attempts) + " attempts");
}

namespace {

struct Outcome {
    bool pass = false;
    std::string reason;
};

Outcome judge(const RoundtripReport& r) {
    if (!r.stopped.empty()) return {false, r.stopped};
    if (!r.isomorphic) return {false, "rediscovered " + render_tree(*r.m_a_rediscovered) + " differs from " + render_tree(*r.m_a)};
    return {true, ""};
}

}  // namespace

VerifyStats verify(std::uint64_t n, std::uint64_t seed, GenParams base, bool shrink) {
    VerifyStats s;
    for (std::uint64_t i = 0; i < n; ++i) {
        ++s.runs;
        GenParams p = base;
        p.seed = instance_seed(seed, i);
        Instance inst;
        try {
            inst = generate_instance(p);
        } catch (const std::runtime_error&) {
            ++s.generation_failures;
            continue;
        }
        RoundtripReport r = roundtrip(inst.log, inst.spec, {!p.violate});
        if (r.m_a) {
            LogMetrics lm = log_metrics(minimal_log(*r.m));
            if (!(r.l_a.traces < lm.traces && r.l_a.events < lm.events)) ++s.size_violations;
            Discovery again = discover(minimal_log(*r.m_a));
            if (!isomorphic(again.tree, *r.m_a)) ++s.rediscovery_violations;
            bool undersized = false;
            for (const auto& m : r.matches) undersized = undersized || m.reference_size > m.input_size;
            if (undersized || r.stopped.rfind("event abstraction failed", 0) == 0) ++s.matching_violations;
            if (r.stopped.empty()) {
                if (r.l_r.traces > r.l.traces || r.l_r.events > r.l.events) ++s.ea_contract_violations;
                if (!r.df_complete) ++s.df_violations;
            }
        }
        Outcome o = judge(r);
        if (o.pass) {
            ++s.passed;
            continue;
        }
        ++s.failed;
        if (!s.first_failure) {
            s.first_failure = FailureCase{i, p.seed, inst.m, inst.spec, o.reason};
            if (shrink) s.shrunk = shrink_failure(*s.first_failure, p.violate);
        }
    }
    return s;
}

namespace {

// trees one reduction step smaller
std::vector<ProcessTree> reductions(const ProcessTree& t) {
    std::vector<ProcessTree> out;
    if (!t.is_operator() || t.is_self_loop()) return out;
    const auto& kids = t.children();
    for (const auto& c : kids) out.push_back(c);
    for (std::size_t i = 0; i < kids.size(); ++i) {
        if (kids.size() > 2) {
            auto rest = kids;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
            out.push_back(ProcessTree::node(t.kind(), rest));
        }
        for (const auto& sub : reductions(kids[i])) {
            auto copy = kids;
            copy[i] = sub;
            out.push_back(ProcessTree::node(t.kind(), copy));
        }
    }
    return out;
}

std::optional<Outcome> failing(const ProcessTree& m, AggSpec spec, bool violate) {
    if (check_class(m, TreeClass::Cc).in_class == false) return std::nullopt;
    auto acts = activities(m);
    AggSpec s;
    for (auto& [x, members] : spec.groups) {
        std::set<std::string> kept;
        for (const auto& a : members)
            if (acts.count(a)) kept.insert(a);
        if (kept.size() >= 2) s.groups[x] = kept;
    }
    if (s.groups.empty()) return std::nullopt;
    EventLog log = minimal_log(m);
    Discovery d = discover(log);
    if (!violate && !restriction_report(d).in_class) return std::nullopt;
    ClassReport shape = applicable(d.tree, AggSpec{s.groups, Rational(1, 1000000)});
    if (shape.has_rule("1") || shape.has_rule("3") || shape.has_rule("4") || shape.has_rule("Cc")) return std::nullopt;
    s.w_t = w_minmax(behavioral_profile(d.tree), s);
    if (!applicable(d.tree, s).in_class) return std::nullopt;
    Outcome o = judge(roundtrip(log, s, {!violate}));
    if (o.pass) return std::nullopt;
    return o;
}

}  // namespace

FailureCase shrink_failure(const FailureCase& f, bool violate) {
    FailureCase best = f;
    for (int round = 0; round < 100; ++round) {
        bool improved = false;
        for (const auto& cand : reductions(best.m)) {
            ProcessTree c = normal_form(cand);
            if (size(c) >= size(best.m)) continue;
            if (auto o = failing(c, best.spec, violate)) {
                best.m = c;
                best.reason = o->reason;
                for (auto it = best.spec.groups.begin(); it != best.spec.groups.end();) {
                    std::set<std::string> kept;
                    auto acts = activities(c);
                    for (const auto& a : it->second)
                        if (acts.count(a)) kept.insert(a);
                    if (kept.size() < 2) {
                        it = best.spec.groups.erase(it);
                    } else {
                        it->second = kept;
                        ++it;
                    }
                }
                best.spec.w_t = w_minmax(behavioral_profile(c), best.spec);
                improved = true;
                break;
            }
        }
        if (!improved && best.spec.groups.size() > 1) {
            auto a = best.spec.groups.begin();
            auto b = std::next(a);
            AggSpec merged = best.spec;
            merged.groups[a->first].insert(b->second.begin(), b->second.end());
            merged.groups.erase(b->first);
            if (auto o = failing(best.m, merged, violate)) {
                merged.w_t = w_minmax(behavioral_profile(best.m), merged);
                best.spec = merged;
                best.reason = o->reason;
                improved = true;
            }
        }
        if (!improved) break;
    }
    return best;
}

std::string VerifyStats::to_json() const {
    nlohmann::ordered_json j;
    j["runs"] = runs;
    j["passed"] = passed;
    j["failed"] = failed;
    j["generation_failures"] = generation_failures;
    j["size_violations"] = size_violations;
    j["rediscovery_violations"] = rediscovery_violations;
    j["matching_violations"] = matching_violations;
    j["ea_contract_violations"] = ea_contract_violations;
    j["df_violations"] = df_violations;
    auto fc = [](const std::optional<FailureCase>& f) -> nlohmann::ordered_json {
        if (!f) return nullptr;
        nlohmann::ordered_json groups = nlohmann::ordered_json::object();
        for (const auto& [x, m] : f->spec.groups) groups[x] = std::vector<std::string>(m.begin(), m.end());
        return {{"index", f->index},
                {"seed", f->seed},
                {"M", render_tree(f->m)},
                {"agg", groups},
                {"w_t", format_rational(f->spec.w_t)},
                {"reason", f->reason}};
    };
    j["first_failure"] = fc(first_failure);
    j["shrunk"] = fc(shrunk);
    return j.dump(2);
}

}  // namespace synabs
