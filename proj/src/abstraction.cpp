#include "synabs/abstraction.hpp"

#include <algorithm>

namespace synabs {

std::vector<std::string> Aggregation::abstract_activities() const {
    std::vector<std::string> out;
    for (const auto& [x, members] : agg) out.push_back(x);
    return out;
}

const std::vector<std::string>& Aggregation::of(const std::string& x) const {
    auto it = agg.find(x);
    if (it == agg.end()) throw SpecError("unknown abstract activity '" + x + "'");
    return it->second;
}

std::vector<std::string> Aggregation::covering(const std::string& a) const {
    std::vector<std::string> out;
    for (const auto& [x, members] : agg)
        if (std::binary_search(members.begin(), members.end(), a)) out.push_back(x);
    return out;
}

Aggregation resolve(const AggSpec& spec, const std::set<std::string>& concrete) {
    Aggregation r;
    std::set<std::string> covered;
    for (const auto& [x, members] : spec.groups) {
        if (!is_identifier(x)) throw SpecError("abstract name '" + x + "' is not an identifier");
        if (members.empty()) throw SpecError("group '" + x + "' is empty");
        for (const auto& a : members) {
            if (!concrete.count(a)) throw SpecError("group '" + x + "' names unknown activity '" + a + "'");
            covered.insert(a);
        }
        r.agg[x] = {members.begin(), members.end()};
        (concrete.count(x) ? r.a_c : r.a_new).insert(x);
    }
    for (const auto& a : concrete)
        if (!covered.count(a) && !spec.groups.count(a)) {
            r.agg[a] = {a};
            r.a_c.insert(a);
        }
    return r;
}

Rational RelationWeights::max() const {
    return std::max(std::max(choice, strict), std::max(inverse, parallel));
}

RelationWeights relation_weights(const std::string& x, const std::string& y, const BehavioralProfile& p_m,
                                 const Aggregation& agg) {
    const auto& ax = agg.of(x);
    const auto& ay = agg.of(y);
    RelationWeights w;
    for (const auto& v : ax)
        for (const auto& u : ay) {
            Relation r = p_m.rel(v, u);
            if (r == Relation::Strict || r == Relation::Parallel) ++w.x_succ_y;
            if (r == Relation::Inverse || r == Relation::Parallel) ++w.y_succ_x;
            if (r == Relation::Inverse || r == Relation::Choice) ++w.x_nsucc_y;
            if (r == Relation::Strict || r == Relation::Choice) ++w.y_nsucc_x;
        }
    w.prod = ax.size() * ay.size();
    auto frac = [&](std::uint64_t a, std::uint64_t b) {
        return Rational(static_cast<long long>(std::min(a, b)), static_cast<long long>(w.prod));
    };
    w.choice = frac(w.x_nsucc_y, w.y_nsucc_x);
    w.strict = frac(w.x_succ_y, w.y_nsucc_x);
    w.inverse = frac(w.y_succ_x, w.x_nsucc_y);
    w.parallel = frac(w.x_succ_y, w.y_succ_x);
    return w;
}

OrderingResult derive_ordering_relation(const std::string& x, const std::string& y, const BehavioralProfile& p_m,
                                        const Aggregation& agg, const Rational& w_t) {
    OrderingResult r;
    r.weights = relation_weights(x, y, p_m, agg);
    const auto& w = r.weights;
    if (w.choice >= w_t)
        r.relation = Relation::Choice;
    else if (w.strict >= w_t)
        r.relation = w.inverse > w.strict ? Relation::Inverse : Relation::Strict;
    else if (w.inverse >= w_t)
        r.relation = Relation::Inverse;
    else if (w.parallel >= w_t)
        r.relation = Relation::Parallel;
    else {
        r.relation = Relation::Parallel;
        r.default_branch = true;
    }
    return r;
}

namespace {

Aggregation resolve_for(const BehavioralProfile& p_m, const AggSpec& spec) {
    const auto& acts = p_m.activities();
    return resolve(spec, {acts.begin(), acts.end()});
}

}  // namespace

OrderingResult derive_ordering_relation(const std::string& x, const std::string& y, const BehavioralProfile& p_m,
                                        const AggSpec& spec) {
    return derive_ordering_relation(x, y, p_m, resolve_for(p_m, spec), spec.w_t);
}

Rational w_minmax(const BehavioralProfile& p_m, const Aggregation& agg) {
    auto xs = agg.abstract_activities();
    Rational best = 1;
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i; j < xs.size(); ++j) best = std::min(best, relation_weights(xs[i], xs[j], p_m, agg).max());
    return best;
}

Rational w_minmax(const BehavioralProfile& p_m, const AggSpec& spec) { return w_minmax(p_m, resolve_for(p_m, spec)); }

BehavioralProfile derive_profile(const BehavioralProfile& p_m, const Aggregation& agg, const Rational& w_t,
                                 std::vector<std::string>* diagnostics) {
    BehavioralProfile p(agg.abstract_activities());
    const auto& xs = p.activities();
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i; j < xs.size(); ++j) {
            auto r = derive_ordering_relation(xs[i], xs[j], p_m, agg, w_t);
            if (r.default_branch && diagnostics)
                diagnostics->push_back("default branch for (" + xs[i] + ", " + xs[j] + ")");
            p.set(i, j, r.relation);
        }
    return p;
}

BehavioralProfile derive_profile(const BehavioralProfile& p_m, const AggSpec& spec,
                                 std::vector<std::string>* diagnostics) {
    return derive_profile(p_m, resolve_for(p_m, spec), spec.w_t, diagnostics);
}

namespace {

ProcessTree build(const Module& m, const BehavioralProfile& p) {
    if (m.kind == ModuleKind::Leaf) {
        std::size_t v = m.members.front();
        const auto& name = p.activities()[v];
        return p.rel(v, v) == Relation::Parallel ? ProcessTree::self_loop(name) : ProcessTree::leaf(name);
    }
    std::vector<ProcessTree> kids;
    for (const auto& c : m.children) kids.push_back(build(c, p));
    Kind k = m.kind == ModuleKind::Linear ? Kind::Seq : m.kind == ModuleKind::XorComplete ? Kind::Xor : Kind::And;
    return ProcessTree::node(k, std::move(kids));
}

}  // namespace

Synthesis synthesize(const BehavioralProfile& p) {
    Synthesis s;
    if (p.size() == 0) {
        s.failure = "empty profile";
        return s;
    }
    s.mdt = modular_decomposition(order_relations_graph(p));
    for (const Module* m : s.mdt.modules())
        if (m->kind == ModuleKind::Primitive) {
            std::string members;
            for (auto v : m->members) members += (members.empty() ? "" : ",") + p.activities()[v];
            s.failure = "primitive module {" + members + "}";
            return s;
        }
    ProcessTree t = normal_form(build(s.mdt.root, p));
    if (behavioral_profile(t) != p) {
        s.failure = "synthesized tree does not reproduce the profile";
        return s;
    }
    s.tree = t;
    return s;
}

ClassReport applicable(const ProcessTree& m, const AggSpec& spec) {
    ClassReport r;
    ClassReport cls = check_class(m, TreeClass::Cc);
    for (const auto& v : cls.violations) r.add(v.rule == "1" ? "1" : "Cc", v.path, v.message);
    if (!r.in_class) return r;

    Aggregation agg;
    try {
        agg = resolve(spec, activities(m));
    } catch (const SpecError& e) {
        r.add("3", "agg", e.what());
        return r;
    }
    if (agg.a_new.empty()) r.add("3", "agg", "no new abstract activity");
    std::set<std::string> covered;
    for (const auto& x : agg.a_new) {
        const auto& g = agg.of(x);
        if (g.size() < 2) r.add("4", "agg/" + x, "new activity '" + x + "' aggregates fewer than two activities");
        covered.insert(g.begin(), g.end());
    }
    if (!agg.a_new.empty() && covered.size() <= agg.a_new.size() + 1)
        r.add("4", "agg", "groups cover " + std::to_string(covered.size()) + " activities for " +
                              std::to_string(agg.a_new.size()) + " new ones");
    for (const auto& y : agg.a_c)
        if (agg.of(y) != std::vector<std::string>{y}) r.add("4", "agg/" + y, "kept activity '" + y + "' must map to itself");
    if (!r.in_class) return r;

    BehavioralProfile p_m = behavioral_profile(m);
    Rational wmm = w_minmax(p_m, agg);
    if (spec.w_t <= 0 || spec.w_t > wmm)
        r.add("5", "w_t", "w_t = " + format_rational(spec.w_t) + " outside (0, " + format_rational(wmm) + "]");

    Synthesis s = synthesize(derive_profile(p_m, agg, spec.w_t));
    if (!s.tree) r.add("2", "mdt", s.failure);
    return r;
}

AbstractionContext abstraction_context(const ProcessTree& m, const AggSpec& spec) {
    ClassReport r = applicable(m, spec);
    if (!r.in_class) throw NotApplicable(r);
    AbstractionContext c;
    c.spec = spec;
    c.agg = resolve(spec, activities(m));
    c.p_m = behavioral_profile(m);
    c.p_ma = derive_profile(c.p_m, c.agg, spec.w_t);
    Synthesis s = synthesize(c.p_ma);
    c.mdt = s.mdt;
    c.m_a = *s.tree;
    return c;
}

ProcessTree ma_bpa(const ProcessTree& m, const AggSpec& spec) { return abstraction_context(m, spec).m_a; }

}  // namespace synabs
