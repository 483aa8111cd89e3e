// Acceptance run: one PASS/FAIL line per criterion, details indented below it.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "synabs/abstraction.hpp"
#include "synabs/decomposition.hpp"
#include "synabs/event_abstraction.hpp"
#include "synabs/io.hpp"
#include "synabs/miner.hpp"
#include "synabs/pipeline.hpp"
#include "synabs/profile.hpp"
#include "synabs/semantics.hpp"

using namespace synabs;

namespace {

const std::string kData = TEST_DATA_DIR;

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& what) {
        pass = pass && ok;
        notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    }
    void note(const std::string& what) { notes.push_back("     " + what); }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const Rational& r) { return format_rational(r); }

std::string one_line(const AggSpec& spec) {
    std::string out;
    for (char c : agg_spec_to_json(spec))
        if (c != '\n' && !(c == ' ' && !out.empty() && (out.back() == ' ' || out.back() == '{' || out.back() == '['))) out += c;
    return out;
}

std::string variants_text(const EventLog& log) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, n] : log.variants()) {
        os << (first ? "" : " ") << render_word(w) << "^" << n;
        first = false;
    }
    return os.str();
}

Outcome criterion1() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    ProcessTree m = read_tree_file(kData + "/running.tree");
    AggSpec spec = read_agg_spec_file(kData + "/running_spec.json");
    BehavioralProfile p = behavioral_profile(m);
    OrderingResult r = derive_ordering_relation("AB", "AC", p, spec);
    const auto& w = r.weights;
    o.check(w.prod == 6 && w.x_succ_y == 5 && w.y_succ_x == 3 && w.x_nsucc_y == 1 && w.y_nsucc_x == 3,
            "weak-order weights " + std::to_string(w.x_succ_y) + "/6, " + std::to_string(w.y_succ_x) + "/6, " +
                std::to_string(w.x_nsucc_y) + "/6, " + std::to_string(w.y_nsucc_x) + "/6");
    o.check(w.choice == Rational(1, 6) && w.strict == Rational(1, 2) && w.inverse == Rational(1, 6) &&
                w.parallel == Rational(1, 2),
            "relation weights +" + fmt(w.choice) + " ->" + fmt(w.strict) + " <-" + fmt(w.inverse) + " ||" +
                fmt(w.parallel));
    o.check(r.relation == Relation::Strict, std::string("AB ") + symbol(r.relation) + " AC");
    double s = seconds_since(t0);
    o.check(s < 1.0, "runtime " + std::to_string(s) + " s");
    return o;
}

Outcome criterion2() {
    Outcome o;
    ProcessTree m_a = read_tree_file(kData + "/running_abstract.tree");
    NtlResult n = ntl(m_a);
    auto lens = n.lens;
    std::sort(lens.begin(), lens.end());
    o.check(n.tr == 4, "tr = " + n.tr.str());
    o.check(lens == std::vector<std::uint64_t>{3, 7, 7, 7}, "lens sorted <3,7,7,7>");
    o.check(n.size == 24, "size = " + n.size.str());
    NtlResult sub = ntl(parse_tree("and(AC,loop(FDD,tau))"));
    o.check(sub.tr == 3 && multinomial({1, 2}) == 3, "and sub-case tr = " + sub.tr.str() + " = 3!/(1!2!)");
    return o;
}

Outcome criterion3() {
    Outcome o;
    // running example
    EventLog l = read_log_file(kData + "/running_log.txt");
    AggSpec spec = read_agg_spec_file(kData + "/running_spec.json");
    ProcessTree m = discover(l).tree;
    AbstractionContext ctx = abstraction_context(m, spec);
    Ea2Result e = ea2(ea1(l, ctx), ctx.m_a);
    std::map<Word, std::uint64_t> want = {
        {{"RBP", "RP", "AP"}, 1},
        {{"RBP", "AB", "AC", "FDD", "FDD", "SC", "AP"}, 15},
        {{"RBP", "AB", "FDD", "AC", "FDD", "SC", "AP"}, 15},
        {{"RBP", "AB", "FDD", "FDD", "AC", "SC", "AP"}, 15},
    };
    o.check(e.log.variants() == want, "running L_r = " + variants_text(e.log));

    // illustrative example, model side: the reconstructed tree and its minimal log
    ProcessTree im = read_tree_file(kData + "/illustrative.tree");
    AggSpec ispec = read_agg_spec_file(kData + "/illustrative_spec.json");
    Rational wmm = w_minmax(behavioral_profile(im), ispec);
    o.check(wmm == Rational(5, 9), "illustrative w_minmax = " + fmt(wmm));
    EventLog il = minimal_log(im);
    AbstractionContext ictx = abstraction_context(discover(il).tree, ispec);
    Ea2Result ie = ea2(ea1(il, ictx), ictx.m_a);
    o.check(ie.transpositions == 0, "illustrative transpositions = " + std::to_string(ie.transpositions));
    std::map<Word, std::uint64_t> iwant = {{{"RQ", "OT", "N", "N", "CT"}, 7}, {{"RQ", "DQ"}, 2}};
    o.check(ie.log.variants() == iwant, "illustrative L_r = " + variants_text(ie.log) + " (want <RQ,OT,N,N,CT>^7 <RQ,DQ>^2)");

    // illustrative example, log side: the nine listed trades
    EventLog listed = read_log_file(kData + "/illustrative_log.txt");
    LogMetrics lm = log_metrics(listed);
    o.note("listed trades: " + std::to_string(lm.traces) + " traces, " + std::to_string(lm.events) +
           " events; discovered tree gives w_minmax = " + fmt(w_minmax(behavioral_profile(discover(listed).tree), ispec)));
    o.note("no log whose two 2-event traces carry all DQ events reaches 5/9 for RQ,DQ (at most 2 of 4 pairs co-occur)");
    return o;
}

struct CorpusRun {
    VerifyStats stats;
    double seconds = 0;
};

const CorpusRun& corpus() {
    static CorpusRun run = [] {
        CorpusRun r;
        auto t0 = std::chrono::steady_clock::now();
        r.stats = verify(300, 42);
        r.seconds = seconds_since(t0);
        return r;
    }();
    return run;
}

Outcome criterion4() {
    Outcome o;
    const CorpusRun& c = corpus();
    const VerifyStats& s = c.stats;
    o.check(s.generation_failures == 0, "generated " + std::to_string(s.runs - s.generation_failures) + "/300");
    o.check(s.failed == 0, "synchronization check passed " + std::to_string(s.passed) + ", failed " + std::to_string(s.failed));
    o.check(c.seconds < 300, "runtime " + std::to_string(c.seconds) + " s");
    if (s.first_failure) {
        o.note("first failure: " + render_tree(s.first_failure->m) + " " + one_line(s.first_failure->spec));
        o.note("  " + s.first_failure->reason);
    }
    if (s.shrunk) {
        o.note("shrunk: " + render_tree(s.shrunk->m) + " " + one_line(s.shrunk->spec));
        o.note("  " + s.shrunk->reason);
    }
    return o;
}

struct OperatorSizeStats {
    unsigned triples = 0, strict_violations = 0, weak_violations = 0, low_violations = 0;
    std::string example;
};

// the same children under xor, seq and and
OperatorSizeStats operator_sizes(unsigned count, std::uint64_t seed) {
    OperatorSizeStats s;
    std::mt19937_64 rng(seed);
    TreeShape shape;
    shape.max_depth = 2;
    shape.max_children = 2;
    shape.max_activities = 4;
    while (s.triples < count) {
        unsigned n = 2 + static_cast<unsigned>(rng() % 2);
        std::vector<ProcessTree> kids;
        std::vector<BigInt> tr;
        for (unsigned i = 0; i < n; ++i) {
            ProcessTree k = oracle::rename(random_tree(rng, shape), "c" + std::to_string(i) + "_");
            kids.push_back(k);
            tr.push_back(ntl(k, 0).tr);
        }
        bool all2 = std::all_of(tr.begin(), tr.end(), [](const BigInt& t) { return t >= 2; });
        bool low = std::all_of(tr.begin(), tr.end(), [](const BigInt& t) { return t <= 2; });
        if (!all2 && !low) continue;
        ++s.triples;
        NtlResult x = ntl(normal_form(ProcessTree::node(Kind::Xor, kids)), 0);
        NtlResult q = ntl(normal_form(ProcessTree::node(Kind::Seq, kids)), 0);
        NtlResult a = ntl(normal_form(ProcessTree::node(Kind::And, kids)), 0);
        if (all2) {
            bool strict_ok = x.tr < q.tr && q.tr < a.tr && x.size < q.size && q.size < a.size;
            bool weak_ok = x.tr <= q.tr && q.tr < a.tr && x.size < q.size && q.size < a.size;
            if (!strict_ok) {
                ++s.strict_violations;
                if (s.example.empty())
                    s.example = std::to_string(n) + " children with tr " + tr[0].str() + "," + tr[1].str() +
                                ": |Lx| = " + x.tr.str() + ", |L->| = " + q.tr.str() + ", |L&| = " + a.tr.str();
            }
            if (!weak_ok) ++s.weak_violations;
        }
        if (low) {
            bool ok = x.tr <= a.tr && q.tr < a.tr && x.size <= q.size && q.size < a.size;
            if (!ok) ++s.low_violations;
        }
    }
    return s;
}

Outcome criterion5() {
    Outcome o;
    const VerifyStats& s = corpus().stats;
    o.check(s.size_violations == 0, "abstract minimal log not smaller: " + std::to_string(s.size_violations));
    o.check(s.rediscovery_violations == 0, "abstract model not rediscovered: " + std::to_string(s.rediscovery_violations));
    OperatorSizeStats l5 = operator_sizes(200, 7);
    o.check(l5.strict_violations == 0, "operator log sizes, strict order: " + std::to_string(l5.strict_violations) + " of " +
                                           std::to_string(l5.triples) + " triples violate |Lx| < |L->|");
    if (!l5.example.empty()) o.note("  e.g. " + l5.example);
    o.note("operator log sizes with |Lx| <= |L->|: " + std::to_string(l5.weak_violations) + " violations; 1-2 trace case: " +
           std::to_string(l5.low_violations) + " violations");
    o.check(s.matching_violations == 0, "class matching failures: " + std::to_string(s.matching_violations));
    o.note("EA contract violations " + std::to_string(s.ea_contract_violations) + ", df-completeness violations " +
           std::to_string(s.df_violations));
    return o;
}

Outcome criterion6() {
    Outcome o;
    struct Fixture {
        std::string name, tree;
        std::uint64_t traces, events;
    };
    for (const Fixture& f : std::vector<Fixture>{
             {"activity once per trace", "xor(x,and(c,d,e))", 7, 19},
             {"tau loop", "xor(and(loop(a,tau),loop(b,tau),loop(c,tau)),x)", 91, 541},
             {"loop cut", "xor(and(a,b),seq(x,f))", 3, 0},
         }) {
        NtlResult n = ntl(parse_tree(f.tree), 0);
        bool ok = n.tr == f.traces && (f.events == 0 || n.size == f.events);
        o.check(ok, f.name + ": |L_a| = " + n.tr.str() + ", size " + n.size.str());
    }
    EventLog ms = read_log_file(kData + "/gate_model_structure.txt");
    o.check(ms.num_traces() == 1 && ms.variants().begin()->first == Word{"a", "b", "c"}, "model structure log <a,b,c>");
    for (std::string gate : {"once_per_trace", "tau_loop", "loop_cut", "flower", "activity_concurrent", "model_structure"}) {
        ClassReport r = check_restricted(read_log_file(kData + "/gate_" + gate + ".txt"));
        std::string rules;
        for (const auto& v : r.violations)
            if (rules.find("[" + v.rule + "]") == std::string::npos) rules += "[" + v.rule + "]";
        o.check(!r.in_class, "gate_" + gate + " rejected " + rules);
    }
    return o;
}

Outcome criterion7() {
    Outcome o;
    std::mt19937_64 rng(2024);
    unsigned mismatches = 0;
    TreeShape shape;
    shape.max_activities = 7;
    for (int i = 0; i < 300; ++i) {
        ProcessTree t = random_tree(rng, shape);
        if (behavioral_profile(t) != oracle::language_profile(t)) ++mismatches;
    }
    o.check(mismatches == 0, "behavioral profile vs language oracle, 300 trees: " + std::to_string(mismatches) + " mismatches");

    mismatches = 0;
    for (int i = 0; i < 500; ++i) {
        std::size_t len = rng() % 8;
        Word a = oracle::random_word(rng, len, 3);
        Word b = a;
        std::shuffle(b.begin(), b.end(), rng);
        if (i % 5 == 0) b = oracle::random_word(rng, len, 3);
        KendallResult k = kendall_distance(a, b);
        auto bfs = oracle::bfs_kendall(a, b);
        bool same = k.defined == bfs.has_value() && (!k.defined || k.distance == *bfs);
        if (same && k.defined) {
            Trace moved = apply_transpositions(trace_of(a), k.transpositions);
            same = word_of(moved) == b && k.transpositions.size() == k.distance;
        }
        if (!same) ++mismatches;
    }
    o.check(mismatches == 0, "Kendall distance vs BFS, 500 pairs: " + std::to_string(mismatches) + " mismatches");

    mismatches = 0;
    unsigned primitive = 0;
    for (int i = 0; i < 200; ++i) {
        std::size_t n = 1 + rng() % 8;
        BehavioralProfile p;
        if (i % 2 == 0) {
            p = oracle::random_profile(rng, n);
        } else {
            TreeShape s;
            s.max_activities = 8;
            p = behavioral_profile(random_tree(rng, s));
        }
        Digraph g = order_relations_graph(p);
        ModularDecomposition md = modular_decomposition(g);
        auto strong = oracle::strong_modules(g);
        std::set<std::vector<std::size_t>> got;
        bool kinds = true;
        for (const Module* m : md.modules()) {
            got.insert(m->members);
            if (oracle::module_kind(g, m->members, strong) != m->kind) kinds = false;
        }
        if (got != strong || !kinds) ++mismatches;
        if (md.has_primitive()) ++primitive;
    }
    o.check(mismatches == 0, "modular decomposition vs brute force, 200 graphs: " + std::to_string(mismatches) +
                                 " mismatches (" + std::to_string(primitive) + " with a primitive module)");
    return o;
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"1 ordering-relation regression on AB, AC", criterion1},
        {"2 ntl regression", criterion2},
        {"3 event abstraction end to end", criterion3},
        {"4 synchronization property suite", criterion4},
        {"5 intermediate property suite", criterion5},
        {"6 counterexample fixtures", criterion6},
        {"7 oracle equivalences", criterion7},
    };
    int failed = 0;
    for (auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.check(false, std::string("exception: ") + e.what());
        }
        std::cout << (o.pass ? "PASS " : "FAIL ") << "criterion " << name << '\n';
        for (const auto& n : o.notes) std::cout << "    " << n << '\n';
        if (!o.pass) ++failed;
    }
    std::cout << (7 - failed) << "/7 criteria pass\n";
    return failed == 0 ? 0 : 1;
}
