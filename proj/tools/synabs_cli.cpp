// synabs: discover, abstract and re-discover process trees from event logs.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
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

struct Globals {
    std::uint64_t seed = 42;
    std::string format = "text";
    std::string out_dir;
    bool attrs = false;
};

constexpr int kOk = 0, kError = 1, kGate = 2;

// writes to <out_dir>/<name> when --out was given, else stdout
void emit(const Globals& g, const std::string& name, const std::string& text) {
    if (g.out_dir.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::filesystem::create_directories(g.out_dir);
    auto path = std::filesystem::path(g.out_dir) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << text;
    std::cerr << "wrote " << path.string() << '\n';
}

std::string log_text(const Globals& g, const EventLog& log) {
    std::ostringstream os;
    if (g.format == "csv")
        write_csv(os, log);
    else
        write_compact(os, log);
    return os.str();
}

std::string tree_text(const Globals& g, const ProcessTree& t) {
    return g.format == "dot" ? to_dot(t) : render_tree(t) + "\n";
}

ProcessTree tree_arg(const std::string& arg) {
    if (std::filesystem::exists(arg)) return read_tree_file(arg);
    return parse_tree(arg);
}

int report_gate(const ClassReport& r, const std::string& what) {
    std::cerr << what << ":\n" << r.summary() << '\n';
    return kGate;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Synchronized process-model and event-log abstraction"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--seed", g.seed, "Seed for generated instances");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "dot", "csv"}));
    app.add_option("--out", g.out_dir, "Write outputs into this directory");
    app.add_flag("--attrs", g.attrs, "Event attributes take part in trace identity");

    std::string log_path, tree_path, spec_path;
    bool show_audit = false, force = false, violate = false, with_timings = false;
    std::uint64_t count = 300;

    auto* discover_cmd = app.add_subcommand("discover", "Discover a process tree from a log");
    discover_cmd->add_option("log", log_path, "Event log (.csv or compact)")->required();
    discover_cmd->add_flag("--audit", show_audit, "Print cuts and fall-throughs");

    auto* profile_cmd = app.add_subcommand("profile", "Behavioral profile of a tree");
    profile_cmd->add_option("tree", tree_path, "Tree file or expression")->required();

    auto* minlog_cmd = app.add_subcommand("minlog", "Minimal df-complete log of a tree");
    minlog_cmd->add_option("tree", tree_path, "Tree file or expression")->required();

    auto* am_cmd = app.add_subcommand("abstract-model", "Abstract a tree");
    am_cmd->add_option("tree", tree_path, "Tree file or expression")->required();
    am_cmd->add_option("spec", spec_path, "Aggregation spec (JSON)")->required();

    auto* al_cmd = app.add_subcommand("abstract-log", "Abstract a log against a tree");
    al_cmd->add_option("log", log_path, "Event log")->required();
    al_cmd->add_option("tree", tree_path, "Tree file, expression, or 'auto' to discover it")->required();
    al_cmd->add_option("spec", spec_path, "Aggregation spec (JSON)")->required();

    auto* rt_cmd = app.add_subcommand("roundtrip", "Discover, abstract both sides, rediscover, compare");
    rt_cmd->add_option("log", log_path, "Event log")->required();
    rt_cmd->add_option("spec", spec_path, "Aggregation spec (JSON)")->required();
    rt_cmd->add_flag("--force", force, "Continue when the log is not restricted");
    rt_cmd->add_flag("--timings", with_timings, "Include stage timings");

    auto* verify_cmd = app.add_subcommand("verify", "Check the synchronization property on generated instances");
    verify_cmd->add_option("-n,--count", count, "Number of instances");
    verify_cmd->add_flag("--violate", violate, "Generate logs that break the restriction (negative control)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (discover_cmd->parsed()) {
            Discovery d = discover(read_log_file(log_path, g.attrs));
            emit(g, g.format == "dot" ? "tree.dot" : "tree.txt", tree_text(g, d.tree));
            if (show_audit) {
                std::cerr << d.audit.summary() << '\n';
                ClassReport r = restriction_report(d);
                std::cerr << (r.in_class ? "restricted" : "not restricted:\n" + r.summary()) << '\n';
            }
            return kOk;
        }
        if (profile_cmd->parsed()) {
            ProcessTree t = tree_arg(tree_path);
            BehavioralProfile p = behavioral_profile(t);
            if (g.format == "dot")
                emit(g, "profile.dot", order_relations_graph(p).to_dot());
            else
                emit(g, "profile.tsv", p.to_tsv());
            return kOk;
        }
        if (minlog_cmd->parsed()) {
            ProcessTree t = tree_arg(tree_path);
            NtlResult n = ntl(t, 0);
            std::cerr << "traces " << n.tr << ", events " << n.size << '\n';
            emit(g, g.format == "csv" ? "minlog.csv" : "minlog.txt", log_text(g, minimal_log(t)));
            return kOk;
        }
        if (am_cmd->parsed()) {
            ProcessTree t = tree_arg(tree_path);
            AggSpec spec = read_agg_spec_file(spec_path);
            ClassReport r = applicable(t, spec);
            if (!r.in_class) return report_gate(r, "not applicable");
            AbstractionContext c = abstraction_context(t, spec);
            if (g.format == "dot")
                emit(g, "abstract.dot", to_dot(c.m_a));
            else
                emit(g, "abstract.txt", render_tree(c.m_a) + "\n");
            std::cerr << "decomposition " << c.mdt.render() << '\n';
            return kOk;
        }
        if (al_cmd->parsed()) {
            EventLog log = read_log_file(log_path, g.attrs);
            ProcessTree t = tree_path == "auto" ? discover(log).tree : tree_arg(tree_path);
            AggSpec spec = read_agg_spec_file(spec_path);
            ClassReport r = applicable(t, spec);
            if (!r.in_class) return report_gate(r, "not applicable");
            Ea2Result e = ea2(ea1(log, abstraction_context(t, spec)), ma_bpa(t, spec));
            std::ostringstream os;
            write_csv(os, e.log);
            emit(g, "abstracted.csv", os.str());
            std::cerr << "transpositions " << e.transpositions << '\n';
            return kOk;
        }
        if (rt_cmd->parsed()) {
            EventLog log = read_log_file(log_path, g.attrs);
            AggSpec spec = read_agg_spec_file(spec_path);
            RoundtripReport r = roundtrip(log, spec, {!force});
            emit(g, "report.json", r.to_json(with_timings));
            if (!g.out_dir.empty() && r.stopped.empty()) {
                std::ostringstream os;
                write_csv(os, r.l_r_log);
                emit(g, "L_r.csv", os.str());
            }
            if (r.stopped_at_gate) return kGate;
            return r.isomorphic ? kOk : kError;
        }
        if (verify_cmd->parsed()) {
            GenParams p;
            p.violate = violate;
            VerifyStats s = verify(count, g.seed, p);
            emit(g, "verify.json", s.to_json());
            return s.failed == 0 ? kOk : kError;
        }
    } catch (const NotApplicable& e) {
        return report_gate(e.report, "not applicable");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kError;
    }
    return kError;
}
