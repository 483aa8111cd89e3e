#include "synabs/profile.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace synabs {

const char* symbol(Relation r) {
    switch (r) {
        case Relation::Strict: return "->";
        case Relation::Inverse: return "<-";
        case Relation::Choice: return "+";
        case Relation::Parallel: return "||";
    }
    return "?";
}

Relation parse_relation(const std::string& s) {
    if (s == "->") return Relation::Strict;
    if (s == "<-") return Relation::Inverse;
    if (s == "+") return Relation::Choice;
    if (s == "||") return Relation::Parallel;
    throw std::invalid_argument("unknown relation symbol '" + s + "'");
}

Relation mirror(Relation r) {
    if (r == Relation::Strict) return Relation::Inverse;
    if (r == Relation::Inverse) return Relation::Strict;
    return r;
}

BehavioralProfile::BehavioralProfile(std::vector<std::string> activities) : acts_(std::move(activities)) {
    std::sort(acts_.begin(), acts_.end());
    acts_.erase(std::unique(acts_.begin(), acts_.end()), acts_.end());
    rel_.assign(acts_.size() * acts_.size(), Relation::Choice);
}

bool BehavioralProfile::contains(const std::string& a) const {
    return std::binary_search(acts_.begin(), acts_.end(), a);
}

std::size_t BehavioralProfile::index(const std::string& a) const {
    auto it = std::lower_bound(acts_.begin(), acts_.end(), a);
    if (it == acts_.end() || *it != a) throw std::out_of_range("activity '" + a + "' not in profile");
    return static_cast<std::size_t>(it - acts_.begin());
}

void BehavioralProfile::set(std::size_t i, std::size_t j, Relation r) {
    rel_[i * acts_.size() + j] = r;
    rel_[j * acts_.size() + i] = mirror(r);
}

std::string BehavioralProfile::to_tsv() const {
    std::ostringstream os;
    for (const auto& a : acts_) os << '\t' << a;
    os << '\n';
    for (std::size_t i = 0; i < acts_.size(); ++i) {
        os << acts_[i];
        for (std::size_t j = 0; j < acts_.size(); ++j) os << '\t' << symbol(rel(i, j));
        os << '\n';
    }
    return os.str();
}

BehavioralProfile behavioral_profile(const ProcessTree& m) {
    ClassReport r = check_class(m, TreeClass::Cc);
    if (!r.in_class) throw ClassViolation(r);

    // root-to-leaf path of (node, child index) for each activity
    struct Step {
        const ProcessTree* node;
        std::size_t child;
    };
    std::map<std::string, std::vector<Step>> paths;
    std::map<std::string, bool> looped;
    std::vector<Step> cur;
    std::function<void(const ProcessTree&, bool)> walk = [&](const ProcessTree& n, bool in_loop) {
        if (n.is_leaf()) {
            paths[n.label()] = cur;
            looped[n.label()] = in_loop;
            return;
        }
        bool self = n.is_self_loop();
        for (std::size_t i = 0; i < n.children().size(); ++i) {
            cur.push_back({&n, i});
            walk(n.children()[i], in_loop || self);
            cur.pop_back();
        }
    };
    walk(m, false);

    std::vector<std::string> acts;
    for (const auto& [a, p] : paths) acts.push_back(a);
    BehavioralProfile p(acts);
    for (std::size_t i = 0; i < acts.size(); ++i) {
        p.set(i, i, looped[acts[i]] ? Relation::Parallel : Relation::Choice);
        const auto& pi = paths[acts[i]];
        for (std::size_t j = i + 1; j < acts.size(); ++j) {
            const auto& pj = paths[acts[j]];
            std::size_t d = 0;
            while (d < pi.size() && d < pj.size() && pi[d].node == pj[d].node && pi[d].child == pj[d].child) ++d;
            // pi[d] and pj[d] share the lowest common ancestor
            const ProcessTree& lca = *pi[d].node;
            Relation rel = Relation::Parallel;
            switch (lca.kind()) {
                case Kind::Seq: rel = pi[d].child < pj[d].child ? Relation::Strict : Relation::Inverse; break;
                case Kind::Xor: rel = Relation::Choice; break;
                default: rel = Relation::Parallel; break;
            }
            p.set(i, j, rel);
        }
    }
    return p;
}

BehavioralProfile profile_of_words(const std::vector<std::string>& activities, const std::vector<Word>& words) {
    BehavioralProfile p(activities);
    std::size_t n = p.size();
    std::vector<char> follows(n * n, 0);
    for (const auto& w : words) {
        std::vector<std::size_t> idx;
        for (const auto& a : w) idx.push_back(p.index(a));
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = i + 1; j < idx.size(); ++j) follows[idx[i] * n + idx[j]] = 1;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            bool ij = follows[i * n + j], ji = follows[j * n + i];
            Relation r = ij && ji ? Relation::Parallel
                         : ij     ? Relation::Strict
                         : ji     ? Relation::Inverse
                                  : Relation::Choice;
            p.set(i, j, r);
        }
    return p;
}

BehavioralProfile weak_order_oracle(const ProcessTree& m, std::uint64_t cap) {
    auto ws = minimal_words(m, cap);
    auto extra = enumerate_language(m, 1);
    if (extra.size() > cap) throw CapExceeded("bounded language exceeds oracle cap");
    ws.insert(ws.end(), extra.begin(), extra.end());
    auto acts = activities(m);
    return profile_of_words({acts.begin(), acts.end()}, ws);
}

}  // namespace synabs
