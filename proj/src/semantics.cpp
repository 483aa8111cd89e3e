#include "synabs/semantics.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace synabs {

namespace {

void require_cc(const ProcessTree& m) {
    ClassReport r = check_class(m, TreeClass::Cc);
    if (!r.in_class) throw ClassViolation(r);
}

// length -> number of traces with that length
using Histogram = std::map<std::uint64_t, BigInt>;

Histogram histogram(const ProcessTree& m) {
    switch (m.kind()) {
        case Kind::Leaf: return {{1, 1}};
        case Kind::Tau: return {{0, 1}};
        case Kind::Loop: return {{2, 1}};  // self-loop, checked by caller
        default: break;
    }
    std::vector<Histogram> kids;
    for (const auto& c : m.children()) kids.push_back(histogram(c));
    Histogram out;
    if (m.kind() == Kind::Xor) {
        for (const auto& h : kids)
            for (const auto& [l, n] : h) out[l] += n;
        return out;
    }
    // seq and and: iterate over combinations of distinct lengths
    std::vector<Histogram::const_iterator> it;
    for (const auto& h : kids) it.push_back(h.begin());
    while (true) {
        std::vector<std::uint64_t> parts;
        BigInt ways = 1;
        std::uint64_t total = 0;
        for (const auto& i : it) {
            parts.push_back(i->first);
            total += i->first;
            ways *= i->second;
        }
        if (m.kind() == Kind::And) ways *= multinomial(parts);
        out[total] += ways;
        std::size_t k = kids.size();
        while (k > 0) {
            --k;
            if (++it[k] != kids[k].end()) break;
            it[k] = kids[k].begin();
            if (k == 0) return out;
        }
    }
}

std::vector<std::uint64_t> lens_of(const ProcessTree& m) {
    switch (m.kind()) {
        case Kind::Leaf: return {1};
        case Kind::Tau: return {0};
        case Kind::Loop: return {2};
        default: break;
    }
    std::vector<std::vector<std::uint64_t>> kids;
    for (const auto& c : m.children()) kids.push_back(lens_of(c));
    std::vector<std::uint64_t> out;
    if (m.kind() == Kind::Xor) {
        for (const auto& k : kids) out.insert(out.end(), k.begin(), k.end());
        return out;
    }
    std::vector<std::size_t> idx(kids.size(), 0);
    while (true) {
        std::vector<std::uint64_t> parts;
        std::uint64_t mk = 0;
        for (std::size_t i = 0; i < kids.size(); ++i) {
            parts.push_back(kids[i][idx[i]]);
            mk += kids[i][idx[i]];
        }
        if (m.kind() == Kind::Seq) {
            out.push_back(mk);
        } else {
            auto reps = multinomial(parts).convert_to<std::uint64_t>();
            out.insert(out.end(), reps, mk);
        }
        std::size_t k = kids.size();
        while (k > 0) {
            --k;
            if (++idx[k] < kids[k].size()) break;
            idx[k] = 0;
            if (k == 0) return out;
        }
    }
}

std::vector<Word> words_of(const ProcessTree& m) {
    switch (m.kind()) {
        case Kind::Leaf: return {{m.label()}};
        case Kind::Tau: return {{}};
        case Kind::Loop: {
            const std::string& v = m.children()[0].label();
            return {{v, v}};
        }
        default: break;
    }
    std::vector<std::vector<Word>> kids;
    for (const auto& c : m.children()) kids.push_back(words_of(c));
    std::vector<Word> out;
    std::set<Word> seen;
    auto push = [&](Word w) {
        if (seen.insert(w).second) out.push_back(std::move(w));
    };
    if (m.kind() == Kind::Xor) {
        for (auto& k : kids)
            for (auto& w : k) push(w);
        return out;
    }
    std::vector<std::size_t> idx(kids.size(), 0);
    while (true) {
        std::vector<Word> pick;
        for (std::size_t i = 0; i < kids.size(); ++i) pick.push_back(kids[i][idx[i]]);
        if (m.kind() == Kind::Seq) {
            Word w;
            for (const auto& p : pick) w.insert(w.end(), p.begin(), p.end());
            push(std::move(w));
        } else {
            for (auto& w : shuffle_product(pick)) push(std::move(w));
        }
        std::size_t k = kids.size();
        while (k > 0) {
            --k;
            if (++idx[k] < kids[k].size()) break;
            idx[k] = 0;
            if (k == 0) return out;
        }
    }
}

}  // namespace

BigInt multinomial(const std::vector<std::uint64_t>& parts) {
    // product of binomials avoids huge factorial intermediates
    BigInt result = 1;
    std::uint64_t running = 0;
    for (std::uint64_t p : parts) {
        for (std::uint64_t i = 1; i <= p; ++i) {
            result *= running + i;
            result /= i;
        }
        running += p;
    }
    return result;
}

std::vector<Word> shuffle_product(const std::vector<Word>& parts) {
    std::vector<Word> out;
    std::vector<std::size_t> pos(parts.size(), 0);
    std::size_t total = 0;
    for (const auto& p : parts) total += p.size();
    Word cur;
    cur.reserve(total);
    std::function<void()> rec = [&]() {
        if (cur.size() == total) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (pos[i] == parts[i].size()) continue;
            cur.push_back(parts[i][pos[i]++]);
            rec();
            --pos[i];
            cur.pop_back();
        }
    };
    rec();
    return out;
}

NtlResult ntl(const ProcessTree& m, std::uint64_t lens_cap) {
    require_cc(m);
    NtlResult r;
    for (const auto& [l, n] : histogram(m)) {
        r.tr += n;
        r.size += n * l;
    }
    if (r.tr <= lens_cap) {
        r.lens = lens_of(m);
    } else {
        r.lens_complete = false;
    }
    return r;
}

std::vector<Word> minimal_words(const ProcessTree& m, std::uint64_t trace_cap) {
    require_cc(m);
    BigInt tr = 0;
    for (const auto& [l, n] : histogram(m)) tr += n;
    if (tr > trace_cap)
        throw CapExceeded("minimal log would have " + tr.str() + " traces, cap is " + std::to_string(trace_cap));
    return words_of(m);
}

EventLog minimal_log(const ProcessTree& m, std::uint64_t trace_cap) {
    EventLog log;
    for (const auto& w : minimal_words(m, trace_cap)) log.add(w);
    return log;
}

std::set<Word> enumerate_language(const ProcessTree& m, unsigned loop_bound) {
    switch (m.kind()) {
        case Kind::Leaf: return {{m.label()}};
        case Kind::Tau: return {{}};
        default: break;
    }
    std::vector<std::set<Word>> kids;
    for (const auto& c : m.children()) kids.push_back(enumerate_language(c, loop_bound));
    auto concat = [](const std::set<Word>& a, const std::set<Word>& b) {
        std::set<Word> out;
        for (const auto& x : a)
            for (const auto& y : b) {
                Word w = x;
                w.insert(w.end(), y.begin(), y.end());
                out.insert(std::move(w));
            }
        return out;
    };
    std::set<Word> out;
    switch (m.kind()) {
        case Kind::Xor:
            for (const auto& k : kids) out.insert(k.begin(), k.end());
            break;
        case Kind::Seq:
            out = kids[0];
            for (std::size_t i = 1; i < kids.size(); ++i) out = concat(out, kids[i]);
            break;
        case Kind::And: {
            std::set<Word> acc = {{}};
            for (const auto& k : kids) {
                std::set<Word> next;
                for (const auto& a : acc)
                    for (const auto& b : k)
                        for (auto& w : shuffle_product({a, b})) next.insert(std::move(w));
                acc = std::move(next);
            }
            out = std::move(acc);
            break;
        }
        case Kind::Loop: {
            // body (redo body)^k for k = 0..bound
            std::set<Word> redo;
            for (std::size_t i = 1; i < kids.size(); ++i) redo.insert(kids[i].begin(), kids[i].end());
            std::set<Word> layer = kids[0];
            out = layer;
            for (unsigned k = 0; k < loop_bound; ++k) {
                layer = concat(concat(layer, redo), kids[0]);
                out.insert(layer.begin(), layer.end());
            }
            break;
        }
        default: break;
    }
    return out;
}

}  // namespace synabs
