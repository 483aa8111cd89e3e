#include "synabs/decomposition.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace synabs {

std::string Digraph::to_dot() const {
    std::ostringstream os;
    os << "digraph G {\n";
    for (std::size_t i = 0; i < size(); ++i) os << "  \"" << vertices[i] << "\";\n";
    for (std::size_t u = 0; u < size(); ++u)
        for (std::size_t v = 0; v < size(); ++v)
            if (edge(u, v)) os << "  \"" << vertices[u] << "\" -> \"" << vertices[v] << "\";\n";
    os << "}\n";
    return os.str();
}

Digraph order_relations_graph(const BehavioralProfile& p) {
    Digraph g(p.activities());
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j) {
            Relation r = p.rel(i, j);
            if (r == Relation::Strict || (r == Relation::Choice && i != j)) g.add_edge(i, j);
        }
    return g;
}

const char* module_kind_name(ModuleKind k) {
    switch (k) {
        case ModuleKind::Leaf: return "leaf";
        case ModuleKind::Linear: return "linear";
        case ModuleKind::AndComplete: return "and-complete";
        case ModuleKind::XorComplete: return "xor-complete";
        case ModuleKind::Primitive: return "primitive";
    }
    return "?";
}

bool is_module(const Digraph& g, const std::vector<std::size_t>& members) {
    if (members.empty()) return false;
    std::vector<char> in(g.size(), 0);
    for (auto m : members) in[m] = 1;
    std::size_t x0 = members.front();
    for (std::size_t z = 0; z < g.size(); ++z) {
        if (in[z]) continue;
        for (auto x : members)
            if (g.edge(z, x) != g.edge(z, x0) || g.edge(x, z) != g.edge(x0, z)) return false;
    }
    return true;
}

namespace {

using Set = std::vector<std::size_t>;

// groups of `s` connected under `linked`
std::vector<Set> components(const Set& s, const std::function<bool(std::size_t, std::size_t)>& linked) {
    std::vector<int> comp(s.size(), -1);
    int n = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (comp[i] >= 0) continue;
        std::vector<std::size_t> stack{i};
        comp[i] = n;
        while (!stack.empty()) {
            std::size_t a = stack.back();
            stack.pop_back();
            for (std::size_t b = 0; b < s.size(); ++b)
                if (comp[b] < 0 && linked(s[a], s[b])) {
                    comp[b] = n;
                    stack.push_back(b);
                }
        }
        ++n;
    }
    std::vector<Set> out(n);
    for (std::size_t i = 0; i < s.size(); ++i) out[comp[i]].push_back(s[i]);
    return out;
}

// strongly connected components of the relation `arc` restricted to s
std::vector<Set> sccs(const Set& s, const std::function<bool(std::size_t, std::size_t)>& arc) {
    std::size_t n = s.size();
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        reach[i][i] = 1;
        for (std::size_t j = 0; j < n; ++j)
            if (arc(s[i], s[j])) reach[i][j] = 1;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (reach[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (reach[k][j]) reach[i][j] = 1;
    std::vector<char> done(n, 0);
    std::vector<Set> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (done[i]) continue;
        Set c;
        for (std::size_t j = 0; j < n; ++j)
            if (reach[i][j] && reach[j][i]) {
                c.push_back(s[j]);
                done[j] = 1;
            }
        out.push_back(c);
    }
    return out;
}

class Decomposer {
public:
    explicit Decomposer(const Digraph& g) : g_(g) {}

    Module run(Set s) {
        std::sort(s.begin(), s.end());
        Module m;
        m.members = s;
        if (s.size() == 1) return m;

        auto both = [&](std::size_t a, std::size_t b) { return g_.edge(a, b) && g_.edge(b, a); };
        auto any = [&](std::size_t a, std::size_t b) { return g_.edge(a, b) || g_.edge(b, a); };
        auto strict = [&](std::size_t a, std::size_t b) { return g_.edge(a, b) && !g_.edge(b, a); };

        auto parts = components(s, any);
        if (parts.size() > 1) return finish(m, ModuleKind::AndComplete, parts);

        parts = components(s, [&](std::size_t a, std::size_t b) { return a != b && !both(a, b); });
        if (parts.size() > 1) return finish(m, ModuleKind::XorComplete, parts);

        parts = sccs(s, [&](std::size_t a, std::size_t b) { return a != b && !strict(a, b); });
        if (parts.size() > 1) {
            std::sort(parts.begin(), parts.end(),
                      [&](const Set& a, const Set& b) { return strict(a.front(), b.front()); });
            bool linear = true;
            for (std::size_t i = 0; i < parts.size() && linear; ++i)
                for (std::size_t j = i + 1; j < parts.size() && linear; ++j)
                    for (auto a : parts[i])
                        for (auto b : parts[j])
                            if (!strict(a, b)) linear = false;
            if (linear) return finish(m, ModuleKind::Linear, parts, false);
        }

        return finish(m, ModuleKind::Primitive, maximal_proper(s));
    }

private:
    const Digraph& g_;

    Module finish(Module m, ModuleKind kind, std::vector<Set> parts, bool sort_parts = true) {
        m.kind = kind;
        if (sort_parts)
            std::sort(parts.begin(), parts.end(), [](const Set& a, const Set& b) { return a.front() < b.front(); });
        for (auto& p : parts) m.children.push_back(run(p));
        return m;
    }

    // smallest module of g[s] containing a and b
    Set closure(const Set& s, std::size_t a, std::size_t b) {
        std::vector<char> in(g_.size(), 0);
        Set x{a, b};
        in[a] = in[b] = 1;
        bool grew = true;
        while (grew) {
            grew = false;
            for (auto z : s) {
                if (in[z]) continue;
                for (auto y : x)
                    if (g_.edge(z, y) != g_.edge(z, a) || g_.edge(y, z) != g_.edge(a, z)) {
                        in[z] = 1;
                        x.push_back(z);
                        grew = true;
                        break;
                    }
            }
        }
        std::sort(x.begin(), x.end());
        return x;
    }

    std::vector<Set> maximal_proper(const Set& s) {
        std::vector<Set> out;
        std::vector<char> placed(g_.size(), 0);
        for (auto v : s) {
            if (placed[v]) continue;
            std::vector<char> in(g_.size(), 0);
            in[v] = 1;
            for (auto w : s) {
                if (w == v) continue;
                Set c = closure(s, v, w);
                if (c.size() == s.size()) continue;
                for (auto u : c) in[u] = 1;
            }
            Set part;
            for (auto u : s)
                if (in[u] && !placed[u]) {
                    part.push_back(u);
                    placed[u] = 1;
                }
            out.push_back(part);
        }
        return out;
    }
};

void render_module(const Module& m, const std::vector<std::string>& names, std::string& out) {
    if (m.kind == ModuleKind::Leaf) {
        out += names[m.members.front()];
        return;
    }
    out += module_kind_name(m.kind);
    out += '[';
    for (std::size_t i = 0; i < m.children.size(); ++i) {
        if (i) out += ", ";
        render_module(m.children[i], names, out);
    }
    out += ']';
}

}  // namespace

ModularDecomposition modular_decomposition(const Digraph& g) {
    ModularDecomposition d;
    d.vertices = g.vertices;
    if (g.size() == 0) return d;
    Set all(g.size());
    std::iota(all.begin(), all.end(), 0);
    d.root = Decomposer(g).run(all);
    return d;
}

bool ModularDecomposition::has_primitive() const {
    for (const Module* m : modules())
        if (m->kind == ModuleKind::Primitive) return true;
    return false;
}

std::vector<const Module*> ModularDecomposition::modules() const {
    std::vector<const Module*> out;
    if (vertices.empty()) return out;
    std::function<void(const Module&)> walk = [&](const Module& m) {
        out.push_back(&m);
        for (const auto& c : m.children) walk(c);
    };
    walk(root);
    return out;
}

std::string ModularDecomposition::render() const {
    std::string out;
    if (!vertices.empty()) render_module(root, vertices, out);
    return out;
}

}  // namespace synabs
