#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "synabs/profile.hpp"

namespace synabs {

struct Digraph {
    std::vector<std::string> vertices;
    std::vector<std::vector<char>> adj;

    Digraph() = default;
    explicit Digraph(std::vector<std::string> names)
        : vertices(std::move(names)), adj(vertices.size(), std::vector<char>(vertices.size(), 0)) {}

    std::size_t size() const { return vertices.size(); }
    bool edge(std::size_t u, std::size_t v) const { return adj[u][v] != 0; }
    void add_edge(std::size_t u, std::size_t v) { adj[u][v] = 1; }
    std::string to_dot() const;
};

// edges: strict order plus choice without the identity
Digraph order_relations_graph(const BehavioralProfile& p);

enum class ModuleKind { Leaf, Linear, AndComplete, XorComplete, Primitive };

const char* module_kind_name(ModuleKind k);

struct Module {
    std::vector<std::size_t> members;  // sorted vertex indices
    ModuleKind kind = ModuleKind::Leaf;
    // Linear: in linear order; otherwise ordered by smallest member
    std::vector<Module> children;
};

struct ModularDecomposition {
    std::vector<std::string> vertices;
    Module root;

    bool has_primitive() const;
    std::vector<const Module*> modules() const;  // pre-order
    std::string render() const;
};

ModularDecomposition modular_decomposition(const Digraph& g);

// checks the module property of a vertex subset
bool is_module(const Digraph& g, const std::vector<std::size_t>& members);

}  // namespace synabs
