#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace synabs {

enum class Kind { Leaf, Tau, Xor, Seq, And, Loop };

const char* keyword(Kind k);

// Immutable process tree. Copies share structure.
class ProcessTree {
public:
    ProcessTree();  // tau

    static ProcessTree leaf(std::string activity);
    static ProcessTree tau();
    static ProcessTree node(Kind op, std::vector<ProcessTree> children);
    static ProcessTree self_loop(std::string activity);

    Kind kind() const { return rep_->kind; }
    const std::string& label() const { return rep_->label; }
    const std::vector<ProcessTree>& children() const { return rep_->children; }

    bool is_leaf() const { return kind() == Kind::Leaf; }
    bool is_tau() const { return kind() == Kind::Tau; }
    bool is_operator() const { return !is_leaf() && !is_tau(); }
    // loop(v, tau) with v an activity
    bool is_self_loop() const;

    bool operator==(const ProcessTree& other) const;
    bool operator!=(const ProcessTree& other) const { return !(*this == other); }

private:
    struct Rep {
        Kind kind;
        std::string label;
        std::vector<ProcessTree> children;
    };
    explicit ProcessTree(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
    std::shared_ptr<const Rep> rep_;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

bool is_reserved(std::string_view word);
bool is_identifier(std::string_view word);

ProcessTree parse_tree(std::string_view text);
std::string render_tree(const ProcessTree& t);
std::string to_dot(const ProcessTree& t);

std::size_t size(const ProcessTree& t);
std::set<std::string> activities(const ProcessTree& t);
// every non-tau leaf label in left-to-right order, duplicates kept
std::vector<std::string> leaf_labels(const ProcessTree& t);

enum class TreeClass { Cc, Ca };

struct Violation {
    std::string rule;
    std::string path;
    std::string message;
};

struct ClassReport {
    bool in_class = true;
    std::vector<Violation> violations;

    void add(std::string rule, std::string path, std::string message);
    void merge(const ClassReport& other);
    bool has_rule(std::string_view rule) const;
    std::string summary() const;
};

ClassReport check_class(const ProcessTree& t, TreeClass which);

ProcessTree normal_form(const ProcessTree& t);
std::string canonical(const ProcessTree& t);
bool isomorphic(const ProcessTree& a, const ProcessTree& b);

}  // namespace synabs
