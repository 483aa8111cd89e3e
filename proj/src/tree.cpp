#include "synabs/tree.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <sstream>

namespace synabs {

const char* keyword(Kind k) {
    switch (k) {
        case Kind::Leaf: return "leaf";
        case Kind::Tau: return "tau";
        case Kind::Xor: return "xor";
        case Kind::Seq: return "seq";
        case Kind::And: return "and";
        case Kind::Loop: return "loop";
    }
    return "?";
}

ProcessTree::ProcessTree() : rep_(std::make_shared<const Rep>(Rep{Kind::Tau, {}, {}})) {}

ProcessTree ProcessTree::leaf(std::string activity) {
    if (!is_identifier(activity) || is_reserved(activity))
        throw std::invalid_argument("invalid activity name '" + activity + "'");
    return ProcessTree(std::make_shared<const Rep>(Rep{Kind::Leaf, std::move(activity), {}}));
}

ProcessTree ProcessTree::tau() { return ProcessTree(); }

ProcessTree ProcessTree::node(Kind op, std::vector<ProcessTree> children) {
    if (op == Kind::Leaf || op == Kind::Tau)
        throw std::invalid_argument("node() needs an operator kind");
    if (children.size() < 2)
        throw std::invalid_argument(std::string(keyword(op)) + " node needs at least 2 children");
    return ProcessTree(std::make_shared<const Rep>(Rep{op, {}, std::move(children)}));
}

ProcessTree ProcessTree::self_loop(std::string activity) {
    return node(Kind::Loop, {leaf(std::move(activity)), tau()});
}

bool ProcessTree::is_self_loop() const {
    return kind() == Kind::Loop && children().size() == 2 && children()[0].is_leaf() &&
           children()[1].is_tau();
}

bool ProcessTree::operator==(const ProcessTree& other) const {
    if (rep_ == other.rep_) return true;
    if (kind() != other.kind() || label() != other.label() ||
        children().size() != other.children().size())
        return false;
    for (std::size_t i = 0; i < children().size(); ++i)
        if (children()[i] != other.children()[i]) return false;
    return true;
}

bool is_reserved(std::string_view w) {
    return w == "seq" || w == "xor" || w == "and" || w == "loop" || w == "tau";
}

bool is_identifier(std::string_view w) {
    if (w.empty()) return false;
    return std::all_of(w.begin(), w.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    ProcessTree parse() {
        ProcessTree t = tree();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError("unexpected trailing input", pos_);
        return t;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    std::string ident() {
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        if (start == pos_) {
            if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
            throw ParseError(std::string("unexpected character '") + s_[pos_] + "'", pos_);
        }
        return std::string(s_.substr(start, pos_ - start));
    }

    ProcessTree tree() {
        skip_ws();
        std::size_t start = pos_;
        std::string word = ident();
        skip_ws();
        bool call = pos_ < s_.size() && s_[pos_] == '(';
        if (word == "tau") {
            if (call) throw ParseError("'tau' takes no arguments", pos_);
            return ProcessTree::tau();
        }
        Kind op;
        if (word == "seq") op = Kind::Seq;
        else if (word == "xor") op = Kind::Xor;
        else if (word == "and") op = Kind::And;
        else if (word == "loop") op = Kind::Loop;
        else {
            if (call) throw ParseError("unknown operator '" + word + "'", start);
            return ProcessTree::leaf(word);
        }
        if (!call) throw ParseError("reserved word '" + word + "' used as activity", start);
        ++pos_;
        std::vector<ProcessTree> kids;
        kids.push_back(tree());
        skip_ws();
        while (pos_ < s_.size() && s_[pos_] == ',') {
            ++pos_;
            kids.push_back(tree());
            skip_ws();
        }
        if (pos_ >= s_.size()) throw ParseError("expected ')'", pos_);
        if (s_[pos_] != ')') throw ParseError(std::string("expected ',' or ')' but got '") + s_[pos_] + "'", pos_);
        ++pos_;
        if (kids.size() < 2)
            throw ParseError("operator '" + word + "' needs at least 2 children, got " +
                                 std::to_string(kids.size()),
                             start);
        return ProcessTree::node(op, std::move(kids));
    }
};

void render(const ProcessTree& t, std::string& out) {
    switch (t.kind()) {
        case Kind::Leaf: out += t.label(); return;
        case Kind::Tau: out += "tau"; return;
        default: break;
    }
    out += keyword(t.kind());
    out += '(';
    for (std::size_t i = 0; i < t.children().size(); ++i) {
        if (i) out += ',';
        render(t.children()[i], out);
    }
    out += ')';
}

}  // namespace

ProcessTree parse_tree(std::string_view text) { return Parser(text).parse(); }

std::string render_tree(const ProcessTree& t) {
    std::string out;
    render(t, out);
    return out;
}

std::string to_dot(const ProcessTree& t) {
    std::ostringstream os;
    os << "digraph tree {\n  node [shape=box];\n";
    std::size_t next = 0;
    std::function<std::size_t(const ProcessTree&)> emit = [&](const ProcessTree& n) {
        std::size_t id = next++;
        std::string label;
        switch (n.kind()) {
            case Kind::Leaf: label = n.label(); break;
            case Kind::Tau: label = "\xcf\x84"; break;
            case Kind::Xor: label = "\xc3\x97"; break;
            case Kind::Seq: label = "\xe2\x86\x92"; break;
            case Kind::And: label = "\xe2\x88\xa7"; break;
            case Kind::Loop: label = "\xe2\x86\xba"; break;
        }
        os << "  n" << id << " [label=\"" << label << "\"" << (n.is_operator() ? ", shape=circle" : "")
           << "];\n";
        for (const auto& c : n.children()) {
            std::size_t cid = emit(c);
            os << "  n" << id << " -> n" << cid << ";\n";
        }
        return id;
    };
    emit(t);
    os << "}\n";
    return os.str();
}

std::size_t size(const ProcessTree& t) {
    std::size_t n = 1;
    for (const auto& c : t.children()) n += size(c);
    return n;
}

std::vector<std::string> leaf_labels(const ProcessTree& t) {
    std::vector<std::string> out;
    std::function<void(const ProcessTree&)> walk = [&](const ProcessTree& n) {
        if (n.is_leaf()) out.push_back(n.label());
        for (const auto& c : n.children()) walk(c);
    };
    walk(t);
    return out;
}

std::set<std::string> activities(const ProcessTree& t) {
    auto labels = leaf_labels(t);
    return {labels.begin(), labels.end()};
}

void ClassReport::add(std::string rule, std::string path, std::string message) {
    in_class = false;
    violations.push_back({std::move(rule), std::move(path), std::move(message)});
}

void ClassReport::merge(const ClassReport& other) {
    for (const auto& v : other.violations) add(v.rule, v.path, v.message);
}

bool ClassReport::has_rule(std::string_view rule) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.rule == rule; });
}

std::string ClassReport::summary() const {
    if (in_class) return "ok";
    std::string out;
    for (const auto& v : violations) {
        if (!out.empty()) out += "; ";
        out += "[" + v.rule + "] " + v.path + ": " + v.message;
    }
    return out;
}

ClassReport check_class(const ProcessTree& t, TreeClass which) {
    ClassReport report;
    std::map<std::string, std::string> first_seen;
    std::function<void(const ProcessTree&, const std::string&, bool)> walk =
        [&](const ProcessTree& n, const std::string& path, bool in_self_loop) {
            if (n.is_leaf()) {
                auto [it, fresh] = first_seen.emplace(n.label(), path);
                if (!fresh)
                    report.add("1", path, "duplicate activity '" + n.label() + "' (first at " + it->second + ")");
                return;
            }
            if (n.is_tau()) {
                if (which == TreeClass::Ca && !in_self_loop)
                    report.add("3", path, "tau outside a self-loop");
                return;
            }
            bool self = n.is_self_loop();
            if (n.kind() == Kind::Loop && !self)
                report.add("2", path, "loop node is not of the form loop(v,tau)");
            for (std::size_t i = 0; i < n.children().size(); ++i)
                walk(n.children()[i], path + "/" + std::to_string(i), self);
        };
    walk(t, "root", false);
    return report;
}

ProcessTree normal_form(const ProcessTree& t) {
    if (!t.is_operator()) return t;
    std::vector<ProcessTree> kids;
    for (const auto& c : t.children()) {
        ProcessTree nc = normal_form(c);
        bool flatten = t.kind() != Kind::Loop && nc.kind() == t.kind();
        if (flatten)
            kids.insert(kids.end(), nc.children().begin(), nc.children().end());
        else
            kids.push_back(nc);
    }
    return ProcessTree::node(t.kind(), std::move(kids));
}

std::string canonical(const ProcessTree& t) {
    if (!t.is_operator()) return render_tree(t);
    std::vector<std::string> parts;
    for (const auto& c : t.children()) parts.push_back(canonical(c));
    if (t.kind() == Kind::Xor || t.kind() == Kind::And)
        std::sort(parts.begin(), parts.end());
    else if (t.kind() == Kind::Loop)
        std::sort(parts.begin() + 1, parts.end());
    std::string out = keyword(t.kind());
    out += '(';
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ',';
        out += parts[i];
    }
    out += ')';
    return out;
}

bool isomorphic(const ProcessTree& a, const ProcessTree& b) { return canonical(a) == canonical(b); }

}  // namespace synabs
