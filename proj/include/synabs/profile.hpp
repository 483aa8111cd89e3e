#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "synabs/semantics.hpp"
#include "synabs/tree.hpp"

namespace synabs {

// Strict: x before y. Inverse: y before x.
enum class Relation : std::uint8_t { Strict, Inverse, Choice, Parallel };

const char* symbol(Relation r);
Relation parse_relation(const std::string& s);
Relation mirror(Relation r);

class BehavioralProfile {
public:
    BehavioralProfile() = default;
    // every pair starts as Choice
    explicit BehavioralProfile(std::vector<std::string> activities);

    const std::vector<std::string>& activities() const { return acts_; }
    std::size_t size() const { return acts_.size(); }
    bool contains(const std::string& a) const;
    std::size_t index(const std::string& a) const;

    Relation rel(std::size_t i, std::size_t j) const { return rel_[i * acts_.size() + j]; }
    Relation rel(const std::string& x, const std::string& y) const { return rel(index(x), index(y)); }
    // sets (x,y) and its mirror (y,x)
    void set(std::size_t i, std::size_t j, Relation r);
    void set(const std::string& x, const std::string& y, Relation r) { set(index(x), index(y), r); }

    bool operator==(const BehavioralProfile& o) const { return acts_ == o.acts_ && rel_ == o.rel_; }
    bool operator!=(const BehavioralProfile& o) const { return !(*this == o); }

    // tab separated matrix, row relation to column
    std::string to_tsv() const;

private:
    std::vector<std::string> acts_;
    std::vector<Relation> rel_;
};

BehavioralProfile behavioral_profile(const ProcessTree& m);
BehavioralProfile weak_order_oracle(const ProcessTree& m, std::uint64_t cap = kDefaultTraceCap);
// order relations from eventually-follows pairs over a set of traces
BehavioralProfile profile_of_words(const std::vector<std::string>& activities, const std::vector<Word>& words);

}  // namespace synabs
