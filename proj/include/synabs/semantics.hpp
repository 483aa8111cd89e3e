#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "synabs/log.hpp"
#include "synabs/tree.hpp"

namespace synabs {

using BigInt = boost::multiprecision::cpp_int;

class ClassViolation : public std::runtime_error {
public:
    explicit ClassViolation(const ClassReport& r)
        : std::runtime_error("class violation: " + r.summary()), report(r) {}
    ClassReport report;
};

class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct NtlResult {
    BigInt tr = 0;
    BigInt size = 0;
    // per-trace lengths in combination-index order; filled only when tr <= the lens cap
    std::vector<std::uint64_t> lens;
    bool lens_complete = true;
};

inline constexpr std::uint64_t kDefaultTraceCap = 100000;

NtlResult ntl(const ProcessTree& m, std::uint64_t lens_cap = 1000000);

// Distinct traces, each with multiplicity 1, in combination-index order.
EventLog minimal_log(const ProcessTree& m, std::uint64_t trace_cap = kDefaultTraceCap);
std::vector<Word> minimal_words(const ProcessTree& m, std::uint64_t trace_cap = kDefaultTraceCap);

std::set<Word> enumerate_language(const ProcessTree& m, unsigned loop_bound);

BigInt multinomial(const std::vector<std::uint64_t>& parts);

// All order-preserving interleavings, ordered lexicographically by child-pick sequence.
std::vector<Word> shuffle_product(const std::vector<Word>& parts);

}  // namespace synabs
