#pragma once

// Definition-level oracles and verifiers. These are deliberately naive
// (sorted-suffix scans and direct string checks) and independent of the
// builders; they define what "correct" means for the fast algorithms.
// All of them are capped at n <= 4096.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sfx/text.hpp"

namespace sfx {

struct supermaximal_extension {
    std::string str;    // decoded bytes
    int64_t begin = 0;  // witness occurrence, 0-based inclusive
    int64_t end = 0;
};

// All supermaximal extensions: one-symbol right extensions of right-maximal
// substrings that are a suffix of no other right-maximal string's extension.
// Sorted by (length, content); one witness occurrence each.
std::vector<supermaximal_extension> enumerate_supermaximal(const text& t);

// chi: the number of supermaximal extensions = the cardinality of every
// smallest suffixient set.
int64_t min_cardinality_oracle(const text& t);

// True iff every one-symbol extension of every right-maximal substring is a
// suffix of T[0..x] for some x in positions (0-based).
bool is_suffixient(const text& t, const std::vector<int64_t>& positions,
                   std::string* counterexample = nullptr);

// True iff every distinct substring of T has an occurrence spanning some
// position of the set.
bool is_attractor(const text& t, const std::vector<int64_t>& positions,
                  std::string* counterexample = nullptr);

// Matching statistics of a pattern against T by direct dynamic programming
// over per-symbol occurrence lists (no cap; cost is O(n * m / sigma) expected).
// len[i] = length of the longest suffix of P[0..i] occurring in T;
// end_pos[i] = 0-based end of one such occurrence (-1 when len[i] = 0).
// Pattern symbols are codes; negative codes never match.
struct matching_stats {
    std::vector<int64_t> len;
    std::vector<int64_t> end_pos;
};
matching_stats naive_matching_stats(const text& t, std::span<const int16_t> p);

// Smallest 1-based prefix length of P that does not occur in T, 0 if all do.
int64_t naive_first_failing_prefix(const matching_stats& ms);

// MEMs as (end-in-pattern, length) pairs, 1-based ends, derived from the
// matching statistics; a match is maximal iff it cannot grow at i+1.
std::vector<std::pair<int64_t, int64_t>> naive_mem_set(const matching_stats& ms);

} // namespace sfx
