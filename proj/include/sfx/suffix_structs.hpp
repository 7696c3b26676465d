#pragma once

// SA, LCP and BWT of the reversed text, plus PSV/NSV and the position
// translation helpers used by the suffixient-set construction algorithms.
//
// Conventions (all 0-based):
//   sa[i]   start of the i-th smallest suffix of rev T; sa[0] = n-1 ("$").
//   lcp[0]  = 0; lcp[i] = |longest common prefix| of suffixes sa[i-1], sa[i].
//   bwt[i]  = rev T[sa[i]-1], with rev T[-1] taken as the sentinel.
//   text_pos(i) maps BWT row i to the position in (forward) T holding bwt[i].

#include <cstdint>
#include <span>
#include <vector>

#include "sfx/text.hpp"

namespace sfx {

struct suffix_structs {
    int64_t n = 0;
    std::vector<int64_t> sa;
    std::vector<int64_t> isa;
    std::vector<int64_t> lcp;
    std::vector<uint8_t> bwt;

    // rev_t must be the reversed text (callers pass reverse_text(T)).
    static suffix_structs build(const text& rev_t);

    int64_t text_pos(int64_t row) const { return n - 1 - sa[row]; }
    int64_t bwt_row(int64_t tpos) const { return isa[n - 1 - tpos]; }

    // Rank of the prefix T[0..tpos] in co-lexicographic order among all
    // prefixes of T. The full prefix (tpos = n-1) ranks first: its reverse
    // starts with the sentinel, the smallest symbol.
    int64_t colex_rank(int64_t tpos) const {
        return tpos == n - 1 ? 0 : isa[n - 2 - tpos];
    }
};

int64_t count_runs(std::span<const uint8_t> s);

struct sv_arrays {
    std::vector<int64_t> psv;  // max j < i with lcp[j] < lcp[i], else -1
    std::vector<int64_t> nsv;  // min j > i with lcp[j] < lcp[i], else n
};

sv_arrays build_sv(std::span<const int64_t> lcp);

// Suffix sorting by induced sorting. If append_sentinel, a virtual smallest
// terminator is appended (input symbols must then all be nonzero) and its SA
// entry dropped; otherwise the input's last symbol must be the unique minimum.
std::vector<int64_t> suffix_array_bytes(std::span<const uint8_t> s, int sigma,
                                        bool append_sentinel);

std::vector<int64_t> lcp_from_sa(std::span<const uint8_t> s, std::span<const int64_t> sa,
                                 std::span<const int64_t> isa);

} // namespace sfx
