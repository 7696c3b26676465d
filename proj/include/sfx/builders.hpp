#pragma once

// Construction of minimum-cardinality suffixient sets from the BWT/LCP/SA of
// the reversed text, and assembly of the colex-sorted suffixient array.
//
// A set S of positions of T is suffixient when every one-symbol right
// extension of every right-maximal substring of T is a suffix of T[0..x] for
// some x in S. The builders below all return a smallest such set; they may
// pick different witness positions (their tie-breaking differs), so the
// contract is set-level: equal cardinality chi and suffixiency.
//
// All returned positions are 0-based positions of the forward text T and the
// result is sorted ascending with no duplicates.

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <vector>

#include "sfx/suffix_structs.hpp"
#include "sfx/text.hpp"

namespace sfx {

// Array access counters, filled by the builders that take them.
struct build_stats {
    uint64_t bwt_reads = 0;
    uint64_t lcp_reads = 0;
    uint64_t sa_reads = 0;
};

// Candidate-state event log, one entry per run-break decision. Used by the
// correctness tests to follow the builders' emission discipline.
struct build_trace {
    enum kind_t : uint8_t {
        emit,      // candidate position added to the output set
        reset,     // candidate deactivated, len lowered to the current minimum
        activate,  // candidate replaced by (len, pos, active)
    };
    struct event {
        kind_t kind;
        uint8_t symbol;
        int64_t row;   // BWT row being processed (0-based), -1 for final flush
        int64_t len;
        int64_t pos;   // 0-based text position (emit/activate)
    };
    std::vector<event> events;
};

// Positions at BWT run boundaries; suffixient of size <= 2 * runs(bwt).
std::vector<int64_t> run_boundary_set(const suffix_structs& ss);

// Reference algorithm: for each c-run break, scans the LCP box around it.
// Quadratic time; kept as the ground truth the faster builders match.
std::vector<int64_t> build_quadratic(const suffix_structs& ss);

// Single left-to-right scan with per-symbol candidates; O(n + runs * sigma).
std::vector<int64_t> build_one_pass(const suffix_structs& ss, build_stats* stats = nullptr,
                                    build_trace* trace = nullptr);

// Linear time: evaluates only the two run-break symbols, using an
// incrementally maintained LF vector to recover the minimum LCP since the
// previous same-symbol run break.
std::vector<int64_t> build_linear_lf(const suffix_structs& ss, build_stats* stats = nullptr,
                                     build_trace* trace = nullptr);

// Linear time via precomputed PSV/NSV boxes: keeps first c-candidates and
// reports first c-maxima.
std::vector<int64_t> build_linear_fm(const suffix_structs& ss, const sv_arrays& sv,
                                     build_stats* stats = nullptr,
                                     build_trace* trace = nullptr);

// A smallest suffixient set sorted by the co-lexicographic order of the
// prefixes its positions end.
struct suffixient_array {
    int64_t n = 0;
    uint8_t sigma = 0;
    std::array<int16_t, 256> alpha_map{};
    std::vector<uint8_t> alpha_inv;
    std::vector<int64_t> entries;  // 0-based positions, colex order

    int64_t chi() const { return static_cast<int64_t>(entries.size()); }

    // format: magic "SUFX", version u32, n u64, sigma u8, 256-byte alphabet
    // map (0xFF = absent), chi u64, chi u64 0-based positions in colex order
    void serialize(std::ostream& out) const;
    static suffixient_array load(std::istream& in);
    size_t byte_size() const { return 4 + 4 + 8 + 1 + 256 + 8 + 8 * entries.size(); }
};

suffixient_array to_suffixient_array(std::vector<int64_t> positions, const text& t,
                                     const suffix_structs& rev_ss);

} // namespace sfx
