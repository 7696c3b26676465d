#pragma once

// The query engine: longest-common-suffix search by binary search over the
// suffixient array, online per-prefix locate, and maximal exact match
// enumeration, all on top of a random-access oracle.
//
// Query results use 1-based text positions and pattern lengths; 0 means
// "none". Patterns are handed in as raw bytes and mapped to codes; bytes
// outside the indexed alphabet never match, the sentinel byte is rejected.

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "sfx/builders.hpp"
#include "sfx/oracle.hpp"

namespace sfx {

struct query_stats {
    uint64_t search_calls = 0;
    uint64_t binary_search_steps = 0;  // comparator probes plus neighbor checks
    uint64_t steps_max = 0;            // worst single search
    uint64_t oracle_chars_read = 0;
    uint64_t predecessor_lookups = 0;
};

struct search_hit {
    int64_t x = 0;    // 1-based end of a prefix maximizing the common suffix
    int64_t len = 0;  // that longest common suffix length
};

struct mem {
    int64_t end_in_pattern;  // 1-based
    int64_t end_in_text;     // 1-based
    int64_t len;
    bool operator==(const mem&) const = default;
};

// Packed reversed k-symbol suffixes of the sampled prefixes, one key per
// distinct k-suffix with its contiguous entry range. The last symbol of the
// prefix occupies the most significant group, so integer order equals colex
// order truncated to k symbols; short prefixes pad with the sentinel code.
struct seed_table {
    int k = 0;
    int width = 0;
    std::vector<uint64_t> keys;
    std::vector<int64_t> lo, hi;  // inclusive ranges into the entry array

    bool empty() const { return k == 0; }
    size_t byte_size() const { return 1 + 8 + 16 * keys.size() + 8 * keys.size(); }
};

seed_table build_seed_table(const suffixient_array& sa, const text_oracle& oracle, int k);

int default_seed_k(int sigma);

class sa_index {
public:
    sa_index() = default;
    sa_index(suffixient_array sa, std::unique_ptr<text_oracle> oracle, int seed_k);

    int64_t n() const { return sa_.n; }
    int64_t chi() const { return sa_.chi(); }
    int seed_k() const { return k_; }
    bool has_seeds() const { return !seeds_.empty(); }
    const suffixient_array& sarr() const { return sa_; }
    const text_oracle& oracle() const { return *oracle_; }
    const seed_table& seeds() const { return seeds_; }

    // raw bytes -> codes; unmapped bytes become -1; throws on the sentinel byte
    std::vector<int16_t> map_pattern(std::string_view raw) const;

    search_hit search(std::span<const int16_t> q, query_stats* st = nullptr) const;
    search_hit search_seeded(std::span<const int16_t> q, query_stats* st = nullptr) const;

    // One occurrence of every pattern prefix, online: sink(i, j) receives
    // T[j-i+1..j] = P[1..i]. Returns 0 if every prefix occurs, otherwise the
    // smallest prefix length that does not occur (nothing is emitted for it).
    // opt_seed_start begins matching at prefix length min(m, k) instead of 1.
    int64_t locate_one(std::span<const int16_t> p,
                       const std::function<void(int64_t, int64_t)>& sink, bool opt_seed_start,
                       bool use_seeds, query_stats* st = nullptr) const;

    // All maximal exact matches of P in T, by increasing end position.
    std::vector<mem> find_mems(std::span<const int16_t> p, bool use_seeds,
                               query_stats* st = nullptr) const;

    // index file: suffixient array block, seed block (k u8, entry count u64,
    // keys u64[], lo/hi u64 pairs), oracle blob
    void serialize(std::ostream& out) const;
    static sa_index load(std::istream& in);

private:
    search_hit search_dispatch(std::span<const int16_t> q, bool use_seeds, query_stats* st) const;
    int64_t lcs_with_prefix(std::span<const int16_t> q, int64_t end_pos, int64_t from,
                            query_stats* st) const;
    bool prefix_less(int64_t end_pos, std::span<const int16_t> q, int64_t skip,
                     query_stats* st) const;

    suffixient_array sa_;
    std::unique_ptr<text_oracle> oracle_;
    seed_table seeds_;
    int k_ = 0;
};

enum class build_algo { quadratic, one_pass, linear_lf, linear_fm };
enum class oracle_kind { plain, rlz };

struct index_build_options {
    build_algo algo = build_algo::linear_fm;
    oracle_kind oracle = oracle_kind::plain;
    int k = -1;  // -1: default_seed_k(sigma); 0: no seed table
    rlz_params rlz;
};

struct index_build_report {
    int64_t n = 0;
    int sigma = 0;
    int64_t chi = 0;
    int64_t bwt_runs = 0;
    double build_seconds = 0;
    size_t sa_bytes = 0, seed_bytes = 0, oracle_bytes = 0;
};

sa_index build_index(const text& t, const index_build_options& opt,
                     index_build_report* report = nullptr);

std::vector<int64_t> run_suffixient_builder(build_algo algo, const suffix_structs& ss);

} // namespace sfx
