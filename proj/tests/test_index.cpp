#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "helpers.hpp"
#include "sfx/index.hpp"
#include "sfx/verifiers.hpp"

using namespace sfx;

namespace {

sa_index make_index(const std::string& content, int k = -1,
                    build_algo algo = build_algo::linear_fm) {
    index_build_options opt;
    opt.algo = algo;
    opt.k = k;
    return build_index(normalize(content), opt, nullptr);
}

// index over an explicitly given position set (1-based), plain oracle
sa_index make_index_with_set(const std::string& content, std::vector<int64_t> pos1, int k) {
    text t = normalize(content);
    auto ss = suffix_structs::build(reverse_text(t));
    std::vector<int64_t> pos0;
    for (auto p : pos1) pos0.push_back(p - 1);
    auto sa = to_suffixient_array(std::move(pos0), t, ss);
    return sa_index(std::move(sa), std::make_unique<packed_text>(packed_text::build(t)), k);
}

struct located {
    std::vector<std::pair<int64_t, int64_t>> pairs;
    int64_t not_found;
};

located run_locate(const sa_index& idx, const std::vector<int16_t>& p, bool opt1,
                   bool use_seeds, query_stats* st = nullptr) {
    located r;
    r.not_found = idx.locate_one(
        p, [&](int64_t i, int64_t j) { r.pairs.push_back({i, j}); }, opt1, use_seeds, st);
    return r;
}

int64_t naive_best_lcs(const text& t, const suffixient_array& sa,
                       const std::vector<int16_t>& q) {
    int64_t best = 0;
    for (int64_t x : sa.entries) best = std::max(best, testing::naive_lcs_with_prefix(t, q, x));
    return best;
}

uint64_t steps_bound(int64_t chi) {
    return static_cast<uint64_t>(std::ceil(std::log2(static_cast<double>(chi + 1)))) + 2;
}

} // namespace

TEST_CASE("search on the BANANA sample set") {
    auto idx = make_index_with_set("BANANA", {1, 2, 5, 7}, 0);
    auto q = idx.map_pattern("AN");
    auto hit = idx.search(q);
    CHECK(hit.len == 2);
    CHECK(hit.x == 5);  // only BANAN ends with AN

    CHECK(idx.search(idx.map_pattern("xyz")).x == 0);  // last symbol absent
    CHECK(idx.search(idx.map_pattern("xyz")).len == 0);

    CHECK_THROWS(idx.map_pattern("AN$A"));  // sentinel rejected
}

TEST_CASE("search equals the naive maximum over entries, exhaustively") {
    auto g = testing::rng(30);
    for (int it = 0; it < 25; ++it) {
        std::string content = testing::random_content(1 + g() % 63, 2 + it % 4, g);
        text t = normalize(content);
        auto idx = make_index(content, 0);
        query_stats st;
        for (size_t i = 0; i < content.size(); ++i) {
            for (size_t len = 1; i + len <= content.size(); ++len) {
                auto q = idx.map_pattern(content.substr(i, len));
                auto hit = idx.search(q, &st);
                CHECK(hit.len == naive_best_lcs(t, idx.sarr(), q));
                // the witness achieves the reported length
                if (hit.x > 0)
                    CHECK(testing::naive_lcs_with_prefix(t, q, hit.x - 1) == hit.len);
            }
        }
        CHECK(st.steps_max <= steps_bound(idx.chi()));
    }
}

TEST_CASE("seed table shape") {
    auto g = testing::rng(31);
    std::string content = testing::random_content(200, 4, g);
    text t = normalize(content);

    {
        auto idx = make_index(content, 1);
        // one bucket per distinct final symbol of the sampled prefixes
        std::set<uint8_t> finals;
        for (int64_t x : idx.sarr().entries) finals.insert(t.data[x]);
        CHECK(idx.seeds().keys.size() == finals.size());
    }
    {
        auto idx = make_index(content, 6);
        const auto& s = idx.seeds();
        // ranges partition [0, chi)
        CHECK(s.lo.front() == 0);
        CHECK(s.hi.back() == idx.chi() - 1);
        for (size_t i = 1; i < s.keys.size(); ++i) {
            CHECK(s.keys[i] > s.keys[i - 1]);
            CHECK(s.lo[i] == s.hi[i - 1] + 1);
        }
        // unpacking keys reproduces the shared k-suffix of each range
        for (size_t i = 0; i < s.keys.size(); ++i) {
            for (int64_t e = s.lo[i]; e <= s.hi[i]; ++e) {
                int64_t x = idx.sarr().entries[e];
                for (int d = 0; d < s.k; ++d) {
                    uint64_t group = (s.keys[i] >> (s.width * (s.k - 1 - d))) &
                                     ((uint64_t(1) << s.width) - 1);
                    uint64_t expect = x - d >= 0 ? t.data[x - d] : 0;
                    CHECK(group == expect);
                }
            }
        }
    }
    // k = 14 with sigma = 5 packs into 42 bits
    CHECK(default_seed_k(5) == 14);
    CHECK(14 * bits_for(5 - 1) == 42);
    // k too large for the packing word
    text t2 = normalize(testing::random_content(50, 16, g));
    auto ss2 = suffix_structs::build(reverse_text(t2));
    auto sa2 = to_suffixient_array(build_quadratic(ss2), t2, ss2);
    auto oracle2 = packed_text::build(t2);
    CHECK_THROWS(build_seed_table(sa2, oracle2, 14));  // 14 * 5 bits > 64
}

TEST_CASE("seeded search agrees with plain search on the match length") {
    auto g = testing::rng(32);
    for (int it = 0; it < 12; ++it) {
        int sigma = 2 + it % 4;
        std::string content = it % 2 == 0
                                  ? testing::random_content(400 + g() % 600, sigma, g)
                                  : testing::mutated_copies(300, 8, 0.01, sigma, g);
        text t = normalize(content);
        auto idx = make_index(content, 4);
        for (int q = 0; q < 400; ++q) {
            int64_t len = 1 + static_cast<int64_t>(g() % 12);
            std::string pat;
            if (q % 3 == 0) {
                pat = testing::random_content(len, sigma + 1, g);  // may contain absent symbols
            } else {
                int64_t i = g() % (content.size() - len);
                pat = content.substr(i, len);
            }
            auto codes = idx.map_pattern(pat);
            query_stats s1, s2;
            auto plain = idx.search(codes, &s1);
            auto seeded = idx.search_seeded(codes, &s2);
            CHECK(seeded.len == plain.len);
            if (seeded.x > 0)
                CHECK(testing::naive_lcs_with_prefix(t, codes, seeded.x - 1) == seeded.len);
            CHECK(s2.steps_max <= steps_bound(idx.chi()));
            // misses shorter than k are decided without touching the oracle
            if (seeded.len < idx.seed_k()) CHECK(s2.oracle_chars_read == 0);
        }
    }
}

TEST_CASE("sub-k queries resolve with one predecessor lookup and no oracle reads") {
    auto g = testing::rng(33);
    std::string content = testing::random_content(2000, 4, g);
    auto idx = make_index(content, 8);
    for (int q = 0; q < 200; ++q) {
        int64_t len = 1 + static_cast<int64_t>(g() % (idx.seed_k() - 1));
        int64_t i = g() % (content.size() - len);
        auto codes = idx.map_pattern(content.substr(i, len));
        query_stats st;
        auto hit = idx.search_seeded(codes, &st);
        CHECK(hit.len <= len);
        CHECK(st.predecessor_lookups == 1);
        CHECK(st.oracle_chars_read == 0);
    }
}

TEST_CASE("locate on BANANA") {
    auto idx = make_index("BANANA");
    {
        auto r = run_locate(idx, idx.map_pattern("ANA"), false, false);
        CHECK(r.not_found == 0);
        REQUIRE(r.pairs.size() == 3);
        CHECK(r.pairs[0].first == 1);
        CHECK(r.pairs[1].first == 2);
        CHECK(r.pairs[2].first == 3);
        CHECK((r.pairs[2].second == 4 || r.pairs[2].second == 6));
    }
    {
        // leading match fast path: the pattern is a prefix of T
        auto r = run_locate(idx, idx.map_pattern("BANAN"), false, false);
        CHECK(r.not_found == 0);
        for (auto [i, j] : r.pairs) CHECK(i == j);
    }
    {
        auto r = run_locate(idx, idx.map_pattern("ANAZ"), false, false);
        CHECK(r.not_found == 4);  // 'Z' does not occur
        CHECK(r.pairs.size() == 3);
    }
}

TEST_CASE("mems on BANANA") {
    auto idx = make_index("BANANA");
    auto mems = idx.find_mems(idx.map_pattern("ANAB"), false);
    REQUIRE(mems.size() == 2);
    CHECK(mems[0].end_in_pattern == 3);
    CHECK(mems[0].len == 3);
    CHECK((mems[0].end_in_text == 4 || mems[0].end_in_text == 6));
    CHECK(mems[1] == mem{4, 1, 1});

    // exact substring: a single maximal match covering the whole pattern
    auto whole = idx.find_mems(idx.map_pattern("NANA"), false);
    REQUIRE(whole.size() == 1);
    CHECK(whole[0].end_in_pattern == 4);
    CHECK(whole[0].len == 4);
    CHECK(whole[0].end_in_text == 6);
}

TEST_CASE("locate and mems match the naive oracles on random texts") {
    auto g = testing::rng(34);
    for (int it = 0; it < 15; ++it) {
        int sigma = 2 + it % 5;
        std::string content = testing::random_content(200 + g() % 1800, sigma, g);
        text t = normalize(content);
        auto idx = make_index(content);
        for (int q = 0; q < 60; ++q) {
            int64_t len = 2 + static_cast<int64_t>(g() % 40);
            std::string pat;
            int64_t i = g() % (content.size() - len);
            pat = content.substr(i, len);
            if (q % 2 == 1) {  // mutate a few symbols
                for (int muts = 0; muts < 1 + q % 3; ++muts)
                    pat[g() % pat.size()] = static_cast<char>('a' + g() % (sigma + 1));
            }
            auto codes = idx.map_pattern(pat);
            auto ms = naive_matching_stats(t, codes);

            bool opt1 = q % 4 < 2;
            bool seeds = q % 2 == 0;
            query_stats st;
            auto r = run_locate(idx, codes, opt1, seeds, &st);
            CHECK(r.not_found == naive_first_failing_prefix(ms));
            int64_t upto = r.not_found == 0 ? static_cast<int64_t>(pat.size()) : r.not_found - 1;
            CHECK(static_cast<int64_t>(r.pairs.size()) == upto);
            for (auto [pi, pj] : r.pairs) {
                CHECK(pi <= upto);
                // verify by extraction: T[j-i+1 .. j] = P[1..i]
                REQUIRE(pj >= pi);
                REQUIRE(pj <= t.size());
                for (int64_t d = 0; d < pi; ++d) CHECK(t.data[pj - 1 - d] == codes[pi - 1 - d]);
            }
            CHECK(st.search_calls <= static_cast<uint64_t>(pat.size()));
            CHECK(st.steps_max <= steps_bound(idx.chi()));

            auto mems = idx.find_mems(codes, seeds, &st);
            std::vector<std::pair<int64_t, int64_t>> got;
            for (auto& mm : mems) {
                got.push_back({mm.end_in_pattern, mm.len});
                for (int64_t d = 0; d < mm.len; ++d)
                    CHECK(t.data[mm.end_in_text - 1 - d] == codes[mm.end_in_pattern - 1 - d]);
            }
            CHECK(got == naive_mem_set(ms));
        }
    }
}

TEST_CASE("query results do not depend on the construction algorithm") {
    auto g = testing::rng(35);
    for (int it = 0; it < 6; ++it) {
        std::string content = testing::random_content(400 + g() % 400, 2 + it % 3, g);
        std::vector<sa_index> idxs;
        for (auto algo : {build_algo::quadratic, build_algo::one_pass, build_algo::linear_lf,
                          build_algo::linear_fm})
            idxs.push_back(make_index(content, 4, algo));
        for (int q = 0; q < 50; ++q) {
            int64_t len = 2 + static_cast<int64_t>(g() % 30);
            int64_t i = g() % (content.size() - len);
            std::string pat = content.substr(i, len);
            if (q % 2) pat[g() % pat.size()] = static_cast<char>('a' + g() % 4);
            auto codes = idxs[0].map_pattern(pat);

            auto r0 = run_locate(idxs[0], codes, true, true);
            auto m0 = idxs[0].find_mems(codes, true);
            std::vector<std::pair<int64_t, int64_t>> m0il;
            for (auto& mm : m0) m0il.push_back({mm.end_in_pattern, mm.len});
            for (size_t v = 1; v < idxs.size(); ++v) {
                auto rv = run_locate(idxs[v], codes, true, true);
                CHECK(rv.not_found == r0.not_found);
                CHECK(rv.pairs.size() == r0.pairs.size());
                for (size_t pi = 0; pi < rv.pairs.size(); ++pi)
                    CHECK(rv.pairs[pi].first == r0.pairs[pi].first);  // same i, j may differ
                auto mv = idxs[v].find_mems(codes, true);
                std::vector<std::pair<int64_t, int64_t>> mvil;
                for (auto& mm : mv) mvil.push_back({mm.end_in_pattern, mm.len});
                CHECK(mvil == m0il);
            }
        }
    }
}

TEST_CASE("seed-start probing never does more searches than the plain walk") {
    auto g = testing::rng(36);
    std::string content = testing::mutated_copies(4000, 25, 0.002, 4, g);
    auto idx = make_index(content);
    uint64_t with = 0, without = 0;
    for (int q = 0; q < 300; ++q) {
        int64_t len = 80;
        int64_t i = g() % (content.size() - len);
        auto codes = idx.map_pattern(content.substr(i, len));
        query_stats s1, s2;
        run_locate(idx, codes, true, true, &s1);
        run_locate(idx, codes, false, true, &s2);
        with += s1.search_calls;
        without += s2.search_calls;
    }
    CHECK(with < without);
}

TEST_CASE("index file round-trips and is byte-stable") {
    auto g = testing::rng(37);
    std::string content = testing::mutated_copies(500, 10, 0.01, 4, g);
    index_build_options opt;
    opt.oracle = oracle_kind::rlz;
    opt.rlz = {256, 0.5};
    auto idx = build_index(normalize(content), opt);

    std::stringstream b1, b2;
    idx.serialize(b1);
    auto idx2 = sa_index::load(b1);
    idx2.serialize(b2);
    b1.seekg(0);
    CHECK(b1.str() == b2.str());
    CHECK(idx2.chi() == idx.chi());
    CHECK(idx2.seed_k() == idx.seed_k());

    for (int q = 0; q < 100; ++q) {
        int64_t len = 1 + static_cast<int64_t>(g() % 30);
        int64_t i = g() % (content.size() - len);
        auto codes = idx.map_pattern(content.substr(i, len));
        auto h1 = idx.search(codes);
        auto h2 = idx2.search(codes);
        CHECK(h1.x == h2.x);
        CHECK(h1.len == h2.len);
        auto s1 = idx.search_seeded(codes);
        auto s2 = idx2.search_seeded(codes);
        CHECK(s1.x == s2.x);
        CHECK(s1.len == s2.len);
    }
}
