#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "sfx/oracle.hpp"

using namespace sfx;

namespace {

std::vector<uint8_t> extract_all(const text_oracle& o, int64_t i, int64_t len,
                                 oracle_stats* st = nullptr) {
    std::vector<uint8_t> out(len);
    o.extract(i, len, out.data(), st);
    return out;
}

// phrases overlapping [i, i+len) among the non-reference part of the text
int64_t overlapping_phrases(const std::vector<int64_t>& starts, int64_t n, int64_t i,
                            int64_t len) {
    if (starts.empty()) return 0;
    int64_t lo = std::max(i, starts.front());
    int64_t hi = i + len;  // exclusive
    if (lo >= hi) return 0;
    int64_t count = 0;
    for (size_t k = 0; k < starts.size(); ++k) {
        int64_t s = starts[k];
        int64_t e = k + 1 < starts.size() ? starts[k + 1] : n;  // exclusive
        if (s < hi && e > lo) ++count;
    }
    return count;
}

} // namespace

TEST_CASE("packed text: width and round trip") {
    text t = normalize("ACGTACGT");  // sigma 5 -> 3 bits
    auto p = packed_text::build(t);
    CHECK(p.bits_per_symbol() == 3);
    CHECK(extract_all(p, 0, t.size()) == t.data);

    auto g = testing::rng(20);
    for (int it = 0; it < 50; ++it) {
        text r = normalize(testing::random_content(1 + g() % 300, 2 + it % 16, g));
        auto pr = packed_text::build(r);
        for (int q = 0; q < 20; ++q) {
            int64_t i = g() % r.size();
            int64_t len = g() % (r.size() - i + 1);
            auto got = extract_all(pr, i, len);
            CHECK(std::equal(got.begin(), got.end(), r.data.begin() + i));
        }
    }
    CHECK_THROWS(extract_all(p, 5, 100));
}

TEST_CASE("rlz parse: exact doubling needs one copy phrase") {
    std::string block = "ACGTTGCAACGGTT";
    text t = normalize(block + block);
    auto phrases = rlz_parse(t, static_cast<int64_t>(block.size()));
    // remainder is block + '$': one long copy plus a literal for the sentinel
    REQUIRE(phrases.size() == 2);
    CHECK(phrases[0].len == static_cast<int64_t>(block.size()));
    CHECK(phrases[0].ref_pos == 0);
    CHECK(phrases[1].len == 0);
    CHECK(phrases[1].ref_pos == 0);  // the sentinel code, absent from the reference
}

TEST_CASE("rlz parse: symbol outside the reference becomes a literal") {
    text t = normalize("aaaaXaaaa");
    auto phrases = rlz_parse(t, 4);  // reference "aaaa"
    bool has_literal_x = false;
    for (auto& ph : phrases)
        if (ph.len == 0 && ph.ref_pos == t.code_of('X')) has_literal_x = true;
    CHECK(has_literal_x);
}

TEST_CASE("rlz expansion round-trips on random texts") {
    auto g = testing::rng(21);
    for (int it = 0; it < 60; ++it) {
        text t = normalize(testing::random_content(2 + g() % 400, 2 + it % 5, g));
        int64_t rho = 1 + static_cast<int64_t>(g() % t.size());
        auto o = rlz_oracle::build_with_reference(t, rho);
        CHECK(extract_all(o, 0, t.size()) == t.data);
    }
}

TEST_CASE("rlz predecessor lookups equal the number of overlapping phrases") {
    auto g = testing::rng(22);
    text t = normalize(testing::mutated_copies(500, 20, 0.01, 4, g));
    int64_t rho = 500;
    auto o = rlz_oracle::build_with_reference(t, rho);

    // reconstruct phrase starts from the public parse
    auto phrases = rlz_parse(t, rho);
    std::vector<int64_t> starts;
    int64_t p = rho;
    for (auto& ph : phrases) {
        starts.push_back(p);
        p += ph.len == 0 ? 1 : ph.len;
    }

    {
        oracle_stats st;
        extract_all(o, 0, rho, &st);  // inside the reference
        CHECK(st.predecessor_lookups == 0);
    }
    {
        oracle_stats st;
        extract_all(o, starts[0], 1, &st);  // single phrase
        CHECK(st.predecessor_lookups == 1);
    }
    for (int q = 0; q < 200; ++q) {
        int64_t i = g() % t.size();
        int64_t len = 1 + static_cast<int64_t>(g() % (t.size() - i));
        oracle_stats st;
        auto got = extract_all(o, i, len, &st);
        CHECK(std::equal(got.begin(), got.end(), t.data.begin() + i));
        CHECK(st.predecessor_lookups ==
              static_cast<uint64_t>(overlapping_phrases(starts, t.size(), i, len)));
    }
}

TEST_CASE("choose_reference degenerate and structured cases") {
    auto g = testing::rng(23);
    {
        text t = normalize(testing::random_content(100, 4, g));
        rlz_params p{1 << 20, 0.5};
        CHECK(choose_reference(t, p) == t.size());  // n below the first candidate
    }
    {
        // repeated block: any full-block reference beats the whole text
        auto gg = testing::rng(24);
        std::string block = testing::random_content(2000, 4, gg);
        std::string corpus;
        for (int c = 0; c < 16; ++c) corpus += block;
        text t = normalize(corpus);
        rlz_params p{256, 0.5};
        int64_t rho = choose_reference(t, p);
        CHECK(rho >= 2000);
        CHECK(rho < t.size());
        auto chosen = rlz_oracle::build_with_reference(t, rho);
        auto whole = rlz_oracle::build_with_reference(t, t.size());
        CHECK(chosen.byte_size() <= whole.byte_size());
    }
}

TEST_CASE("both oracles are extensionally equal to the text") {
    auto g = testing::rng(25);
    for (int it = 0; it < 10; ++it) {
        text t = normalize(testing::random_content(64, 3, g));
        auto p = packed_text::build(t);
        rlz_params params{16, 0.5};
        auto r = rlz_oracle::build(t, params);
        for (int64_t i = 0; i < t.size(); ++i)
            for (int64_t len = 0; i + len <= t.size(); ++len)
                CHECK(extract_all(p, i, len) == extract_all(r, i, len));
    }
}

TEST_CASE("oracle blobs round-trip through the tagged format") {
    auto g = testing::rng(26);
    text t = normalize(testing::mutated_copies(300, 10, 0.005, 4, g));

    std::stringstream b1;
    packed_text::build(t).serialize(b1);
    auto o1 = load_oracle(b1);
    CHECK(o1->kind() == std::string("plain"));
    CHECK(extract_all(*o1, 0, t.size()) == t.data);

    std::stringstream b2;
    rlz_params params{300, 0.5};
    auto built = rlz_oracle::build(t, params);
    built.serialize(b2);
    CHECK(static_cast<size_t>(b2.str().size()) == built.byte_size());
    auto o2 = load_oracle(b2);
    CHECK(o2->kind() == std::string("rlz"));
    CHECK(extract_all(*o2, 0, t.size()) == t.data);
}

TEST_CASE("rlz is much smaller than packed text on a repetitive corpus") {
    auto g = testing::rng(27);
    text t = normalize(testing::mutated_copies(10000, 100, 0.001, 4, g));
    auto packed = packed_text::build(t);
    rlz_params params{4096, 0.5};
    auto r = rlz_oracle::build(t, params);
    CHECK(extract_all(r, 100000, 5000) == extract_all(packed, 100000, 5000));
    CHECK(r.byte_size() * 10 < packed.byte_size());
}
