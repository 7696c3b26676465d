#pragma once

// Shared test utilities: deterministic generators and naive reference
// implementations the fast code is checked against.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "sfx/text.hpp"

namespace testing {

inline std::mt19937_64 rng(uint64_t seed) { return std::mt19937_64(seed); }

// random sentinel-free content over an alphabet of `sigma` letters 'a'...
inline std::string random_content(int64_t len, int sigma, std::mt19937_64& g) {
    std::uniform_int_distribution<int> d(0, sigma - 1);
    std::string s;
    s.reserve(len);
    for (int64_t i = 0; i < len; ++i) s.push_back(static_cast<char>('a' + d(g)));
    return s;
}

// `copies` mutated copies of a random seed, substitution rate per symbol
inline std::string mutated_copies(int64_t seed_len, int copies, double rate, int sigma,
                                  std::mt19937_64& g) {
    std::string seed = random_content(seed_len, sigma, g);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> d(0, sigma - 1);
    std::string out;
    out.reserve(seed_len * copies);
    for (int c = 0; c < copies; ++c) {
        std::string copy = seed;
        for (auto& ch : copy)
            if (u(g) < rate) ch = static_cast<char>('a' + d(g));
        out += copy;
    }
    return out;
}

// all contents over {'a'.. 'a'+sigma-1} of length exactly len
inline void enumerate_contents(int64_t len, int sigma, const std::function<void(const std::string&)>& f) {
    std::string s(len, 'a');
    while (true) {
        f(s);
        int64_t i = len - 1;
        while (i >= 0 && s[i] == 'a' + sigma - 1) s[i--] = 'a';
        if (i < 0) break;
        s[i]++;
    }
}

// comparison-sorted suffix array of the code sequence (independent oracle)
inline std::vector<int64_t> naive_suffix_array(const std::vector<uint8_t>& d) {
    int64_t n = static_cast<int64_t>(d.size());
    std::vector<int64_t> sa(n);
    for (int64_t i = 0; i < n; ++i) sa[i] = i;
    std::sort(sa.begin(), sa.end(), [&](int64_t a, int64_t b) {
        while (a < n && b < n) {
            if (d[a] != d[b]) return d[a] < d[b];
            ++a, ++b;
        }
        return a == n && b < n;
    });
    return sa;
}

inline std::vector<int64_t> naive_lcp(const std::vector<uint8_t>& d,
                                      const std::vector<int64_t>& sa) {
    int64_t n = static_cast<int64_t>(d.size());
    std::vector<int64_t> lcp(n, 0);
    for (int64_t i = 1; i < n; ++i) {
        int64_t a = sa[i - 1], b = sa[i], h = 0;
        while (a + h < n && b + h < n && d[a + h] == d[b + h]) ++h;
        lcp[i] = h;
    }
    return lcp;
}

// longest common suffix of pattern codes and the prefix of t ending at x
inline int64_t naive_lcs_with_prefix(const sfx::text& t, const std::vector<int16_t>& q,
                                     int64_t x) {
    int64_t l = 0;
    int64_t m = static_cast<int64_t>(q.size());
    while (l < m && x - l >= 0 && q[m - 1 - l] >= 0 && t.data[x - l] == q[m - 1 - l]) ++l;
    return l;
}

} // namespace testing
