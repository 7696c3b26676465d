#include "sfx/suffix_structs.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace sfx {

namespace {

// SA-IS. s[n-1] must be the unique minimum symbol.
template <typename T>
void sa_is(const T* s, int64_t* sa, int64_t n, int64_t K) {
    if (n == 1) {
        sa[0] = 0;
        return;
    }

    std::vector<char> stype(n);  // 1 = S, 0 = L
    stype[n - 1] = 1;
    for (int64_t i = n - 2; i >= 0; --i)
        stype[i] = (s[i] < s[i + 1] || (s[i] == s[i + 1] && stype[i + 1])) ? 1 : 0;

    auto is_lms = [&](int64_t i) { return i > 0 && stype[i] && !stype[i - 1]; };

    std::vector<int64_t> cnt(K, 0);
    for (int64_t i = 0; i < n; ++i) cnt[s[i]]++;

    std::vector<int64_t> b(K);
    auto bucket_starts = [&] {
        int64_t sum = 0;
        for (int64_t c = 0; c < K; ++c) { b[c] = sum; sum += cnt[c]; }
    };
    auto bucket_ends = [&] {
        int64_t sum = 0;
        for (int64_t c = 0; c < K; ++c) { sum += cnt[c]; b[c] = sum; }
    };

    auto induce = [&](auto&& seed_lms) {
        std::fill(sa, sa + n, int64_t(-1));
        bucket_ends();
        seed_lms();
        bucket_starts();
        for (int64_t i = 0; i < n; ++i) {
            int64_t j = sa[i] - 1;
            if (sa[i] > 0 && !stype[j]) sa[b[s[j]]++] = j;
        }
        bucket_ends();
        for (int64_t i = n - 1; i >= 0; --i) {
            int64_t j = sa[i] - 1;
            if (sa[i] > 0 && stype[j]) sa[--b[s[j]]] = j;
        }
    };

    // round 1: sort LMS substrings
    induce([&] {
        for (int64_t i = 0; i < n; ++i)
            if (is_lms(i)) sa[--b[s[i]]] = i;
    });

    std::vector<int64_t> lms_sorted;
    lms_sorted.reserve(n / 2 + 1);
    for (int64_t i = 0; i < n; ++i)
        if (is_lms(sa[i])) lms_sorted.push_back(sa[i]);
    int64_t n1 = static_cast<int64_t>(lms_sorted.size());

    // name LMS substrings in sorted order
    std::vector<int64_t> name(n, -1);
    int64_t names = 0, prev = -1;
    for (int64_t k = 0; k < n1; ++k) {
        int64_t pos = lms_sorted[k];
        bool differ = prev < 0;
        if (!differ) {
            for (int64_t d = 0;; ++d) {
                if (s[pos + d] != s[prev + d] || stype[pos + d] != stype[prev + d]) {
                    differ = true;
                    break;
                }
                if (d > 0 && (is_lms(pos + d) || is_lms(prev + d))) {
                    differ = !(is_lms(pos + d) && is_lms(prev + d));
                    break;
                }
            }
        }
        if (differ) {
            ++names;
            prev = pos;
        }
        name[pos] = names - 1;
    }

    // reduced problem, in text order
    std::vector<int64_t> s1, lms_text;
    s1.reserve(n1);
    lms_text.reserve(n1);
    for (int64_t i = 0; i < n; ++i)
        if (is_lms(i)) {
            lms_text.push_back(i);
            s1.push_back(name[i]);
        }

    std::vector<int64_t> sa1(n1);
    if (names == n1) {
        for (int64_t k = 0; k < n1; ++k) sa1[s1[k]] = k;
    } else {
        sa_is<int64_t>(s1.data(), sa1.data(), n1, names);
    }

    // round 2: induce from sorted LMS suffixes
    induce([&] {
        for (int64_t k = n1 - 1; k >= 0; --k) {
            int64_t j = lms_text[sa1[k]];
            sa[--b[s[j]]] = j;
        }
    });
}

} // namespace

std::vector<int64_t> suffix_array_bytes(std::span<const uint8_t> s, int sigma,
                                        bool append_sentinel) {
    if (!append_sentinel) {
        assert(!s.empty() && s.back() == 0);
        std::vector<int64_t> sa(s.size());
        sa_is<uint8_t>(s.data(), sa.data(), static_cast<int64_t>(s.size()), sigma);
        return sa;
    }
    std::vector<uint8_t> tmp(s.begin(), s.end());
#ifndef NDEBUG
    for (uint8_t c : s) assert(c > 0);
#endif
    tmp.push_back(0);
    std::vector<int64_t> sa(tmp.size());
    sa_is<uint8_t>(tmp.data(), sa.data(), static_cast<int64_t>(tmp.size()), sigma);
    assert(sa[0] == static_cast<int64_t>(s.size()));
    return std::vector<int64_t>(sa.begin() + 1, sa.end());
}

std::vector<int64_t> lcp_from_sa(std::span<const uint8_t> s, std::span<const int64_t> sa,
                                 std::span<const int64_t> isa) {
    int64_t n = static_cast<int64_t>(s.size());
    std::vector<int64_t> lcp(n, 0);
    int64_t h = 0;
    for (int64_t i = 0; i < n; ++i) {
        int64_t r = isa[i];
        if (r > 0) {
            int64_t j = sa[r - 1];
            while (i + h < n && j + h < n && s[i + h] == s[j + h]) ++h;
            lcp[r] = h;
            if (h > 0) --h;
        } else {
            h = 0;
        }
    }
    return lcp;
}

suffix_structs suffix_structs::build(const text& rev_t) {
    if (rev_t.size() < 2 || rev_t.data.back() != 0)
        throw std::runtime_error("suffix_structs: invalid text");
    suffix_structs ss;
    ss.n = rev_t.size();
    ss.sa = suffix_array_bytes(rev_t.data, rev_t.sigma(), false);
    ss.isa.resize(ss.n);
    for (int64_t i = 0; i < ss.n; ++i) ss.isa[ss.sa[i]] = i;
    ss.lcp = lcp_from_sa(rev_t.data, ss.sa, ss.isa);
    ss.bwt.resize(ss.n);
    for (int64_t i = 0; i < ss.n; ++i)
        ss.bwt[i] = ss.sa[i] > 0 ? rev_t.data[ss.sa[i] - 1] : rev_t.data[ss.n - 1];
    return ss;
}

int64_t count_runs(std::span<const uint8_t> s) {
    if (s.empty()) return 0;
    int64_t r = 1;
    for (size_t i = 1; i < s.size(); ++i)
        if (s[i] != s[i - 1]) ++r;
    return r;
}

sv_arrays build_sv(std::span<const int64_t> lcp) {
    int64_t n = static_cast<int64_t>(lcp.size());
    sv_arrays sv;
    sv.psv.resize(n);
    sv.nsv.resize(n);
    std::vector<int64_t> stack;
    stack.reserve(64);
    for (int64_t i = 0; i < n; ++i) {
        while (!stack.empty() && lcp[stack.back()] >= lcp[i]) stack.pop_back();
        sv.psv[i] = stack.empty() ? -1 : stack.back();
        stack.push_back(i);
    }
    stack.clear();
    for (int64_t i = n - 1; i >= 0; --i) {
        while (!stack.empty() && lcp[stack.back()] >= lcp[i]) stack.pop_back();
        sv.nsv[i] = stack.empty() ? n : stack.back();
        stack.push_back(i);
    }
    return sv;
}

} // namespace sfx
