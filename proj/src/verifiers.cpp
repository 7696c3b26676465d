#include "sfx/verifiers.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>
#include <string_view>

namespace sfx {

namespace {

constexpr int64_t ORACLE_CAP = 4096;

void check_cap(const text& t, const char* who) {
    if (t.size() > ORACLE_CAP)
        throw std::runtime_error(std::string(who) + ": oracle capped at n <= 4096");
}

struct extension {
    int64_t start;  // witness occurrence start, 0-based
    int64_t len;    // |alpha c|
};

// All distinct one-symbol right extensions of right-maximal substrings,
// computed from a comparison-sorted suffix list. Right-maximal substrings
// with two distinct followers are exactly the longest common prefixes of
// adjacent sorted suffixes; suffixes of T are right-maximal too but admit no
// extension (they end at the sentinel).
std::vector<extension> candidate_extensions(const text& t) {
    const auto& d = t.data;
    const int64_t n = t.size();

    std::vector<int64_t> sa(n);
    for (int64_t i = 0; i < n; ++i) sa[i] = i;
    std::sort(sa.begin(), sa.end(), [&](int64_t a, int64_t b) {
        while (a < n && b < n) {
            if (d[a] != d[b]) return d[a] < d[b];
            ++a, ++b;
        }
        return a == n && b < n;
    });
    std::vector<int64_t> lcp(n, 0);
    for (int64_t i = 1; i < n; ++i) {
        int64_t a = sa[i - 1], b = sa[i], h = 0;
        while (a + h < n && b + h < n && d[a + h] == d[b + h]) ++h;
        lcp[i] = h;
    }

    // distinct right-maximal strings with followers, as (row, depth)
    std::set<std::string_view> seen_rm;
    std::string_view all(reinterpret_cast<const char*>(d.data()), d.size());
    std::vector<extension> out;
    std::set<std::string_view> seen_ext;
    for (int64_t i = 1; i < n; ++i) {
        std::string_view alpha = all.substr(sa[i], lcp[i]);
        if (!seen_rm.insert(alpha).second) continue;
        // occurrences of alpha: the maximal SA interval around i with lcp >= |alpha|
        int64_t lo = i - 1, hi = i;
        while (lo > 0 && lcp[lo] >= lcp[i]) --lo;
        while (hi + 1 < n && lcp[hi + 1] >= lcp[i]) ++hi;
        for (int64_t j = lo; j <= hi; ++j) {
            int64_t q = sa[j];
            assert(q + lcp[i] < n);
            std::string_view ext = all.substr(q, lcp[i] + 1);
            if (seen_ext.insert(ext).second) out.push_back({q, lcp[i] + 1});
        }
    }
    return out;
}

bool occurs_ending_at(const text& t, int64_t x, int64_t start, int64_t len) {
    if (x + 1 < len) return false;
    for (int64_t k = 0; k < len; ++k)
        if (t.data[x - k] != t.data[start + len - 1 - k]) return false;
    return true;
}

std::string decode_range(const text& t, int64_t start, int64_t len) {
    std::string s;
    for (int64_t k = 0; k < len; ++k) s.push_back(static_cast<char>(t.alpha_inv[t.data[start + k]]));
    return s;
}

} // namespace

std::vector<supermaximal_extension> enumerate_supermaximal(const text& t) {
    check_cap(t, "enumerate_supermaximal");
    auto cand = candidate_extensions(t);

    std::string_view all(reinterpret_cast<const char*>(t.data.data()), t.data.size());
    std::set<std::string_view> contents;
    for (const auto& e : cand) contents.insert(all.substr(e.start, e.len));

    std::vector<supermaximal_extension> out;
    for (const auto& e : cand) {
        std::string_view self = all.substr(e.start, e.len);
        bool contained = false;
        for (const auto& other : contents) {
            if (static_cast<int64_t>(other.size()) > e.len &&
                other.substr(other.size() - e.len) == self) {
                contained = true;
                break;
            }
        }
        if (!contained)
            out.push_back({decode_range(t, e.start, e.len), e.start, e.start + e.len - 1});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.str.size() != b.str.size() ? a.str.size() < b.str.size() : a.str < b.str;
    });
    return out;
}

int64_t min_cardinality_oracle(const text& t) {
    return static_cast<int64_t>(enumerate_supermaximal(t).size());
}

bool is_suffixient(const text& t, const std::vector<int64_t>& positions,
                   std::string* counterexample) {
    check_cap(t, "is_suffixient");
    for (const auto& e : candidate_extensions(t)) {
        bool covered = false;
        for (int64_t x : positions) {
            if (occurs_ending_at(t, x, e.start, e.len)) {
                covered = true;
                break;
            }
        }
        if (!covered) {
            if (counterexample)
                *counterexample = "extension \"" + decode_range(t, e.start, e.len) +
                                  "\" is a suffix of no selected prefix";
            return false;
        }
    }
    return true;
}

matching_stats naive_matching_stats(const text& t, std::span<const int16_t> p) {
    const int64_t n = t.size();
    const int64_t m = static_cast<int64_t>(p.size());
    std::vector<std::vector<int64_t>> occ(t.sigma());
    for (int64_t j = 0; j < n; ++j) occ[t.data[j]].push_back(j);

    matching_stats ms;
    ms.len.assign(m, 0);
    ms.end_pos.assign(m, -1);

    // val[j] = longest common suffix of P[0..i] and T[0..j], stamped per row;
    // rows are walked over occ[p[i]] in decreasing j so val[j-1] still holds
    // the previous row when read
    std::vector<int64_t> val(n, 0), stamp(n, -1);
    for (int64_t i = 0; i < m; ++i) {
        if (p[i] < 0 || p[i] >= t.sigma()) continue;
        const auto& row = occ[p[i]];
        for (auto it = row.rbegin(); it != row.rend(); ++it) {
            int64_t j = *it;
            int64_t prev = (j > 0 && stamp[j - 1] == i - 1) ? val[j - 1] : 0;
            val[j] = prev + 1;
            stamp[j] = i;
            if (val[j] > ms.len[i]) {
                ms.len[i] = val[j];
                ms.end_pos[i] = j;
            }
        }
    }
    return ms;
}

int64_t naive_first_failing_prefix(const matching_stats& ms) {
    for (size_t i = 0; i < ms.len.size(); ++i)
        if (ms.len[i] < static_cast<int64_t>(i) + 1) return static_cast<int64_t>(i) + 1;
    return 0;
}

std::vector<std::pair<int64_t, int64_t>> naive_mem_set(const matching_stats& ms) {
    std::vector<std::pair<int64_t, int64_t>> out;
    const int64_t m = static_cast<int64_t>(ms.len.size());
    for (int64_t i = 0; i < m; ++i) {
        if (ms.len[i] == 0) continue;
        if (i + 1 == m || ms.len[i + 1] < ms.len[i] + 1) out.push_back({i + 1, ms.len[i]});
    }
    return out;
}

bool is_attractor(const text& t, const std::vector<int64_t>& positions,
                  std::string* counterexample) {
    check_cap(t, "is_attractor");
    const int64_t n = t.size();
    std::vector<int64_t> sorted(positions);
    std::sort(sorted.begin(), sorted.end());

    std::string_view all(reinterpret_cast<const char*>(t.data.data()), t.data.size());
    std::set<std::string_view> seen;
    for (int64_t i = 0; i < n; ++i) {
        for (int64_t len = 1; i + len <= n; ++len) {
            std::string_view sub = all.substr(i, len);
            if (!seen.insert(sub).second) continue;
            bool spanned = false;
            for (int64_t p = 0; p + len <= n && !spanned; ++p) {
                if (all.substr(p, len) != sub) continue;
                auto it = std::lower_bound(sorted.begin(), sorted.end(), p);
                if (it != sorted.end() && *it <= p + len - 1) spanned = true;
            }
            if (!spanned) {
                if (counterexample)
                    *counterexample = "substring \"" + decode_range(t, i, len) +
                                      "\" has no occurrence crossing the set";
                return false;
            }
        }
    }
    return true;
}

} // namespace sfx
