#include "sfx/builders.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <stdexcept>

#include "sfx/io.hpp"

namespace sfx {

namespace {

constexpr int64_t INF = std::numeric_limits<int64_t>::max();

std::vector<int64_t> finish(std::vector<int64_t> s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

struct candidate {
    int64_t len = -1;
    int64_t pos = 0;
    bool active = false;
};

void record(build_trace* tr, build_trace::kind_t k, uint8_t c, int64_t row, int64_t len,
            int64_t pos) {
    if (tr) tr->events.push_back({k, c, row, len, pos});
}

// eval: flush candidates whose box ended (their stored LCP maximum exceeds
// the minimum l seen since), then lower them to l, inactive.
template <typename Symbols>
void eval(const Symbols& symbols, int64_t l, std::vector<candidate>& r,
          std::vector<int64_t>& out, build_trace* tr, int64_t row) {
    for (uint8_t c : symbols) {
        if (l < r[c].len) {
            if (r[c].active) {
                out.push_back(r[c].pos);
                record(tr, build_trace::emit, c, row, r[c].len, r[c].pos);
            }
            r[c] = {l, 0, false};
            record(tr, build_trace::reset, c, row, l, 0);
        }
    }
}

} // namespace

std::vector<int64_t> run_boundary_set(const suffix_structs& ss) {
    std::vector<int64_t> s;
    const int64_t n = ss.n;
    for (int64_t i = 0; i < n; ++i) {
        bool boundary = i == 0 || i == n - 1 || ss.bwt[i] != ss.bwt[i - 1] ||
                        ss.bwt[i] != ss.bwt[i + 1];
        if (boundary) s.push_back(ss.text_pos(i));
    }
    return finish(std::move(s));
}

std::vector<int64_t> build_quadratic(const suffix_structs& ss) {
    const int64_t n = ss.n;
    const auto& bwt = ss.bwt;
    const auto& lcp = ss.lcp;
    std::vector<int64_t> s;

    for (int64_t i = 1; i < n; ++i) {
        if (bwt[i] == bwt[i - 1]) continue;
        // box(i): maximal interval around i with lcp >= lcp[i]
        int64_t lo = i, hi = i;
        while (lo > 0 && lcp[lo - 1] >= lcp[i]) --lo;
        while (hi + 1 < n && lcp[hi + 1] >= lcp[i]) ++hi;
        for (int64_t ip : {i - 1, i}) {
            uint8_t c = bwt[ip];
            // largest c-run break in box(i) achieving the maximum LCP there
            int64_t best_lcp = -1, best_break = -1;
            for (int64_t j = std::max<int64_t>(lo, 1); j <= hi; ++j) {
                if (bwt[j] == bwt[j - 1]) continue;
                if (bwt[j] != c && bwt[j - 1] != c) continue;
                if (lcp[j] > best_lcp || (lcp[j] == best_lcp && j > best_break)) {
                    best_lcp = lcp[j];
                    best_break = j;
                }
            }
            if (best_break == i) s.push_back(ss.text_pos(ip));
        }
    }
    return finish(std::move(s));
}

std::vector<int64_t> build_one_pass(const suffix_structs& ss, build_stats* stats,
                                    build_trace* trace) {
    const int64_t n = ss.n;
    const auto& bwt = ss.bwt;
    const auto& lcp = ss.lcp;
    const int sigma = 1 + *std::max_element(bwt.begin(), bwt.end());
    std::vector<uint8_t> all(sigma);
    for (int c = 0; c < sigma; ++c) all[c] = static_cast<uint8_t>(c);

    std::vector<candidate> r(sigma);
    std::vector<int64_t> s;
    int64_t m = INF;
    build_stats st;

    for (int64_t i = 1; i < n; ++i) {
        st.lcp_reads++;
        m = std::min(m, lcp[i]);
        st.bwt_reads += 2;
        if (bwt[i] != bwt[i - 1]) {
            eval(all, m, r, s, trace, i);
            for (int64_t ip : {i - 1, i}) {
                st.bwt_reads++;
                uint8_t c = bwt[ip];
                if (lcp[i] > r[c].len) {
                    st.sa_reads++;
                    r[c] = {lcp[i], ss.text_pos(ip), true};
                    record(trace, build_trace::activate, c, i, lcp[i], r[c].pos);
                }
            }
            m = INF;
        }
    }
    eval(all, -1, r, s, trace, -1);
    if (stats) *stats = st;
    return finish(std::move(s));
}

std::vector<int64_t> build_linear_lf(const suffix_structs& ss, build_stats* stats,
                                     build_trace* trace) {
    const int64_t n = ss.n;
    const auto& bwt = ss.bwt;
    const auto& lcp = ss.lcp;
    const int sigma = 1 + *std::max_element(bwt.begin(), bwt.end());
    std::vector<uint8_t> all(sigma);
    for (int c = 0; c < sigma; ++c) all[c] = static_cast<uint8_t>(c);

    build_stats st;

    // lf[c] = start of c's block + occurrences of c scanned so far, so after
    // updating at row i with bwt[i] = c, row lf[c] - 1 holds the suffix that
    // extends row i's suffix by c.
    std::vector<int64_t> occ(sigma, 0);
    for (uint8_t c : bwt) occ[c]++;
    st.bwt_reads += n;
    std::vector<int64_t> lf(sigma, 0);
    for (int c = 1; c < sigma; ++c) lf[c] = lf[c - 1] + occ[c - 1];

    std::vector<candidate> r(sigma);
    std::vector<int64_t> s;
    int64_t m = INF;

    lf[bwt[0]]++;
    st.bwt_reads++;

    for (int64_t i = 1; i < n; ++i) {
        st.bwt_reads++;
        lf[bwt[i]]++;
        st.lcp_reads++;
        m = std::min(m, lcp[i]);
        st.bwt_reads += 2;
        if (bwt[i] != bwt[i - 1]) {
            for (int64_t ip : {i - 1, i}) {
                st.bwt_reads++;
                uint8_t c = bwt[ip];
                std::array<uint8_t, 1> one = {c};
                if (ip == i - 1) {
                    eval(one, m, r, s, trace, i);
                } else if (r[c].len != -1) {
                    st.lcp_reads++;
                    eval(one, lcp[lf[c] - 1] - 1, r, s, trace, i);
                }
                st.lcp_reads++;
                if (lcp[i] > r[c].len) {
                    st.sa_reads++;
                    r[c] = {lcp[i], ss.text_pos(ip), true};
                    record(trace, build_trace::activate, c, i, lcp[i], r[c].pos);
                }
            }
            m = INF;
        }
    }
    eval(all, -1, r, s, trace, -1);
    if (stats) *stats = st;
    return finish(std::move(s));
}

std::vector<int64_t> build_linear_fm(const suffix_structs& ss, const sv_arrays& sv,
                                     build_stats* stats, build_trace* trace) {
    const int64_t n = ss.n;
    const auto& bwt = ss.bwt;
    const int sigma = 1 + *std::max_element(bwt.begin(), bwt.end());

    struct fm_candidate {
        int64_t sa_pos = -1;   // row of the last first c-candidate
        int64_t text_pos = 0;
        bool active = false;
        int64_t nsv;           // its NSV value; n acts as "none"
    };
    std::vector<fm_candidate> r(sigma, fm_candidate{-1, 0, false, n});
    std::vector<int64_t> s;
    build_stats st;

    for (int64_t i = 1; i < n; ++i) {
        st.bwt_reads += 2;
        if (bwt[i] != bwt[i - 1]) {
            for (int64_t ip : {i - 1, i}) {
                st.bwt_reads++;
                uint8_t c = bwt[ip];
                if (r[c].sa_pos <= sv.psv[i]) {  // i is first c-candidate
                    if (r[c].nsv < i) {          // stored candidate was first c-maximum
                        s.push_back(r[c].text_pos);
                        record(trace, build_trace::emit, c, i, 0, r[c].text_pos);
                    }
                    st.sa_reads++;
                    r[c] = {i, ss.text_pos(ip), true, sv.nsv[i]};
                    record(trace, build_trace::activate, c, i, sv.nsv[i], r[c].text_pos);
                }
            }
        }
    }
    for (int c = 0; c < sigma; ++c) {
        if (r[c].active) {
            s.push_back(r[c].text_pos);
            record(trace, build_trace::emit, static_cast<uint8_t>(c), -1, 0, r[c].text_pos);
        }
    }
    if (stats) *stats = st;
    return finish(std::move(s));
}

void suffixient_array::serialize(std::ostream& out) const {
    write_magic(out, "SUFX");
    write_u32(out, 1);
    write_u64(out, static_cast<uint64_t>(n));
    write_u8(out, sigma);
    for (int b = 0; b < 256; ++b)
        write_u8(out, alpha_map[b] < 0 ? 0xFF : static_cast<uint8_t>(alpha_map[b]));
    write_u64(out, entries.size());
    for (int64_t e : entries) write_u64(out, static_cast<uint64_t>(e));
}

suffixient_array suffixient_array::load(std::istream& in) {
    expect_magic(in, "SUFX");
    uint32_t version = read_u32(in);
    if (version != 1) throw std::runtime_error("unsupported suffixient array version");
    suffixient_array sa;
    sa.n = static_cast<int64_t>(read_u64(in));
    sa.sigma = read_u8(in);
    sa.alpha_inv.assign(sa.sigma, 0);
    for (int b = 0; b < 256; ++b) {
        uint8_t code = read_u8(in);
        sa.alpha_map[b] = code == 0xFF ? -1 : static_cast<int16_t>(code);
        if (code != 0xFF) sa.alpha_inv[code] = static_cast<uint8_t>(b);
    }
    sa.entries.resize(read_u64(in));
    for (auto& e : sa.entries) e = static_cast<int64_t>(read_u64(in));
    return sa;
}

suffixient_array to_suffixient_array(std::vector<int64_t> positions, const text& t,
                                     const suffix_structs& rev_ss) {
    suffixient_array sa;
    sa.n = t.size();
    sa.sigma = static_cast<uint8_t>(t.sigma());
    sa.alpha_map = t.alpha_map;
    sa.alpha_inv = t.alpha_inv;
    std::sort(positions.begin(), positions.end(), [&](int64_t a, int64_t b) {
        return rev_ss.colex_rank(a) < rev_ss.colex_rank(b);
    });
    sa.entries = std::move(positions);
    return sa;
}

} // namespace sfx
