#include "sfx/index.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <stdexcept>

#include "sfx/io.hpp"

namespace sfx {

namespace {

struct call_scope {
    // scoped per-search step accounting so steps_max tracks single calls
    query_stats* st;
    uint64_t steps = 0;
    explicit call_scope(query_stats* s) : st(s) {
        if (st) st->search_calls++;
    }
    void step() { ++steps; }
    ~call_scope() {
        if (st) {
            st->binary_search_steps += steps;
            st->steps_max = std::max(st->steps_max, steps);
        }
    }
};

} // namespace

int default_seed_k(int sigma) {
    int width = bits_for(sigma - 1);
    return std::min(14, 64 / width);
}

seed_table build_seed_table(const suffixient_array& sa, const text_oracle& oracle, int k) {
    seed_table t;
    t.k = k;
    t.width = bits_for(sa.sigma - 1);
    if (k < 1 || k * t.width > 64)
        throw std::runtime_error("seed k too large for the packing word");

    uint64_t prev_key = 0;
    for (size_t e = 0; e < sa.entries.size(); ++e) {
        int64_t x = sa.entries[e];
        uint64_t key = 0;
        for (int d = 0; d < k; ++d) {
            uint64_t code = x - d >= 0 ? oracle.at(x - d) : 0;
            key |= code << (t.width * (k - 1 - d));
        }
        if (!t.keys.empty() && key == prev_key) {
            t.hi.back() = static_cast<int64_t>(e);
        } else {
            if (!t.keys.empty() && key < prev_key)
                throw std::runtime_error("seed keys not in colex order");
            t.keys.push_back(key);
            t.lo.push_back(static_cast<int64_t>(e));
            t.hi.push_back(static_cast<int64_t>(e));
            prev_key = key;
        }
    }
    return t;
}

sa_index::sa_index(suffixient_array sa, std::unique_ptr<text_oracle> oracle, int seed_k)
    : sa_(std::move(sa)), oracle_(std::move(oracle)), k_(seed_k) {
    if (oracle_->size() != sa_.n) throw std::runtime_error("oracle/array length mismatch");
    if (k_ > 0) seeds_ = build_seed_table(sa_, *oracle_, k_);
}

std::vector<int16_t> sa_index::map_pattern(std::string_view raw) const {
    std::vector<int16_t> q;
    q.reserve(raw.size());
    for (char ch : raw) {
        uint8_t b = static_cast<uint8_t>(ch);
        if (b == SENTINEL_BYTE) throw std::runtime_error("pattern contains the sentinel byte");
        q.push_back(sa_.alpha_map[b]);
    }
    return q;
}

// longest common suffix of q and the prefix ending at end_pos (0-based),
// with the first `from` symbols already known equal
int64_t sa_index::lcs_with_prefix(std::span<const int16_t> q, int64_t end_pos, int64_t from,
                                  query_stats* st) const {
    int64_t m = static_cast<int64_t>(q.size());
    int64_t limit = std::min<int64_t>(m, end_pos + 1);
    int64_t t = from;
    oracle_stats os;
    while (t < limit) {
        int16_t qc = q[m - 1 - t];
        if (qc < 0 || oracle_->at(end_pos - t, &os) != qc) break;
        ++t;
    }
    if (st) st->oracle_chars_read += os.chars_read;
    return t;
}

// colex comparison of the prefix ending at end_pos against q, skipping the
// first `skip` symbols (known equal on both sides)
bool sa_index::prefix_less(int64_t end_pos, std::span<const int16_t> q, int64_t skip,
                           query_stats* st) const {
    int64_t m = static_cast<int64_t>(q.size());
    int64_t t = skip;
    oracle_stats os;
    bool result;
    while (true) {
        if (t > end_pos) {  // prefix exhausted: it is a proper suffix of q
            result = t < m;
            break;
        }
        if (t == m) {  // q exhausted: q is a suffix of the prefix
            result = false;
            break;
        }
        int pc = oracle_->at(end_pos - t, &os);
        int qc = q[m - 1 - t];  // unmapped symbols compare below everything
        if (pc != qc) {
            result = pc < qc;
            break;
        }
        ++t;
    }
    if (st) st->oracle_chars_read += os.chars_read;
    return result;
}

search_hit sa_index::search(std::span<const int16_t> q, query_stats* st) const {
    if (q.empty()) throw std::runtime_error("search: empty query");
    call_scope call(st);
    int64_t m = static_cast<int64_t>(q.size());
    if (q[m - 1] < 0) return {0, 0};  // last symbol absent from the alphabet

    const auto& e = sa_.entries;
    int64_t lo = 0, hi = chi();
    while (lo < hi) {
        int64_t mid = lo + (hi - lo) / 2;
        call.step();
        if (prefix_less(e[mid], q, 0, st)) lo = mid + 1;
        else hi = mid;
    }
    search_hit best{0, 0};
    if (lo > 0) {
        call.step();
        int64_t l = lcs_with_prefix(q, e[lo - 1], 0, st);
        best = {e[lo - 1] + 1, l};
    }
    if (lo < chi()) {
        call.step();
        int64_t l = lcs_with_prefix(q, e[lo], 0, st);
        if (l > best.len) best = {e[lo] + 1, l};  // ties keep the predecessor
    }
    if (best.len == 0) return {0, 0};
    return best;
}

search_hit sa_index::search_seeded(std::span<const int16_t> q, query_stats* st) const {
    if (q.empty()) throw std::runtime_error("search_seeded: empty query");
    if (seeds_.empty()) throw std::runtime_error("search_seeded: no seed table");
    call_scope call(st);
    int64_t m = static_cast<int64_t>(q.size());
    if (q[m - 1] < 0) return {0, 0};

    const int k = seeds_.k;
    const int width = seeds_.width;
    const uint64_t group_mask = width == 64 ? ~uint64_t(0) : ((uint64_t(1) << width) - 1);

    // pack the longest clean (mapped) suffix of q, at most k symbols; shorter
    // queries pad low groups with the sentinel code
    int64_t qlen = 0;
    while (qlen < std::min<int64_t>(m, k) && q[m - 1 - qlen] >= 0) ++qlen;
    uint64_t key = 0;
    for (int64_t d = 0; d < qlen; ++d)
        key |= static_cast<uint64_t>(q[m - 1 - d]) << (width * (k - 1 - d));

    auto common_groups = [&](uint64_t a, uint64_t b, int64_t cap) {
        int64_t c = 0;
        while (c < cap) {
            int shift = width * (k - 1 - c);
            if (((a >> shift) & group_mask) != ((b >> shift) & group_mask)) break;
            ++c;
        }
        return c;
    };

    const auto& keys = seeds_.keys;
    int64_t idx = std::upper_bound(keys.begin(), keys.end(), key) - keys.begin() - 1;
    if (st) st->predecessor_lookups++;

    if (qlen == k && idx >= 0 && keys[idx] == key) {
        // exact k-suffix hit: refine inside the range on the symbols beyond k
        const auto& e = sa_.entries;
        int64_t lo = seeds_.lo[idx], hi = seeds_.hi[idx] + 1;
        auto beyond = q.first(m - k);
        while (lo < hi) {
            int64_t mid = lo + (hi - lo) / 2;
            call.step();
            if (prefix_less(e[mid] - k, beyond, 0, st)) lo = mid + 1;
            else hi = mid;
        }
        search_hit best{0, -1};
        if (lo > seeds_.lo[idx]) {
            call.step();
            int64_t l = lcs_with_prefix(beyond, e[lo - 1] - k, 0, st);
            best = {e[lo - 1] + 1, k + l};
        }
        if (lo <= seeds_.hi[idx]) {
            call.step();
            int64_t l = lcs_with_prefix(beyond, e[lo] - k, 0, st);
            if (k + l > best.len) best = {e[lo] + 1, k + l};
        }
        return best;
    }

    // miss or short query: the packed neighbors decide, no oracle access
    search_hit best{0, 0};
    if (idx >= 0) {
        int64_t l = common_groups(key, keys[idx], qlen);
        best = {sa_.entries[seeds_.hi[idx]] + 1, l};
    }
    if (idx + 1 < static_cast<int64_t>(keys.size())) {
        int64_t l = common_groups(key, keys[idx + 1], qlen);
        if (l > best.len) best = {sa_.entries[seeds_.lo[idx + 1]] + 1, l};
    }
    if (best.len == 0) return {0, 0};
    return best;
}

search_hit sa_index::search_dispatch(std::span<const int16_t> q, bool use_seeds,
                                     query_stats* st) const {
    return use_seeds && has_seeds() ? search_seeded(q, st) : search(q, st);
}

int64_t sa_index::locate_one(std::span<const int16_t> p,
                             const std::function<void(int64_t, int64_t)>& sink,
                             bool opt_seed_start, bool use_seeds, query_stats* st) const {
    if (p.empty()) throw std::runtime_error("locate_one: empty pattern");
    const int64_t m = static_cast<int64_t>(p.size());
    int64_t i = 0, j = 0;
    oracle_stats os;

    if (opt_seed_start && k_ > 0) {
        // first probe at length min(m, k); shorten until a sampled prefix is
        // suffixed, then derive the occurrences of all shorter prefixes
        const int64_t k0 = std::min<int64_t>(m, k_);
        int64_t i0 = k0;
        search_hit hit{0, 0};
        while (i0 >= 1) {
            hit = search_dispatch(p.first(i0), use_seeds, st);
            if (hit.len >= i0) break;
            --i0;
        }
        if (i0 == 0) return 1;
        for (int64_t t = 1; t <= i0; ++t) sink(t, hit.x - i0 + t);
        i = i0;
        j = hit.x;
        // up to length k0 the probes above already ruled out every sampled
        // suffix, so a direct-comparison mismatch means the prefix cannot
        // occur at all: no further search is needed there
        while (i < k0) {
            ++i, ++j;
            assert(j >= 1 && j <= n());
            if (!(p[i - 1] >= 0 && oracle_->at(j - 1, &os) == p[i - 1])) {
                if (st) st->oracle_chars_read += os.chars_read;
                return i;
            }
            sink(i, j);
        }
    }

    while (i < m) {
        ++i, ++j;
        assert(j >= 1 && j <= n());
        bool match = p[i - 1] >= 0 && oracle_->at(j - 1, &os) == p[i - 1];
        if (!match) {
            search_hit hit = search_dispatch(p.first(i), use_seeds, st);
            if (hit.len < i) {
                if (st) st->oracle_chars_read += os.chars_read;
                return i;
            }
            j = hit.x;
        }
        sink(i, j);
    }
    if (st) st->oracle_chars_read += os.chars_read;
    return 0;
}

std::vector<mem> sa_index::find_mems(std::span<const int16_t> p, bool use_seeds,
                                     query_stats* st) const {
    if (p.empty()) throw std::runtime_error("find_mems: empty pattern");
    const int64_t m = static_cast<int64_t>(p.size());
    std::vector<mem> out;
    int64_t i = 1, j = 1, l = 0;
    oracle_stats os;
    while (i <= m) {
        search_hit hit = search_dispatch(p.subspan(i - l - 1, l + 1), use_seeds, st);
        assert(hit.len <= l + 1);
        if (hit.len < l + 1 && l > 0) out.push_back({i - 1, j - 1, l});
        int64_t jp = hit.x;
        int64_t delta = 0;
        while (i + delta + 1 <= m && jp + delta + 1 <= n()) {
            int16_t pc = p[i + delta];
            if (pc < 0 || oracle_->at(jp + delta, &os) != pc) break;
            ++delta;
        }
        i = i + delta + 1;
        j = jp + delta + 1;
        l = hit.len + delta;
    }
    if (l > 0) out.push_back({i - 1, j - 1, l});
    if (st) st->oracle_chars_read += os.chars_read;
    return out;
}

void sa_index::serialize(std::ostream& out) const {
    sa_.serialize(out);
    write_u8(out, static_cast<uint8_t>(seeds_.empty() ? 0 : seeds_.k));
    if (!seeds_.empty()) {
        write_u64(out, seeds_.keys.size());
        for (uint64_t key : seeds_.keys) write_u64(out, key);
        for (size_t i = 0; i < seeds_.keys.size(); ++i) {
            write_u64(out, static_cast<uint64_t>(seeds_.lo[i]));
            write_u64(out, static_cast<uint64_t>(seeds_.hi[i]));
        }
    }
    oracle_->serialize(out);
}

sa_index sa_index::load(std::istream& in) {
    sa_index idx;
    idx.sa_ = suffixient_array::load(in);
    idx.k_ = read_u8(in);
    if (idx.k_ > 0) {
        idx.seeds_.k = idx.k_;
        idx.seeds_.width = bits_for(idx.sa_.sigma - 1);
        uint64_t count = read_u64(in);
        idx.seeds_.keys.resize(count);
        idx.seeds_.lo.resize(count);
        idx.seeds_.hi.resize(count);
        for (auto& key : idx.seeds_.keys) key = read_u64(in);
        for (uint64_t i = 0; i < count; ++i) {
            idx.seeds_.lo[i] = static_cast<int64_t>(read_u64(in));
            idx.seeds_.hi[i] = static_cast<int64_t>(read_u64(in));
        }
    }
    idx.oracle_ = load_oracle(in);
    if (idx.oracle_->size() != idx.sa_.n) throw std::runtime_error("corrupt index file");
    return idx;
}

std::vector<int64_t> run_suffixient_builder(build_algo algo, const suffix_structs& ss) {
    switch (algo) {
        case build_algo::quadratic: return build_quadratic(ss);
        case build_algo::one_pass: return build_one_pass(ss);
        case build_algo::linear_lf: return build_linear_lf(ss);
        case build_algo::linear_fm: {
            sv_arrays sv = build_sv(ss.lcp);
            return build_linear_fm(ss, sv);
        }
    }
    throw std::runtime_error("unknown builder");
}

sa_index build_index(const text& t, const index_build_options& opt, index_build_report* report) {
    auto t0 = std::chrono::steady_clock::now();
    suffix_structs ss = suffix_structs::build(reverse_text(t));
    std::vector<int64_t> set = run_suffixient_builder(opt.algo, ss);
    suffixient_array sa = to_suffixient_array(std::move(set), t, ss);
    int64_t bwt_runs = count_runs(ss.bwt);

    std::unique_ptr<text_oracle> oracle;
    if (opt.oracle == oracle_kind::plain)
        oracle = std::make_unique<packed_text>(packed_text::build(t));
    else
        oracle = std::make_unique<rlz_oracle>(rlz_oracle::build(t, opt.rlz));

    int k = opt.k >= 0 ? opt.k : default_seed_k(t.sigma());
    if (report) {
        report->n = t.size();
        report->sigma = t.sigma();
        report->chi = sa.chi();
        report->bwt_runs = bwt_runs;
        report->sa_bytes = sa.byte_size();
        report->oracle_bytes = oracle->byte_size();
    }
    sa_index idx(std::move(sa), std::move(oracle), k);
    if (report) {
        report->seed_bytes = idx.seeds().byte_size();
        report->build_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    return idx;
}

} // namespace sfx
