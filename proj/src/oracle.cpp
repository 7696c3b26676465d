#include "sfx/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "sfx/io.hpp"
#include "sfx/suffix_structs.hpp"

namespace sfx {

packed_text packed_text::build(const text& t) {
    packed_text p;
    p.sigma_ = static_cast<uint8_t>(t.sigma());
    p.bits_ = packed_array(bits_for(t.sigma() - 1), t.size());
    for (int64_t i = 0; i < t.size(); ++i) p.bits_.set(i, t.data[i]);
    return p;
}

uint8_t packed_text::at(int64_t i, oracle_stats* st) const {
    if (st) st->chars_read++;
    return static_cast<uint8_t>(bits_.get(i));
}

void packed_text::extract(int64_t i, int64_t len, uint8_t* out, oracle_stats* st) const {
    if (i < 0 || len < 0 || i + len > size()) throw std::out_of_range("packed_text::extract");
    if (st) st->chars_read += len;
    for (int64_t k = 0; k < len; ++k) out[k] = static_cast<uint8_t>(bits_.get(i + k));
}

void packed_text::serialize(std::ostream& out) const {
    write_u8(out, 0);
    write_u8(out, sigma_);
    bits_.serialize(out);
}

packed_text packed_text::load_body(std::istream& in) {
    packed_text p;
    p.sigma_ = read_u8(in);
    p.bits_ = packed_array::load(in);
    return p;
}

namespace {

// longest match of t[p..] within the reference, via its suffix array
struct ref_matcher {
    std::span<const uint8_t> ref;
    std::vector<int64_t> sa;

    explicit ref_matcher(std::span<const uint8_t> reference, int sigma, bool has_sentinel)
        : ref(reference), sa(suffix_array_bytes(reference, sigma, !has_sentinel)) {}

    // returns (ref_pos, len); len == 0 when t[p] does not occur in the reference
    std::pair<int64_t, int64_t> longest_match(std::span<const uint8_t> t, int64_t p) const {
        int64_t lo = 0, hi = static_cast<int64_t>(sa.size());
        int64_t len = 0;
        const int64_t rho = static_cast<int64_t>(ref.size());
        const int64_t n = static_cast<int64_t>(t.size());
        while (p + len < n) {
            uint8_t c = t[p + len];
            // narrow to suffixes with symbol c at offset len; exhausted
            // suffixes compare below every symbol
            auto sym_at = [&](int64_t suf) -> int {
                return suf + len < rho ? int(ref[suf + len]) : -1;
            };
            int64_t nlo = lo, nhi = hi;
            {
                int64_t a = lo, b = hi;
                while (a < b) {
                    int64_t mid = (a + b) / 2;
                    if (sym_at(sa[mid]) < int(c)) a = mid + 1; else b = mid;
                }
                nlo = a;
                a = nlo, b = hi;
                while (a < b) {
                    int64_t mid = (a + b) / 2;
                    if (sym_at(sa[mid]) <= int(c)) a = mid + 1; else b = mid;
                }
                nhi = a;
            }
            if (nlo == nhi) break;
            lo = nlo;
            hi = nhi;
            ++len;
        }
        return {len == 0 ? 0 : sa[lo], len};
    }
};

size_t rlz_blob_size(int64_t n, int sigma, int64_t rho, const std::vector<rlz_phrase>& phrases) {
    auto packed_bytes = [](int width, int64_t count) -> size_t {
        return 1 + 8 + 8 + 8 * ((static_cast<uint64_t>(count) * width + 63) / 64);
    };
    int sym_bits = bits_for(sigma - 1);
    int64_t max_pos = 1, max_len = 1;
    for (const auto& ph : phrases) {
        max_pos = std::max(max_pos, ph.ref_pos);
        max_len = std::max(max_len, ph.len);
    }
    size_t bytes = 1 + 8 + 8 + 1;  // tag, n, rho, sigma
    bytes += packed_bytes(sym_bits, rho);
    bytes += 8;  // phrase count
    int64_t count = static_cast<int64_t>(phrases.size());
    bytes += packed_bytes(bits_for(max_pos), count);
    bytes += packed_bytes(bits_for(max_len), count);
    bytes += packed_bytes(bits_for(n), count);  // starts
    return bytes;
}

std::vector<rlz_phrase> parse_with_matcher(const text& t, int64_t rho, const ref_matcher& m) {
    std::vector<rlz_phrase> phrases;
    const int64_t n = t.size();
    int64_t p = rho;
    while (p < n) {
        auto [pos, len] = m.longest_match(t.data, p);
        if (len == 0) {
            phrases.push_back({t.data[p], 0});
            p += 1;
        } else {
            phrases.push_back({pos, len});
            p += len;
        }
    }
    return phrases;
}

} // namespace

std::vector<rlz_phrase> rlz_parse(const text& t, int64_t rho) {
    if (rho < 1 || rho > t.size()) throw std::runtime_error("rlz_parse: bad reference length");
    std::span<const uint8_t> ref(t.data.data(), rho);
    ref_matcher m(ref, t.sigma(), rho == t.size());
    return parse_with_matcher(t, rho, m);
}

int64_t choose_reference(const text& t, const rlz_params& params) {
    const int64_t n = t.size();
    int64_t best_rho = n;
    size_t best_size = SIZE_MAX;
    double target = static_cast<double>(std::max<int64_t>(1, params.rho0));
    int64_t prev = 0;
    while (true) {
        int64_t rho = std::min<int64_t>(n, static_cast<int64_t>(std::ceil(target)));
        if (rho > prev) {
            auto phrases = rlz_parse(t, rho);
            size_t size = rlz_blob_size(n, t.sigma(), rho, phrases);
            if (size < best_size) {
                best_size = size;
                best_rho = rho;
            }
            prev = rho;
        }
        if (prev == n) break;
        target *= 1.0 + params.epsilon;
    }
    return best_rho;
}

rlz_oracle rlz_oracle::build_with_reference(const text& t, int64_t rho) {
    auto phrases = rlz_parse(t, rho);
    rlz_oracle o;
    o.n_ = t.size();
    o.rho_ = rho;
    o.sigma_ = static_cast<uint8_t>(t.sigma());
    o.ref_bits_ = packed_array(bits_for(t.sigma() - 1), rho);
    for (int64_t i = 0; i < rho; ++i) o.ref_bits_.set(i, t.data[i]);

    int64_t count = static_cast<int64_t>(phrases.size());
    int64_t max_pos = 1, max_len = 1;
    for (const auto& ph : phrases) {
        max_pos = std::max(max_pos, ph.ref_pos);
        max_len = std::max(max_len, ph.len);
    }
    o.phrase_pos_ = packed_array(bits_for(max_pos), count);
    o.phrase_len_ = packed_array(bits_for(max_len), count);
    o.starts_.resize(count);
    int64_t p = rho;
    for (int64_t k = 0; k < count; ++k) {
        o.phrase_pos_.set(k, phrases[k].ref_pos);
        o.phrase_len_.set(k, phrases[k].len);
        o.starts_[k] = p;
        p += phrases[k].len == 0 ? 1 : phrases[k].len;
    }
    assert(p == t.size());
    return o;
}

rlz_oracle rlz_oracle::build(const text& t, const rlz_params& params) {
    return build_with_reference(t, choose_reference(t, params));
}

uint8_t rlz_oracle::at(int64_t i, oracle_stats* st) const {
    if (st) st->chars_read++;
    if (i < rho_) return static_cast<uint8_t>(ref_bits_.get(i));
    auto it = std::upper_bound(starts_.begin(), starts_.end(), i);
    int64_t k = (it - starts_.begin()) - 1;
    if (st) st->predecessor_lookups++;
    int64_t len = static_cast<int64_t>(phrase_len_.get(k));
    if (len == 0) return static_cast<uint8_t>(phrase_pos_.get(k));
    return static_cast<uint8_t>(ref_bits_.get(phrase_pos_.get(k) + (i - starts_[k])));
}

void rlz_oracle::extract(int64_t i, int64_t len, uint8_t* out, oracle_stats* st) const {
    if (i < 0 || len < 0 || i + len > n_) throw std::out_of_range("rlz_oracle::extract");
    if (st) st->chars_read += len;
    int64_t done = 0;
    while (i + done < rho_ && done < len) {
        out[done] = static_cast<uint8_t>(ref_bits_.get(i + done));
        ++done;
    }
    if (done == len) return;

    int64_t pos = i + done;
    auto it = std::upper_bound(starts_.begin(), starts_.end(), pos);
    int64_t k = (it - starts_.begin()) - 1;
    if (st) st->predecessor_lookups++;
    while (done < len) {
        int64_t plen = static_cast<int64_t>(phrase_len_.get(k));
        if (plen == 0) {
            out[done++] = static_cast<uint8_t>(phrase_pos_.get(k));
        } else {
            int64_t off = pos - starts_[k];
            int64_t take = std::min(len - done, plen - off);
            int64_t src = static_cast<int64_t>(phrase_pos_.get(k)) + off;
            for (int64_t q = 0; q < take; ++q)
                out[done + q] = static_cast<uint8_t>(ref_bits_.get(src + q));
            done += take;
        }
        pos = i + done;
        if (done < len) {
            ++k;  // next phrase boundary, one more look at the start table
            if (st) st->predecessor_lookups++;
        }
    }
}

void rlz_oracle::serialize(std::ostream& out) const {
    write_u8(out, 1);
    write_u64(out, static_cast<uint64_t>(n_));
    write_u64(out, static_cast<uint64_t>(rho_));
    write_u8(out, sigma_);
    ref_bits_.serialize(out);
    write_u64(out, starts_.size());
    phrase_pos_.serialize(out);
    phrase_len_.serialize(out);
    packed_array st(bits_for(n_), static_cast<int64_t>(starts_.size()));
    for (size_t k = 0; k < starts_.size(); ++k) st.set(k, starts_[k]);
    st.serialize(out);
}

size_t rlz_oracle::byte_size() const {
    packed_array st(bits_for(n_), static_cast<int64_t>(starts_.size()));
    return 1 + 8 + 8 + 1 + ref_bits_.byte_size() + 8 + phrase_pos_.byte_size() +
           phrase_len_.byte_size() + st.byte_size();
}

rlz_oracle rlz_oracle::load_body(std::istream& in) {
    rlz_oracle o;
    o.n_ = static_cast<int64_t>(read_u64(in));
    o.rho_ = static_cast<int64_t>(read_u64(in));
    o.sigma_ = read_u8(in);
    o.ref_bits_ = packed_array::load(in);
    uint64_t count = read_u64(in);
    o.phrase_pos_ = packed_array::load(in);
    o.phrase_len_ = packed_array::load(in);
    packed_array st = packed_array::load(in);
    o.starts_.resize(count);
    for (uint64_t k = 0; k < count; ++k) o.starts_[k] = static_cast<int64_t>(st.get(k));
    return o;
}

std::unique_ptr<text_oracle> load_oracle(std::istream& in) {
    uint8_t tag = read_u8(in);
    if (tag == 0) return std::make_unique<packed_text>(packed_text::load_body(in));
    if (tag == 1) return std::make_unique<rlz_oracle>(rlz_oracle::load_body(in));
    throw std::runtime_error("unknown oracle tag");
}

} // namespace sfx
