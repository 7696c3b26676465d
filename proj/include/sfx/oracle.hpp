#pragma once

// Random access to T behind one abstract contract, with a bit-packed plain
// representation and a relative Lempel-Ziv representation (reference prefix
// plus copy/literal phrases). Symbols are dense codes; i is 0-based.

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "sfx/packed.hpp"
#include "sfx/text.hpp"

namespace sfx {

// Per-call counters owned by the caller; oracles themselves stay read-only.
struct oracle_stats {
    uint64_t chars_read = 0;
    uint64_t predecessor_lookups = 0;
};

class text_oracle {
public:
    virtual ~text_oracle() = default;
    virtual int64_t size() const = 0;
    virtual uint8_t at(int64_t i, oracle_stats* st = nullptr) const = 0;
    virtual void extract(int64_t i, int64_t len, uint8_t* out,
                         oracle_stats* st = nullptr) const = 0;
    // blob: tag u8 (0 = packed, 1 = rlz), then the type-specific layout
    virtual void serialize(std::ostream& out) const = 0;
    virtual size_t byte_size() const = 0;
    virtual const char* kind() const = 0;
};

class packed_text final : public text_oracle {
public:
    packed_text() = default;
    static packed_text build(const text& t);

    int64_t size() const override { return bits_.size(); }
    uint8_t at(int64_t i, oracle_stats* st = nullptr) const override;
    void extract(int64_t i, int64_t len, uint8_t* out, oracle_stats* st = nullptr) const override;
    void serialize(std::ostream& out) const override;
    size_t byte_size() const override { return 1 + 1 + bits_.byte_size(); }
    const char* kind() const override { return "plain"; }
    int bits_per_symbol() const { return bits_.width(); }

    static packed_text load_body(std::istream& in);

private:
    uint8_t sigma_ = 0;
    packed_array bits_;
};

struct rlz_params {
    int64_t rho0 = int64_t(1) << 20;  // first candidate reference length
    double epsilon = 0.5;             // candidate growth factor is 1 + epsilon
};

// One phrase of the parse of T[rho..n): a copy of len symbols from the
// reference at ref_pos, or (len == 0) a single literal symbol stored in ref_pos.
struct rlz_phrase {
    int64_t ref_pos;
    int64_t len;
};

// Greedy leftmost-longest factorization of T[rho..n) against T[0..rho).
std::vector<rlz_phrase> rlz_parse(const text& t, int64_t rho);

// Evaluates candidate reference lengths min(n, ceil(rho0 * (1+eps)^t)) until
// the whole text is a candidate; returns the one minimizing the serialized
// oracle size.
int64_t choose_reference(const text& t, const rlz_params& params);

class rlz_oracle final : public text_oracle {
public:
    rlz_oracle() = default;
    static rlz_oracle build(const text& t, const rlz_params& params);
    static rlz_oracle build_with_reference(const text& t, int64_t rho);

    int64_t size() const override { return n_; }
    uint8_t at(int64_t i, oracle_stats* st = nullptr) const override;
    void extract(int64_t i, int64_t len, uint8_t* out, oracle_stats* st = nullptr) const override;
    void serialize(std::ostream& out) const override;
    size_t byte_size() const override;
    const char* kind() const override { return "rlz"; }

    int64_t reference_length() const { return rho_; }
    int64_t phrase_count() const { return starts_.size(); }

    static rlz_oracle load_body(std::istream& in);

private:
    int64_t n_ = 0;
    int64_t rho_ = 0;
    uint8_t sigma_ = 0;
    packed_array ref_bits_;
    packed_array phrase_pos_;   // copy source, or the literal symbol
    packed_array phrase_len_;   // 0 marks a literal
    std::vector<int64_t> starts_;  // phrase start positions in T, first = rho
};

std::unique_ptr<text_oracle> load_oracle(std::istream& in);

} // namespace sfx
