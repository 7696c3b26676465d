#pragma once

// Fixed-width bit-packed array of unsigned values.

#include <cassert>
#include <cstdint>
#include <vector>

#include "sfx/io.hpp"

namespace sfx {

class packed_array {
public:
    packed_array() = default;

    packed_array(int width, int64_t size)
        : width_(width), size_(size), words_((size * width + 63) / 64, 0) {
        assert(width >= 1 && width <= 64);
    }

    int64_t size() const { return size_; }
    int width() const { return width_; }

    uint64_t get(int64_t i) const {
        assert(i >= 0 && i < size_);
        uint64_t bit = static_cast<uint64_t>(i) * width_;
        uint64_t w = bit >> 6, off = bit & 63;
        uint64_t v = words_[w] >> off;
        if (off + width_ > 64) v |= words_[w + 1] << (64 - off);
        return width_ == 64 ? v : (v & ((uint64_t(1) << width_) - 1));
    }

    void set(int64_t i, uint64_t v) {
        assert(i >= 0 && i < size_);
        assert(width_ == 64 || v < (uint64_t(1) << width_));
        uint64_t bit = static_cast<uint64_t>(i) * width_;
        uint64_t w = bit >> 6, off = bit & 63;
        uint64_t mask = width_ == 64 ? ~uint64_t(0) : ((uint64_t(1) << width_) - 1);
        words_[w] = (words_[w] & ~(mask << off)) | (v << off);
        if (off + width_ > 64) {
            uint64_t hi = width_ - (64 - off);
            uint64_t himask = (uint64_t(1) << hi) - 1;
            words_[w + 1] = (words_[w + 1] & ~himask) | (v >> (64 - off));
        }
    }

    // serialized: width u8, size u64, word count u64, words u64[]
    void serialize(std::ostream& out) const {
        write_u8(out, static_cast<uint8_t>(width_));
        write_u64(out, static_cast<uint64_t>(size_));
        write_u64(out, words_.size());
        for (uint64_t w : words_) write_u64(out, w);
    }

    static packed_array load(std::istream& in) {
        packed_array a;
        a.width_ = read_u8(in);
        a.size_ = static_cast<int64_t>(read_u64(in));
        a.words_.resize(read_u64(in));
        for (auto& w : a.words_) w = read_u64(in);
        return a;
    }

    size_t byte_size() const { return 1 + 8 + 8 + 8 * words_.size(); }

private:
    int width_ = 1;
    int64_t size_ = 0;
    std::vector<uint64_t> words_;
};

inline int bits_for(uint64_t max_value) {
    int b = 1;
    while (b < 64 && (uint64_t(1) << b) <= max_value) ++b;
    return b;
}

} // namespace sfx
