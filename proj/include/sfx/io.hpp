#pragma once

// Little-endian binary I/O helpers shared by all serialized formats.

#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace sfx {

inline void write_u8(std::ostream& out, uint8_t v) {
    out.put(static_cast<char>(v));
}

inline void write_u32(std::ostream& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}

inline void write_u64(std::ostream& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}

inline uint8_t read_u8(std::istream& in) {
    int c = in.get();
    if (c == EOF) throw std::runtime_error("unexpected end of stream");
    return static_cast<uint8_t>(c);
}

inline uint32_t read_u32(std::istream& in) {
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(read_u8(in)) << (8 * i);
    return v;
}

inline uint64_t read_u64(std::istream& in) {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(read_u8(in)) << (8 * i);
    return v;
}

inline void write_magic(std::ostream& out, const char* magic) {
    out.write(magic, 4);
}

inline void expect_magic(std::istream& in, const char* magic) {
    char buf[4];
    in.read(buf, 4);
    if (!in || std::string(buf, 4) != std::string(magic, 4))
        throw std::runtime_error("bad magic, expected " + std::string(magic, 4));
}

} // namespace sfx
