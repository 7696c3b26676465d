#pragma once

// Input normalization: dense alphabet remap, sentinel handling and the
// reversed-text convention used by every other component.
//
// Internally all positions are 0-based. The sentinel has dense code 0,
// decodes to byte '$', occurs exactly once (at the last position) and is
// strictly smaller than every other code.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sfx {

inline constexpr uint8_t SENTINEL_BYTE = '$';

struct text {
    std::vector<uint8_t> data;           // dense codes, data.back() == 0
    std::array<int16_t, 256> alpha_map;  // raw byte -> code, -1 if absent
    std::vector<uint8_t> alpha_inv;      // code -> raw byte

    int64_t size() const { return static_cast<int64_t>(data.size()); }
    int sigma() const { return static_cast<int>(alpha_inv.size()); }

    int16_t code_of(uint8_t raw) const { return alpha_map[raw]; }

    std::string decode() const;
};

// Builds a text from raw bytes: optional whitelist filtering, dense code
// assignment by ascending raw byte value, sentinel appended.
// Throws if the filtered stream is empty or contains the sentinel byte.
text normalize(std::string_view raw, const std::array<bool, 256>* whitelist = nullptr);

std::array<bool, 256> dna_whitelist();

// rev T = T[n-2] T[n-3] ... T[0] $ (0-based); same alphabet maps.
text reverse_text(const text& t);

// Applies a permutation of the non-sentinel codes; perm has sigma entries,
// perm[0] must be 0. chi is invariant under this, the BWT run count is not.
text permute_codes(const text& t, std::span<const uint8_t> perm);

// Reads a raw byte file, or FASTA ('>' header lines stripped, sequence lines
// concatenated, whitespace dropped).
std::string load_raw(const std::string& path, bool fasta);

} // namespace sfx
