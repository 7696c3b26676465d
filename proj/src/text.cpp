#include "sfx/text.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <stdexcept>

namespace sfx {

std::string text::decode() const {
    std::string s;
    s.reserve(data.size());
    for (uint8_t c : data) s.push_back(static_cast<char>(alpha_inv[c]));
    return s;
}

std::array<bool, 256> dna_whitelist() {
    std::array<bool, 256> w{};
    w['A'] = w['C'] = w['G'] = w['T'] = true;
    return w;
}

text normalize(std::string_view raw, const std::array<bool, 256>* whitelist) {
    std::string filtered;
    filtered.reserve(raw.size());
    for (char ch : raw) {
        uint8_t b = static_cast<uint8_t>(ch);
        if (whitelist && !(*whitelist)[b]) continue;
        filtered.push_back(ch);
    }
    if (filtered.empty()) throw std::runtime_error("normalize: input empty after filtering");
    for (char ch : filtered)
        if (static_cast<uint8_t>(ch) == SENTINEL_BYTE)
            throw std::runtime_error("normalize: sentinel byte '$' present in input");

    std::array<bool, 256> present{};
    int distinct = 0;
    for (char ch : filtered) {
        uint8_t b = static_cast<uint8_t>(ch);
        distinct += !present[b];
        present[b] = true;
    }
    if (distinct > 254)  // sigma' must fit the u8 of the serialized formats
        throw std::runtime_error("normalize: more than 254 distinct input bytes");

    text t;
    t.alpha_map.fill(-1);
    t.alpha_inv.push_back(SENTINEL_BYTE);  // code 0
    for (int b = 0; b < 256; ++b) {
        if (!present[b]) continue;
        t.alpha_map[b] = static_cast<int16_t>(t.alpha_inv.size());
        t.alpha_inv.push_back(static_cast<uint8_t>(b));
    }

    t.data.reserve(filtered.size() + 1);
    for (char ch : filtered) t.data.push_back(static_cast<uint8_t>(t.alpha_map[static_cast<uint8_t>(ch)]));
    t.data.push_back(0);
    t.alpha_map[SENTINEL_BYTE] = 0;
    return t;
}

text reverse_text(const text& t) {
    assert(t.size() >= 2 && t.data.back() == 0);
    text r;
    r.alpha_map = t.alpha_map;
    r.alpha_inv = t.alpha_inv;
    r.data.reserve(t.data.size());
    for (int64_t i = t.size() - 2; i >= 0; --i) r.data.push_back(t.data[i]);
    r.data.push_back(0);
    return r;
}

text permute_codes(const text& t, std::span<const uint8_t> perm) {
    if (static_cast<int>(perm.size()) != t.sigma() || perm[0] != 0)
        throw std::runtime_error("permute_codes: bad permutation");
    text p;
    p.data.resize(t.data.size());
    for (size_t i = 0; i < t.data.size(); ++i) p.data[i] = perm[t.data[i]];
    // keep the decode consistent: code perm[c] decodes to the byte of old code c
    p.alpha_inv.resize(t.alpha_inv.size());
    p.alpha_map.fill(-1);
    for (int c = 0; c < t.sigma(); ++c) {
        p.alpha_inv[perm[c]] = t.alpha_inv[c];
        p.alpha_map[t.alpha_inv[c]] = static_cast<int16_t>(perm[c]);
    }
    return p;
}

std::string load_raw(const std::string& path, bool fasta) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (!fasta) return raw;
    std::string out;
    out.reserve(raw.size());
    size_t i = 0;
    while (i < raw.size()) {
        size_t eol = raw.find('\n', i);
        if (eol == std::string::npos) eol = raw.size();
        if (i < eol && raw[i] != '>') {
            for (size_t j = i; j < eol; ++j)
                if (!isspace(static_cast<unsigned char>(raw[j]))) out.push_back(raw[j]);
        }
        i = eol + 1;
    }
    return out;
}

} // namespace sfx
