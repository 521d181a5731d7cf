#include "hc5/bitstream.hpp"

#include <bit>
#include <istream>
#include <ostream>

namespace hc5 {

std::size_t BitStream::count_ones() const {
    std::size_t n = 0;
    for (uint8_t b : bytes_) n += static_cast<std::size_t>(std::popcount(b));
    // Trailing pad bits are always zero, so whole-byte popcounts are exact.
    return n;
}

std::vector<uint8_t> BitStream::unpack(std::size_t offset, std::size_t count) const {
    std::vector<uint8_t> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = static_cast<uint8_t>((*this)[offset + i]);
    return out;
}

void BitStream::write_packed(std::ostream& os) const {
    os.write(reinterpret_cast<const char*>(bytes_.data()),
             static_cast<std::streamsize>(bytes_.size()));
}

void BitStream::write_ascii(std::ostream& os, std::size_t newline_every) const {
    for (std::size_t i = 0; i < n_bits_; ++i) {
        os.put((*this)[i] ? '1' : '0');
        if ((i + 1) % newline_every == 0) os.put('\n');
    }
    if (n_bits_ % newline_every != 0) os.put('\n');
}

BitStream BitStream::read_packed(std::istream& is, std::string label) {
    BitStream bs(std::move(label));
    char c;
    while (is.get(c)) {
        const auto byte = static_cast<uint8_t>(c);
        for (int k = 0; k < 8; ++k) bs.push_back((byte >> k) & 1);
    }
    return bs;
}

BitStream BitStream::read_ascii(std::istream& is, std::string label) {
    BitStream bs(std::move(label));
    char c;
    while (is.get(c)) {
        if (c == '0') bs.push_back(0);
        else if (c == '1') bs.push_back(1);
        // whitespace and newlines are ignored
    }
    return bs;
}

}  // namespace hc5
