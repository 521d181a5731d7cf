#ifndef HC5_BITSTREAM_HPP
#define HC5_BITSTREAM_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hc5 {

/// Ordered bit sequence with a channel label. Storage is packed, earliest
/// bit in the least-significant bit of each byte, so the in-memory layout
/// is byte-identical to the packed binary file format.
class BitStream {
public:
    BitStream() = default;
    explicit BitStream(std::string label) : label_(std::move(label)) {}

    const std::string& label() const { return label_; }
    void set_label(std::string label) { label_ = std::move(label); }

    std::size_t size() const { return n_bits_; }
    bool empty() const { return n_bits_ == 0; }

    void push_back(int bit) {
        if (n_bits_ % 8 == 0) bytes_.push_back(0);
        if (bit) bytes_.back() |= static_cast<uint8_t>(1u << (n_bits_ % 8));
        ++n_bits_;
    }

    int operator[](std::size_t i) const {
        return (bytes_[i / 8] >> (i % 8)) & 1;
    }

    void reserve(std::size_t bits) { bytes_.reserve((bits + 7) / 8); }
    void clear() { bytes_.clear(); n_bits_ = 0; }

    std::size_t count_ones() const;

    /// One byte per bit, for the statistical tests.
    std::vector<uint8_t> unpack(std::size_t offset, std::size_t count) const;
    std::vector<uint8_t> unpack() const { return unpack(0, n_bits_); }

    const std::vector<uint8_t>& packed_bytes() const { return bytes_; }

    /// Packed binary: 8 bits per byte, earliest bit in the LSB.
    void write_packed(std::ostream& os) const;
    /// ASCII: one '0'/'1' per bit, newline every `newline_every` bits.
    void write_ascii(std::ostream& os, std::size_t newline_every = std::size_t{1} << 20) const;

    static BitStream read_packed(std::istream& is, std::string label = {});
    static BitStream read_ascii(std::istream& is, std::string label = {});

private:
    std::string label_;
    std::vector<uint8_t> bytes_;
    std::size_t n_bits_ = 0;
};

}  // namespace hc5

#endif
