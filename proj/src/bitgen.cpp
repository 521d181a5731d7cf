#include "hc5/bitgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace hc5 {

const char* to_string(Channel c) {
    switch (c) {
        case Channel::X: return "X";
        case Channel::Y: return "Y";
        case Channel::Z: return "Z";
        case Channel::U: return "U";
        case Channel::V: return "V";
    }
    return "?";
}

std::array<TruncatedWord, 5> truncate(const StateFx& s) {
    const auto comps = s.to_array();
    std::array<TruncatedWord, 5> out;
    for (int i = 0; i < 5; ++i) {
        out[i].bits = static_cast<uint16_t>(static_cast<uint32_t>(comps[i].raw()) & kTruncMask);
        out[i].channel = static_cast<Channel>(i);
    }
    return out;
}

std::array<uint8_t, kTruncBits> serialize(TruncatedWord w) {
    std::array<uint8_t, kTruncBits> bits;
    for (int i = 0; i < kTruncBits; ++i) bits[i] = (w.bits >> i) & 1;
    return bits;
}

TruncatedWord deserialize(std::span<const uint8_t> bits, Channel channel) {
    if (bits.size() != kTruncBits)
        throw std::invalid_argument("deserialize: expected 12 bits");
    TruncatedWord w;
    w.channel = channel;
    for (int i = 0; i < kTruncBits; ++i)
        if (bits[i]) w.bits = static_cast<uint16_t>(w.bits | (1u << i));
    return w;
}

std::array<BitStream, 5> combine(const std::array<BitStream, 4>& channels,
                                 const BitStream& scrambled) {
    for (const auto& ch : channels)
        if (ch.size() != scrambled.size())
            throw std::invalid_argument("combine: stream length mismatch");
    std::array<BitStream, 5> out;
    for (int i = 0; i < 5; ++i) {
        out[i].set_label("B" + std::to_string(i + 1));
        out[i].reserve(scrambled.size());
    }
    for (std::size_t t = 0; t < scrambled.size(); ++t) {
        const int o = scrambled[t];
        for (int i = 0; i < 4; ++i) out[i].push_back(channels[i][t] ^ o);
        out[4].push_back(o);
    }
    return out;
}

Pipeline::Pipeline(const PipelineConfig& cfg)
    : backend_(cfg.h, cfg.overflow), state_(backend_.load(cfg.ic)) {
    for (std::size_t i = 0; i < cfg.discard_states; ++i) advance();
    bit_pos_ = kTruncBits;  // transient words are dropped entirely
}

void Pipeline::advance() {
    try {
        state_ = rk4_step(backend_, state_);
    } catch (const FxOverflow&) {
        throw TrajectoryTrap(states_);
    }
    ++states_;
    const auto words = truncate(state_);
    for (int c = 0; c < 5; ++c) chan_bits_[c] = serialize(words[c]);
    bit_pos_ = 0;
}

void Pipeline::generate(std::size_t n_bits, std::array<BitStream, 5>& streams) {
    std::size_t produced = 0;
    while (produced < n_bits) {
        if (bit_pos_ == kTruncBits) advance();
        const int vbit = chan_bits_[4][static_cast<std::size_t>(bit_pos_)];
        if (serial_index_ < Scrambler::kStages) {
            scrambler_.preload(vbit);
        } else {
            const int o = scrambler_.step(vbit);
            for (int c = 0; c < 4; ++c)
                streams[c].push_back(chan_bits_[c][static_cast<std::size_t>(bit_pos_)] ^ o);
            streams[4].push_back(o);
            ++produced;
        }
        ++serial_index_;
        ++bit_pos_;
    }
}

std::array<BitStream, 5> Pipeline::generate(std::size_t n_bits) {
    std::array<BitStream, 5> streams;
    for (int i = 0; i < 5; ++i) {
        streams[i].set_label("B" + std::to_string(i + 1));
        streams[i].reserve(n_bits);
    }
    generate(n_bits, streams);
    return streams;
}

double shannon_entropy(std::span<const uint32_t> words, int n_bits) {
    if (words.empty()) throw std::invalid_argument("shannon_entropy: empty input");
    if (n_bits < 1 || n_bits > 32) throw std::invalid_argument("shannon_entropy: N_b must be in [1,32]");
    // Sort-and-count keeps memory bounded for wide alphabets.
    std::vector<uint32_t> sorted(words.begin(), words.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double h = 0.0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        const double p = static_cast<double>(j - i) / n;
        h -= p * std::log2(p);
        i = j;
    }
    return h;
}

double avg_entropy_per_bit(std::span<const uint32_t> words, int n_bits) {
    return shannon_entropy(words, n_bits) / static_cast<double>(n_bits);
}

std::vector<uint32_t> truncated_channel_words(std::span<const StateFx> states,
                                              Channel channel, int n_bits) {
    if (n_bits < 1 || n_bits > 32) throw std::invalid_argument("truncated_channel_words: N_b must be in [1,32]");
    const uint32_t mask = n_bits == 32 ? 0xFFFFFFFFu : ((1u << n_bits) - 1u);
    std::vector<uint32_t> out;
    out.reserve(states.size());
    for (const auto& s : states)
        out.push_back(static_cast<uint32_t>(s.to_array()[static_cast<int>(channel)].raw()) & mask);
    return out;
}

std::vector<uint32_t> words_from_bits(const BitStream& bs, int width) {
    if (width < 1 || width > 32) throw std::invalid_argument("words_from_bits: width must be in [1,32]");
    std::vector<uint32_t> out;
    out.reserve(bs.size() / static_cast<std::size_t>(width));
    for (std::size_t base = 0; base + static_cast<std::size_t>(width) <= bs.size();
         base += static_cast<std::size_t>(width)) {
        uint32_t w = 0;
        for (int k = 0; k < width; ++k)
            w |= static_cast<uint32_t>(bs[base + static_cast<std::size_t>(k)]) << k;
        out.push_back(w);
    }
    return out;
}

std::vector<std::pair<int, double>> entropy_sweep(std::span<const StateFx> states,
                                                  std::span<const int> widths,
                                                  Channel channel) {
    std::vector<std::pair<int, double>> rows;
    rows.reserve(widths.size());
    for (int w : widths) {
        const auto words = truncated_channel_words(states, channel, w);
        rows.emplace_back(w, avg_entropy_per_bit(words, w));
    }
    return rows;
}

void write_entropy_csv(std::ostream& os, const std::vector<std::pair<int, double>>& rows) {
    os << "Nb,entropy_per_bit\n";
    char buf[32];
    for (const auto& [nb, e] : rows) {
        std::snprintf(buf, sizeof(buf), "%.17g", e);
        os << nb << ',' << buf << '\n';
    }
}

}  // namespace hc5
