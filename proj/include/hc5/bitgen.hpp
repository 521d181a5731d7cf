#ifndef HC5_BITGEN_HPP
#define HC5_BITGEN_HPP

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hc5/bitstream.hpp"
#include "hc5/state.hpp"
#include "hc5/system.hpp"

namespace hc5 {

enum class Channel : uint8_t { X = 0, Y, Z, U, V };

const char* to_string(Channel c);

/// 12-bit word holding the least-significant bits of one chaotic sample.
struct TruncatedWord {
    uint16_t bits = 0;  // < 2^12
    Channel channel = Channel::X;
};

inline constexpr int kTruncBits = 12;
inline constexpr uint32_t kTruncMask = 0xFFFu;

/// Keep the 12 LSBs of each component: raw & 0xFFF.
std::array<TruncatedWord, 5> truncate(const StateFx& s);

/// Parallel-to-serial conversion, LSB first (bit index 0 first).
std::array<uint8_t, kTruncBits> serialize(TruncatedWord w);
TruncatedWord deserialize(std::span<const uint8_t> bits, Channel channel);

/// Self-synchronizing scrambler with m = 6 register stages and feedback
/// taps x^6 + x^5 + 1: o_t = in_t XOR o_{t-5} XOR o_{t-6}, with the output
/// shifted back into the register.
class Scrambler {
public:
    static constexpr int kStages = 6;

    /// Shift a seed bit into the register without producing output.
    void preload(int bit) { reg_ = ((reg_ << 1) | (bit & 1)) & 0x3Fu; }

    int step(int in) {
        const int out = (in ^ (reg_ >> 4) ^ (reg_ >> 5)) & 1;
        reg_ = ((reg_ << 1) | static_cast<unsigned>(out)) & 0x3Fu;
        return out;
    }

    uint8_t register_bits() const { return static_cast<uint8_t>(reg_); }
    void reset(uint8_t bits = 0) { reg_ = bits & 0x3Fu; }

private:
    unsigned reg_ = 0;
};

/// XOR-combine: B1..B4 = channel XOR scrambled (positionwise), B5 = the
/// scrambled stream itself. All inputs must have equal length.
std::array<BitStream, 5> combine(const std::array<BitStream, 4>& channels,
                                 const BitStream& scrambled);

struct PipelineConfig {
    InitialCondition ic = InitialCondition::reference();
    double h = 0.01;
    OverflowPolicy overflow = OverflowPolicy::Wrap;
    std::size_t discard_states = 1000;  // transient states dropped before truncation
};

/// The full generator: fixed-point integration -> 12-LSB truncation ->
/// LSB-first serialization -> scrambler seeded by the first 6 V-channel
/// bits -> XOR combining. The first 6 serialized bits of every channel are
/// consumed/discarded by the preload so that B1..B5 stay aligned.
///
/// Strictly sequential (the scrambler carries state); use one instance per
/// thread.
class Pipeline {
public:
    explicit Pipeline(const PipelineConfig& cfg);

    /// Appends exactly n_bits to each of B1..B5.
    void generate(std::size_t n_bits, std::array<BitStream, 5>& streams);

    /// Convenience: fresh labelled streams B1..B5 of n_bits each.
    std::array<BitStream, 5> generate(std::size_t n_bits);

    /// States consumed so far (including the discarded transient).
    std::size_t states_consumed() const { return states_; }

    const StateFx& state() const { return state_; }

private:
    void advance();  // one state -> 12 serialized bits per channel

    FixedBackend backend_;
    StateFx state_;
    Scrambler scrambler_;
    std::size_t states_ = 0;
    std::size_t serial_index_ = 0;  // global serialized bit index, preload included
    std::array<std::array<uint8_t, kTruncBits>, 5> chan_bits_{};
    int bit_pos_ = kTruncBits;  // position within the current word; 12 = refill
};

/// Shannon entropy (bits) of a symbol sequence over a 2^n_bits alphabet
/// with empirical probabilities. Symbols must already be masked to n_bits.
double shannon_entropy(std::span<const uint32_t> words, int n_bits);

/// H / N_b, in [0, 1].
double avg_entropy_per_bit(std::span<const uint32_t> words, int n_bits);

/// Truncate one channel of a fixed-point trajectory to its n_bits LSBs.
std::vector<uint32_t> truncated_channel_words(std::span<const StateFx> states,
                                              Channel channel, int n_bits);

/// Reassemble width-bit words from consecutive stream bits, LSB first.
std::vector<uint32_t> words_from_bits(const BitStream& bs, int width);

/// One (N_b, average entropy per bit) row per requested width, from the
/// X channel of the given trajectory.
std::vector<std::pair<int, double>> entropy_sweep(std::span<const StateFx> states,
                                                  std::span<const int> widths,
                                                  Channel channel = Channel::X);

void write_entropy_csv(std::ostream& os, const std::vector<std::pair<int, double>>& rows);

}  // namespace hc5

#endif
