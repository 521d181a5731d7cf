#ifndef HC5_FX32_HPP
#define HC5_FX32_HPP

#include <cstdint>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace hc5 {

/// Overflow handling for the 32-bit fixed-point datapath.
///
/// Wrap is the canonical hardware behavior (two's-complement rollover).
/// Saturate clamps to the representable range. Trap throws FxOverflow so
/// long runs can prove that no overflow ever occurred: a run that completes
/// under Trap is bit-identical to the same run under Wrap.
enum class OverflowPolicy { Wrap, Saturate, Trap };

struct FxOverflow : std::overflow_error {
    using std::overflow_error::overflow_error;
};

/// Q4.27 two's-complement fixed-point scalar: 1 sign bit, 4 integer bits,
/// 27 fraction bits. Value = raw / 2^27, range [-16, 16 - 2^-27].
class Fx32 {
public:
    static constexpr int kFracBits = 27;
    static constexpr int32_t kOneRaw = INT32_C(1) << kFracBits;
    static constexpr double kScale = 134217728.0;  // 2^27

    constexpr Fx32() = default;

    static constexpr Fx32 from_raw(int32_t raw) { return Fx32(raw); }

    /// Round-to-nearest-even conversion of a real value, then range
    /// resolution per policy. Requires |r| < 16 under Trap.
    static Fx32 from_real(double r, OverflowPolicy policy = OverflowPolicy::Wrap);

    constexpr int32_t raw() const { return raw_; }

    /// Exact: |raw| <= 2^31 fits a double mantissa.
    double to_double() const { return static_cast<double>(raw_) / kScale; }

    /// 8-digit lowercase hex of the raw word, for golden files.
    std::string raw_hex() const;

    friend constexpr bool operator==(Fx32 a, Fx32 b) { return a.raw_ == b.raw_; }
    friend constexpr bool operator!=(Fx32 a, Fx32 b) { return a.raw_ != b.raw_; }
    friend constexpr bool operator<(Fx32 a, Fx32 b) { return a.raw_ < b.raw_; }

private:
    constexpr explicit Fx32(int32_t raw) : raw_(raw) {}
    int32_t raw_ = 0;
};

namespace detail {

/// Bring a wide intermediate (in raw units) back into 32 bits.
inline int32_t fx_resolve(int64_t wide, OverflowPolicy policy) {
    if (wide >= std::numeric_limits<int32_t>::min() &&
        wide <= std::numeric_limits<int32_t>::max()) {
        return static_cast<int32_t>(wide);
    }
    switch (policy) {
        case OverflowPolicy::Wrap:
            return static_cast<int32_t>(static_cast<uint32_t>(static_cast<uint64_t>(wide)));
        case OverflowPolicy::Saturate:
            return wide < 0 ? std::numeric_limits<int32_t>::min()
                            : std::numeric_limits<int32_t>::max();
        case OverflowPolicy::Trap:
            throw FxOverflow("fixed-point overflow");
    }
    return 0;  // unreachable
}

}  // namespace detail

inline Fx32 Fx32::from_real(double r, OverflowPolicy policy) {
    if (!std::isfinite(r)) throw std::invalid_argument("Fx32::from_real: non-finite input");
    // llrint rounds to nearest, ties to even, in the default FP environment.
    return from_raw(detail::fx_resolve(std::llrint(r * kScale), policy));
}

inline std::string Fx32::raw_hex() const {
    static const char* digits = "0123456789abcdef";
    auto u = static_cast<uint32_t>(raw_);
    std::string s(8, '0');
    for (int i = 7; i >= 0; --i, u >>= 4) s[i] = digits[u & 0xF];
    return s;
}

inline Fx32 fx_add(Fx32 a, Fx32 b, OverflowPolicy policy = OverflowPolicy::Wrap) {
    return Fx32::from_raw(detail::fx_resolve(
        static_cast<int64_t>(a.raw()) + static_cast<int64_t>(b.raw()), policy));
}

inline Fx32 fx_sub(Fx32 a, Fx32 b, OverflowPolicy policy = OverflowPolicy::Wrap) {
    return Fx32::from_raw(detail::fx_resolve(
        static_cast<int64_t>(a.raw()) - static_cast<int64_t>(b.raw()), policy));
}

/// Full 64-bit product, arithmetic shift right by 27. The shift truncates
/// toward negative infinity, matching a hardware multiplier bit-slice; the
/// result is below the exact product by less than 2^-27.
inline Fx32 fx_mul(Fx32 a, Fx32 b, OverflowPolicy policy = OverflowPolicy::Wrap) {
    const int64_t prod = static_cast<int64_t>(a.raw()) * static_cast<int64_t>(b.raw());
    return Fx32::from_raw(detail::fx_resolve(prod >> Fx32::kFracBits, policy));
}

inline Fx32 fx_neg(Fx32 a, OverflowPolicy policy = OverflowPolicy::Wrap) {
    return Fx32::from_raw(detail::fx_resolve(-static_cast<int64_t>(a.raw()), policy));
}

/// Multiply by 0.5 as an arithmetic right shift (floor on odd negative raws).
/// Never overflows.
inline constexpr Fx32 fx_half(Fx32 a) {
    return Fx32::from_raw(a.raw() >> 1);
}

}  // namespace hc5

#endif
