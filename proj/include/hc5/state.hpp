#ifndef HC5_STATE_HPP
#define HC5_STATE_HPP

#include <array>
#include <cstddef>

#include "hc5/fx32.hpp"

namespace hc5 {

/// Five-component system state S = (x, y, z, u, v), generic over the
/// scalar backend (double or Fx32).
template <typename S>
struct State {
    S x{}, y{}, z{}, u{}, v{};

    std::array<S, 5> to_array() const { return {x, y, z, u, v}; }
    static State from_array(const std::array<S, 5>& a) {
        return {a[0], a[1], a[2], a[3], a[4]};
    }

    friend bool operator==(const State& a, const State& b) {
        return a.x == b.x && a.y == b.y && a.z == b.z && a.u == b.u && a.v == b.v;
    }
};

using StateD = State<double>;
using StateFx = State<Fx32>;

enum class Backend { Fixed, Double };

struct SolverConfig {
    double h = 0.01;
    Backend backend = Backend::Fixed;
    OverflowPolicy overflow = OverflowPolicy::Wrap;
};

/// Initial condition. The x component (named c throughout the dynamics
/// analysis) selects the dynamical regime; the remaining components default
/// to the reference orbit used in all analyses.
struct InitialCondition {
    double x0 = 0.0002;
    double y0 = 0.0005;
    double z0 = 0.00005;
    double u0 = 0.001;
    double v0 = 0.0;

    /// Reference orbit: (0.0002, 0.0005, 0.00005, 0.001, 0).
    static InitialCondition reference() { return {}; }

    /// Same tail components, x0 = c. Used by the regime sweeps.
    static InitialCondition with_c(double c) {
        InitialCondition ic;
        ic.x0 = c;
        return ic;
    }

    StateD to_state() const { return {x0, y0, z0, u0, v0}; }
    StateFx to_fixed(OverflowPolicy p = OverflowPolicy::Wrap) const {
        return {Fx32::from_real(x0, p), Fx32::from_real(y0, p), Fx32::from_real(z0, p),
                Fx32::from_real(u0, p), Fx32::from_real(v0, p)};
    }
};

}  // namespace hc5

#endif
