#ifndef HC5_SYSTEM_HPP
#define HC5_SYSTEM_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "hc5/fx32.hpp"
#include "hc5/state.hpp"

namespace hc5 {

/// Thrown when a fixed-point trajectory overflows under Trap policy.
/// Carries the index of the first offending step.
struct TrajectoryTrap : std::runtime_error {
    std::size_t step;
    explicit TrajectoryTrap(std::size_t step_index)
        : std::runtime_error("fixed-point overflow at step " + std::to_string(step_index)),
          step(step_index) {}
};

/// Double-precision arithmetic backend with the solver constants
/// precomputed once.
class DoubleBackend {
public:
    using Scalar = double;

    explicit DoubleBackend(double step = 0.01)
        : h_(step), h_half_(step / 2.0), h_sixth_(step / 6.0) {}

    Scalar h() const { return h_; }
    Scalar h_half() const { return h_half_; }
    Scalar h_sixth() const { return h_sixth_; }
    Scalar one() const { return 1.0; }

    Scalar add(Scalar a, Scalar b) const { return a + b; }
    Scalar sub(Scalar a, Scalar b) const { return a - b; }
    Scalar mul(Scalar a, Scalar b) const { return a * b; }
    Scalar neg(Scalar a) const { return -a; }
    Scalar half(Scalar a) const { return 0.5 * a; }

    StateD load(const InitialCondition& ic) const { return ic.to_state(); }

private:
    double h_, h_half_, h_sixth_;
};

/// Hardware-faithful Q4.27 backend. Constants h, h/2, h/6 and 1 are
/// round-to-nearest-even conversions fixed at construction; h/6 in
/// particular is inexact in binary and is pinned here once.
class FixedBackend {
public:
    using Scalar = Fx32;

    explicit FixedBackend(double step = 0.01, OverflowPolicy policy = OverflowPolicy::Wrap)
        : h_(Fx32::from_real(step, policy)),
          h_half_(Fx32::from_real(step / 2.0, policy)),
          h_sixth_(Fx32::from_real(step / 6.0, policy)),
          policy_(policy) {}

    Scalar h() const { return h_; }
    Scalar h_half() const { return h_half_; }
    Scalar h_sixth() const { return h_sixth_; }
    Scalar one() const { return Fx32::from_raw(Fx32::kOneRaw); }

    Scalar add(Scalar a, Scalar b) const { return fx_add(a, b, policy_); }
    Scalar sub(Scalar a, Scalar b) const { return fx_sub(a, b, policy_); }
    Scalar mul(Scalar a, Scalar b) const { return fx_mul(a, b, policy_); }
    Scalar neg(Scalar a) const { return fx_neg(a, policy_); }
    Scalar half(Scalar a) const { return fx_half(a); }

    OverflowPolicy policy() const { return policy_; }

    StateFx load(const InitialCondition& ic) const { return ic.to_fixed(policy_); }

private:
    Fx32 h_, h_half_, h_sixth_;
    OverflowPolicy policy_;
};

/// The 5D hyperchaotic vector field
///   x' = y, y' = z, z' = u,
///   u' = -z - 0.5 u + (x - 1) y,
///   v' = -u - 0.5 v + (x - 1) z.
/// This is the single shared mapping evaluated for every RK4 stage, in both
/// backends.
template <class B>
State<typename B::Scalar> eval_f(const B& b, const State<typename B::Scalar>& s) {
    using S = typename B::Scalar;
    const S xm1 = b.sub(s.x, b.one());
    S fu = b.neg(s.z);
    fu = b.sub(fu, b.half(s.u));
    fu = b.add(fu, b.mul(xm1, s.y));
    S fv = b.neg(s.u);
    fv = b.sub(fv, b.half(s.v));
    fv = b.add(fv, b.mul(xm1, s.z));
    return {s.y, s.z, s.u, fu, fv};
}

namespace detail {

template <class B>
State<typename B::Scalar> axpy(const B& b, const State<typename B::Scalar>& s,
                               typename B::Scalar c, const State<typename B::Scalar>& k) {
    return {b.add(s.x, b.mul(c, k.x)), b.add(s.y, b.mul(c, k.y)),
            b.add(s.z, b.mul(c, k.z)), b.add(s.u, b.mul(c, k.u)),
            b.add(s.v, b.mul(c, k.v))};
}

template <class B>
State<typename B::Scalar> vadd(const B& b, const State<typename B::Scalar>& a,
                               const State<typename B::Scalar>& c) {
    return {b.add(a.x, c.x), b.add(a.y, c.y), b.add(a.z, c.z), b.add(a.u, c.u),
            b.add(a.v, c.v)};
}

}  // namespace detail

/// One classical RK4 step. All four stage derivatives come from the one
/// eval_f entry point; the weighted sum k1 + 2k2 + 2k3 + k4 doubles the
/// middle stages by addition (exact in both backends) before the single
/// h/6 multiply.
template <class B>
State<typename B::Scalar> rk4_step(const B& b, const State<typename B::Scalar>& s) {
    using detail::axpy;
    using detail::vadd;
    const auto k1 = eval_f(b, s);
    const auto k2 = eval_f(b, axpy(b, s, b.h_half(), k1));
    const auto k3 = eval_f(b, axpy(b, s, b.h_half(), k2));
    const auto k4 = eval_f(b, axpy(b, s, b.h(), k3));
    auto sum = vadd(b, k1, k2);
    sum = vadd(b, sum, k2);
    sum = vadd(b, sum, k3);
    sum = vadd(b, sum, k3);
    sum = vadd(b, sum, k4);
    return axpy(b, s, b.h_sixth(), sum);
}

/// n_steps successive states (the state after step 1, 2, ..., n_steps).
/// Deterministic: identical inputs give bit-identical fixed-point output.
/// Under Trap policy an overflow surfaces as TrajectoryTrap with the index
/// of the first trapping step.
template <class B>
std::vector<State<typename B::Scalar>> trajectory(const B& b,
                                                  const State<typename B::Scalar>& start,
                                                  std::size_t n_steps) {
    if (n_steps < 1) throw std::invalid_argument("trajectory: n_steps must be >= 1");
    std::vector<State<typename B::Scalar>> out;
    out.reserve(n_steps);
    auto s = start;
    for (std::size_t i = 0; i < n_steps; ++i) {
        try {
            s = rk4_step(b, s);
        } catch (const FxOverflow&) {
            throw TrajectoryTrap(i);
        }
        out.push_back(s);
    }
    return out;
}

/// CSV export, header `step,x,y,z,u,v`. The fixed-point overload appends
/// 8-digit hex raw columns for golden files.
void write_trajectory_csv(std::ostream& os, const StateD& initial,
                          const std::vector<StateD>& steps);
void write_trajectory_csv(std::ostream& os, const StateFx& initial,
                          const std::vector<StateFx>& steps);

}  // namespace hc5

#endif
