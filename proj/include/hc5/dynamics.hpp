#ifndef HC5_DYNAMICS_HPP
#define HC5_DYNAMICS_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "hc5/state.hpp"

namespace hc5 {

using Mat5 = std::array<std::array<double, 5>, 5>;

/// Thrown when a trajectory leaves the bounded region (norm above 1e6,
/// the unbounded regime) during an analysis that cannot continue.
struct DivergenceError : std::runtime_error {
    double time;
    explicit DivergenceError(double t);
};

/// Norm threshold separating the unbounded regime from numerical overflow.
inline constexpr double kDivergenceNorm = 1e6;

/// Matrix of partial derivatives of the vector field at s. Its trace is -1
/// for every state.
Mat5 jacobian(const StateD& s);

struct LyapunovSpectrum {
    std::array<double, 5> exponents{};  // sorted descending, nats per unit time
    double dimension = 0.0;             // Kaplan-Yorke
};

struct LyapunovOptions {
    double h = 0.01;
    int renorm_interval = 10;   // steps between QR re-orthonormalizations
    double settle_time = 100.0; // integrated before accumulation starts
};

/// Benettin tangent-space estimate: integrate the state together with five
/// tangent vectors, re-orthonormalize periodically, and average the log
/// stretch factors over t_total. Throws DivergenceError in the unbounded
/// regime.
LyapunovSpectrum lyapunov_spectrum(const InitialCondition& ic, double t_total,
                                   const LyapunovOptions& opts = {});

/// Kaplan-Yorke dimension of a descending spectrum: j + (sum of the first j
/// exponents) / |L_{j+1}| with j the largest index keeping the partial sum
/// nonnegative. Returns 0 when no exponent is positive; throws
/// std::domain_error when L_{j+1} == 0.
double lyapunov_dimension(const std::array<double, 5>& exponents_desc);

enum class Stability { Stable, MarginalZero, Unstable };

struct StabilityReport {
    double c = 0.0;
    std::array<std::complex<double>, 4> eigenvalues{};  // roots of the reduced polynomial
    Stability classification = Stability::Stable;
};

const char* to_string(Stability s);

/// Equilibrium stability at E = (c,0,0,0,0) from the numeric roots of
/// lambda (lambda + 0.5) (lambda^2 + 1.5 lambda + (c - 0.5)).
/// Apart from the structural zero root, all roots have negative real part
/// iff c > 0.5; a further zero root (|Re| <= 1e-12) reports MarginalZero.
StabilityReport stability_at(double c);

struct BifurcationSample {
    double c = 0.0;
    std::vector<double> extrema;  // local maxima of x(t) after the transient
    bool diverged = false;
};

struct BifurcationOptions {
    double transient = 500.0;  // time units discarded before capture
    double capture = 500.0;    // capture window length
    double h = 0.01;
};

/// Sweeps the initial condition c across [c_min, c_max] and records the
/// local maxima of x(t) per sample. Diverging runs (the c > 0.92 regime)
/// are marked, not fatal.
std::vector<BifurcationSample> bifurcation_sweep(double c_min, double c_max,
                                                 std::size_t n_points,
                                                 const BifurcationOptions& opts = {});

/// Number of distinct extrema after quantizing to the given resolution.
std::size_t distinct_extrema(const BifurcationSample& sample, double quantum = 1e-3);

struct PoincareOptions {
    double plane_x = 1.0;
    double transient = 100.0;
    double h = 0.01;
};

/// Positive-going crossings of the plane x = plane_x, located by linear
/// interpolation between bracketing steps. Each point is (y, z, u, v).
/// An empty section is a valid result.
std::vector<std::array<double, 4>> poincare_section(const InitialCondition& ic,
                                                    double t_total,
                                                    const PoincareOptions& opts = {});

/// Lyapunov spectra over a c grid; diverged samples carry no spectrum.
struct SpectrumSample {
    double c = 0.0;
    LyapunovSpectrum spectrum;
    bool diverged = false;
};

std::vector<SpectrumSample> lyapunov_sweep(double c_min, double c_max,
                                           std::size_t n_points, double t_total,
                                           const LyapunovOptions& opts = {});

// CSV exporters.
void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumSample>& rows);
void write_bifurcation_csv(std::ostream& os, const std::vector<BifurcationSample>& rows);
void write_poincare_csv(std::ostream& os, const std::vector<std::array<double, 4>>& pts);

}  // namespace hc5

#endif
