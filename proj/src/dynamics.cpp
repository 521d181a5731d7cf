#include "hc5/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>

#include "hc5/system.hpp"

namespace hc5 {

DivergenceError::DivergenceError(double t)
    : std::runtime_error("trajectory entered the unbounded regime at t = " +
                         std::to_string(t)),
      time(t) {}

Mat5 jacobian(const StateD& s) {
    return Mat5{{{0, 1, 0, 0, 0},
                 {0, 0, 1, 0, 0},
                 {0, 0, 0, 1, 0},
                 {s.y, s.x - 1.0, -1.0, -0.5, 0},
                 {s.z, 0, s.x - 1.0, -1.0, -0.5}}};
}

namespace {

using Vec5 = std::array<double, 5>;

// J(s) * w without materializing the matrix.
Vec5 jac_apply(const StateD& s, const Vec5& w) {
    return {w[1], w[2], w[3],
            s.y * w[0] + (s.x - 1.0) * w[1] - w[2] - 0.5 * w[3],
            s.z * w[0] + (s.x - 1.0) * w[2] - w[3] - 0.5 * w[4]};
}

double dot(const Vec5& a, const Vec5& b) {
    double r = 0;
    for (int i = 0; i < 5; ++i) r += a[i] * b[i];
    return r;
}

// State plus five tangent vectors, integrated as one flow.
struct TangentFlow {
    StateD s;
    std::array<Vec5, 5> w;
};

TangentFlow rhs(const DoubleBackend& b, const TangentFlow& f) {
    TangentFlow d;
    d.s = eval_f(b, f.s);
    for (int k = 0; k < 5; ++k) d.w[k] = jac_apply(f.s, f.w[k]);
    return d;
}

TangentFlow axpy(const TangentFlow& a, double c, const TangentFlow& k) {
    TangentFlow r;
    r.s = {a.s.x + c * k.s.x, a.s.y + c * k.s.y, a.s.z + c * k.s.z,
           a.s.u + c * k.s.u, a.s.v + c * k.s.v};
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) r.w[i][j] = a.w[i][j] + c * k.w[i][j];
    return r;
}

TangentFlow tangent_rk4(const DoubleBackend& b, const TangentFlow& f, double h) {
    const auto k1 = rhs(b, f);
    const auto k2 = rhs(b, axpy(f, h / 2.0, k1));
    const auto k3 = rhs(b, axpy(f, h / 2.0, k2));
    const auto k4 = rhs(b, axpy(f, h, k3));
    auto sum = axpy(k1, 2.0, k2);
    sum = axpy(sum, 2.0, k3);
    sum = axpy(sum, 1.0, k4);
    return axpy(f, h / 6.0, sum);
}

// Modified Gram-Schmidt; returns the pre-normalization column norms.
std::array<double, 5> reorthonormalize(std::array<Vec5, 5>& w) {
    std::array<double, 5> norms{};
    for (int i = 0; i < 5; ++i) {
        double n = std::sqrt(dot(w[i], w[i]));
        norms[i] = n;
        if (n < 1e-300) throw std::runtime_error("tangent basis collapsed");
        for (int j = 0; j < 5; ++j) w[i][j] /= n;
        for (int k = i + 1; k < 5; ++k) {
            const double d = dot(w[k], w[i]);
            for (int j = 0; j < 5; ++j) w[k][j] -= d * w[i][j];
        }
    }
    return norms;
}

double max_abs(const StateD& s) {
    return std::max({std::fabs(s.x), std::fabs(s.y), std::fabs(s.z), std::fabs(s.u),
                     std::fabs(s.v)});
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

LyapunovSpectrum lyapunov_spectrum(const InitialCondition& ic, double t_total,
                                   const LyapunovOptions& opts) {
    const DoubleBackend b(opts.h);
    TangentFlow f;
    f.s = ic.to_state();
    for (int i = 0; i < 5; ++i) {
        f.w[i] = Vec5{};
        f.w[i][i] = 1.0;
    }

    const auto settle_steps = static_cast<long long>(std::llround(opts.settle_time / opts.h));
    const auto accum_steps = static_cast<long long>(std::llround(t_total / opts.h));
    std::array<double, 5> log_sum{};
    long long steps_done = 0;

    for (long long i = 0; i < settle_steps + accum_steps; ++i) {
        f = tangent_rk4(b, f, opts.h);
        ++steps_done;
        if (steps_done % opts.renorm_interval == 0) {
            const auto norms = reorthonormalize(f.w);
            if (i >= settle_steps)
                for (int k = 0; k < 5; ++k) log_sum[k] += std::log(norms[k]);
            if (max_abs(f.s) > kDivergenceNorm) throw DivergenceError(steps_done * opts.h);
        }
    }

    LyapunovSpectrum spec;
    const double t_accum = static_cast<double>(accum_steps) * opts.h;
    for (int k = 0; k < 5; ++k) spec.exponents[k] = log_sum[k] / t_accum;
    std::sort(spec.exponents.begin(), spec.exponents.end(), std::greater<>());
    spec.dimension = lyapunov_dimension(spec.exponents);
    return spec;
}

double lyapunov_dimension(const std::array<double, 5>& exponents_desc) {
    if (exponents_desc[0] <= 0.0) return 0.0;
    double partial = 0.0;
    int j = 0;
    for (int i = 0; i < 5; ++i) {
        if (partial + exponents_desc[i] >= 0.0) {
            partial += exponents_desc[i];
            j = i + 1;
        } else {
            break;
        }
    }
    if (j >= 5) return 5.0;  // every partial sum nonnegative
    const double next = exponents_desc[j];
    if (next == 0.0) throw std::domain_error("lyapunov_dimension: L_{j+1} is zero");
    return j + partial / std::fabs(next);
}

const char* to_string(Stability s) {
    switch (s) {
        case Stability::Stable: return "Stable";
        case Stability::MarginalZero: return "MarginalZero";
        case Stability::Unstable: return "Unstable";
    }
    return "?";
}

StabilityReport stability_at(double c) {
    StabilityReport rep;
    rep.c = c;
    // lambda (lambda + 0.5) (lambda^2 + 1.5 lambda + (c - 0.5))
    const double disc = 1.5 * 1.5 - 4.0 * (c - 0.5);
    std::complex<double> r1, r2;
    if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        r1 = (-1.5 + sq) / 2.0;
        r2 = (-1.5 - sq) / 2.0;
    } else {
        const double sq = std::sqrt(-disc);
        r1 = {-0.75, sq / 2.0};
        r2 = {-0.75, -sq / 2.0};
    }
    rep.eigenvalues = {std::complex<double>(0.0), std::complex<double>(-0.5), r1, r2};

    constexpr double tol = 1e-12;
    bool unstable = false, marginal = false;
    for (std::size_t i = 1; i < rep.eigenvalues.size(); ++i) {  // skip the structural zero
        const double re = rep.eigenvalues[i].real();
        if (re > tol) unstable = true;
        else if (std::fabs(re) <= tol) marginal = true;
    }
    rep.classification = unstable ? Stability::Unstable
                       : marginal ? Stability::MarginalZero
                                  : Stability::Stable;
    return rep;
}

std::vector<BifurcationSample> bifurcation_sweep(double c_min, double c_max,
                                                 std::size_t n_points,
                                                 const BifurcationOptions& opts) {
    std::vector<BifurcationSample> out;
    out.reserve(n_points);
    const DoubleBackend b(opts.h);
    for (std::size_t p = 0; p < n_points; ++p) {
        const double c = n_points == 1 ? c_min
                                       : c_min + (c_max - c_min) * static_cast<double>(p) /
                                                     static_cast<double>(n_points - 1);
        BifurcationSample sample;
        sample.c = c;
        auto s = InitialCondition::with_c(c).to_state();
        const auto transient_steps = static_cast<long long>(std::llround(opts.transient / opts.h));
        const auto capture_steps = static_cast<long long>(std::llround(opts.capture / opts.h));
        // x_prev2, x_prev bracket the sample tested for a strict local maximum.
        double x_prev2 = 0, x_prev = 0;
        for (long long i = 0; i < transient_steps + capture_steps; ++i) {
            const double x_now = s.x;
            s = rk4_step(b, s);
            if (max_abs(s) > kDivergenceNorm) {
                sample.diverged = true;
                sample.extrema.clear();
                break;
            }
            if (i >= 2 && i >= transient_steps && x_prev > x_prev2 && x_prev > x_now)
                sample.extrema.push_back(x_prev);
            x_prev2 = x_prev;
            x_prev = x_now;
        }
        out.push_back(std::move(sample));
    }
    return out;
}

std::size_t distinct_extrema(const BifurcationSample& sample, double quantum) {
    std::set<long long> bins;
    for (double e : sample.extrema) bins.insert(std::llround(e / quantum));
    return bins.size();
}

std::vector<std::array<double, 4>> poincare_section(const InitialCondition& ic,
                                                    double t_total,
                                                    const PoincareOptions& opts) {
    std::vector<std::array<double, 4>> pts;
    const DoubleBackend b(opts.h);
    auto s = ic.to_state();
    const auto transient_steps = static_cast<long long>(std::llround(opts.transient / opts.h));
    const auto total_steps = static_cast<long long>(std::llround(t_total / opts.h));
    for (long long i = 0; i < total_steps; ++i) {
        const StateD prev = s;
        s = rk4_step(b, s);
        if (max_abs(s) > kDivergenceNorm) break;
        if (i < transient_steps) continue;
        if (prev.x < opts.plane_x && s.x >= opts.plane_x && s.x != prev.x) {
            const double a = (opts.plane_x - prev.x) / (s.x - prev.x);
            pts.push_back({prev.y + a * (s.y - prev.y), prev.z + a * (s.z - prev.z),
                           prev.u + a * (s.u - prev.u), prev.v + a * (s.v - prev.v)});
        }
    }
    return pts;
}

std::vector<SpectrumSample> lyapunov_sweep(double c_min, double c_max,
                                           std::size_t n_points, double t_total,
                                           const LyapunovOptions& opts) {
    std::vector<SpectrumSample> out;
    out.reserve(n_points);
    for (std::size_t p = 0; p < n_points; ++p) {
        const double c = n_points == 1 ? c_min
                                       : c_min + (c_max - c_min) * static_cast<double>(p) /
                                                     static_cast<double>(n_points - 1);
        SpectrumSample sample;
        sample.c = c;
        try {
            sample.spectrum = lyapunov_spectrum(InitialCondition::with_c(c), t_total, opts);
        } catch (const DivergenceError&) {
            sample.diverged = true;
        }
        out.push_back(sample);
    }
    return out;
}

void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumSample>& rows) {
    os << "c,L1,L2,L3,L4,L5,DL\n";
    for (const auto& r : rows) {
        os << fmt_double(r.c);
        if (r.diverged) {
            os << ",diverged,diverged,diverged,diverged,diverged,diverged\n";
            continue;
        }
        for (double e : r.spectrum.exponents) os << ',' << fmt_double(e);
        os << ',' << fmt_double(r.spectrum.dimension) << '\n';
    }
}

void write_bifurcation_csv(std::ostream& os, const std::vector<BifurcationSample>& rows) {
    os << "c,extremum\n";
    for (const auto& r : rows) {
        if (r.diverged) {
            os << fmt_double(r.c) << ",diverged\n";
            continue;
        }
        for (double e : r.extrema) os << fmt_double(r.c) << ',' << fmt_double(e) << '\n';
    }
}

void write_poincare_csv(std::ostream& os, const std::vector<std::array<double, 4>>& pts) {
    os << "y,z,u,v\n";
    for (const auto& p : pts)
        os << fmt_double(p[0]) << ',' << fmt_double(p[1]) << ',' << fmt_double(p[2]) << ','
           << fmt_double(p[3]) << '\n';
}

}  // namespace hc5
