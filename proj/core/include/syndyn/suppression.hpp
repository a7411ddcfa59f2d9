#pragma once

#include <complex>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "syndyn/bath.hpp"
#include "syndyn/quadrature.hpp"

namespace syndyn {

/// Piecewise-constant function on [0, inf): value[i] on [start[i], start[i+1]).
/// start[0] must be 0.
struct Schedule {
    std::vector<double> start;
    std::vector<double> value;

    static Schedule constant(double v) {
        return {{0.0}, {v}};
    }
    void validate() const;
    double at(double t) const;
    /// Integral over [0, t].
    double integral(double t) const;
};

/// Times at which the parity p(t) toggles (sorted, non-negative).
struct ParityTrace {
    std::vector<double> flips;

    /// p(t) in {0, 1}; a flip at time s is counted for t >= s.
    int parity(double t) const;
    /// Toggle every `period` starting at `period`, up to and including `horizon`.
    static ParityTrace periodic(double period, double horizon);
    /// A stabilizer pulse sequence; the error's parity toggles on every pulse of
    /// a generator it anticommutes with.
    static ParityTrace from_pulses(const std::vector<std::pair<double, size_t>> &pulses, uint64_t error_syndrome);
};

struct EgpModulation {
    double alpha;
    int anticommuting;
};
/// Penalty schedules of the generators that anticommute with the error.
struct EgpGeneralModulation {
    std::vector<Schedule> penalties;
};
struct DdModulation {
    ParityTrace trace;
};

using Modulation = std::variant<EgpModulation, EgpGeneralModulation, DdModulation>;

/// e^{2 i alpha w tau}.
std::complex<double> m_egp(double alpha, int anticommuting, double tau);
/// (-1)^{p(t) - p(t - tau)}. Throws std::invalid_argument if tau > t or tau < 0.
double m_dd(const ParityTrace &trace, double t, double tau);
/// e^{2 i sum_m int_{t-tau}^{t} alpha_m}; equals m_egp for constant schedules.
std::complex<double> m_egp_general(const std::vector<Schedule> &penalties, double t, double tau);
std::complex<double> modulation_value(const Modulation &m, double t, double tau);

/// Bath correlation function handle. `sharp_decay` hints the shortest time
/// scale near tau = 0 for panel placement.
struct Correlation {
    std::string name;
    std::function<std::complex<double>(double)> fn;
    double sharp_decay = 0;
};

Correlation exponential_correlation(double amplitude, double decay);
Correlation gaussian_correlation(double amplitude, double width);
Correlation lorentz_drude_correlation(double reorganization_energy, double cutoff, double temperature,
                                      size_t k_max = 2048);

struct LeakageRates {
    double r_plus;
    double r_minus;
    double error;
};

/// r+ = 2 Re int_0^t C(tau) m(t,tau) dtau, r- with the conjugate modulation.
LeakageRates leakage_rates(const Correlation &bath, const Modulation &mod, double t,
                           const QuadratureOptions &opts = {});

struct RatePair {
    double plus;
    double minus;
};
/// Rates summed over elementary errors at time t.
using RateFunction = std::function<RatePair(double)>;

/// Ohmic quantum bath under constant EGP, N_e identical errors with w
/// anticommuting generators each.
RateFunction egp_ohmic_rates(double reorganization_energy, double cutoff, double temperature, double alpha,
                             int anticommuting, size_t num_errors = 1, MatsubaraOptions opts = {});

struct P0Options {
    double dt = 1e-3;
    /// Record every k-th step (the final step is always recorded).
    size_t record_every = 1;
    bool clamp_negative_rates = false;
    double bound_eps = 1e-9;
};

struct P0Trajectory {
    std::vector<double> t;
    std::vector<double> p0;
    std::vector<double> p1;
    double min_population = 1;
    bool negative_rates_seen = false;
    /// True when populations left [-eps, 1+eps] under unclamped negative rates.
    bool bound_violation = false;
};

/// RK4 for dP0/dt = r+ P1 - r- P0 with dP1/dt = -dP0/dt.
P0Trajectory p0_dynamics(const RateFunction &rates, double p0, double p1, double horizon, const P0Options &opts = {});

}  // namespace syndyn
