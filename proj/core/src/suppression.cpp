#include "syndyn/suppression.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "syndyn/errors.hpp"

namespace syndyn {

void Schedule::validate() const {
    if (start.empty() || start.size() != value.size()) {
        throw std::invalid_argument("schedule needs equal, non-empty start and value lists");
    }
    if (start.front() != 0) {
        throw std::invalid_argument("schedule must start at t = 0");
    }
    for (size_t i = 1; i < start.size(); i++) {
        if (!(start[i] > start[i - 1])) {
            throw std::invalid_argument("schedule start times must be strictly increasing");
        }
    }
}

double Schedule::at(double t) const {
    auto it = std::upper_bound(start.begin(), start.end(), t);
    return it == start.begin() ? value.front() : value[size_t(it - start.begin()) - 1];
}

double Schedule::integral(double t) const {
    double acc = 0;
    for (size_t i = 0; i < start.size() && start[i] < t; i++) {
        double end = i + 1 < start.size() ? std::min(start[i + 1], t) : t;
        acc += value[i] * (end - start[i]);
    }
    return acc;
}

int ParityTrace::parity(double t) const {
    auto it = std::upper_bound(flips.begin(), flips.end(), t);
    return int(it - flips.begin()) & 1;
}

ParityTrace ParityTrace::periodic(double period, double horizon) {
    if (!(period > 0)) {
        throw std::invalid_argument("pulse period must be positive");
    }
    ParityTrace p;
    for (size_t k = 1; double(k) * period <= horizon; k++) {
        p.flips.push_back(double(k) * period);
    }
    return p;
}

ParityTrace ParityTrace::from_pulses(const std::vector<std::pair<double, size_t>> &pulses, uint64_t error_syndrome) {
    ParityTrace p;
    for (const auto &[time, gen] : pulses) {
        if (time < 0) {
            throw std::invalid_argument("pulse time must be non-negative");
        }
        if (gen >= 64) {
            throw std::out_of_range("generator index " + std::to_string(gen) + " out of range");
        }
        if ((error_syndrome >> gen) & 1) {
            p.flips.push_back(time);
        }
    }
    std::sort(p.flips.begin(), p.flips.end());
    // Simultaneous pulses on two anticommuting generators cancel.
    std::vector<double> merged;
    for (double f : p.flips) {
        if (!merged.empty() && merged.back() == f) {
            merged.pop_back();
        } else {
            merged.push_back(f);
        }
    }
    p.flips = std::move(merged);
    return p;
}

std::complex<double> m_egp(double alpha, int w, double tau) {
    return std::polar(1.0, 2 * alpha * double(w) * tau);
}

double m_dd(const ParityTrace &trace, double t, double tau) {
    if (tau < 0 || tau > t) {
        throw std::invalid_argument("DD modulation needs 0 <= tau <= t");
    }
    return (trace.parity(t) - trace.parity(t - tau)) & 1 ? -1.0 : 1.0;
}

std::complex<double> m_egp_general(const std::vector<Schedule> &penalties, double t, double tau) {
    if (tau < 0 || tau > t) {
        throw std::invalid_argument("EGP modulation needs 0 <= tau <= t");
    }
    double area = 0;
    for (const auto &s : penalties) {
        area += s.integral(t) - s.integral(t - tau);
    }
    return std::polar(1.0, 2 * area);
}

std::complex<double> modulation_value(const Modulation &m, double t, double tau) {
    return std::visit(
        [&](const auto &v) -> std::complex<double> {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, EgpModulation>) {
                return m_egp(v.alpha, v.anticommuting, tau);
            } else if constexpr (std::is_same_v<V, EgpGeneralModulation>) {
                return m_egp_general(v.penalties, t, tau);
            } else {
                return m_dd(v.trace, t, tau);
            }
        },
        m);
}

Correlation exponential_correlation(double amplitude, double decay) {
    if (!(decay > 0)) {
        throw std::invalid_argument("exponential correlation needs a positive decay rate");
    }
    return {"exponential", [=](double t) { return std::complex<double>(correlation_classical(amplitude, decay, t), 0); },
            decay};
}

Correlation gaussian_correlation(double amplitude, double width) {
    if (!(width > 0)) {
        throw std::invalid_argument("gaussian correlation needs a positive width");
    }
    return {"gaussian",
            [=](double t) { return std::complex<double>(amplitude * std::exp(-0.5 * width * width * t * t), 0); },
            width};
}

Correlation lorentz_drude_correlation(double er, double g, double T, size_t k_max) {
    check_nonresonant(g, T);
    if (k_max == 0) {
        throw std::invalid_argument("quadrature of the quantum correlation needs an explicit k_max");
    }
    MatsubaraOptions o;
    o.k_max = k_max;
    return {"lorentz-drude", [=](double t) { return correlation_quantum(er, g, T, t, o); },
            2 * std::numbers::pi * T * double(k_max)};
}

LeakageRates leakage_rates(const Correlation &bath, const Modulation &mod, double t, const QuadratureOptions &opts) {
    if (t < 0) {
        throw std::invalid_argument("time must be non-negative");
    }
    if (t == 0) {
        return {0, 0, 0};
    }
    std::vector<double> cuts;
    double period = 0;
    if (auto e = std::get_if<EgpModulation>(&mod)) {
        double f = 2 * std::abs(e->alpha * e->anticommuting);
        if (f > 0) {
            period = 2 * std::numbers::pi / f;
        }
    } else if (auto g = std::get_if<EgpGeneralModulation>(&mod)) {
        double f = 0;
        for (const auto &s : g->penalties) {
            s.validate();
            double mx = 0;
            for (double v : s.value) {
                mx = std::max(mx, std::abs(v));
            }
            f += 2 * mx;
            for (double st : s.start) {
                cuts.push_back(t - st);
            }
        }
        if (f > 0) {
            period = 2 * std::numbers::pi / f;
        }
    } else {
        for (double fl : std::get<DdModulation>(mod).trace.flips) {
            cuts.push_back(t - fl);
        }
    }
    // Geometric cuts resolve short-time structure of the correlation.
    double shortest = bath.sharp_decay > 0 ? 1 / bath.sharp_decay : t;
    for (double s = std::min(shortest, t) / 2; s > 1e-12 * t && s > 0.1 * shortest / 1024; s /= 8) {
        cuts.push_back(s);
    }
    for (double s = shortest * 8; s < t; s *= 8) {
        cuts.push_back(s);
    }
    auto plus = [&](double tau) {
        auto c = bath.fn(tau);
        auto m = modulation_value(mod, t, tau);
        return c.real() * m.real() - c.imag() * m.imag();
    };
    auto minus = [&](double tau) {
        auto c = bath.fn(tau);
        auto m = modulation_value(mod, t, tau);
        return c.real() * m.real() + c.imag() * m.imag();
    };
    auto rp = integrate_panels(plus, 0, t, cuts, period, opts);
    auto rm = integrate_panels(minus, 0, t, cuts, period, opts);
    return {2 * rp.value, 2 * rm.value, 2 * std::max(rp.error, rm.error)};
}

RateFunction egp_ohmic_rates(double er, double g, double T, double alpha, int w, size_t num_errors,
                             MatsubaraOptions opts) {
    check_nonresonant(g, T);
    double omega = 2 * alpha * double(w);
    double ne = double(num_errors);
    return [=](double t) {
        return RatePair{ne * timedep_rate_ohmic(er, g, T, omega, t, RateSign::Plus, opts),
                        ne * timedep_rate_ohmic(er, g, T, omega, t, RateSign::Minus, opts)};
    };
}

P0Trajectory p0_dynamics(const RateFunction &rates, double p0, double p1, double horizon, const P0Options &opts) {
    auto in_unit = [](double v) { return v >= 0 && v <= 1; };
    if (!in_unit(p0) || !in_unit(p1) || p0 + p1 > 1 + 1e-12) {
        throw std::invalid_argument("initial populations must lie in [0,1] with P0 + P1 <= 1");
    }
    if (!(opts.dt > 0) || !(horizon >= 0)) {
        throw std::invalid_argument("dt must be positive and horizon non-negative");
    }
    P0Trajectory tr;
    auto record = [&](double t) {
        tr.t.push_back(t);
        tr.p0.push_back(p0);
        tr.p1.push_back(p1);
    };
    auto eval = [&](double t) {
        RatePair r = rates(t);
        if (!std::isfinite(r.plus) || !std::isfinite(r.minus)) {
            throw NumericalError("non-finite rate at t=" + num_str(t));
        }
        if (r.plus < 0 || r.minus < 0) {
            tr.negative_rates_seen = true;
            if (opts.clamp_negative_rates) {
                r.plus = std::max(r.plus, 0.0);
                r.minus = std::max(r.minus, 0.0);
            }
        }
        return r;
    };
    auto deriv = [](const RatePair &r, double a, double b) { return r.plus * b - r.minus * a; };
    record(0);
    size_t steps = size_t(std::ceil(horizon / opts.dt - 1e-9));
    double h = steps ? horizon / double(steps) : 0;
    for (size_t s = 0; s < steps; s++) {
        double t = h * double(s);
        RatePair r1 = eval(t), r2 = eval(t + h / 2), r4 = eval(t + h);
        double k1 = deriv(r1, p0, p1);
        double k2 = deriv(r2, p0 + h / 2 * k1, p1 - h / 2 * k1);
        double k3 = deriv(r2, p0 + h / 2 * k2, p1 - h / 2 * k2);
        double k4 = deriv(r4, p0 + h * k3, p1 - h * k3);
        double d = h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
        p0 += d;
        p1 -= d;
        tr.min_population = std::min({tr.min_population, p0, p1});
        if (p0 < -opts.bound_eps || p1 < -opts.bound_eps || p0 > 1 + opts.bound_eps || p1 > 1 + opts.bound_eps) {
            if (tr.negative_rates_seen && !opts.clamp_negative_rates) {
                tr.bound_violation = true;
            } else {
                throw NumericalError("population left [0,1] at t=" + num_str(t + h) + "; reduce dt");
            }
        }
        if ((s + 1) % opts.record_every == 0 || s + 1 == steps) {
            record(h * double(s + 1));
        }
    }
    return tr;
}

}  // namespace syndyn
