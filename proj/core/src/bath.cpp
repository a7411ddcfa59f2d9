#include "syndyn/bath.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "syndyn/errors.hpp"

namespace syndyn {

namespace {

constexpr double kPi = std::numbers::pi;

void check_lorentz_drude(const LorentzDrude &ld) {
    if (!(ld.cutoff > 0) || !(ld.reorganization_energy >= 0) || !std::isfinite(ld.cutoff) ||
        !std::isfinite(ld.reorganization_energy)) {
        throw std::invalid_argument("Lorentz-Drude density needs E_R >= 0 and cutoff > 0");
    }
}

void check_temperature(double T) {
    if (!(T > 0) || !std::isfinite(T)) {
        throw std::invalid_argument("temperature must be positive and finite, got " + num_str(T));
    }
}

}  // namespace

SpectralDensity::SpectralDensity(LorentzDrude ld) : v_(ld) {
    check_lorentz_drude(ld);
}

SpectralDensity::SpectralDensity(TabulatedDensity tab) {
    if (tab.omega.size() != tab.value.size() || tab.omega.size() < 2) {
        throw std::invalid_argument("tabulated density needs at least two (omega, value) samples of equal length");
    }
    for (size_t i = 0; i < tab.omega.size(); i++) {
        if (tab.omega[i] < 0 || (i > 0 && !(tab.omega[i] > tab.omega[i - 1]))) {
            throw std::invalid_argument("tabulated density frequencies must be non-negative and strictly increasing");
        }
        if (tab.value[i] < 0) {
            throw std::invalid_argument("tabulated density values must be non-negative for omega >= 0");
        }
    }
    if (tab.omega.front() > 0) {
        tab.omega.insert(tab.omega.begin(), 0.0);
        tab.value.insert(tab.value.begin(), 0.0);
    }
    if (tab.value.front() != 0) {
        throw std::invalid_argument("tabulated density must vanish at omega = 0");
    }
    v_ = std::move(tab);
}

double SpectralDensity::operator()(double w) const {
    if (auto ld = std::get_if<LorentzDrude>(&v_)) {
        return 2 * ld->reorganization_energy * ld->cutoff * w / (w * w + ld->cutoff * ld->cutoff);
    }
    const auto &tab = std::get<TabulatedDensity>(v_);
    double a = std::abs(w);
    double s = w < 0 ? -1 : 1;
    if (a >= tab.omega.back()) {
        return a == tab.omega.back() ? s * tab.value.back() : 0.0;
    }
    auto it = std::upper_bound(tab.omega.begin(), tab.omega.end(), a);
    size_t i = size_t(it - tab.omega.begin()) - 1;
    double f = (a - tab.omega[i]) / (tab.omega[i + 1] - tab.omega[i]);
    return s * (tab.value[i] + f * (tab.value[i + 1] - tab.value[i]));
}

double SpectralDensity::slope_at_zero() const {
    if (auto ld = std::get_if<LorentzDrude>(&v_)) {
        return 2 * ld->reorganization_energy / ld->cutoff;
    }
    const auto &tab = std::get<TabulatedDensity>(v_);
    return tab.value[1] / tab.omega[1];
}

double SpectralDensity::scale() const {
    if (auto ld = std::get_if<LorentzDrude>(&v_)) {
        return ld->cutoff;
    }
    return std::get<TabulatedDensity>(v_).omega[1];
}

double spectral_density(const SpectralDensity &j, double omega) {
    return j(omega);
}

double bose_einstein(double omega, double T) {
    check_temperature(T);
    if (omega == 0) {
        throw std::domain_error("Bose-Einstein occupation diverges at omega = 0; use markov_rate's limit");
    }
    return 1 / std::expm1(omega / T);
}

double markov_rate(const SpectralDensity &j, double T, double omega) {
    check_temperature(T);
    if (std::abs(omega) <= 1e-9 * j.scale()) {
        return 2 * T * j.slope_at_zero();
    }
    // n(w) + 1 = -1/expm1(-w/T), accurate for either sign of w.
    return -2 * j(omega) / std::expm1(-omega / T);
}

double log_markov_rate(const SpectralDensity &j, double T, double omega) {
    check_temperature(T);
    if (std::abs(omega) <= 1e-9 * j.scale()) {
        return std::log(2 * T * j.slope_at_zero());
    }
    double x = std::abs(omega) / T;
    double lj = std::log(2 * std::abs(j(omega)));
    // |n + 1| for w > 0 is 1/(1 - e^{-x}); for w < 0 it is n(|w|) = e^{-x}/(1 - e^{-x}).
    double lden = std::log1p(-std::exp(-x));
    return omega > 0 ? lj - lden : lj - x - lden;
}

double correlation_classical(double amplitude, double decay, double t) {
    if (t < 0) {
        throw std::invalid_argument("correlation time must be non-negative");
    }
    return amplitude * std::exp(-decay * t);
}

void check_nonresonant(double g, double T) {
    check_temperature(T);
    double c = 2 * kPi * T;
    double k = std::round(g / c);
    if (k >= 1 && std::abs(g - k * c) <= 1e-9 * g) {
        throw std::domain_error("cutoff " + num_str(g) + " coincides with Matsubara frequency " +
                                std::to_string(int(k)) + "; perturb the temperature slightly, e.g. T*(1+1e-6)");
    }
}

std::complex<double> correlation_quantum(double er, double g, double T, double t, const MatsubaraOptions &opts) {
    if (t < 0) {
        throw std::invalid_argument("correlation time must be non-negative");
    }
    check_nonresonant(g, T);
    double th = g / T;
    std::complex<double> head = er * g * std::complex<double>(1 / std::tan(th / 2), -1) * std::exp(-g * t);
    double c = 2 * kPi * T;
    double pre = 4 * er * g * T;
    double sum = 0;
    if (opts.k_max > 0) {
        for (size_t k = opts.k_max; k >= 1; k--) {
            double nu = c * double(k);
            sum += nu / (g * g - nu * nu) * std::exp(-nu * t);
        }
        return head - pre * sum;
    }
    if (t == 0) {
        throw std::domain_error("Matsubara sum diverges at t = 0; pass an explicit k_max");
    }
    double q = std::exp(-c * t);
    for (size_t k = 1;; k++) {
        double nu = c * double(k);
        sum += nu / (g * g - nu * nu) * std::exp(-nu * t);
        double nn = nu + c;
        if (nn > 2 * g) {
            double tail = pre * nn / (nn * nn - g * g) * std::exp(-nn * t) / (1 - q);
            if (tail <= opts.rel_tol * std::abs(head - pre * sum)) {
                break;
            }
        }
        if (k >= opts.cap) {
            throw NumericalError("Matsubara sum did not reach tolerance within " + std::to_string(opts.cap) +
                                 " terms at t=" + num_str(t));
        }
    }
    return head - pre * sum;
}

double timedep_rate_classical(double g, double w, double t, RateSign, double amplitude) {
    if (t < 0) {
        throw std::invalid_argument("time must be non-negative");
    }
    double e = std::exp(-g * t);
    return amplitude * 2 * (g - g * e * std::cos(w * t) + w * e * std::sin(w * t)) / (w * w + g * g);
}

double ohmic_frequency_rate(double er, double g, double T, double W, double t, const MatsubaraOptions &opts) {
    if (t < 0) {
        throw std::invalid_argument("time must be non-negative");
    }
    check_nonresonant(g, T);
    if (t == 0) {
        return 0.0;
    }
    double th = g / T;
    double sh = std::sin(th / 2), ch = std::cos(th / 2);
    double eg = std::exp(-g * t);
    double a0 = g * ch + W * sh;
    double first =
        2 * er * g / sh * (a0 - g * eg * std::cos(W * t - th / 2) + W * eg * std::sin(W * t - th / 2)) / (W * W + g * g);
    double c = 2 * kPi * T;
    double pre = 8 * er * g * T;
    double cw = std::cos(W * t), sw = std::sin(W * t);
    if (opts.k_max > 0) {
        double m = 0;
        for (size_t k = opts.k_max; k >= 1; k--) {
            double nu = c * double(k);
            double en = std::exp(-nu * t);
            m += nu / (g * g - nu * nu) * (nu - en * (nu * cw - W * sw)) / (W * W + nu * nu);
        }
        return first - pre * m;
    }
    // Stationary part: sum nu^2/((nu^2-g^2)(nu^2+W^2)) via partial fractions.
    double x = g / c, y = std::abs(W) / c;
    double s1 = (1 - kPi * x / std::tan(kPi * x)) / (2 * x * x) / (c * c);
    double s2 = y > 1e-4 ? (kPi * y / std::tanh(kPi * y) - 1) / (2 * y * y) / (c * c)
                         : (kPi * kPi / 6 - std::pow(kPi, 4) / 90 * y * y) / (c * c);
    double stationary = pre / (g * g + W * W) * (g * g * s1 + W * W * s2);
    double base = first + stationary;
    double q = std::exp(-c * t);
    double tr = 0;
    double aw = std::abs(W);
    for (size_t k = 1;; k++) {
        double nu = c * double(k);
        double en = std::exp(-nu * t);
        tr += nu / (g * g - nu * nu) * en * (nu * cw - W * sw) / (W * W + nu * nu);
        double nn = nu + c;
        if (nn > 2 * std::max(g, aw)) {
            double bound = pre * nn * (nn + aw) / ((nn * nn - g * g) * (nn * nn + W * W)) * std::exp(-nn * t) / (1 - q);
            double mag = std::max(std::abs(base + pre * tr), 1e-300);
            if (bound <= opts.rel_tol * mag) {
                break;
            }
        }
        if (k >= opts.cap) {
            throw NumericalError("Matsubara transient did not reach tolerance within " + std::to_string(opts.cap) +
                                 " terms at t=" + num_str(t));
        }
    }
    return base + pre * tr;
}

double timedep_rate_ohmic(double er, double g, double T, double omega, double t, RateSign sign,
                          const MatsubaraOptions &opts) {
    return ohmic_frequency_rate(er, g, T, sign == RateSign::Plus ? omega : -omega, t, opts);
}

}  // namespace syndyn
