#pragma once

#include <complex>
#include <cstddef>
#include <variant>
#include <vector>

namespace syndyn {

/// Ohmic density with Lorentz-Drude cutoff: 2 E_R g w / (w^2 + g^2).
struct LorentzDrude {
    double reorganization_energy;
    double cutoff;
};

/// Samples of J on w >= 0 (ascending); linear interpolation, zero beyond the
/// last sample, extended to w < 0 by J(-w) = -J(w).
struct TabulatedDensity {
    std::vector<double> omega;
    std::vector<double> value;
};

class SpectralDensity {
   public:
    SpectralDensity(LorentzDrude ld);
    SpectralDensity(TabulatedDensity tab);
    static SpectralDensity lorentz_drude(double reorganization_energy, double cutoff) {
        return SpectralDensity(LorentzDrude{reorganization_energy, cutoff});
    }

    double operator()(double omega) const;
    /// dJ/dw at w = 0.
    double slope_at_zero() const;
    /// Frequency scale used for the w -> 0 branch of markov_rate.
    double scale() const;

    const LorentzDrude *lorentz_drude() const {
        return std::get_if<LorentzDrude>(&v_);
    }

   private:
    std::variant<LorentzDrude, TabulatedDensity> v_;
};

double spectral_density(const SpectralDensity &j, double omega);

/// 1/(e^{w/T} - 1). Throws std::domain_error at w == 0.
double bose_einstein(double omega, double temperature);

/// 2 J(w) (n(w) + 1); for |w| <= 1e-9 * scale the limit 2 T J'(0).
double markov_rate(const SpectralDensity &j, double temperature, double omega);
/// log of markov_rate, finite where markov_rate underflows.
double log_markov_rate(const SpectralDensity &j, double temperature, double omega);

double correlation_classical(double amplitude, double decay, double t);

struct MatsubaraOptions {
    /// 0 selects truncation by the tail criterion; otherwise a literal cutoff.
    size_t k_max = 0;
    double rel_tol = 1e-8;
    size_t cap = 1000000;
};

/// Lorentz-Drude quantum correlation function with Matsubara sum. With
/// automatic truncation t must be positive: the sum diverges at t = 0.
std::complex<double> correlation_quantum(double reorganization_energy, double cutoff, double temperature, double t,
                                         const MatsubaraOptions &opts = {});

enum class RateSign { Plus, Minus };

/// Exponential correlation A e^{-g t} integrated against e^{+-i w tau}; equal for both signs.
double timedep_rate_classical(double decay, double omega, double t, RateSign sign, double amplitude = 1.0);

/// 2 Re int_0^t C(tau) e^{i W tau} dtau for the Lorentz-Drude quantum correlation.
/// Automatic truncation sums the stationary Matsubara part in closed form and
/// truncates only the decaying transient.
double ohmic_frequency_rate(double reorganization_energy, double cutoff, double temperature, double frequency, double t,
                            const MatsubaraOptions &opts = {});

/// r+ uses frequency +w, r- uses -w.
double timedep_rate_ohmic(double reorganization_energy, double cutoff, double temperature, double omega, double t,
                          RateSign sign, const MatsubaraOptions &opts = {});

/// Throws std::domain_error when the cutoff coincides with a Matsubara frequency.
void check_nonresonant(double cutoff, double temperature);

}  // namespace syndyn
