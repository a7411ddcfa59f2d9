#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "syndyn/bath.hpp"

namespace syndyn {

enum class ChainRates {
    /// Rates from markov_rate, so detailed balance is inherited.
    Markov,
    /// Downhill 2J(alpha Delta), uphill the same times e^{-alpha Delta / T}.
    Boltzmann,
};

/// Birth-death chain over error weight: transient levels 0..n_c-1, absorber at n_c.
struct LumpedChain {
    size_t n_c = 1;
    /// Number of elementary errors (real-valued so huge systems fit).
    double num_errors = 2;
    /// Barrier steps Delta_1..Delta_{n_c+1}.
    std::vector<double> barriers;
    double alpha = 1;
    SpectralDensity bath = SpectralDensity::lorentz_drude(0.1, 200);
    double temperature = 1;
    /// Step length; unset selects the largest admissible value.
    std::optional<double> dt;
    ChainRates rates = ChainRates::Markov;

    static LumpedChain constant(size_t n_c, double num_errors, double barrier, double alpha, SpectralDensity bath,
                                double temperature);
    void validate() const;
};

/// Per-unit-time forward and backward rates of level w (log scale; q_0 is -inf).
struct LogRates {
    double log_p;
    double log_q;
};
LogRates level_log_rates(const LumpedChain &chain, size_t w);

/// log of 1 / max_w (p_w + q_w) over w <= n_c.
double log_admissible_dt(const LumpedChain &chain);
double log_step(const LumpedChain &chain);

/// Per-step probabilities (p_w, q_w) = dt * rates. Throws std::domain_error if
/// dt is not admissible.
std::pair<double, double> transition_probs(const LumpedChain &chain, size_t w);

/// log of the mean absorption time from level 0, by first-step analysis in
/// log-sum-exp form.
double log_hitting_time(const LumpedChain &chain);
double hitting_time(const LumpedChain &chain);
/// log of the expected time spent at each transient level.
std::vector<double> log_level_occupation(const LumpedChain &chain);

/// Constant-barrier double sum; falls back to the general form when lambda = 0.
double log_hitting_time_constant(const LumpedChain &chain, double barrier);

enum class BoundForm {
    Derived,
    /// Numerator e^{lambda(n_c+1)} + 1 as sometimes written; kept only to
    /// demonstrate that it is not a lower bound.
    Literal,
};
/// log eta_bound; requires num_errors >= 10 n_c and lambda > 0.
double log_hitting_bound(const LumpedChain &chain, double barrier, BoundForm form = BoundForm::Derived);
/// lambda n_c - N_e H(n_c/N_e) - log j - log n_c with natural logs.
double log_bound_approx(const LumpedChain &chain, double barrier);
/// 2 J(alpha Delta).
double barrier_rate(const LumpedChain &chain, double barrier);

struct MonteCarloResult {
    double mean = 0;
    double std_error = 0;
    size_t trials = 0;
    size_t truncated = 0;
    bool partial() const {
        return truncated > 0;
    }
};

/// Simulates the discrete chain from level 0 with geometric holding times.
/// Each trial draws from its own generator seeded by (seed, trial), so the
/// result does not depend on thread count.
MonteCarloResult mc_hitting_oracle(const LumpedChain &chain, size_t trials, uint64_t seed, size_t threads = 0,
                                   uint64_t step_cap = 1000000000ULL);

enum class NcConvention { Formula, PaperWorked };

struct ConcatenatedCode {
    size_t base_n = 7;
    size_t base_d = 3;
    size_t level = 4;
    size_t errors_per_qubit = 2;
    NcConvention convention = NcConvention::PaperWorked;
    std::optional<size_t> n_c_override;

    /// errors_per_qubit * base_n^level * n_l.
    double num_errors(double n_l) const;
    size_t n_c() const;
};

enum class BarrierScaling { Log, Sqrt, Linear };
BarrierScaling parse_scaling(const std::string &name);
std::string scaling_name(BarrierScaling s);
double barrier_value(BarrierScaling s, double n_l);

struct ScanRequest {
    ConcatenatedCode code;
    BarrierScaling scaling = BarrierScaling::Log;
    std::vector<double> alphas;
    std::vector<double> temperatures;
    std::vector<double> n_l;
    SpectralDensity bath = SpectralDensity::lorentz_drude(0.1, 200);
    size_t threads = 0;
};

struct ScanRow {
    double n_l;
    double alpha;
    double temperature;
    double barrier;
    double num_errors;
    size_t n_c;
    double log_eta;
    /// NaN where the bound's preconditions fail.
    double log_bound;
    double log_approx;
};

/// Rows ordered by (temperature, alpha, n_l) as given in the request.
std::vector<ScanRow> scan(const ScanRequest &req);

/// Slope of y against f(x) between consecutive points.
std::vector<double> window_slopes(const std::vector<double> &x, const std::vector<double> &y, BarrierScaling against);

struct ScalingFit {
    BarrierScaling best;
    /// Ratio of the last two window slopes for each class, indexed by enum value.
    double ratio[3];
};
/// For each candidate class, the ratio of successive window slopes of y versus
/// f(x); the class whose ratio is nearest 1 is reported.
ScalingFit classify_scaling(const std::vector<double> &x, const std::vector<double> &y);

}  // namespace syndyn
