#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <optional>
#include <vector>

#include "syndyn/bath.hpp"
#include "syndyn/syndrome_graph.hpp"

namespace syndyn {

/// Mean logical energy: a constant, or linear interpolation of samples
/// (clamped at the ends) when `times` is non-empty.
struct MeanEnergy {
    double constant = 0;
    std::vector<double> times;
    std::vector<double> values;

    double at(double t) const;
    bool is_constant() const {
        return times.empty();
    }
};

struct Reservoir {
    SpectralDensity density;
    double temperature;
};

enum class RateMode { SecondMarkov, TimeDependent };

struct CorrectionConfig {
    const SyndromeGraph *graph = nullptr;
    double alpha = 0;
    MeanEnergy eps_bar{};
    SpectralDensity bath = SpectralDensity::lorentz_drude(0, 1);
    double temperature = 1;
    std::optional<Reservoir> reservoir{};
    RateMode mode = RateMode::SecondMarkov;
    /// Track every syndrome as a plain node with no leakage (validation harness).
    bool conservation_mode = false;
    MatsubaraOptions matsubara{};
};

struct RateEdge {
    size_t from;
    /// Local index of the target, or npos for leakage out of the tracked set.
    size_t to;
    size_t error;
    int varpi;
    bool uncorrectable;
};

class RateMatrix {
   public:
    static constexpr size_t npos = size_t(-1);

    explicit RateMatrix(const CorrectionConfig &config);

    size_t dim() const {
        return nodes_.size();
    }
    /// Syndrome of each local index.
    const std::vector<uint64_t> &nodes() const {
        return nodes_;
    }
    const std::vector<RateEdge> &edges() const {
        return edges_;
    }
    bool constant() const;
    bool time_dependent() const {
        return cfg_.mode == RateMode::TimeDependent;
    }
    const CorrectionConfig &config() const {
        return cfg_;
    }

    /// Bath and reservoir frequencies 2 alpha varpi -/+ eps_bar carried by an edge.
    std::pair<double, double> edge_frequencies(const RateEdge &e, double t) const;
    /// Outflow rate along the edge at time t.
    double edge_rate(const RateEdge &e, double t) const;
    /// Outflow rate of every edge at time t, in edges() order.
    std::vector<double> rates(double t) const;
    /// Column-convention generator: dP/dt = G P. With `clamp_negative`, negative
    /// edge rates (possible in time-dependent mode) are set to zero.
    Eigen::SparseMatrix<double> generator(double t = 0, bool clamp_negative = false) const;
    Eigen::SparseMatrix<double> generator_from_rates(const std::vector<double> &rates) const;
    Eigen::MatrixXd dense_generator(double t = 0) const;
    /// Total leakage rate out of each tracked node.
    std::vector<double> leakage(double t = 0) const;
    size_t index_of(uint64_t syndrome) const;

   private:
    CorrectionConfig cfg_;
    std::vector<uint64_t> nodes_;
    std::vector<size_t> local_;
    std::vector<RateEdge> edges_;
};

RateMatrix build_rate_matrix(const CorrectionConfig &config);

/// m + (J/K)(n - m).
double effective_occupation(double j, double k, double n, double m);
/// (J n + K m)/(J + K): the occupation for which bath plus reservoir rates obey
/// detailed balance exactly.
double combined_occupation(double j, double k, double n, double m);
/// w / ln((n+1)/n); returns 0 for n <= 0.
double effective_temperature(double n_eff, double omega);

enum class IntegrationMethod { RK4, MatrixExponential };

struct IntegrateOptions {
    IntegrationMethod method = IntegrationMethod::RK4;
    /// 0 selects min(0.01 / max|G|, horizon / 1e4).
    double dt = 0;
    size_t samples = 101;
    bool clamp_negative_rates = false;
    double bound_eps = 1e-9;
};

struct CorrectionTrajectory {
    std::vector<double> t;
    std::vector<std::vector<double>> populations;
    std::vector<double> p_corr;
    double dt = 0;
    double min_population = 0;
    bool negative_rates_seen = false;
    bool bound_violation = false;
};

/// Default initial state: all population in the codespace.
std::vector<double> codespace_state(const RateMatrix &m);

CorrectionTrajectory integrate(const RateMatrix &m, const std::vector<double> &initial, double horizon,
                               const IntegrateOptions &opts = {});

double correctable_population(const std::vector<double> &state);

/// Least-squares slope of -log P over samples with t >= from_fraction * t_end.
double fit_decay_rate(const std::vector<double> &t, const std::vector<double> &p, double from_fraction = 0.5);
/// -max Re(eigenvalue) of the generator at time t.
double slowest_decay_rate(const RateMatrix &m, double t = 0);

}  // namespace syndyn
