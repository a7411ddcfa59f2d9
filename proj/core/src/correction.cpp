#include "syndyn/correction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

#include "syndyn/errors.hpp"

namespace syndyn {

double MeanEnergy::at(double t) const {
    if (times.empty()) {
        return constant;
    }
    if (t <= times.front()) {
        return values.front();
    }
    if (t >= times.back()) {
        return values.back();
    }
    auto it = std::upper_bound(times.begin(), times.end(), t);
    size_t i = size_t(it - times.begin()) - 1;
    double f = (t - times[i]) / (times[i + 1] - times[i]);
    return values[i] + f * (values[i + 1] - values[i]);
}

RateMatrix::RateMatrix(const CorrectionConfig &config) : cfg_(config) {
    if (!cfg_.graph) {
        throw std::invalid_argument("rate matrix needs a classified syndrome graph");
    }
    if (!(cfg_.temperature > 0)) {
        throw std::invalid_argument("bath temperature must be positive");
    }
    if (cfg_.alpha < 0 || !std::isfinite(cfg_.alpha)) {
        throw std::invalid_argument("penalty alpha must be non-negative and finite");
    }
    if (cfg_.reservoir) {
        if (cfg_.alpha == 0) {
            throw std::invalid_argument("cooling without energy penalties (alpha = 0) is ill-posed");
        }
        if (!(cfg_.reservoir->temperature > 0)) {
            throw std::invalid_argument("reservoir temperature must be positive");
        }
    }
    if (!cfg_.eps_bar.times.empty()) {
        const auto &e = cfg_.eps_bar;
        if (e.times.size() != e.values.size()) {
            throw std::invalid_argument("mean-energy table needs equal time and value lists");
        }
        for (size_t i = 1; i < e.times.size(); i++) {
            if (!(e.times[i] > e.times[i - 1])) {
                throw std::invalid_argument("mean-energy times must be strictly increasing");
            }
        }
    }
    if (cfg_.mode == RateMode::TimeDependent) {
        auto ld = cfg_.bath.lorentz_drude();
        if (!ld) {
            throw std::invalid_argument("time-dependent rates need a Lorentz-Drude bath");
        }
        check_nonresonant(ld->cutoff, cfg_.temperature);
        if (cfg_.reservoir) {
            auto rd = cfg_.reservoir->density.lorentz_drude();
            if (!rd) {
                throw std::invalid_argument("time-dependent rates need a Lorentz-Drude reservoir");
            }
            check_nonresonant(rd->cutoff, cfg_.reservoir->temperature);
        }
    }
    const auto &g = *cfg_.graph;
    local_.assign(g.nodes.size(), npos);
    for (const auto &n : g.nodes) {
        if (cfg_.conservation_mode || n.correctable) {
            local_[n.syndrome] = nodes_.size();
            nodes_.push_back(n.syndrome);
        }
    }
    if (cfg_.conservation_mode) {
        for (size_t i = 0; i < nodes_.size(); i++) {
            for (size_t j = 0; j < g.num_errors; j++) {
                uint64_t a = g.error_syndromes[j];
                edges_.push_back({i, local_[nodes_[i] ^ a], j, varpi(a, nodes_[i]), false});
            }
        }
    } else {
        for (const auto &e : g.edges) {
            bool bad = e.cls == TransitionClass::Uncorrectable;
            size_t to = bad ? npos : local_[e.target];
            if (!bad && to == npos) {
                throw std::invalid_argument("graph has a correctable edge into an uncorrectable node");
            }
            edges_.push_back({local_[e.source], to, e.error, e.varpi, bad});
        }
    }
}

bool RateMatrix::constant() const {
    return cfg_.mode == RateMode::SecondMarkov && cfg_.eps_bar.is_constant();
}

size_t RateMatrix::index_of(uint64_t s) const {
    if (s >= local_.size() || local_[s] == npos) {
        throw std::out_of_range("syndrome " + std::to_string(s) + " is not tracked");
    }
    return local_[s];
}

std::pair<double, double> RateMatrix::edge_frequencies(const RateEdge &e, double t) const {
    double base = 2 * cfg_.alpha * double(e.varpi);
    if (!e.uncorrectable) {
        return {base, base};
    }
    double eps = cfg_.eps_bar.at(t);
    return {base - eps, base + eps};
}

double RateMatrix::edge_rate(const RateEdge &e, double t) const {
    auto [wb, wr] = edge_frequencies(e, t);
    if (cfg_.mode == RateMode::SecondMarkov) {
        double r = markov_rate(cfg_.bath, cfg_.temperature, -wb);
        if (cfg_.reservoir) {
            r += markov_rate(cfg_.reservoir->density, cfg_.reservoir->temperature, -wr);
        }
        return r;
    }
    auto ld = cfg_.bath.lorentz_drude();
    double r = ohmic_frequency_rate(ld->reorganization_energy, ld->cutoff, cfg_.temperature, -wb, t, cfg_.matsubara);
    if (cfg_.reservoir) {
        auto rd = cfg_.reservoir->density.lorentz_drude();
        r += ohmic_frequency_rate(rd->reorganization_energy, rd->cutoff, cfg_.reservoir->temperature, -wr, t,
                                  cfg_.matsubara);
    }
    return r;
}

namespace {

bool any_negative(const std::vector<double> &r) {
    return std::any_of(r.begin(), r.end(), [](double v) { return v < 0; });
}

}  // namespace

std::vector<double> RateMatrix::rates(double t) const {
    // Rates depend on the edge only through its two frequencies.
    std::map<std::pair<double, double>, double> cache;
    std::vector<double> out;
    out.reserve(edges_.size());
    for (const auto &e : edges_) {
        auto key = edge_frequencies(e, t);
        auto it = cache.find(key);
        if (it == cache.end()) {
            double r = edge_rate(e, t);
            if (!std::isfinite(r)) {
                throw NumericalError("non-finite transition rate at t=" + num_str(t));
            }
            it = cache.emplace(key, r).first;
        }
        out.push_back(it->second);
    }
    return out;
}

Eigen::SparseMatrix<double> RateMatrix::generator(double t, bool clamp_negative) const {
    auto r = rates(t);
    if (clamp_negative) {
        for (auto &v : r) {
            v = std::max(v, 0.0);
        }
    }
    return generator_from_rates(r);
}

Eigen::SparseMatrix<double> RateMatrix::generator_from_rates(const std::vector<double> &rates) const {
    if (rates.size() != edges_.size()) {
        throw std::invalid_argument("rate vector does not match the edge list");
    }
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(2 * edges_.size());
    for (size_t i = 0; i < edges_.size(); i++) {
        const auto &e = edges_[i];
        trip.emplace_back(int(e.from), int(e.from), -rates[i]);
        if (e.to != npos) {
            trip.emplace_back(int(e.to), int(e.from), rates[i]);
        }
    }
    const int n = int(dim());
    Eigen::SparseMatrix<double> g(n, n);
    g.setFromTriplets(trip.begin(), trip.end());
    return g;
}

Eigen::MatrixXd RateMatrix::dense_generator(double t) const {
    return Eigen::MatrixXd(generator(t));
}

std::vector<double> RateMatrix::leakage(double t) const {
    auto r = rates(t);
    std::vector<double> out(dim(), 0.0);
    for (size_t i = 0; i < edges_.size(); i++) {
        if (edges_[i].to == npos) {
            out[edges_[i].from] += r[i];
        }
    }
    return out;
}

RateMatrix build_rate_matrix(const CorrectionConfig &config) {
    return RateMatrix(config);
}

double effective_occupation(double j, double k, double n, double m) {
    if (!(k > 0)) {
        throw std::invalid_argument("effective occupation needs a positive reservoir density");
    }
    return m + (j / k) * (n - m);
}

double combined_occupation(double j, double k, double n, double m) {
    if (!(j + k > 0)) {
        throw std::invalid_argument("combined occupation needs J + K > 0");
    }
    return (j * n + k * m) / (j + k);
}

double effective_temperature(double n_eff, double omega) {
    if (!(omega > 0)) {
        throw std::invalid_argument("effective temperature needs omega > 0");
    }
    if (n_eff <= 0) {
        return 0.0;
    }
    return omega / std::log1p(1 / n_eff);
}

std::vector<double> codespace_state(const RateMatrix &m) {
    std::vector<double> p(m.dim(), 0.0);
    p[m.index_of(0)] = 1.0;
    return p;
}

double correctable_population(const std::vector<double> &state) {
    double s = 0;
    for (double v : state) {
        s += v;
    }
    return s;
}

CorrectionTrajectory integrate(const RateMatrix &m, const std::vector<double> &initial, double horizon,
                               const IntegrateOptions &opts) {
    size_t d = m.dim();
    if (initial.size() != d) {
        throw std::invalid_argument("initial state has " + std::to_string(initial.size()) + " entries, expected " +
                                    std::to_string(d));
    }
    for (double v : initial) {
        if (!(v >= 0 && v <= 1)) {
            throw std::invalid_argument("initial populations must lie in [0,1]");
        }
    }
    if (correctable_population(initial) > 1 + 1e-12) {
        throw std::invalid_argument("initial populations sum above 1");
    }
    if (!(horizon > 0) || opts.samples < 2) {
        throw std::invalid_argument("integration needs horizon > 0 and at least two samples");
    }
    bool td = !m.constant();
    if (opts.method == IntegrationMethod::MatrixExponential && td) {
        throw std::invalid_argument("matrix-exponential stepping needs a constant generator");
    }

    CorrectionTrajectory tr;
    Eigen::SparseMatrix<double> g0 = m.generator(0);
    double gmax = 0;
    auto scan_max = [&](const Eigen::SparseMatrix<double> &g) {
        for (int k = 0; k < g.outerSize(); k++) {
            for (Eigen::SparseMatrix<double>::InnerIterator it(g, k); it; ++it) {
                gmax = std::max(gmax, std::abs(it.value()));
            }
        }
    };
    scan_max(g0);
    if (td) {
        for (int k = 1; k <= 8; k++) {
            scan_max(m.generator(horizon * k / 8));
        }
    }
    double dt = opts.dt > 0 ? opts.dt : std::min(gmax > 0 ? 0.01 / gmax : horizon, horizon / 1e4);

    double interval = horizon / double(opts.samples - 1);
    size_t sub = std::max<size_t>(1, size_t(std::ceil(interval / dt - 1e-9)));
    double h = interval / double(sub);
    tr.dt = opts.method == IntegrationMethod::MatrixExponential ? interval : h;

    Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(initial.data(), Eigen::Index(d));
    tr.min_population = p.size() ? p.minCoeff() : 0;
    auto record = [&](double t) {
        tr.t.push_back(t);
        tr.populations.emplace_back(p.data(), p.data() + p.size());
        tr.p_corr.push_back(p.sum());
    };
    auto check = [&](double t) {
        if (!p.allFinite()) {
            throw NumericalError("non-finite population at t=" + num_str(t));
        }
        double lo = p.minCoeff();
        tr.min_population = std::min(tr.min_population, lo);
        if (lo < -opts.bound_eps || p.maxCoeff() > 1 + opts.bound_eps) {
            if (tr.negative_rates_seen && !opts.clamp_negative_rates) {
                tr.bound_violation = true;
            } else {
                throw NumericalError("population left [0,1] at t=" + num_str(t) + "; reduce dt");
            }
        }
    };

    record(0);
    if (opts.method == IntegrationMethod::MatrixExponential) {
        Eigen::MatrixXd e = (Eigen::MatrixXd(g0) * interval).exp();
        for (size_t s = 1; s < opts.samples; s++) {
            p = e * p;
            check(interval * double(s));
            record(interval * double(s));
        }
        return tr;
    }

    auto gen_at = [&](double t) {
        if (!td) {
            return g0;
        }
        auto r = m.rates(t);
        if (any_negative(r)) {
            tr.negative_rates_seen = true;
            if (opts.clamp_negative_rates) {
                for (auto &v : r) {
                    v = std::max(v, 0.0);
                }
            }
        }
        return m.generator_from_rates(r);
    };
    Eigen::SparseMatrix<double> ga = td ? gen_at(0) : g0;
    for (size_t s = 1; s < opts.samples; s++) {
        for (size_t k = 0; k < sub; k++) {
            double t = interval * double(s - 1) + h * double(k);
            Eigen::SparseMatrix<double> gm = td ? gen_at(t + h / 2) : g0;
            Eigen::SparseMatrix<double> gb = td ? gen_at(t + h) : g0;
            Eigen::VectorXd k1 = ga * p;
            Eigen::VectorXd k2 = gm * (p + h / 2 * k1);
            Eigen::VectorXd k3 = gm * (p + h / 2 * k2);
            Eigen::VectorXd k4 = gb * (p + h * k3);
            p += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
            check(t + h);
            if (td) {
                ga = std::move(gb);
            }
        }
        record(interval * double(s));
    }
    return tr;
}

double fit_decay_rate(const std::vector<double> &t, const std::vector<double> &p, double from_fraction) {
    if (t.size() != p.size() || t.empty()) {
        throw std::invalid_argument("decay fit needs matching non-empty series");
    }
    double start = from_fraction * t.back();
    double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < t.size(); i++) {
        if (t[i] < start || !(p[i] > 0)) {
            continue;
        }
        double y = std::log(p[i]);
        n += 1;
        sx += t[i];
        sy += y;
        sxx += t[i] * t[i];
        sxy += t[i] * y;
    }
    double den = n * sxx - sx * sx;
    if (n < 2 || den <= 0) {
        throw std::invalid_argument("decay fit needs at least two positive samples in the window");
    }
    return -(n * sxy - sx * sy) / den;
}

double slowest_decay_rate(const RateMatrix &m, double t) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(m.dense_generator(t), false);
    return -es.eigenvalues().real().maxCoeff();
}

}  // namespace syndyn
