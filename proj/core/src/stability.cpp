#include "syndyn/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "syndyn/errors.hpp"
#include "syndyn/parallel.hpp"

namespace syndyn {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double lse(double a, double b) {
    if (a == kNegInf) {
        return b;
    }
    if (b == kNegInf) {
        return a;
    }
    double m = std::max(a, b);
    return m + std::log1p(std::exp(-std::abs(a - b)));
}

double lse(const std::vector<double> &v) {
    double m = kNegInf;
    for (double x : v) {
        m = std::max(m, x);
    }
    if (m == kNegInf) {
        return m;
    }
    double s = 0;
    for (double x : v) {
        s += std::exp(x - m);
    }
    return m + std::log(s);
}

// log C(N, w) for small w and possibly huge N.
double log_binomial(double n, size_t w) {
    double acc = -std::lgamma(double(w) + 1);
    for (size_t i = 0; i < w; i++) {
        acc += std::log(n - double(i));
    }
    return acc;
}

}  // namespace

LumpedChain LumpedChain::constant(size_t n_c, double num_errors, double barrier, double alpha, SpectralDensity bath,
                                  double temperature) {
    LumpedChain c;
    c.n_c = n_c;
    c.num_errors = num_errors;
    c.barriers.assign(n_c + 1, barrier);
    c.alpha = alpha;
    c.bath = std::move(bath);
    c.temperature = temperature;
    return c;
}

void LumpedChain::validate() const {
    if (n_c < 1) {
        throw std::invalid_argument("lumped chain needs n_c >= 1");
    }
    if (!(num_errors > double(n_c)) || !std::isfinite(num_errors)) {
        throw std::invalid_argument("lumped chain needs more elementary errors than correctable levels");
    }
    if (barriers.size() != n_c + 1) {
        throw std::invalid_argument("lumped chain needs n_c + 1 barrier steps, got " + std::to_string(barriers.size()));
    }
    for (double d : barriers) {
        if (!(d >= 0) || !std::isfinite(d)) {
            throw std::invalid_argument("barrier steps must be non-negative and finite");
        }
        if (rates == ChainRates::Boltzmann && d == 0) {
            throw std::invalid_argument("Boltzmann chain rates need positive barriers");
        }
    }
    if (!(alpha >= 0) || !(temperature > 0)) {
        throw std::invalid_argument("lumped chain needs alpha >= 0 and T > 0");
    }
    if (dt && !(*dt > 0)) {
        throw std::invalid_argument("step length must be positive");
    }
}

LogRates level_log_rates(const LumpedChain &c, size_t w) {
    if (w > c.n_c) {
        throw std::out_of_range("level " + std::to_string(w) + " outside 0.." + std::to_string(c.n_c));
    }
    double ne = c.num_errors;
    double lc = log_binomial(ne, w);
    double up_gap = c.alpha * c.barriers[w];
    double down_gap = w > 0 ? c.alpha * c.barriers[w - 1] : 0;
    double up, down = kNegInf;
    if (c.rates == ChainRates::Markov) {
        up = log_markov_rate(c.bath, c.temperature, -up_gap);
        if (w > 0) {
            down = log_markov_rate(c.bath, c.temperature, down_gap);
        }
    } else {
        up = std::log(2 * c.bath(up_gap)) - up_gap / c.temperature;
        if (w > 0) {
            down = std::log(2 * c.bath(down_gap));
        }
    }
    LogRates r;
    r.log_p = lc + std::log(ne - double(w)) + up;
    r.log_q = w > 0 ? lc + std::log(double(w)) + down : kNegInf;
    if (!std::isfinite(r.log_p)) {
        throw NumericalError("forward rate of level " + std::to_string(w) + " vanishes or is not finite");
    }
    return r;
}

double log_admissible_dt(const LumpedChain &c) {
    c.validate();
    double m = kNegInf;
    for (size_t w = 0; w <= c.n_c; w++) {
        auto r = level_log_rates(c, w);
        m = std::max(m, lse(r.log_p, r.log_q));
    }
    return -m;
}

double log_step(const LumpedChain &c) {
    double adm = log_admissible_dt(c);
    if (!c.dt) {
        return adm;
    }
    double l = std::log(*c.dt);
    if (l > adm + 1e-12) {
        throw std::domain_error("step length " + num_str(*c.dt) + " is not admissible (max " + num_str(std::exp(adm)) +
                                ")");
    }
    return l;
}

std::pair<double, double> transition_probs(const LumpedChain &c, size_t w) {
    double ls = log_step(c);
    auto r = level_log_rates(c, w);
    return {std::exp(ls + r.log_p), std::exp(ls + r.log_q)};
}

namespace {

std::vector<double> occupation(const LumpedChain &c) {
    double ls = log_step(c);
    size_t nc = c.n_c;
    std::vector<double> lp(nc), lq(nc);
    for (size_t w = 0; w < nc; w++) {
        auto r = level_log_rates(c, w);
        lp[w] = ls + r.log_p;
        lq[w] = ls + r.log_q;
    }
    std::vector<double> out(nc);
    for (size_t k = 1; k <= nc; k++) {
        std::vector<double> inner{0.0};
        double s = 0;
        for (size_t n = 1; n + k <= nc; n++) {
            s += lq[n + k - 1] - lp[n + k - 1];
            inner.push_back(s);
        }
        out[k - 1] = ls - lp[k - 1] + lse(inner);
    }
    return out;
}

}  // namespace

std::vector<double> log_level_occupation(const LumpedChain &c) {
    return occupation(c);
}

double log_hitting_time(const LumpedChain &c) {
    return lse(occupation(c));
}

double hitting_time(const LumpedChain &c) {
    return std::exp(log_hitting_time(c));
}

double barrier_rate(const LumpedChain &c, double barrier) {
    return 2 * c.bath(c.alpha * barrier);
}

double log_hitting_time_constant(const LumpedChain &c, double barrier) {
    double lambda = c.alpha * barrier / c.temperature;
    if (lambda == 0 || c.rates != ChainRates::Markov) {
        LumpedChain flat = c;
        flat.barriers.assign(c.n_c + 1, barrier);
        return log_hitting_time(flat);
    }
    c.validate();
    double lj = std::log(barrier_rate(c, barrier));
    double log_pi = lj - lambda - std::log(-std::expm1(-lambda));
    std::vector<double> terms;
    size_t nc = c.n_c;
    for (size_t k = 1; k <= nc; k++) {
        for (size_t n = 0; n + k <= nc; n++) {
            terms.push_back(lambda * double(n) - log_binomial(c.num_errors, n + k) - std::log(double(n + k)));
        }
    }
    return lse(terms) - log_pi;
}

double log_hitting_bound(const LumpedChain &c, double barrier, BoundForm form) {
    c.validate();
    double nc = double(c.n_c);
    if (c.num_errors < 10 * nc) {
        throw std::domain_error("hitting-time bound needs N_e >= 10 n_c");
    }
    double lambda = c.alpha * barrier / c.temperature;
    if (!(lambda > 0)) {
        throw std::domain_error("hitting-time bound needs lambda > 0");
    }
    double a;
    if (form == BoundForm::Derived) {
        a = lambda * nc + std::log(-std::expm1(-lambda * nc)) - std::log(nc) - std::log(-std::expm1(-lambda));
    } else {
        double x = lambda * (nc + 1);
        a = x + std::log1p(std::exp(-x)) - std::log(nc) - std::log(-std::expm1(-lambda));
    }
    if (a <= 0) {
        return kNegInf;
    }
    return a + std::log(-std::expm1(-a)) - log_binomial(c.num_errors, c.n_c) - std::log(barrier_rate(c, barrier));
}

double log_bound_approx(const LumpedChain &c, double barrier) {
    double nc = double(c.n_c);
    double ne = c.num_errors;
    double lambda = c.alpha * barrier / c.temperature;
    double p = nc / ne;
    double entropy = ne * (-p * std::log(p) - (1 - p) * std::log1p(-p));
    return lambda * nc - entropy - std::log(barrier_rate(c, barrier)) - std::log(nc);
}

MonteCarloResult mc_hitting_oracle(const LumpedChain &c, size_t trials, uint64_t seed, size_t threads,
                                   uint64_t step_cap) {
    if (trials < 1000) {
        throw std::invalid_argument("Monte Carlo oracle needs at least 1000 trials");
    }
    double ls = log_step(c);
    size_t nc = c.n_c;
    std::vector<double> p(nc), q(nc);
    for (size_t w = 0; w < nc; w++) {
        auto r = level_log_rates(c, w);
        p[w] = std::exp(ls + r.log_p);
        q[w] = std::exp(ls + r.log_q);
        if (!(p[w] > 0)) {
            throw NumericalError("forward probability of level " + std::to_string(w) + " underflows");
        }
    }
    std::vector<uint64_t> steps(trials);
    std::vector<char> cut(trials, 0);
    size_t chunk = 256;
    size_t chunks = (trials + chunk - 1) / chunk;
    parallel_for(chunks, threads, [&](size_t ci) {
        for (size_t i = ci * chunk; i < std::min(trials, (ci + 1) * chunk); i++) {
            std::seed_seq ss{uint32_t(seed), uint32_t(seed >> 32), uint32_t(i), uint32_t(uint64_t(i) >> 32)};
            std::mt19937_64 rng(ss);
            std::uniform_real_distribution<double> u(0.0, 1.0);
            uint64_t n = 0;
            size_t w = 0;
            while (w < nc) {
                double s = p[w] + q[w];
                std::geometric_distribution<uint64_t> hold(std::min(s, 1.0));
                n += hold(rng) + 1;
                if (n >= step_cap) {
                    n = step_cap;
                    cut[i] = 1;
                    break;
                }
                if (u(rng) * s < p[w]) {
                    w++;
                } else {
                    w--;
                }
            }
            steps[i] = n;
        }
    });
    MonteCarloResult res;
    res.trials = trials;
    double dt = std::exp(ls);
    double mean = 0;
    for (size_t i = 0; i < trials; i++) {
        mean += double(steps[i]);
        res.truncated += size_t(cut[i]);
    }
    mean /= double(trials);
    double var = 0;
    for (auto s : steps) {
        var += (double(s) - mean) * (double(s) - mean);
    }
    var /= double(trials - 1);
    res.mean = mean * dt;
    res.std_error = std::sqrt(var / double(trials)) * dt;
    return res;
}

double ConcatenatedCode::num_errors(double n_l) const {
    return double(errors_per_qubit) * std::pow(double(base_n), double(level)) * n_l;
}

size_t ConcatenatedCode::n_c() const {
    if (n_c_override) {
        return *n_c_override;
    }
    if (convention == NcConvention::PaperWorked) {
        if (base_n != 7 || base_d != 3 || level != 4) {
            throw std::invalid_argument("the worked n_c = 20 applies only to the level-4 concatenated [[7,1,3]] code; "
                                        "use the formula convention or an explicit n_c");
        }
        return 20;
    }
    double d = std::pow(double(base_d), double(level));
    return size_t(std::floor((d - 1) / 2));
}

BarrierScaling parse_scaling(const std::string &name) {
    if (name == "log") {
        return BarrierScaling::Log;
    }
    if (name == "sqrt") {
        return BarrierScaling::Sqrt;
    }
    if (name == "linear") {
        return BarrierScaling::Linear;
    }
    throw std::invalid_argument("unknown barrier scaling '" + name + "' (expected log, sqrt or linear)");
}

std::string scaling_name(BarrierScaling s) {
    switch (s) {
        case BarrierScaling::Log:
            return "log";
        case BarrierScaling::Sqrt:
            return "sqrt";
        default:
            return "linear";
    }
}

double barrier_value(BarrierScaling s, double n_l) {
    switch (s) {
        case BarrierScaling::Log:
            return std::log(n_l);
        case BarrierScaling::Sqrt:
            return std::sqrt(n_l);
        default:
            return n_l;
    }
}

std::vector<ScanRow> scan(const ScanRequest &req) {
    size_t nc = req.code.n_c();
    for (double n : req.n_l) {
        if (!(n >= 1)) {
            throw std::invalid_argument("n_l values must be >= 1");
        }
    }
    size_t na = req.alphas.size(), nl = req.n_l.size();
    std::vector<ScanRow> rows(req.temperatures.size() * na * nl);
    parallel_for(rows.size(), req.threads, [&](size_t i) {
        double T = req.temperatures[i / (na * nl)];
        double a = req.alphas[(i / nl) % na];
        double n = req.n_l[i % nl];
        double d = barrier_value(req.scaling, n);
        auto chain = LumpedChain::constant(nc, req.code.num_errors(n), d, a, req.bath, T);
        ScanRow r{n, a, T, d, chain.num_errors, nc, log_hitting_time(chain),
                  std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
        double lambda = a * d / T;
        if (lambda > 0) {
            r.log_approx = log_bound_approx(chain, d);
            if (chain.num_errors >= 10 * double(nc)) {
                r.log_bound = log_hitting_bound(chain, d);
            }
        }
        rows[i] = r;
    });
    return rows;
}

std::vector<double> window_slopes(const std::vector<double> &x, const std::vector<double> &y, BarrierScaling against) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("slope windows need at least two matching points");
    }
    std::vector<double> s;
    for (size_t i = 0; i + 1 < x.size(); i++) {
        s.push_back((y[i + 1] - y[i]) / (barrier_value(against, x[i + 1]) - barrier_value(against, x[i])));
    }
    return s;
}

ScalingFit classify_scaling(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() < 3) {
        throw std::invalid_argument("scaling classification needs at least three points");
    }
    ScalingFit fit{BarrierScaling::Log, {0, 0, 0}};
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 3; k++) {
        auto s = window_slopes(x, y, BarrierScaling(k));
        double r = s[s.size() - 1] / s[s.size() - 2];
        fit.ratio[k] = r;
        double dist = r > 0 ? std::abs(std::log(r)) : std::numeric_limits<double>::infinity();
        if (dist < best) {
            best = dist;
            fit.best = BarrierScaling(k);
        }
    }
    return fit;
}

}  // namespace syndyn
