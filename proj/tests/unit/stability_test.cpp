#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "syndyn/stability.hpp"

using namespace syndyn;

namespace {

const SpectralDensity kFig6 = SpectralDensity::lorentz_drude(0.1, 200);

LumpedChain random_chain(std::mt19937_64 &rng, size_t max_nc) {
    std::uniform_real_distribution<double> u(0, 1);
    LumpedChain c;
    c.n_c = 1 + size_t(u(rng) * double(max_nc));
    c.num_errors = double(c.n_c + 1 + size_t(u(rng) * 12));
    for (size_t w = 0; w <= c.n_c; w++) {
        c.barriers.push_back(2 * u(rng));
    }
    c.alpha = 0.2 + 2 * u(rng);
    c.temperature = 0.4 + 1.5 * u(rng);
    c.bath = SpectralDensity::lorentz_drude(0.05 + 0.2 * u(rng), 1 + 10 * u(rng));
    return c;
}

oracle::ChainSpec spec_of(const LumpedChain &c, double er, double g) {
    oracle::ChainSpec s{unsigned(c.n_c), c.num_errors, {}, c.alpha, er, g, c.temperature};
    for (double d : c.barriers) {
        s.barriers.push_back(d);
    }
    return s;
}

}  // namespace

TEST(LumpedChain, Validation) {
    auto c = LumpedChain::constant(3, 20, 1, 1, kFig6, 1);
    EXPECT_NO_THROW(c.validate());
    c.barriers.pop_back();
    EXPECT_THROW(c.validate(), std::invalid_argument);
    auto d = LumpedChain::constant(3, 3, 1, 1, kFig6, 1);
    EXPECT_THROW(d.validate(), std::invalid_argument);
    auto e = LumpedChain::constant(3, 20, 1, 1, kFig6, 0);
    EXPECT_THROW(e.validate(), std::invalid_argument);
    EXPECT_THROW(level_log_rates(LumpedChain::constant(3, 20, 1, 1, kFig6, 1), 4), std::out_of_range);
}

TEST(TransitionProbs, BinomialCancellation) {
    std::mt19937_64 rng(41);
    for (int k = 0; k < 30; k++) {
        auto c = random_chain(rng, 8);
        auto s = spec_of(c, c.bath.lorentz_drude()->reorganization_energy, c.bath.lorentz_drude()->cutoff);
        for (size_t w = 1; w <= c.n_c; w++) {
            double lhs = level_log_rates(c, w).log_q - level_log_rates(c, w - 1).log_p;
            double want = c.alpha * c.barriers[w - 1] / c.temperature;
            EXPECT_NEAR(lhs, want, 1e-12 * std::max(1.0, want));
            // Exact in 50-digit arithmetic.
            auto ratio = oracle::chain_rates(s, unsigned(w)).second / oracle::chain_rates(s, unsigned(w - 1)).first;
            oracle::mp exact = exp(oracle::mp(c.alpha) * oracle::mp(c.barriers[w - 1]) / oracle::mp(c.temperature));
            EXPECT_LT(double(abs(ratio / exact - 1)), 1e-40);
        }
    }
}

TEST(TransitionProbs, Fig6LevelOne) {
    auto c = LumpedChain::constant(20, 4802, std::log(1.0 * 2), 3, kFig6, 0.5);
    auto s = spec_of(c, 0.1, 200);
    auto [p0, q0] = transition_probs(c, 0);
    EXPECT_EQ(q0, 0.0);
    oracle::mp dt = 1;
    {
        oracle::mp worst = 0;
        for (unsigned w = 0; w <= 20; w++) {
            auto r = oracle::chain_rates(s, w);
            worst = std::max(worst, oracle::mp(r.first + r.second));
        }
        dt = 1 / worst;
    }
    auto [p1, q1] = transition_probs(c, 1);
    auto want = oracle::chain_rates(s, 1);
    EXPECT_NEAR(p1 / double(dt * want.first), 1, 1e-12);
    EXPECT_NEAR(q1 / double(dt * want.second), 1, 1e-12);
    for (size_t w = 0; w <= 20; w++) {
        auto [p, q] = transition_probs(c, w);
        EXPECT_GE(p, 0);
        EXPECT_GE(q, 0);
        EXPECT_LE(p + q, 1 + 1e-12);
    }
    c.dt = 10 * double(dt);
    EXPECT_THROW(transition_probs(c, 0), std::domain_error);
}

TEST(HittingTime, SingleStep) {
    auto c = LumpedChain::constant(1, 50, 1.3, 2, kFig6, 0.7);
    double up = markov_rate(kFig6, 0.7, -2 * 1.3);
    EXPECT_NEAR(hitting_time(c) * 50 * up, 1, 1e-13);
}

TEST(HittingTime, StepInvariance) {
    std::mt19937_64 rng(43);
    for (int k = 0; k < 20; k++) {
        auto c = random_chain(rng, 10);
        double adm = std::exp(log_admissible_dt(c));
        c.dt = adm / 2;
        double a = log_hitting_time(c);
        c.dt = adm / 4;
        double b = log_hitting_time(c);
        EXPECT_NEAR(std::exp(a - b), 1, 1e-12);
    }
}

TEST(HittingTime, MatchesMultiprecisionOracle) {
    std::mt19937_64 rng(47);
    for (int k = 0; k < 20; k++) {
        auto c = random_chain(rng, 12);
        auto ld = c.bath.lorentz_drude();
        auto s = spec_of(c, ld->reorganization_energy, ld->cutoff);
        double want = double(oracle::hitting_time(s, oracle::mp(std::exp(log_step(c)))));
        EXPECT_NEAR(hitting_time(c) / want, 1, 1e-11);
    }
    auto fig6 = LumpedChain::constant(20, 4802 * 30, std::log(30.0), 3, kFig6, 1);
    auto s = spec_of(fig6, 0.1, 200);
    auto want = oracle::hitting_time(s, oracle::mp(1e-3));
    EXPECT_NEAR(log_hitting_time(fig6) - double(log(want)), 0, 1e-11 * std::abs(double(log(want))));
}

TEST(HittingTime, LevelOccupationSumsToTotal) {
    std::mt19937_64 rng(53);
    auto c = random_chain(rng, 6);
    auto occ = log_level_occupation(c);
    ASSERT_EQ(occ.size(), c.n_c);
    double total = 0;
    for (double v : occ) {
        total += std::exp(v);
    }
    EXPECT_NEAR(total / hitting_time(c), 1, 1e-12);
}

TEST(HittingTime, ConstantFormMatchesGeneral) {
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> u(0, 1);
    for (int k = 0; k < 50; k++) {
        size_t nc = 1 + size_t(25 * u(rng));
        double barrier = 3 * u(rng);
        auto c = LumpedChain::constant(nc, double(nc) * (2 + 500 * u(rng)), barrier, 0.1 + 3 * u(rng), kFig6,
                                       0.3 + 1.5 * u(rng));
        EXPECT_NEAR(std::exp(log_hitting_time_constant(c, barrier) - log_hitting_time(c)), 1, 1e-10);
    }
    auto flat = LumpedChain::constant(4, 40, 0, 1, kFig6, 1);
    EXPECT_NEAR(log_hitting_time_constant(flat, 0), log_hitting_time(flat), 1e-12);
}

TEST(HittingTime, MonotoneInLambdaAlphaAndTemperature) {
    auto base = LumpedChain::constant(6, 300, 1.5, 1, kFig6, 1);
    double prev = -1e300;
    for (double alpha : {0.2, 0.5, 1.0, 2.0, 4.0}) {
        auto c = base;
        c.alpha = alpha;
        double v = log_hitting_time(c);
        EXPECT_GT(v, prev);
        prev = v;
    }
    prev = 1e300;
    for (double T : {0.3, 0.6, 1.0, 1.5, 3.0}) {
        auto c = base;
        c.temperature = T;
        double v = log_hitting_time(c);
        EXPECT_LT(v, prev);
        prev = v;
    }
    prev = -1e300;
    for (double barrier : {0.5, 1.0, 2.0, 3.0}) {
        double v = log_hitting_time_constant(base, barrier);
        EXPECT_GT(v, prev);
        prev = v;
    }
}

TEST(HittingTime, NoOverflowAtExtremeCorner) {
    // Linear barrier at n_l = 1000, alpha = 3, T = 0.5: lambda n_c = 1.2e5.
    auto c = LumpedChain::constant(20, 4802.0 * 1000, 1000, 3, kFig6, 0.5);
    double v = log_hitting_time(c);
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_GT(v, 1e4);
    EXPECT_TRUE(std::isfinite(log_hitting_time_constant(c, 1000)));
    EXPECT_TRUE(std::isfinite(log_hitting_bound(c, 1000)));
}

TEST(HittingBound, OrderingAndPreconditions) {
    for (double T : {0.5, 1.0, 1.5}) {
        for (double n_l : {2.0, 10.0, 100.0, 1000.0}) {
            for (double barrier : {std::log(n_l), std::sqrt(n_l), n_l}) {
                auto c = LumpedChain::constant(20, 4802 * n_l, barrier, 3, kFig6, T);
                double bound = log_hitting_bound(c, barrier);
                EXPECT_GE(log_hitting_time(c), bound - 1e-13 * std::abs(bound));
            }
        }
    }
    auto small = LumpedChain::constant(5, 30, 1, 1, kFig6, 1);
    EXPECT_THROW(log_hitting_bound(small, 1), std::domain_error);
    auto flat = LumpedChain::constant(5, 500, 0, 1, kFig6, 1);
    EXPECT_THROW(log_hitting_bound(flat, 0), std::domain_error);
}

TEST(HittingBound, LiteralSingleLevel) {
    auto c = LumpedChain::constant(1, 40, 2, 1.5, kFig6, 0.8);
    double lambda = 1.5 * 2 / 0.8;
    double j = 2 * kFig6(1.5 * 2);
    double want = ((std::exp(2 * lambda) + 1) / (1 - std::exp(-lambda)) - 1) / (40 * j);
    EXPECT_NEAR(log_hitting_bound(c, 2, BoundForm::Literal), std::log(want), 1e-12);
    EXPECT_NEAR(barrier_rate(c, 2), j, 1e-15);
}

TEST(HittingBound, ApproximationTracksBoundForLargeLambda) {
    // Both share lambda n_c - log j - log n_c; they differ by the Stirling
    // correction to log C(N_e, n_c), which stays bounded.
    for (double n_l : {10.0, 100.0, 1000.0}) {
        auto c = LumpedChain::constant(20, 4802 * n_l, n_l, 3, kFig6, 0.5);
        double diff = log_hitting_bound(c, n_l) - log_bound_approx(c, n_l);
        EXPECT_GT(diff, 0);
        EXPECT_LT(diff, 3);
    }
}

TEST(MonteCarlo, AgreesWithClosedForm) {
    std::mt19937_64 rng(61);
    int good = 0;
    for (int k = 0; k < 10; k++) {
        auto c = random_chain(rng, 3);
        auto mc = mc_hitting_oracle(c, 10000, 1000 + uint64_t(k));
        EXPECT_FALSE(mc.partial());
        good += std::abs(mc.mean - hitting_time(c)) <= 3 * mc.std_error;
    }
    EXPECT_GE(good, 9);
}

TEST(MonteCarlo, ReproducibleAcrossThreads) {
    auto c = LumpedChain::constant(3, 12, 0.8, 1, SpectralDensity::lorentz_drude(0.1, 3), 1);
    auto a = mc_hitting_oracle(c, 5000, 9, 1);
    auto b = mc_hitting_oracle(c, 5000, 9, 4);
    auto d = mc_hitting_oracle(c, 5000, 10, 1);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.std_error, b.std_error);
    EXPECT_NE(a.mean, d.mean);
    EXPECT_THROW(mc_hitting_oracle(c, 10, 1), std::invalid_argument);
}

TEST(MonteCarlo, StepCapFlagsPartialResult) {
    auto c = LumpedChain::constant(4, 10, 3, 3, SpectralDensity::lorentz_drude(0.1, 3), 0.3);
    auto r = mc_hitting_oracle(c, 1000, 3, 1, 50);
    EXPECT_TRUE(r.partial());
    EXPECT_LE(r.mean, 50 * std::exp(log_step(c)) * (1 + 1e-12));
}

TEST(ConcatenatedCode, Conventions) {
    ConcatenatedCode code;
    EXPECT_EQ(code.num_errors(1), 4802.0);
    EXPECT_EQ(code.num_errors(7), 4802.0 * 7);
    EXPECT_EQ(code.n_c(), 20u);
    code.convention = NcConvention::Formula;
    EXPECT_EQ(code.n_c(), 40u);
    code.n_c_override = 13;
    EXPECT_EQ(code.n_c(), 13u);
    ConcatenatedCode other{5, 3, 2, 2, NcConvention::PaperWorked, {}};
    EXPECT_THROW(other.n_c(), std::invalid_argument);
    other.convention = NcConvention::Formula;
    EXPECT_EQ(other.n_c(), 4u);
    ConcatenatedCode even{7, 4, 2, 2, NcConvention::Formula, {}};
    EXPECT_EQ(even.n_c(), 7u);
}

TEST(Scan, RowsAndOrdering) {
    ScanRequest r;
    r.alphas = {1, 3};
    r.temperatures = {0.5, 1.5};
    r.n_l = {1, 10, 100};
    auto rows = scan(r);
    ASSERT_EQ(rows.size(), 12u);
    EXPECT_EQ(rows[0].temperature, 0.5);
    EXPECT_EQ(rows[3].alpha, 3);
    EXPECT_EQ(rows[5].n_l, 100);
    EXPECT_EQ(rows[6].temperature, 1.5);
    for (const auto &row : rows) {
        EXPECT_EQ(row.n_c, 20u);
        EXPECT_EQ(row.num_errors, 4802 * row.n_l);
        EXPECT_TRUE(std::isfinite(row.log_eta));
        if (row.n_l == 1) {
            EXPECT_TRUE(std::isnan(row.log_bound));
        } else {
            EXPECT_GE(row.log_eta, row.log_bound);
        }
    }
    r.threads = 3;
    auto again = scan(r);
    for (size_t i = 0; i < rows.size(); i++) {
        EXPECT_EQ(rows[i].log_eta, again[i].log_eta);
    }
    r.n_l = {0.5};
    EXPECT_THROW(scan(r), std::invalid_argument);
}

TEST(Scan, LinearBarrierSlopeOverSmallWindow) {
    ScanRequest r;
    r.scaling = BarrierScaling::Linear;
    r.alphas = {3};
    r.temperatures = {0.5, 1.0, 1.5};
    r.n_l = {10, std::sqrt(1000.0), 100};
    auto rows = scan(r);
    for (size_t t = 0; t < 3; t++) {
        std::vector<double> x, y;
        for (size_t i = 0; i < 3; i++) {
            x.push_back(rows[3 * t + i].n_l);
            y.push_back(rows[3 * t + i].log_eta);
        }
        auto fit = classify_scaling(x, y);
        EXPECT_EQ(fit.best, BarrierScaling::Linear);
        EXPECT_NEAR(fit.ratio[int(BarrierScaling::Linear)], 1, 0.1);
    }
}

TEST(Scan, ScalingNames) {
    for (auto s : {BarrierScaling::Log, BarrierScaling::Sqrt, BarrierScaling::Linear}) {
        EXPECT_EQ(parse_scaling(scaling_name(s)), s);
    }
    EXPECT_THROW(parse_scaling("cubic"), std::invalid_argument);
    EXPECT_NEAR(barrier_value(BarrierScaling::Sqrt, 16), 4, 0);
    auto s = window_slopes({1, 2, 4}, {0, 1, 3}, BarrierScaling::Linear);
    EXPECT_EQ(s, (std::vector<double>{1, 1}));
    EXPECT_THROW(classify_scaling({1, 2}, {1, 2}), std::invalid_argument);
}
