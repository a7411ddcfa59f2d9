#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "syndyn/bath.hpp"
#include "syndyn/errors.hpp"
#include "syndyn/quadrature.hpp"

using namespace syndyn;

namespace {

double rel(double a, double b) {
    return std::abs(a - b) / std::abs(b);
}

const SpectralDensity kFig5 = SpectralDensity::lorentz_drude(0.1, 3);

}  // namespace

TEST(SpectralDensity, Examples) {
    EXPECT_EQ(kFig5(0), 0.0);
    EXPECT_DOUBLE_EQ(kFig5(3), 0.1);
    EXPECT_NEAR(kFig5(2), 1.2 / 13, 1e-15);
    EXPECT_DOUBLE_EQ(spectral_density(kFig5, 2), kFig5(2));
    EXPECT_THROW(SpectralDensity::lorentz_drude(0.1, 0), std::invalid_argument);
}

TEST(SpectralDensity, AntisymmetryExact) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0, 50);
    SpectralDensity tab(TabulatedDensity{{0, 1, 2, 5}, {0, 0.3, 0.2, 0.05}});
    for (int i = 0; i < 200; i++) {
        double w = u(rng);
        EXPECT_EQ(kFig5(w) + kFig5(-w), 0.0);
        EXPECT_EQ(tab(w) + tab(-w), 0.0);
    }
    EXPECT_DOUBLE_EQ(tab(1.5), 0.25);
    EXPECT_EQ(tab(7), 0.0);
    EXPECT_THROW(SpectralDensity(TabulatedDensity{{0, 1}, {0.1, 0.2}}), std::invalid_argument);
}

TEST(BoseEinstein, Examples) {
    EXPECT_NEAR(bose_einstein(1, 1), 1 / (std::exp(1.0) - 1), 1e-15);
    EXPECT_NEAR(bose_einstein(1, 1), 0.5820, 1e-4);
    EXPECT_LT(bose_einstein(800, 1), 1e-300);
    for (double w : {0.01, 0.3, 2.0, 40.0}) {
        EXPECT_NEAR(bose_einstein(-w, 1.3) + bose_einstein(w, 1.3) + 1, 0, 1e-12 * (1 + bose_einstein(w, 1.3)));
    }
    EXPECT_THROW(bose_einstein(0, 1), std::domain_error);
}

TEST(MarkovRate, DetailedBalance) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> lw(-3, 1.5), lt(-1, 1);
    for (int i = 0; i < 100; i++) {
        double T = std::pow(10, lt(rng));
        double w = std::pow(10, lw(rng)) * T;
        double ratio = markov_rate(kFig5, T, -w) / markov_rate(kFig5, T, w);
        EXPECT_LE(rel(ratio, std::exp(-w / T)), 1e-12) << w << " " << T;
    }
    for (double f : {0.5, 1.0, 5.0}) {
        double ratio = markov_rate(kFig5, 1.0, -f) / markov_rate(kFig5, 1.0, f);
        EXPECT_LE(rel(ratio, std::exp(-f)), 1e-12);
    }
}

TEST(MarkovRate, ZeroFrequencyContinuity) {
    double limit = 4 * 0.1 * 0.7 / 3;
    EXPECT_NEAR(markov_rate(kFig5, 0.7, 0), limit, 1e-15);
    for (double w : {1e-4, 1e-6, 1e-8}) {
        EXPECT_NEAR(markov_rate(kFig5, 0.7, w), limit, 2 * w * limit);
        EXPECT_NEAR(markov_rate(kFig5, 0.7, -w), limit, 2 * w * limit);
    }
}

TEST(MarkovRate, MatchesMultiprecisionOracle) {
    auto bath = SpectralDensity::lorentz_drude(0.1, 200);
    for (double T : {0.5, 1.0, 1.5}) {
        for (double w : {3 * std::log(4.0), -3 * std::log(4.0), 0.2, -7.5, 150.0, -150.0}) {
            double want = double(oracle::markov_rate(0.1, 200, T, w));
            EXPECT_LE(rel(markov_rate(bath, T, w), want), 1e-13) << T << " " << w;
            EXPECT_NEAR(log_markov_rate(bath, T, w), std::log(want), 1e-13 * std::abs(std::log(want)) + 1e-14);
        }
    }
}

TEST(MarkovRate, PositiveAndLogFinite) {
    auto bath = SpectralDensity::lorentz_drude(0.1, 200);
    for (double w : {-1e4, -800.0, -1.0, 0.0, 1.0, 1e4}) {
        EXPECT_TRUE(std::isfinite(log_markov_rate(bath, 0.5, w)));
        EXPECT_GE(markov_rate(bath, 0.5, w), 0.0);
    }
    EXPECT_GT(markov_rate(bath, 0.5, -100), 0.0);
    // Far uphill the rate underflows but its logarithm is exact.
    double lm = log_markov_rate(bath, 0.5, -1e4);
    EXPECT_NEAR(lm, std::log(2 * bath(1e4)) - 2e4, 1e-9 * 2e4);
}

TEST(Correlation, Classical) {
    EXPECT_DOUBLE_EQ(correlation_classical(2, 3, 0), 2);
    EXPECT_NEAR(correlation_classical(2, 3, 1.0 / 3), 2 / std::exp(1.0), 1e-15);
    double prev = 3;
    for (int i = 0; i < 50; i++) {
        double c = correlation_classical(2, 3, 0.1 * i);
        EXPECT_LT(c, prev);
        prev = c;
    }
}

TEST(Correlation, QuantumImaginaryPartIndependentOfCutoff) {
    for (double t : {0.0, 0.1, 1.0}) {
        MatsubaraOptions a, b;
        a.k_max = 10;
        b.k_max = 1000;
        EXPECT_EQ(correlation_quantum(0.1, 3, 1, t, a).imag(), correlation_quantum(0.1, 3, 1, t, b).imag());
    }
}

TEST(Correlation, QuantumDecays) {
    EXPECT_LT(std::abs(correlation_quantum(0.1, 3, 1, 20)), 1e-20);
    EXPECT_LT(std::abs(correlation_quantum(0.1, 3, 1, 5)), std::abs(correlation_quantum(0.1, 3, 1, 1)));
}

// The Matsubara sum behaves like sum 1/k at t = 0, so truncation is checked at
// small positive t instead: automatic, K and 2K cutoffs agree.
TEST(Correlation, QuantumTruncationSelfConsistent) {
    MatsubaraOptions k1, k2;
    k1.k_max = 2000;
    k2.k_max = 4000;
    for (double t : {0.01, 0.1, 1.0}) {
        auto a = correlation_quantum(0.1, 3, 1, t);
        auto b = correlation_quantum(0.1, 3, 1, t, k1);
        auto c = correlation_quantum(0.1, 3, 1, t, k2);
        EXPECT_LE(std::abs(b - c), 1e-8 * std::abs(c));
        EXPECT_LE(std::abs(a - c), 1e-8 * std::abs(c));
    }
    EXPECT_THROW(correlation_quantum(0.1, 3, 1, 0), std::domain_error);
    // With literal cutoffs the t = 0 value grows like the harmonic series.
    MatsubaraOptions s1, s2;
    s1.k_max = 100;
    s2.k_max = 200;
    double growth = correlation_quantum(0.1, 3, 1, 0, s2).real() - correlation_quantum(0.1, 3, 1, 0, s1).real();
    EXPECT_GT(growth, 4 * 0.1 * 3 / (2 * std::numbers::pi) * 0.69);
}

TEST(Correlation, Resonance) {
    EXPECT_THROW(check_nonresonant(2 * std::numbers::pi, 1.0), std::domain_error);
    EXPECT_NO_THROW(check_nonresonant(3, 1.0));
    EXPECT_THROW(correlation_quantum(0.1, 4 * std::numbers::pi, 1, 0.5), std::domain_error);
}

TEST(TimedepClassical, Examples) {
    double g = 3;
    for (double w : {0.0, 1.0, 5.0}) {
        EXPECT_NEAR(timedep_rate_classical(g, w, 200, RateSign::Plus), 2 * g / (w * w + g * g), 1e-15);
        EXPECT_EQ(timedep_rate_classical(g, w, 0.7, RateSign::Plus), timedep_rate_classical(g, w, 0.7, RateSign::Minus));
    }
    for (double t : {0.0, 0.1, 1.0, 4.0}) {
        EXPECT_NEAR(timedep_rate_classical(g, 0, t, RateSign::Plus), 2 * (1 - std::exp(-g * t)) / g, 1e-15);
        EXPECT_NEAR(timedep_rate_classical(g, 0, t, RateSign::Plus, 2.5), 2.5 * 2 * (1 - std::exp(-g * t)) / g,
                    1e-14);
    }
    double prev = 1e9;
    for (double w = 0; w < 20; w += 0.5) {
        double r = timedep_rate_classical(g, w, 100, RateSign::Plus);
        EXPECT_LT(r, prev);
        prev = r;
    }
}

// Long-time limit of the time-dependent rate is the full transform of the
// correlation, 2 J(W) (n(W) + 1), evaluated independently in multiprecision.
TEST(TimedepOhmic, LongTimeLimitIsMarkovRate) {
    for (double w : {0.5, 2.0, 4.0, 8.0}) {
        double plus = timedep_rate_ohmic(0.1, 3, 1, w, 60, RateSign::Plus);
        double minus = timedep_rate_ohmic(0.1, 3, 1, w, 60, RateSign::Minus);
        EXPECT_LE(rel(plus, double(oracle::markov_rate(0.1, 3, 1, w))), 1e-9);
        EXPECT_LE(rel(minus, double(oracle::markov_rate(0.1, 3, 1, -w))), 1e-9);
    }
}

// At T = 1 the onset sits slightly above the cutoff (about 3.45), so the grid
// avoids the band (3, 3.5).
TEST(TimedepOhmic, NegativeTransientOnlyAboveCutoff) {
    for (double w : {1.0, 2.0, 3.0, 4.0, 8.0}) {
        double lowest = 1;
        for (int i = 1; i <= 3000; i++) {
            lowest = std::min(lowest, timedep_rate_ohmic(0.1, 3, 1, w, 0.002 * i, RateSign::Minus));
        }
        EXPECT_EQ(lowest < 0, w > 3) << w;
    }
}

TEST(TimedepOhmic, ZeroAtZeroTime) {
    EXPECT_EQ(timedep_rate_ohmic(0.1, 3, 1, 2, 0, RateSign::Plus), 0.0);
    EXPECT_THROW(timedep_rate_ohmic(0.1, 3, 1, 2, -1, RateSign::Plus), std::invalid_argument);
}

// Quadrature of the truncated correlation against e^{i W tau} with the same cutoff.
TEST(TimedepOhmic, MatchesQuadrature) {
    MatsubaraOptions o;
    o.k_max = 256;
    for (double w : {0.5, 2.0, 4.0, 8.0}) {
        for (double t : {0.05, 0.3, 1.0, 3.0}) {
            for (auto sign : {RateSign::Plus, RateSign::Minus}) {
                double W = sign == RateSign::Plus ? w : -w;
                auto f = [&](double tau) {
                    auto c = correlation_quantum(0.1, 3, 1, tau, o);
                    return 2 * (c.real() * std::cos(W * tau) - c.imag() * std::sin(W * tau));
                };
                std::vector<double> cuts;
                for (double s = t / 2; s > 1e-7; s /= 4) {
                    cuts.push_back(s);
                }
                double q = integrate_panels(f, 0, t, cuts, 2 * std::numbers::pi / w).value;
                double r = timedep_rate_ohmic(0.1, 3, 1, w, t, sign, o);
                EXPECT_LE(std::abs(r - q), 1e-6 * std::max(std::abs(q), 1e-6)) << w << " " << t;
            }
        }
    }
}

TEST(TimedepOhmic, AutomaticTruncationConverges) {
    MatsubaraOptions big;
    big.k_max = 200000;
    for (double t : {0.05, 1.0}) {
        double a = timedep_rate_ohmic(0.1, 3, 1, 4, t, RateSign::Minus);
        double b = timedep_rate_ohmic(0.1, 3, 1, 4, t, RateSign::Minus, big);
        EXPECT_NEAR(a, b, 1e-6);
    }
}

TEST(Quadrature, ReportsNonConvergence) {
    QuadratureOptions o;
    o.max_depth = 1;
    EXPECT_THROW(integrate_panels([](double x) { return 1 / std::sqrt(x); }, 0, 1, {}, 0, o), NumericalError);
    auto r = integrate_panels([](double x) { return std::sin(x); }, 0, std::numbers::pi, {}, 0);
    EXPECT_NEAR(r.value, 2, 1e-13);
}
