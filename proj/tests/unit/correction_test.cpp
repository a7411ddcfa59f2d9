#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "syndyn/correction.hpp"
#include "syndyn/errors.hpp"

using namespace syndyn;

namespace {

struct Fixture {
    StabilizerCode code;
    ErrorModel model;
    CorrectabilityTable table;
    SyndromeGraph graph;
    Fixture(const StabilizerCode &c, const std::string &types, size_t w = 2)
        : code(c), model(ErrorModel::from_types(c.n(), types)), table(classify(code, model, w)),
          graph(build_graph(code, model, table)) {}
};

CorrectionConfig fig3_config(const SyndromeGraph &g, double alpha) {
    CorrectionConfig c;
    c.graph = &g;
    c.alpha = alpha;
    c.eps_bar.constant = 0.05;
    c.bath = SpectralDensity::lorentz_drude(0.1, 3);
    c.temperature = 1;
    return c;
}

std::vector<double> column_sums(const Eigen::MatrixXd &g) {
    std::vector<double> s(size_t(g.cols()));
    for (Eigen::Index j = 0; j < g.cols(); j++) {
        s[size_t(j)] = g.col(j).sum();
    }
    return s;
}

}  // namespace

TEST(RateMatrix, Validation) {
    Fixture s(builtin_code("bit-flip"), "x");
    CorrectionConfig c = fig3_config(s.graph, -1);
    EXPECT_THROW(RateMatrix{c}, std::invalid_argument);
    c.alpha = 0;
    c.reservoir = Reservoir{SpectralDensity::lorentz_drude(1, 3), 0.1};
    EXPECT_THROW(RateMatrix{c}, std::invalid_argument);
    CorrectionConfig none;
    EXPECT_THROW(RateMatrix{none}, std::invalid_argument);
    CorrectionConfig td = fig3_config(s.graph, 1);
    td.mode = RateMode::TimeDependent;
    td.temperature = 3 / (2 * std::numbers::pi);
    EXPECT_THROW(RateMatrix{td}, std::domain_error);
}

TEST(RateMatrix, FrequencyAssignment) {
    Fixture s(builtin_code("steane"), "xz");
    RateMatrix m(fig3_config(s.graph, 1.5));
    for (const auto &e : m.edges()) {
        auto [wb, wr] = m.edge_frequencies(e, 0);
        double base = 2 * 1.5 * e.varpi;
        EXPECT_EQ(wb, e.uncorrectable ? base - 0.05 : base);
        EXPECT_EQ(wr, e.uncorrectable ? base + 0.05 : base);
    }
}

TEST(RateMatrix, SteaneFig3Structure) {
    Fixture s(builtin_code("steane"), "xz");
    RateMatrix m(fig3_config(s.graph, 1));
    EXPECT_EQ(m.dim(), 64u);
    auto g = m.dense_generator();
    auto sums = column_sums(g);
    auto leak = m.leakage();
    size_t leaky = 0;
    for (size_t j = 0; j < m.dim(); j++) {
        bool has_red = false;
        for (const auto &e : m.edges()) {
            has_red |= e.from == j && e.uncorrectable;
        }
        EXPECT_NEAR(sums[j], -leak[j], 1e-14);
        if (has_red) {
            EXPECT_LT(sums[j], 0);
            leaky++;
        } else {
            EXPECT_NEAR(sums[j], 0.0, 1e-14);
        }
    }
    EXPECT_GT(leaky, 0u);
}

TEST(RateMatrix, GeneratorValidity) {
    for (const auto &name : {"bit-flip", "five-qubit", "steane"}) {
        Fixture s(builtin_code(name), std::string(name) == "bit-flip" ? "x" : "xz");
        for (double alpha : {0.0, 0.5, 3.0}) {
            auto c = fig3_config(s.graph, alpha);
            if (alpha > 0) {
                c.reservoir = Reservoir{SpectralDensity::lorentz_drude(1, 3), 0.05};
            }
            auto g = RateMatrix(c).dense_generator();
            for (Eigen::Index i = 0; i < g.rows(); i++) {
                for (Eigen::Index j = 0; j < g.cols(); j++) {
                    if (i != j) {
                        EXPECT_GE(g(i, j), 0);
                    }
                }
            }
            for (double v : column_sums(g)) {
                EXPECT_LE(v, 1e-15);
            }
        }
    }
}

// Rate ratio of every correctable edge pair is the Boltzmann factor at the
// temperature of the combined bath and reservoir.
TEST(RateMatrix, DetailedBalanceOnEdges) {
    Fixture s(builtin_code("steane"), "xz");
    for (bool cooled : {false, true}) {
        auto c = fig3_config(s.graph, 1.3);
        auto bath = c.bath;
        auto res = SpectralDensity::lorentz_drude(0.7, 5);
        if (cooled) {
            c.reservoir = Reservoir{res, 0.2};
        }
        RateMatrix m(c);
        auto r = m.rates(0);
        std::map<std::tuple<size_t, size_t, size_t>, double> rate;
        for (size_t i = 0; i < m.edges().size(); i++) {
            const auto &e = m.edges()[i];
            if (!e.uncorrectable) {
                rate[{e.from, e.to, e.error}] = r[i];
            }
        }
        for (const auto &e : m.edges()) {
            if (e.uncorrectable || e.varpi == 0) {
                continue;
            }
            double w = 2 * 1.3 * e.varpi;
            double ratio = rate[{e.from, e.to, e.error}] / rate[{e.to, e.from, e.error}];
            double T_eff = 1.0;
            if (cooled) {
                double aw = std::abs(w);
                double n = bose_einstein(aw, 1), mo = bose_einstein(aw, 0.2);
                T_eff = effective_temperature(combined_occupation(bath(aw), res(aw), n, mo), aw);
            }
            EXPECT_NEAR(ratio / std::exp(-w / T_eff), 1, 1e-12);
        }
    }
}

TEST(RateMatrix, TwoNodeSteadyState) {
    Fixture s(StabilizerCode::from_strings("one", {"Z"}), "x", 1);
    for (double alpha : {0.3, 1.0, 2.0}) {
        RateMatrix m(fig3_config(s.graph, alpha));
        ASSERT_EQ(m.dim(), 2u);
        for (const auto &e : m.edges()) {
            EXPECT_FALSE(e.uncorrectable);
        }
        auto tr = integrate(m, codespace_state(m), 400);
        double ratio = tr.populations.back()[1] / tr.populations.back()[0];
        EXPECT_NEAR(ratio, std::exp(-2 * alpha / 1.0), 1e-9);
    }
}

TEST(RateMatrix, ReservoirFavoursDownhill) {
    Fixture s(builtin_code("steane"), "xz");
    double alpha = 1;
    auto c = fig3_config(s.graph, alpha);
    c.reservoir = Reservoir{SpectralDensity::lorentz_drude(2, 3), 0.05};
    RateMatrix m(c);
    auto r = m.rates(0);
    size_t checked = 0;
    for (size_t i = 0; i < m.edges().size(); i++) {
        const auto &e = m.edges()[i];
        if (e.from != m.index_of(0) || e.uncorrectable) {
            continue;
        }
        double back = 0;
        for (size_t k = 0; k < m.edges().size(); k++) {
            const auto &f = m.edges()[k];
            if (f.from == e.to && f.to == e.from && f.error == e.error) {
                back = r[k];
            }
        }
        // Colder than the bath alone.
        EXPECT_GT(back / r[i], 10 * std::exp(2 * alpha * e.varpi / c.temperature));
        checked++;
    }
    EXPECT_EQ(checked, 14u);
}

TEST(Occupation, Examples) {
    EXPECT_DOUBLE_EQ(effective_occupation(0, 2, 0.7, 0.1), 0.1);
    EXPECT_DOUBLE_EQ(effective_occupation(2, 2, 0.7, 0.1), 0.7);
    EXPECT_DOUBLE_EQ(effective_occupation(0.1, 1, 1, 0), 0.1);
    EXPECT_THROW(effective_occupation(1, 0, 1, 0), std::invalid_argument);
    for (double w : {0.3, 1.0, 4.0}) {
        EXPECT_NEAR(effective_temperature(bose_einstein(w, 0.8), w), 0.8, 1e-13);
    }
    EXPECT_NEAR(effective_temperature(1e6, 2.0) / 2.0, 1e6, 1.0);
    EXPECT_LT(effective_temperature(1e-12, 1.0), 0.05);
    EXPECT_EQ(effective_temperature(0, 1), 0.0);
    EXPECT_THROW(effective_temperature(1, 0), std::invalid_argument);
}

TEST(Integrate, ZeroGeneratorConstant) {
    Fixture s(builtin_code("bit-flip"), "x");
    auto c = fig3_config(s.graph, 1);
    c.bath = SpectralDensity::lorentz_drude(0, 3);
    RateMatrix m(c);
    auto tr = integrate(m, codespace_state(m), 10);
    for (double p : tr.p_corr) {
        EXPECT_EQ(p, 1.0);
    }
}

TEST(Integrate, BitFlipMatchesMatrixExponential) {
    Fixture s(builtin_code("bit-flip"), "x");
    for (double alpha : {0.2, 1.0, 2.5}) {
        RateMatrix m(fig3_config(s.graph, alpha));
        ASSERT_LE(m.dim(), 4u);
        Eigen::MatrixXd g = m.dense_generator();
        Eigen::VectorXd p0 = Eigen::VectorXd::Zero(Eigen::Index(m.dim()));
        p0[0] = 1;
        for (auto method : {IntegrationMethod::RK4, IntegrationMethod::MatrixExponential}) {
            IntegrateOptions o;
            o.method = method;
            auto tr = integrate(m, codespace_state(m), 30, o);
            double worst = 0;
            for (size_t i = 0; i < tr.t.size(); i++) {
                auto want = oracle::expm_apply(g, p0, tr.t[i]);
                for (size_t k = 0; k < m.dim(); k++) {
                    worst = std::max(worst, std::abs(tr.populations[i][k] - want[Eigen::Index(k)]));
                }
            }
            EXPECT_LE(worst, 1e-8);
        }
    }
}

TEST(Integrate, ConservationMode) {
    for (const auto &name : {"bit-flip", "steane"}) {
        Fixture s(builtin_code(name), std::string(name) == "bit-flip" ? "x" : "xz");
        auto c = fig3_config(s.graph, 0.8);
        c.conservation_mode = true;
        RateMatrix m(c);
        EXPECT_EQ(m.dim(), s.code.num_syndromes());
        for (double v : m.leakage()) {
            EXPECT_EQ(v, 0.0);
        }
        auto tr = integrate(m, codespace_state(m), 50);
        for (double p : tr.p_corr) {
            EXPECT_NEAR(p, 1, 1e-9);
        }
    }
}

TEST(Integrate, LeakageDrainsToZero) {
    Fixture s(builtin_code("bit-flip"), "x");
    RateMatrix m(fig3_config(s.graph, 0.5));
    IntegrateOptions o;
    o.method = IntegrationMethod::MatrixExponential;
    auto tr = integrate(m, codespace_state(m), 2000, o);
    EXPECT_LT(tr.p_corr.back(), 1e-12);
    EXPECT_EQ(correctable_population({0.25, 0.5}), 0.75);
}

TEST(Integrate, MonotoneCorrectablePopulation) {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> u(0, 1);
    Fixture bf(builtin_code("bit-flip"), "x");
    Fixture five(builtin_code("five-qubit"), "xyz", 1);
    Fixture steane(builtin_code("steane"), "xz");
    for (int draw = 0; draw < 1000; draw++) {
        const Fixture &s = draw % 10 == 0 ? steane : (draw % 2 ? bf : five);
        CorrectionConfig c;
        c.graph = &s.graph;
        c.alpha = 3 * u(rng);
        c.eps_bar.constant = 0.2 * u(rng);
        c.bath = SpectralDensity::lorentz_drude(0.2 * u(rng), 0.5 + 5 * u(rng));
        c.temperature = 0.2 + 2 * u(rng);
        if (c.alpha > 0.1 && u(rng) < 0.3) {
            c.reservoir = Reservoir{SpectralDensity::lorentz_drude(u(rng), 1 + 3 * u(rng)), 0.05 + 0.5 * u(rng)};
        }
        RateMatrix m(c);
        IntegrateOptions o;
        o.samples = 41;
        o.method = u(rng) < 0.5 ? IntegrationMethod::RK4 : IntegrationMethod::MatrixExponential;
        auto tr = integrate(m, codespace_state(m), 5 + 50 * u(rng), o);
        for (size_t i = 1; i < tr.p_corr.size(); i++) {
            ASSERT_LE(tr.p_corr[i], tr.p_corr[i - 1] + 1e-9) << "draw " << draw;
        }
    }
}

TEST(Integrate, Fig3DecayOrdering) {
    Fixture s(builtin_code("steane"), "xz");
    double prev = 1e9, first = 0, last = 0;
    for (double alpha : {0.5, 1.0, 2.0, 3.0}) {
        RateMatrix m(fig3_config(s.graph, alpha));
        auto tr = integrate(m, codespace_state(m), 100);
        double k = fit_decay_rate(tr.t, tr.p_corr);
        EXPECT_LT(k, prev);
        EXPECT_NEAR(k, slowest_decay_rate(m), 1e-3 * k);
        prev = k;
        (alpha == 0.5 ? first : last) = k;
    }
    EXPECT_GE(first / last, 10);
}

TEST(Integrate, CoolingIncreasesCorrectablePopulation) {
    Fixture s(builtin_code("steane"), "xz");
    for (double alpha : {0.5, 1.0, 2.0}) {
        auto plain = fig3_config(s.graph, alpha);
        auto cooled = plain;
        cooled.reservoir = Reservoir{SpectralDensity::lorentz_drude(1.0, 3), 0.05};
        RateMatrix a(plain), b(cooled);
        double pa = integrate(a, codespace_state(a), 100).p_corr.back();
        double pb = integrate(b, codespace_state(b), 100).p_corr.back();
        EXPECT_GT(pb, pa);
    }
}

TEST(Integrate, TimeDependentModeApproachesMarkovRates) {
    Fixture s(builtin_code("bit-flip"), "x");
    auto c = fig3_config(s.graph, 1);
    RateMatrix markov(c);
    c.mode = RateMode::TimeDependent;
    RateMatrix td(c);
    auto a = markov.rates(0), b = td.rates(50);
    for (size_t i = 0; i < a.size(); i++) {
        EXPECT_NEAR(b[i] / a[i], 1, 1e-9);
    }
    for (double r : td.rates(0)) {
        EXPECT_EQ(r, 0.0);
    }
}

TEST(Integrate, NegativeTransientDiagnostic) {
    Fixture s(builtin_code("bit-flip"), "x");
    auto c = fig3_config(s.graph, 2);
    c.mode = RateMode::TimeDependent;
    RateMatrix m(c);
    IntegrateOptions o;
    o.samples = 51;
    auto tr = integrate(m, codespace_state(m), 3, o);
    EXPECT_TRUE(tr.negative_rates_seen);
    o.clamp_negative_rates = true;
    auto clamped = integrate(m, codespace_state(m), 3, o);
    EXPECT_FALSE(clamped.bound_violation);
    EXPECT_GE(clamped.min_population, -1e-9);
    o.method = IntegrationMethod::MatrixExponential;
    EXPECT_THROW(integrate(m, codespace_state(m), 3, o), std::invalid_argument);
}

TEST(Integrate, StepFailureReported) {
    Fixture s(builtin_code("steane"), "xz");
    RateMatrix m(fig3_config(s.graph, 0.5));
    IntegrateOptions o;
    o.dt = 20;
    o.samples = 3;
    EXPECT_THROW(integrate(m, codespace_state(m), 100, o), NumericalError);
    EXPECT_THROW(integrate(m, {1.0}, 10), std::invalid_argument);
}
