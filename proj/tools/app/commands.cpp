#include "commands.hpp"

#include <cmath>
#include <sstream>

#include "syndyn/correction.hpp"
#include "syndyn/errors.hpp"
#include "syndyn/stability.hpp"
#include "syndyn/suppression.hpp"

namespace syndyn::app {

Mode parse_mode(const std::string &name) {
    static const std::pair<const char *, Mode> names[] = {
        {"codes", Mode::Codes},       {"graph", Mode::Graph},     {"rates", Mode::Rates},
        {"suppress", Mode::Suppress}, {"correct", Mode::Correct}, {"stability", Mode::Stability}};
    for (auto [n, m] : names) {
        if (name == n) {
            return m;
        }
    }
    throw ConfigError("/mode", "unknown mode '" + name + "'");
}

std::string mode_name(Mode m) {
    switch (m) {
        case Mode::Codes: return "codes";
        case Mode::Graph: return "graph";
        case Mode::Rates: return "rates";
        case Mode::Suppress: return "suppress";
        case Mode::Correct: return "correct";
        case Mode::Stability: return "stability";
    }
    return "?";
}

namespace {

struct Context {
    RunOptions opts;
    bool dry = false;
    std::vector<std::string> warnings;
    RunOutput out;

    void table(const std::string &name, const Table &t) {
        out.files.push_back({name, t.csv()});
    }
    void chart(const std::string &name, const LineChart &c) {
        if (opts.svg) {
            out.files.push_back({name, c.svg()});
        }
    }
};

std::string num(double v) {
    return format_number(v);
}

void close(Section &parent, const std::string &key, Section &child) {
    child.finish();
    parent.adopt(key, child.resolved());
}

StabilizerCode read_code(Section &s) {
    const auto &v = s.raw("code");
    if (v.is_string()) {
        auto name = v.get<std::string>();
        s.adopt("code", name);
        for (const auto &c : builtin_codes()) {
            if (c.name() == name) {
                return c;
            }
        }
        throw ConfigError(s.child_path("code"), "unknown built-in code '" + name + "'");
    }
    auto c = s.object("code");
    auto name = c.string("name", "custom");
    auto gens = c.strings("generators");
    std::optional<size_t> d;
    if (c.has("distance")) {
        auto dv = c.integer("distance");
        if (dv < 1) {
            throw ConfigError(c.child_path("distance"), "must be at least 1");
        }
        d = size_t(dv);
    }
    close(s, "code", c);
    std::vector<PauliOperator> ops;
    for (size_t i = 0; i < gens.size(); i++) {
        try {
            ops.push_back(PauliOperator::from_string(gens[i]));
        } catch (const PauliParseError &e) {
            throw ConfigError(s.child_path("code") + "/generators/" + std::to_string(i), e.what());
        }
    }
    try {
        return StabilizerCode(name, ops, {}, d);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(s.child_path("code") + "/generators", e.what());
    }
}

struct ErrorSpec {
    ErrorModel model;
    size_t max_weight;
};

ErrorSpec read_errors(Section &s, const StabilizerCode &code) {
    auto e = s.object("errors");
    auto types = e.string("types", "xz");
    auto w = e.integer("max_weight", 2);
    close(s, "errors", e);
    if (w < 1) {
        throw ConfigError(s.child_path("errors") + "/max_weight", "must be at least 1");
    }
    ErrorModel model;
    try {
        model = ErrorModel::from_types(code.n(), types);
        check_detectable(code, model);
    } catch (const std::invalid_argument &ex) {
        throw ConfigError(s.child_path("errors") + "/types", ex.what());
    }
    if (code.num_generators() > kMaxSyndromeBits) {
        throw ConfigError(s.child_path("code"), "more than " + std::to_string(kMaxSyndromeBits) +
                                                    " generators; exhaustive tables are capped");
    }
    return {std::move(model), size_t(w)};
}

struct Ohmic {
    double er;
    double cutoff;
};

Ohmic read_ohmic(Section &b, Context &ctx) {
    Ohmic o{b.positive("reorganization_energy"), b.positive("cutoff")};
    if (o.er / o.cutoff > 0.1) {
        ctx.warnings.push_back(b.path() + ": Markovianity condition E_R << cutoff is not met (E_R/cutoff = " +
                               num_str(o.er / o.cutoff) + ")");
    }
    return o;
}

std::vector<double> read_times(Section &s) {
    auto t = s.object("time");
    double start = t.positive("start", 0.0, true);
    double end = t.positive("end");
    auto samples = t.integer("samples", 201);
    close(s, "time", t);
    if (end <= start) {
        throw ConfigError(s.child_path("time") + "/end", "must exceed start");
    }
    if (samples < 2) {
        throw ConfigError(s.child_path("time") + "/samples", "must be at least 2");
    }
    std::vector<double> out;
    for (int64_t i = 0; i < samples; i++) {
        out.push_back(start + (end - start) * double(i) / double(samples - 1));
    }
    return out;
}

MatsubaraOptions read_matsubara(Section &b) {
    MatsubaraOptions m;
    auto k = b.integer("matsubara_terms", 0);
    if (k < 0) {
        throw ConfigError(b.child_path("matsubara_terms"), "must be non-negative");
    }
    m.k_max = size_t(k);
    m.rel_tol = b.positive("matsubara_tol", m.rel_tol);
    return m;
}

// ---- graph -----------------------------------------------------------------

void graph_mode(Section &s, Context &ctx) {
    auto code = read_code(s);
    auto errs = read_errors(s, code);
    s.finish();
    auto table = classify(code, errs.model, errs.max_weight);
    if (ctx.dry) {
        return;
    }
    auto g = build_graph(code, errs.model, table);
    Table nodes{{"syndrome", "correctable", "weight", "pauli_weight", "representative", "ambiguous"}, {}};
    for (const auto &r : table.records) {
        nodes.add({std::to_string(r.syndrome), r.correctable ? "1" : "0", std::to_string(r.weight),
                   std::to_string(r.pauli_weight), r.representative ? r.representative->str() : "",
                   r.ambiguous ? "1" : "0"});
    }
    Table edges{{"source", "error", "target", "class", "varpi"}, {}};
    for (const auto &e : g.edges) {
        edges.add({std::to_string(e.source), g.error_labels[e.error], std::to_string(e.target),
                   e.cls == TransitionClass::Correctable ? "correctable" : "uncorrectable", std::to_string(e.varpi)});
    }
    ctx.table("nodes.csv", nodes);
    ctx.table("edges.csv", edges);
    ctx.out.files.push_back({"graph.dot", export_graph(g, GraphFormat::Dot)});
    ctx.out.files.push_back({"graph.json", export_graph(g, GraphFormat::Json)});
    ctx.out.summary = code.name() + ": " + std::to_string(g.nodes.size()) + " nodes, " +
                      std::to_string(g.num_correctable()) + " correctable, " + std::to_string(g.edges.size()) +
                      " edges";
}

// ---- codes (classification) --------------------------------------------------

void codes_mode(Section &s, Context &ctx) {
    auto code = read_code(s);
    auto errs = read_errors(s, code);
    s.finish();
    auto table = classify(code, errs.model, errs.max_weight);
    if (table.inconsistent_decoder()) {
        ctx.warnings.push_back("decoder ties between logically inequivalent products");
    }
    if (ctx.dry) {
        return;
    }
    Table counts{{"weight", "products", "correctable"}, {}};
    for (const auto &c : table.counts) {
        counts.add({std::to_string(c.weight), std::to_string(c.products), std::to_string(c.correctable)});
    }
    Table ties{{"syndrome", "chosen", "other", "stabilizer_equivalent"}, {}};
    auto labels = [&](const std::vector<size_t> &f) {
        std::string out;
        for (size_t i : f) {
            out += (out.empty() ? "" : " ") + errs.model[i].label();
        }
        return out;
    };
    for (const auto &t : table.ties) {
        ties.add({std::to_string(t.syndrome), labels(t.chosen), labels(t.other), t.stabilizer_equivalent ? "1" : "0"});
    }
    ctx.table("weights.csv", counts);
    ctx.table("ties.csv", ties);
    ctx.out.summary = code.name() + ": " + std::to_string(table.num_correctable()) + " of " +
                      std::to_string(table.num_syndromes()) + " syndromes correctable";
}

// ---- rates -------------------------------------------------------------------

void rates_mode(Section &s, Context &ctx) {
    auto b = s.object("bath");
    auto o = read_ohmic(b, ctx);
    double T = b.positive("temperature");
    auto mats = read_matsubara(b);
    close(s, "bath", b);
    auto alphas = s.numbers("alphas");
    auto w = s.integer("anticommuting", 1);
    auto times = read_times(s);
    s.finish();
    for (size_t i = 0; i < alphas.size(); i++) {
        if (alphas[i] < 0) {
            throw ConfigError(s.child_path("alphas") + "/" + std::to_string(i), "must be non-negative");
        }
    }
    if (w < 1) {
        throw ConfigError(s.child_path("anticommuting"), "must be at least 1");
    }
    try {
        check_nonresonant(o.cutoff, T);
    } catch (const std::domain_error &e) {
        throw ConfigError(s.child_path("bath"), e.what());
    }
    if (ctx.dry) {
        return;
    }
    auto ld = SpectralDensity::lorentz_drude(o.er, o.cutoff);
    Table t{{"alpha", "t", "r_plus", "r_minus", "markov_plus", "markov_minus"}, {}};
    LineChart chart{"r- against time", "t", "r-", false, {}};
    size_t negative = 0;
    for (double a : alphas) {
        double omega = 2 * a * double(w);
        double mp = markov_rate(ld, T, omega), mm = markov_rate(ld, T, -omega);
        Series ser{"alpha=" + num(a), {}, {}};
        for (double tt : times) {
            double rp = timedep_rate_ohmic(o.er, o.cutoff, T, omega, tt, RateSign::Plus, mats);
            double rm = timedep_rate_ohmic(o.er, o.cutoff, T, omega, tt, RateSign::Minus, mats);
            negative += rm < 0;
            t.add({num(a), num(tt), num(rp), num(rm), num(mp), num(mm)});
            ser.x.push_back(tt);
            ser.y.push_back(rm);
        }
        chart.series.push_back(ser);
    }
    ctx.table("rates.csv", t);
    ctx.chart("rates.svg", chart);
    ctx.out.summary = std::to_string(t.rows.size()) + " rate samples, " + std::to_string(negative) + " negative r-";
}

// ---- suppress ----------------------------------------------------------------

struct NamedModulation {
    std::string name;
    Modulation mod;
    bool none = false;
};

void suppress_mode(Section &s, Context &ctx) {
    auto c = s.object("correlation");
    auto kind = c.string("kind");
    Correlation corr;
    std::optional<Ohmic> ohmic;
    double T = 0;
    try {
        if (kind == "exponential") {
            corr = exponential_correlation(c.number("amplitude", 1), c.positive("decay"));
        } else if (kind == "gaussian") {
            corr = gaussian_correlation(c.number("amplitude", 1), c.positive("width"));
        } else if (kind == "lorentz_drude") {
            ohmic = read_ohmic(c, ctx);
            T = c.positive("temperature");
            auto k = c.integer("matsubara_terms", 2048);
            if (k < 1) {
                throw ConfigError(c.child_path("matsubara_terms"), "must be at least 1");
            }
            check_nonresonant(ohmic->cutoff, T);
            corr = lorentz_drude_correlation(ohmic->er, ohmic->cutoff, T, size_t(k));
        } else {
            throw ConfigError(c.child_path("kind"), "expected exponential, gaussian or lorentz_drude");
        }
    } catch (const std::invalid_argument &e) {
        throw ConfigError(c.path(), e.what());
    } catch (const std::domain_error &e) {
        throw ConfigError(c.path(), e.what());
    }
    close(s, "correlation", c);

    const auto &mods = s.raw("modulations");
    if (!mods.is_array() || mods.empty()) {
        throw ConfigError(s.child_path("modulations"), "expected a non-empty array");
    }
    std::vector<NamedModulation> list;
    json resolved_mods = json::array();
    for (size_t i = 0; i < mods.size(); i++) {
        Section m(mods[i], s.child_path("modulations") + "/" + std::to_string(i));
        auto mk = m.string("kind");
        if (mk == "egp") {
            double a = m.positive("alpha", {}, true);
            auto w = m.integer("anticommuting", 1);
            list.push_back({"egp alpha=" + num(a) + " w=" + std::to_string(w), EgpModulation{a, int(w)}});
        } else if (mk == "dd") {
            double period = m.positive("period");
            double horizon = m.positive("horizon");
            list.push_back({"dd period=" + num(period), DdModulation{ParityTrace::periodic(period, horizon)}});
        } else if (mk == "none") {
            list.push_back({"none", EgpModulation{0, 1}, true});
        } else {
            throw ConfigError(m.child_path("kind"), "expected egp, dd or none");
        }
        m.finish();
        resolved_mods.push_back(m.resolved());
    }
    s.adopt("modulations", resolved_mods);
    auto times = read_times(s);
    QuadratureOptions q;
    if (s.has("quadrature")) {
        auto qs = s.object("quadrature");
        q.rel_tol = qs.positive("rel_tol", q.rel_tol);
        q.abs_tol = qs.positive("abs_tol", q.abs_tol);
        close(s, "quadrature", qs);
    }
    std::optional<std::tuple<double, int, double, double, double, bool>> pop;
    if (s.has("population")) {
        if (!ohmic) {
            throw ConfigError(s.child_path("population"), "needs a lorentz_drude correlation");
        }
        auto p = s.object("population");
        pop = {p.positive("alpha", {}, true), int(p.integer("anticommuting", 1)), p.positive("num_errors", 1.0),
               p.positive("horizon"), p.positive("dt", 1e-3), p.boolean("clamp_negative_rates", false)};
        close(s, "population", p);
    }
    s.finish();
    if (ctx.dry) {
        return;
    }
    Table t{{"modulation", "t", "r_plus", "r_minus", "error"}, {}};
    LineChart chart{"leakage rate r+ against time", "t", "r+", false, {}};
    for (const auto &m : list) {
        Series ser{m.name, {}, {}};
        for (double tt : times) {
            auto r = leakage_rates(corr, m.mod, tt, q);
            t.add({m.name, num(tt), num(r.r_plus), num(r.r_minus), num(r.error)});
            ser.x.push_back(tt);
            ser.y.push_back(r.r_plus);
        }
        chart.series.push_back(ser);
    }
    ctx.table("leakage.csv", t);
    ctx.chart("leakage.svg", chart);
    ctx.out.summary = std::to_string(t.rows.size()) + " leakage-rate samples";
    if (pop) {
        auto [a, w, ne, horizon, dt, clamp] = *pop;
        P0Options po;
        po.dt = dt;
        po.record_every = std::max<size_t>(1, size_t(horizon / dt / 1000));
        po.clamp_negative_rates = clamp;
        auto rates = egp_ohmic_rates(ohmic->er, ohmic->cutoff, T, a, w, size_t(ne));
        auto tr = p0_dynamics(rates, 1, 0, horizon, po);
        Table pt{{"t", "p0", "p1"}, {}};
        for (size_t i = 0; i < tr.t.size(); i++) {
            pt.add({num(tr.t[i]), num(tr.p0[i]), num(tr.p1[i])});
        }
        ctx.table("population.csv", pt);
        ctx.chart("population.svg", LineChart{"codespace population", "t", "P0", false, {{"P0", tr.t, tr.p0}}});
        if (tr.negative_rates_seen) {
            ctx.warnings.push_back("negative transient rates encountered");
        }
        ctx.out.summary += "; final P0 " + num(tr.p0.back());
    }
}

// ---- correct -----------------------------------------------------------------

void correct_mode(Section &s, Context &ctx) {
    auto code = read_code(s);
    auto errs = read_errors(s, code);
    auto b = s.object("bath");
    auto o = read_ohmic(b, ctx);
    double T = b.positive("temperature");
    auto mats = read_matsubara(b);
    close(s, "bath", b);
    std::optional<Reservoir> reservoir;
    if (s.has("reservoir")) {
        auto r = s.object("reservoir");
        auto ro = read_ohmic(r, ctx);
        reservoir = Reservoir{SpectralDensity::lorentz_drude(ro.er, ro.cutoff), r.positive("temperature")};
        close(s, "reservoir", r);
    }
    auto ctl = s.object("control");
    auto alphas = ctl.numbers("alphas");
    MeanEnergy eps;
    if (ctl.has("eps_bar") && ctl.raw("eps_bar").is_object()) {
        auto e = ctl.object("eps_bar");
        eps.times = e.numbers("times");
        eps.values = e.numbers("values");
        close(ctl, "eps_bar", e);
        if (eps.times.size() != eps.values.size()) {
            throw ConfigError(ctl.child_path("eps_bar"), "times and values differ in length");
        }
        for (size_t i = 1; i < eps.times.size(); i++) {
            if (!(eps.times[i] > eps.times[i - 1])) {
                throw ConfigError(ctl.child_path("eps_bar") + "/times", "must be strictly increasing");
            }
        }
    } else {
        eps.constant = ctl.number("eps_bar", 0);
    }
    close(s, "control", ctl);
    auto mode_str = s.string("rate_mode", "second_markov");
    RateMode rm;
    if (mode_str == "second_markov") {
        rm = RateMode::SecondMarkov;
    } else if (mode_str == "time_dependent") {
        rm = RateMode::TimeDependent;
    } else {
        throw ConfigError(s.child_path("rate_mode"), "expected second_markov or time_dependent");
    }
    auto in = s.object("integration");
    double horizon = in.positive("horizon");
    auto samples = in.integer("samples", 101);
    auto method_str = in.string("method", "rk4");
    IntegrateOptions io;
    io.dt = in.positive("dt", 0.0, true);
    io.clamp_negative_rates = in.boolean("clamp_negative_rates", false);
    close(s, "integration", in);
    bool conservation = s.boolean("conservation_mode", false);
    s.finish();
    if (samples < 2) {
        throw ConfigError("/integration/samples", "must be at least 2");
    }
    io.samples = size_t(samples);
    if (method_str == "rk4") {
        io.method = IntegrationMethod::RK4;
    } else if (method_str == "expm") {
        io.method = IntegrationMethod::MatrixExponential;
    } else {
        throw ConfigError("/integration/method", "expected rk4 or expm");
    }

    auto table = classify(code, errs.model, errs.max_weight);
    auto graph = build_graph(code, errs.model, table);
    std::vector<RateMatrix> mats_list;
    for (size_t i = 0; i < alphas.size(); i++) {
        CorrectionConfig c;
        c.graph = &graph;
        c.alpha = alphas[i];
        c.eps_bar = eps;
        c.bath = SpectralDensity::lorentz_drude(o.er, o.cutoff);
        c.temperature = T;
        c.reservoir = reservoir;
        c.mode = rm;
        c.conservation_mode = conservation;
        c.matsubara = mats;
        try {
            mats_list.emplace_back(c);
        } catch (const std::invalid_argument &e) {
            throw ConfigError("/control/alphas/" + std::to_string(i), e.what());
        } catch (const std::domain_error &e) {
            throw ConfigError("/bath", e.what());
        }
    }
    if (ctx.dry) {
        return;
    }
    Table pop{{"alpha", "t", "p_corr"}, {}};
    Table decay{{"alpha", "fitted_decay", "slowest_decay", "final_p_corr", "dt", "negative_rates_seen"}, {}};
    LineChart chart{"correctable population", "t", "P_corr", false, {}};
    for (size_t i = 0; i < alphas.size(); i++) {
        const auto &m = mats_list[i];
        auto tr = integrate(m, codespace_state(m), horizon, io);
        Series ser{"alpha/T=" + num(alphas[i] / T), tr.t, tr.p_corr};
        for (size_t k = 0; k < tr.t.size(); k++) {
            pop.add({num(alphas[i]), num(tr.t[k]), num(tr.p_corr[k])});
        }
        double slow = m.constant() ? slowest_decay_rate(m) : NAN;
        decay.add({num(alphas[i]), num(fit_decay_rate(tr.t, tr.p_corr)), num(slow), num(tr.p_corr.back()),
                   num(tr.dt), tr.negative_rates_seen ? "1" : "0"});
        if (tr.negative_rates_seen) {
            ctx.warnings.push_back("negative transient rates at alpha=" + num(alphas[i]));
        }
        chart.series.push_back(ser);
    }
    ctx.table("populations.csv", pop);
    ctx.table("decay.csv", decay);
    ctx.chart("populations.svg", chart);
    ctx.out.summary = code.name() + ": " + std::to_string(alphas.size()) + " penalty values integrated to t=" +
                      num(horizon);
}

// ---- stability ---------------------------------------------------------------

void stability_mode(Section &s, Context &ctx) {
    ScanRequest req;
    req.threads = ctx.opts.threads;
    if (s.has("code")) {
        auto c = s.object("code");
        req.code.base_n = size_t(c.integer("base_n", 7));
        req.code.base_d = size_t(c.integer("base_d", 3));
        req.code.level = size_t(c.integer("level", 4));
        req.code.errors_per_qubit = size_t(c.integer("errors_per_qubit", 2));
        const auto &nc = c.has("n_c") ? c.raw("n_c") : json("paper");
        if (nc.is_number_integer()) {
            if (nc.get<int64_t>() < 1) {
                throw ConfigError(c.child_path("n_c"), "must be at least 1");
            }
            req.code.n_c_override = size_t(nc.get<int64_t>());
            c.adopt("n_c", nc);
        } else {
            auto v = c.string("n_c", "paper");
            if (v == "paper") {
                req.code.convention = NcConvention::PaperWorked;
            } else if (v == "formula") {
                req.code.convention = NcConvention::Formula;
            } else {
                throw ConfigError(c.child_path("n_c"), "expected paper, formula or an integer");
            }
        }
        close(s, "code", c);
        try {
            (void)req.code.n_c();
        } catch (const std::invalid_argument &e) {
            throw ConfigError(s.child_path("code") + "/n_c", e.what());
        }
    } else {
        s.adopt("code", json{{"base_n", 7}, {"base_d", 3}, {"level", 4}, {"errors_per_qubit", 2}, {"n_c", "paper"}});
    }
    auto b = s.object("bath");
    auto o = read_ohmic(b, ctx);
    close(s, "bath", b);
    req.bath = SpectralDensity::lorentz_drude(o.er, o.cutoff);
    try {
        req.scaling = parse_scaling(s.string("barrier"));
    } catch (const std::invalid_argument &e) {
        throw ConfigError(s.child_path("barrier"), e.what());
    }
    req.alphas = s.numbers("alphas");
    req.temperatures = s.numbers("temperatures");
    const auto &nl = s.raw("n_l");
    if (nl.is_object()) {
        auto g = s.object("n_l");
        double from = g.positive("from"), to = g.positive("to");
        auto points = g.integer("points");
        close(s, "n_l", g);
        if (points < 2 || to <= from) {
            throw ConfigError(s.child_path("n_l"), "need points >= 2 and to > from");
        }
        for (int64_t i = 0; i < points; i++) {
            req.n_l.push_back(from * std::pow(to / from, double(i) / double(points - 1)));
        }
    } else {
        req.n_l = s.numbers("n_l");
    }
    s.finish();
    for (double a : req.alphas) {
        if (a < 0) {
            throw ConfigError(s.child_path("alphas"), "must be non-negative");
        }
    }
    for (double t : req.temperatures) {
        if (t <= 0) {
            throw ConfigError(s.child_path("temperatures"), "must be positive");
        }
    }
    for (double n : req.n_l) {
        if (n < 1) {
            throw ConfigError(s.child_path("n_l"), "must be at least 1");
        }
    }
    size_t nc = req.code.n_c();
    if (req.code.num_errors(*std::min_element(req.n_l.begin(), req.n_l.end())) < 10.0 * double(nc)) {
        ctx.warnings.push_back("N_e < 10 n_c at the smallest n_l; the bound column is NaN there");
    }
    if (ctx.dry) {
        return;
    }
    auto rows = scan(req);
    Table t{{"temperature", "alpha", "n_l", "barrier", "num_errors", "n_c", "log_eta", "log_bound", "log_bound_approx"},
            {}};
    for (const auto &r : rows) {
        t.add({num(r.temperature), num(r.alpha), num(r.n_l), num(r.barrier), num(r.num_errors), std::to_string(r.n_c),
               num(r.log_eta), num(r.log_bound), num(r.log_approx)});
    }
    ctx.table("scan.csv", t);
    // One chart per value of the shorter axis, one curve per value of the longer.
    bool per_alpha = req.alphas.size() <= req.temperatures.size();
    size_t charts = per_alpha ? req.alphas.size() : req.temperatures.size();
    size_t curves = per_alpha ? req.temperatures.size() : req.alphas.size();
    for (size_t c = 0; c < charts; c++) {
        LineChart chart{per_alpha ? "log eta against n_l, alpha=" + num(req.alphas[c])
                                  : "log eta against n_l, T=" + num(req.temperatures[c]),
                        "n_l", "log eta", true, {}};
        for (size_t k = 0; k < curves; k++) {
            size_t ai = per_alpha ? c : k, ti = per_alpha ? k : c;
            Series ser{per_alpha ? "T=" + num(req.temperatures[ti]) : "alpha=" + num(req.alphas[ai]), {}, {}};
            for (size_t i = 0; i < req.n_l.size(); i++) {
                const auto &r = rows[(ti * req.alphas.size() + ai) * req.n_l.size() + i];
                ser.x.push_back(r.n_l);
                ser.y.push_back(r.log_eta);
            }
            chart.series.push_back(ser);
        }
        ctx.chart("scan_" + std::to_string(c) + ".svg", chart);
    }
    ctx.out.summary = std::to_string(rows.size()) + " grid points, barrier " + scaling_name(req.scaling);
}

void dispatch(Mode mode, const json &config, Context &ctx) {
    Section s(config, "");
    if (s.has("mode")) {
        auto m = s.string("mode");
        if (parse_mode(m) != mode) {
            throw ConfigError("/mode", "config is for '" + m + "' but subcommand is '" + mode_name(mode) + "'");
        }
    } else {
        s.adopt("mode", mode_name(mode));
    }
    switch (mode) {
        case Mode::Codes: codes_mode(s, ctx); break;
        case Mode::Graph: graph_mode(s, ctx); break;
        case Mode::Rates: rates_mode(s, ctx); break;
        case Mode::Suppress: suppress_mode(s, ctx); break;
        case Mode::Correct: correct_mode(s, ctx); break;
        case Mode::Stability: stability_mode(s, ctx); break;
    }
    ctx.out.resolved = s.resolved();
}

}  // namespace

RunOutput run(Mode mode, const json &config, const RunOptions &opts) {
    Context ctx;
    ctx.opts = opts;
    dispatch(mode, config, ctx);
    if (!ctx.warnings.empty()) {
        Table w{{"warning"}, {}};
        for (const auto &m : ctx.warnings) {
            w.add({m});
        }
        ctx.table("warnings.csv", w);
    }
    return std::move(ctx.out);
}

Table codes_table() {
    Table t{{"name", "n", "k", "distance", "generators"}, {}};
    for (const auto &c : builtin_codes()) {
        std::string gens;
        for (const auto &g : c.generators()) {
            gens += (gens.empty() ? "" : " ") + g.str();
        }
        auto d = c.declared_distance();
        t.add({c.name(), std::to_string(c.n()), std::to_string(c.k()), d ? std::to_string(*d) : "", gens});
    }
    return t;
}

json validate(const json &config, Mode fallback_mode) {
    json report = {{"valid", true}, {"errors", json::array()}, {"warnings", json::array()}};
    Context ctx;
    ctx.dry = true;
    try {
        Mode mode = fallback_mode;
        if (config.is_object() && config.contains("mode") && config["mode"].is_string()) {
            mode = parse_mode(config["mode"].get<std::string>());
        }
        report["mode"] = mode_name(mode);
        dispatch(mode, config, ctx);
    } catch (const ConfigError &e) {
        report["valid"] = false;
        report["errors"].push_back({{"path", e.path.empty() ? "/" : e.path}, {"message", e.what()}});
    } catch (const std::exception &e) {
        report["valid"] = false;
        report["errors"].push_back({{"path", "/"}, {"message", e.what()}});
    }
    for (const auto &w : ctx.warnings) {
        report["warnings"].push_back(w);
    }
    return report;
}

}  // namespace syndyn::app
