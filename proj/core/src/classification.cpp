#include "syndyn/classification.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace syndyn {

size_t CorrectabilityTable::num_correctable() const {
    return std::count_if(records.begin(), records.end(), [](const SyndromeRecord &r) { return r.correctable; });
}

bool CorrectabilityTable::inconsistent_decoder() const {
    return std::any_of(records.begin(), records.end(), [](const SyndromeRecord &r) { return r.ambiguous; });
}

const PauliOperator &CorrectabilityTable::decoder(uint64_t nu) const {
    if (nu >= records.size()) {
        throw std::out_of_range("syndrome " + std::to_string(nu) + " out of range");
    }
    if (!records[nu].representative) {
        throw std::domain_error("syndrome " + std::to_string(nu) + " has no decoder correction");
    }
    return *records[nu].representative;
}

bool is_correctable_product(const StabilizerCode &code, const CorrectabilityTable &table,
                            const PauliOperator &product) {
    uint64_t nu = syndrome_index(code, product);
    const auto &rec = table.records[nu];
    if (!rec.representative) {
        return false;
    }
    return code.in_stabilizer_group(*rec.representative * product);
}

namespace {

double binomial(size_t n, size_t k) {
    double r = 1;
    for (size_t i = 1; i <= k; i++) {
        r = r * double(n - k + i) / double(i);
    }
    return r;
}

}  // namespace

CorrectabilityTable classify(const StabilizerCode &code, const ErrorModel &model, size_t max_weight) {
    if (max_weight < 1) {
        throw std::invalid_argument("max_weight must be at least 1");
    }
    size_t g = code.num_generators();
    if (g > kMaxSyndromeBits) {
        throw std::domain_error("code '" + code.name() + "' has n-k=" + std::to_string(g) +
                                " > " + std::to_string(kMaxSyndromeBits) + "; exhaustive classification is infeasible");
    }
    if (!model.empty()) {
        check_detectable(code, model);
    }
    size_t ne = model.size();
    max_weight = std::min(max_weight, std::max<size_t>(ne, 1));
    double total = 0;
    for (size_t w = 1; w <= max_weight && w <= ne; w++) {
        total += binomial(ne, w);
    }
    if (total > 2e8) {
        throw std::domain_error("classification would enumerate " + std::to_string(total) + " products");
    }

    CorrectabilityTable t;
    t.n = code.n();
    t.num_generators = g;
    t.num_errors = ne;
    t.max_weight = max_weight;
    uint64_t ns = code.num_syndromes();
    t.records.resize(ns);
    for (uint64_t s = 0; s < ns; s++) {
        t.records[s].syndrome = s;
    }
    t.records[0].representative = PauliOperator(code.n());
    t.records[0].correctable = true;
    t.counts.push_back({0, 1, 1});
    for (const auto &e : model.errors()) {
        t.error_syndromes.push_back(syndrome_index(code, e.op));
    }

    // Factor order: (qubit, type) with X<Y<Z.
    std::vector<size_t> order(ne);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        const auto &ea = model[a], &eb = model[b];
        return ea.qubit != eb.qubit ? ea.qubit < eb.qubit : ea.type < eb.type;
    });

    for (size_t w = 1; w <= max_weight && w <= ne; w++) {
        WeightCount wc{w, 0, 0};
        std::vector<size_t> idx(w);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            PauliOperator p(code.n());
            uint64_t nu = 0;
            std::vector<size_t> factors;
            factors.reserve(w);
            for (size_t i : idx) {
                size_t j = order[i];
                p *= model[j].op;
                nu ^= t.error_syndromes[j];
                factors.push_back(j);
            }
            auto &rec = t.records[nu];
            if (!rec.representative) {
                rec.representative = p;
                rec.factors = factors;
                rec.weight = w;
                rec.pauli_weight = p.weight();
                rec.correctable = true;
            } else if (rec.weight == w) {
                bool eq = code.in_stabilizer_group(*rec.representative * p);
                t.ties.push_back({nu, rec.factors, factors, eq});
                if (!eq) {
                    rec.ambiguous = true;
                }
            }
            wc.products++;
            if (code.in_stabilizer_group(*rec.representative * p)) {
                wc.correctable++;
            }

            // Next combination in lexicographic order.
            size_t k = w;
            while (k > 0 && idx[k - 1] == ne - w + k - 1) {
                k--;
            }
            if (k == 0) {
                break;
            }
            idx[k - 1]++;
            for (size_t i = k; i < w; i++) {
                idx[i] = idx[i - 1] + 1;
            }
        }
        t.counts.push_back(wc);
    }

    t.transitions.resize(ns);
    for (uint64_t nu = 0; nu < ns; nu++) {
        const auto &rec = t.records[nu];
        if (!rec.correctable) {
            continue;
        }
        auto &row = t.transitions[nu];
        row.resize(ne);
        for (size_t j = 0; j < ne; j++) {
            uint64_t mu = nu ^ t.error_syndromes[j];
            const auto &target = t.records[mu];
            bool ok = target.correctable &&
                      code.in_stabilizer_group(*target.representative * *rec.representative * model[j].op);
            row[j] = ok ? TransitionClass::Correctable : TransitionClass::Uncorrectable;
        }
    }
    return t;
}

}  // namespace syndyn
