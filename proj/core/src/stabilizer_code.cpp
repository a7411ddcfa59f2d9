#include "syndyn/stabilizer_code.hpp"

#include <algorithm>

namespace syndyn {

namespace {

BitVector stacked_row(const PauliOperator &p) {
    size_t n = p.n();
    BitVector r(2 * n);
    for (size_t q = 0; q < n; q++) {
        r.set(q, p.x_bits().get(q));
        r.set(n + q, p.z_bits().get(q));
    }
    return r;
}

size_t lowest_set(const BitVector &v) {
    const auto &w = v.words();
    for (size_t k = 0; k < w.size(); k++) {
        if (w[k]) {
            return 64 * k + std::countr_zero(w[k]);
        }
    }
    return v.size();
}

// Gaussian elimination; returns rows in echelon form with their pivot columns.
void echelon(std::vector<BitVector> rows, std::vector<BitVector> &out, std::vector<size_t> &pivots) {
    out.clear();
    pivots.clear();
    for (auto &r : rows) {
        for (size_t i = 0; i < out.size(); i++) {
            if (r.get(pivots[i])) {
                r ^= out[i];
            }
        }
        if (!r.any()) {
            continue;
        }
        size_t p = lowest_set(r);
        for (auto &o : out) {
            if (o.get(p)) {
                o ^= r;
            }
        }
        out.push_back(std::move(r));
        pivots.push_back(p);
    }
}

}  // namespace

size_t symplectic_rank(const std::vector<PauliOperator> &rows) {
    std::vector<BitVector> stacked, e;
    std::vector<size_t> piv;
    for (const auto &r : rows) {
        stacked.push_back(stacked_row(r));
    }
    echelon(stacked, e, piv);
    return e.size();
}

StabilizerCode::StabilizerCode(std::string name, std::vector<PauliOperator> generators, std::optional<size_t> k,
                               std::optional<size_t> declared_distance)
    : name_(std::move(name)), generators_(std::move(generators)), distance_(declared_distance) {
    if (generators_.empty()) {
        throw std::invalid_argument("code '" + name_ + "' has no generators");
    }
    n_ = generators_.front().n();
    for (size_t i = 0; i < generators_.size(); i++) {
        if (generators_[i].n() != n_) {
            throw std::invalid_argument("generator " + std::to_string(i) + " of code '" + name_ + "' has " +
                                        std::to_string(generators_[i].n()) + " qubits, expected " +
                                        std::to_string(n_));
        }
    }
    if (generators_.size() >= n_ + 1) {
        throw std::invalid_argument("code '" + name_ + "' has more generators than qubits");
    }
    if (k && *k != n_ - generators_.size()) {
        throw std::invalid_argument("code '" + name_ + "' declares k=" + std::to_string(*k) + " but has n-g=" +
                                    std::to_string(n_ - generators_.size()));
    }
    for (size_t a = 0; a < generators_.size(); a++) {
        for (size_t b = a + 1; b < generators_.size(); b++) {
            if (!commutes(generators_[a], generators_[b])) {
                throw std::invalid_argument("generators " + std::to_string(a) + " and " + std::to_string(b) +
                                            " of code '" + name_ + "' anticommute");
            }
        }
    }
    std::vector<BitVector> rows;
    for (const auto &g : generators_) {
        rows.push_back(stacked_row(g));
    }
    echelon(rows, echelon_, pivots_);
    if (echelon_.size() != generators_.size()) {
        throw std::invalid_argument("generators of code '" + name_ + "' are not independent (rank " +
                                    std::to_string(echelon_.size()) + " < " + std::to_string(generators_.size()) +
                                    ")");
    }
}

StabilizerCode StabilizerCode::from_strings(std::string name, const std::vector<std::string> &generators,
                                            std::optional<size_t> declared_distance) {
    std::vector<PauliOperator> g;
    for (const auto &s : generators) {
        g.push_back(PauliOperator::from_string(s));
    }
    return StabilizerCode(std::move(name), std::move(g), {}, declared_distance);
}

uint64_t StabilizerCode::num_syndromes() const {
    if (generators_.size() > 63) {
        throw std::domain_error("too many generators to enumerate syndromes");
    }
    return uint64_t{1} << generators_.size();
}

bool StabilizerCode::in_stabilizer_group(const PauliOperator &p) const {
    if (p.n() != n_) {
        throw std::invalid_argument("Pauli dimension mismatch: " + std::to_string(p.n()) + " vs " +
                                    std::to_string(n_));
    }
    BitVector r = stacked_row(p);
    for (size_t i = 0; i < echelon_.size(); i++) {
        if (r.get(pivots_[i])) {
            r ^= echelon_[i];
        }
    }
    return !r.any();
}

Syndrome syndrome(const StabilizerCode &code, const PauliOperator &p) {
    if (p.n() != code.n()) {
        throw std::invalid_argument("Pauli dimension mismatch: " + std::to_string(p.n()) + " vs " +
                                    std::to_string(code.n()));
    }
    Syndrome s(code.num_generators());
    for (size_t m = 0; m < code.num_generators(); m++) {
        s.set(m, !commutes(p, code.generators()[m]));
    }
    return s;
}

uint64_t syndrome_index(const StabilizerCode &code, const PauliOperator &p) {
    return syndrome(code, p).to_u64();
}

std::string ElementaryError::label() const {
    return std::string(1, pauli_char(type)) + std::to_string(qubit + 1);
}

ErrorModel::ErrorModel(std::vector<ElementaryError> errors) : errors_(std::move(errors)) {
    for (size_t j = 0; j < errors_.size(); j++) {
        const auto &e = errors_[j];
        if (e.op.weight() != 1 || e.op.at(e.qubit) != e.type || e.type == PauliType::I) {
            throw std::invalid_argument("elementary error " + std::to_string(j) + " is not the single-qubit " +
                                        "operator it claims to be");
        }
        if (e.op.n() != errors_.front().op.n()) {
            throw std::invalid_argument("elementary errors act on different qubit counts");
        }
    }
}

ErrorModel ErrorModel::single_qubit(size_t n, const std::vector<PauliType> &types) {
    std::vector<PauliType> sorted = types;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<ElementaryError> out;
    for (size_t q = 0; q < n; q++) {
        for (auto t : sorted) {
            out.push_back({q, t, PauliOperator::single(n, q, t)});
        }
    }
    return ErrorModel(std::move(out));
}

ErrorModel ErrorModel::from_types(size_t n, const std::string &types) {
    std::vector<PauliType> t;
    for (char c : types) {
        switch (c) {
            case 'x':
            case 'X':
                t.push_back(PauliType::X);
                break;
            case 'y':
            case 'Y':
                t.push_back(PauliType::Y);
                break;
            case 'z':
            case 'Z':
                t.push_back(PauliType::Z);
                break;
            default:
                throw std::invalid_argument("unknown error type '" + std::string(1, c) + "' in \"" + types + "\"");
        }
    }
    if (t.empty()) {
        throw std::invalid_argument("empty error type list");
    }
    return single_qubit(n, t);
}

void check_detectable(const StabilizerCode &code, const ErrorModel &model) {
    for (const auto &e : model.errors()) {
        if (e.op.n() != code.n()) {
            throw std::invalid_argument("elementary error " + e.label() + " acts on " + std::to_string(e.op.n()) +
                                        " qubits but code has " + std::to_string(code.n()));
        }
        if (!syndrome(code, e.op).any()) {
            throw std::invalid_argument("elementary error " + e.label() + " commutes with every generator of " +
                                        code.name());
        }
    }
}

const std::vector<StabilizerCode> &builtin_codes() {
    static const std::vector<StabilizerCode> codes = {
        StabilizerCode::from_strings("bit-flip", {"ZZI", "IZZ"}, 1),
        StabilizerCode::from_strings("five-qubit", {"IXZZX", "XIXZZ", "ZXIXZ", "ZZXIX"}, 3),
        StabilizerCode::from_strings("steane", {"ZIZIZIZ", "IZZIIZZ", "IIIZZZZ", "XIXIXIX", "IXXIIXX", "IIIXXXX"},
                                     3),
    };
    return codes;
}

const StabilizerCode &builtin_code(const std::string &name) {
    for (const auto &c : builtin_codes()) {
        if (c.name() == name) {
            return c;
        }
    }
    throw std::invalid_argument("unknown built-in code '" + name + "' (known: bit-flip, five-qubit, steane)");
}

}  // namespace syndyn
