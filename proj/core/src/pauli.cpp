#include "syndyn/pauli.hpp"

#include "syndyn/errors.hpp"

namespace syndyn {

char pauli_char(PauliType t) {
    return "IXYZ"[static_cast<int>(t)];
}

PauliOperator::PauliOperator(size_t n) : x_(n), z_(n) {
}

PauliOperator::PauliOperator(BitVector x, BitVector z) : x_(std::move(x)), z_(std::move(z)) {
    if (x_.size() != z_.size()) {
        throw std::invalid_argument("x and z bit vectors differ in length");
    }
}

PauliOperator PauliOperator::from_string(std::string_view text) {
    std::string owned(text);
    if (text.empty()) {
        throw PauliParseError(owned, 0);
    }
    PauliOperator p(text.size());
    for (size_t i = 0; i < text.size(); i++) {
        switch (text[i]) {
            case 'I':
            case '_':
                break;
            case 'X':
                p.x_.set(i);
                break;
            case 'Y':
                p.x_.set(i);
                p.z_.set(i);
                break;
            case 'Z':
                p.z_.set(i);
                break;
            default:
                throw PauliParseError(owned, i);
        }
    }
    return p;
}

PauliOperator PauliOperator::single(size_t n, size_t qubit, PauliType type) {
    if (qubit >= n) {
        throw std::out_of_range("qubit index " + std::to_string(qubit) + " out of range for n=" + std::to_string(n));
    }
    PauliOperator p(n);
    if (type == PauliType::X || type == PauliType::Y) {
        p.x_.set(qubit);
    }
    if (type == PauliType::Z || type == PauliType::Y) {
        p.z_.set(qubit);
    }
    return p;
}

PauliType PauliOperator::at(size_t q) const {
    bool x = x_.get(q), z = z_.get(q);
    if (x && z) {
        return PauliType::Y;
    }
    return x ? PauliType::X : (z ? PauliType::Z : PauliType::I);
}

size_t PauliOperator::weight() const {
    return BitVector::or_count(x_, z_);
}

std::string PauliOperator::str() const {
    std::string s(n(), 'I');
    for (size_t q = 0; q < n(); q++) {
        s[q] = pauli_char(at(q));
    }
    return s;
}

PauliOperator &PauliOperator::operator*=(const PauliOperator &o) {
    if (o.n() != n()) {
        throw std::invalid_argument("Pauli dimension mismatch: " + std::to_string(n()) + " vs " + std::to_string(o.n()));
    }
    x_ ^= o.x_;
    z_ ^= o.z_;
    return *this;
}

bool PauliOperator::operator<(const PauliOperator &o) const {
    if (x_ == o.x_) {
        return z_ < o.z_;
    }
    return x_ < o.x_;
}

PauliOperator multiply(const PauliOperator &p, const PauliOperator &q) {
    PauliOperator r = p;
    r *= q;
    return r;
}

bool commutes(const PauliOperator &p, const PauliOperator &q) {
    if (p.n() != q.n()) {
        throw std::invalid_argument("Pauli dimension mismatch: " + std::to_string(p.n()) + " vs " + std::to_string(q.n()));
    }
    return BitVector::dot(p.x_bits(), q.z_bits()) == BitVector::dot(p.z_bits(), q.x_bits());
}

}  // namespace syndyn
