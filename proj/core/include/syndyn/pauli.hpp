#pragma once

#include <string>
#include <string_view>

#include "syndyn/bitvec.hpp"

namespace syndyn {

enum class PauliType : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(PauliType t);

/// Phase-free n-qubit Pauli operator in binary symplectic form.
class PauliOperator {
   public:
    PauliOperator() = default;
    explicit PauliOperator(size_t n);
    PauliOperator(BitVector x, BitVector z);

    /// Parses strings such as "ZIZIZIZ". Accepts I/X/Y/Z and '_' for identity.
    static PauliOperator from_string(std::string_view text);
    static PauliOperator single(size_t n, size_t qubit, PauliType type);

    size_t n() const {
        return x_.size();
    }
    const BitVector &x_bits() const {
        return x_;
    }
    const BitVector &z_bits() const {
        return z_;
    }
    PauliType at(size_t qubit) const;
    size_t weight() const;
    bool is_identity() const {
        return !x_.any() && !z_.any();
    }
    std::string str() const;

    PauliOperator &operator*=(const PauliOperator &o);
    bool operator==(const PauliOperator &o) const = default;
    bool operator<(const PauliOperator &o) const;

   private:
    BitVector x_;
    BitVector z_;
};

PauliOperator multiply(const PauliOperator &p, const PauliOperator &q);
inline PauliOperator operator*(const PauliOperator &p, const PauliOperator &q) {
    return multiply(p, q);
}

/// True iff the symplectic inner product vanishes.
bool commutes(const PauliOperator &p, const PauliOperator &q);

}  // namespace syndyn
