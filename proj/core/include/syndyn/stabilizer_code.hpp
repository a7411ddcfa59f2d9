#pragma once

#include <optional>
#include <string>
#include <vector>

#include "syndyn/pauli.hpp"

namespace syndyn {

using Syndrome = BitVector;

class StabilizerCode {
   public:
    /// Validates commutation and independence of the generators. `k` defaults
    /// to n - g.
    StabilizerCode(std::string name, std::vector<PauliOperator> generators, std::optional<size_t> k = {},
                   std::optional<size_t> declared_distance = {});
    static StabilizerCode from_strings(std::string name, const std::vector<std::string> &generators,
                                       std::optional<size_t> declared_distance = {});

    const std::string &name() const {
        return name_;
    }
    size_t n() const {
        return n_;
    }
    size_t k() const {
        return n_ - generators_.size();
    }
    size_t num_generators() const {
        return generators_.size();
    }
    const std::vector<PauliOperator> &generators() const {
        return generators_;
    }
    const std::optional<size_t> &declared_distance() const {
        return distance_;
    }
    /// 2^(n-k); throws for more than 63 generators.
    uint64_t num_syndromes() const;

    /// Membership in the group generated by the generators (phases ignored).
    bool in_stabilizer_group(const PauliOperator &p) const;

   private:
    std::string name_;
    size_t n_;
    std::vector<PauliOperator> generators_;
    std::optional<size_t> distance_;
    // Row echelon form of the stacked (x|z) generator rows.
    std::vector<BitVector> echelon_;
    std::vector<size_t> pivots_;
};

/// Bit m is set iff p anticommutes with generator m.
Syndrome syndrome(const StabilizerCode &code, const PauliOperator &p);
/// Little-endian integer of syndrome(code, p).
uint64_t syndrome_index(const StabilizerCode &code, const PauliOperator &p);

/// Binary rank of the stacked (x|z) rows.
size_t symplectic_rank(const std::vector<PauliOperator> &rows);

struct ElementaryError {
    size_t qubit;
    PauliType type;
    PauliOperator op;
    std::string label() const;
};

/// Ordered list of weight-1 elementary errors.
class ErrorModel {
   public:
    ErrorModel() = default;
    explicit ErrorModel(std::vector<ElementaryError> errors);

    /// One error per (qubit, type) for the listed types, ordered by qubit then type.
    static ErrorModel single_qubit(size_t n, const std::vector<PauliType> &types);
    /// Parses a type list such as "xz", "x", "xyz".
    static ErrorModel from_types(size_t n, const std::string &types);

    size_t size() const {
        return errors_.size();
    }
    bool empty() const {
        return errors_.empty();
    }
    const ElementaryError &operator[](size_t j) const {
        return errors_[j];
    }
    const std::vector<ElementaryError> &errors() const {
        return errors_;
    }
    size_t n() const {
        return errors_.empty() ? 0 : errors_.front().op.n();
    }

   private:
    std::vector<ElementaryError> errors_;
};

/// Throws std::invalid_argument naming the first elementary error that commutes
/// with every generator, or whose qubit count differs from the code's.
void check_detectable(const StabilizerCode &code, const ErrorModel &model);

/// Built-in codes: "bit-flip", "five-qubit", "steane".
const std::vector<StabilizerCode> &builtin_codes();
const StabilizerCode &builtin_code(const std::string &name);

}  // namespace syndyn
