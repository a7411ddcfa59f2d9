#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "syndyn/stabilizer_code.hpp"

namespace syndyn {

enum class TransitionClass : uint8_t { Correctable, Uncorrectable };

struct SyndromeRecord {
    uint64_t syndrome = 0;
    /// Decoder correction: first minimal-factor product reaching this syndrome.
    std::optional<PauliOperator> representative;
    /// Indices into the error model of the representative's factors.
    std::vector<size_t> factors;
    /// Number of elementary-error factors of the representative.
    size_t weight = 0;
    size_t pauli_weight = 0;
    bool correctable = false;
    /// Set when an equal-weight product with this syndrome is logically
    /// inequivalent to the representative.
    bool ambiguous = false;
};

struct DecoderTie {
    uint64_t syndrome;
    std::vector<size_t> chosen;
    std::vector<size_t> other;
    bool stabilizer_equivalent;
};

struct WeightCount {
    size_t weight;
    uint64_t products;
    uint64_t correctable;
};

class CorrectabilityTable {
   public:
    size_t n = 0;
    size_t num_generators = 0;
    size_t num_errors = 0;
    size_t max_weight = 0;
    std::vector<SyndromeRecord> records;
    /// transitions[nu][j]; empty for syndromes that are not correctable.
    std::vector<std::vector<TransitionClass>> transitions;
    std::vector<DecoderTie> ties;
    std::vector<WeightCount> counts;
    /// Syndromes (little-endian) of each elementary error.
    std::vector<uint64_t> error_syndromes;

    uint64_t num_syndromes() const {
        return records.size();
    }
    size_t num_correctable() const;
    bool inconsistent_decoder() const;
    const PauliOperator &decoder(uint64_t nu) const;
};

/// Hard cap on n - k for exhaustive syndrome tables.
inline constexpr size_t kMaxSyndromeBits = 20;

/// Enumerates products of distinct elementary errors by increasing factor
/// count up to max_weight. Ties between equal-weight products are broken by the
/// lexicographic (qubit, X<Y<Z) order of the factor list.
CorrectabilityTable classify(const StabilizerCode &code, const ErrorModel &model, size_t max_weight);

/// Whether `product` (any Pauli) is undone by the table's decoder.
bool is_correctable_product(const StabilizerCode &code, const CorrectabilityTable &table,
                            const PauliOperator &product);

}  // namespace syndyn
