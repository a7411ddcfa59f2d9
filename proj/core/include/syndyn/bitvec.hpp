#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace syndyn {

/// Fixed-length bit vector packed into 64-bit words. Unused high bits of the
/// last word are kept zero so word-wise comparisons are exact.
class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(size_t n) : n_(n), words_((n + 63) / 64, 0) {
    }

    size_t size() const {
        return n_;
    }
    bool get(size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1;
    }
    void set(size_t i, bool v = true) {
        uint64_t m = uint64_t{1} << (i & 63);
        if (v) {
            words_[i >> 6] |= m;
        } else {
            words_[i >> 6] &= ~m;
        }
    }
    void flip(size_t i) {
        words_[i >> 6] ^= uint64_t{1} << (i & 63);
    }

    BitVector &operator^=(const BitVector &o) {
        check(o);
        for (size_t k = 0; k < words_.size(); k++) {
            words_[k] ^= o.words_[k];
        }
        return *this;
    }
    friend BitVector operator^(BitVector a, const BitVector &b) {
        a ^= b;
        return a;
    }

    size_t popcount() const {
        size_t c = 0;
        for (auto w : words_) {
            c += std::popcount(w);
        }
        return c;
    }
    bool any() const {
        for (auto w : words_) {
            if (w) {
                return true;
            }
        }
        return false;
    }
    /// Parity of popcount(a & b).
    static bool dot(const BitVector &a, const BitVector &b) {
        a.check(b);
        uint64_t acc = 0;
        for (size_t k = 0; k < a.words_.size(); k++) {
            acc ^= a.words_[k] & b.words_[k];
        }
        return std::popcount(acc) & 1;
    }
    /// popcount(a | b).
    static size_t or_count(const BitVector &a, const BitVector &b) {
        a.check(b);
        size_t c = 0;
        for (size_t k = 0; k < a.words_.size(); k++) {
            c += std::popcount(a.words_[k] | b.words_[k]);
        }
        return c;
    }

    const std::vector<uint64_t> &words() const {
        return words_;
    }

    /// Little-endian integer value; only valid for size() <= 64.
    uint64_t to_u64() const {
        if (n_ > 64) {
            throw std::domain_error("bit vector longer than 64 bits has no u64 value");
        }
        return words_.empty() ? 0 : words_[0];
    }
    static BitVector from_u64(size_t n, uint64_t v) {
        BitVector r(n);
        if (n > 0) {
            r.words_[0] = n >= 64 ? v : (v & ((uint64_t{1} << n) - 1));
        }
        return r;
    }

    bool operator==(const BitVector &o) const = default;
    bool operator<(const BitVector &o) const {
        if (n_ != o.n_) {
            return n_ < o.n_;
        }
        return words_ < o.words_;
    }

   private:
    void check(const BitVector &o) const {
        if (o.n_ != n_) {
            throw std::invalid_argument("bit vector length mismatch");
        }
    }

    size_t n_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace syndyn
