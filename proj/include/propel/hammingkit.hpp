#pragma once

// Parity-check matrices for the q-ary Hamming code C, the all-vectors code D
// and the stacked block matrix, together with coset representatives.

#include "propel/fqlinalg.hpp"

#include <cstdint>
#include <vector>

namespace propel {

/// Upper bound on q^r for anything that materializes F_q^r.
inline constexpr std::uint64_t kMaxPointCount = std::uint64_t{1} << 20;

/// Little-endian bijection between F_q^r and {0, ..., q^r - 1}:
/// idx(a) = a_1 + a_2 q + ... + a_r q^(r-1).
class VectorIndexing {
public:
    /// Throws std::invalid_argument if q^r exceeds kMaxPointCount or r == 0.
    VectorIndexing(FieldContext field, unsigned r);

    const FieldContext& field() const noexcept { return field_; }
    unsigned q() const noexcept { return field_.q(); }
    unsigned r() const noexcept { return r_; }
    std::uint32_t size() const noexcept { return size_; }

    std::uint32_t index(const FqVector& a) const;
    std::uint32_t index(std::span<const Element> a) const;
    FqVector point(std::uint32_t idx) const;

private:
    FieldContext field_;
    unsigned r_;
    std::uint32_t size_;
};

/// q^r computed in 64 bits, saturating at UINT64_MAX.
std::uint64_t checked_pow(std::uint64_t base, unsigned exp);

/// Hamming length (q^r - 1) / (q - 1).
std::uint64_t hamming_length(unsigned q, unsigned r);

struct HammingPair {
    VectorIndexing indexing;
    FqMatrix h_c;      ///< r x n, normalized projective points in idx order
    FqMatrix h_prime;  ///< r x q^r, every point of F_q^r in idx order
    FqMatrix h_d;      ///< (r+1) x q^r, all-ones row on top of h_prime
    /// idx(point) -> column of h_c for normalized points, -1 otherwise.
    std::vector<std::int32_t> column_of_point;

    const FieldContext& field() const noexcept { return indexing.field(); }
    unsigned q() const noexcept { return indexing.q(); }
    unsigned r() const noexcept { return indexing.r(); }
    Index n() const noexcept { return h_c.cols(); }
    Index point_count() const noexcept { return h_d.cols(); }
    /// (q^(r+1) - 1) / (q - 1)
    Index full_length() const noexcept { return n() + point_count(); }
};

HammingPair build_hamming_pair(unsigned q, unsigned r);

/// (0 ... 0 | 1 ... 1) over (H_C | H'). Its nullspace is the Hamming code of
/// length n + q^r.
FqMatrix build_stacked_parity(const HammingPair& hp);

FqVector syndrome(const FqMatrix& h, const FqVector& x);

/// Weight <= 1 word x_a with H_C x_a = a.
FqVector coset_rep_C(const HammingPair& hp, const FqVector& a);
FqVector coset_rep_C(const HammingPair& hp, std::uint32_t a_idx);

/// y_a = e_0 - e_a of length q^r, so H_D y_a = -(0 | a).
FqVector coset_leader_D(const HammingPair& hp, const FqVector& a);
FqVector coset_leader_D(const HammingPair& hp, std::uint32_t a_idx);

}  // namespace propel
