#pragma once

// Concatenation construction S_tau = U_a C_a x D_tau(a) and its rank theory.

#include "propel/affinegroups.hpp"
#include "propel/fqlinalg.hpp"
#include "propel/hammingkit.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace propel {

/// Default enumeration budget: q^(N-r-1) codewords.
inline constexpr std::uint64_t kMaxCodewords = std::uint64_t{1} << 28;

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Everything needed to answer membership, enumeration and rank queries for S_tau.
class CodeHandle {
public:
    /// Uses the weight-<=1 coset representatives from coset_rep_C.
    CodeHandle(HammingPair hp, PermTable tau);

    const HammingPair& hamming() const noexcept { return hp_; }
    const PermTable& tau() const noexcept { return tau_; }
    const FieldContext& field() const noexcept { return hp_.field(); }
    unsigned q() const noexcept { return hp_.q(); }
    unsigned r() const noexcept { return hp_.r(); }
    Index n() const noexcept { return hp_.n(); }
    /// N = (q^(r+1) - 1) / (q - 1)
    Index length() const noexcept { return hp_.full_length(); }
    /// q^(N-r-1), saturating.
    std::uint64_t size() const noexcept;

    /// x_a, the chosen representative of C_a.
    const FqVector& representative(std::uint32_t a_idx) const { return reps_.at(a_idx); }
    /// Replaces the C_a representatives; each must have syndrome a.
    CodeHandle with_representatives(std::vector<FqVector> reps) const;

    /// z_1..z_dim(C): reduced-echelon nullspace basis of H_C.
    const std::vector<FqVector>& c_basis() const noexcept { return c_basis_; }
    /// Reduced-echelon nullspace basis of H_D.
    const std::vector<FqVector>& d_basis() const noexcept { return d_basis_; }

private:
    HammingPair hp_;
    PermTable tau_;
    std::vector<FqVector> reps_;
    std::vector<FqVector> c_basis_;
    std::vector<FqVector> d_basis_;
};

/// tau(H_D): column tau(b) of the result is column b of H_D, i.e. position b
/// receives the column from tau^-1(b). Parity-check matrix of tau(D).
FqMatrix permuted_parity(const HammingPair& hp, const PermTable& tau);

/// The word action (tau y)_tau(a) = y_a on words indexed by F_q^r.
FqVector permute_word(const PermTable& tau, const FqVector& y);

/// rank(H_D ; tau(H_D)) - (r + 1)
std::size_t distension(const HammingPair& hp, const PermTable& tau);

/// Basis of D n tau(D) obtained by intersecting the two nullspace bases.
std::vector<FqVector> intersection_basis(const HammingPair& hp, const PermTable& tau);

/// dim(D) - dim(D n tau(D)) from the two code bases, without the stacked rank.
std::size_t distension_oracle(const HammingPair& hp, const PermTable& tau);

bool contains(const CodeHandle& code, const FqVector& z);
bool contains(const CodeHandle& code, std::span<const Element> z);

using WordVisitor = std::function<void(std::span<const Element>)>;

/// Visits every codeword exactly once: a in index order, then C-messages,
/// then D-messages, messages in lexicographic order. Throws BudgetExceeded
/// when the code has more than `max_codewords` words.
void enumerate(const CodeHandle& code, const WordVisitor& visit, std::uint64_t max_codewords = kMaxCodewords);

struct RankBasis {
    std::vector<FqVector> b;         ///< (x_a | y_tau(a)), a != 0
    std::vector<FqVector> b_prime;   ///< (z_i | 0)
    std::vector<FqVector> b_second;  ///< (0 | v_j), completing D n tau(D) to D

    std::size_t size() const noexcept { return b.size() + b_prime.size() + b_second.size(); }
    std::vector<FqVector> all() const;
};

RankBasis rank_basis(const CodeHandle& code);

/// N - r - 1 + distension
std::size_t rank_closed_form(const CodeHandle& code);

/// example1_tau(q) iterated i times, followed by the identity on the remaining
/// r - 2i coordinates. Requires q >= 3 prime, r >= 2 and 0 <= i <= r/2.
PermTable series_tau(unsigned q, unsigned r, unsigned i);

}  // namespace propel
