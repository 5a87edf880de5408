#pragma once

// The general affine group GA(r,q), regular subgroups given as tables of
// matrix parts, and permutations of F_q^r induced by their automorphisms.

#include "propel/fqlinalg.hpp"
#include "propel/hammingkit.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace propel {

/// The transformation b -> a + M b.
struct AffineElement {
    FqVector translation;
    FqMatrix linear;

    /// Throws std::invalid_argument if M is not square, invertible and r x r.
    AffineElement(FqVector a, FqMatrix m);

    static AffineElement identity(FieldContext field, unsigned r);

    unsigned r() const noexcept { return static_cast<unsigned>(translation.size()); }

    friend bool operator==(const AffineElement& g, const AffineElement& h) {
        return g.translation == h.translation && g.linear == h.linear;
    }
};

/// (a, M)(b, M') = (a + M b, M M')
AffineElement compose(const AffineElement& g, const AffineElement& h);
FqVector apply(const AffineElement& g, const FqVector& b);
/// (-M^-1 a, M^-1)
AffineElement inverse(const AffineElement& g);

/// A permutation of F_q^r (by index) that fixes the zero vector.
class PermTable {
public:
    /// Throws std::invalid_argument unless `images` is a bijection of
    /// {0, ..., q^r - 1} with images[0] == 0.
    PermTable(FieldContext field, unsigned r, std::vector<std::uint32_t> images);

    static PermTable identity(FieldContext field, unsigned r);

    const VectorIndexing& indexing() const noexcept { return indexing_; }
    const FieldContext& field() const noexcept { return indexing_.field(); }
    unsigned q() const noexcept { return indexing_.q(); }
    unsigned r() const noexcept { return indexing_.r(); }
    std::uint32_t size() const noexcept { return indexing_.size(); }

    std::uint32_t operator()(std::uint32_t idx) const { return images_[idx]; }
    FqVector operator()(const FqVector& a) const { return indexing_.point(images_[indexing_.index(a)]); }
    const std::vector<std::uint32_t>& images() const noexcept { return images_; }

    PermTable inverse() const;
    bool is_identity() const;

    friend bool operator==(const PermTable& a, const PermTable& b) {
        return a.q() == b.q() && a.r() == b.r() && a.images_ == b.images_;
    }

private:
    VectorIndexing indexing_;
    std::vector<std::uint32_t> images_;
};

/// Group of order q^r in GA(r,q) whose element sending 0 to a is (a, M_a).
/// Construction only checks shapes; use verify_regular_subgroup for the group laws.
class RegularSubgroup {
public:
    RegularSubgroup(FieldContext field, unsigned r, std::vector<FqMatrix> matrices);

    const VectorIndexing& indexing() const noexcept { return indexing_; }
    const FieldContext& field() const noexcept { return indexing_.field(); }
    unsigned q() const noexcept { return indexing_.q(); }
    unsigned r() const noexcept { return indexing_.r(); }
    std::uint32_t order() const noexcept { return indexing_.size(); }

    const FqMatrix& matrix(std::uint32_t idx) const { return matrices_.at(idx); }
    FqMatrix& matrix(std::uint32_t idx) { return matrices_.at(idx); }
    /// g_a = (a, M_a). Throws if M_a is singular.
    AffineElement element(std::uint32_t idx) const;

private:
    VectorIndexing indexing_;
    std::vector<FqMatrix> matrices_;
};

struct VerifyResult {
    bool ok = true;
    std::string diagnostic;

    explicit operator bool() const noexcept { return ok; }
    static VerifyResult pass() { return {}; }
    static VerifyResult fail(std::string why) { return {false, std::move(why)}; }
};

/// Exhaustive checks are limited to q^r <= 2^10 (q^2r pairs).
inline constexpr std::uint32_t kMaxVerifiedOrder = 1U << 10;

RegularSubgroup translation_group(unsigned q, unsigned r);

/// <g, h> with g = ((1,0), I) and h = ((0,1), [[1,2],[0,1]]): the element
/// g^i h^j sits at ((i + j(j-1)), j) with matrix [[1, 2j], [0, 1]].
RegularSubgroup example1_group(unsigned q);

/// Induced by the automorphism g^i h^j -> g^j h^i of example1_group(q).
PermTable example1_tau(unsigned q);

/// M_0 = I, every M_a invertible, and M_{a + M_a b} = M_a M_b for all a, b.
/// Reports the first failing pair in (a, b) index order.
VerifyResult verify_regular_subgroup(const RegularSubgroup& group);

/// g_a -> g_tau(a) is a homomorphism: tau(a + M_a b) = tau(a) + M_tau(a) tau(b).
VerifyResult verify_automorphism(const RegularSubgroup& group, const PermTable& tau);

/// tau(a) = L a. Throws for singular L.
PermTable linear_tau(const FqMatrix& l);

/// G1 (x) G2 on F_q^(r1+r2), block-diagonal matrix parts.
RegularSubgroup direct_product(const RegularSubgroup& g1, const RegularSubgroup& g2);

/// (tau1 | tau2)(a | b) = (tau1(a) | tau2(b)).
PermTable iterate_perms(const PermTable& tau1, const PermTable& tau2);

/// Inverse of iterate_perms: returns (tau1, tau2) if tau acts block-wise on
/// the first r1 and last r - r1 coordinates.
std::optional<std::pair<PermTable, PermTable>> split_perm(const PermTable& tau, unsigned r1);

}  // namespace propel
