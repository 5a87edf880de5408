#include "propel/hammingkit.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace propel {

std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
    std::uint64_t result = 1;
    for (unsigned k = 0; k < exp; ++k) {
        if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        result *= base;
    }
    return result;
}

std::uint64_t hamming_length(unsigned q, unsigned r) { return (checked_pow(q, r) - 1) / (q - 1); }

VectorIndexing::VectorIndexing(FieldContext field, unsigned r) : field_(field), r_(r), size_(0) {
    if (r == 0) throw std::invalid_argument("r must be at least 1");
    const std::uint64_t count = checked_pow(field.q(), r);
    if (count > kMaxPointCount) {
        throw std::invalid_argument("q^r = " + std::to_string(field.q()) + "^" + std::to_string(r) +
                                    " exceeds the size guard 2^20");
    }
    size_ = static_cast<std::uint32_t>(count);
}

std::uint32_t VectorIndexing::index(std::span<const Element> a) const {
    if (a.size() != r_) throw std::invalid_argument("point has wrong dimension");
    std::uint32_t idx = 0;
    for (std::size_t k = a.size(); k-- > 0;) idx = idx * q() + a[k];
    return idx;
}

std::uint32_t VectorIndexing::index(const FqVector& a) const {
    require_same_field(field_, a.field, "index");
    return index(a.span());
}

FqVector VectorIndexing::point(std::uint32_t idx) const {
    if (idx >= size_) throw std::out_of_range("point index out of range");
    FqVector a(field_, static_cast<Index>(r_));
    for (unsigned k = 0; k < r_; ++k) {
        a[k] = static_cast<Element>(idx % q());
        idx /= q();
    }
    return a;
}

HammingPair build_hamming_pair(unsigned q, unsigned r) {
    const FieldContext field(q);
    VectorIndexing indexing(field, r);
    const std::uint32_t points = indexing.size();
    const Index n = static_cast<Index>(hamming_length(q, r));

    HammingPair hp{indexing, FqMatrix(field, r, n), FqMatrix(field, r, points), FqMatrix(field, r + 1, points),
                   std::vector<std::int32_t>(points, -1)};

    Index next_col = 0;
    for (std::uint32_t idx = 0; idx < points; ++idx) {
        const FqVector a = indexing.point(idx);
        hp.h_prime.entries.col(idx) = a.entries;
        hp.h_d(0, idx) = 1;
        hp.h_d.entries.col(idx).tail(r) = a.entries;

        Index first = 0;
        while (first < a.size() && a[first] == 0) ++first;
        if (first < a.size() && a[first] == 1) {
            hp.h_c.entries.col(next_col) = a.entries;
            hp.column_of_point[idx] = static_cast<std::int32_t>(next_col);
            ++next_col;
        }
    }
    return hp;
}

FqMatrix build_stacked_parity(const HammingPair& hp) {
    const Index r = hp.r();
    FqMatrix out(hp.field(), r + 1, hp.full_length());
    out.entries.block(0, hp.n(), 1, hp.point_count()).setOnes();
    out.entries.block(1, 0, r, hp.n()) = hp.h_c.entries;
    out.entries.block(1, hp.n(), r, hp.point_count()) = hp.h_prime.entries;
    return out;
}

FqVector syndrome(const FqMatrix& h, const FqVector& x) {
    if (x.size() != h.cols()) throw std::invalid_argument("syndrome: word length does not match parity matrix");
    return mat_vec(h, x);
}

FqVector coset_rep_C(const HammingPair& hp, std::uint32_t a_idx) {
    FqVector x(hp.field(), hp.n());
    if (a_idx == 0) return x;
    const FqVector a = hp.indexing.point(a_idx);
    Index first = 0;
    while (a[first] == 0) ++first;
    const Element lambda = a[first];
    const FqVector normalized = hp.field().inv(lambda) * a;
    const std::int32_t col = hp.column_of_point[hp.indexing.index(normalized)];
    x[col] = lambda;
    return x;
}

FqVector coset_rep_C(const HammingPair& hp, const FqVector& a) { return coset_rep_C(hp, hp.indexing.index(a)); }

FqVector coset_leader_D(const HammingPair& hp, std::uint32_t a_idx) {
    FqVector y(hp.field(), hp.point_count());
    if (a_idx == 0) return y;
    y[0] = 1;
    y[a_idx] = hp.field().neg(1);
    return y;
}

FqVector coset_leader_D(const HammingPair& hp, const FqVector& a) {
    return coset_leader_D(hp, hp.indexing.index(a));
}

}  // namespace propel
