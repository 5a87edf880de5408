#pragma once

// Prime-field arithmetic and dense linear algebra over F_q.
//
// Elements are stored as bytes in {0, ..., q-1}; the modulus is carried by a
// FieldContext that every matrix and vector holds alongside its Eigen storage.

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace propel {

using Element = std::uint8_t;
using Index = Eigen::Index;
using ElementMatrix = Eigen::Matrix<Element, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ElementVector = Eigen::Matrix<Element, Eigen::Dynamic, 1>;

bool is_prime(unsigned n);

/// The prime field Z/qZ, q < 256.
class FieldContext {
public:
    /// Throws std::invalid_argument unless q is a prime below 256.
    explicit FieldContext(unsigned q);

    unsigned q() const noexcept { return q_; }

    Element add(Element x, Element y) const noexcept { return static_cast<Element>((x + y) % q_); }
    Element sub(Element x, Element y) const noexcept { return static_cast<Element>((x + q_ - y) % q_); }
    Element mul(Element x, Element y) const noexcept {
        return static_cast<Element>((static_cast<unsigned>(x) * y) % q_);
    }
    Element neg(Element x) const noexcept { return static_cast<Element>((q_ - x) % q_); }
    /// Throws std::domain_error for x == 0.
    Element inv(Element x) const;

    /// Canonical representative of an arbitrary integer, e.g. -1 -> q-1.
    Element reduce(long long v) const noexcept {
        const long long m = static_cast<long long>(q_);
        return static_cast<Element>(((v % m) + m) % m);
    }

    bool contains(Element x) const noexcept { return x < q_; }

    friend bool operator==(const FieldContext& a, const FieldContext& b) noexcept { return a.q_ == b.q_; }

private:
    unsigned q_;
};

/// Throws std::invalid_argument when the two fields differ.
void require_same_field(const FieldContext& a, const FieldContext& b, const char* what);

struct FqVector {
    FieldContext field;
    ElementVector entries;

    FqVector(FieldContext f, Index length);
    FqVector(FieldContext f, ElementVector values);
    /// Literal values are canonicalized mod q.
    FqVector(FieldContext f, std::initializer_list<long long> values);

    Index size() const noexcept { return entries.size(); }
    Element operator[](Index i) const { return entries(i); }
    Element& operator[](Index i) { return entries(i); }
    std::span<const Element> span() const noexcept { return {entries.data(), static_cast<std::size_t>(entries.size())}; }
    bool is_zero() const noexcept;

    friend bool operator==(const FqVector& a, const FqVector& b) {
        return a.field == b.field && a.entries.size() == b.entries.size() && a.entries == b.entries;
    }
};

struct FqMatrix {
    FieldContext field;
    ElementMatrix entries;

    FqMatrix(FieldContext f, Index rows, Index cols);
    FqMatrix(FieldContext f, ElementMatrix values);
    /// Row-major literal; values are canonicalized mod q.
    FqMatrix(FieldContext f, std::initializer_list<std::initializer_list<long long>> rows);

    static FqMatrix identity(FieldContext f, Index n);

    Index rows() const noexcept { return entries.rows(); }
    Index cols() const noexcept { return entries.cols(); }
    Element operator()(Index i, Index j) const { return entries(i, j); }
    Element& operator()(Index i, Index j) { return entries(i, j); }

    FqVector row(Index i) const;
    FqVector col(Index j) const;

    friend bool operator==(const FqMatrix& a, const FqMatrix& b) {
        return a.field == b.field && a.rows() == b.rows() && a.cols() == b.cols() && a.entries == b.entries;
    }
};

// Vector arithmetic.
FqVector operator+(const FqVector& u, const FqVector& v);
FqVector operator-(const FqVector& u, const FqVector& v);
FqVector operator-(const FqVector& u);
FqVector operator*(Element s, const FqVector& v);
/// (u | v)
FqVector concat(const FqVector& u, const FqVector& v);
FqVector unit_vector(FieldContext f, Index length, Index position);

// Matrix arithmetic.
FqMatrix mat_mul(const FqMatrix& a, const FqMatrix& b);
FqVector mat_vec(const FqMatrix& m, const FqVector& x);
FqMatrix transpose(const FqMatrix& m);
/// Rows of `top` followed by rows of `bottom`.
FqMatrix vstack(const FqMatrix& top, const FqMatrix& bottom);
/// Matrix whose rows are the given vectors; `cols` is used when the list is empty.
FqMatrix from_rows(FieldContext f, std::span<const FqVector> rows, Index cols);
std::optional<FqMatrix> mat_inv(const FqMatrix& m);
bool is_invertible(const FqMatrix& m);

/// Reduced row echelon form. Pivots are taken at the first nonzero entry in
/// column order and normalized to 1.
struct RowEchelon {
    ElementMatrix reduced;
    std::vector<Index> pivot_cols;
};

RowEchelon reduced_row_echelon(const FieldContext& field, ElementMatrix m);

std::size_t rank(const FqMatrix& m);

/// Rank of any byte-valued Eigen expression interpreted over `field`.
template <typename Derived>
std::size_t rank(const FieldContext& field, const Eigen::MatrixBase<Derived>& m) {
    return reduced_row_echelon(field, ElementMatrix(m)).pivot_cols.size();
}

/// Some x with m x = b, free variables set to zero; nullopt if inconsistent.
std::optional<FqVector> solve(const FqMatrix& m, const FqVector& b);

/// cols - rank(m) independent solutions of m v = 0, one per free column in
/// ascending order, with a 1 in that free column.
std::vector<FqVector> nullspace_basis(const FqMatrix& m);

/// Incrementally grown row-echelon basis of a subspace of F_q^length.
/// Memory is O(rank * length).
class EchelonBasis {
public:
    EchelonBasis(FieldContext field, Index length);

    /// Returns true if v was independent of the current span (and adds it).
    bool insert(std::span<const Element> v);
    bool insert(const FqVector& v) { return insert(v.span()); }
    bool spans(std::span<const Element> v) const;
    bool spans(const FqVector& v) const { return spans(v.span()); }

    std::size_t rank() const noexcept { return pivots_.size(); }
    Index length() const noexcept { return length_; }
    const FieldContext& field() const noexcept { return field_; }

private:
    void reduce(std::vector<Element>& v) const;

    FieldContext field_;
    Index length_;
    std::vector<std::vector<Element>> rows_;
    std::vector<Index> pivots_;
};

std::string to_string(const FqVector& v);

}  // namespace propel
