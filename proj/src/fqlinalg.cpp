#include "propel/fqlinalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace propel {

namespace {

void check_entries(const FieldContext& field, const Element* data, Index count) {
    for (Index k = 0; k < count; ++k) {
        if (!field.contains(data[k])) {
            throw std::invalid_argument("element " + std::to_string(data[k]) + " out of range for q=" +
                                        std::to_string(field.q()));
        }
    }
}

// row_dst += factor * row_src over the field, for row-major storage.
void axpy_row(const FieldContext& field, Element* dst, const Element* src, Element factor, Index n) {
    if (factor == 0) return;
    const unsigned q = field.q();
    for (Index k = 0; k < n; ++k) {
        dst[k] = static_cast<Element>((dst[k] + static_cast<unsigned>(factor) * src[k]) % q);
    }
}

}  // namespace

bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

FieldContext::FieldContext(unsigned q) : q_(q) {
    if (q >= 256) throw std::invalid_argument("q must be a prime below 256, got " + std::to_string(q));
    if (!is_prime(q)) throw std::invalid_argument("q must be prime, got " + std::to_string(q));
}

Element FieldContext::inv(Element x) const {
    if (x % q_ == 0) throw std::domain_error("inverse of zero in F_" + std::to_string(q_));
    // Fermat: x^(q-2)
    unsigned result = 1;
    unsigned base = x % q_;
    for (unsigned e = q_ - 2; e > 0; e >>= 1) {
        if (e & 1U) result = (result * base) % q_;
        base = (base * base) % q_;
    }
    return static_cast<Element>(result);
}

void require_same_field(const FieldContext& a, const FieldContext& b, const char* what) {
    if (!(a == b)) {
        throw std::invalid_argument(std::string(what) + ": field mismatch (q=" + std::to_string(a.q()) +
                                    " vs q=" + std::to_string(b.q()) + ")");
    }
}

// ---------------------------------------------------------------------------
// FqVector / FqMatrix

FqVector::FqVector(FieldContext f, Index length) : field(f), entries(ElementVector::Zero(length)) {}

FqVector::FqVector(FieldContext f, ElementVector values) : field(f), entries(std::move(values)) {
    check_entries(field, entries.data(), entries.size());
}

FqVector::FqVector(FieldContext f, std::initializer_list<long long> values)
    : field(f), entries(static_cast<Index>(values.size())) {
    Index k = 0;
    for (long long v : values) entries(k++) = field.reduce(v);
}

bool FqVector::is_zero() const noexcept {
    return std::all_of(entries.data(), entries.data() + entries.size(), [](Element e) { return e == 0; });
}

FqMatrix::FqMatrix(FieldContext f, Index rows, Index cols) : field(f), entries(ElementMatrix::Zero(rows, cols)) {}

FqMatrix::FqMatrix(FieldContext f, ElementMatrix values) : field(f), entries(std::move(values)) {
    check_entries(field, entries.data(), entries.size());
}

FqMatrix::FqMatrix(FieldContext f, std::initializer_list<std::initializer_list<long long>> rows) : field(f) {
    const Index r = static_cast<Index>(rows.size());
    const Index c = r == 0 ? 0 : static_cast<Index>(rows.begin()->size());
    entries.resize(r, c);
    Index i = 0;
    for (const auto& row : rows) {
        if (static_cast<Index>(row.size()) != c) throw std::invalid_argument("ragged matrix literal");
        Index j = 0;
        for (long long v : row) entries(i, j++) = field.reduce(v);
        ++i;
    }
}

FqMatrix FqMatrix::identity(FieldContext f, Index n) {
    return FqMatrix(f, ElementMatrix(ElementMatrix::Identity(n, n)));
}

FqVector FqMatrix::row(Index i) const { return FqVector(field, ElementVector(entries.row(i).transpose())); }

FqVector FqMatrix::col(Index j) const { return FqVector(field, ElementVector(entries.col(j))); }

FqVector operator+(const FqVector& u, const FqVector& v) {
    require_same_field(u.field, v.field, "vector add");
    if (u.size() != v.size()) throw std::invalid_argument("vector add: length mismatch");
    FqVector out = u;
    for (Index k = 0; k < u.size(); ++k) out[k] = u.field.add(u[k], v[k]);
    return out;
}

FqVector operator-(const FqVector& u, const FqVector& v) {
    require_same_field(u.field, v.field, "vector sub");
    if (u.size() != v.size()) throw std::invalid_argument("vector sub: length mismatch");
    FqVector out = u;
    for (Index k = 0; k < u.size(); ++k) out[k] = u.field.sub(u[k], v[k]);
    return out;
}

FqVector operator-(const FqVector& u) {
    FqVector out = u;
    for (Index k = 0; k < u.size(); ++k) out[k] = u.field.neg(u[k]);
    return out;
}

FqVector operator*(Element s, const FqVector& v) {
    FqVector out = v;
    const Element c = v.field.reduce(s);
    for (Index k = 0; k < v.size(); ++k) out[k] = v.field.mul(c, v[k]);
    return out;
}

FqVector concat(const FqVector& u, const FqVector& v) {
    require_same_field(u.field, v.field, "concat");
    ElementVector e(u.size() + v.size());
    e << u.entries, v.entries;
    return FqVector(u.field, std::move(e));
}

FqVector unit_vector(FieldContext f, Index length, Index position) {
    FqVector e(f, length);
    e[position] = 1;
    return e;
}

FqMatrix mat_mul(const FqMatrix& a, const FqMatrix& b) {
    require_same_field(a.field, b.field, "mat_mul");
    if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: inner dimension mismatch");
    const long long q = a.field.q();
    Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> wide =
        a.entries.cast<long long>() * b.entries.cast<long long>();
    ElementMatrix out = wide.unaryExpr([q](long long v) { return static_cast<Element>(v % q); });
    return FqMatrix(a.field, std::move(out));
}

FqVector mat_vec(const FqMatrix& m, const FqVector& x) {
    require_same_field(m.field, x.field, "mat_vec");
    if (m.cols() != x.size()) throw std::invalid_argument("mat_vec: dimension mismatch");
    const long long q = m.field.q();
    Eigen::Matrix<long long, Eigen::Dynamic, 1> wide = m.entries.cast<long long>() * x.entries.cast<long long>();
    ElementVector out = wide.unaryExpr([q](long long v) { return static_cast<Element>(v % q); });
    return FqVector(m.field, std::move(out));
}

FqMatrix transpose(const FqMatrix& m) { return FqMatrix(m.field, ElementMatrix(m.entries.transpose())); }

FqMatrix vstack(const FqMatrix& top, const FqMatrix& bottom) {
    require_same_field(top.field, bottom.field, "vstack");
    if (top.cols() != bottom.cols()) throw std::invalid_argument("vstack: column mismatch");
    ElementMatrix out(top.rows() + bottom.rows(), top.cols());
    out << top.entries, bottom.entries;
    return FqMatrix(top.field, std::move(out));
}

FqMatrix from_rows(FieldContext f, std::span<const FqVector> rows, Index cols) {
    FqMatrix out(f, static_cast<Index>(rows.size()), cols);
    for (Index i = 0; i < out.rows(); ++i) {
        const FqVector& v = rows[static_cast<std::size_t>(i)];
        require_same_field(f, v.field, "from_rows");
        if (v.size() != cols) throw std::invalid_argument("from_rows: length mismatch");
        out.entries.row(i) = v.entries.transpose();
    }
    return out;
}

RowEchelon reduced_row_echelon(const FieldContext& field, ElementMatrix m) {
    RowEchelon result;
    const Index rows = m.rows();
    const Index cols = m.cols();
    Index lead = 0;
    for (Index c = 0; c < cols && lead < rows; ++c) {
        Index pivot = lead;
        while (pivot < rows && m(pivot, c) == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != lead) m.row(pivot).swap(m.row(lead));

        Element* lead_row = m.row(lead).data();
        const Element scale = field.inv(lead_row[c]);
        for (Index k = 0; k < cols; ++k) lead_row[k] = field.mul(lead_row[k], scale);

        for (Index i = 0; i < rows; ++i) {
            if (i == lead || m(i, c) == 0) continue;
            axpy_row(field, m.row(i).data(), lead_row, field.neg(m(i, c)), cols);
        }
        result.pivot_cols.push_back(c);
        ++lead;
    }
    result.reduced = std::move(m);
    return result;
}

std::size_t rank(const FqMatrix& m) { return reduced_row_echelon(m.field, m.entries).pivot_cols.size(); }

std::optional<FqVector> solve(const FqMatrix& m, const FqVector& b) {
    require_same_field(m.field, b.field, "solve");
    if (b.size() != m.rows()) throw std::invalid_argument("solve: right-hand side length mismatch");
    ElementMatrix augmented(m.rows(), m.cols() + 1);
    augmented << m.entries, b.entries;
    const RowEchelon ech = reduced_row_echelon(m.field, std::move(augmented));
    if (!ech.pivot_cols.empty() && ech.pivot_cols.back() == m.cols()) return std::nullopt;

    FqVector x(m.field, m.cols());
    for (std::size_t k = 0; k < ech.pivot_cols.size(); ++k) {
        x[ech.pivot_cols[k]] = ech.reduced(static_cast<Index>(k), m.cols());
    }
    return x;
}

std::vector<FqVector> nullspace_basis(const FqMatrix& m) {
    const RowEchelon ech = reduced_row_echelon(m.field, m.entries);
    std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
    for (Index c : ech.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;

    std::vector<FqVector> basis;
    for (Index free = 0; free < m.cols(); ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        FqVector v(m.field, m.cols());
        v[free] = 1;
        for (std::size_t k = 0; k < ech.pivot_cols.size(); ++k) {
            v[ech.pivot_cols[k]] = m.field.neg(ech.reduced(static_cast<Index>(k), free));
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<FqMatrix> mat_inv(const FqMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("mat_inv: matrix is not square");
    const Index n = m.rows();
    ElementMatrix augmented(n, 2 * n);
    augmented << m.entries, ElementMatrix::Identity(n, n);
    const RowEchelon ech = reduced_row_echelon(m.field, std::move(augmented));
    if (static_cast<Index>(ech.pivot_cols.size()) < n || (n > 0 && ech.pivot_cols[static_cast<std::size_t>(n - 1)] >= n)) {
        return std::nullopt;
    }
    return FqMatrix(m.field, ElementMatrix(ech.reduced.rightCols(n)));
}

bool is_invertible(const FqMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("is_invertible: matrix is not square");
    return rank(m) == static_cast<std::size_t>(m.rows());
}

// ---------------------------------------------------------------------------
// EchelonBasis

EchelonBasis::EchelonBasis(FieldContext field, Index length) : field_(field), length_(length) {}

void EchelonBasis::reduce(std::vector<Element>& v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        const Element c = v[static_cast<std::size_t>(pivots_[k])];
        if (c != 0) axpy_row(field_, v.data(), rows_[k].data(), field_.neg(c), length_);
    }
}

bool EchelonBasis::insert(std::span<const Element> v) {
    if (static_cast<Index>(v.size()) != length_) throw std::invalid_argument("EchelonBasis: length mismatch");
    std::vector<Element> w(v.begin(), v.end());
    reduce(w);
    const auto nz = std::find_if(w.begin(), w.end(), [](Element e) { return e != 0; });
    if (nz == w.end()) return false;
    const Element scale = field_.inv(*nz);
    for (Element& e : w) e = field_.mul(e, scale);
    pivots_.push_back(static_cast<Index>(nz - w.begin()));
    rows_.push_back(std::move(w));
    return true;
}

bool EchelonBasis::spans(std::span<const Element> v) const {
    if (static_cast<Index>(v.size()) != length_) throw std::invalid_argument("EchelonBasis: length mismatch");
    std::vector<Element> w(v.begin(), v.end());
    reduce(w);
    return std::all_of(w.begin(), w.end(), [](Element e) { return e == 0; });
}

std::string to_string(const FqVector& v) {
    std::string s = "(";
    for (Index k = 0; k < v.size(); ++k) {
        if (k) s += ',';
        s += std::to_string(v[k]);
    }
    return s + ")";
}

}  // namespace propel
