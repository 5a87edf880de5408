#include "propel/affinegroups.hpp"

#include <stdexcept>

namespace propel {

namespace {

using WideMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::string describe_pair(const VectorIndexing& ix, std::uint32_t a, std::uint32_t b) {
    return "a=" + to_string(ix.point(a)) + " b=" + to_string(ix.point(b));
}

// Raw affine action a + M b on index-encoded points, without allocations
// beyond the scratch buffers.
struct PointCodec {
    const VectorIndexing& ix;
    std::vector<std::vector<Element>> digits;

    explicit PointCodec(const VectorIndexing& indexing) : ix(indexing), digits(indexing.size()) {
        for (std::uint32_t k = 0; k < ix.size(); ++k) {
            const FqVector p = ix.point(k);
            digits[k].assign(p.entries.data(), p.entries.data() + p.size());
        }
    }

    std::uint32_t act(std::uint32_t a, const ElementMatrix& m, std::uint32_t b, std::vector<Element>& scratch) const {
        const unsigned r = ix.r();
        const unsigned q = ix.q();
        scratch.resize(r);
        for (unsigned i = 0; i < r; ++i) {
            unsigned acc = digits[a][i];
            for (unsigned j = 0; j < r; ++j) acc += static_cast<unsigned>(m(i, j)) * digits[b][j];
            scratch[i] = static_cast<Element>(acc % q);
        }
        return ix.index(std::span<const Element>(scratch));
    }
};

}  // namespace

// ---------------------------------------------------------------------------
// AffineElement

AffineElement::AffineElement(FqVector a, FqMatrix m) : translation(std::move(a)), linear(std::move(m)) {
    require_same_field(translation.field, linear.field, "AffineElement");
    if (linear.rows() != translation.size() || linear.cols() != translation.size()) {
        throw std::invalid_argument("AffineElement: matrix must be r x r for a translation of length r");
    }
    if (!is_invertible(linear)) throw std::invalid_argument("AffineElement: matrix part is singular");
}

AffineElement AffineElement::identity(FieldContext field, unsigned r) {
    return AffineElement(FqVector(field, r), FqMatrix::identity(field, r));
}

AffineElement compose(const AffineElement& g, const AffineElement& h) {
    if (g.r() != h.r()) throw std::invalid_argument("compose: dimension mismatch");
    return AffineElement(g.translation + mat_vec(g.linear, h.translation), mat_mul(g.linear, h.linear));
}

FqVector apply(const AffineElement& g, const FqVector& b) {
    if (b.size() != g.translation.size()) throw std::invalid_argument("apply: dimension mismatch");
    return g.translation + mat_vec(g.linear, b);
}

AffineElement inverse(const AffineElement& g) {
    FqMatrix m_inv = *mat_inv(g.linear);
    FqVector t = -mat_vec(m_inv, g.translation);
    return AffineElement(std::move(t), std::move(m_inv));
}

// ---------------------------------------------------------------------------
// PermTable

PermTable::PermTable(FieldContext field, unsigned r, std::vector<std::uint32_t> images)
    : indexing_(field, r), images_(std::move(images)) {
    if (images_.size() != indexing_.size()) {
        throw std::invalid_argument("permutation table has " + std::to_string(images_.size()) + " entries, expected " +
                                    std::to_string(indexing_.size()));
    }
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t k = 0; k < images_.size(); ++k) {
        const std::uint32_t v = images_[k];
        if (v >= images_.size()) throw std::invalid_argument("permutation image " + std::to_string(v) + " out of range");
        if (seen[v]) throw std::invalid_argument("permutation is not a bijection: image " + std::to_string(v) + " repeated");
        seen[v] = true;
    }
    if (images_[0] != 0) throw std::invalid_argument("permutation must fix the zero vector");
}

PermTable PermTable::identity(FieldContext field, unsigned r) {
    VectorIndexing ix(field, r);
    std::vector<std::uint32_t> images(ix.size());
    for (std::uint32_t k = 0; k < ix.size(); ++k) images[k] = k;
    return PermTable(field, r, std::move(images));
}

PermTable PermTable::inverse() const {
    std::vector<std::uint32_t> inv(images_.size());
    for (std::uint32_t k = 0; k < images_.size(); ++k) inv[images_[k]] = k;
    return PermTable(field(), r(), std::move(inv));
}

bool PermTable::is_identity() const {
    for (std::uint32_t k = 0; k < images_.size(); ++k) {
        if (images_[k] != k) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// RegularSubgroup

RegularSubgroup::RegularSubgroup(FieldContext field, unsigned r, std::vector<FqMatrix> matrices)
    : indexing_(field, r), matrices_(std::move(matrices)) {
    if (matrices_.size() != indexing_.size()) {
        throw std::invalid_argument("regular subgroup needs " + std::to_string(indexing_.size()) + " matrices, got " +
                                    std::to_string(matrices_.size()));
    }
    for (const FqMatrix& m : matrices_) {
        require_same_field(field, m.field, "RegularSubgroup");
        if (m.rows() != r || m.cols() != r) throw std::invalid_argument("regular subgroup matrices must be r x r");
    }
}

AffineElement RegularSubgroup::element(std::uint32_t idx) const {
    return AffineElement(indexing_.point(idx), matrices_.at(idx));
}

RegularSubgroup translation_group(unsigned q, unsigned r) {
    const FieldContext field(q);
    const VectorIndexing ix(field, r);
    return RegularSubgroup(field, r, std::vector<FqMatrix>(ix.size(), FqMatrix::identity(field, r)));
}

RegularSubgroup example1_group(unsigned q) {
    const FieldContext field(q);
    if (q < 3) throw std::invalid_argument("example1 group requires q >= 3");
    const VectorIndexing ix(field, 2);
    std::vector<FqMatrix> matrices(ix.size(), FqMatrix(field, 2, 2));
    for (long long i = 0; i < q; ++i) {
        for (long long j = 0; j < q; ++j) {
            const FqVector a(field, {i + j * (j - 1), j});
            matrices[ix.index(a)] = FqMatrix(field, {{1, 2 * j}, {0, 1}});
        }
    }
    return RegularSubgroup(field, 2, std::move(matrices));
}

PermTable example1_tau(unsigned q) {
    const FieldContext field(q);
    if (q < 3) throw std::invalid_argument("example1 permutation requires q >= 3");
    const VectorIndexing ix(field, 2);
    std::vector<std::uint32_t> images(ix.size());
    for (long long i = 0; i < q; ++i) {
        for (long long j = 0; j < q; ++j) {
            const FqVector from(field, {i + j * (j - 1), j});
            const FqVector to(field, {j + i * (i - 1), i});
            images[ix.index(from)] = ix.index(to);
        }
    }
    return PermTable(field, 2, std::move(images));
}

VerifyResult verify_regular_subgroup(const RegularSubgroup& group) {
    if (group.order() > kMaxVerifiedOrder) {
        throw std::invalid_argument("verify_regular_subgroup: order exceeds the verification guard 2^10");
    }
    const VectorIndexing& ix = group.indexing();
    const FieldContext& field = group.field();
    const unsigned r = group.r();

    if (!(group.matrix(0) == FqMatrix::identity(field, r))) {
        return VerifyResult::fail("M_0 is not the identity");
    }
    for (std::uint32_t a = 0; a < group.order(); ++a) {
        if (!is_invertible(group.matrix(a))) {
            return VerifyResult::fail("M_a is singular at a=" + to_string(ix.point(a)));
        }
    }

    const PointCodec codec(ix);
    std::vector<Element> scratch;
    std::vector<WideMatrix> wide(group.order());
    for (std::uint32_t a = 0; a < group.order(); ++a) wide[a] = group.matrix(a).entries.cast<int>();
    const int q = static_cast<int>(field.q());

    for (std::uint32_t a = 0; a < group.order(); ++a) {
        const ElementMatrix& ma = group.matrix(a).entries;
        for (std::uint32_t b = 0; b < group.order(); ++b) {
            const std::uint32_t c = codec.act(a, ma, b, scratch);
            const WideMatrix product = (wide[a] * wide[b]).unaryExpr([q](int v) { return v % q; });
            if (product != wide[c]) {
                return VerifyResult::fail("closure fails: M_(a+M_a b) != M_a M_b at " + describe_pair(ix, a, b));
            }
        }
    }
    return VerifyResult::pass();
}

VerifyResult verify_automorphism(const RegularSubgroup& group, const PermTable& tau) {
    if (group.order() > kMaxVerifiedOrder) {
        throw std::invalid_argument("verify_automorphism: order exceeds the verification guard 2^10");
    }
    if (group.q() != tau.q() || group.r() != tau.r()) {
        throw std::invalid_argument("verify_automorphism: group and permutation live on different spaces");
    }
    const VectorIndexing& ix = group.indexing();
    const PointCodec codec(ix);
    std::vector<Element> scratch;
    for (std::uint32_t a = 0; a < group.order(); ++a) {
        const ElementMatrix& ma = group.matrix(a).entries;
        const std::uint32_t ta = tau(a);
        const ElementMatrix& mta = group.matrix(ta).entries;
        for (std::uint32_t b = 0; b < group.order(); ++b) {
            const std::uint32_t lhs = tau(codec.act(a, ma, b, scratch));
            const std::uint32_t rhs = codec.act(ta, mta, tau(b), scratch);
            if (lhs != rhs) {
                return VerifyResult::fail("homomorphism fails: tau(a+M_a b) != tau(a)+M_tau(a) tau(b) at " +
                                          describe_pair(ix, a, b));
            }
        }
    }
    return VerifyResult::pass();
}

PermTable linear_tau(const FqMatrix& l) {
    if (l.rows() != l.cols() || !is_invertible(l)) throw std::invalid_argument("linear_tau: matrix must be invertible");
    const VectorIndexing ix(l.field, static_cast<unsigned>(l.rows()));
    std::vector<std::uint32_t> images(ix.size());
    for (std::uint32_t k = 0; k < ix.size(); ++k) images[k] = ix.index(mat_vec(l, ix.point(k)));
    return PermTable(l.field, static_cast<unsigned>(l.rows()), std::move(images));
}

RegularSubgroup direct_product(const RegularSubgroup& g1, const RegularSubgroup& g2) {
    require_same_field(g1.field(), g2.field(), "direct_product");
    const unsigned r1 = g1.r();
    const unsigned r2 = g2.r();
    const VectorIndexing ix(g1.field(), r1 + r2);
    std::vector<FqMatrix> matrices;
    matrices.reserve(ix.size());
    for (std::uint32_t b = 0; b < g2.order(); ++b) {
        for (std::uint32_t a = 0; a < g1.order(); ++a) {
            // idx(a | b) = idx(a) + q^r1 idx(b), so this loop order is index order.
            FqMatrix m(g1.field(), r1 + r2, r1 + r2);
            m.entries.topLeftCorner(r1, r1) = g1.matrix(a).entries;
            m.entries.bottomRightCorner(r2, r2) = g2.matrix(b).entries;
            matrices.push_back(std::move(m));
        }
    }
    return RegularSubgroup(g1.field(), r1 + r2, std::move(matrices));
}

PermTable iterate_perms(const PermTable& tau1, const PermTable& tau2) {
    require_same_field(tau1.field(), tau2.field(), "iterate_perms");
    const std::uint32_t size1 = tau1.size();
    const VectorIndexing ix(tau1.field(), tau1.r() + tau2.r());
    std::vector<std::uint32_t> images(ix.size());
    for (std::uint32_t b = 0; b < tau2.size(); ++b) {
        for (std::uint32_t a = 0; a < size1; ++a) images[a + size1 * b] = tau1(a) + size1 * tau2(b);
    }
    return PermTable(tau1.field(), tau1.r() + tau2.r(), std::move(images));
}

std::optional<std::pair<PermTable, PermTable>> split_perm(const PermTable& tau, unsigned r1) {
    if (r1 == 0 || r1 >= tau.r()) return std::nullopt;
    const std::uint32_t size1 = static_cast<std::uint32_t>(checked_pow(tau.q(), r1));
    const std::uint32_t size2 = tau.size() / size1;
    std::vector<std::uint32_t> first(size1);
    std::vector<std::uint32_t> second(size2);
    for (std::uint32_t a = 0; a < size1; ++a) first[a] = tau(a) % size1;
    for (std::uint32_t b = 0; b < size2; ++b) second[b] = tau(size1 * b) / size1;
    for (std::uint32_t b = 0; b < size2; ++b) {
        for (std::uint32_t a = 0; a < size1; ++a) {
            if (tau(a + size1 * b) != first[a] + size1 * second[b]) return std::nullopt;
        }
    }
    try {
        return std::make_pair(PermTable(tau.field(), r1, std::move(first)),
                              PermTable(tau.field(), tau.r() - r1, std::move(second)));
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

}  // namespace propel
