#include "propel/mollard.hpp"

#include <limits>
#include <string>

namespace propel {

CodeHandle::CodeHandle(HammingPair hp, PermTable tau)
    : hp_(std::move(hp)), tau_(std::move(tau)), c_basis_(nullspace_basis(hp_.h_c)), d_basis_(nullspace_basis(hp_.h_d)) {
    if (tau_.q() != hp_.q() || tau_.r() != hp_.r()) {
        throw std::invalid_argument("CodeHandle: permutation is over F_" + std::to_string(tau_.q()) + "^" +
                                    std::to_string(tau_.r()) + ", Hamming pair over F_" + std::to_string(hp_.q()) +
                                    "^" + std::to_string(hp_.r()));
    }
    reps_.reserve(hp_.indexing.size());
    for (std::uint32_t a = 0; a < hp_.indexing.size(); ++a) reps_.push_back(coset_rep_C(hp_, a));
}

std::uint64_t CodeHandle::size() const noexcept {
    return checked_pow(q(), static_cast<unsigned>(length()) - r() - 1);
}

CodeHandle CodeHandle::with_representatives(std::vector<FqVector> reps) const {
    if (reps.size() != reps_.size()) throw std::invalid_argument("with_representatives: need one word per coset");
    for (std::uint32_t a = 0; a < reps.size(); ++a) {
        if (reps[a].size() != n() || hp_.indexing.index(syndrome(hp_.h_c, reps[a])) != a) {
            throw std::invalid_argument("with_representatives: word " + std::to_string(a) + " is not in C_a");
        }
    }
    CodeHandle copy = *this;
    copy.reps_ = std::move(reps);
    return copy;
}

FqMatrix permuted_parity(const HammingPair& hp, const PermTable& tau) {
    FqMatrix out(hp.field(), hp.h_d.rows(), hp.h_d.cols());
    for (std::uint32_t b = 0; b < tau.size(); ++b) out.entries.col(tau(b)) = hp.h_d.entries.col(b);
    return out;
}

FqVector permute_word(const PermTable& tau, const FqVector& y) {
    if (y.size() != static_cast<Index>(tau.size())) throw std::invalid_argument("permute_word: length mismatch");
    FqVector out(y.field, y.size());
    for (std::uint32_t a = 0; a < tau.size(); ++a) out[tau(a)] = y[a];
    return out;
}

std::size_t distension(const HammingPair& hp, const PermTable& tau) {
    return rank(vstack(hp.h_d, permuted_parity(hp, tau))) - (hp.r() + 1);
}

std::vector<FqVector> intersection_basis(const HammingPair& hp, const PermTable& tau) {
    const FieldContext& field = hp.field();
    const std::vector<FqVector> d = nullspace_basis(hp.h_d);
    const std::vector<FqVector> t = nullspace_basis(permuted_parity(hp, tau));
    const Index len = hp.point_count();
    const Index kd = static_cast<Index>(d.size());
    const Index kt = static_cast<Index>(t.size());

    // sum alpha_i d_i - sum beta_j t_j = 0
    FqMatrix system(field, len, kd + kt);
    for (Index i = 0; i < kd; ++i) system.entries.col(i) = d[static_cast<std::size_t>(i)].entries;
    for (Index j = 0; j < kt; ++j) system.entries.col(kd + j) = (-t[static_cast<std::size_t>(j)]).entries;

    std::vector<FqVector> basis;
    for (const FqVector& coeffs : nullspace_basis(system)) {
        FqVector w(field, len);
        for (Index i = 0; i < kd; ++i) {
            if (coeffs[i] != 0) w = w + coeffs[i] * d[static_cast<std::size_t>(i)];
        }
        basis.push_back(std::move(w));
    }
    return basis;
}

std::size_t distension_oracle(const HammingPair& hp, const PermTable& tau) {
    const std::size_t dim_d = nullspace_basis(hp.h_d).size();
    return dim_d - intersection_basis(hp, tau).size();
}

bool contains(const CodeHandle& code, std::span<const Element> z) {
    const HammingPair& hp = code.hamming();
    if (static_cast<Index>(z.size()) != code.length()) throw std::invalid_argument("contains: word length mismatch");
    const FieldContext& field = code.field();
    const unsigned q = field.q();
    const Index n = code.n();
    const Index r = code.r();

    std::vector<Element> a(static_cast<std::size_t>(r), 0);
    for (Index i = 0; i < r; ++i) {
        unsigned acc = 0;
        for (Index j = 0; j < n; ++j) acc += static_cast<unsigned>(hp.h_c(i, j)) * z[static_cast<std::size_t>(j)];
        a[static_cast<std::size_t>(i)] = static_cast<Element>(acc % q);
    }
    const FqVector target = hp.indexing.point(code.tau()(hp.indexing.index(std::span<const Element>(a))));

    // H_D y = -(0 | tau(a))
    for (Index i = 0; i <= r; ++i) {
        unsigned acc = 0;
        for (Index j = 0; j < hp.point_count(); ++j) {
            acc += static_cast<unsigned>(hp.h_d(i, j)) * z[static_cast<std::size_t>(n + j)];
        }
        const Element expected = i == 0 ? 0 : field.neg(target[i - 1]);
        if (acc % q != expected) return false;
    }
    return true;
}

bool contains(const CodeHandle& code, const FqVector& z) {
    require_same_field(code.field(), z.field, "contains");
    return contains(code, z.span());
}

void enumerate(const CodeHandle& code, const WordVisitor& visit, std::uint64_t max_codewords) {
    if (code.size() > max_codewords) {
        throw BudgetExceeded("enumeration of " + std::to_string(code.size()) + " codewords exceeds the budget of " +
                             std::to_string(max_codewords));
    }
    const unsigned q = code.q();
    const std::size_t len = static_cast<std::size_t>(code.length());
    const std::size_t n = static_cast<std::size_t>(code.n());

    std::vector<std::vector<Element>> generators;
    for (const FqVector& z : code.c_basis()) {
        std::vector<Element> g(len, 0);
        std::copy(z.entries.data(), z.entries.data() + z.size(), g.begin());
        generators.push_back(std::move(g));
    }
    for (const FqVector& d : code.d_basis()) {
        std::vector<Element> g(len, 0);
        std::copy(d.entries.data(), d.entries.data() + d.size(), g.begin() + static_cast<std::ptrdiff_t>(n));
        generators.push_back(std::move(g));
    }

    const HammingPair& hp = code.hamming();
    std::vector<Element> word(len);
    std::vector<unsigned> digits(generators.size());
    for (std::uint32_t a = 0; a < hp.indexing.size(); ++a) {
        const FqVector& x = code.representative(a);
        const FqVector y = coset_leader_D(hp, code.tau()(a));
        std::copy(x.entries.data(), x.entries.data() + x.size(), word.begin());
        std::copy(y.entries.data(), y.entries.data() + y.size(), word.begin() + static_cast<std::ptrdiff_t>(n));
        std::fill(digits.begin(), digits.end(), 0U);

        // Odometer over messages; bumping digit k adds generator k, and a
        // wrap from q-1 to 0 is the same addition since q g_k = 0.
        while (true) {
            visit(std::span<const Element>(word));
            std::size_t k = generators.size();
            bool done = true;
            while (k-- > 0) {
                const std::vector<Element>& g = generators[k];
                for (std::size_t t = 0; t < len; ++t) word[t] = static_cast<Element>((word[t] + g[t]) % q);
                if (++digits[k] < q) {
                    done = false;
                    break;
                }
                digits[k] = 0;
            }
            if (done) break;
        }
    }
}

std::vector<FqVector> RankBasis::all() const {
    std::vector<FqVector> out = b;
    out.insert(out.end(), b_prime.begin(), b_prime.end());
    out.insert(out.end(), b_second.begin(), b_second.end());
    return out;
}

RankBasis rank_basis(const CodeHandle& code) {
    const HammingPair& hp = code.hamming();
    const FieldContext& field = code.field();
    RankBasis basis;

    for (std::uint32_t a = 1; a < hp.indexing.size(); ++a) {
        basis.b.push_back(concat(code.representative(a), coset_leader_D(hp, code.tau()(a))));
    }
    const FqVector zero_right(field, hp.point_count());
    for (const FqVector& z : code.c_basis()) basis.b_prime.push_back(concat(z, zero_right));

    EchelonBasis span(field, hp.point_count());
    for (const FqVector& w : intersection_basis(hp, code.tau())) span.insert(w);
    const FqVector zero_left(field, hp.n());
    for (const FqVector& d : code.d_basis()) {
        if (span.insert(d)) basis.b_second.push_back(concat(zero_left, d));
    }
    return basis;
}

std::size_t rank_closed_form(const CodeHandle& code) {
    return static_cast<std::size_t>(code.length()) - code.r() - 1 + distension(code.hamming(), code.tau());
}

PermTable series_tau(unsigned q, unsigned r, unsigned i) {
    const FieldContext field(q);
    if (q < 3) throw std::invalid_argument("series requires q >= 3");
    if (r < 2) throw std::invalid_argument("series requires r >= 2");
    if (2 * i > r) throw std::invalid_argument("series index i must satisfy 0 <= i <= floor(r/2)");
    if (i == 0) return PermTable::identity(field, r);

    PermTable tau = example1_tau(q);
    for (unsigned k = 1; k < i; ++k) tau = iterate_perms(tau, example1_tau(q));
    if (r > 2 * i) tau = iterate_perms(tau, PermTable::identity(field, r - 2 * i));
    return tau;
}

}  // namespace propel
