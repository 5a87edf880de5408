#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "propel/verifier.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <numeric>
#include <random>

using namespace propel;

namespace {

CodeHandle make_code(unsigned q, unsigned r, const PermTable& tau) { return CodeHandle(build_hamming_pair(q, r), tau); }

std::vector<std::vector<Element>> all_words(const CodeHandle& code) {
    std::vector<std::vector<Element>> words;
    enumerate(code, [&](std::span<const Element> w) { words.emplace_back(w.begin(), w.end()); });
    return words;
}

std::size_t distance(const FqVector& u, const FqVector& v) {
    std::size_t d = 0;
    for (Index k = 0; k < u.size(); ++k) d += u[k] != v[k];
    return d;
}

Isometry random_isometry(unsigned q, std::size_t len, std::mt19937& rng) {
    Isometry phi = Isometry::identity(q, len);
    std::shuffle(phi.sigma.begin(), phi.sigma.end(), rng);
    for (auto& pi : phi.pis) std::shuffle(pi.begin(), pi.end(), rng);
    return phi;
}

}  // namespace

TEST_CASE("check_perfect examples") {
    const Report r22 = check_perfect(make_code(2, 2, PermTable::identity(FieldContext(2), 2)));
    CHECK(r22.result == Outcome::pass);
    CHECK(r22.details["codewords"] == 16);
    CHECK(r22.details["ball_size"] == 8);
    CHECK(r22.details["space_cells"] == 128);
    CHECK(r22.details["overlaps"] == 0);
    CHECK(r22.details["uncovered"] == 0);
    CHECK(r22.details["sphere_packing_equality"] == true);

    const Report r32 = check_perfect(make_code(3, 2, example1_tau(3)));
    CHECK(r32.result == Outcome::pass);
    CHECK(r32.details["codewords"] == 59049);
    CHECK(r32.details["space_cells"] == 1594323);
    CHECK(59049 * 27 == 1594323);

    const Report skipped = check_perfect(make_code(5, 2, example1_tau(5)));
    CHECK(skipped.result == Outcome::skipped);
    CHECK(skipped.details["reason"] == "budget");
    CHECK(skipped.details["space_cells"] == "5^31");
    CHECK_FALSE(skipped.failed());

    CHECK(check_perfect(make_code(2, 2, PermTable::identity(FieldContext(2), 2)), 100).result == Outcome::skipped);
}

TEST_CASE("check_perfect detects corrupted codes") {
    const FieldContext f2(2);
    const CodeHandle code = make_code(2, 2, PermTable::identity(f2, 2));
    auto words = all_words(code);
    CHECK(check_perfect_words(f2, 7, words).result == Outcome::pass);

    auto flipped = words;
    flipped[5][3] ^= 1;
    const Report bad = check_perfect_words(f2, 7, flipped);
    CHECK(bad.result == Outcome::fail);
    CHECK(bad.details["overlaps"].get<std::uint64_t>() > 0);

    auto dropped = words;
    dropped.pop_back();
    const Report short_code = check_perfect_words(f2, 7, dropped);
    CHECK(short_code.result == Outcome::fail);
    CHECK(short_code.details["uncovered"] == 8);

    const FieldContext f3(3);
    auto ternary = all_words(make_code(3, 2, example1_tau(3)));
    ternary[100][7] = static_cast<Element>((ternary[100][7] + 1) % 3);
    CHECK(check_perfect_words(f3, 13, ternary).result == Outcome::fail);
}

TEST_CASE("rank_by_elimination") {
    CHECK(rank_by_elimination(std::vector<FqVector>{}) == 0);
    CHECK(rank_by_elimination(make_code(2, 2, PermTable::identity(FieldContext(2), 2))) == 4);
    CHECK(rank_by_elimination(make_code(3, 2, example1_tau(3))) == 12);
    CHECK(rank_by_elimination(make_code(3, 2, PermTable::identity(FieldContext(3), 2))) == 10);

    std::mt19937 rng(13);
    const FieldContext f5(5);
    for (int t = 0; t < 20; ++t) {
        const FqMatrix m = test::random_matrix(f5, 4, 6, rng);
        std::vector<FqVector> rows;
        for (Index i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
        CHECK(rank_by_elimination(rows) == rank(m));
    }
}

TEST_CASE("audit_rank_basis") {
    const Report ex = audit_rank_basis(make_code(3, 2, example1_tau(3)));
    CHECK(ex.result == Outcome::pass);
    CHECK(ex.details["B"] == 8);
    CHECK(ex.details["B_prime"] == 2);
    CHECK(ex.details["B_second"] == 2);
    CHECK(ex.details["independent_rank"] == 12);
    CHECK(ex.details["full_rank"] == 12);
    CHECK(ex.details["non_members"] == 0);

    const Report big = audit_rank_basis(make_code(3, 4, series_tau(3, 4, 2)));
    CHECK(big.result == Outcome::pass);
    CHECK(big.details["basis_size"] == 120);
    CHECK(big.details["independent_rank"] == 120);
    CHECK(big.details["full_rank"] == "skipped");

    for (auto [q, r] : {std::pair{2U, 2U}, {2U, 3U}, {3U, 2U}}) {
        const CodeHandle code = make_code(q, r, PermTable::identity(FieldContext(q), r));
        const Report rep = audit_rank_basis(code);
        CHECK(rep.result == Outcome::pass);
        CHECK(rep.details["independent_rank"] == static_cast<std::size_t>(code.length()) - r - 1);
    }
}

TEST_CASE("check_additivity") {
    const FieldContext f3(3);
    const PermTable ex = example1_tau(3);
    const PermTable id1 = PermTable::identity(f3, 1);
    const PermTable id2 = PermTable::identity(f3, 2);

    const Report both = check_additivity(ex, ex);
    CHECK(both.result == Outcome::pass);
    CHECK(both.details["l12"] == 4);
    CHECK(both.details["l1"] == 2);

    const Report half = check_additivity(ex, id1);
    CHECK(half.result == Outcome::pass);
    CHECK(half.details["l12"] == 2);

    const Report none = check_additivity(id2, id2);
    CHECK(none.result == Outcome::pass);
    CHECK(none.details["l12"] == 0);
}

TEST_CASE("apply_isometry") {
    const FieldContext f3(3);
    const Isometry id = Isometry::identity(3, 4);
    CHECK(apply_isometry(id, FqVector(f3, {0, 1, 2, 1})) == FqVector(f3, {0, 1, 2, 1}));

    Isometry phi;
    phi.sigma = {1, 0};
    phi.pis = {{0, 1, 2}, {1, 2, 0}};
    phi.validate(3);
    // w[sigma(k)] = pis[sigma(k)](v[k]): w[1] = pis[1](0) = 1, w[0] = pis[0](2) = 2
    CHECK(apply_isometry(phi, FqVector(f3, {0, 2})) == FqVector(f3, {2, 1}));

    std::mt19937 rng(53);
    for (unsigned q : {2U, 3U, 5U}) {
        const FieldContext f(q);
        for (int t = 0; t < 50; ++t) {
            const std::size_t len = 1 + t % 9;
            const Isometry a = random_isometry(q, len, rng);
            const Isometry b = random_isometry(q, len, rng);
            const FqVector u = test::random_vector(f, static_cast<Index>(len), rng);
            const FqVector v = test::random_vector(f, static_cast<Index>(len), rng);
            CHECK(distance(apply_isometry(a, u), apply_isometry(a, v)) == distance(u, v));
            CHECK(apply_isometry(compose(a, b), u) == apply_isometry(a, apply_isometry(b, u)));
        }
    }

    Isometry broken = Isometry::identity(3, 2);
    broken.sigma = {0, 0};
    CHECK_THROWS_AS(broken.validate(3), std::invalid_argument);
    Isometry bad_pi = Isometry::identity(3, 2);
    bad_pi.pis[1] = {0, 0, 1};
    CHECK_THROWS_AS(bad_pi.validate(3), std::invalid_argument);
    CHECK_THROWS_AS(apply_isometry(id, FqVector(f3, 3)), std::invalid_argument);
}

TEST_CASE("translation certificates pass on linear codes") {
    for (auto [q, r] : {std::pair{2U, 2U}, {3U, 1U}, {2U, 3U}}) {
        const CodeHandle code = make_code(q, r, PermTable::identity(FieldContext(q), r));
        const Report rep = check_propelinear_certificate(code, translation_certificate(code));
        CHECK(rep.result == Outcome::pass);
        CHECK(rep.details["mode"] == "exhaustive");
        CHECK(rep.details["checked_pairs_closure"] == code.size() * code.size());
    }
    const FieldContext f2(2);
    const CodeHandle lin = make_code(2, 2, linear_tau(FqMatrix(f2, {{0, 1}, {1, 0}})));
    CHECK(check_propelinear_certificate(lin, translation_certificate(lin)).result == Outcome::pass);

    const CodeHandle t32 = make_code(3, 2, PermTable::identity(FieldContext(3), 2));
    const Report sampled = check_propelinear_certificate(t32, translation_certificate(t32), 2000);
    CHECK(sampled.result == Outcome::probabilistic);
    CHECK(sampled.details["checked_pairs_closure"] == 2000);
}

TEST_CASE("certificate mutations are rejected") {
    const FieldContext f2(2);
    const CodeHandle code = make_code(2, 2, PermTable::identity(f2, 2));
    const PropelinearCertificate good = translation_certificate(code);
    const CodewordKey zero(7, 0);

    SUBCASE("non-preserving isometry fails (i)") {
        PropelinearCertificate cert = good;
        std::swap(cert[zero].sigma[0], cert[zero].sigma[1]);
        const Report rep = check_propelinear_certificate(code, cert);
        CHECK(rep.result == Outcome::fail);
        CHECK(rep.details["failed_check"] == "(i) phi_x(S) = S");
    }
    SUBCASE("wrong image of zero fails (ii)") {
        PropelinearCertificate cert = good;
        auto it = std::next(cert.begin(), 3);
        std::swap(it->second, std::next(cert.begin(), 4)->second);
        const Report rep = check_propelinear_certificate(code, cert);
        CHECK(rep.result == Outcome::fail);
        CHECK(rep.details["failed_check"] == "(ii) phi_x(0) = x");
    }
    SUBCASE("missing codeword fails the domain check") {
        PropelinearCertificate cert = good;
        cert.erase(std::next(cert.begin(), 2));
        const Report rep = check_propelinear_certificate(code, cert);
        CHECK(rep.result == Outcome::fail);
        CHECK(rep.details["failed_check"] == "domain");
    }
    SUBCASE("extra entry fails the domain check") {
        PropelinearCertificate cert = good;
        cert.emplace(CodewordKey{1, 0, 0, 0, 0, 0, 0}, Isometry::identity(2, 7));
        CHECK(check_propelinear_certificate(code, cert).details["failed_check"] == "domain");
    }
    SUBCASE("invalid isometry fails the domain check") {
        PropelinearCertificate cert = good;
        cert[zero].pis[2] = {1, 1};
        CHECK(check_propelinear_certificate(code, cert).details["failed_check"] == "domain");
    }
    SUBCASE("mutated code fails the domain check") {
        const CodeHandle other = make_code(2, 2, PermTable(f2, 2, {0, 2, 3, 1}));
        CHECK(check_propelinear_certificate(other, good).details["failed_check"] == "domain");
    }
    SUBCASE("non-regular family of automorphisms fails (iii)") {
        // phi_x = A + x for a fixed coordinate-permutation automorphism A that
        // moves some codeword: (i) and (ii) hold, closure does not.
        const auto words = all_words(code);
        std::vector<std::uint32_t> perm(7);
        std::iota(perm.begin(), perm.end(), 0);
        bool found = false;
        while (!found && std::next_permutation(perm.begin(), perm.end())) {
            bool preserves = true;
            bool moves = false;
            for (const auto& w : words) {
                std::vector<Element> img(7);
                for (std::size_t k = 0; k < 7; ++k) img[perm[k]] = w[k];
                preserves = preserves && contains(code, std::span<const Element>(img));
                moves = moves || img != w;
            }
            found = preserves && moves;
        }
        REQUIRE(found);
        PropelinearCertificate cert;
        for (const auto& x : words) {
            Isometry phi = Isometry::identity(2, 7);
            phi.sigma = perm;
            for (std::size_t k = 0; k < 7; ++k) {
                for (unsigned s = 0; s < 2; ++s) phi.pis[k][s] = static_cast<Element>((s + x[k]) % 2);
            }
            cert.emplace(x, phi);
        }
        const Report rep = check_propelinear_certificate(code, cert);
        CHECK(rep.result == Outcome::fail);
        CHECK(rep.details["failed_check"] == "(iii) closure");
    }
}

TEST_CASE("translation certificates are rejected on nonlinear codes") {
    // Translations by codewords do not preserve a code of full distension.
    const FieldContext f2(2);
    std::mt19937 rng(4);
    PermTable tau = test::random_zero_fixing_perm(f2, 3, rng);
    while (distension(build_hamming_pair(2, 3), tau) == 0) tau = test::random_zero_fixing_perm(f2, 3, rng);
    const CodeHandle nonlinear = make_code(2, 3, tau);

    PropelinearCertificate cert;
    enumerate(nonlinear, [&](std::span<const Element> w) {
        Isometry phi = Isometry::identity(2, 15);
        for (std::size_t k = 0; k < 15; ++k) phi.pis[k] = {w[k], static_cast<Element>(1 - w[k])};
        cert.emplace(CodewordKey(w.begin(), w.end()), phi);
    });
    CHECK(check_propelinear_certificate(nonlinear, cert).details["failed_check"] == "(i) phi_x(S) = S");
}

TEST_CASE("power_count") {
    CHECK(power_count(3, 13) == 1594323);
    CHECK(power_count(5, 31) == "5^31");
    CHECK(to_string(Outcome::probabilistic) == "probabilistic");
}
