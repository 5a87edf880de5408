#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "propel/affinegroups.hpp"
#include "test_support.hpp"

#include <random>
#include <set>

using namespace propel;

namespace {

AffineElement h_generator(const FieldContext& f) { return AffineElement(FqVector(f, {0, 1}), FqMatrix(f, {{1, 2}, {0, 1}})); }

AffineElement power(const AffineElement& g, unsigned k) {
    AffineElement out = AffineElement::identity(g.translation.field, g.r());
    for (unsigned t = 0; t < k; ++t) out = compose(out, g);
    return out;
}

AffineElement random_element(const FieldContext& f, unsigned r, std::mt19937& rng) {
    return AffineElement(test::random_vector(f, r, rng), test::random_invertible(f, r, rng));
}

}  // namespace

TEST_CASE("compose, apply and inverse examples") {
    const FieldContext f3(3);
    const AffineElement g(FqVector(f3, {1, 0}), FqMatrix(f3, {{1, 2}, {0, 1}}));
    const AffineElement t(FqVector(f3, {0, 1}), FqMatrix::identity(f3, 2));
    const AffineElement gt = compose(g, t);
    CHECK(gt.translation == FqVector(f3, {0, 1}));
    CHECK(gt.linear == FqMatrix(f3, {{1, 2}, {0, 1}}));

    const AffineElement id = AffineElement::identity(f3, 2);
    CHECK(compose(g, id) == g);

    const AffineElement h = h_generator(f3);
    const AffineElement hh = compose(h, h);
    CHECK(hh.translation == FqVector(f3, {2, 2}));
    CHECK(hh.linear == FqMatrix(f3, {{1, 1}, {0, 1}}));

    CHECK(apply(id, FqVector(f3, {2, 1})) == FqVector(f3, {2, 1}));
    CHECK(apply(AffineElement(FqVector(f3, {1, 0}), FqMatrix::identity(f3, 2)), FqVector(f3, {2, 2})) ==
          FqVector(f3, {0, 2}));
    CHECK(apply(h, FqVector(f3, {1, 0})) == FqVector(f3, {1, 1}));

    CHECK(inverse(id) == id);
    const AffineElement shift_inv = inverse(AffineElement(FqVector(f3, {1, 0}), FqMatrix::identity(f3, 2)));
    CHECK(shift_inv.translation == FqVector(f3, {2, 0}));
    CHECK(compose(inverse(h), h) == id);
    CHECK(compose(h, inverse(h)) == id);

    CHECK_THROWS_AS(AffineElement(FqVector(f3, {0, 0}), FqMatrix(f3, {{1, 2}, {2, 1}})), std::invalid_argument);
    CHECK_THROWS_AS(compose(g, AffineElement::identity(f3, 3)), std::invalid_argument);
    CHECK_THROWS_AS(apply(g, FqVector(f3, {1})), std::invalid_argument);
}

TEST_CASE("group axioms on random elements") {
    std::mt19937 rng(3);
    for (unsigned q : {2U, 3U, 5U}) {
        const FieldContext f(q);
        for (int t = 0; t < 40; ++t) {
            const unsigned r = 1 + t % 3;
            const AffineElement a = random_element(f, r, rng);
            const AffineElement b = random_element(f, r, rng);
            const AffineElement c = random_element(f, r, rng);
            CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
            CHECK(compose(a, inverse(a)) == AffineElement::identity(f, r));
            const FqVector v = test::random_vector(f, r, rng);
            CHECK(apply(compose(a, b), v) == apply(a, apply(b, v)));
        }
    }
}

TEST_CASE("translation group") {
    const RegularSubgroup g22 = translation_group(2, 2);
    CHECK(g22.order() == 4);
    for (std::uint32_t k = 0; k < 4; ++k) CHECK(g22.matrix(k) == FqMatrix::identity(FieldContext(2), 2));
    CHECK(verify_regular_subgroup(g22));
    CHECK(translation_group(3, 1).order() == 3);
    CHECK(verify_regular_subgroup(translation_group(3, 2)));
}

TEST_CASE("example1 group matches g^i h^j computed by composition") {
    for (unsigned q : {3U, 5U, 7U}) {
        const FieldContext f(q);
        const RegularSubgroup group = example1_group(q);
        const AffineElement g(FqVector(f, {1, 0}), FqMatrix::identity(f, 2));
        const AffineElement h = h_generator(f);
        std::set<std::uint32_t> translations;
        for (unsigned i = 0; i < q; ++i) {
            for (unsigned j = 0; j < q; ++j) {
                const AffineElement gh = compose(power(g, i), power(h, j));
                const std::uint32_t idx = group.indexing().index(gh.translation);
                translations.insert(idx);
                CHECK(group.matrix(idx) == gh.linear);
            }
        }
        CHECK(translations.size() == static_cast<std::size_t>(q) * q);
    }

    const FieldContext f3(3);
    const RegularSubgroup g3 = example1_group(3);
    CHECK(g3.matrix(g3.indexing().index(FqVector(f3, {2, 0}))) == FqMatrix::identity(f3, 2));
    CHECK(g3.matrix(g3.indexing().index(FqVector(f3, {2, 2}))) == FqMatrix(f3, {{1, 1}, {0, 1}}));

    CHECK_THROWS_AS(example1_group(2), std::invalid_argument);
    CHECK_THROWS_AS(example1_group(9), std::invalid_argument);
    CHECK_THROWS_AS(example1_tau(2), std::invalid_argument);
}

TEST_CASE("example1 group is elementary abelian of order q^2") {
    for (unsigned q : {3U, 5U}) {
        const RegularSubgroup group = example1_group(q);
        const FieldContext f(q);
        const AffineElement id = AffineElement::identity(f, 2);
        for (std::uint32_t a = 0; a < group.order(); ++a) {
            const AffineElement ga = group.element(a);
            CHECK(power(ga, q) == id);
            for (std::uint32_t b = 0; b < group.order(); ++b) {
                const AffineElement gb = group.element(b);
                CHECK(compose(ga, gb) == compose(gb, ga));
            }
        }
    }
}

TEST_CASE("verify_regular_subgroup") {
    CHECK(verify_regular_subgroup(example1_group(5)));
    CHECK(verify_regular_subgroup(example1_group(7)));

    RegularSubgroup corrupted = example1_group(3);
    const FieldContext f3(3);
    corrupted.matrix(corrupted.indexing().index(FqVector(f3, {1, 0}))) = FqMatrix(f3, {{1, 1}, {0, 1}});
    const VerifyResult res = verify_regular_subgroup(corrupted);
    CHECK_FALSE(res);
    CHECK(res.diagnostic.find("closure") != std::string::npos);

    RegularSubgroup bad_identity = translation_group(3, 2);
    bad_identity.matrix(0) = FqMatrix(f3, {{2, 0}, {0, 1}});
    CHECK_FALSE(verify_regular_subgroup(bad_identity));

    RegularSubgroup singular = translation_group(3, 2);
    singular.matrix(4) = FqMatrix(f3, 2, 2);
    CHECK_FALSE(verify_regular_subgroup(singular));

    CHECK_THROWS_AS(verify_regular_subgroup(translation_group(2, 11)), std::invalid_argument);
}

TEST_CASE("example1 tau") {
    const FieldContext f3(3);
    const PermTable tau = example1_tau(3);
    CHECK(tau(FqVector(f3, {1, 0})) == FqVector(f3, {0, 1}));
    CHECK(tau(FqVector(f3, {0, 1})) == FqVector(f3, {1, 0}));
    // (i,j) = (-1,-2) and (0,2)
    CHECK(tau(FqVector(f3, {5, -2})) == FqVector(f3, {0, -1}));
    CHECK(tau(FqVector(f3, {2, 2})) == FqVector(f3, {2, 0}));
    CHECK(tau.images() == std::vector<std::uint32_t>{0, 3, 8, 1, 4, 6, 5, 7, 2});

    for (unsigned q : {3U, 5U, 7U, 11U}) {
        const PermTable t = example1_tau(q);
        CHECK(t(0) == 0);
        for (std::uint32_t k = 0; k < t.size(); ++k) CHECK(t(t(k)) == k);
        CHECK(t.inverse() == t);
    }
    CHECK_FALSE(example1_tau(7).is_identity());
}

TEST_CASE("verify_automorphism") {
    const RegularSubgroup g3 = example1_group(3);
    CHECK(verify_automorphism(g3, PermTable::identity(FieldContext(3), 2)));
    CHECK(verify_automorphism(g3, example1_tau(3)));
    CHECK(verify_automorphism(example1_group(5), example1_tau(5)));
    CHECK(verify_automorphism(example1_group(7), example1_tau(7)));

    const VerifyResult res = verify_automorphism(translation_group(3, 2), example1_tau(3));
    CHECK_FALSE(res);
    CHECK(res.diagnostic.find("homomorphism") != std::string::npos);

    CHECK_THROWS_AS(verify_automorphism(g3, PermTable::identity(FieldContext(3), 3)), std::invalid_argument);
}

TEST_CASE("PermTable validation") {
    const FieldContext f2(2);
    CHECK_THROWS_AS(PermTable(f2, 2, {0, 1, 1, 3}), std::invalid_argument);
    CHECK_THROWS_AS(PermTable(f2, 2, {1, 0, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(PermTable(f2, 2, {0, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(PermTable(f2, 2, {0, 1, 2, 4}), std::invalid_argument);
    CHECK_NOTHROW(PermTable(f2, 2, {0, 2, 1, 3}));
}

TEST_CASE("linear_tau") {
    const FieldContext f2(2);
    CHECK(linear_tau(FqMatrix::identity(f2, 2)).is_identity());
    CHECK(linear_tau(FqMatrix(f2, {{0, 1}, {1, 0}})).images() == std::vector<std::uint32_t>{0, 2, 1, 3});
    CHECK_THROWS_AS(linear_tau(FqMatrix(f2, {{1, 1}, {1, 1}})), std::invalid_argument);

    std::mt19937 rng(17);
    for (unsigned q : {2U, 3U, 5U}) {
        const FieldContext f(q);
        for (unsigned r : {1U, 2U, 3U}) {
            const PermTable tau = linear_tau(test::random_invertible(f, r, rng));
            CHECK(verify_automorphism(translation_group(q, r), tau));
        }
    }
}

TEST_CASE("direct products and iterated permutations") {
    const FieldContext f3(3);
    const RegularSubgroup tt = direct_product(translation_group(3, 1), translation_group(3, 2));
    CHECK(tt.order() == 27);
    for (std::uint32_t k = 0; k < tt.order(); ++k) CHECK(tt.matrix(k) == FqMatrix::identity(f3, 3));

    const RegularSubgroup ex_t = direct_product(example1_group(3), translation_group(3, 1));
    CHECK(ex_t.order() == 27);
    CHECK(verify_regular_subgroup(ex_t));

    const PermTable id2 = PermTable::identity(f3, 2);
    CHECK(iterate_perms(id2, PermTable::identity(f3, 1)).is_identity());

    const PermTable ex_id = iterate_perms(example1_tau(3), PermTable::identity(f3, 1));
    CHECK(ex_id(FqVector(f3, {1, 0, 2})) == FqVector(f3, {0, 1, 2}));
    CHECK(verify_automorphism(ex_t, ex_id));

    // q=3, r=4 composite: (G x G, tau | tau)
    const RegularSubgroup gg = direct_product(example1_group(3), example1_group(3));
    const PermTable tt_perm = iterate_perms(example1_tau(3), example1_tau(3));
    CHECK(verify_regular_subgroup(gg));
    CHECK(verify_automorphism(gg, tt_perm));
    CHECK(verify_automorphism(gg, iterate_perms(example1_tau(3), id2)));
    CHECK_FALSE(verify_automorphism(direct_product(translation_group(3, 2), example1_group(3)), tt_perm));

    const auto parts = split_perm(tt_perm, 2);
    REQUIRE(parts);
    CHECK(parts->first == example1_tau(3));
    CHECK(parts->second == example1_tau(3));
    CHECK_FALSE(split_perm(example1_tau(3), 1));
    CHECK_FALSE(split_perm(tt_perm, 0));

    CHECK_THROWS_AS(iterate_perms(id2, PermTable::identity(FieldContext(2), 1)), std::invalid_argument);
    CHECK_THROWS_AS(direct_product(translation_group(2, 1), translation_group(3, 1)), std::invalid_argument);
}

TEST_CASE("iteration preserves the automorphism property for random linear blocks") {
    std::mt19937 rng(23);
    const FieldContext f3(3);
    for (int t = 0; t < 5; ++t) {
        const PermTable lin = linear_tau(test::random_invertible(f3, 2, rng));
        const RegularSubgroup group = direct_product(example1_group(3), translation_group(3, 2));
        CHECK(verify_automorphism(group, iterate_perms(example1_tau(3), lin)));
    }
}
