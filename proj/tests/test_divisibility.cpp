#include "gsq/divisibility.hpp"

#include "doctest.h"
#include "helpers.hpp"

using namespace gsq;

TEST_CASE("zero-mean divisibility verdicts") {
    auto [id_ok, sig] = zero_mean_id(th::cov_zero_entry());
    CHECK(id_ok);
    REQUIRE(sig.has_value());
    CHECK(sig->signs == std::vector<int>{1, 1, 1});

    auto [id_identity, sig_identity] = zero_mean_id(SymMatrix::identity(3));
    CHECK(id_identity);
    REQUIRE(sig_identity.has_value());
    CHECK(sig_identity->signs == std::vector<int>{1, 1, 1});

    auto [id_bad, sig_bad] = zero_mean_id(th::cov_positive_nonid());
    CHECK_FALSE(id_bad);
    CHECK_FALSE(sig_bad.has_value());

    CHECK_THROWS_AS(zero_mean_id(th::mat(2, {"1", "2", "2", "1"})), NotPositiveDefiniteError);
}

TEST_CASE("discordant pairs are strict sign oppositions") {
    DiscordantPairs d1 = discordant_pairs(row_sums(th::inv_zero_entry()));
    CHECK(d1.pairs == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}});

    DiscordantPairs d3 = discordant_pairs(row_sums(th::inv_all_concordant()));
    CHECK(d3.pairs.empty());

    // A zero row sum is concordant with everything.
    RowSums with_zero{{Scalar(1), Scalar(0), Scalar(-2)}};
    DiscordantPairs dz = discordant_pairs(with_zero);
    CHECK(dz.pairs == std::vector<std::pair<int, int>>{{0, 2}});
}

TEST_CASE("critical bound on the zero-entry instance") {
    SymMatrix inv = th::inv_zero_entry();
    CriticalBound b = critical_bound(inv, row_sums(inv));
    CHECK(b.kind == BoundKind::BoundZero);
    REQUIRE(b.witness.has_value());
    CHECK(*b.witness == std::make_pair(0, 2));
    REQUIRE(b.value.has_value());
    CHECK(*b.value == 0.0);
}

TEST_CASE("critical bound minimizes the discordant ratio") {
    SymMatrix inv = invert(th::cov_negative_sum());
    CriticalBound b = critical_bound(inv, row_sums(inv));
    CHECK(b.kind == BoundKind::Bound);
    REQUIRE(b.witness.has_value());
    CHECK(*b.witness == std::make_pair(0, 1));
    REQUIRE(b.radicand.has_value());
    CHECK(b.radicand->rat() == Rational(3, 2));
    REQUIRE(b.value.has_value());
    CHECK(*b.value == doctest::Approx(1.224744871).epsilon(1e-8));
}

TEST_CASE("critical bound without discordant pairs or without an m-matrix") {
    SymMatrix inv3 = th::inv_all_concordant();
    CHECK(critical_bound(inv3, row_sums(inv3)).kind == BoundKind::NoCriticalPoint);

    SymMatrix id = SymMatrix::identity(3);
    CHECK(critical_bound(id, row_sums(id)).kind == BoundKind::NoCriticalPoint);

    SymMatrix notm = th::inv_positive_nonid();
    CHECK(critical_bound(notm, row_sums(notm)).kind == BoundKind::NotApplicable);
}

TEST_CASE("zero order finds the first nonzero power with alternating sign") {
    SymMatrix inv = th::inv_zero_entry();
    ZeroOrder direct = zero_order(inv, 0, 1);
    CHECK(direct.order == 1);
    CHECK(direct.sign == -1);

    ZeroOrder two = zero_order(inv, 0, 2);
    CHECK(two.order == 2);
    CHECK(two.sign == 1);
    CHECK(power(inv, 2).at(0, 2).rat() == 2);

    SymMatrix inv4 = th::inv_corner_4x4();
    ZeroOrder corner = zero_order(inv4, 0, 3);
    CHECK(corner.order == 2);
    CHECK(corner.sign == 1);

    CHECK_THROWS_AS(zero_order(inv, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(zero_order(inv, 0, 5), std::invalid_argument);
    CHECK_THROWS_AS(zero_order(th::inv_positive_nonid(), 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(zero_order(SymMatrix::identity(3), 0, 1), NotIrreducibleError);
}

TEST_CASE("non-divisibility certificate on the positive covariance") {
    auto cert = non_id_certificate(th::cov_positive_nonid());
    REQUIRE(cert.has_value());
    // Ordered conditions: inv_ji > 0, inv_kj < 0, inv_ik < 0, row sums
    // at i, j, k all positive.
    SymMatrix inv = th::inv_positive_nonid();
    RowSums d = row_sums(inv);
    CHECK(inv.at(cert->j, cert->i).sign() > 0);
    CHECK(inv.at(cert->k, cert->j).sign() < 0);
    CHECK(inv.at(cert->i, cert->k).sign() < 0);
    CHECK(d.sums[cert->i].sign() > 0);
    CHECK(d.sums[cert->j].sign() > 0);
    CHECK(d.sums[cert->k].sign() > 0);
    CHECK(cert->i == 0);
    CHECK(cert->j == 2);
    CHECK(cert->k == 1);

    // An M-matrix inverse admits no certificate (no positive inv entry),
    // and the search requires entrywise-positive covariance.
    CHECK_THROWS_AS(non_id_certificate(SymMatrix::identity(3)), std::invalid_argument);
}

TEST_CASE("variance-mean conditions agree and reject zero entries") {
    SymMatrix gamma = th::cov_all_concordant();
    std::vector<Scalar> ones = {Scalar(1), Scalar(1), Scalar(1)};
    CHECK(var_mean_condition3(gamma, ones));
    for (const char* b : {"1/2", "1", "2"})
        CHECK(var_mean_condition2(gamma, ones, Scalar::parse(b, true)));

    // Negated coordinate: conjugation flips the inverse pattern; the
    // condition still holds because diag(c) absorbs the signs.
    std::vector<Scalar> flip = {Scalar(1), Scalar(-1), Scalar(1)};
    CHECK(var_mean_condition3(gamma, flip) == var_mean_condition2(gamma, flip, Scalar(1)));

    std::vector<Scalar> with_zero = {Scalar(1), Scalar(0), Scalar(1)};
    CHECK_FALSE(var_mean_condition3(gamma, with_zero));

    // Discordant row sums fail condition 3 with c = 1 (negative row sum).
    SymMatrix gamma1 = th::cov_zero_entry();
    CHECK_FALSE(var_mean_condition3(gamma1, ones));
    CHECK_FALSE(var_mean_condition2(gamma1, ones, Scalar(1)));

    CHECK_THROWS_AS(var_mean_condition2(gamma, ones, Scalar(0)), std::invalid_argument);
}

TEST_CASE("extended covariance blocks") {
    SymMatrix gamma = th::cov_all_concordant();
    std::vector<Scalar> c = {Scalar(2), Scalar(-1), Scalar(1)};
    Scalar b(Rational(1, 2));
    SymMatrix ext = extended_covariance(gamma, c, b);
    REQUIRE(ext.dim() == 4);
    CHECK(ext.at(3, 3).rat() == Rational(1, 2));
    for (int i = 0; i < 3; ++i) {
        CHECK(ext.at(i, 3).rat() == Rational((b * c[i]).rat()));
        for (int j = 0; j < 3; ++j)
            CHECK(ext.at(i, j).rat() == Rational((gamma.at(i, j) + b * c[i] * c[j]).rat()));
    }
    CHECK(is_positive_definite(ext));
}
