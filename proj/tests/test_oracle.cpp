#include "gsq/oracle.hpp"

#include "doctest.h"
#include "gsq/divisibility.hpp"
#include "helpers.hpp"

#include <cmath>

using namespace gsq;

TEST_CASE("sequence counts are multinomial coefficients") {
    CHECK(sequence_count(CoefficientKey{{1, 1}}) == 2);
    CHECK(sequence_count(CoefficientKey{{2, 0}}) == 1);
    CHECK(sequence_count(CoefficientKey{{2, 1}}) == 3);
    CHECK(sequence_count(CoefficientKey{{2, 2, 1}}) == 30);
    CHECK(sequence_count(CoefficientKey{{3, 1, 1}}) == 20);
}

TEST_CASE("enumeration visits exactly the matching tuples") {
    SymMatrix gamma = th::mat(2, {"2", "1", "1", "2"});
    SymMatrix q = compute_q(gamma, Scalar(3));

    long long matched = 0;
    brute_phi1_coefficient(q, CoefficientKey{{2, 1}}, kOracleBudget, &matched);
    CHECK(matched == 3);

    brute_phi1_coefficient(q, CoefficientKey{{1, 1}}, kOracleBudget, &matched);
    CHECK(matched == 2);

    SymMatrix gamma_inv = invert(gamma);
    brute_phi2_coefficient(q, gamma_inv, Scalar(1), Scalar(3), CoefficientKey{{2, 1}},
                           kOracleBudget, &matched);
    CHECK(matched == 2 * 3); // free start index times the matching walks
}

TEST_CASE("enumerated coefficients equal the table coefficients exactly") {
    SymMatrix gamma = th::cov_zero_entry();
    SymMatrix gamma_inv = th::inv_zero_entry();
    Scalar t(240), alpha(Rational(1, 2));
    SymMatrix q = compute_q(gamma, t);

    CoefficientTable base = phi1_table(q, 4);
    CoefficientTable shift = phi2_table(q, gamma_inv, alpha, t, 4);

    for (const auto& [key, coeff] : base.terms)
        CHECK(brute_phi1_coefficient(q, key).rat() == coeff.rat());
    for (const auto& [key, coeff] : shift.terms)
        CHECK(brute_phi2_coefficient(q, gamma_inv, alpha, t, key).rat() == coeff.rat());
}

TEST_CASE("shift oracle vanishes identically at zero shift") {
    SymMatrix gamma = th::mat(2, {"2", "1", "1", "2"});
    SymMatrix gamma_inv = invert(gamma);
    SymMatrix q = compute_q(gamma, Scalar(5));
    CHECK(brute_phi2_coefficient(q, gamma_inv, Scalar(0), Scalar(5), CoefficientKey{{1, 1}}).rat() ==
          0);
}

TEST_CASE("oracle budget gates") {
    SymMatrix gamma = th::cov_zero_entry();
    SymMatrix q = compute_q(gamma, Scalar(240));
    CoefficientKey key{{2, 2, 2}};
    CHECK_THROWS_AS(brute_phi1_coefficient(q, key, 500), BudgetExceededError); // 3^6 = 729
    CHECK_NOTHROW(brute_phi1_coefficient(q, key, 729));
    CHECK_THROWS_AS(
        brute_phi2_coefficient(q, th::inv_zero_entry(), Scalar(1), Scalar(240), key, 729),
        BudgetExceededError); // needs 3^7
    CHECK_THROWS_AS(brute_phi1_coefficient(q, CoefficientKey{{0, 0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(brute_phi1_coefficient(q, CoefficientKey{{1, 1}}), std::invalid_argument);
}

TEST_CASE("bisected 2x2 critical shift matches the closed form") {
    SUBCASE("unit bound, symmetric sums") {
        SymMatrix inv = th::mat(2, {"3", "-2", "-2", "1"});
        RowSums d = row_sums(inv);
        CHECK(d.sums[0].rat() == 1);
        CHECK(d.sums[1].rat() == -1);
        auto found = brute_2x2_bound(inv, d);
        REQUIRE(found.has_value());
        CHECK(std::fabs(found->as_double() - 1.0) < 1e-9);
    }

    SUBCASE("unit bound, asymmetric sums") {
        SymMatrix inv = th::mat(2, {"5", "-4", "-4", "2"});
        RowSums d = row_sums(inv);
        auto found = brute_2x2_bound(inv, d);
        REQUIRE(found.has_value());
        CHECK(std::fabs(found->as_double() - 1.0) < 1e-9);
    }

    SUBCASE("agrees with the general bound on a non-unit instance") {
        SymMatrix inv = th::mat(2, {"7", "-3", "-3", "2"});
        RowSums d = row_sums(inv); // (4, -1)
        auto found = brute_2x2_bound(inv, d);
        REQUIRE(found.has_value());
        CriticalBound b = critical_bound(inv, d);
        REQUIRE(b.kind == BoundKind::Bound);
        CHECK(std::fabs(found->as_double() - *b.value) < 1e-9);
        CHECK(b.radicand->rat() == Rational(3, 8));
    }

    SUBCASE("zero row sum product has no critical shift") {
        SymMatrix inv = th::mat(2, {"2", "-1", "-1", "1"});
        RowSums d = row_sums(inv); // (1, 0)
        CHECK_FALSE(brute_2x2_bound(inv, d).has_value());
    }

    SUBCASE("rejects non-m-matrices and wrong sizes") {
        CHECK_THROWS_AS(brute_2x2_bound(th::mat(2, {"1", "2", "2", "1"}),
                                        row_sums(th::mat(2, {"1", "2", "2", "1"}))),
                        std::invalid_argument);
        CHECK_THROWS_AS(brute_2x2_bound(th::inv_zero_entry(), row_sums(th::inv_zero_entry())),
                        std::invalid_argument);
    }
}

TEST_CASE("random instances: tables and oracle agree on every low-degree key") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 5; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 2);
        SymMatrix a = th::random_m_matrix(rng, n);
        SymMatrix gamma = invert(a);
        Scalar t(10 * n * 6), alpha(Rational(3, 2));
        SymMatrix q = compute_q(gamma, t);
        CoefficientTable base = phi1_table(q, 3);
        CoefficientTable shift = phi2_table(q, a, alpha, t, 3);
        for (const auto& [key, coeff] : base.terms)
            CHECK(brute_phi1_coefficient(q, key).rat() == coeff.rat());
        for (const auto& [key, coeff] : shift.terms)
            CHECK(brute_phi2_coefficient(q, a, alpha, t, key).rat() == coeff.rat());
    }
}
