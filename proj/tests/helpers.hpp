#pragma once

#include "gsq/matrix.hpp"

#include <random>
#include <string>
#include <vector>

namespace th {

// Builds an exact symmetric matrix from rational-string entries.
inline gsq::SymMatrix mat(int n, const std::vector<std::string>& entries) {
    std::vector<gsq::Scalar> flat;
    flat.reserve(entries.size());
    for (const auto& e : entries) flat.push_back(gsq::Scalar::parse(e, true));
    return gsq::SymMatrix(n, std::move(flat));
}

// Same matrix with every entry converted to a double.
inline gsq::SymMatrix to_float(const gsq::SymMatrix& m) {
    std::vector<gsq::Scalar> flat;
    flat.reserve(static_cast<size_t>(m.dim()) * m.dim());
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
            flat.push_back(gsq::Scalar::from_double(m.at(i, j).as_double()));
    return gsq::SymMatrix(gsq::SymMatrix::Mirrored{}, m.dim(), std::move(flat));
}

// 3x3 covariance whose integer inverse has a zero entry meeting row sums
// of opposite signs (critical shift size 0).
inline gsq::SymMatrix cov_zero_entry() {
    return mat(3, {"15/7", "4/7", "2/7", "4/7", "2/7", "1/7", "2/7", "1/7", "4/7"});
}
inline gsq::SymMatrix inv_zero_entry() {
    return mat(3, {"1", "-2", "0", "-2", "8", "-1", "0", "-1", "2"});
}

// 3x3 covariance satisfying the pairwise association bound whose inverse
// M-matrix has a negative first row sum (positive critical bound).
inline gsq::SymMatrix cov_negative_sum() {
    return mat(3, {"8/5", "3/5", "4/5", "3/5", "1", "2/5", "4/5", "2/5", "4/5"});
}

// 3x3 covariance whose inverse M-matrix has all row sums positive (no
// critical point).
inline gsq::SymMatrix cov_all_concordant() {
    return mat(3, {"15/37", "4/37", "2/37", "4/37", "6/37", "3/37", "2/37", "3/37", "20/37"});
}
inline gsq::SymMatrix inv_all_concordant() {
    return mat(3, {"3", "-2", "0", "-2", "8", "-1", "0", "-1", "2"});
}

// 4x4 M-matrix with a zero entry meeting row sums of opposite signs,
// and the covariance that inverts it exactly.
inline gsq::SymMatrix inv_corner_4x4() {
    return mat(4, {"10", "-3", "-3", "0",
                   "-3", "9", "-2", "-3",
                   "-3", "-2", "9", "-3",
                   "0", "-3", "-3", "65/11"});
}
inline gsq::SymMatrix cov_corner_4x4() {
    return mat(4, {"257/1400", "39/280", "39/280", "99/700",
                   "39/280", "171/616", "115/616", "33/140",
                   "39/280", "115/616", "171/616", "33/140",
                   "99/700", "33/140", "33/140", "143/350"});
}

// Entrywise-positive 3x3 covariance whose inverse has a positive
// off-diagonal entry: no signature works, the squared vector is not
// infinitely divisible for any shift.
inline gsq::SymMatrix cov_positive_nonid() {
    return mat(3, {"5/99", "4/297", "2/297", "4/297", "8/297", "5/297", "2/297", "5/297", "2/99"});
}
inline gsq::SymMatrix inv_positive_nonid() {
    return mat(3, {"23", "-14", "4", "-14", "86", "-67", "4", "-67", "104"});
}

// Random exact rational with magnitude in [1/denom_max, mag_max].
inline gsq::Scalar random_magnitude(std::mt19937_64& rng, int mag_max = 5, int denom_max = 4) {
    std::uniform_int_distribution<int> denom(1, denom_max);
    const int d = denom(rng);
    std::uniform_int_distribution<int> numer(1, mag_max * d);
    return gsq::Scalar(gsq::Rational(numer(rng), d));
}

// Random irreducible symmetric M-matrix: spanning-path edges keep the
// pattern connected, extra edges appear with probability 1/2, and the
// diagonal strictly dominates, which makes the matrix positive definite
// with a nonnegative inverse. Off-diagonal magnitudes lie in (0, 5].
inline gsq::SymMatrix random_m_matrix(std::mt19937_64& rng, int n, bool plant_zero = true) {
    std::vector<std::vector<gsq::Scalar>> a(n, std::vector<gsq::Scalar>(n, gsq::Scalar(0)));
    std::bernoulli_distribution extra(0.5);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const bool path_edge = (j == i + 1);
            bool present = path_edge || extra(rng);
            if (!path_edge && plant_zero) present = present && extra(rng);
            if (present) {
                gsq::Scalar v = -random_magnitude(rng);
                a[i][j] = v;
                a[j][i] = v;
            }
        }
    for (int i = 0; i < n; ++i) {
        gsq::Scalar offsum(0);
        for (int j = 0; j < n; ++j)
            if (j != i) offsum += a[i][j].abs();
        a[i][i] = offsum + random_magnitude(rng, 3, 2);
    }
    return gsq::SymMatrix::from_rows(a);
}

// Random exact positive-definite symmetric matrix (mixed entry signs)
// through strict diagonal dominance.
inline gsq::SymMatrix random_pd_matrix(std::mt19937_64& rng, int n) {
    std::vector<std::vector<gsq::Scalar>> a(n, std::vector<gsq::Scalar>(n, gsq::Scalar(0)));
    std::bernoulli_distribution negate(0.5);
    std::bernoulli_distribution present(0.8);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (!present(rng)) continue;
            gsq::Scalar v = random_magnitude(rng, 2, 3);
            if (negate(rng)) v = -v;
            a[i][j] = v;
            a[j][i] = v;
        }
    for (int i = 0; i < n; ++i) {
        gsq::Scalar offsum(0);
        for (int j = 0; j < n; ++j)
            if (j != i) offsum += a[i][j].abs();
        a[i][i] = offsum + random_magnitude(rng, 3, 2);
    }
    return gsq::SymMatrix::from_rows(a);
}

// Random vector of nonzero exact integers in [-3, 3].
inline std::vector<gsq::Scalar> random_nonzero_vector(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> mag(1, 3);
    std::bernoulli_distribution negate(0.5);
    std::vector<gsq::Scalar> c;
    c.reserve(n);
    for (int i = 0; i < n; ++i) {
        int v = mag(rng);
        c.emplace_back(negate(rng) ? -v : v);
    }
    return c;
}

} // namespace th
