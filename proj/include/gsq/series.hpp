#pragma once

#include "gsq/matrix.hpp"

#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace gsq {

// Monomial exponent vector over the s-variables. Ordered by total
// degree, then lexicographically, so map iteration scans low-degree
// keys first.
struct CoefficientKey {
    std::vector<int> exponents;

    int degree() const {
        int d = 0;
        for (int e : exponents) d += e;
        return d;
    }
    bool operator==(const CoefficientKey& o) const { return exponents == o.exponents; }
    bool operator<(const CoefficientKey& o) const {
        const int da = degree(), db = o.degree();
        if (da != db) return da < db;
        return exponents < o.exponents;
    }
};

// Truncated multivariate series around S = 0. Exact entries stay exact
// rationals; the constant may carry a float logarithm, in which case
// the determinant it was taken of is kept alongside.
struct CoefficientTable {
    Scalar t;
    Scalar alpha;
    int order = 0;
    Scalar constant;
    std::optional<Scalar> log_det_argument;
    std::map<CoefficientKey, Scalar> terms;
};

enum class SignVerdict { Positive, Negative, Zero, Undetermined };

struct AsymptoticSign {
    SignVerdict sign = SignVerdict::Undetermined;
    std::optional<int> leading_power; // power p in f ~ c / t^p
    std::vector<std::pair<Scalar, Scalar>> samples; // (t, f(t))
};

struct SeriesCheck {
    bool all_nonneg = true;
    std::optional<CoefficientKey> first_negative;
    std::optional<AsymptoticSign> first_negative_detail;
    int order = 0;
    std::vector<Scalar> ladder;
    size_t keys_checked = 0;
    size_t undetermined = 0;
};

// Leading large-t behaviour of the pair coefficient C_{i,j}(alpha).
struct LeadingC {
    // When the inverse entry is nonzero: C * t^2 tends to
    // (-inv_ij) * (-inv_ij / 2 + alpha^2 * D_i * D_j).
    bool off_diagonal_zero = false;
    Scalar direct;

    // When it is zero with first nonzero power k: the base part decays
    // like base_term / t^(2k), the shift part like shift_term / t^(k+1),
    // so for alpha != 0 the shift part decides the sign.
    int zero_power = 0;
    Scalar base_term;
    int base_power = 0;
    Scalar shift_term;
    int shift_power = 0;

    int combined_sign = 0;
};

inline constexpr long long kSeriesBudget = 2'000'000;

// Q(t) = I - (I + t*Gamma)^{-1}; one inversion. Requires t > 0.
SymMatrix compute_q(const SymMatrix& gamma, const Scalar& t);

// {T, 10T, 100T, 1000T} with T = 10 * n * max|entry of gamma_inv|,
// which keeps the spectral radius of gamma_inv / t below 0.1 on every
// rung.
std::vector<Scalar> default_ladder(const SymMatrix& gamma_inv);

// Mean-independent part of the log-Laplace series: constant
// (1/2) log det(I-Q), and for each degree m <= order the cyclic sums
// (1/2m) * sum over index cycles of the q-products, keyed by index
// occurrence counts. Throws OrderTooLargeError when n^order exceeds
// the budget.
CoefficientTable phi1_table(const SymMatrix& q, int order, long long budget = kSeriesBudget);

// Shift-dependent part: constant (alpha^2 t / 2) * 1(Q-I)1^T and
// degree-m terms from 1(I-Q^{-1})(QS)^m(Q-I)1^T, exact at the working t
// (the left boundary uses the identity I - Q^{-1} = -gamma_inv / t).
CoefficientTable phi2_table(const SymMatrix& q, const SymMatrix& gamma_inv, const Scalar& alpha,
                            const Scalar& t, int order, long long budget = kSeriesBudget);

// Componentwise sum; base carries the log-det constant, shift carries
// t and alpha. Orders and key dimensions must match.
CoefficientTable merge_tables(const CoefficientTable& base, const CoefficientTable& shift);

Scalar evaluate(const CoefficientTable& table, const std::vector<Scalar>& s);

// log of the Laplace functional computed directly (no series):
// -(1/2) log det(I + Gamma*Lambda) + (alpha^2/2) * 1[Lambda*G*Lambda - Lambda]1^T
// with Lambda = t(I - diag(s)) and G = (Gamma^{-1} + Lambda)^{-1}.
// Requires s entries in [0,1] and t > 0.
Scalar direct_log_laplace(const SymMatrix& gamma, const Scalar& alpha, const Scalar& t,
                          const std::vector<Scalar>& s);

// Closed form for the mean-independent coefficient of the two-index key
// (m_i at i, m_j at j): block arrangements of the index cycle,
//   (1/2) * sum_p C(m_i-1,p) C(m_j-1,p)/(p+1)
//          * q_ii^(m_i-p-1) q_jj^(m_j-p-1) q_ij^(2p+2).
// Matches the enumeration tables exactly (any dimension).
Scalar closed_form_A(const SymMatrix& q, int i, int j, int mi, int mj);

// Closed form for the shift coefficient of the same key. Walks are
// words in the two indices with boundary weights l = Q*D on each end,
// grouped by the run count r (maximal blocks of one letter):
//   (alpha^2/2t) * sum_{r>=1}
//     2 l_i l_j C(m_i-1,r-1) C(m_j-1,r-1) q_ii^(m_i-r)   q_jj^(m_j-r)   q_ij^(2r-1)
//     + l_i^2   C(m_i-1,r)   C(m_j-1,r-1) q_ii^(m_i-1-r) q_jj^(m_j-r)   q_ij^(2r)
//     + l_j^2   C(m_j-1,r)   C(m_i-1,r-1) q_jj^(m_j-1-r) q_ii^(m_i-r)   q_ij^(2r).
// The three lines are the words with distinct first/last letter, first =
// last = i, and first = last = j. Matches the enumeration tables exactly
// (any dimension).
Scalar closed_form_B(const SymMatrix& q, const RowSums& d, const Scalar& alpha, const Scalar& t,
                     int i, int j, int mi, int mj);

LeadingC leading_C(const SymMatrix& gamma_inv, const RowSums& d, const Scalar& alpha, int i, int j);

// Fits the decay power from the last two rungs and declares a sign only
// if every rung past the first agrees and |f| * t^p is stable within
// 10% across those rungs. Rung signs are read raw (exact zero only),
// not through the magnitude tolerance: deep-ladder values decay below
// any fixed epsilon, and the stability gate is the noise rejector.
AsymptoticSign asymptotic_sign(const std::function<Scalar(const Scalar&)>& f,
                               const std::vector<Scalar>& ladder);
AsymptoticSign asymptotic_sign_samples(const std::vector<std::pair<Scalar, Scalar>>& samples);

// Builds the order-truncated series on every ladder rung and scans keys
// in graded lexicographic order for one whose coefficient is
// asymptotically negative. A semi-decision: AllNonneg means no negative
// coefficient was detected at this order on this ladder.
SeriesCheck truncated_id_check(const SymMatrix& gamma, const Scalar& alpha, int order,
                               const std::vector<Scalar>& ladder, long long budget = kSeriesBudget);

} // namespace gsq
