#pragma once

#include "gsq/matrix.hpp"
#include "gsq/series.hpp"

#include <optional>

namespace gsq {

inline constexpr long long kOracleBudget = 10'000'000;

// Number of index sequences of length degree(key) whose occurrence
// counts equal key: the multinomial coefficient m! / prod(key_i!).
Int sequence_count(const CoefficientKey& key);

// Coefficient of prod s_i^{key_i} in the mean-independent series,
// computed by enumerating every length-m index tuple, keeping those
// whose occurrence counts match the key, and summing the cyclic
// q-products times 1/(2m). Throws BudgetExceededError when n^m tuples
// exceed the budget. `matched` (optional) receives the number of tuples
// that contributed.
Scalar brute_phi1_coefficient(const SymMatrix& q, const CoefficientKey& key,
                              long long budget = kOracleBudget, long long* matched = nullptr);

// Same for the shift-dependent series: enumerates all open walks
// (p_0, ..., p_m), requires the occurrence counts of (p_1, ..., p_m) to
// match the key, and sums boundary-weighted path products
//   u_{p_0} * q(p_0,p_1) * ... * q(p_{m-1},p_m) * v_{p_m}
// times alpha^2 t / 2, with u_k = -D_k / t (D the inverse-covariance
// row sums) and v_l = (row sum of Q)_l - 1. Gate: n^(m+1) over budget.
Scalar brute_phi2_coefficient(const SymMatrix& q, const SymMatrix& gamma_inv, const Scalar& alpha,
                              const Scalar& t, const CoefficientKey& key,
                              long long budget = kOracleBudget, long long* matched = nullptr);

// Critical shift size for a 2x2 inverse with a nonpositive off-diagonal
// entry, found by bisecting in alpha the sign of the leading large-t
// pair coefficient instead of evaluating the closed-form square root.
// Returns nullopt when the row-sum product is nonnegative (no sign
// change possible).
std::optional<Scalar> brute_2x2_bound(const SymMatrix& gamma_inv, const RowSums& d);

} // namespace gsq
