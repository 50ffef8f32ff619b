#pragma once

#include "gsq/classify.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace gsq {

// Index pairs (i < j, 0-based) whose inverse-covariance row sums have
// strictly opposite signs.
struct DiscordantPairs {
    std::vector<std::pair<int, int>> pairs;
};

enum class BoundKind {
    // No discordant pair: the shifted square stays infinitely divisible
    // for every shift, no critical point exists.
    NoCriticalPoint,
    // A discordant pair with a zero inverse entry: any nonzero shift
    // breaks divisibility.
    BoundZero,
    // Positive upper bound for the critical shift.
    Bound,
    // Input is not an M-matrix, the bound theory does not apply.
    NotApplicable,
};

struct CriticalBound {
    BoundKind kind = BoundKind::NotApplicable;
    std::optional<std::pair<int, int>> witness;
    // kind == Bound: the exact minimized ratio inv_ij / (2 * D_i * D_j)
    // whose square root is the bound.
    std::optional<Scalar> radicand;
    std::optional<double> value;
};

struct NonIdCertificate {
    int i = 0, j = 0, k = 0;
};

struct ZeroOrder {
    int order = 0; // smallest power with a nonzero (i,j) entry
    int sign = 0;  // sign of that entry
};

// Whether the square of a centered Gaussian vector with this covariance
// is infinitely divisible: true iff some signature N makes N*Gamma^-1*N
// an M-matrix. Throws NotPositiveDefiniteError; reducible input is
// handled (the signature search enumerates pattern components).
std::pair<bool, std::optional<SignatureVector>> zero_mean_id(const SymMatrix& gamma);

DiscordantPairs discordant_pairs(const RowSums& d);

// Upper bound for the critical shift magnitude:
//   min over discordant pairs of sqrt(inv_ij / (2 D_i D_j)).
// Witnesses are lexicographically first (zero-entry pairs first, then
// the argmin). NotApplicable when gamma_inv is not an M-matrix.
CriticalBound critical_bound(const SymMatrix& gamma_inv, const RowSums& d);

// Smallest l >= 1 with (gamma_inv^l)_ij != 0, together with the sign of
// that entry. For an irreducible M-matrix the order is at most n-1 and
// the sign is (-1)^order; violation of either conclusion on valid input
// throws AssertionViolationError (it would falsify the implementation).
ZeroOrder zero_order(const SymMatrix& gamma_inv, int i, int j);

// Lexicographically first ordered triple (i,j,k) of distinct indices
// with inv_kj < 0, inv_ik < 0, inv_ji > 0 and D_i, D_j, D_k all > 0.
// Such a triple certifies that no shift size makes the shifted square
// infinitely divisible. Requires gamma entrywise positive and strictly
// positive definite.
std::optional<NonIdCertificate> non_id_certificate(const SymMatrix& gamma);

// Condition for (G + c*eta)^2 to be infinitely divisible jointly with
// the variance mean: diag(c)*Gamma^-1*diag(c) is an M-matrix with
// nonnegative row sums. A zero entry in c fails the condition.
bool var_mean_condition3(const SymMatrix& gamma, const std::vector<Scalar>& c);

// Equivalent formulation through the (n+1)-dimensional extension
// (G + c*eta, eta) with Var(eta) = b: its squared vector must be
// infinitely divisible; independent of b > 0.
bool var_mean_condition2(const SymMatrix& gamma, const std::vector<Scalar>& c, const Scalar& b);

// Covariance of (G + c*eta, eta): block Gamma + b*c*c^T, cross column
// b*c, corner b. Exposed for tests.
SymMatrix extended_covariance(const SymMatrix& gamma, const std::vector<Scalar>& c, const Scalar& b);

} // namespace gsq
