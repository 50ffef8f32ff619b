#pragma once

#include "gsq/matrix.hpp"

#include <optional>
#include <utility>

namespace gsq {

// Diagonal of +-1 signs, normalized so signs[0] == +1. Conjugating by
// the vector and by its negation act identically on any matrix.
struct SignatureVector {
    std::vector<int> signs;
};

struct MMatrixVerdict {
    bool is_m_matrix = false;
    // First off-diagonal entry (i<j, row-major scan) violating <= 0.
    std::optional<std::pair<int, int>> failing_offdiagonal;
    // First inverse entry (row-major scan) violating >= 0.
    std::optional<std::pair<int, int>> failing_inverse_entry;
};

// Nonsingular, off-diagonal entries <= 0, inverse entrywise >= 0.
// Inexact entries use the sign tolerance on both comparisons.
// SingularMatrixError propagates from the inversion.
MMatrixVerdict is_m_matrix(const SymMatrix& a);

// Searches for a signature N making N*a*N an M-matrix. Off-diagonal sign
// constraints n_i*n_j = -sign(a_ij) propagate over each connected
// component of the nonzero pattern (an inconsistent cycle means no
// signature exists); components are free to flip independently, so all
// 2^(components-1) orientations are tried against the inverse
// nonnegativity condition.
std::optional<SignatureVector> find_signature(const SymMatrix& a);

// N * a * N for a signature vector.
SymMatrix conjugate_signs(const SymMatrix& a, const SignatureVector& n);

// Necessary condition for a Gaussian vector to be associated:
// g_ij <= min(g_ii, g_jj) for every pair. Not sufficient.
bool is_associated_candidate(const SymMatrix& g);

} // namespace gsq
