#pragma once

#include "gsq/scalar.hpp"

#include <utility>
#include <vector>

namespace gsq {

// Dense symmetric matrix. Symmetry is validated on construction (exact
// equality for exact entries, |a_ij - a_ji| <= tolerance * scale for
// inexact ones); asymmetric input is rejected, never symmetrized.
class SymMatrix {
public:
    SymMatrix(int n, std::vector<Scalar> row_major);
    static SymMatrix from_rows(const std::vector<std::vector<Scalar>>& rows);
    static SymMatrix identity(int n);

    int dim() const { return n_; }
    const Scalar& at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
    bool all_exact() const;
    // Largest |entry| as a double; the scale behind relative tolerances.
    double max_abs() const;

    // Construction bypassing the symmetry check, for results that are
    // symmetric by construction (mirrored upper triangles).
    struct Mirrored {};
    SymMatrix(Mirrored, int n, std::vector<Scalar> row_major)
        : n_(n), a_(std::move(row_major)) {}

private:
    int n_;
    std::vector<Scalar> a_;
};

struct RowSums {
    std::vector<Scalar> sums;
};

// Exact entries invert through fraction-free (Bareiss) elimination over
// the integers after clearing denominators; inexact ones through
// partial-pivot Gauss-Jordan in doubles. Throws SingularMatrixError.
SymMatrix invert(const SymMatrix& m);

// m^k for k >= 1 by repeated multiplication.
SymMatrix power(const SymMatrix& m, int k);

// Sylvester's criterion: all leading principal minors strictly positive.
// Minors come from fraction-free elimination pivots (exact) or plain
// elimination pivots against the relative tolerance (inexact).
bool is_positive_definite(const SymMatrix& m);

// True iff the graph with an edge {i,j} for every nonzero off-diagonal
// entry is connected. A 1x1 matrix is irreducible.
bool is_irreducible(const SymMatrix& m);

RowSums row_sums(const SymMatrix& m);

SymMatrix add(const SymMatrix& a, const SymMatrix& b);
SymMatrix subtract(const SymMatrix& a, const SymMatrix& b);
SymMatrix scale(const SymMatrix& a, const Scalar& s);

// Product of two symmetric matrices that commute (powers of a common
// matrix, a matrix and its inverse, ...). The full product is computed
// and validated to be symmetric; misuse throws.
SymMatrix multiply_commuting(const SymMatrix& a, const SymMatrix& b);

// diag(v) * a * diag(v); covers signature and scaling conjugations.
SymMatrix conjugate_diagonal(const SymMatrix& a, const std::vector<Scalar>& v);

std::vector<Scalar> matvec(const SymMatrix& a, const std::vector<Scalar>& x);

Scalar determinant(const SymMatrix& m);

namespace detail {

using Grid = std::vector<std::vector<Scalar>>;

// Determinant of a general (not necessarily symmetric) square grid.
Scalar grid_determinant(const Grid& g);
Grid grid_product(const Grid& a, const Grid& b);

// Shared zero test: exact entries compare exactly, inexact ones against
// tolerance() * max(1, scale).
bool entry_is_zero(const Scalar& s, double scale);

} // namespace detail

} // namespace gsq
