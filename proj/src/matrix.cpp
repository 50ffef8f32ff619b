#include "gsq/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <queue>
#include <sstream>

namespace gsq {

namespace {

std::string pos_str(int i, int j) {
    std::ostringstream out;
    out << "(" << i + 1 << "," << j + 1 << ")";
    return out.str();
}

void check_symmetry(int n, const std::vector<Scalar>& a) {
    double scale = 0.0;
    for (const auto& s : a) scale = std::max(scale, std::fabs(s.as_double()));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const Scalar& x = a[static_cast<size_t>(i) * n + j];
            const Scalar& y = a[static_cast<size_t>(j) * n + i];
            if (x.exact() && y.exact()) {
                if (x.rat() != y.rat())
                    throw std::invalid_argument("matrix not symmetric at " + pos_str(i, j));
            } else {
                double d = std::fabs(x.as_double() - y.as_double());
                if (d > tolerance() * std::max(1.0, scale))
                    throw std::invalid_argument("matrix not symmetric at " + pos_str(i, j));
            }
        }
    }
}

} // namespace

SymMatrix::SymMatrix(int n, std::vector<Scalar> row_major) : n_(n), a_(std::move(row_major)) {
    if (n_ < 1) throw std::invalid_argument("matrix dimension must be positive");
    if (a_.size() != static_cast<size_t>(n_) * n_)
        throw std::invalid_argument("entry count does not match dimension");
    check_symmetry(n_, a_);
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<Scalar>>& rows) {
    int n = static_cast<int>(rows.size());
    std::vector<Scalar> flat;
    flat.reserve(static_cast<size_t>(n) * n);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != n)
            throw std::invalid_argument("matrix rows must all have length n");
        for (const auto& s : r) flat.push_back(s);
    }
    return SymMatrix(n, std::move(flat));
}

SymMatrix SymMatrix::identity(int n) {
    std::vector<Scalar> a(static_cast<size_t>(n) * n, Scalar(0));
    for (int i = 0; i < n; ++i) a[static_cast<size_t>(i) * n + i] = Scalar(1);
    return SymMatrix(Mirrored{}, n, std::move(a));
}

bool SymMatrix::all_exact() const {
    for (const auto& s : a_)
        if (!s.exact()) return false;
    return true;
}

double SymMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& s : a_) m = std::max(m, std::fabs(s.as_double()));
    return m;
}

namespace detail {

bool entry_is_zero(const Scalar& s, double scale) {
    if (s.exact()) return s.rat() == 0;
    return std::fabs(s.as_double()) <= tolerance() * std::max(1.0, scale);
}

} // namespace detail

namespace {

// Least common multiple of the denominators, for clearing an exact
// matrix to integers.
Int denominator_lcm(const SymMatrix& m) {
    Int l = 1;
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
            l = boost::multiprecision::lcm(l, denominator(m.at(i, j).rat()));
    return l;
}

using IntGrid = std::vector<std::vector<Int>>;

// One round of fraction-free elimination on row i against pivot row k.
void bareiss_row(IntGrid& m, int i, int k, int cols, const Int& prev) {
    const Int pivot = m[k][k];
    const Int lead = m[i][k];
    for (int j = k + 1; j < cols; ++j) {
        Int v = m[i][j] * pivot - lead * m[k][j];
        m[i][j] = v / prev;
    }
    m[i][k] = 0;
}

SymMatrix invert_exact(const SymMatrix& a) {
    const int n = a.dim();
    const Int L = denominator_lcm(a);
    // Augmented [L*A | L*I]; solving to the right half yields A^{-1}.
    IntGrid m(n, std::vector<Int>(2 * n, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Rational v = a.at(i, j).rat() * L;
            m[i][j] = numerator(v);
        }
        m[i][n + i] = L;
    }
    Int prev = 1;
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int r = k; r < n; ++r)
            if (m[r][k] != 0) { piv = r; break; }
        if (piv < 0) throw SingularMatrixError("matrix is singular (column " + std::to_string(k + 1) + ")");
        if (piv != k) std::swap(m[piv], m[k]);
        for (int i = k + 1; i < n; ++i) bareiss_row(m, i, k, 2 * n, prev);
        prev = m[k][k];
    }
    std::vector<Scalar> out(static_cast<size_t>(n) * n);
    std::vector<Rational> x(n);
    for (int c = 0; c < n; ++c) {
        for (int i = n - 1; i >= 0; --i) {
            Rational acc(m[i][n + c]);
            for (int j = i + 1; j < n; ++j) acc -= Rational(m[i][j]) * x[j];
            x[i] = acc / Rational(m[i][i]);
        }
        for (int i = 0; i < n; ++i) out[static_cast<size_t>(i) * n + c] = Scalar(x[i]);
    }
    return SymMatrix(SymMatrix::Mirrored{}, n, std::move(out));
}

SymMatrix invert_float(const SymMatrix& a) {
    const int n = a.dim();
    const double scale = std::max(1.0, a.max_abs());
    std::vector<std::vector<double>> m(n, std::vector<double>(2 * n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m[i][j] = a.at(i, j).as_double();
        m[i][n + i] = 1.0;
    }
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int r = k + 1; r < n; ++r)
            if (std::fabs(m[r][k]) > std::fabs(m[piv][k])) piv = r;
        if (std::fabs(m[piv][k]) <= tolerance() * scale)
            throw SingularMatrixError("matrix is numerically singular (column " + std::to_string(k + 1) + ")");
        if (piv != k) std::swap(m[piv], m[k]);
        const double p = m[k][k];
        for (int j = 0; j < 2 * n; ++j) m[k][j] /= p;
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            const double f = m[i][k];
            if (f == 0.0) continue;
            for (int j = 0; j < 2 * n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    std::vector<Scalar> out;
    out.reserve(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.push_back(Scalar::from_double(m[i][n + j]));
    return SymMatrix(SymMatrix::Mirrored{}, n, std::move(out));
}

} // namespace

SymMatrix invert(const SymMatrix& m) {
    return m.all_exact() ? invert_exact(m) : invert_float(m);
}

namespace {

detail::Grid to_grid(const SymMatrix& m) {
    detail::Grid g(m.dim(), std::vector<Scalar>(m.dim()));
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) g[i][j] = m.at(i, j);
    return g;
}

SymMatrix grid_to_sym_checked(const detail::Grid& g, const char* what) {
    const int n = static_cast<int>(g.size());
    double scale = 0.0;
    for (const auto& row : g)
        for (const auto& s : row) scale = std::max(scale, std::fabs(s.as_double()));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const Scalar& x = g[i][j];
            const Scalar& y = g[j][i];
            if (x.exact() && y.exact()) {
                if (x.rat() != y.rat()) throw std::invalid_argument(std::string(what) + ": result not symmetric");
            } else if (std::fabs(x.as_double() - y.as_double()) > tolerance() * std::max(1.0, scale)) {
                throw std::invalid_argument(std::string(what) + ": result not symmetric");
            }
        }
    }
    // Mirror the upper triangle so the stored matrix is exactly symmetric
    // even when the float product carries roundoff skew.
    std::vector<Scalar> flat(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) flat[static_cast<size_t>(i) * n + j] = (i <= j) ? g[i][j] : g[j][i];
    return SymMatrix(SymMatrix::Mirrored{}, n, std::move(flat));
}

} // namespace

SymMatrix power(const SymMatrix& m, int k) {
    if (k < 1) throw std::invalid_argument("power requires k >= 1");
    detail::Grid base = to_grid(m);
    detail::Grid acc = base;
    for (int i = 1; i < k; ++i) acc = detail::grid_product(acc, base);
    return grid_to_sym_checked(acc, "power");
}

bool is_positive_definite(const SymMatrix& m) {
    const int n = m.dim();
    if (m.all_exact()) {
        const Int L = denominator_lcm(m);
        IntGrid g(n, std::vector<Int>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g[i][j] = numerator(Rational(m.at(i, j).rat() * L));
        // No row exchanges: the pivot entering step k is the (k+1)-th
        // leading principal minor of the scaled matrix.
        Int prev = 1;
        for (int k = 0; k < n; ++k) {
            if (g[k][k] <= 0) return false;
            for (int i = k + 1; i < n; ++i) bareiss_row(g, i, k, n, prev);
            prev = g[k][k];
        }
        return true;
    }
    const double scale = std::max(1.0, m.max_abs());
    std::vector<std::vector<double>> g(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g[i][j] = m.at(i, j).as_double();
    for (int k = 0; k < n; ++k) {
        if (g[k][k] <= tolerance() * scale) return false;
        for (int i = k + 1; i < n; ++i) {
            const double f = g[i][k] / g[k][k];
            for (int j = k; j < n; ++j) g[i][j] -= f * g[k][j];
        }
    }
    return true;
}

bool is_irreducible(const SymMatrix& m) {
    const int n = m.dim();
    if (n == 1) return true;
    const double scale = m.max_abs();
    std::vector<char> seen(n, 0);
    std::queue<int> frontier;
    frontier.push(0);
    seen[0] = 1;
    int count = 1;
    while (!frontier.empty()) {
        int i = frontier.front();
        frontier.pop();
        for (int j = 0; j < n; ++j) {
            if (j == i || seen[j]) continue;
            if (!detail::entry_is_zero(m.at(i, j), scale)) {
                seen[j] = 1;
                ++count;
                frontier.push(j);
            }
        }
    }
    return count == n;
}

RowSums row_sums(const SymMatrix& m) {
    RowSums d;
    d.sums.resize(m.dim());
    for (int i = 0; i < m.dim(); ++i) {
        Scalar acc(0);
        for (int j = 0; j < m.dim(); ++j) acc += m.at(i, j);
        d.sums[i] = acc;
    }
    return d;
}

namespace {

SymMatrix elementwise(const SymMatrix& a, const SymMatrix& b, int sign) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
    const int n = a.dim();
    std::vector<Scalar> out;
    out.reserve(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.push_back(sign > 0 ? a.at(i, j) + b.at(i, j) : a.at(i, j) - b.at(i, j));
    return SymMatrix(SymMatrix::Mirrored{}, n, std::move(out));
}

} // namespace

SymMatrix add(const SymMatrix& a, const SymMatrix& b) { return elementwise(a, b, +1); }
SymMatrix subtract(const SymMatrix& a, const SymMatrix& b) { return elementwise(a, b, -1); }

SymMatrix scale(const SymMatrix& a, const Scalar& s) {
    const int n = a.dim();
    std::vector<Scalar> out;
    out.reserve(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.push_back(a.at(i, j) * s);
    return SymMatrix(SymMatrix::Mirrored{}, n, std::move(out));
}

SymMatrix multiply_commuting(const SymMatrix& a, const SymMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
    return grid_to_sym_checked(detail::grid_product(to_grid(a), to_grid(b)), "multiply_commuting");
}

SymMatrix conjugate_diagonal(const SymMatrix& a, const std::vector<Scalar>& v) {
    const int n = a.dim();
    if (static_cast<int>(v.size()) != n) throw std::invalid_argument("diagonal length mismatch");
    std::vector<Scalar> out;
    out.reserve(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.push_back(v[i] * v[j] * a.at(i, j));
    return SymMatrix(SymMatrix::Mirrored{}, n, std::move(out));
}

std::vector<Scalar> matvec(const SymMatrix& a, const std::vector<Scalar>& x) {
    const int n = a.dim();
    if (static_cast<int>(x.size()) != n) throw std::invalid_argument("vector length mismatch");
    std::vector<Scalar> y(n, Scalar(0));
    for (int i = 0; i < n; ++i) {
        Scalar acc(0);
        for (int j = 0; j < n; ++j) acc += a.at(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

namespace detail {

Grid grid_product(const Grid& a, const Grid& b) {
    const int n = static_cast<int>(a.size());
    Grid c(n, std::vector<Scalar>(n, Scalar(0)));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const Scalar& f = a[i][k];
            if (f.exact() && f.rat() == 0) continue;
            for (int j = 0; j < n; ++j) c[i][j] += f * b[k][j];
        }
    return c;
}

Scalar grid_determinant(const Grid& g) {
    const int n = static_cast<int>(g.size());
    bool exact = true;
    for (const auto& row : g)
        for (const auto& s : row)
            if (!s.exact()) exact = false;
    if (exact) {
        Int L = 1;
        for (const auto& row : g)
            for (const auto& s : row) L = boost::multiprecision::lcm(L, denominator(s.rat()));
        IntGrid m(n, std::vector<Int>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m[i][j] = numerator(Rational(g[i][j].rat() * L));
        Int prev = 1;
        int sign = 1;
        for (int k = 0; k < n; ++k) {
            int piv = -1;
            for (int r = k; r < n; ++r)
                if (m[r][k] != 0) { piv = r; break; }
            if (piv < 0) return Scalar(0);
            if (piv != k) {
                std::swap(m[piv], m[k]);
                sign = -sign;
            }
            for (int i = k + 1; i < n; ++i) bareiss_row(m, i, k, n, prev);
            prev = m[k][k];
        }
        Rational det(m[n - 1][n - 1] * sign);
        Rational ln(L);
        for (int i = 0; i < n; ++i) det /= ln;
        return Scalar(det);
    }
    double scale = 1.0;
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            m[i][j] = g[i][j].as_double();
            scale = std::max(scale, std::fabs(m[i][j]));
        }
    double det = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int r = k + 1; r < n; ++r)
            if (std::fabs(m[r][k]) > std::fabs(m[piv][k])) piv = r;
        if (std::fabs(m[piv][k]) <= tolerance() * scale) return Scalar::from_double(0.0);
        if (piv != k) {
            std::swap(m[piv], m[k]);
            det = -det;
        }
        det *= m[k][k];
        for (int i = k + 1; i < n; ++i) {
            const double f = m[i][k] / m[k][k];
            for (int j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return Scalar::from_double(det);
}

} // namespace detail

Scalar determinant(const SymMatrix& m) { return detail::grid_determinant(to_grid(m)); }

} // namespace gsq
