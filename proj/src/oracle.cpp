#include "gsq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gsq {

namespace {

Int int_pow(int base, int exp) {
    Int r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

void validate_key(const CoefficientKey& key, int n) {
    if (static_cast<int>(key.exponents.size()) != n)
        throw std::invalid_argument("key length does not match matrix dimension");
    for (int e : key.exponents)
        if (e < 0) throw std::invalid_argument("key exponents must be nonnegative");
    if (key.degree() < 1) throw std::invalid_argument("key degree must be >= 1");
}

bool advance(std::vector<int>& idx, int n) {
    int pos = static_cast<int>(idx.size()) - 1;
    while (pos >= 0 && idx[pos] == n - 1) idx[pos--] = 0;
    if (pos < 0) return false;
    ++idx[pos];
    return true;
}

bool counts_match(const std::vector<int>& idx, int from, const CoefficientKey& key,
                  std::vector<int>& scratch) {
    std::fill(scratch.begin(), scratch.end(), 0);
    for (size_t p = from; p < idx.size(); ++p) ++scratch[idx[p]];
    return scratch == key.exponents;
}

} // namespace

Int sequence_count(const CoefficientKey& key) {
    const int m = key.degree();
    Int num = 1;
    for (int i = 2; i <= m; ++i) num *= i;
    for (int e : key.exponents)
        for (int i = 2; i <= e; ++i) num /= i;
    return num;
}

Scalar brute_phi1_coefficient(const SymMatrix& q, const CoefficientKey& key, long long budget,
                              long long* matched) {
    const int n = q.dim();
    validate_key(key, n);
    const int m = key.degree();
    if (int_pow(n, m) > budget)
        throw BudgetExceededError("enumeration of " + std::to_string(n) + "^" + std::to_string(m) +
                                  " tuples exceeds budget " + std::to_string(budget));

    std::vector<int> idx(m, 0), scratch(n, 0);
    long long hits = 0;
    Scalar acc(0);
    do {
        if (!counts_match(idx, 0, key, scratch)) continue;
        ++hits;
        Scalar prod = q.at(idx[m - 1], idx[0]);
        for (int p = 0; p + 1 < m; ++p) prod *= q.at(idx[p], idx[p + 1]);
        acc += prod;
    } while (advance(idx, n));
    if (matched) *matched = hits;
    return acc / Scalar(2 * m);
}

Scalar brute_phi2_coefficient(const SymMatrix& q, const SymMatrix& gamma_inv, const Scalar& alpha,
                              const Scalar& t, const CoefficientKey& key, long long budget,
                              long long* matched) {
    const int n = q.dim();
    if (gamma_inv.dim() != n) throw std::invalid_argument("dimension mismatch");
    if (t.sign() <= 0) throw std::invalid_argument("requires t > 0");
    validate_key(key, n);
    const int m = key.degree();
    if (int_pow(n, m + 1) > budget)
        throw BudgetExceededError("enumeration of " + std::to_string(n) + "^" +
                                  std::to_string(m + 1) + " walks exceeds budget " +
                                  std::to_string(budget));

    std::vector<Scalar> d = row_sums(gamma_inv).sums;
    std::vector<Scalar> left(n), right(n);
    for (int k = 0; k < n; ++k) left[k] = -(d[k] / t);
    for (int l = 0; l < n; ++l) {
        Scalar acc(0);
        for (int j = 0; j < n; ++j) acc += q.at(l, j);
        right[l] = acc - Scalar(1);
    }

    std::vector<int> idx(m + 1, 0), scratch(n, 0);
    long long hits = 0;
    Scalar acc(0);
    do {
        if (!counts_match(idx, 1, key, scratch)) continue;
        ++hits;
        Scalar prod = left[idx[0]];
        for (int p = 0; p < m; ++p) prod *= q.at(idx[p], idx[p + 1]);
        prod *= right[idx[m]];
        acc += prod;
    } while (advance(idx, n));
    if (matched) *matched = hits;
    return acc * alpha * alpha * t / Scalar(2);
}

std::optional<Scalar> brute_2x2_bound(const SymMatrix& gamma_inv, const RowSums& d) {
    if (gamma_inv.dim() != 2) throw std::invalid_argument("expects a 2x2 matrix");
    if (gamma_inv.at(0, 1).sign() > 0)
        throw std::invalid_argument("expects a nonpositive off-diagonal entry");
    if (d.sums.size() != 2) throw std::invalid_argument("row-sum length mismatch");

    const double dd = (d.sums[0] * d.sums[1]).as_double();
    if (dd >= 0.0) return std::nullopt;

    // Leading pair coefficient ~ |a_01| * (|a_01|/2 + x^2 * D_0 D_1) / t^2;
    // positive at x = 0, strictly decreasing in x. Bisect its root.
    const double a = std::fabs(gamma_inv.at(0, 1).as_double());
    auto leading = [&](double x) { return a / 2.0 + x * x * dd; };
    double lo = 0.0, hi = 1.0;
    while (leading(hi) > 0.0) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (leading(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return Scalar::from_double(0.5 * (lo + hi));
}

} // namespace gsq
