#include "gsq/divisibility.hpp"

#include <cmath>

namespace gsq {

std::pair<bool, std::optional<SignatureVector>> zero_mean_id(const SymMatrix& gamma) {
    if (!is_positive_definite(gamma))
        throw NotPositiveDefiniteError("covariance is not strictly positive definite");
    auto sig = find_signature(invert(gamma));
    return {sig.has_value(), sig};
}

DiscordantPairs discordant_pairs(const RowSums& d) {
    DiscordantPairs out;
    const int n = static_cast<int>(d.sums.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (d.sums[i].sign() * d.sums[j].sign() < 0) out.pairs.emplace_back(i, j);
    return out;
}

CriticalBound critical_bound(const SymMatrix& gamma_inv, const RowSums& d) {
    CriticalBound out;
    if (!is_m_matrix(gamma_inv).is_m_matrix) {
        out.kind = BoundKind::NotApplicable;
        return out;
    }
    DiscordantPairs disc = discordant_pairs(d);
    if (disc.pairs.empty()) {
        out.kind = BoundKind::NoCriticalPoint;
        return out;
    }
    for (const auto& [i, j] : disc.pairs) {
        if (gamma_inv.at(i, j).sign() == 0) {
            out.kind = BoundKind::BoundZero;
            out.witness = {i, j};
            out.value = 0.0;
            return out;
        }
    }
    bool have = false;
    Scalar best;
    for (const auto& [i, j] : disc.pairs) {
        Scalar r = gamma_inv.at(i, j) / (Scalar(2) * d.sums[i] * d.sums[j]);
        if (!have || r < best) {
            have = true;
            best = r;
            out.witness = {i, j};
        }
    }
    out.kind = BoundKind::Bound;
    out.radicand = best;
    out.value = std::sqrt(best.as_double());
    return out;
}

ZeroOrder zero_order(const SymMatrix& gamma_inv, int i, int j) {
    const int n = gamma_inv.dim();
    if (i == j || i < 0 || j < 0 || i >= n || j >= n)
        throw std::invalid_argument("zero_order requires distinct valid indices");
    if (!is_m_matrix(gamma_inv).is_m_matrix)
        throw std::invalid_argument("zero_order requires an M-matrix");
    SymMatrix p = gamma_inv;
    for (int l = 1; l <= n - 1; ++l) {
        if (l > 1) p = multiply_commuting(p, gamma_inv);
        int s = p.at(i, j).sign();
        if (s != 0) {
            int expected = (l % 2 == 1) ? -1 : +1;
            if (s != expected)
                throw AssertionViolationError(
                    "power sign violates the alternation law at order " + std::to_string(l));
            return ZeroOrder{l, s};
        }
    }
    if (!is_irreducible(gamma_inv))
        throw NotIrreducibleError("zero order is undefined on a disconnected pattern");
    throw AssertionViolationError("no nonzero power entry up to n-1 on an irreducible M-matrix");
}

std::optional<NonIdCertificate> non_id_certificate(const SymMatrix& gamma) {
    const int n = gamma.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (gamma.at(i, j).sign() <= 0)
                throw std::invalid_argument("certificate search requires entrywise positive covariance");
    if (!is_positive_definite(gamma))
        throw NotPositiveDefiniteError("covariance is not strictly positive definite");
    SymMatrix a = invert(gamma);
    RowSums d = row_sums(a);
    for (int i = 0; i < n; ++i) {
        if (d.sums[i].sign() <= 0) continue;
        for (int j = 0; j < n; ++j) {
            if (j == i || d.sums[j].sign() <= 0) continue;
            if (a.at(j, i).sign() <= 0) continue;
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j || d.sums[k].sign() <= 0) continue;
                if (a.at(k, j).sign() < 0 && a.at(i, k).sign() < 0)
                    return NonIdCertificate{i, j, k};
            }
        }
    }
    return std::nullopt;
}

bool var_mean_condition3(const SymMatrix& gamma, const std::vector<Scalar>& c) {
    const int n = gamma.dim();
    if (static_cast<int>(c.size()) != n) throw std::invalid_argument("c length mismatch");
    for (const auto& ci : c)
        if (ci.sign() == 0) return false;
    SymMatrix b = conjugate_diagonal(invert(gamma), c);
    if (!is_m_matrix(b).is_m_matrix) return false;
    for (const auto& s : row_sums(b).sums)
        if (s.sign() < 0) return false;
    return true;
}

SymMatrix extended_covariance(const SymMatrix& gamma, const std::vector<Scalar>& c, const Scalar& b) {
    const int n = gamma.dim();
    if (static_cast<int>(c.size()) != n) throw std::invalid_argument("c length mismatch");
    const int m = n + 1;
    std::vector<Scalar> out(static_cast<size_t>(m) * m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out[static_cast<size_t>(i) * m + j] = gamma.at(i, j) + b * c[i] * c[j];
    for (int i = 0; i < n; ++i) {
        out[static_cast<size_t>(i) * m + n] = b * c[i];
        out[static_cast<size_t>(n) * m + i] = b * c[i];
    }
    out[static_cast<size_t>(n) * m + n] = b;
    return SymMatrix(SymMatrix::Mirrored{}, m, std::move(out));
}

bool var_mean_condition2(const SymMatrix& gamma, const std::vector<Scalar>& c, const Scalar& b) {
    if (b.sign() <= 0) throw std::invalid_argument("extension variance must be positive");
    return zero_mean_id(extended_covariance(gamma, c, b)).first;
}

} // namespace gsq
