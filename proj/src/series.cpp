#include "gsq/series.hpp"

#include "gsq/divisibility.hpp"

#include <algorithm>
#include <cmath>

namespace gsq {

namespace {

using Poly = std::map<CoefficientKey, Scalar>;

Int int_pow(int base, int exp) {
    Int r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

void check_budget(int n, int order, long long budget, const char* what) {
    if (int_pow(n, order) > budget)
        throw OrderTooLargeError(std::string(what) + ": " + std::to_string(n) + "^" +
                                 std::to_string(order) + " index sequences exceed budget " +
                                 std::to_string(budget));
}

Scalar scalar_pow(const Scalar& s, int e) {
    Scalar r(1);
    for (int i = 0; i < e; ++i) r *= s;
    return r;
}

Scalar binomial(int n, int k) {
    if (k < 0 || k > n) return Scalar(0);
    Int num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num *= n - i;
        den *= i + 1;
    }
    return Scalar(Rational(num, den));
}

void add_term(Poly& p, const CoefficientKey& key, const Scalar& c) {
    auto [it, fresh] = p.emplace(key, c);
    if (!fresh) it->second += c;
}

// One multiplication step by (QS): entry polynomials pick up a factor
// q_{c,b} s_b moving from column c to column b.
std::vector<Poly> step_row(const std::vector<Poly>& row, const SymMatrix& q) {
    const int n = q.dim();
    std::vector<Poly> out(n);
    for (int b = 0; b < n; ++b) {
        for (int c = 0; c < n; ++c) {
            const Scalar& f = q.at(c, b);
            if (f.exact() && f.rat() == 0) continue;
            for (const auto& [key, coeff] : row[c]) {
                CoefficientKey shifted = key;
                shifted.exponents[b] += 1;
                add_term(out[b], shifted, coeff * f);
            }
        }
    }
    return out;
}

CoefficientKey unit_key(int n, int b) {
    CoefficientKey k;
    k.exponents.assign(n, 0);
    k.exponents[b] = 1;
    return k;
}

} // namespace

SymMatrix compute_q(const SymMatrix& gamma, const Scalar& t) {
    if (t.sign() <= 0) throw std::invalid_argument("compute_q requires t > 0");
    const int n = gamma.dim();
    SymMatrix m = invert(add(SymMatrix::identity(n), scale(gamma, t)));
    return subtract(SymMatrix::identity(n), m);
}

std::vector<Scalar> default_ladder(const SymMatrix& gamma_inv) {
    const int n = gamma_inv.dim();
    Scalar maxabs(0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Scalar a = gamma_inv.at(i, j).abs();
            if (maxabs < a) maxabs = a;
        }
    Scalar t0 = Scalar(10 * n) * maxabs;
    return {t0, Scalar(10) * t0, Scalar(100) * t0, Scalar(1000) * t0};
}

CoefficientTable phi1_table(const SymMatrix& q, int order, long long budget) {
    if (order < 1) throw std::invalid_argument("order must be >= 1");
    const int n = q.dim();
    check_budget(n, order, budget, "phi1_table");

    CoefficientTable table;
    table.t = Scalar(0);
    table.alpha = Scalar(0);
    table.order = order;
    Scalar det = determinant(subtract(SymMatrix::identity(n), q));
    table.log_det_argument = det;
    table.constant = Scalar::from_double(0.5 * std::log(det.as_double()));

    // Row a of (QS)^m; closing each cycle back to its start row gives
    // the trace terms.
    std::vector<std::vector<Poly>> rows(n, std::vector<Poly>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const Scalar& f = q.at(a, b);
            if (f.exact() && f.rat() == 0) continue;
            rows[a][b].emplace(unit_key(n, b), f);
        }
    for (int m = 1; m <= order; ++m) {
        Scalar weight = Scalar(1) / Scalar(2 * m);
        for (int a = 0; a < n; ++a)
            for (const auto& [key, coeff] : rows[a][a]) add_term(table.terms, key, coeff * weight);
        if (m < order)
            for (int a = 0; a < n; ++a) rows[a] = step_row(rows[a], q);
    }
    return table;
}

CoefficientTable phi2_table(const SymMatrix& q, const SymMatrix& gamma_inv, const Scalar& alpha,
                            const Scalar& t, int order, long long budget) {
    if (order < 1) throw std::invalid_argument("order must be >= 1");
    if (t.sign() <= 0) throw std::invalid_argument("phi2_table requires t > 0");
    const int n = q.dim();
    if (gamma_inv.dim() != n) throw std::invalid_argument("dimension mismatch");
    check_budget(n, order, budget, "phi2_table");

    CoefficientTable table;
    table.t = t;
    table.alpha = alpha;
    table.order = order;

    // Boundary weights: on the left 1(I - Q^{-1}) = -D^T/t exactly, on
    // the right (Q - I)1^T, i.e. the Q row sums minus one.
    std::vector<Scalar> d = row_sums(gamma_inv).sums;
    std::vector<Scalar> left(n), right(n);
    for (int k = 0; k < n; ++k) left[k] = -(d[k] / t);
    for (int l = 0; l < n; ++l) {
        Scalar acc(0);
        for (int j = 0; j < n; ++j) acc += q.at(l, j);
        right[l] = acc - Scalar(1);
    }

    Scalar pref = alpha * alpha * t / Scalar(2);
    Scalar const_sum(0);
    for (int l = 0; l < n; ++l) const_sum += right[l];
    table.constant = pref * const_sum;

    if (alpha.sign() == 0) return table; // every term carries an alpha^2 factor

    // Row vector left^T (QS), advanced one (QS) factor per degree.
    std::vector<Poly> row(n);
    for (int b = 0; b < n; ++b) {
        Scalar acc(0);
        for (int k = 0; k < n; ++k) acc += left[k] * q.at(k, b);
        if (acc.exact() && acc.rat() == 0) continue;
        row[b].emplace(unit_key(n, b), acc);
    }
    for (int m = 1; m <= order; ++m) {
        for (int b = 0; b < n; ++b)
            for (const auto& [key, coeff] : row[b]) add_term(table.terms, key, coeff * right[b] * pref);
        if (m < order) row = step_row(row, q);
    }
    return table;
}

CoefficientTable merge_tables(const CoefficientTable& base, const CoefficientTable& shift) {
    if (base.order != shift.order) throw std::invalid_argument("merge_tables: order mismatch");
    CoefficientTable out = shift;
    out.log_det_argument = base.log_det_argument;
    out.constant = base.constant + shift.constant;
    for (const auto& [key, coeff] : base.terms) add_term(out.terms, key, coeff);
    return out;
}

Scalar evaluate(const CoefficientTable& table, const std::vector<Scalar>& s) {
    Scalar acc = table.constant;
    for (const auto& [key, coeff] : table.terms) {
        if (key.exponents.size() != s.size())
            throw std::invalid_argument("evaluate: point dimension mismatch");
        Scalar mono = coeff;
        for (size_t i = 0; i < s.size(); ++i) mono *= scalar_pow(s[i], key.exponents[i]);
        acc += mono;
    }
    return acc;
}

Scalar direct_log_laplace(const SymMatrix& gamma, const Scalar& alpha, const Scalar& t,
                          const std::vector<Scalar>& s) {
    const int n = gamma.dim();
    if (static_cast<int>(s.size()) != n) throw std::invalid_argument("s length mismatch");
    if (t.sign() <= 0) throw std::invalid_argument("direct_log_laplace requires t > 0");
    for (const auto& si : s)
        if (si.sign() < 0 || (si - Scalar(1)).sign() > 0)
            throw std::invalid_argument("s entries must lie in [0,1]");

    std::vector<Scalar> lambda(n);
    for (int i = 0; i < n; ++i) lambda[i] = t * (Scalar(1) - s[i]);

    detail::Grid m(n, std::vector<Scalar>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            m[i][j] = gamma.at(i, j) * lambda[j];
            if (i == j) m[i][j] += Scalar(1);
        }
    Scalar det = detail::grid_determinant(m);
    if (det.sign() <= 0) throw SingularMatrixError("I + Gamma*Lambda is singular");

    SymMatrix ginv = invert(gamma);
    std::vector<Scalar> sum(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Scalar v = ginv.at(i, j);
            if (i == j) v += lambda[i];
            sum[static_cast<size_t>(i) * n + j] = v;
        }
    SymMatrix smoothed = invert(SymMatrix(SymMatrix::Mirrored{}, n, std::move(sum)));

    Scalar bilinear(0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) bilinear += lambda[i] * smoothed.at(i, j) * lambda[j];
        bilinear -= lambda[i];
    }
    Scalar out = Scalar::from_double(-0.5 * std::log(det.as_double()));
    out += alpha * alpha / Scalar(2) * bilinear;
    return out;
}

Scalar closed_form_A(const SymMatrix& q, int i, int j, int mi, int mj) {
    if (i == j) throw std::invalid_argument("closed_form_A requires distinct indices");
    if (mi < 1 || mj < 1) throw std::invalid_argument("closed_form_A requires positive multiplicities");
    const Scalar &qii = q.at(i, i), &qjj = q.at(j, j), &qij = q.at(i, j);
    Scalar acc(0);
    for (int p = 0; p < std::min(mi, mj); ++p) {
        Scalar term = binomial(mi - 1, p) * binomial(mj - 1, p) / Scalar(p + 1);
        term *= scalar_pow(qii, mi - p - 1) * scalar_pow(qjj, mj - p - 1) * scalar_pow(qij, 2 * (p + 1));
        acc += term;
    }
    return acc / Scalar(2);
}

Scalar closed_form_B(const SymMatrix& q, const RowSums& d, const Scalar& alpha, const Scalar& t,
                     int i, int j, int mi, int mj) {
    if (i == j) throw std::invalid_argument("closed_form_B requires distinct indices");
    if (mi < 1 || mj < 1) throw std::invalid_argument("closed_form_B requires positive multiplicities");
    std::vector<Scalar> l = matvec(q, d.sums);
    const Scalar &qii = q.at(i, i), &qjj = q.at(j, j), &qij = q.at(i, j);
    const Scalar &li = l[i], &lj = l[j];
    // Group the two-letter interior words by r, the number of maximal runs of
    // each letter. A word contributes qij once per letter change and a
    // diagonal factor per repeat inside a run; the run lengths are counted by
    // binomials over compositions. Three boundary patterns arise: the word
    // starts and ends in different letters (2*li*lj, r runs of each), or it
    // starts and ends in i (li^2, r+1 runs of i), or in j (lj^2, mirrored).
    Scalar acc(0);
    for (int r = 1; r <= std::max(mi, mj); ++r) {
        Scalar both = binomial(mi - 1, r - 1) * binomial(mj - 1, r - 1);
        if (both.sign() != 0)
            acc += Scalar(2) * li * lj * both * scalar_pow(qii, mi - r) *
                   scalar_pow(qjj, mj - r) * scalar_pow(qij, 2 * r - 1);
        Scalar ii = binomial(mi - 1, r) * binomial(mj - 1, r - 1);
        if (ii.sign() != 0)
            acc += li * li * ii * scalar_pow(qii, mi - 1 - r) *
                   scalar_pow(qjj, mj - r) * scalar_pow(qij, 2 * r);
        Scalar jj = binomial(mj - 1, r) * binomial(mi - 1, r - 1);
        if (jj.sign() != 0)
            acc += lj * lj * jj * scalar_pow(qjj, mj - 1 - r) *
                   scalar_pow(qii, mi - r) * scalar_pow(qij, 2 * r);
    }
    return alpha * alpha / (Scalar(2) * t) * acc;
}

LeadingC leading_C(const SymMatrix& gamma_inv, const RowSums& d, const Scalar& alpha, int i, int j) {
    if (i == j) throw std::invalid_argument("leading_C requires distinct indices");
    LeadingC out;
    const Scalar& aij = gamma_inv.at(i, j);
    Scalar dd = d.sums[i] * d.sums[j];
    if (aij.sign() != 0) {
        out.off_diagonal_zero = false;
        out.direct = (-aij) * (-aij / Scalar(2) + alpha * alpha * dd);
        out.combined_sign = out.direct.sign();
        return out;
    }
    out.off_diagonal_zero = true;
    ZeroOrder zo = zero_order(gamma_inv, i, j);
    out.zero_power = zo.order;
    Scalar entry = power(gamma_inv, zo.order).at(i, j);
    out.base_term = entry * entry / Scalar(2);
    out.base_power = 2 * zo.order;
    out.shift_term = alpha * alpha * dd * entry.abs();
    out.shift_power = zo.order + 1;
    if (alpha.sign() != 0 && dd.sign() != 0)
        out.combined_sign = dd.sign();
    else
        out.combined_sign = +1;
    return out;
}

AsymptoticSign asymptotic_sign_samples(const std::vector<std::pair<Scalar, Scalar>>& samples) {
    const size_t r = samples.size();
    if (r < 3) throw std::invalid_argument("asymptotic sign needs at least 3 ladder rungs");
    for (size_t k = 0; k < r; ++k) {
        if (samples[k].first.sign() <= 0) throw std::invalid_argument("ladder values must be positive");
        if (k + 1 < r && !(samples[k].first < samples[k + 1].first))
            throw std::invalid_argument("ladder must be strictly increasing");
    }
    AsymptoticSign out;
    out.samples = samples;

    // Rung values decay like 1/t^p, so on a long ladder they drop below any
    // fixed magnitude tolerance while still carrying a meaningful sign. Read
    // raw signs here (exact zero only); the ratio-stability gate below is
    // what rejects values that are mere rounding noise.
    bool all_zero = true;
    for (const auto& [t, v] : samples)
        if (v.sign(0.0) != 0) all_zero = false;
    if (all_zero) {
        out.sign = SignVerdict::Zero;
        out.leading_power = std::nullopt;
        return out;
    }
    int s = samples[1].second.sign(0.0);
    for (size_t k = 1; k < r; ++k)
        if (samples[k].second.sign(0.0) != s) return out; // Undetermined
    if (s == 0) return out;

    const double vl = std::fabs(samples[r - 1].second.as_double());
    const double vp = std::fabs(samples[r - 2].second.as_double());
    const double tl = samples[r - 1].first.as_double();
    const double tp = samples[r - 2].first.as_double();
    if (vl <= 0.0 || vp <= 0.0) return out;
    const double slope = -(std::log(vl) - std::log(vp)) / (std::log(tl) - std::log(tp));
    const int p = static_cast<int>(std::llround(slope));

    double prev_scaled = 0.0;
    for (size_t k = 1; k < r; ++k) {
        const double scaled =
            std::fabs(samples[k].second.as_double()) * std::pow(samples[k].first.as_double(), p);
        if (k > 1) {
            if (prev_scaled <= 0.0) return out;
            const double ratio = scaled / prev_scaled;
            if (ratio < 0.9 || ratio > 1.1) return out;
        }
        prev_scaled = scaled;
    }
    out.sign = s > 0 ? SignVerdict::Positive : SignVerdict::Negative;
    out.leading_power = p;
    return out;
}

AsymptoticSign asymptotic_sign(const std::function<Scalar(const Scalar&)>& f,
                               const std::vector<Scalar>& ladder) {
    std::vector<std::pair<Scalar, Scalar>> samples;
    samples.reserve(ladder.size());
    for (const auto& t : ladder) samples.emplace_back(t, f(t));
    return asymptotic_sign_samples(samples);
}

SeriesCheck truncated_id_check(const SymMatrix& gamma, const Scalar& alpha, int order,
                               const std::vector<Scalar>& ladder, long long budget) {
    if (!is_positive_definite(gamma))
        throw NotPositiveDefiniteError("covariance is not strictly positive definite");
    if (ladder.size() < 3) throw std::invalid_argument("ladder needs at least 3 rungs");

    SeriesCheck out;
    out.order = order;
    out.ladder = ladder;

    SymMatrix gamma_inv = invert(gamma);
    std::vector<CoefficientTable> tables;
    tables.reserve(ladder.size());
    for (const auto& t : ladder) {
        SymMatrix q = compute_q(gamma, t);
        tables.push_back(merge_tables(phi1_table(q, order, budget),
                                      phi2_table(q, gamma_inv, alpha, t, order, budget)));
    }

    std::map<CoefficientKey, char> keys;
    for (const auto& tab : tables)
        for (const auto& [key, coeff] : tab.terms) keys.emplace(key, 0);

    for (const auto& [key, unused] : keys) {
        std::vector<std::pair<Scalar, Scalar>> samples;
        samples.reserve(ladder.size());
        for (size_t r = 0; r < ladder.size(); ++r) {
            auto it = tables[r].terms.find(key);
            samples.emplace_back(ladder[r], it == tables[r].terms.end() ? Scalar(0) : it->second);
        }
        AsymptoticSign sign = asymptotic_sign_samples(samples);
        ++out.keys_checked;
        if (sign.sign == SignVerdict::Undetermined) ++out.undetermined;
        if (sign.sign == SignVerdict::Negative && !out.first_negative) {
            out.all_nonneg = false;
            out.first_negative = key;
            out.first_negative_detail = sign;
        }
    }
    return out;
}

} // namespace gsq
