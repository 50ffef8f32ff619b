#include "gsq/classify.hpp"

#include <cmath>
#include <queue>

namespace gsq {

MMatrixVerdict is_m_matrix(const SymMatrix& a) {
    MMatrixVerdict v;
    const int n = a.dim();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (a.at(i, j).sign() > 0) {
                v.failing_offdiagonal = {i, j};
                return v;
            }
        }
    }
    SymMatrix inv = invert(a);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (inv.at(i, j).sign() < 0) {
                v.failing_inverse_entry = {i, j};
                return v;
            }
        }
    }
    v.is_m_matrix = true;
    return v;
}

std::optional<SignatureVector> find_signature(const SymMatrix& a) {
    const int n = a.dim();
    const double scale = a.max_abs();
    // Sign-propagate n_i * n_j = -sign(a_ij) across each component of
    // the nonzero pattern.
    std::vector<int> comp(n, -1), rel(n, 0);
    std::vector<int> roots;
    for (int start = 0; start < n; ++start) {
        if (comp[start] >= 0) continue;
        const int c = static_cast<int>(roots.size());
        roots.push_back(start);
        comp[start] = c;
        rel[start] = 1;
        std::queue<int> frontier;
        frontier.push(start);
        while (!frontier.empty()) {
            int i = frontier.front();
            frontier.pop();
            for (int j = 0; j < n; ++j) {
                if (j == i || detail::entry_is_zero(a.at(i, j), scale)) continue;
                int want = a.at(i, j).sign() > 0 ? -rel[i] : rel[i];
                if (comp[j] < 0) {
                    comp[j] = c;
                    rel[j] = want;
                    frontier.push(j);
                } else if (rel[j] != want) {
                    return std::nullopt;
                }
            }
        }
    }
    const int comps = static_cast<int>(roots.size());
    SymMatrix inv = invert(a);
    // Component orientations do not affect the off-diagonal condition
    // (cross-component entries are zero), only inverse nonnegativity.
    for (unsigned mask = 0; mask < (1u << (comps - 1)); ++mask) {
        std::vector<int> flip(comps, 1);
        for (int c = 1; c < comps; ++c)
            if (mask & (1u << (c - 1))) flip[c] = -1;
        std::vector<int> signs(n);
        for (int i = 0; i < n; ++i) signs[i] = rel[i] * flip[comp[i]];
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = 0; j < n && ok; ++j)
                if (signs[i] * signs[j] * inv.at(i, j).sign() < 0) ok = false;
        if (ok) {
            if (signs[0] < 0)
                for (auto& s : signs) s = -s;
            return SignatureVector{std::move(signs)};
        }
    }
    return std::nullopt;
}

SymMatrix conjugate_signs(const SymMatrix& a, const SignatureVector& n) {
    std::vector<Scalar> diag;
    diag.reserve(n.signs.size());
    for (int s : n.signs) diag.push_back(Scalar(s));
    return conjugate_diagonal(a, diag);
}

bool is_associated_candidate(const SymMatrix& g) {
    const int n = g.dim();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const Scalar& cap = (g.at(i, i) <= g.at(j, j)) ? g.at(i, i) : g.at(j, j);
            if ((g.at(i, j) - cap).sign() > 0) return false;
        }
    return true;
}

} // namespace gsq
