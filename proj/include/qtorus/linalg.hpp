#pragma once

// Exact linear algebra: sparse rank over F, rank over Q of integer matrices, and
// integer lattice helpers (unimodular transforms, alternating normal form).

#include <cstddef>
#include <map>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "phase.hpp"
#include "scalar.hpp"

namespace qtorus {

using SparseVector = std::map<int, CoeffScalar>;

/// Incremental row-echelon basis over F. Vectors are inserted one at a time; the
/// rank is the number of independent vectors seen. Pivots prefer Laurent units
/// (single-term entries), which keeps entries polynomial for phase matrices.
class EchelonBasis {
public:
    explicit EchelonBasis(FieldSpec field) : field_(field) {}

    /// Reduces v against the basis; returns true (and keeps it) if it was independent.
    bool insert(SparseVector v) {
        reduce(v);
        if (v.empty()) return false;
        int pivot = -1;
        for (const auto& [row, x] : v)
            if (x.is_laurent_unit()) {
                pivot = row;
                break;
            }
        if (pivot < 0) pivot = v.begin()->first;
        CoeffScalar inv = v.at(pivot).inverse();
        for (auto& [row, x] : v) x = x * inv;
        pivot_of_.emplace(pivot, rows_.size());
        rows_.emplace_back(pivot, std::move(v));
        return true;
    }

    std::size_t rank() const noexcept { return rows_.size(); }

    /// True iff v lies in the span.
    bool contains(SparseVector v) const {
        reduce(v);
        return v.empty();
    }

private:
    // Pivot vectors are stored in insertion order; each is zero at the pivots of all
    // earlier vectors, so one pass in insertion order clears every pivot position.
    void reduce(SparseVector& v) const {
        for (const auto& [pivot, row] : rows_) {
            auto it = v.find(pivot);
            if (it == v.end()) continue;
            CoeffScalar f = it->second;
            for (const auto& [r, x] : row) {
                CoeffScalar delta = f * x;
                auto [jt, inserted] = v.try_emplace(r, -delta);
                if (!inserted) {
                    jt->second -= delta;
                    if (jt->second.is_zero()) v.erase(jt);
                }
            }
        }
    }

    FieldSpec field_;
    std::vector<std::pair<int, SparseVector>> rows_;
    std::map<int, std::size_t> pivot_of_;
};

/// Rank over F of the matrix whose columns are given.
inline std::size_t rank_over_field(FieldSpec field, const std::vector<SparseVector>& columns) {
    EchelonBasis basis(field);
    for (const auto& c : columns) basis.insert(c);
    return basis.rank();
}

/// Rank over F of a dense matrix (rows x cols).
inline std::size_t rank_over_field(FieldSpec field, const std::vector<std::vector<CoeffScalar>>& m) {
    std::vector<SparseVector> cols;
    if (m.empty()) return 0;
    for (std::size_t j = 0; j < m[0].size(); ++j) {
        SparseVector c;
        for (std::size_t i = 0; i < m.size(); ++i)
            if (!m[i][j].is_zero()) c.emplace(static_cast<int>(i), m[i][j]);
        cols.push_back(std::move(c));
    }
    return rank_over_field(field, cols);
}

/// Rank over Q of an integer matrix.
inline int rank_over_q(const std::vector<std::vector<long long>>& m) {
    std::vector<std::vector<Rational>> a;
    for (const auto& row : m) {
        std::vector<Rational> r;
        for (auto x : row) r.push_back(to_rational(x));
        a.push_back(std::move(r));
    }
    int rank = 0;
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < rows; ++c) {
        std::size_t r = static_cast<std::size_t>(rank);
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (a[i][c] == 0) continue;
            Rational f = a[i][c] / a[r][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        ++rank;
    }
    return rank;
}

inline IntMatrix identity_matrix(int n) {
    IntMatrix m(static_cast<std::size_t>(n), std::vector<long long>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    return m;
}

inline IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
    const std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    IntMatrix r(n, std::vector<long long>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l)
            if (a[i][l] != 0)
                for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
    return r;
}

inline IntMatrix transpose(const IntMatrix& a) {
    if (a.empty()) return {};
    IntMatrix r(a[0].size(), std::vector<long long>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) r[j][i] = a[i][j];
    return r;
}

/// A random element of GL_n(Z) with its exact inverse, as a product of elementary
/// transvections, swaps and sign changes.
struct Unimodular {
    IntMatrix U;
    IntMatrix U_inv;
};

template <class Rng>
Unimodular random_unimodular(int n, Rng& rng, int steps = 6) {
    Unimodular out{identity_matrix(n), identity_matrix(n)};
    if (n == 1) {
        if (std::uniform_int_distribution<int>(0, 1)(rng)) out.U[0][0] = out.U_inv[0][0] = -1;
        return out;
    }
    std::uniform_int_distribution<int> idx(0, n - 1), kind(0, 3), coef(-2, 2);
    for (int s = 0; s < steps; ++s) {
        int i = idx(rng), j = idx(rng);
        if (i == j) j = (i + 1) % n;
        const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
        switch (kind(rng)) {
            case 0: {  // swap columns i, j
                for (auto& row : out.U) std::swap(row[ui], row[uj]);
                std::swap(out.U_inv[ui], out.U_inv[uj]);
                break;
            }
            case 1: {  // negate column i
                for (auto& row : out.U) row[ui] = -row[ui];
                for (auto& x : out.U_inv[ui]) x = -x;
                break;
            }
            default: {  // column j += c * column i
                long long c = coef(rng);
                if (c == 0) c = 1;
                for (auto& row : out.U) row[uj] += c * row[ui];
                // inverse: row i -= c * row j
                for (std::size_t k = 0; k < out.U_inv[ui].size(); ++k) out.U_inv[ui][k] -= c * out.U_inv[uj][k];
                break;
            }
        }
    }
    return out;
}

/// Congruence normal form of an integer alternating form: returns U in GL_n(Z) with
/// U^T A U block diagonal, blocks [[0, a_k], [-a_k, 0]] (a_k > 0) followed by zeros.
struct AlternatingForm {
    IntMatrix U;
    IntMatrix reduced;
    int blocks = 0;  // rank / 2
};

inline AlternatingForm alternating_normal_form(const IntMatrix& form) {
    const int n = static_cast<int>(form.size());
    std::vector<std::vector<Integer>> a(form.size());
    for (std::size_t i = 0; i < form.size(); ++i)
        for (auto x : form[i]) a[i].push_back(to_integer(x));
    std::vector<std::vector<Integer>> U(static_cast<std::size_t>(n), std::vector<Integer>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) U[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;

    auto sz = [](int i) { return static_cast<std::size_t>(i); };
    // basis change e_l <- e_l + q e_m
    auto transvect = [&](int l, int m, const Integer& q) {
        if (q == 0) return;
        for (int r = 0; r < n; ++r) a[sz(r)][sz(l)] += q * a[sz(r)][sz(m)];
        for (int c = 0; c < n; ++c) a[sz(l)][sz(c)] += q * a[sz(m)][sz(c)];
        for (int r = 0; r < n; ++r) U[sz(r)][sz(l)] += q * U[sz(r)][sz(m)];
    };
    auto swap_basis = [&](int l, int m) {
        if (l == m) return;
        for (int r = 0; r < n; ++r) std::swap(a[sz(r)][sz(l)], a[sz(r)][sz(m)]);
        std::swap(a[sz(l)], a[sz(m)]);
        for (int r = 0; r < n; ++r) std::swap(U[sz(r)][sz(l)], U[sz(r)][sz(m)]);
    };
    auto floor_div = [](const Integer& x, const Integer& y) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        return q;
    };

    int k = 0;
    while (k + 1 < n) {
        // smallest nonzero entry in the trailing block
        int bi = -1, bj = -1;
        Integer best = 0;
        for (int i = k; i < n; ++i)
            for (int j = k; j < n; ++j) {
                const Integer& x = a[sz(i)][sz(j)];
                if (x != 0 && (bi < 0 || abs(x) < best)) {
                    best = abs(x);
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0) break;
        swap_basis(k, bi);
        if (bj == k) bj = bi;
        swap_basis(k + 1, bj);
        if (a[sz(k)][sz(k + 1)] < 0) swap_basis(k, k + 1);
        const Integer p = a[sz(k)][sz(k + 1)];
        bool clean = true;
        for (int l = k + 2; l < n; ++l) {
            // B(e_k, e_l - q e_{k+1}) = a[k][l] - q p
            transvect(l, k + 1, -floor_div(a[sz(k)][sz(l)], p));
            // B(e_{k+1}, e_l + q e_k) = a[k+1][l] - q p
            transvect(l, k, floor_div(a[sz(k + 1)][sz(l)], p));
            if (a[sz(k)][sz(l)] != 0 || a[sz(k + 1)][sz(l)] != 0) clean = false;
        }
        if (clean) k += 2;
    }

    AlternatingForm out;
    out.blocks = k / 2;
    // k may stop at a position where the remaining block is zero
    out.U.assign(sz(n), std::vector<long long>(sz(n)));
    out.reduced.assign(sz(n), std::vector<long long>(sz(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            out.U[sz(i)][sz(j)] = U[sz(i)][sz(j)].get_si();
            out.reduced[sz(i)][sz(j)] = a[sz(i)][sz(j)].get_si();
        }
    return out;
}

}  // namespace qtorus
