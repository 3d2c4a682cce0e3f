#pragma once

// Brute-force Hochschild homology from the normalized bar complex, as an independent
// check on the Koszul computation.
//
// C_p(A, A_sigma) has basis (m | a_1 .. a_p) with nonzero monomial legs a_i and the
// coefficient monomial m = gamma - sum a_i at total mode gamma. The complex is truncated
// to legs with sum |a_i|_1 <= B; the face maps never increase that weight, so this is a
// subcomplex at every mode, and it agrees with the full complex on modes |gamma|_inf <= B - p
// (the interior window) once C_{p+1} is nonempty, i.e. p + 1 <= B.
//
//   d(m | a_1..a_p) = sigma(a_1)-phase * p(m,a_1)-phase (m+a_1 | a_2..a_p)
//                   + sum_i (-1)^i p(a_i,a_{i+1})-phase (m | .., a_i+a_{i+1}, ..)   [dropped when a_i+a_{i+1} = 0]
//                   + (-1)^p p(a_p,m)-phase (a_p+m | a_1..a_{p-1})

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "koszul.hpp"

namespace qtorus {

struct BarOracleLimits {
    static constexpr int max_n = 2;
    static constexpr int max_bound = 4;
    static constexpr int max_degree = 3;
};

struct BarOracleMode {
    MultiIndex mode;
    bool reliable = false;
    std::optional<int> dim;  // only for reliable modes
};

struct BarOracleResult {
    int degree = 0;
    int bound = 0;
    std::vector<BarOracleMode> modes;  // every mode with |gamma|_inf <= bound, lex order
};

class BarComplex {
public:
    BarComplex(const ThetaMatrix& ctx, ScalingAutomorphism sigma, int bound, int max_degree)
        : ctx_(ctx), sigma_(std::move(sigma)), bound_(bound) {
        if (bound < 1) throw std::invalid_argument("bar oracle: bound must be >= 1");
        if (ctx.n() > BarOracleLimits::max_n || bound > BarOracleLimits::max_bound ||
            max_degree > BarOracleLimits::max_degree)
            throw infeasible_error("bar oracle is limited to n <= " + std::to_string(BarOracleLimits::max_n) +
                                   ", bound <= " + std::to_string(BarOracleLimits::max_bound) + ", degree <= " +
                                   std::to_string(BarOracleLimits::max_degree) + " (requested n = " +
                                   std::to_string(ctx.n()) + ", bound = " + std::to_string(bound) +
                                   ", degree = " + std::to_string(max_degree) + ")");
        detail::check_twist(ctx, sigma_);
        ModeSet::for_each_in_box(ctx.n(), bound, [&](const MultiIndex& v) {
            if (!v.is_zero() && v.l1() <= bound) legs_.push_back(v);
        });
        for (int p = 0; p <= max_degree + 1; ++p) basis_.push_back(enumerate(p));
        for (int p = 0; p <= max_degree + 1; ++p) {
            std::map<std::vector<MultiIndex>, int> at;
            for (std::size_t i = 0; i < basis_[static_cast<std::size_t>(p)].size(); ++i)
                at.emplace(basis_[static_cast<std::size_t>(p)][i], static_cast<int>(i));
            index_.push_back(std::move(at));
        }
    }

    int bound() const noexcept { return bound_; }
    std::size_t chain_size(int p) const { return basis_.at(static_cast<std::size_t>(p)).size(); }

    /// Reliability window for degree p.
    bool reliable(const MultiIndex& gamma, int p) const { return p + 1 <= bound_ && gamma.sup() <= bound_ - p; }

    /// rank of d_p: C_p -> C_{p-1} at mode gamma (0 for p = 0).
    int rank(int p, const MultiIndex& gamma) {
        if (p <= 0) return 0;
        auto key = std::make_pair(p, gamma);
        if (auto it = ranks_.find(key); it != ranks_.end()) return it->second;
        EchelonBasis echelon(ctx_.field());
        for (const auto& legs : basis_.at(static_cast<std::size_t>(p))) echelon.insert(column(p, gamma, legs));
        int r = static_cast<int>(echelon.rank());
        ranks_.emplace(key, r);
        return r;
    }

    int homology_dim(int p, const MultiIndex& gamma) {
        return static_cast<int>(chain_size(p)) - rank(p, gamma) - rank(p + 1, gamma);
    }

private:
    std::vector<std::vector<MultiIndex>> enumerate(int p) const {
        std::vector<std::vector<MultiIndex>> out;
        std::vector<MultiIndex> cur;
        auto rec = [&](auto&& self, long long weight) -> void {
            if (static_cast<int>(cur.size()) == p) {
                out.push_back(cur);
                return;
            }
            for (const auto& v : legs_)
                if (weight + v.l1() <= bound_) {
                    cur.push_back(v);
                    self(self, weight + v.l1());
                    cur.pop_back();
                }
        };
        rec(rec, 0);
        return out;
    }

    CoeffScalar phase(const Angle& a) const { return angle_to_scalar(a, ctx_); }

    SparseVector column(int p, const MultiIndex& gamma, const std::vector<MultiIndex>& legs) const {
        MultiIndex m = gamma;
        for (const auto& a : legs) m -= a;
        SparseVector col;
        auto add = [&](const std::vector<MultiIndex>& target, const CoeffScalar& c) {
            const auto& at = index_.at(static_cast<std::size_t>(p - 1));
            auto it = at.find(target);
            if (it == at.end()) throw std::logic_error("bar oracle: face map left the truncated complex");
            auto [jt, inserted] = col.try_emplace(it->second, c);
            if (!inserted) {
                jt->second += c;
                if (jt->second.is_zero()) col.erase(jt);
            }
        };
        const auto up = static_cast<std::size_t>(p);
        // d_0: m . a_1 = m sigma(a_1)
        add(std::vector<MultiIndex>(legs.begin() + 1, legs.end()),
            phase(sigma_.phase_of(legs[0]) + monomial_product_phase(ctx_, m, legs[0])));
        for (std::size_t i = 0; i + 1 < up; ++i) {
            MultiIndex s = legs[i] + legs[i + 1];
            if (s.is_zero()) continue;
            std::vector<MultiIndex> t;
            t.insert(t.end(), legs.begin(), legs.begin() + static_cast<std::ptrdiff_t>(i));
            t.push_back(s);
            t.insert(t.end(), legs.begin() + static_cast<std::ptrdiff_t>(i) + 2, legs.end());
            CoeffScalar c = phase(monomial_product_phase(ctx_, legs[i], legs[i + 1]));
            add(t, (i % 2 == 0) ? -c : c);  // sign (-1)^{i+1} for 0-based i
        }
        // d_p: a_p . m
        CoeffScalar c = phase(monomial_product_phase(ctx_, legs[up - 1], m));
        add(std::vector<MultiIndex>(legs.begin(), legs.end() - 1), (p % 2 == 0) ? c : -c);
        return col;
    }

    ThetaMatrix ctx_;
    ScalingAutomorphism sigma_;
    int bound_;
    std::vector<MultiIndex> legs_;
    std::vector<std::vector<std::vector<MultiIndex>>> basis_;
    std::vector<std::map<std::vector<MultiIndex>, int>> index_;
    std::map<std::pair<int, MultiIndex>, int> ranks_;
};

/// Homology dimensions of degree p on every mode |gamma|_inf <= bound; only modes in the
/// interior window carry a dimension, the rest are flagged unreliable.
inline BarOracleResult bar_oracle(const ThetaMatrix& ctx, const ScalingAutomorphism& sigma, int bound, int degree) {
    if (degree < 0) throw std::invalid_argument("bar oracle: degree must be >= 0");
    BarComplex bar(ctx, sigma, bound, degree);
    BarOracleResult res;
    res.degree = degree;
    res.bound = bound;
    ModeSet::for_each_in_box(ctx.n(), bound, [&](const MultiIndex& g) {
        BarOracleMode m{g, bar.reliable(g, degree), std::nullopt};
        if (m.reliable) m.dim = bar.homology_dim(degree, g);
        res.modes.push_back(std::move(m));
    });
    return res;
}

}  // namespace qtorus
