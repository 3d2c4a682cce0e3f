#pragma once

// Phase group and deformation data: angles theta with q = exp(2 pi i theta).
//
// An Angle is c + sum_t m_t * tau_t (in full turns), where tau_1..tau_s are formal
// irrationals declared Q-linearly independent together with 1. exp(2 pi i Angle)
// is realized exactly in F as zeta_d^{c d} * prod_t u_t^{m_t}.

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "scalar.hpp"

namespace qtorus {

class Angle {
public:
    Angle() = default;
    explicit Angle(int s) : m_(static_cast<std::size_t>(s), 0) {}
    Angle(Rational c, std::vector<long long> m) : c_(std::move(c)), m_(std::move(m)) { c_.canonicalize(); }

    const Rational& rational_part() const noexcept { return c_; }
    const std::vector<long long>& irrational_part() const noexcept { return m_; }
    int s() const noexcept { return static_cast<int>(m_.size()); }

    /// exp(2 pi i a) == 1.
    bool is_trivial() const {
        for (auto x : m_)
            if (x != 0) return false;
        return c_.get_den() == 1;
    }

    Angle& operator+=(const Angle& o) {
        check(o);
        c_ += o.c_;
        for (std::size_t t = 0; t < m_.size(); ++t) m_[t] += o.m_[t];
        return *this;
    }
    Angle& operator-=(const Angle& o) {
        check(o);
        c_ -= o.c_;
        for (std::size_t t = 0; t < m_.size(); ++t) m_[t] -= o.m_[t];
        return *this;
    }
    Angle& operator*=(long long k) {
        c_ *= static_cast<long>(k);
        for (auto& x : m_) x *= k;
        return *this;
    }
    friend Angle operator+(Angle a, const Angle& b) { return a += b; }
    friend Angle operator-(Angle a, const Angle& b) { return a -= b; }
    friend Angle operator*(long long k, Angle a) { return a *= k; }
    Angle operator-() const {
        Angle r = *this;
        r.c_ = -r.c_;
        for (auto& x : r.m_) x = -x;
        return r;
    }

    /// Equality in the phase group: same m and rational parts differing by an integer.
    bool group_equal(const Angle& o) const { return (*this - o).is_trivial(); }
    /// Representation equality (rational parts compared exactly, not mod 1).
    friend bool operator==(const Angle& a, const Angle& b) { return a.c_ == b.c_ && a.m_ == b.m_; }

    std::string to_string() const {
        std::ostringstream os;
        os << c_.get_str();
        if (!m_.empty()) {
            os << "@";
            for (std::size_t t = 0; t < m_.size(); ++t) os << (t ? "," : "") << m_[t];
        }
        return os.str();
    }

private:
    void check(const Angle& o) const {
        if (m_.size() != o.m_.size()) throw std::invalid_argument("Angle: mismatched number of irrationals");
    }

    Rational c_ = 0;
    std::vector<long long> m_;
};

using IntMatrix = std::vector<std::vector<long long>>;
using RatMatrix = std::vector<std::vector<Rational>>;

/// Exact deformation data: theta = C + sum_t tau_t M_t, skew-symmetric with zero diagonal.
class ThetaMatrix {
public:
    ThetaMatrix() = default;
    ThetaMatrix(int d, RatMatrix C, std::vector<IntMatrix> M)
        : n_(static_cast<int>(C.size())), d_(d), C_(std::move(C)), M_(std::move(M)) {
        validate();
        field_ = FieldSpec::make(d_, s());
    }

    /// The commutative torus: all angles zero.
    static ThetaMatrix commutative(int n, int s = 0) {
        RatMatrix C(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
        std::vector<IntMatrix> M(static_cast<std::size_t>(s),
                                 IntMatrix(static_cast<std::size_t>(n), std::vector<long long>(static_cast<std::size_t>(n), 0)));
        return ThetaMatrix(1, std::move(C), std::move(M));
    }

    int n() const noexcept { return n_; }
    int d() const noexcept { return d_; }
    int s() const noexcept { return static_cast<int>(M_.size()); }
    const RatMatrix& rational_part() const noexcept { return C_; }
    const std::vector<IntMatrix>& irrational_parts() const noexcept { return M_; }
    const FieldSpec& field() const noexcept { return field_; }

    /// theta_ij as an Angle (0-based indices).
    Angle theta(int i, int j) const {
        std::vector<long long> m(M_.size());
        for (std::size_t t = 0; t < M_.size(); ++t) m[t] = M_[t][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        return Angle(C_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], std::move(m));
    }
    Angle zero_angle() const { return Angle(s()); }

    /// True when every angle is trivial (the commutative Laurent algebra).
    bool is_commutative() const {
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                if (!theta(i, j).is_trivial()) return false;
        return true;
    }

    friend bool operator==(const ThetaMatrix& a, const ThetaMatrix& b) {
        return a.d_ == b.d_ && a.C_ == b.C_ && a.M_ == b.M_;
    }

private:
    void validate() const {
        if (n_ < 1) throw std::invalid_argument("ThetaMatrix: n must be >= 1");
        if (d_ < 1) throw std::invalid_argument("ThetaMatrix: d must be >= 1");
        const auto n = static_cast<std::size_t>(n_);
        for (std::size_t i = 0; i < n; ++i) {
            if (C_[i].size() != n) throw std::invalid_argument("ThetaMatrix: C must be n x n");
            for (std::size_t j = 0; j < n; ++j) {
                if (C_[i][j] != -C_[j][i]) throw std::invalid_argument("ThetaMatrix: C must be skew-symmetric");
                Rational scaled = C_[i][j] * d_;
                if (scaled.get_den() != 1)
                    throw std::invalid_argument("ThetaMatrix: denominator of C[" + std::to_string(i + 1) + "][" +
                                                std::to_string(j + 1) + "] does not divide d");
            }
        }
        for (std::size_t t = 0; t < M_.size(); ++t) {
            if (M_[t].size() != n) throw std::invalid_argument("ThetaMatrix: M_t must be n x n");
            for (std::size_t i = 0; i < n; ++i) {
                if (M_[t][i].size() != n) throw std::invalid_argument("ThetaMatrix: M_t must be n x n");
                for (std::size_t j = 0; j < n; ++j)
                    if (M_[t][i][j] != -M_[t][j][i])
                        throw std::invalid_argument("ThetaMatrix: M_" + std::to_string(t + 1) + " must be skew-symmetric");
            }
        }
    }

    int n_ = 0;
    int d_ = 1;
    RatMatrix C_;
    std::vector<IntMatrix> M_;
    FieldSpec field_;
};

inline Angle angle_add(const Angle& a, const Angle& b) { return a + b; }
inline bool is_trivial(const Angle& a) { return a.is_trivial(); }

/// B(alpha, beta) = alpha^T theta beta, so that x^alpha x^beta = exp(2 pi i B) x^beta x^alpha.
template <class Index>
Angle commutation_angle(const ThetaMatrix& ctx, const Index& alpha, const Index& beta) {
    const int n = ctx.n();
    if (static_cast<int>(alpha.size()) != n || static_cast<int>(beta.size()) != n)
        throw std::invalid_argument("commutation_angle: dimension mismatch");
    Angle acc = ctx.zero_angle();
    for (int i = 0; i < n; ++i) {
        if (alpha[static_cast<std::size_t>(i)] == 0) continue;
        for (int j = 0; j < n; ++j) {
            long long w = static_cast<long long>(alpha[static_cast<std::size_t>(i)]) * beta[static_cast<std::size_t>(j)];
            if (w != 0 && i != j) acc += w * ctx.theta(i, j);
        }
    }
    return acc;
}

/// zeta_d^{c d} * prod_t u_t^{m_t}; requires c*d to be an integer.
inline CoeffScalar angle_to_scalar(const Angle& a, const FieldSpec& field) {
    if (a.s() != field.s) throw std::invalid_argument("angle_to_scalar: mismatched number of irrationals");
    Rational cd = a.rational_part() * field.d();
    if (cd.get_den() != 1)
        throw std::domain_error("angle_to_scalar: rational part " + a.rational_part().get_str() +
                                " is not a multiple of 1/" + std::to_string(field.d()));
    long long k = cd.get_num().get_si();
    return CoeffScalar::monomial(field, k, a.irrational_part());
}

inline CoeffScalar angle_to_scalar(const Angle& a, const ThetaMatrix& ctx) { return angle_to_scalar(a, ctx.field()); }

}  // namespace qtorus
