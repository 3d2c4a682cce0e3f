#pragma once

// Double-precision layer for the holomorphic and smooth completions: the seminorms
// ||a||_rho = sum |c_a| rho^|a| and ||a||_k = sum |c_a| |a|^k, the deformed product with
// numeric phases, continuity checks, and the unimodularity guard.

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlaurent.hpp"

namespace qtorus {

/// A context with real stand-ins tau_hat_t for the formal irrationals, and optional radial
/// parts r_ij of q_ij (absent means every |q_ij| = 1).
struct NumericContext {
    ThetaMatrix theta;
    std::vector<double> tau_hat;
    std::optional<std::vector<std::vector<double>>> radial;

    void require_tau() const {
        if (static_cast<int>(tau_hat.size()) != theta.s())
            throw std::invalid_argument("numeric context needs " + std::to_string(theta.s()) +
                                        " tau_hat value(s), got " + std::to_string(tau_hat.size()));
    }

    /// exp(2 pi i (c + sum_t m_t tau_hat_t)).
    std::complex<double> phase(const Angle& a) const {
        require_tau();
        double x = a.rational_part().get_d();
        for (std::size_t t = 0; t < tau_hat.size(); ++t) x += static_cast<double>(a.irrational_part()[t]) * tau_hat[t];
        // reduce before scaling to keep the argument small
        x -= std::floor(x);
        return std::polar(1.0, 2.0 * std::numbers::pi * x);
    }
};

class NumericElement {
public:
    using TermMap = std::map<MultiIndex, std::complex<double>>;

    explicit NumericElement(int n) : n_(n) {}

    static NumericElement from_exact(const QLaurent& a, const std::vector<double>& tau_hat) {
        NumericElement out(a.n());
        for (const auto& [g, c] : a.terms()) out.add_term(g, c.evaluate(tau_hat));
        return out;
    }

    int n() const noexcept { return n_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add_term(const MultiIndex& g, std::complex<double> c) {
        if (static_cast<int>(g.size()) != n_) throw std::invalid_argument("NumericElement: index length mismatch");
        auto [it, inserted] = terms_.try_emplace(g, c);
        if (!inserted) it->second += c;
        if (it->second == std::complex<double>(0.0)) terms_.erase(it);
    }

    std::complex<double> coefficient(const MultiIndex& g) const {
        auto it = terms_.find(g);
        return it == terms_.end() ? std::complex<double>(0.0) : it->second;
    }

    NumericElement scaled(std::complex<double> s) const {
        NumericElement out(n_);
        for (const auto& [g, c] : terms_) out.add_term(g, s * c);
        return out;
    }

    friend NumericElement operator+(const NumericElement& a, const NumericElement& b) {
        NumericElement out = a;
        for (const auto& [g, c] : b.terms_) out.add_term(g, c);
        return out;
    }

private:
    int n_;
    TermMap terms_;
};

inline double seminorm_rho(const NumericElement& a, double rho) {
    if (!(rho > 0)) throw std::invalid_argument("seminorm_rho: rho must be positive");
    double acc = 0;
    for (const auto& [g, c] : a.terms()) acc += std::abs(c) * std::pow(rho, static_cast<double>(g.l1()));
    return acc;
}

/// plain: |alpha|^k with 0^0 = 1. shifted: (1 + |alpha|)^k, a norm for every k.
enum class SmoothWeight { plain, shifted };

inline std::string to_string(SmoothWeight w) { return w == SmoothWeight::plain ? "plain" : "shifted"; }

inline SmoothWeight parse_weight(const std::string& s) {
    if (s == "plain") return SmoothWeight::plain;
    if (s == "shifted") return SmoothWeight::shifted;
    throw std::invalid_argument("unknown weight '" + s + "' (expected plain or shifted)");
}

inline double smooth_weight(long long l1, int k, SmoothWeight w) {
    if (k == 0) return 1.0;
    const double base = static_cast<double>(w == SmoothWeight::plain ? l1 : l1 + 1);
    return std::pow(base, k);
}

inline double seminorm_k(const NumericElement& a, int k, SmoothWeight w = SmoothWeight::plain) {
    if (k < 0) throw std::invalid_argument("seminorm_k: k must be nonnegative");
    double acc = 0;
    for (const auto& [g, c] : a.terms()) acc += std::abs(c) * smooth_weight(g.l1(), k, w);
    return acc;
}

/// The deformed product on finite supports: x^a x^b = exp(2 pi i p(a,b)) x^{a+b}.
inline NumericElement numeric_multiply(const NumericContext& ctx, const NumericElement& a, const NumericElement& b) {
    ctx.require_tau();
    if (a.n() != ctx.theta.n() || b.n() != ctx.theta.n())
        throw std::invalid_argument("numeric_multiply: element does not match the context");
    NumericElement out(ctx.theta.n());
    for (const auto& [ga, ca] : a.terms())
        for (const auto& [gb, cb] : b.terms())
            out.add_term(ga + gb, ca * cb * ctx.phase(monomial_product_phase(ctx.theta, ga, gb)));
    return out;
}

struct ContinuityReport {
    bool pass = false;
    double rho = 0, sigma = 0;
    double lhs_rho = 0, rhs_rho = 0, margin_rho = 0;  // ||ab||_rho <= ||a||_sigma ||b||_sigma
    int k = 0;
    double lhs_k = 0, rhs_k = 0, margin_k = 0;  // ||ab||_k <= ||a||'_k ||b||'_k, ' = shifted weight
    std::string message;
};

/// Checks both continuity estimates at relative tolerance `tol`. Since |q_ij| = 1 they
/// follow from the triangle inequality, so a failure points at an implementation bug.
inline ContinuityReport continuity_check(const NumericContext& ctx, const NumericElement& a, const NumericElement& b,
                                         double rho, int k = 2, double tol = 1e-12) {
    if (!(rho > 0)) throw std::invalid_argument("continuity_check: rho must be positive");
    ContinuityReport r;
    r.rho = rho;
    r.sigma = std::max(rho, 1.0);
    r.k = k;
    NumericElement ab = numeric_multiply(ctx, a, b);
    r.lhs_rho = seminorm_rho(ab, rho);
    r.rhs_rho = seminorm_rho(a, r.sigma) * seminorm_rho(b, r.sigma);
    r.margin_rho = r.rhs_rho - r.lhs_rho;
    r.lhs_k = seminorm_k(ab, k, SmoothWeight::plain);
    r.rhs_k = seminorm_k(a, k, SmoothWeight::shifted) * seminorm_k(b, k, SmoothWeight::shifted);
    r.margin_k = r.rhs_k - r.lhs_k;
    const bool ok_rho = r.lhs_rho <= r.rhs_rho * (1 + tol);
    const bool ok_k = r.lhs_k <= r.rhs_k * (1 + tol);
    r.pass = ok_rho && ok_k;
    std::ostringstream os;
    os.precision(17);
    if (!ok_rho) os << "rho estimate violated: " << r.lhs_rho << " > " << r.rhs_rho;
    else if (!ok_k) os << "smooth estimate violated: " << r.lhs_k << " > " << r.rhs_k;
    else os << "both estimates hold";
    r.message = os.str();
    return r;
}

struct GuardResult {
    bool accepted = true;
    std::optional<std::pair<int, int>> offending;  // 0-based (i, j), i < j
    std::string message;
};

/// Completions exist only when every |q_ij| = 1: otherwise the Arens-Michael envelope of
/// the algebraic quantum torus is zero.
inline GuardResult unimodularity_guard(const NumericContext& ctx) {
    GuardResult g;
    if (!ctx.radial) {
        g.message = "all |q_ij| = 1";
        return g;
    }
    const auto& r = *ctx.radial;
    const int n = ctx.theta.n();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double x = r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (x != 1.0) {
                g.accepted = false;
                g.offending = std::make_pair(i, j);
                std::ostringstream os;
                os << "|q_" << i + 1 << j + 1 << "| = " << x
                   << " != 1: the Arens-Michael envelope of the "
                      "algebraic quantum torus is zero when some |q_ij| != 1, so no nonzero holomorphic or "
                      "smooth completion exists; refusing to construct one";
                g.message = os.str();
                return g;
            }
        }
    g.message = "all |q_ij| = 1";
    return g;
}

}  // namespace qtorus
