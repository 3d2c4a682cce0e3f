#pragma once

// Context files: a small YAML document describing theta.
//
//   n: 2
//   d: 3
//   C: [["0", "1/3"], ["-1/3", "0"]]
//   s: 1
//   M: [[[0, 1], [-1, 0]]]
//   tau_hat: [0.41421356237309503]      # optional, numeric layer only
//   radial: [[1, 1], [1, 1]]             # optional |q_ij|
//
// Every diagnostic carries the 1-based line of the offending node.

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "../errors.hpp"
#include "../seminorms.hpp"

namespace qtorus::io {

struct ContextFile {
    ThetaMatrix theta;
    std::optional<std::vector<double>> tau_hat;
    std::optional<std::vector<std::vector<double>>> radial;

    NumericContext numeric() const { return {theta, tau_hat.value_or(std::vector<double>{}), radial}; }
};

namespace detail {

inline int line_of(const YAML::Node& node) { return node.Mark().line >= 0 ? node.Mark().line + 1 : 0; }

template <class T>
T scalar_as(const YAML::Node& node, const std::string& what) {
    if (!node.IsScalar()) throw context_error(what + " must be a scalar", line_of(node));
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        throw context_error(what + " has invalid value '" + node.Scalar() + "'", line_of(node));
    }
}

inline Rational fraction(const YAML::Node& node, const std::string& what) {
    if (!node.IsScalar()) throw context_error(what + " must be a fraction string \"p/q\"", line_of(node));
    const std::string& text = node.Scalar();
    Rational r;
    bool ok = !text.empty() && text.find_first_not_of("+-0123456789/") == std::string::npos &&
              r.set_str(text[0] == '+' ? text.substr(1) : text, 10) == 0 && r.get_den() != 0;
    if (!ok) throw context_error(what + " is not a fraction: '" + text + "'", line_of(node));
    r.canonicalize();
    return r;
}

inline YAML::Node square(const YAML::Node& node, int n, const std::string& what) {
    if (!node.IsSequence() || static_cast<int>(node.size()) != n)
        throw context_error(what + " must be a list of " + std::to_string(n) + " rows", line_of(node));
    for (std::size_t i = 0; i < node.size(); ++i)
        if (!node[i].IsSequence() || static_cast<int>(node[i].size()) != n)
            throw context_error(what + " row " + std::to_string(i + 1) + " must have " + std::to_string(n) + " entries",
                                line_of(node[i]));
    return node;
}

inline std::string entry(const std::string& name, std::size_t i, std::size_t j) {
    return name + "[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]";
}

}  // namespace detail

inline ContextFile parse_context(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw context_error("malformed document: " + e.msg, e.mark.line + 1);
    }
    if (!root.IsMap()) throw context_error("context must be a mapping with keys n, d, C, s, M", detail::line_of(root));

    static const std::set<std::string> known = {"n", "d", "C", "s", "M", "tau_hat", "radial"};
    for (const auto& kv : root) {
        const auto key = kv.first.as<std::string>();
        if (!known.contains(key)) throw context_error("unknown key '" + key + "'", detail::line_of(kv.first));
    }
    for (const char* key : {"n", "d", "C", "s"})
        if (!root[key]) throw context_error(std::string("missing required key '") + key + "'", detail::line_of(root));

    const int n = detail::scalar_as<int>(root["n"], "n");
    if (n < 1) throw context_error("n must be >= 1", detail::line_of(root["n"]));
    const int d = detail::scalar_as<int>(root["d"], "d");
    if (d < 1) throw context_error("d must be >= 1", detail::line_of(root["d"]));
    const int s = detail::scalar_as<int>(root["s"], "s");
    if (s < 0) throw context_error("s must be >= 0", detail::line_of(root["s"]));
    const auto un = static_cast<std::size_t>(n);

    YAML::Node Cn = detail::square(root["C"], n, "C");
    RatMatrix C(un, std::vector<Rational>(un));
    for (std::size_t i = 0; i < un; ++i)
        for (std::size_t j = 0; j < un; ++j) {
            C[i][j] = detail::fraction(Cn[i][j], detail::entry("C", i, j));
            if (Rational(C[i][j] * d).get_den() != 1)
                throw context_error("denominator of " + detail::entry("C", i, j) + " = " + C[i][j].get_str() +
                                        " does not divide d = " + std::to_string(d),
                                    detail::line_of(Cn[i][j]));
        }
    for (std::size_t i = 0; i < un; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            if (C[i][j] != -C[j][i])
                throw context_error("C is not skew-symmetric at " + detail::entry("C", i, j), detail::line_of(Cn[i][j]));

    std::vector<IntMatrix> M;
    if (s > 0 || root["M"]) {
        YAML::Node Mn = root["M"];
        if (!Mn || !Mn.IsSequence() || static_cast<int>(Mn.size()) != s)
            throw context_error("M must be a list of s = " + std::to_string(s) + " matrices",
                                detail::line_of(Mn ? Mn : root));
        for (std::size_t t = 0; t < Mn.size(); ++t) {
            const std::string name = "M[" + std::to_string(t + 1) + "]";
            YAML::Node mt = detail::square(Mn[t], n, name);
            IntMatrix m(un, std::vector<long long>(un));
            for (std::size_t i = 0; i < un; ++i)
                for (std::size_t j = 0; j < un; ++j)
                    m[i][j] = detail::scalar_as<long long>(mt[i][j], detail::entry(name, i, j));
            for (std::size_t i = 0; i < un; ++i)
                for (std::size_t j = 0; j <= i; ++j)
                    if (m[i][j] != -m[j][i])
                        throw context_error(name + " is not skew-symmetric at " + detail::entry(name, i, j),
                                            detail::line_of(mt[i][j]));
            M.push_back(std::move(m));
        }
    }

    ContextFile out{ThetaMatrix(d, std::move(C), std::move(M)), {}, {}};

    if (YAML::Node tn = root["tau_hat"]) {
        if (!tn.IsSequence() || static_cast<int>(tn.size()) != s)
            throw context_error("tau_hat must list s = " + std::to_string(s) + " real numbers", detail::line_of(tn));
        std::vector<double> tau;
        for (std::size_t t = 0; t < tn.size(); ++t)
            tau.push_back(detail::scalar_as<double>(tn[t], "tau_hat[" + std::to_string(t + 1) + "]"));
        out.tau_hat = std::move(tau);
    }
    if (YAML::Node rn = root["radial"]) {
        detail::square(rn, n, "radial");
        std::vector<std::vector<double>> r(un, std::vector<double>(un));
        for (std::size_t i = 0; i < un; ++i)
            for (std::size_t j = 0; j < un; ++j) {
                r[i][j] = detail::scalar_as<double>(rn[i][j], detail::entry("radial", i, j));
                if (!(r[i][j] > 0))
                    throw context_error(detail::entry("radial", i, j) + " must be positive", detail::line_of(rn[i][j]));
            }
        out.radial = std::move(r);
    }
    return out;
}

inline ContextFile load_context(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw context_error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_context(ss.str());
}

}  // namespace qtorus::io
