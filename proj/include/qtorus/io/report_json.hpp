#pragma once

// Report documents (schema "qtorus-report/1"): JSON with sorted keys, plus a plain-text
// rendering of the same tree.

#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "../checks.hpp"
#include "../dimensions.hpp"
#include "../koszul.hpp"

namespace qtorus::io {

using json = nlohmann::json;

inline constexpr const char* report_schema = "qtorus-report/1";

/// Parses "c" or "c@m1,...,ms" (the format of Angle::to_string), c a fraction.
inline Angle parse_angle(const std::string& text, int s) {
    const auto at = text.find('@');
    Rational c;
    const std::string cs = text.substr(0, at);
    if (cs.empty() || cs.find_first_not_of("+-0123456789/") != std::string::npos ||
        c.set_str(cs[0] == '+' ? cs.substr(1) : cs, 10) != 0 || c.get_den() == 0)
        throw std::invalid_argument("bad angle '" + text + "': rational part must look like p/q");
    c.canonicalize();
    std::vector<long long> m;
    if (at != std::string::npos) {
        std::stringstream ss(text.substr(at + 1));
        std::string part;
        while (std::getline(ss, part, ',')) {
            std::size_t used = 0;
            long long v = 0;
            try {
                v = std::stoll(part, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != part.size() || part.empty())
                throw std::invalid_argument("bad angle '" + text + "': irrational part must be integers");
            m.push_back(v);
        }
    }
    if (m.empty()) m.assign(static_cast<std::size_t>(s), 0);
    if (static_cast<int>(m.size()) != s)
        throw std::invalid_argument("bad angle '" + text + "': expected " + std::to_string(s) + " irrational coefficient(s)");
    return Angle(c, std::move(m));
}

/// "id", "alpha", or "custom:b1;b2;...;bn" with each b_j an angle as in parse_angle.
inline ScalingAutomorphism parse_twist(const std::string& text, const ThetaMatrix& ctx) {
    if (text == "id") return ScalingAutomorphism::identity(ctx);
    if (text == "alpha") return ScalingAutomorphism::koszul_alpha(ctx);
    const std::string prefix = "custom:";
    if (text.rfind(prefix, 0) != 0)
        throw std::invalid_argument("unknown twist '" + text + "' (expected id, alpha or custom:b1;...;bn)");
    std::vector<Angle> b;
    std::stringstream ss(text.substr(prefix.size()));
    std::string part;
    while (std::getline(ss, part, ';')) b.push_back(parse_angle(part, ctx.s()));
    if (static_cast<int>(b.size()) != ctx.n())
        throw std::invalid_argument("custom twist needs " + std::to_string(ctx.n()) + " angles, got " +
                                    std::to_string(b.size()));
    ScalingAutomorphism sigma(std::move(b));
    qtorus::detail::check_twist(ctx, sigma);
    return sigma;
}

inline json context_json(const ThetaMatrix& ctx) {
    json C = json::array();
    for (const auto& row : ctx.rational_part()) {
        json r = json::array();
        for (const auto& x : row) r.push_back(x.get_str());
        C.push_back(r);
    }
    return {{"n", ctx.n()}, {"d", ctx.d()}, {"s", ctx.s()}, {"C", C}, {"M", ctx.irrational_parts()}};
}

inline json twist_json(const ScalingAutomorphism& sigma) {
    json out = json::array();
    for (const auto& b : sigma.angles()) out.push_back(b.to_string());
    return out;
}

inline json dim_json(const DimValue& v) {
    if (v.exact) return v.value;
    return v.to_string();
}

inline json document(const std::string& command, const ThetaMatrix& ctx) {
    return {{"schema", report_schema}, {"command", command}, {"context", context_json(ctx)}};
}

inline json report_document(const ThetaMatrix& ctx, const DimensionReport& r, int bound) {
    json doc = document("report", ctx);
    doc["flavor"] = to_string(r.flavor);
    doc["bound"] = bound;
    doc["dg"] = dim_json(r.dg);
    doc["w_dg"] = dim_json(r.w_dg);
    doc["db"] = dim_json(r.db);
    doc["w_db"] = dim_json(r.w_db);
    doc["complete"] = r.dg.exact && r.w_dg.exact && r.db.exact && r.w_db.exact;
    doc["generic_criterion"] = r.generic_criterion;
    doc["notes"] = r.notes;
    if (r.witness) {
        json basis = json::array();
        for (const auto& v : r.witness->basis) basis.push_back(v.values());
        doc["witness"] = {{"rank", r.witness->rank},
                          {"basis", basis},
                          {"complete", r.witness->complete},
                          {"upper_bound", r.witness->upper_bound},
                          {"method", r.witness->method}};
    } else {
        doc["witness"] = nullptr;
    }
    return doc;
}

inline json modeset_json(const ModeSet& ms) {
    json eqs = json::array(), cons = json::array();
    for (const auto& e : ms.equations()) eqs.push_back({{"form", e.form}, {"rhs", e.rhs}});
    for (const auto& c : ms.congruences()) cons.push_back({{"form", c.form}, {"residue", c.residue}});
    return {{"description", ms.to_string()},
            {"modulus", ms.modulus()},
            {"equations", eqs},
            {"congruences", cons},
            {"empty", ms.is_empty_by_construction()}};
}

inline json hh_document(const ThetaMatrix& ctx, const HomologyTable& t, long long box) {
    json doc = document("hh", ctx);
    doc["direction"] = to_string(t.direction);
    doc["twist"] = twist_json(t.twist);
    doc["box"] = box;
    json degrees = json::array();
    for (const auto& d : t.degrees)
        degrees.push_back({{"degree", d.degree},
                           {"multiplicity", d.multiplicity},
                           {"modes", modeset_json(d.modes)},
                           {"box_modes", d.modes.count_in_box(box)},
                           {"box_dimension", t.box_dimension(d.degree, box)}});
    doc["degrees"] = degrees;
    return doc;
}

inline json verify_document(const ThetaMatrix& ctx, const std::string& check, bool pass, json details,
                            json counterexample = nullptr) {
    json doc = document("verify", ctx);
    doc["check"] = check;
    doc["pass"] = pass;
    doc["details"] = std::move(details);
    doc["counterexample"] = std::move(counterexample);
    return doc;
}

inline json koszul_check_document(const ThetaMatrix& ctx, const ComplexCheck& r, std::uint64_t seed, int samples) {
    json ce = nullptr;
    if (!r.pass) ce = {{"degree", *r.failing_degree}, {"element", r.counterexample}};
    return verify_document(ctx, "koszul-d2", r.pass,
                           {{"seed", seed}, {"samples_per_degree", samples}, {"elements_checked", r.elements}}, ce);
}

inline json duality_check_document(const ThetaMatrix& ctx, const ScalingAutomorphism& sigma, const DualityReport& r) {
    json ce = nullptr;
    if (r.counterexample)
        ce = {{"degree", r.counterexample->degree},
              {"mode", r.counterexample->mode.values()},
              {"cohomology_dim", r.counterexample->cohomology_dim},
              {"homology_dim", r.counterexample->homology_dim}};
    json details = {{"twist", twist_json(sigma)},
                    {"dualizing", twist_json(r.dualizing)},
                    {"box", r.box},
                    {"modes_checked", r.modes_checked},
                    {"message", r.message}};
    details["shift"] = r.shift ? json(r.shift->values()) : json(nullptr);
    return verify_document(ctx, "duality", r.pass, details, ce);
}

inline json oracle_check_document(const ThetaMatrix& ctx, const ScalingAutomorphism& sigma, const OracleCheck& r) {
    json ce = nullptr;
    if (r.mismatch)
        ce = {{"degree", r.mismatch->degree},
              {"mode", r.mismatch->mode.values()},
              {"oracle_dim", r.mismatch->oracle_dim},
              {"koszul_dim", r.mismatch->koszul_dim}};
    return verify_document(ctx, "oracle", r.pass,
                           {{"twist", twist_json(sigma)},
                            {"oracle_bound", r.bound},
                            {"max_degree", r.max_degree},
                            {"reliable_modes", r.reliable_modes},
                            {"unreliable_modes", r.unreliable_modes},
                            {"dims_at_zero", r.dims_at_zero}},
                           ce);
}

inline json continuity_check_document(const ThetaMatrix& ctx, const ContinuitySweep& r, std::uint64_t seed,
                                      int samples, const std::vector<double>& rhos, int k) {
    json ce = nullptr;
    if (r.failure)
        ce = {{"rho", r.failure->rho},
              {"lhs_rho", r.failure->lhs_rho},
              {"rhs_rho", r.failure->rhs_rho},
              {"lhs_k", r.failure->lhs_k},
              {"rhs_k", r.failure->rhs_k},
              {"message", r.failure->message}};
    return verify_document(ctx, "continuity", r.pass,
                           {{"seed", seed},
                            {"samples_per_rho", samples},
                            {"rhos", rhos},
                            {"k", k},
                            {"pairs", r.pairs},
                            {"worst_relative_margin_rho", r.worst_relative_margin_rho},
                            {"worst_relative_margin_k", r.worst_relative_margin_k}},
                           ce);
}

inline json guard_json(const GuardResult& g) {
    json off = nullptr;
    if (g.offending) off = {g.offending->first + 1, g.offending->second + 1};
    return {{"accepted", g.accepted}, {"message", g.message}, {"offending", off}};
}

/// Plain-text rendering: one "key: value" line per scalar, nested objects indented.
inline void render_text(const json& j, std::ostringstream& os, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    auto scalar = [](const json& v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_null()) return std::string("none");
        return v.dump();
    };
    auto flat = [](const json& v) {
        for (const auto& x : v)
            if (x.is_object() || (x.is_array() && !x.empty() && x.front().is_object())) return false;
        return true;
    };
    for (auto it = j.begin(); it != j.end(); ++it) {
        const json& v = it.value();
        if (v.is_object()) {
            os << pad << it.key() << ":\n";
            render_text(v, os, indent + 2);
        } else if (v.is_array() && !flat(v)) {
            os << pad << it.key() << ":\n";
            for (const auto& x : v) {
                os << pad << "  -\n";
                render_text(x, os, indent + 4);
            }
        } else {
            os << pad << it.key() << ": " << scalar(v) << "\n";
        }
    }
}

inline std::string render_text(const json& j) {
    std::ostringstream os;
    render_text(j, os, 0);
    return os.str();
}

/// Structural validation against the published schema; returns the list of problems.
inline std::vector<std::string> validate_report(const json& doc) {
    std::vector<std::string> errs;
    auto need = [&](const json& obj, const std::string& key, auto pred, const std::string& type, const std::string& where) {
        if (!obj.is_object() || !obj.contains(key)) {
            errs.push_back(where + "missing '" + key + "'");
            return false;
        }
        if (!pred(obj.at(key))) {
            errs.push_back(where + "'" + key + "' must be " + type);
            return false;
        }
        return true;
    };
    auto is_str = [](const json& v) { return v.is_string(); };
    auto is_int = [](const json& v) { return v.is_number_integer(); };
    auto is_bool = [](const json& v) { return v.is_boolean(); };
    auto is_obj = [](const json& v) { return v.is_object(); };
    auto is_arr = [](const json& v) { return v.is_array(); };
    auto is_dim = [](const json& v) {
        return v.is_number_integer() || (v.is_string() && v.get<std::string>().rfind("lower-bound ", 0) == 0);
    };
    auto is_obj_or_null = [](const json& v) { return v.is_object() || v.is_null(); };

    if (!doc.is_object()) return {"document must be an object"};
    if (need(doc, "schema", is_str, "a string", "") && doc["schema"] != report_schema)
        errs.push_back("unsupported schema '" + doc["schema"].get<std::string>() + "'");
    if (need(doc, "context", is_obj, "an object", "")) {
        const json& c = doc["context"];
        need(c, "n", is_int, "an integer", "context: ");
        need(c, "d", is_int, "an integer", "context: ");
        need(c, "s", is_int, "an integer", "context: ");
        need(c, "C", is_arr, "an array", "context: ");
        need(c, "M", is_arr, "an array", "context: ");
    }
    if (!need(doc, "command", is_str, "a string", "")) return errs;
    const std::string cmd = doc["command"];
    if (cmd == "report") {
        need(doc, "flavor", is_str, "a string", "");
        need(doc, "bound", is_int, "an integer", "");
        for (const char* k : {"dg", "w_dg", "db", "w_db"}) need(doc, k, is_dim, "an integer or \"lower-bound k\"", "");
        need(doc, "complete", is_bool, "a boolean", "");
        need(doc, "generic_criterion", is_bool, "a boolean", "");
        need(doc, "notes", is_obj, "an object", "");
        need(doc, "witness", is_obj_or_null, "an object or null", "");
    } else if (cmd == "hh") {
        need(doc, "direction", is_str, "a string", "");
        need(doc, "twist", is_arr, "an array", "");
        need(doc, "box", is_int, "an integer", "");
        if (need(doc, "degrees", is_arr, "an array", ""))
            for (const auto& d : doc["degrees"]) {
                need(d, "degree", is_int, "an integer", "degrees: ");
                need(d, "multiplicity", is_int, "an integer", "degrees: ");
                need(d, "box_modes", is_int, "an integer", "degrees: ");
                need(d, "box_dimension", is_int, "an integer", "degrees: ");
                if (need(d, "modes", is_obj, "an object", "degrees: ")) {
                    need(d["modes"], "description", is_str, "a string", "modes: ");
                    need(d["modes"], "equations", is_arr, "an array", "modes: ");
                    need(d["modes"], "congruences", is_arr, "an array", "modes: ");
                }
            }
    } else if (cmd == "verify") {
        need(doc, "check", is_str, "a string", "");
        need(doc, "pass", is_bool, "a boolean", "");
        need(doc, "details", is_obj, "an object", "");
        need(doc, "counterexample", is_obj_or_null, "an object or null", "");
    } else if (cmd == "seminorm") {
        need(doc, "guard", is_obj, "an object", "");
        need(doc, "weight", is_str, "a string", "");
    } else {
        errs.push_back("unknown command '" + cmd + "'");
    }
    return errs;
}

}  // namespace qtorus::io
