// qtorus: dimension reports, Hochschild tables and verification runs for quantum tori.
//
// Exit codes: 0 success, 1 check failed, 2 invalid input, 3 infeasible request.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qtorus/checks.hpp"
#include "qtorus/dimensions.hpp"
#include "qtorus/errors.hpp"
#include "qtorus/io/context_file.hpp"
#include "qtorus/io/report_json.hpp"

namespace {

using qtorus::io::json;

enum Exit { ok = 0, failed = 1, invalid = 2, infeasible = 3 };

struct Common {
    std::string input;
    std::string format = "json";
};

void emit(const json& doc, const std::string& format) {
    if (format == "text") std::cout << qtorus::io::render_text(doc);
    else std::cout << doc.dump(2) << "\n";
}

// "c@a1,...,an; ..." with real c
qtorus::NumericElement parse_element(const std::string& text, int n) {
    qtorus::NumericElement a(n);
    std::stringstream ss(text);
    std::string term;
    while (std::getline(ss, term, ';')) {
        const auto b = term.find_first_not_of(' '), e = term.find_last_not_of(' ');
        if (b == std::string::npos) continue;
        term = term.substr(b, e - b + 1);
        const auto at = term.find('@');
        if (at == std::string::npos) throw std::invalid_argument("element term '" + term + "' must look like c@a1,...,an");
        std::size_t used = 0;
        double c = 0;
        try {
            c = std::stod(term.substr(0, at), &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != at) throw std::invalid_argument("bad coefficient in element term '" + term + "'");
        qtorus::Angle exps = qtorus::io::parse_angle("0@" + term.substr(at + 1), n);
        a.add_term(qtorus::MultiIndex(exps.irrational_part()), c);
    }
    return a;
}

int run_report(const Common& c, const std::string& flavor, int bound) {
    auto ctx = qtorus::io::load_context(c.input);
    auto report = qtorus::full_report(ctx.theta, qtorus::parse_flavor(flavor), bound);
    emit(qtorus::io::report_document(ctx.theta, report, bound), c.format);
    return ok;
}

int run_hh(const Common& c, const std::string& twist, const std::string& direction, long long box) {
    auto ctx = qtorus::io::load_context(c.input);
    auto sigma = qtorus::io::parse_twist(twist, ctx.theta);
    if (box < 0) throw std::invalid_argument("--box must be >= 0");
    qtorus::HomologyTable t;
    if (direction == "homology") t = qtorus::hochschild_homology(ctx.theta, sigma);
    else if (direction == "cohomology") t = qtorus::hochschild_cohomology(ctx.theta, sigma);
    else throw std::invalid_argument("unknown direction '" + direction + "' (expected homology or cohomology)");
    emit(qtorus::io::hh_document(ctx.theta, t, box), c.format);
    return ok;
}

struct VerifyOptions {
    std::string check;
    std::string twist = "id";
    std::string dualizing = "alpha";
    long long box = 2;
    int oracle_bound = 3;
    std::uint64_t seed = 1;
    int samples = 20;
    int k = 2;
};

int run_verify(const Common& c, const VerifyOptions& o) {
    auto ctx = qtorus::io::load_context(c.input);
    json doc;
    if (o.check == "koszul-d2") {
        auto r = qtorus::check_koszul_complex(ctx.theta, o.seed, o.samples);
        doc = qtorus::io::koszul_check_document(ctx.theta, r, o.seed, o.samples);
    } else if (o.check == "duality") {
        auto sigma = qtorus::io::parse_twist(o.twist, ctx.theta);
        auto u = qtorus::io::parse_twist(o.dualizing, ctx.theta);
        auto r = qtorus::duality_check(ctx.theta, sigma, qtorus::all_degrees(ctx.theta.n()), u, o.box);
        doc = qtorus::io::duality_check_document(ctx.theta, sigma, r);
    } else if (o.check == "oracle") {
        auto sigma = qtorus::io::parse_twist(o.twist, ctx.theta);
        auto r = qtorus::check_oracle(ctx.theta, sigma, o.oracle_bound);
        doc = qtorus::io::oracle_check_document(ctx.theta, sigma, r);
    } else if (o.check == "continuity") {
        auto num = ctx.numeric();
        num.require_tau();
        auto guard = qtorus::unimodularity_guard(num);
        if (!guard.accepted) throw std::invalid_argument(guard.message);
        const std::vector<double> rhos = {0.5, 1.0, 2.0};
        auto r = qtorus::check_continuity(num, o.seed, o.samples, rhos, o.k);
        doc = qtorus::io::continuity_check_document(ctx.theta, r, o.seed, o.samples, rhos, o.k);
    } else {
        throw std::invalid_argument("unknown check '" + o.check + "' (expected koszul-d2, duality, oracle or continuity)");
    }
    emit(doc, c.format);
    return doc["pass"].get<bool>() ? ok : failed;
}

struct SeminormOptions {
    double rho = 2.0;
    int k = 2;
    std::string weight = "plain";
    std::string element;
    std::uint64_t seed = 1;
    int samples = 20;
};

int run_seminorm(const Common& c, const SeminormOptions& o) {
    auto ctx = qtorus::io::load_context(c.input);
    auto num = ctx.numeric();
    auto weight = qtorus::parse_weight(o.weight);
    if (!(o.rho > 0)) throw std::invalid_argument("--rho must be positive");
    if (o.k < 0) throw std::invalid_argument("--k must be nonnegative");
    json doc = qtorus::io::document("seminorm", ctx.theta);
    auto guard = qtorus::unimodularity_guard(num);
    doc["guard"] = qtorus::io::guard_json(guard);
    doc["weight"] = qtorus::to_string(weight);
    doc["rho"] = o.rho;
    doc["k"] = o.k;
    doc["element"] = nullptr;
    doc["continuity"] = nullptr;
    if (guard.accepted) {
        num.require_tau();
        if (!o.element.empty()) {
            auto a = parse_element(o.element, ctx.theta.n());
            doc["element"] = {{"terms", o.element},
                              {"seminorm_rho", qtorus::seminorm_rho(a, o.rho)},
                              {"seminorm_k", qtorus::seminorm_k(a, o.k, weight)}};
        }
        auto r = qtorus::check_continuity(num, o.seed, o.samples, {o.rho}, o.k);
        doc["continuity"] = {{"seed", o.seed},
                             {"pairs", r.pairs},
                             {"pass", r.pass},
                             {"worst_relative_margin_rho", r.worst_relative_margin_rho},
                             {"worst_relative_margin_k", r.worst_relative_margin_k}};
    }
    emit(doc, c.format);
    if (!guard.accepted) {
        std::cerr << "qtorus: " << guard.message << "\n";
        return failed;
    }
    return doc["continuity"]["pass"].get<bool>() ? ok : failed;
}

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--input", c.input, "context file (YAML)")->required();
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "text"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Hochschild (co)homology and homological dimensions of quantum tori"};
    app.require_subcommand(1);

    Common rc, hc, vc, sc;
    std::string flavor = "regular";
    int bound = 2;
    auto* report = app.add_subcommand("report", "homological dimensions (dg, w.dg, db, w.db)");
    add_common(report, rc);
    report->add_option("--flavor", flavor, "regular, holomorphic or smooth");
    report->add_option("--bound", bound, "entry bound for the isotropic-sublattice search");

    std::string twist = "id", direction = "homology";
    long long box = 2;
    auto* hh = app.add_subcommand("hh", "Hochschild homology or cohomology table");
    add_common(hh, hc);
    hh->add_option("--twist", twist, "id, alpha or custom:b1;...;bn");
    hh->add_option("--direction", direction, "homology or cohomology");
    hh->add_option("--box", box, "count modes with |g|_inf <= box");

    VerifyOptions vo;
    auto* verify = app.add_subcommand("verify", "run a verification: koszul-d2, duality, oracle, continuity");
    add_common(verify, vc);
    verify->add_option("check", vo.check, "which check")->required();
    verify->add_option("--twist", vo.twist, "coefficient twist sigma");
    verify->add_option("--dualizing", vo.dualizing, "dualizing twist U for the duality check");
    verify->add_option("--box", vo.box, "mode box for the duality check");
    verify->add_option("--oracle-bound", vo.oracle_bound, "bar oracle bound B");
    verify->add_option("--seed", vo.seed, "random seed");
    verify->add_option("--samples", vo.samples, "random samples per degree or rho");
    verify->add_option("--k", vo.k, "smooth seminorm order for the continuity check");

    SeminormOptions so;
    auto* seminorm = app.add_subcommand("seminorm", "seminorms, continuity and the unimodularity guard");
    add_common(seminorm, sc);
    seminorm->add_option("--rho", so.rho, "holomorphic seminorm radius");
    seminorm->add_option("--k", so.k, "smooth seminorm order");
    seminorm->add_option("--weight", so.weight, "plain (|a|^k) or shifted ((1+|a|)^k)");
    seminorm->add_option("--element", so.element, "terms c@a1,...,an separated by ';'");
    seminorm->add_option("--seed", so.seed, "random seed");
    seminorm->add_option("--samples", so.samples, "random pairs for the continuity check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return invalid;
    }

    try {
        if (*report) return run_report(rc, flavor, bound);
        if (*hh) return run_hh(hc, twist, direction, box);
        if (*verify) return run_verify(vc, vo);
        if (*seminorm) return run_seminorm(sc, so);
    } catch (const qtorus::infeasible_error& e) {
        std::cerr << "qtorus: infeasible: " << e.what() << "\n";
        return infeasible;
    } catch (const qtorus::context_error& e) {
        std::cerr << "qtorus: invalid context: " << e.what() << "\n";
        return invalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "qtorus: invalid input: " << e.what() << "\n";
        return invalid;
    } catch (const std::domain_error& e) {
        std::cerr << "qtorus: invalid input: " << e.what() << "\n";
        return invalid;
    } catch (const std::exception& e) {
        std::cerr << "qtorus: error: " << e.what() << "\n";
        return failed;
    }
    return invalid;
}
