#include <gtest/gtest.h>

#include "qtorus/io/context_file.hpp"
#include "qtorus/io/report_json.hpp"
#include "support.hpp"

using namespace qtorus;
using namespace qtorus::io;

namespace {

const char* generic2_text = R"(n: 2
d: 1
C: [["0", "0"], ["0", "0"]]
s: 1
M:
  - [[0, 1], [-1, 0]]
tau_hat: [0.25]
)";

// Parses and returns the reported line of the error, or -1 if parsing succeeded.
int error_line(const std::string& text, std::string* what = nullptr) {
    try {
        parse_context(text);
    } catch (const context_error& e) {
        if (what) *what = e.what();
        return e.line();
    }
    return -1;
}

}  // namespace

TEST(ContextFile, ParsesGenericTwoTorus) {
    ContextFile f = parse_context(generic2_text);
    EXPECT_EQ(f.theta.n(), 2);
    EXPECT_EQ(f.theta.s(), 1);
    EXPECT_EQ(f.theta.theta(0, 1), Angle(Rational(0), {1}));
    ASSERT_TRUE(f.tau_hat.has_value());
    EXPECT_DOUBLE_EQ((*f.tau_hat)[0], 0.25);
    EXPECT_FALSE(f.radial.has_value());
}

TEST(ContextFile, ParsesFractionsAndPlainIntegers) {
    ContextFile f = parse_context("n: 2\nd: 6\nC: [[0, \"1/3\"], [\"-2/6\", 0]]\ns: 0\n");
    EXPECT_EQ(f.theta.theta(1, 0), Angle(Rational(-1, 3), {}));
    EXPECT_EQ(f.theta.d(), 6);
}

TEST(ContextFile, DiagnosticsCarryLines) {
    std::string what;
    EXPECT_EQ(error_line("n: 2\nd: 2\nC: [[\"0\", \"1/3\"], [\"-1/3\", \"0\"]]\ns: 0\n", &what), 3);
    EXPECT_NE(what.find("does not divide d = 2"), std::string::npos) << what;

    EXPECT_EQ(error_line("n: 2\nd: 1\nC:\n  - [\"0\", \"1\"]\n  - [\"1\", \"0\"]\ns: 0\n", &what), 5);
    EXPECT_NE(what.find("skew"), std::string::npos) << what;

    EXPECT_EQ(error_line("n: 2\nd: 1\nC: [[\"0\", \"0\"], [\"0\", \"0\"]]\ns: 1\nM:\n  - [[0, 1],\n     [1, 0]]\n", &what), 7);
    EXPECT_NE(what.find("M[1]"), std::string::npos) << what;

    EXPECT_EQ(error_line("n: 2\nd: 1\nC: [[\"0\", \"x\"], [\"0\", \"0\"]]\ns: 0\n", &what), 3);
    EXPECT_EQ(error_line("n: 2\nd: 1\nC: [[\"0\", \"0\"]]\ns: 0\n", &what), 3);
    EXPECT_EQ(error_line("n: 2\nd: 1\nC: [[\"0\", \"0\"], [\"0\", \"0\"]]\ns: 0\ncolour: red\n", &what), 5);
    EXPECT_NE(what.find("unknown key"), std::string::npos);
    EXPECT_EQ(error_line("n: 0\nd: 1\nC: []\ns: 0\n"), 1);
    EXPECT_EQ(error_line("n: 1\nC: [[\"0\"]]\ns: 0\n", &what), 1);
    EXPECT_NE(what.find("missing required key 'd'"), std::string::npos);
    EXPECT_EQ(error_line("n: 1\nd: 1\nC: [[\"0\"]]\ns: 2\nM: [[[0]]]\n"), 5);
    EXPECT_EQ(error_line("n: 1\nd: 1\nC: [[\"0\"]]\ns: 1\nM: [[[0]]]\ntau_hat: [0.1, 0.2]\n"), 6);
    EXPECT_EQ(error_line("n: 2\nd: 1\nC: [[\"0\", \"0\"], [\"0\", \"0\"]]\ns: 0\nradial: [[1, -1], [1, 1]]\n"), 5);
    // unterminated flow sequence: reported where the parser gives up, after the "[" line
    EXPECT_GE(error_line("n: 2\nd: [1\n"), 2);
    EXPECT_EQ(error_line("just text\n"), 1);
}

TEST(ContextFile, LoadMissingFile) { EXPECT_THROW(load_context("/nonexistent/ctx.yaml"), context_error); }

TEST(Twist, Parsing) {
    ThetaMatrix ctx = parse_context(generic2_text).theta;
    EXPECT_EQ(parse_twist("id", ctx), ScalingAutomorphism::identity(ctx));
    EXPECT_EQ(parse_twist("alpha", ctx), ScalingAutomorphism::koszul_alpha(ctx));
    ScalingAutomorphism c = parse_twist("custom:0@1;0@-2", ctx);
    EXPECT_EQ(c.angle(0), Angle(Rational(0), {1}));
    EXPECT_EQ(c.angle(1), Angle(Rational(0), {-2}));
    EXPECT_EQ(parse_twist("custom:0;0", ctx), ScalingAutomorphism::identity(ctx));
    EXPECT_THROW(parse_twist("custom:1/2;0", ctx), std::invalid_argument);  // 1/2 not in (1/d)Z, d = 1
    EXPECT_THROW(parse_twist("custom:0", ctx), std::invalid_argument);
    EXPECT_THROW(parse_twist("custom:0@x;0", ctx), std::invalid_argument);
    EXPECT_THROW(parse_twist("beta", ctx), std::invalid_argument);
    // round trip through the printed form
    ScalingAutomorphism a = ScalingAutomorphism::koszul_alpha(ctx);
    EXPECT_EQ(parse_twist("custom:" + a.angle(0).to_string() + ";" + a.angle(1).to_string(), ctx), a);
}

TEST(Report, DocumentsValidateAndRoundTrip) {
    ThetaMatrix ctx = parse_context(generic2_text).theta;
    std::vector<json> docs = {
        report_document(ctx, full_report(ctx, Flavor::regular, 2), 2),
        report_document(ctx, full_report(ctx, Flavor::smooth, 2), 2),
        hh_document(ctx, hochschild_homology(ctx, ScalingAutomorphism::identity(ctx)), 2),
        koszul_check_document(ctx, check_koszul_complex(ctx, 1, 3), 1, 3),
        duality_check_document(ctx, ScalingAutomorphism::identity(ctx),
                               duality_check(ctx, ScalingAutomorphism::identity(ctx), all_degrees(2), 1)),
        oracle_check_document(ctx, ScalingAutomorphism::identity(ctx),
                              check_oracle(ctx, ScalingAutomorphism::identity(ctx), 2)),
    };
    for (const auto& d : docs) {
        EXPECT_TRUE(validate_report(d).empty()) << d.dump();
        std::string text = d.dump(2);
        json back = json::parse(text);
        EXPECT_EQ(back.dump(2), text);
        EXPECT_TRUE(validate_report(back).empty());
        EXPECT_FALSE(render_text(d).empty());
    }
}

TEST(Report, ValidatorRejectsBrokenDocuments) {
    ThetaMatrix ctx = parse_context(generic2_text).theta;
    json d = report_document(ctx, full_report(ctx, Flavor::regular, 2), 2);
    json bad = d;
    bad["schema"] = "qtorus-report/0";
    EXPECT_FALSE(validate_report(bad).empty());
    bad = d;
    bad["dg"] = "two";
    EXPECT_FALSE(validate_report(bad).empty());
    bad = d;
    bad.erase("notes");
    EXPECT_FALSE(validate_report(bad).empty());
    bad = d;
    bad["command"] = "plot";
    EXPECT_FALSE(validate_report(bad).empty());
    EXPECT_FALSE(validate_report(json::array()).empty());
}

TEST(Report, LowerBoundMarker) {
    IntMatrix A = {{0, -3, -3, -3}, {3, 0, -2, 3}, {3, 2, 0, 1}, {3, -3, -1, 0}};
    IntMatrix B = {{0, 3, -3, 2}, {-3, 0, 2, 2}, {3, -2, 0, 3}, {-2, -2, -3, 0}};
    ThetaMatrix ctx(1, RatMatrix(4, std::vector<Rational>(4, Rational(0))), {A, B});
    json d = report_document(ctx, full_report(ctx, Flavor::regular, 1), 1);
    EXPECT_EQ(d["dg"], "lower-bound 1");
    EXPECT_EQ(d["complete"], false);
    EXPECT_EQ(d["witness"]["complete"], false);
    EXPECT_TRUE(validate_report(d).empty());
}

TEST(Report, TextRendering) {
    json j = {{"a", 1}, {"b", {{"c", "x"}}}, {"l", {1, 2}}, {"o", json::array({{{"k", true}}})}, {"z", nullptr}};
    EXPECT_EQ(render_text(j), "a: 1\nb:\n  c: x\nl: [1,2]\no:\n  -\n    k: true\nz: none\n");
}
