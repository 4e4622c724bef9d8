#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixture_support.hpp"
#include "hyperkp/cli.hpp"
#include "hyperkp/json_io.hpp"

using namespace hyperkp;
using namespace hyperkp::testing;
using GR = GaussianRational;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class Workdir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("hyperkp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }
  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }

  fs::path dir_;
};

}  // namespace

TEST(JsonIo, ScalarRoundTrip) {
  const GR v(mpq_class(-7, 4), mpq_class(3, 5));
  Json j = scalar_json(v);
  EXPECT_EQ(j.dump(), R"({"re":"-7/4","im":"3/5"})");
  EXPECT_EQ(parse_scalar(j, "v"), v);
  EXPECT_EQ(parse_scalar(Json("5/10"), "v"), GR(mpq_class(1, 2)));
  EXPECT_EQ(parse_scalar(Json(-3), "v"), GR(-3));
  EXPECT_EQ(parse_scalar(Json("1.25"), "v"), GR(mpq_class(5, 4)));
  EXPECT_EQ(parse_scalar(Json("-2.5e-1"), "v"), GR(mpq_class(-1, 4)));
  EXPECT_THROW(parse_scalar(Json("abc"), "v"), ParseError);
  EXPECT_THROW(parse_scalar(Json(1.5), "v"), ParseError);
}

TEST(JsonIo, EtaleScalarKeyedByMask) {
  auto ctx = EtaleContext::make({GR(2), GR(3)});
  EtaleScalar v = EtaleScalar::generator(ctx, 0) * EtaleScalar::generator(ctx, 1) + EtaleScalar(GR(4));
  Json j = scalar_json(v);
  ASSERT_TRUE(j.contains("etale"));
  EXPECT_EQ(j["etale"]["0"]["re"], "4");
  EXPECT_EQ(j["etale"]["3"]["re"], "1");
  EXPECT_EQ(scalar_json(EtaleScalar(GR(7))).dump(), R"({"re":"7","im":"0"})");
}

TEST(JsonIo, CurveAndDivisorRoundTrip) {
  auto fx = make_fixture(Model::even, 2, {Constraint::rational_roots}, 3);
  CurveFile back = parse_curve(curve_json(fx.curve, fx.roots));
  EXPECT_EQ(back.curve.descending(), fx.curve.descending());
  EXPECT_EQ(*back.curve.branch_point(), *fx.curve.branch_point());
  EXPECT_EQ(back.roots, fx.roots);
  auto spec = draw_divisors(fx, 1, 1).front();
  DivisorSpec d = parse_divisor(divisor_json(spec));
  EXPECT_EQ(describe(d), describe(spec));
}

TEST(JsonIo, FieldDiagnostics) {
  try {
    parse_curve(Json::parse(R"({"model":"odd","genus":1,"coeffs":["1","0",{"re":"x"},"2"]})"));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("curve.coeffs[2].re"), std::string::npos);
  }
  try {
    parse_curve(Json::parse(R"({"model":"odd","genus":2,"coeffs":["1","0"]})"));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("needs 6 coefficients"), std::string::npos);
  }
  EXPECT_THROW(parse_curve(Json::parse(R"({"model":"cubic","genus":1,"coeffs":[]})")), ParseError);
  EXPECT_THROW(parse_divisor(Json::parse(R"({"points":[{"x":"1","y_sign":2}]})")), ParseError);
  EXPECT_THROW(parse_divisor(Json::parse(R"({"points":[{"y":"1"}]})")), ParseError);
}

TEST_F(Workdir, MalformedFileReportsLine) {
  const auto p = write("broken.json", "{\n  \"model\": \"odd\",\n  \"genus\": 1,\n  oops\n}\n");
  auto r = call({"validate-curve", "--curve", p});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("line 4"), std::string::npos) << r.err;
}

TEST_F(Workdir, ValidateCurveMultipleRoot) {
  const auto p = write("c.json", R"({"model":"odd","genus":1,"coeffs":["1","0","-3","2"],"branch_point":null})");
  auto r = call({"validate-curve", "--curve", p});
  EXPECT_EQ(r.code, kExitFail);
  EXPECT_NE(r.err.find("multiple root"), std::string::npos);
  EXPECT_NE(r.out.find("multiple root"), std::string::npos);
}

TEST_F(Workdir, ValidateCurveAccepts) {
  const auto p = write("c.json", R"({"model":"odd","genus":1,"coeffs":["1","0","0","-1"]})");
  auto r = call({"validate-curve", "--curve", p});
  EXPECT_EQ(r.code, kExitPass);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["schema"], kReportSchema);
  EXPECT_EQ(j["result"]["weight_audit"]["expected"], 6);
}

TEST_F(Workdir, PsiNeedsGenusThree) {
  ASSERT_EQ(call({"gen-fixture", "--genus", "2", "--constraints", "nu0-neg3-square", "--out", path("g2")}).code, 0);
  auto r = call({"kp-residual", "--variant", "psi", "--curve", path("g2/curve.json"), "--divisor",
                 path("g2/divisor.json")});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("g >= 3 required"), std::string::npos);
}

TEST_F(Workdir, KpResidualExactAndNumeric) {
  ASSERT_EQ(call({"gen-fixture", "--genus", "3", "--constraints", "nu0-neg3-square", "--seed", "1", "--out", path("f")})
                .code,
            0);
  const auto c = path("f/curve.json"), d = path("f/divisor.json");
  auto exact = call({"kp-residual", "--variant", "psi", "--curve", c, "--divisor", d});
  EXPECT_EQ(exact.code, kExitPass);
  EXPECT_EQ(Json::parse(exact.out)["result"]["exact_zero"], true);
  auto kp2 = call({"kp-residual", "--variant", "psi", "--curve", c, "--divisor", d, "--kp2", "sqrt-1"});
  EXPECT_EQ(kp2.code, kExitPass);
  auto xi_exact = call({"kp-residual", "--variant", "psi", "--curve", c, "--divisor", d, "--kp2", "xi8"});
  EXPECT_EQ(xi_exact.code, kExitUsage);
  EXPECT_NE(xi_exact.err.find("numeric"), std::string::npos);
  auto xi = call({"kp-residual", "--variant", "psi", "--curve", c, "--divisor", d, "--kp2", "xi8", "--mode", "numeric"});
  EXPECT_EQ(xi.code, kExitPass);
  EXPECT_TRUE(Json::parse(xi.out)["result"].contains("residual_max_abs"));
  auto low = call({"kp-residual", "--variant", "psi", "--curve", c, "--divisor", d, "--mode", "numeric", "--precision",
                   "64"});
  EXPECT_EQ(low.code, kExitUsage);
}

TEST_F(Workdir, WrongModelIsUsageError) {
  ASSERT_EQ(call({"gen-fixture", "--genus", "3", "--model", "odd", "--out", path("o")}).code, 0);
  auto r = call({"kp-residual", "--variant", "psi", "--curve", path("o/curve.json"), "--divisor",
                 path("o/divisor.json")});
  EXPECT_EQ(r.code, kExitUsage);
  auto id = call({"check-identity", "--id", "p-third-relation", "--curve", path("o/curve.json")});
  EXPECT_EQ(id.code, kExitUsage);
}

TEST_F(Workdir, EvalPAndJetEval) {
  const auto c = write("c.json", R"({"model":"odd","genus":1,"coeffs":["1","0","0","-1"]})");
  const auto d = write("d.json", R"({"points":[{"x":"2","y_sign":1}]})");
  auto r = call({"eval-p", "--curve", c, "--divisor", d});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  EXPECT_EQ(Json::parse(r.out)["result"]["matrix"]["wp_1_1"]["re"], "2");
  auto j = call({"jet-eval", "--curve", c, "--divisor", d, "--jet-order", "2"});
  ASSERT_EQ(j.code, kExitPass) << j.err;
  auto jet = Json::parse(j.out)["result"];
  EXPECT_EQ(jet["points"][0]["x"]["0,0,0"]["re"], "2");
  EXPECT_TRUE(jet["points"][0]["x"]["1,0,0"].contains("etale"));
  EXPECT_EQ(jet["curve_relation_holds"], true);
  auto bad = call({"eval-p", "--curve", c, "--divisor", write("b.json", R"({"points":[{"x":"1","y":"0"}]})")});
  EXPECT_EQ(bad.code, kExitUsage);
}

TEST_F(Workdir, CheckIdentityGenerated) {
  for (const auto& id : identity_ids()) {
    auto r = call({"check-identity", "--id", id, "--genus", "2", "--seed", "5"});
    EXPECT_EQ(r.code, kExitPass) << id << ": " << r.err;
  }
  auto unknown = call({"check-identity", "--id", "nope", "--genus", "2"});
  EXPECT_EQ(unknown.code, kExitUsage);
}

TEST_F(Workdir, BridgeCheck) {
  ASSERT_EQ(call({"gen-fixture", "--genus", "2", "--constraints", "rational-roots", "--out", path("r")}).code, 0);
  for (bool a0 : {false, true}) {
    std::vector<std::string> args{"bridge-check", "--curve", path("r/curve.json"), "--divisor", path("r/divisor.json")};
    if (a0) args.push_back("--a0");
    auto r = call(args);
    EXPECT_EQ(r.code, kExitPass) << r.err;
  }
}

TEST_F(Workdir, GenFixtureExamples) {
  ASSERT_EQ(call({"gen-fixture", "--genus", "3", "--constraints", "nu0-neg3-square", "--seed", "1", "--out", path("a")})
                .code,
            0);
  CurveFile a = parse_curve(load_json(path("a/curve.json")));
  EXPECT_NO_THROW(validate(a.curve));
  EXPECT_TRUE(exact_sqrt(-a.curve.coefficient(0) / GR(3)).has_value());

  ASSERT_EQ(call({"gen-fixture", "--genus", "1", "--constraints", "rational-roots", "--seed", "2", "--out", path("b")})
                .code,
            0);
  CurveFile b = parse_curve(load_json(path("b/curve.json")));
  std::vector<GR> roots = b.roots;
  roots.push_back(*b.curve.branch_point());
  ASSERT_EQ(roots.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_TRUE(is_zero(b.curve.eval(roots[i]).first));
    for (std::size_t j = 0; j < i; ++j) EXPECT_FALSE(roots[i] == roots[j]);
  }

  ASSERT_EQ(call({"gen-fixture", "--genus", "3", "--constraints", "nu0-neg3-square", "--seed", "1", "--out", path("c")})
                .code,
            0);
  EXPECT_EQ(slurp(path("a/curve.json")), slurp(path("c/curve.json")));
  EXPECT_EQ(slurp(path("a/divisor.json")), slurp(path("c/divisor.json")));

  auto bad = call({"gen-fixture", "--genus", "2", "--constraints", "bogus", "--out", path("d")});
  EXPECT_EQ(bad.code, kExitUsage);
  auto clash = call({"gen-fixture", "--genus", "2", "--model", "odd", "--constraints", "nu0-neg3-square", "--out",
                     path("e")});
  EXPECT_EQ(clash.code, kExitUsage);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(call({}).code, kExitUsage);
  EXPECT_EQ(call({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(call({"suite", "--genus", "3", "--mode", "fuzzy"}).code, kExitUsage);
  EXPECT_EQ(call({"suite", "--genus", "9"}).code, kExitUsage);
  EXPECT_EQ(call({"eval-p"}).code, kExitUsage);
  EXPECT_EQ(call({"--help"}).code, kExitPass);
}

TEST(Cli, SuiteGenusThreeReproducible) {
  auto a = call({"suite", "--genus", "3", "--mode", "exact", "--seed", "7"});
  auto b = call({"suite", "--genus", "3", "--mode", "exact", "--seed", "7", "--threads", "1"});
  ASSERT_EQ(a.code, kExitPass) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto j = Json::parse(a.out);
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_EQ(j["summary"]["checks"], j["summary"]["passed"]);
  EXPECT_FALSE(j["results"][0].contains("elapsed_ms"));
  auto c = call({"suite", "--genus", "3", "--seed", "8"});
  EXPECT_NE(a.out, c.out);
  auto t = call({"suite", "--genus", "1", "--timings"});
  EXPECT_TRUE(Json::parse(t.out)["results"][0].contains("elapsed_ms"));
}
