#include "torbun/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace torbun;
using cli::Json;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(TORBUN_FIXTURES_DIR) + "/" + name);
  EXPECT_TRUE(in.good()) << name;
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

cli::Result run(const std::string& command, const std::string& name, cli::Options o = {}) {
  return cli::run_command(command, name, fixture(name), o);
}

ErrorCode error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidInput;
}

const std::vector<std::string> kFixtures{"f1.json",           "f1_unbalanced.json",    "p1xp1_diagonal.json",
                                         "skew_sublattice.json", "singular_cone.json",  "cone_over_square.json",
                                         "point.json",           "p1_over_p1.json"};

}  // namespace

TEST(ProblemFile, RoundTripIsIdempotent) {
  for (const auto& name : kFixtures) {
    std::string once = cli::serialize_problem(cli::parse_problem(fixture(name)));
    std::string twice = cli::serialize_problem(cli::parse_problem(once));
    EXPECT_EQ(once, twice) << name;
  }
}

TEST(ProblemFile, ParseErrorsCarryLineContext) {
  try {
    cli::parse_problem("{\n  \"lattice_rank\": 2,\n  \"rays\": [[1, 0],\n}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
}

TEST(ProblemFile, ValidationErrorsCarryPath) {
  std::string text = R"({"lattice_rank": 2, "rays": [[1, 0], [0, 1]], "cones": [[1, 3]], "base": "point"})";
  try {
    cli::build_problem(cli::parse_problem(text));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(cli::exit_code_for(e.code()), 2);
    EXPECT_NE(std::string(e.what()).find("cones"), std::string::npos) << e.what();
  }
  EXPECT_EQ(error_of([] { cli::parse_problem(R"({"lattice_rank": 1, "rays": [], "cones": [], "bogus": 1})"); }),
            ErrorCode::ParseError);
}

TEST(ProblemFile, DualOfMustMatchListedValues) {
  std::string text = fixture("f1.json");
  auto pos = text.find("\"2,3\": \"a1\"");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 11, "\"2,3\": \"a2\"");
  auto p = cli::build_problem(cli::parse_problem(text));
  EXPECT_EQ(error_of([&] { cli::build_weight(p, "W2"); }), ErrorCode::CrossCheckFailed);
  EXPECT_EQ(cli::exit_code_for(ErrorCode::CrossCheckFailed), 3);
}

TEST(ProblemFile, ConeLabels) {
  auto p = cli::build_problem(cli::parse_problem(fixture("f1.json")));
  EXPECT_EQ(cli::cone_index(*p.fan, "0"), p.fan->zero_index());
  EXPECT_EQ(p.fan->label(cli::cone_index(*p.fan, "4,1")), "1,4");
  EXPECT_EQ(error_of([&] { cli::cone_index(*p.fan, "1,3"); }), ErrorCode::ConeNotInFan);
  EXPECT_EQ(cli::parse_vector_flag("2,-1", 2), (LatticeVector{2, -1}));
  EXPECT_EQ(error_of([] { cli::parse_vector_flag("2", 2); }), ErrorCode::InvalidInput);
}

TEST(Commands, IdenticalInputsGiveIdenticalDocuments) {
  for (const auto& command : cli::command_names()) {
    cli::Options o;
    o.seed = 3;
    std::string file = command == "subbundle" ? "skew_sublattice.json" : "f1.json";
    auto a = run(command, file, o);
    auto b = run(command, file, o);
    EXPECT_EQ(a.document.dump(), b.document.dump()) << command;
    EXPECT_EQ(cli::render_document(a.document, "table"), cli::render_document(b.document, "table"));
  }
}

TEST(Commands, DocumentShape) {
  auto r = run("check-fan", "f1.json");
  EXPECT_EQ(r.exit_code, 0);
  const Json& d = r.document;
  for (const auto* key : {"command", "input_digest", "outputs", "diagnostics"}) EXPECT_TRUE(d.contains(key)) << key;
  EXPECT_EQ(d["input_digest"], cli::fnv1a64(fixture("f1.json")));
  std::vector<std::string> order;
  for (const auto& c : d["outputs"]["cones"]) order.push_back(c["cone"]);
  EXPECT_EQ(order, (std::vector<std::string>{"0", "1", "2", "3", "4", "1,2", "1,4", "2,3", "3,4"}));
  EXPECT_TRUE(d["outputs"]["complete"].get<bool>());
  EXPECT_TRUE(d["outputs"]["smooth"].get<bool>());
}

TEST(Commands, FnvDigest) {
  EXPECT_EQ(cli::fnv1a64(""), "fnv1a64:cbf29ce484222325");
  EXPECT_EQ(cli::fnv1a64("a"), "fnv1a64:af63dc4c8601ec8c");
}

TEST(Commands, CheckFanOnSmallFixtures) {
  auto s = run("check-fan", "singular_cone.json").document["outputs"];
  EXPECT_FALSE(s["smooth"].get<bool>());
  EXPECT_EQ(s["cones"].back()["multiplicity"], 2);
  auto p = run("check-fan", "point.json").document["outputs"];
  EXPECT_TRUE(p["complete"].get<bool>());
}

TEST(Commands, CheckBalancingReportsViolations) {
  std::string text = fixture("f1.json");
  text.replace(text.find("\"dual_of\": \"D2\","), 16, "");
  text.replace(text.find("\"2,3\": \"a1\""), 11, "\"2,3\": \"a2\"");
  auto r = cli::run_command("check-balancing", "x.json", text, {});
  EXPECT_EQ(r.exit_code, 3);
  auto w = r.document["outputs"]["weights"];
  ASSERT_EQ(w.size(), 2u);
  EXPECT_TRUE(w[0]["passed"].get<bool>());
  EXPECT_FALSE(w[1]["passed"].get<bool>());
  EXPECT_FALSE(w[1]["violations"].empty());
}

TEST(Commands, ProductWithCrossCheckAndOracle) {
  cli::Options o;
  o.cross_check = true;
  o.oracle = true;
  auto r = run("mw-product", "f1.json", o);
  EXPECT_EQ(r.exit_code, 0);
  const auto& diag = r.document["diagnostics"];
  EXPECT_TRUE(diag["cross_check"]["agrees"].get<bool>());
  EXPECT_TRUE(diag["oracle"]["agrees"].get<bool>());
  EXPECT_TRUE(diag["balancing"]["passed"].get<bool>());
  EXPECT_EQ(diag["genericity"]["source"], "file");
}

TEST(Commands, ProductSearchesWhenNoVectorIsGiven) {
  std::string text = fixture("f1.json");
  text.replace(text.find(",\n  \"v\": [2, 1]"), 15, "");
  cli::Options o;
  o.seed = 9;
  auto r = cli::run_command("mw-product", "x.json", text, o);
  const auto& g = r.document["diagnostics"]["genericity"];
  EXPECT_EQ(g["source"], "search");
  EXPECT_EQ(g["seed"], 9);
  EXPECT_TRUE(g["generic"].get<bool>());
  EXPECT_EQ(r.document["outputs"], run("mw-product", "f1.json").document["outputs"]);
}

TEST(Commands, NonGenericFlagIsAValidationError) {
  cli::Options o;
  o.v = "1,1";
  EXPECT_EQ(error_of([&] { run("mw-product", "f1.json", o); }), ErrorCode::NonGenericVector);
  EXPECT_EQ(cli::exit_code_for(ErrorCode::NonGenericVector), 2);
  EXPECT_EQ(cli::exit_code_for(ErrorCode::GenericSearchExhausted), 4);
  EXPECT_EQ(cli::exit_code_for(ErrorCode::BalancingViolation), 3);
}

TEST(Commands, MissingSectionsAreValidationErrors) {
  EXPECT_EQ(error_of([] { run("mw-product", "singular_cone.json"); }), ErrorCode::InvalidInput);
  EXPECT_EQ(error_of([] { run("pp-to-mw", "p1xp1_diagonal.json"); }), ErrorCode::InvalidInput);
  EXPECT_EQ(error_of([] { run("subbundle", "f1.json"); }), ErrorCode::InvalidInput);
}

TEST(Commands, PpToMw) {
  auto r = run("pp-to-mw", "f1.json");
  EXPECT_EQ(r.exit_code, 0);
  std::map<std::string, std::string> residues;
  for (const auto& row : r.document["outputs"]["residues"]) residues[row["cone"]] = row["residue"];
  EXPECT_EQ(residues["0"], "-1");
  EXPECT_EQ(residues["2"], "-x1 - x2");
  EXPECT_EQ(residues["2,3"], "x1^2");
}

TEST(Commands, EquivMultFilters) {
  cli::Options o;
  o.sigma = "2,3";
  o.tau = "0";
  auto rows = run("equiv-mult", "f1.json", o).document["outputs"]["multiplicities"];
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0]["value"], "-1 / (x1*(x1 - x2))");
  o.tau = "4";
  EXPECT_EQ(error_of([&] { run("equiv-mult", "f1.json", o); }), ErrorCode::NotAFace);
}

TEST(Commands, PresentationAndSubbundle) {
  cli::Options o;
  o.equivariant = true;
  auto rel = run("presentation", "f1.json", o).document["outputs"]["relations"];
  std::vector<std::string> at_zero;
  for (const auto& r : rel)
    if (r["cone"] == "0") at_zero.push_back(r["relation"]);
  EXPECT_EQ(at_zero, (std::vector<std::string>{"D1 + D2 - D4 = p*a1 + x1", "D2 + D3 - D4 = p*a2 + x2"}));

  auto terms = run("subbundle", "p1xp1_diagonal.json").document["outputs"]["terms"];
  ASSERT_EQ(terms.size(), 2u);
  EXPECT_EQ(terms[0]["cone"], "1");
  EXPECT_EQ(terms[1]["cone"], "4");
}

TEST(Commands, ExplicitBaseFixture) {
  auto r = run("check-balancing", "p1_over_p1.json");
  EXPECT_EQ(r.exit_code, 0);
  cli::Options o;
  o.oracle = true;
  auto prod = run("mw-product", "p1_over_p1.json", o);
  EXPECT_TRUE(prod.document["diagnostics"]["oracle"]["agrees"].get<bool>());
}

TEST(Render, TableFormat) {
  auto doc = run("equiv-mult", "singular_cone.json").document;
  std::string table = cli::render_document(doc, "table");
  EXPECT_NE(table.find("sigma  tau  value"), std::string::npos) << table;
  EXPECT_NE(table.find("2 / ((2*x1 - x2)*x2)"), std::string::npos) << table;
  EXPECT_EQ(Json::parse(cli::render_document(doc, "json")), doc);
}
