#include "f1_data.hpp"
#include "generators.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace torbun;
using namespace gen;
using oracle::smooth_multiplicity;

namespace {

const std::vector<std::string> kNames = default_variable_names(2);

IntPolynomial P(const std::string& text) { return parse_polynomial(text, kNames); }

LinearFraction inverse_of_forms(std::vector<std::vector<long>> forms, long scale = 1) {
  std::vector<std::vector<Rational>> rf;
  std::size_t n = forms.front().size();
  for (const auto& f : forms) {
    std::vector<Rational> r;
    for (long x : f) r.emplace_back(x);
    rf.push_back(r);
  }
  return LinearFraction::inverse_product(n, Rational(scale), rf);
}

PiecewisePolynomial square_pieces() {
  PiecewisePolynomial f(f1::fan(), 2);
  f.set(f1::cone("1,2"), P("x2^2"));
  f.set(f1::cone("2,3"), P("x1^2"));
  return f;
}

FanPtr singular_fan() {
  static FanPtr f = std::make_shared<const Fan>(2, std::vector<LatticeVector>{{1, 0}, {1, 2}, {-1, -1}},
                                                std::vector<RayIndices>{{0, 1}, {1, 2}, {2, 0}});
  return f;
}

FanPtr p2_fan() {
  static FanPtr f = std::make_shared<const Fan>(2, std::vector<LatticeVector>{{1, 0}, {0, 1}, {-1, -1}},
                                                std::vector<RayIndices>{{0, 1}, {1, 2}, {2, 0}});
  return f;
}

BundlePtr bundle_on(const FanPtr& fan) {
  auto a = make_free_truncated({{"b1", 1}, {"b2", 1}}, 4);
  return make_bundle(fan, a, MixingMap(a, {AlgebraElement::named(a, "b1") + AlgebraElement::named(a, "b2"),
                                           Integer(2) * AlgebraElement::named(a, "b2")}));
}

}  // namespace

TEST(Compatibility, F1FunctionIsCompatible) { EXPECT_TRUE(check_pp(square_pieces()).passed()); }

TEST(Compatibility, ViolationsAreLocated) {
  PiecewisePolynomial f(f1::fan(), 1);
  f.set(f1::cone("1,2"), P("x1"));
  auto report = check_pp(f);
  std::set<std::string> faces;
  for (const auto& v : report.violations) faces.insert(f1::fan()->label(v.face));
  EXPECT_EQ(faces, (std::set<std::string>{"1", "2"}));
}

TEST(Compatibility, CourantFunctionsAndGlobalSums) {
  const auto& fan = f1::fan();
  std::vector<PiecewisePolynomial> phi;
  for (std::size_t r = 0; r < 4; ++r) {
    phi.push_back(courant_function(fan, r));
    EXPECT_TRUE(check_pp(phi.back()).passed());
  }
  // sum <m, rho> phi_rho is the global character m.
  for (LatticeVector m : {LatticeVector{1, 0}, LatticeVector{0, 1}, LatticeVector{3, -2}}) {
    PiecewisePolynomial sum(fan, 1);
    for (std::size_t r = 0; r < 4; ++r) {
      Integer k = dot(m, fan->rays()[r]);
      for (Integer i = 0; i < abs_value(k); ++i) {
        PiecewisePolynomial t = phi[r];
        if (k < 0)
          for (auto s : fan->maximal_cones()) t.set(s, Integer(-1) * t.piece(s));
        sum = sum + t;
      }
    }
    EXPECT_EQ(sum, global_polynomial(fan, IntPolynomial::linear(m.entries())));
  }
}

TEST(Compatibility, DegreeIsEnforced) {
  PiecewisePolynomial f(f1::fan(), 2);
  try {
    f.set(f1::cone("1,2"), P("x1"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegreeMismatch);
  }
  EXPECT_THROW(f.set(f1::cone("1"), P("x1^2")), Error);
}

TEST(EquivariantMultiplicity, F1Values) {
  const Fan& fan = *f1::fan();
  auto e = [&](const char* s, const char* t) { return equivariant_multiplicity(fan, f1::cone(s), f1::cone(t)); };
  EXPECT_EQ(e("1,2", "0"), inverse_of_forms({{1, -1}, {0, 1}}));
  EXPECT_EQ(e("1,2", "1"), inverse_of_forms({{0, 1}}));
  EXPECT_EQ(e("1,2", "2"), inverse_of_forms({{1, -1}}));
  EXPECT_EQ(e("2,3", "0"), inverse_of_forms({{1, 0}, {-1, 1}}));
  EXPECT_EQ(e("2,3", "2"), inverse_of_forms({{-1, 1}}));
  EXPECT_EQ(e("2,3", "3"), inverse_of_forms({{1, 0}}));
  EXPECT_EQ(e("2,3", "0").str(), "-1 / (x1*(x1 - x2))");
  EXPECT_EQ(e("1,2", "1").str(), "1 / x2");
  EXPECT_EQ(e("1,2", "1,2").str(), "1");
}

TEST(EquivariantMultiplicity, TimesEulerFormsIsOne) {
  const Fan& fan = *f1::fan();
  auto e = equivariant_multiplicity(fan, f1::cone("1,2"), fan.zero_index());
  auto prod = e * LinearFraction::polynomial(P("x1 - x2")) * LinearFraction::polynomial(P("x2"));
  EXPECT_EQ(prod, LinearFraction::polynomial(P("1")));
}

TEST(EquivariantMultiplicity, SmoothFansMatchDualBasisFormula) {
  auto p1 = Fan(1, {{1}, {-1}}, {{0}, {1}});
  std::vector<FanPtr> fans{f1::fan(), p2_fan(), std::make_shared<const Fan>(product_fan(p1, p1))};
  for (const auto& fan : fans)
    for (auto s : fan->maximal_cones())
      for (std::size_t t = 0; t < fan->size(); ++t)
        if (fan->is_face_of(t, s)) {
          EXPECT_EQ(equivariant_multiplicity(*fan, s, t), smooth_multiplicity(*fan, s, t))
              << fan->label(s) << " " << fan->label(t);
        }
}

TEST(EquivariantMultiplicity, Errors) {
  const Fan& fan = *f1::fan();
  try {
    equivariant_multiplicity(fan, f1::cone("1,2"), f1::cone("3"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAFace);
  }
  EXPECT_THROW(equivariant_multiplicity(fan, f1::cone("1"), fan.zero_index()), Error);
}

TEST(SingularCone, SimplicialFormula) {
  Cone sigma = cone_from_rays(2, {LatticeVector{1, 0}, LatticeVector{1, 2}});
  auto e = quotient_cone_multiplicity(sigma, IntMatrix::identity(2));
  EXPECT_EQ(e, inverse_of_forms({{0, 1}, {2, -1}}, 2));
  EXPECT_EQ(e.str(), "2 / ((2*x1 - x2)*x2)");
  EXPECT_EQ(e * LinearFraction::polynomial(P("x2")) * LinearFraction::polynomial(P("2*x1 - x2")),
            LinearFraction::polynomial(P("2")));
}

TEST(SingularCone, SubdivisionAdditivity) {
  auto e = [](std::vector<LatticeVector> rays) {
    return quotient_cone_multiplicity(cone_from_rays(2, rays), IntMatrix::identity(2));
  };
  // <(1,0),(1,2)> = <(1,0),(1,1)> + <(1,1),(1,2)>, both smooth.
  EXPECT_EQ(e({{1, 0}, {1, 2}}), e({{1, 0}, {1, 1}}) + e({{1, 1}, {1, 2}}));
  EXPECT_EQ(e({{1, 0}, {0, 1}}), e({{1, 0}, {1, 1}}) + e({{1, 1}, {0, 1}}));
  EXPECT_EQ(e({{1, 0}, {1, 3}}), e({{1, 0}, {1, 1}}) + e({{1, 1}, {1, 2}}) + e({{1, 2}, {1, 3}}));
}

TEST(SingularCone, TriangulationOrderIndependence) {
  std::vector<LatticeVector> rays{{1, 0, 0}, {0, 1, 0}, {1, 0, 1}, {0, 1, 1}};
  std::vector<int> order{0, 1, 2, 3};
  std::optional<LinearFraction> ref;
  std::set<std::set<std::vector<LatticeVector>>> triangulations;
  do {
    std::vector<LatticeVector> r;
    for (int i : order) r.push_back(rays[i]);
    Cone sigma = cone_from_rays(3, r);
    auto e = quotient_cone_multiplicity(sigma, IntMatrix::identity(3));
    if (!ref) ref = e;
    EXPECT_EQ(e, *ref);
    std::set<std::vector<LatticeVector>> pieces;
    for (const auto& p : triangulate(sigma)) {
      auto pr = p.rays();
      std::sort(pr.begin(), pr.end());
      pieces.insert(pr);
    }
    triangulations.insert(pieces);
  } while (std::next_permutation(order.begin(), order.end()));
  // Both diagonals of the square occur.
  EXPECT_EQ(triangulations.size(), 2u);
  EXPECT_EQ(ref->degree(), -3);
}

TEST(Residue, F1Values) {
  auto f = square_pieces();
  std::map<std::string, std::string> expected{{"0", "-1"},    {"1", "x2"},     {"2", "-x1 - x2"},
                                              {"3", "x1"},    {"4", "0"},      {"1,2", "x2^2"},
                                              {"1,4", "0"},   {"2,3", "x1^2"}, {"3,4", "0"}};
  for (std::size_t t = 0; t < f1::fan()->size(); ++t)
    EXPECT_EQ(residue_sum(f, t).str(), expected.at(f1::fan()->label(t)));
  EXPECT_EQ(residue_sum(f, f1::cone("2")), P("-x1 - x2"));
}

TEST(Residue, IncompatibleFunctionRaises) {
  PiecewisePolynomial f(f1::fan(), 1);
  f.set(f1::cone("1,2"), P("x1"));
  try {
    residue_sum(f, f1::fan()->zero_index());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ResidueNotPolynomial);
  }
}

TEST(Residue, RandomCompatibleFunctionsGivePolynomials) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<unsigned> degree(0, 2);
  int singular_checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    FanPtr fan = trial % 2 ? singular_fan() : f1::fan();
    auto f = random_pp(rng, fan, degree(rng));
    ASSERT_TRUE(check_pp(f).passed());
    for (std::size_t t = 0; t < fan->size(); ++t) {
      IntPolynomial r;
      ASSERT_NO_THROW(r = residue_sum(f, t)) << fan->label(t);
      EXPECT_TRUE(r.is_zero() || (r.is_homogeneous() &&
                                  r.degree() == static_cast<int>(f.degree()) - static_cast<int>(fan->cone(t).codim())));
    }
    singular_checked += fan == singular_fan();
  }
  EXPECT_EQ(singular_checked, 25);
}

TEST(LimitMap, F1SquareWeight) {
  auto w = pp_to_mw(square_pieces(), f1::bundle());
  auto expected = f1::weight(2, {{"0", "-1"},
                                 {"1", "a2"},
                                 {"2", "-a1 - a2"},
                                 {"3", "a1"},
                                 {"1,2", "a2^2"},
                                 {"2,3", "a1^2"}});
  EXPECT_EQ(w, expected);
  EXPECT_EQ(w, poincare_dual_mw(parse_chow_expr(f1::bundle(), "D2^2")));
}

TEST(LimitMap, ConstantsAndCharacters) {
  auto b = f1::bundle();
  EXPECT_EQ(pp_to_mw(global_polynomial(f1::fan(), P("1")), b), unit_weight(b));
  EXPECT_EQ(pp_to_mw(global_polynomial(f1::fan(), P("x2")), b), module_action(f1::cls("a2"), unit_weight(b)));
  for (std::size_t r = 0; r < 4; ++r)
    EXPECT_EQ(pp_to_mw(courant_function(f1::fan(), r), b),
              poincare_dual_mw(ChowExpr::divisor(b, r)));
}

TEST(LimitMap, MultiplicativeOnF1) {
  std::mt19937_64 rng(77);
  auto b = f1::bundle();
  for (int trial = 0; trial < 20; ++trial) {
    auto f = random_pl(rng, f1::fan()), g = random_pl(rng, f1::fan());
    auto wf = pp_to_mw(f, b), wg = pp_to_mw(g, b);
    EXPECT_EQ(pp_to_mw(f * g, b), mw_product(wf, wg, LatticeVector{2, 1}));
  }
}

TEST(LimitMap, MultiplicativeOnSingularFan) {
  std::mt19937_64 rng(78);
  auto b = bundle_on(singular_fan());
  auto v = find_generic_vector(singular_fan(), 0).v;
  for (int trial = 0; trial < 20; ++trial) {
    auto f = random_pl(rng, singular_fan()), g = random_pl(rng, singular_fan());
    auto wf = pp_to_mw(f, b), wg = pp_to_mw(g, b);
    EXPECT_TRUE(check_balancing(wf).passed());
    EXPECT_EQ(pp_to_mw(f * g, b), mw_product(wf, wg, v));
  }
}
