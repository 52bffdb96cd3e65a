#pragma once

// The Hirzebruch surface fan with rays (1,0), (1,1), (0,1), (-1,-1) over a
// base whose Chow ring is free on a1, a2 (truncated at degree 4), with
// delta(e1) = a1 and delta(e2) = a2.

#include "torbun/torbun.hpp"

namespace torbun {

inline void PrintTo(const MinkowskiWeight& w, std::ostream* os) {
  *os << "codim " << w.codim() << " {";
  for (const auto& [label, value] : w.table()) *os << " " << label << ": " << value << ";";
  *os << " }";
}

}  // namespace torbun

namespace f1 {

using namespace torbun;

inline FanPtr fan() {
  static FanPtr f = std::make_shared<const Fan>(
      2, std::vector<LatticeVector>{{1, 0}, {1, 1}, {0, 1}, {-1, -1}},
      std::vector<RayIndices>{{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  return f;
}

inline BundlePtr bundle() {
  static BundlePtr b = [] {
    AlgebraPtr a = make_free_truncated({{"a1", 1}, {"a2", 1}}, 4);
    MixingMap mix(a, {AlgebraElement::named(a, "a1"), AlgebraElement::named(a, "a2")});
    return make_bundle(fan(), a, mix);
  }();
  return b;
}

inline AlgebraElement cls(const std::string& text) { return parse_class(bundle()->algebra, text); }

inline std::size_t cone(const std::string& label) {
  if (label == "0") return fan()->zero_index();
  RayIndices idx;
  for (char c : label)
    if (c != ',') idx.push_back(static_cast<std::size_t>(c - '1'));
  return fan()->index_of(idx);
}

// Weight given as {label -> class text}; unlisted cones are zero.
inline MinkowskiWeight weight(unsigned codim, const std::map<std::string, std::string>& values) {
  MinkowskiWeight w(bundle(), codim);
  for (const auto& [label, text] : values) w.set(cone(label), cls(text));
  return w;
}

inline MinkowskiWeight w1() {
  return weight(1, {{"2", "1"}, {"4", "1"}, {"1,2", "a1 - a2"}, {"1,4", "a1 - a2"}});
}
inline MinkowskiWeight w2() {
  return weight(1, {{"1", "1"}, {"2", "-1"}, {"3", "1"}, {"1,2", "a2"}, {"2,3", "a1"}});
}

}  // namespace f1
