#pragma once

// Problem files, command implementations and result documents for the
// torbun command-line tool.

#include "torbun/torbun.hpp"

#include "json.hpp"

#include <cstdint>
#include <iomanip>
#include <sstream>

namespace torbun::cli {

using Json = nlohmann::json;

struct BaseSpec {
  enum class Kind { Point, Projective, FreeTruncated, Explicit };
  Kind kind = Kind::Point;
  unsigned top = 0;  // projective dimension for Projective
  std::string generator = "h";
  std::vector<BasisElement> generators;  // FreeTruncated
  std::vector<BasisElement> basis;       // Explicit
  struct Entry {
    std::size_t i, j, k;
    Integer c;
    friend bool operator<(const Entry& a, const Entry& b) {
      return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
    }
  };
  std::vector<Entry> mult_table;             // Explicit, nonzero entries
  std::vector<std::string> generator_names;  // Explicit
};

struct WeightSpec {
  std::optional<unsigned> codim;
  std::map<std::string, std::string> values;  // cone label -> class
  std::optional<std::string> dual_of;
};

struct PiecewiseSpec {
  unsigned degree = 0;
  std::map<std::string, std::string> pieces;  // maximal cone label -> polynomial
};

struct ProblemFile {
  std::size_t lattice_rank = 0;
  std::vector<LatticeVector> rays;
  std::vector<RayIndices> cones;  // 1-based, sorted
  BaseSpec base;
  std::optional<std::vector<std::vector<Integer>>> mixing;
  std::map<std::string, WeightSpec> weights;
  std::optional<PiecewiseSpec> piecewise;
  std::optional<std::vector<LatticeVector>> sublattice;
  std::optional<LatticeVector> v;
};

namespace detail {

[[noreturn]] inline void bad(const std::string& path, const std::string& what) {
  fail(ErrorCode::ParseError, path + ": " + what);
}

inline const Json& member(const Json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) bad(path, "missing key '" + key + "'");
  return *it;
}

inline Integer to_integer(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::exception&) {
      bad(path, "not an integer");
    }
  }
  bad(path, "expected an integer");
}

inline unsigned to_unsigned(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0 || j.get<long long>() > 1000) bad(path, "expected a small non-negative integer");
  return static_cast<unsigned>(j.get<long long>());
}

inline std::string to_string_value(const Json& j, const std::string& path) {
  if (!j.is_string()) bad(path, "expected a string");
  return j.get<std::string>();
}

inline LatticeVector to_vector(const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array of integers");
  std::vector<Integer> e;
  for (std::size_t i = 0; i < j.size(); ++i) e.push_back(to_integer(j[i], path + "[" + std::to_string(i) + "]"));
  return LatticeVector(std::move(e));
}

inline Json integer_json(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return Json(x.convert_to<long long>());
  return Json(x.str());
}

inline Json vector_json(const LatticeVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(integer_json(x));
  return a;
}

inline std::vector<BasisElement> basis_list(const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected a list of [name, degree] pairs");
  std::vector<BasisElement> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string p = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 2) bad(p, "expected [name, degree]");
    out.push_back({to_string_value(j[i][0], p + "[0]"), to_unsigned(j[i][1], p + "[1]")});
  }
  return out;
}

inline Json basis_json(const std::vector<BasisElement>& b) {
  Json a = Json::array();
  for (const auto& e : b) a.push_back(Json::array({e.name, e.degree}));
  return a;
}

inline BaseSpec parse_base(const Json& j) {
  const std::string path = "base";
  BaseSpec b;
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "point") return b;
    std::istringstream in(s);
    std::string word;
    long n = -1;
    in >> word >> n;
    if (word != "projective" || n < 0 || !in.eof()) bad(path, "unknown base algebra '" + s + "'");
    b.kind = BaseSpec::Kind::Projective;
    b.top = static_cast<unsigned>(n);
    return b;
  }
  if (!j.is_object() || j.size() != 1) bad(path, "expected \"point\", \"projective n\" or a single-key object");
  const auto& [key, body] = *j.items().begin();
  if (key == "projective") {
    b.kind = BaseSpec::Kind::Projective;
    b.top = to_unsigned(member(body, "n", path + ".projective"), path + ".projective.n");
    if (body.contains("generator")) b.generator = to_string_value(body["generator"], path + ".projective.generator");
  } else if (key == "free_truncated") {
    b.kind = BaseSpec::Kind::FreeTruncated;
    b.generators = basis_list(member(body, "generators", path + ".free_truncated"), path + ".free_truncated.generators");
    b.top = to_unsigned(member(body, "top", path + ".free_truncated"), path + ".free_truncated.top");
  } else if (key == "explicit") {
    const std::string p = path + ".explicit";
    b.kind = BaseSpec::Kind::Explicit;
    b.top = to_unsigned(member(body, "top", p), p + ".top");
    b.basis = basis_list(member(body, "basis", p), p + ".basis");
    const Json& table = member(body, "mult_table", p);
    if (!table.is_array()) bad(p + ".mult_table", "expected a list of [i, j, k, coefficient]");
    for (std::size_t t = 0; t < table.size(); ++t) {
      std::string q = p + ".mult_table[" + std::to_string(t) + "]";
      if (!table[t].is_array() || table[t].size() != 4) bad(q, "expected [i, j, k, coefficient]");
      BaseSpec::Entry e{to_unsigned(table[t][0], q), to_unsigned(table[t][1], q), to_unsigned(table[t][2], q),
                        to_integer(table[t][3], q)};
      if (e.i >= b.basis.size() || e.j >= b.basis.size() || e.k >= b.basis.size()) bad(q, "basis index out of range");
      if (e.c != 0) b.mult_table.push_back(e);
    }
    std::sort(b.mult_table.begin(), b.mult_table.end());
    for (std::size_t t = 1; t < b.mult_table.size(); ++t)
      if (!(b.mult_table[t - 1] < b.mult_table[t])) bad(p + ".mult_table", "repeated entry");
    if (body.contains("generators"))
      for (const auto& g : body["generators"]) b.generator_names.push_back(to_string_value(g, p + ".generators"));
  } else {
    bad(path, "unknown base algebra kind '" + key + "'");
  }
  return b;
}

inline Json base_json(const BaseSpec& b) {
  switch (b.kind) {
    case BaseSpec::Kind::Point: return "point";
    case BaseSpec::Kind::Projective:
      if (b.generator == "h") return "projective " + std::to_string(b.top);
      return Json{{"projective", {{"n", b.top}, {"generator", b.generator}}}};
    case BaseSpec::Kind::FreeTruncated:
      return Json{{"free_truncated", {{"generators", basis_json(b.generators)}, {"top", b.top}}}};
    case BaseSpec::Kind::Explicit: {
      Json table = Json::array();
      for (const auto& e : b.mult_table) table.push_back(Json::array({e.i, e.j, e.k, integer_json(e.c)}));
      Json body{{"top", b.top}, {"basis", basis_json(b.basis)}, {"mult_table", table}};
      if (!b.generator_names.empty()) body["generators"] = b.generator_names;
      return Json{{"explicit", body}};
    }
  }
  return nullptr;
}

inline AlgebraPtr build_algebra(const BaseSpec& b) {
  switch (b.kind) {
    case BaseSpec::Kind::Point: return make_point();
    case BaseSpec::Kind::Projective: return make_projective(b.top, b.generator);
    case BaseSpec::Kind::FreeTruncated: return make_free_truncated(b.generators, b.top);
    case BaseSpec::Kind::Explicit: {
      const std::size_t r = b.basis.size();
      StructureConstants t(r, std::vector<std::vector<Integer>>(r, std::vector<Integer>(r, Integer(0))));
      for (const auto& e : b.mult_table) t[e.i][e.j][e.k] = e.c;
      return GradedAlgebra::create(b.top, b.basis, std::move(t), b.generator_names);
    }
  }
  fail(ErrorCode::InvalidInput, "unknown base algebra");
}

inline std::string line_context(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace detail

inline ProblemFile parse_problem(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::ParseError, detail::line_context(text, e.byte) + ": " + e.what());
  }
  if (!j.is_object()) detail::bad("document", "expected an object");
  ProblemFile p;
  static const std::set<std::string> known{"lattice_rank", "rays", "cones", "base", "mixing", "weights",
                                           "piecewise", "sublattice", "v"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) detail::bad("document", "unknown key '" + key + "'");

  long long rank = detail::to_integer(detail::member(j, "lattice_rank", "document"), "lattice_rank").convert_to<long long>();
  if (rank < 0) detail::bad("lattice_rank", "must be non-negative");
  p.lattice_rank = static_cast<std::size_t>(rank);

  const Json& rays = detail::member(j, "rays", "document");
  if (!rays.is_array()) detail::bad("rays", "expected a list of vectors");
  for (std::size_t i = 0; i < rays.size(); ++i) {
    std::string path = "rays[" + std::to_string(i) + "]";
    p.rays.push_back(detail::to_vector(rays[i], path));
    if (p.rays.back().rank() != p.lattice_rank)
      fail(ErrorCode::InvalidInput, path + ": expected " + std::to_string(p.lattice_rank) + " entries");
  }

  const Json& cones = detail::member(j, "cones", "document");
  if (!cones.is_array()) detail::bad("cones", "expected a list of ray index lists");
  for (std::size_t i = 0; i < cones.size(); ++i) {
    std::string path = "cones[" + std::to_string(i) + "]";
    if (!cones[i].is_array()) detail::bad(path, "expected a list of ray indices");
    RayIndices c;
    for (std::size_t k = 0; k < cones[i].size(); ++k) {
      std::string q = path + "[" + std::to_string(k) + "]";
      if (!cones[i][k].is_number_integer()) detail::bad(q, "expected a ray index");
      long long r = cones[i][k].get<long long>();
      if (r < 1 || r > static_cast<long long>(p.rays.size()))
        fail(ErrorCode::InvalidInput, q + ": ray index " + std::to_string(r) + " out of range 1.." + std::to_string(p.rays.size()));
      c.push_back(static_cast<std::size_t>(r));
    }
    std::sort(c.begin(), c.end());
    if (std::adjacent_find(c.begin(), c.end()) != c.end()) fail(ErrorCode::InvalidInput, path + ": repeated ray index");
    p.cones.push_back(c);
  }

  if (j.contains("base")) p.base = detail::parse_base(j["base"]);

  if (j.contains("mixing")) {
    const Json& m = j["mixing"];
    if (!m.is_array()) detail::bad("mixing", "expected a matrix");
    std::vector<std::vector<Integer>> rows;
    for (std::size_t i = 0; i < m.size(); ++i) {
      std::string path = "mixing[" + std::to_string(i) + "]";
      if (!m[i].is_array()) detail::bad(path, "expected a row");
      std::vector<Integer> row;
      for (std::size_t k = 0; k < m[i].size(); ++k)
        row.push_back(detail::to_integer(m[i][k], path + "[" + std::to_string(k) + "]"));
      rows.push_back(std::move(row));
    }
    p.mixing = std::move(rows);
  }

  if (j.contains("weights")) {
    const Json& w = j["weights"];
    if (!w.is_object()) detail::bad("weights", "expected an object of named weights");
    for (const auto& [name, body] : w.items()) {
      std::string path = "weights." + name;
      if (!body.is_object()) detail::bad(path, "expected an object");
      WeightSpec spec;
      for (const auto& [key, value] : body.items())
        if (key != "codim" && key != "values" && key != "dual_of") detail::bad(path, "unknown key '" + key + "'");
      if (body.contains("codim")) spec.codim = detail::to_unsigned(body["codim"], path + ".codim");
      if (body.contains("dual_of")) spec.dual_of = detail::to_string_value(body["dual_of"], path + ".dual_of");
      if (body.contains("values")) {
        if (!body["values"].is_object()) detail::bad(path + ".values", "expected cone label -> class");
        for (const auto& [label, text] : body["values"].items())
          spec.values[label] = detail::to_string_value(text, path + ".values." + label);
      }
      if (!spec.dual_of && !spec.codim) detail::bad(path, "needs 'codim' with 'values', or 'dual_of'");
      p.weights[name] = std::move(spec);
    }
  }

  if (j.contains("piecewise")) {
    const Json& f = j["piecewise"];
    PiecewiseSpec spec;
    spec.degree = detail::to_unsigned(detail::member(f, "degree", "piecewise"), "piecewise.degree");
    const Json& pieces = detail::member(f, "pieces", "piecewise");
    if (!pieces.is_object()) detail::bad("piecewise.pieces", "expected maximal cone label -> polynomial");
    for (const auto& [label, text] : pieces.items())
      spec.pieces[label] = detail::to_string_value(text, "piecewise.pieces." + label);
    p.piecewise = std::move(spec);
  }

  if (j.contains("sublattice")) {
    const Json& s = j["sublattice"];
    if (!s.is_array()) detail::bad("sublattice", "expected a list of generators");
    std::vector<LatticeVector> gens;
    for (std::size_t i = 0; i < s.size(); ++i) {
      std::string path = "sublattice[" + std::to_string(i) + "]";
      gens.push_back(detail::to_vector(s[i], path));
      if (gens.back().rank() != p.lattice_rank) fail(ErrorCode::InvalidInput, path + ": wrong number of entries");
    }
    p.sublattice = std::move(gens);
  }

  if (j.contains("v")) {
    p.v = detail::to_vector(j["v"], "v");
    if (p.v->rank() != p.lattice_rank) fail(ErrorCode::InvalidInput, "v: wrong number of entries");
  }
  return p;
}

inline Json problem_json(const ProblemFile& p) {
  Json j;
  j["lattice_rank"] = p.lattice_rank;
  j["rays"] = Json::array();
  for (const auto& r : p.rays) j["rays"].push_back(detail::vector_json(r));
  j["cones"] = Json::array();
  for (const auto& c : p.cones) j["cones"].push_back(c);
  j["base"] = detail::base_json(p.base);
  if (p.mixing) {
    Json m = Json::array();
    for (const auto& row : *p.mixing) {
      Json r = Json::array();
      for (const auto& x : row) r.push_back(detail::integer_json(x));
      m.push_back(r);
    }
    j["mixing"] = m;
  }
  if (!p.weights.empty()) {
    Json w = Json::object();
    for (const auto& [name, spec] : p.weights) {
      Json body = Json::object();
      if (spec.codim) body["codim"] = *spec.codim;
      if (spec.dual_of) body["dual_of"] = *spec.dual_of;
      if (!spec.values.empty()) body["values"] = spec.values;
      w[name] = body;
    }
    j["weights"] = w;
  }
  if (p.piecewise) j["piecewise"] = {{"degree", p.piecewise->degree}, {"pieces", p.piecewise->pieces}};
  if (p.sublattice) {
    Json s = Json::array();
    for (const auto& g : *p.sublattice) s.push_back(detail::vector_json(g));
    j["sublattice"] = s;
  }
  if (p.v) j["v"] = detail::vector_json(*p.v);
  return j;
}

inline std::string serialize_problem(const ProblemFile& p) { return problem_json(p).dump(2) + "\n"; }

struct Problem {
  ProblemFile file;
  FanPtr fan;
  BundlePtr bundle;
};

inline Problem build_problem(ProblemFile file) {
  Problem p;
  std::vector<RayIndices> cones;
  for (const auto& c : file.cones) {
    RayIndices z;
    for (auto r : c) z.push_back(r - 1);
    cones.push_back(z);
  }
  p.fan = std::make_shared<const Fan>(file.lattice_rank, file.rays, cones);
  AlgebraPtr algebra = detail::build_algebra(file.base);
  auto degree_one = algebra->degree_basis(1);
  std::vector<AlgebraElement> images;
  if (file.mixing) {
    require(file.mixing->size() == file.lattice_rank, ErrorCode::InvalidInput,
            "mixing: expected " + std::to_string(file.lattice_rank) + " rows, one per lattice basis vector");
    for (std::size_t i = 0; i < file.mixing->size(); ++i) {
      const auto& row = (*file.mixing)[i];
      require(row.size() == degree_one.size(), ErrorCode::InvalidInput,
              "mixing[" + std::to_string(i) + "]: expected " + std::to_string(degree_one.size()) +
                  " entries, one per degree-1 basis element");
      AlgebraElement x = AlgebraElement::zero(algebra);
      for (std::size_t k = 0; k < row.size(); ++k)
        if (row[k] != 0) x += row[k] * AlgebraElement::basis(algebra, degree_one[k]);
      images.push_back(x);
    }
  } else {
    images.assign(file.lattice_rank, AlgebraElement::zero(algebra));
  }
  p.bundle = make_bundle(p.fan, algebra, MixingMap(algebra, images));
  p.file = std::move(file);
  return p;
}

// Cone index from a label such as "0" or "1,2" (1-based ray indices).
inline std::size_t cone_index(const Fan& fan, const std::string& label) {
  if (label == "0") return fan.zero_index();
  RayIndices idx;
  std::stringstream in(label);
  std::string part;
  while (std::getline(in, part, ',')) {
    std::size_t used = 0;
    long r = -1;
    try {
      r = std::stol(part, &used);
    } catch (const std::exception&) {
    }
    require(used == part.size() && r >= 1 && r <= static_cast<long>(fan.rays().size()), ErrorCode::ConeNotInFan,
            "bad cone label '" + label + "'");
    idx.push_back(static_cast<std::size_t>(r - 1));
  }
  std::sort(idx.begin(), idx.end());
  auto found = fan.find(idx);
  require(found.has_value(), ErrorCode::ConeNotInFan, "cone " + label + " is not in the fan");
  return *found;
}

inline LatticeVector parse_vector_flag(const std::string& text, std::size_t rank) {
  std::vector<Integer> e;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      e.emplace_back(part);
    } catch (const std::exception&) {
      fail(ErrorCode::ParseError, "--v: '" + part + "' is not an integer");
    }
  }
  require(e.size() == rank, ErrorCode::InvalidInput,
          "--v: expected " + std::to_string(rank) + " entries, got " + std::to_string(e.size()));
  return LatticeVector(std::move(e));
}

inline MinkowskiWeight build_weight(const Problem& p, const std::string& name) {
  auto it = p.file.weights.find(name);
  require(it != p.file.weights.end(), ErrorCode::InvalidInput, "no weight named '" + name + "' in the file");
  const WeightSpec& spec = it->second;
  std::optional<MinkowskiWeight> dual;
  if (spec.dual_of) dual = poincare_dual_mw(parse_chow_expr(p.bundle, *spec.dual_of));
  unsigned codim = spec.codim ? *spec.codim : dual->codim();
  MinkowskiWeight w(p.bundle, codim);
  for (const auto& [label, text] : spec.values) w.set(cone_index(*p.fan, label), parse_class(p.bundle->algebra, text));
  if (!dual) return w;
  if (!spec.values.empty() || spec.codim)
    require(w == *dual, ErrorCode::CrossCheckFailed,
            "weight '" + name + "': listed values differ from the dual of " + *spec.dual_of);
  return *dual;
}

inline PiecewisePolynomial build_piecewise(const Problem& p) {
  require(p.file.piecewise.has_value(), ErrorCode::InvalidInput, "the file has no piecewise polynomial");
  auto names = default_variable_names(p.fan->ambient_rank());
  PiecewisePolynomial f(p.fan, p.file.piecewise->degree);
  for (const auto& [label, text] : p.file.piecewise->pieces) f.set(cone_index(*p.fan, label), parse_polynomial(text, names));
  return f;
}

struct Options {
  std::string format = "json";
  std::uint64_t seed = 0;
  bool cross_check = false;
  bool oracle = false;
  bool equivariant = false;
  std::optional<std::string> v, left, right, sigma, tau, weight;
};

struct Result {
  Json document;
  int exit_code = 0;
};

inline std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::BalancingViolation:
    case ErrorCode::ResidueNotPolynomial:
    case ErrorCode::CrossCheckFailed: return 3;
    case ErrorCode::GenericSearchExhausted: return 4;
    default: return 2;
  }
}

namespace detail {

inline Json weight_table(const MinkowskiWeight& w) {
  Json rows = Json::array();
  for (const auto& [label, value] : w.table()) rows.push_back({{"cone", label}, {"value", value}});
  return rows;
}

inline Json balancing_json(const MinkowskiWeight& w, const BalancingReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations)
    v.push_back({{"cone", w.fan().label(x.tau)}, {"m", vector_json(x.m)}, {"lhs", x.lhs.str()}, {"rhs", x.rhs.str()}});
  return {{"passed", r.passed()}, {"checks", r.checks}, {"violations", v}};
}

struct ChosenVector {
  LatticeVector v;
  Json certificate;
};

template <class Accept>
ChosenVector choose_vector(const Problem& p, const Options& o, Accept accept, const std::vector<LatticeVector>& skip = {}) {
  const std::size_t n = p.fan->ambient_rank();
  if (skip.empty() && (o.v || p.file.v)) {
    LatticeVector v = o.v ? parse_vector_flag(*o.v, n) : *p.file.v;
    return {v, {{"v", vector_json(v)}, {"source", o.v ? "flag" : "file"}}};
  }
  auto found = find_vector(n, o.seed, accept, skip);
  return {found.v,
          {{"v", vector_json(found.v)},
           {"source", "search"},
           {"seed", o.seed},
           {"candidates_tried", found.candidates_tried},
           {"bound", found.bound}}};
}

inline Json genericity_certificate(const FanDisplacement& disp, Json cert) {
  std::size_t point_meets = 0;
  const Fan& fan = disp.fan();
  for (std::size_t a = 0; a < fan.size(); ++a)
    for (std::size_t b = 0; b < fan.size(); ++b)
      if (disp.meet_dim(a, b) == 0) ++point_meets;
  auto witness = disp.genericity_witness();
  cert["generic"] = !witness;
  cert["single_point_meets"] = point_meets;
  if (witness) cert["witness"] = Json::array({fan.label(witness->first), fan.label(witness->second)});
  return cert;
}

inline std::pair<std::string, std::string> product_operands(const Problem& p, const Options& o) {
  if (o.left && o.right) return {*o.left, *o.right};
  std::vector<std::string> names;
  for (const auto& [name, spec] : p.file.weights) names.push_back(name);
  require(names.size() == 2 || (o.left && names.size() >= 1) || (o.right && names.size() >= 1), ErrorCode::InvalidInput,
          "mw-product needs --left and --right unless the file has exactly two weights");
  if (o.left) return {*o.left, names.back() == *o.left ? names.front() : names.back()};
  if (o.right) return {names.front() == *o.right ? names.back() : names.front(), *o.right};
  return {names[0], names[1]};
}

}  // namespace detail

inline Json cmd_check_fan(const Problem& p, Json& diagnostics) {
  const Fan& fan = *p.fan;
  Json cones = Json::array();
  for (std::size_t i = 0; i < fan.size(); ++i) {
    const Cone& c = fan.cone(i);
    Json row{{"cone", fan.label(i)}, {"dim", c.dim()}, {"simplicial", c.is_simplicial()}, {"maximal", fan.is_maximal(i)}};
    row["multiplicity"] = c.is_simplicial() ? detail::integer_json(multiplicity(c)) : Json(nullptr);
    cones.push_back(row);
  }
  bool complete = is_complete(fan);
  diagnostics["completeness_rule"] = "pure, ridges shared by two maximal cones, facet-connected";
  return {{"lattice_rank", fan.ambient_rank()}, {"rays", fan.rays().size()}, {"cones", cones},
          {"complete", complete}, {"smooth", fan.is_smooth()}, {"simplicial", fan.is_simplicial()}};
}

inline Json cmd_check_balancing(const Problem& p, const Options& o, Json& diagnostics, int& exit_code) {
  std::vector<std::string> names;
  if (o.weight)
    names.push_back(*o.weight);
  else
    for (const auto& [name, spec] : p.file.weights) names.push_back(name);
  require(!names.empty(), ErrorCode::InvalidInput, "the file has no weights");
  Json reports = Json::array();
  for (const auto& name : names) {
    MinkowskiWeight w = build_weight(p, name);
    auto report = check_balancing(w);
    if (!report.passed()) exit_code = 3;
    Json r = detail::balancing_json(w, report);
    r["name"] = name;
    r["codim"] = w.codim();
    reports.push_back(r);
  }
  diagnostics["all_passed"] = exit_code == 0;
  return {{"weights", reports}};
}

inline Json cmd_mw_product(const Problem& p, const Options& o, Json& diagnostics) {
  auto [left, right] = detail::product_operands(p, o);
  MinkowskiWeight w1 = build_weight(p, left), w2 = build_weight(p, right);
  auto generic = [&](const LatticeVector& v) { return is_generic_diagonal(p.fan, v); };
  auto chosen = detail::choose_vector(p, o, generic);
  FanDisplacement disp(p.fan, chosen.v);
  diagnostics["genericity"] = detail::genericity_certificate(disp, chosen.certificate);
  MinkowskiWeight product = mw_product(w1, w2, disp);
  diagnostics["balancing"] = detail::balancing_json(product, check_balancing(product));
  if (o.cross_check) {
    auto second = detail::choose_vector(p, o, generic, {chosen.v});
    FanDisplacement disp2(p.fan, second.v);
    MinkowskiWeight again = mw_product(w1, w2, disp2);
    diagnostics["cross_check"] = {{"genericity", detail::genericity_certificate(disp2, second.certificate)},
                                  {"agrees", again == product}};
    require(again == product, ErrorCode::CrossCheckFailed,
            "products for v = " + chosen.v.str() + " and v = " + second.v.str() + " differ");
  }
  if (o.oracle) {
    const auto& s1 = p.file.weights.at(left);
    const auto& s2 = p.file.weights.at(right);
    require(s1.dual_of && s2.dual_of, ErrorCode::InvalidInput, "--oracle needs 'dual_of' on both weights");
    auto gamma = parse_chow_expr(p.bundle, *s1.dual_of) * parse_chow_expr(p.bundle, *s2.dual_of);
    MinkowskiWeight expected = poincare_dual_mw(gamma);
    bool agrees = expected.codim() == product.codim() && expected.values() == product.values();
    diagnostics["oracle"] = {{"class", gamma.str()}, {"agrees", agrees}};
    require(agrees, ErrorCode::CrossCheckFailed, "product differs from the dual of " + gamma.str());
  }
  return {{"left", left}, {"right", right}, {"codim", product.codim()}, {"product", detail::weight_table(product)}};
}

inline Json cmd_pp_to_mw(const Problem& p, Json& diagnostics, int& exit_code) {
  PiecewisePolynomial f = build_piecewise(p);
  auto report = check_pp(f);
  Json violations = Json::array();
  for (const auto& v : report.violations)
    violations.push_back({{"sigma1", p.fan->label(v.sigma1)},
                          {"sigma2", p.fan->label(v.sigma2)},
                          {"face", p.fan->label(v.face)},
                          {"difference", v.difference.str(default_variable_names(v.difference.num_vars(), "y"))}});
  diagnostics["compatibility"] = {{"passed", report.passed()}, {"violations", violations}};
  if (!report.passed()) {
    exit_code = 3;
    return Json::object();
  }
  Json residues = Json::array();
  auto names = default_variable_names(p.fan->ambient_rank());
  for (std::size_t t = 0; t < p.fan->size(); ++t)
    residues.push_back({{"cone", p.fan->label(t)}, {"residue", residue_sum(f, t).str(names)}});
  MinkowskiWeight w = pp_to_mw(f, p.bundle);
  diagnostics["balancing"] = detail::balancing_json(w, check_balancing(w));
  return {{"codim", w.codim()}, {"residues", residues}, {"weight", detail::weight_table(w)}};
}

inline Json cmd_equiv_mult(const Problem& p, const Options& o) {
  const Fan& fan = *p.fan;
  std::vector<std::size_t> sigmas;
  if (o.sigma)
    sigmas.push_back(cone_index(fan, *o.sigma));
  else
    sigmas = fan.maximal_cones();
  auto names = default_variable_names(fan.ambient_rank());
  Json rows = Json::array();
  for (auto s : sigmas) {
    std::vector<std::size_t> taus;
    if (o.tau)
      taus.push_back(cone_index(fan, *o.tau));
    else
      for (std::size_t t = 0; t < fan.size(); ++t)
        if (fan.is_face_of(t, s)) taus.push_back(t);
    for (auto t : taus)
      rows.push_back({{"sigma", fan.label(s)}, {"tau", fan.label(t)}, {"value", equivariant_multiplicity(fan, s, t).str(names)}});
  }
  return {{"multiplicities", rows}};
}

inline Json cmd_residue(const Problem& p, const Options& o) {
  PiecewisePolynomial f = build_piecewise(p);
  auto names = default_variable_names(p.fan->ambient_rank());
  Json rows = Json::array();
  for (std::size_t t = 0; t < p.fan->size(); ++t) {
    if (o.tau && t != cone_index(*p.fan, *o.tau)) continue;
    rows.push_back({{"cone", p.fan->label(t)}, {"residue", residue_sum(f, t).str(names)}});
  }
  return {{"residues", rows}};
}

inline Json cmd_presentation(const Problem& p, const Options& o) {
  Presentation pres = o.equivariant ? equivariant_presentation(*p.bundle) : homology_presentation(*p.bundle);
  Json gens = Json::array();
  for (const auto& g : pres.generators)
    gens.push_back({{"cone", p.fan->label(g.cone)}, {"stratum", stratum_label(*p.fan, g.cone)}, {"degree", g.homological_degree}});
  Json rels = Json::array();
  for (const auto& r : pres.relations)
    rels.push_back({{"cone", p.fan->label(r.tau)}, {"m", detail::vector_json(r.m)}, {"relation", r.text}});
  return {{"equivariant", pres.equivariant}, {"generators", gens}, {"relations", rels}};
}

inline Json cmd_subbundle(const Problem& p, const Options& o, Json& diagnostics) {
  require(p.file.sublattice.has_value(), ErrorCode::InvalidInput, "the file has no sublattice");
  Sublattice sub(p.fan->ambient_rank(), *p.file.sublattice);
  require(is_saturated(sub), ErrorCode::NotSaturated, "sublattice is not saturated");
  auto chosen = detail::choose_vector(
      p, o, [&](const LatticeVector& v) { return sigma_v_set(*p.fan, sub, v).generic; });
  auto sv = sigma_v_set(*p.fan, sub, chosen.v);
  Json cert = chosen.certificate;
  cert["generic"] = sv.generic;
  Json cones = Json::array();
  for (auto s : sv.cones) cones.push_back(p.fan->label(s));
  cert["point_meets"] = cones;
  diagnostics["genericity"] = cert;
  StratumClassSum cls = subbundle_class(p.fan, sub, chosen.v);
  Json terms = Json::array();
  for (const auto& [s, c] : cls.terms)
    terms.push_back({{"cone", p.fan->label(s)}, {"stratum", stratum_label(*p.fan, s)}, {"coefficient", detail::integer_json(c)}});
  return {{"sublattice_rank", sub.rank()}, {"terms", terms}};
}

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"check-fan", "check-balancing", "mw-product", "pp-to-mw",
                                              "equiv-mult", "residue", "presentation", "subbundle"};
  return names;
}

inline Json flags_json(const std::string& command, const Options& o) {
  Json f = Json::object();
  f["format"] = o.format;
  if (command == "mw-product" || command == "subbundle") f["seed"] = o.seed;
  if (o.v) f["v"] = *o.v;
  if (o.cross_check) f["cross_check"] = true;
  if (o.oracle) f["oracle"] = true;
  if (o.equivariant) f["equivariant"] = true;
  if (o.left) f["left"] = *o.left;
  if (o.right) f["right"] = *o.right;
  if (o.sigma) f["sigma"] = *o.sigma;
  if (o.tau) f["tau"] = *o.tau;
  if (o.weight) f["weight"] = *o.weight;
  return f;
}

// Runs one command on the file contents. Library errors propagate as Error;
// failed checks are reported in the document with a nonzero exit code.
inline Result run_command(const std::string& command, const std::string& file_name, const std::string& text,
                          const Options& o) {
  Result result;
  Json& doc = result.document;
  doc["command"] = {{"name", command}, {"file", file_name}, {"flags", flags_json(command, o)}};
  doc["input_digest"] = fnv1a64(text);
  Json diagnostics = Json::object();
  Problem p = build_problem(parse_problem(text));
  Json outputs;
  if (command == "check-fan")
    outputs = cmd_check_fan(p, diagnostics);
  else if (command == "check-balancing")
    outputs = cmd_check_balancing(p, o, diagnostics, result.exit_code);
  else if (command == "mw-product")
    outputs = cmd_mw_product(p, o, diagnostics);
  else if (command == "pp-to-mw")
    outputs = cmd_pp_to_mw(p, diagnostics, result.exit_code);
  else if (command == "equiv-mult")
    outputs = cmd_equiv_mult(p, o);
  else if (command == "residue")
    outputs = cmd_residue(p, o);
  else if (command == "presentation")
    outputs = cmd_presentation(p, o);
  else if (command == "subbundle")
    outputs = cmd_subbundle(p, o, diagnostics);
  else
    fail(ErrorCode::InvalidInput, "unknown command '" + command + "'");
  doc["outputs"] = outputs;
  doc["diagnostics"] = diagnostics;
  return result;
}

namespace detail {

inline std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "-";
  return j.dump();
}

inline bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

inline bool is_flat_vector(const Json& j) {
  return j.is_array() && std::all_of(j.begin(), j.end(), [](const Json& x) { return is_scalar(x); });
}

inline std::string flat_text(const Json& j) {
  if (is_scalar(j)) return scalar_text(j);
  std::string s = "(";
  for (std::size_t i = 0; i < j.size(); ++i) s += (i ? "," : "") + scalar_text(j[i]);
  return s + ")";
}

// Rows of objects whose values are scalars or flat vectors.
inline bool is_record_list(const Json& j) {
  if (!j.is_array() || j.empty()) return false;
  for (const auto& row : j) {
    if (!row.is_object()) return false;
    for (const auto& [k, v] : row.items())
      if (!is_scalar(v) && !is_flat_vector(v)) return false;
  }
  return true;
}

inline void render(std::ostringstream& out, const Json& j, int indent) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  if (is_record_list(j)) {
    std::vector<std::string> columns;
    for (const auto& row : j)
      for (const auto& [k, v] : row.items())
        if (std::find(columns.begin(), columns.end(), k) == columns.end()) columns.push_back(k);
    // Cone-like keys lead.
    std::stable_partition(columns.begin(), columns.end(),
                          [](const std::string& c) { return c == "cone" || c == "name" || c == "sigma" || c == "tau"; });
    std::vector<std::size_t> width;
    for (const auto& c : columns) {
      std::size_t w = c.size();
      for (const auto& row : j)
        if (row.contains(c)) w = std::max(w, flat_text(row[c]).size());
      width.push_back(w);
    }
    auto line = [&](const std::vector<std::string>& cells) {
      std::string s = pad;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        s += cells[i];
        if (i + 1 < cells.size()) s += std::string(width[i] - cells[i].size() + 2, ' ');
      }
      out << s << "\n";
    };
    line(columns);
    for (const auto& row : j) {
      std::vector<std::string> cells;
      for (const auto& c : columns) cells.push_back(row.contains(c) ? flat_text(row[c]) : "");
      line(cells);
    }
    return;
  }
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (is_scalar(v) || is_flat_vector(v)) {
        out << pad << k << ": " << flat_text(v) << "\n";
      } else if (v.empty()) {
        out << pad << k << ": (none)\n";
      } else {
        out << pad << k << ":\n";
        render(out, v, indent + 2);
      }
    }
    return;
  }
  if (j.is_array()) {
    for (const auto& x : j) {
      if (is_scalar(x) || is_flat_vector(x)) {
        out << pad << "- " << flat_text(x) << "\n";
      } else {
        out << pad << "-\n";
        render(out, x, indent + 2);
      }
    }
    return;
  }
  out << pad << scalar_text(j) << "\n";
}

}  // namespace detail

inline std::string render_document(const Json& doc, const std::string& format) {
  if (format == "json") return doc.dump(2) + "\n";
  std::ostringstream out;
  detail::render(out, doc, 0);
  return out.str();
}

}  // namespace torbun::cli
