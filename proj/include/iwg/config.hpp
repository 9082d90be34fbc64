#pragma once

#include <string>
#include <vector>

#include "iwg/formal_group.hpp"
#include "iwg/growth.hpp"
#include "iwg/kobayashi.hpp"
#include "json.hpp"

namespace iwg {

using Json = nlohmann::json;

/// A JSON value together with its path, for error messages that name the field.
class Field {
 public:
  Field(const Json& j, std::string path) : j_(&j), path_(std::move(path)) {}

  const Json& json() const { return *j_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("field \"" + path_ + "\": " + what);
  }

  bool has(const std::string& key) const { return j_->is_object() && j_->contains(key); }

  Field operator[](const std::string& key) const {
    if (!j_->is_object()) fail("expected an object");
    auto it = j_->find(key);
    std::string sub = path_.empty() ? key : path_ + "." + key;
    if (it == j_->end()) throw InputError("field \"" + sub + "\": missing");
    return Field(*it, sub);
  }

  Field at(std::size_t i) const { return Field((*j_)[i], path_ + "[" + std::to_string(i) + "]"); }

  std::size_t size() const {
    if (!j_->is_array()) fail("expected an array");
    return j_->size();
  }

  long as_long() const {
    if (!j_->is_number_integer()) fail("expected an integer");
    return j_->get<long>();
  }

  long as_long(long lo, long hi) const {
    long v = as_long();
    if (v < lo || v > hi) fail("value " + std::to_string(v) + " out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
  }

  bool as_bool() const {
    if (!j_->is_boolean()) fail("expected true or false");
    return j_->get<bool>();
  }

  std::string as_string() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
  }

  /// Integer given as a JSON integer or a decimal string.
  Integer as_integer() const {
    if (j_->is_number_integer()) return Integer(j_->get<long>());
    if (j_->is_string()) {
      Integer z;
      if (z.set_str(j_->get<std::string>(), 10) != 0) fail("expected an integer string");
      return z;
    }
    fail("expected an integer");
  }

  /// Rational given as a JSON integer or a string "a" or "a/b".
  Rational as_rational() const {
    if (j_->is_number_integer()) return Rational(j_->get<long>());
    if (!j_->is_string()) fail("expected a rational string");
    try {
      return parse_rational(j_->get<std::string>());
    } catch (const InputError&) {
      fail("expected a rational string like \"3/2\"");
    }
  }

  std::vector<long> as_long_list() const {
    std::vector<long> v;
    for (std::size_t i = 0; i < size(); ++i) v.push_back(at(i).as_long());
    return v;
  }

  /// Integer matrix given as a list of rows.
  MatZ as_matrix(std::size_t rows, std::size_t cols) const {
    if (size() != rows) fail("expected " + std::to_string(rows) + " rows");
    MatZ m(rows, cols, Integer(0));
    for (std::size_t i = 0; i < rows; ++i) {
      Field r = at(i);
      if (r.size() != cols) r.fail("expected " + std::to_string(cols) + " entries");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = r.at(j).as_integer();
    }
    return m;
  }

 private:
  const Json* j_;
  std::string path_;
};

/// Parses text as JSON, reporting the position of a syntax error.
inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

/// {"g", "p", "euler_factors": [{"q", "Cq", "Cq2"}], "bad_primes"?, "u1"?}
inline EulerData parse_euler_data(const Field& f) {
  EulerData E;
  E.g = static_cast<int>(f["g"].as_long(1, 8));
  E.p = f["p"].as_long(3, 1000003);
  auto g = static_cast<std::size_t>(E.g);
  Field ef = f["euler_factors"];
  for (std::size_t i = 0; i < ef.size(); ++i) {
    Field e = ef.at(i);
    long q = e["q"].as_long(2, 1L << 30);
    if (E.factors.count(q)) e["q"].fail("duplicate prime " + std::to_string(q));
    E.factors[q] = {e["Cq"].as_matrix(g, g), e["Cq2"].as_matrix(g, g)};
  }
  if (f.has("bad_primes"))
    for (long q : f["bad_primes"].as_long_list()) E.bad_primes.insert(q);
  if (f.has("u1"))
    E.u1 = f["u1"].as_long_list();
  else
    E.u1.assign(g, 1);
  E.validate();
  return E;
}

/// Euler factors are needed at every prime up to the degree.
inline void require_primes_up_to(const EulerData& E, long D) {
  for (long q = 2; q <= D; ++q)
    if (is_prime(q) && !E.factors.count(q))
      throw InputError("field \"euler_factors\": missing prime " + std::to_string(q) + " (needed to degree " +
                       std::to_string(D) + ")");
}

inline std::vector<Sign> parse_signs(const Field& f) {
  std::vector<Sign> s;
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::string v = f.at(i).as_string();
    if (v == "sharp")
      s.push_back(Sign::sharp);
    else if (v == "flat")
      s.push_back(Sign::flat);
    else
      f.at(i).fail("expected \"sharp\" or \"flat\"");
  }
  return s;
}

inline GrowthParams parse_growth_params(const Field& f) {
  GrowthParams g;
  g.p = f["p"].as_long(3, 1000003);
  g.d = static_cast<int>(f["d"].as_long(1, 1000));
  Field rp = f["r_p"];
  if (!(rp.json().is_string() && rp.as_string() == "inf")) g.r_p = rp.as_rational();
  g.e_v = f["e_v"].as_long(1, 1000);
  g.f_v = f["f_v"].as_long(1, 1000);
  g.odd_signs = parse_signs(f["signs"]["odd"]);
  g.even_signs = parse_signs(f["signs"]["even"]);
  g.mu = f["mu"].as_rational();
  g.lambda = f["lambda"].as_long(0, 1L << 30);
  g.r_inf = f["r_inf"].as_long(0, 1L << 30);
  g.n_min = static_cast<int>(f["n_min"].as_long(1, 40));
  g.n_max = static_cast<int>(f["n_max"].as_long(1, 40));
  if (f.has("e_baseline") && !f["e_baseline"].json().is_null()) g.e_baseline = f["e_baseline"].as_integer();
  try {
    g.validate();
  } catch (const InputError& e) {
    throw InputError(std::string("growth parameters: ") + e.what());
  }
  return g;
}

/// {"p", "e"?, "f"?, "unramified"?, "eisenstein"?, "precision"}; defaults to Z_p.
inline DvrPtr parse_ring(const Field& f, std::optional<int> precision_override = std::nullopt) {
  long p = f["p"].as_long(2, 1000003);
  int e = f.has("e") ? static_cast<int>(f["e"].as_long(1, 64)) : 1;
  int fd = f.has("f") ? static_cast<int>(f["f"].as_long(1, 64)) : 1;
  int prec = precision_override ? *precision_override : static_cast<int>(f["precision"].as_long(1, 4096));
  std::vector<long> g;
  if (f.has("unramified")) g = f["unramified"].as_long_list();
  std::vector<std::vector<long>> eis;
  if (f.has("eisenstein")) {
    Field ef = f["eisenstein"];
    for (std::size_t i = 0; i < ef.size(); ++i) eis.push_back(ef.at(i).as_long_list());
  } else {
    if (e != 1) f.fail("\"eisenstein\" is required when e > 1");
    std::vector<long> c(static_cast<std::size_t>(fd), 0);
    c[0] = -p;
    eis.push_back(c);
  }
  return DvrRing::make(p, e, fd, g, eis, prec);
}

/// A ring element: an integer, or a list of e*f integer coordinates in the basis pi^i t^j (i major).
inline DvrElement parse_ring_element(const Field& f, const DvrPtr& ring) {
  if (!f.json().is_array()) return ring->from_integer(f.as_integer());
  auto n = static_cast<std::size_t>(ring->e() * ring->f());
  if (f.size() != n) f.fail("expected " + std::to_string(n) + " coordinates");
  std::vector<std::int64_t> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = ring->reduce(f.at(i).as_integer());
  return DvrElement(ring, std::move(c), ring->precision());
}

inline Poly<DvrElement> parse_ring_poly(const Field& f, const DvrPtr& ring) {
  std::vector<DvrElement> c;
  for (std::size_t i = 0; i < f.size(); ++i) c.push_back(parse_ring_element(f.at(i), ring));
  return Poly<DvrElement>(std::move(c), ring->zero());
}

inline DvrMatrix parse_ring_matrix(const Field& f, const DvrPtr& ring) {
  std::size_t r = f.size();
  if (r == 0) f.fail("expected a nonempty matrix");
  std::size_t c = f.at(0).size();
  DvrMatrix m = dvr_matrix(ring, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    Field row = f.at(i);
    if (row.size() != c) row.fail("expected " + std::to_string(c) + " entries");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = parse_ring_element(row.at(j), ring);
  }
  return m;
}

/// {"levels": [{"n", "relations", "transition"?}, ...]}
inline ProjectiveSystem parse_system(const Field& f, const DvrPtr& ring) {
  ProjectiveSystem S(ring);
  Field lv = f["levels"];
  if (lv.size() < 2) lv.fail("expected at least two levels");
  for (std::size_t i = 0; i < lv.size(); ++i) {
    Field l = lv.at(i);
    int n = static_cast<int>(l["n"].as_long(0, 64));
    DvrMatrix rel = parse_ring_matrix(l["relations"], ring);
    try {
      if (i == 0)
        S.add_level(n, rel);
      else
        S.add_level(n, rel, parse_ring_matrix(l["transition"], ring));
    } catch (const InputError& e) {
      if (std::string(e.what()).rfind("field", 0) == 0) throw;
      l.fail(e.what());
    }
  }
  return S;
}

}  // namespace iwg
