#pragma once

// JSON interchange formats shared by the command-line tool and anything else
// that wants files:
//   approx scalar   [re, im]
//   exact scalar    {"N": conductor, "coeffs": [[num, den], ...]}, phi(N) pairs
//   point / line    [scalar, scalar, scalar]
//   net             {"field": "complex" | {"cyclotomic": N},
//                    "classes": [[line, ...], ...], "points": [point, ...]?}
//   cubic           {"coeffs": [scalar x 10]}, x-degree then y-degree descending
//   vector          [scalar, ...]
//   latin square    {"m": int, "table": [[int, ...], ...], "labels": {...}}
// Integers that do not fit in 64 bits travel as decimal strings. Exact data
// round-trips bit-identically; approx doubles round-trip by value.

#include <nlohmann/json.hpp>

#include <limits>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "planet/cubic.hpp"
#include "planet/cyclotomic.hpp"
#include "planet/errors.hpp"
#include "planet/net.hpp"
#include "planet/projective.hpp"
#include "planet/quasigroup.hpp"
#include "planet/rational.hpp"
#include "planet/scalar.hpp"

namespace planet {

using Json = nlohmann::json;

namespace detail {

using CppInt = boost::multiprecision::cpp_int;

inline void expect(bool ok, const std::string& where, const std::string& what) {
  if (!ok) throw InputError(where + ": " + what);
}

inline Json bigint_to_json(const CppInt& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return Json(v.convert_to<long long>());
  return Json(v.str());
}

inline CppInt bigint_from_json(const Json& j, const std::string& where) {
  if (j.is_number_unsigned()) return CppInt(j.get<unsigned long long>());
  if (j.is_number_integer()) return CppInt(j.get<long long>());
  if (j.is_string()) {
    try {
      return CppInt(j.get<std::string>());
    } catch (const std::exception&) {
      throw InputError(where + ": not a decimal integer: \"" + j.get<std::string>() + "\"");
    }
  }
  throw InputError(where + ": expected an integer or a decimal string");
}

inline Json rational_to_json(const Rational& r) {
  return Json::array({bigint_to_json(numerator(r)), bigint_to_json(denominator(r))});
}

inline Rational rational_from_json(const Json& j, const std::string& where) {
  expect(j.is_array() && j.size() == 2, where, "expected a [numerator, denominator] pair");
  CppInt num = bigint_from_json(j[0], where + "[0]");
  CppInt den = bigint_from_json(j[1], where + "[1]");
  expect(den != 0, where, "zero denominator");
  return Rational(num, den);
}

}  // namespace detail

inline Json scalar_to_json(CD z) { return Json::array({z.real(), z.imag()}); }

inline Json scalar_to_json(const Cyclo& v) {
  Json coeffs = Json::array();
  for (const auto& r : v.coords()) coeffs.push_back(detail::rational_to_json(r));
  return Json{{"N", v.field()->conductor()}, {"coeffs", std::move(coeffs)}};
}

/// Parsing context for one backend; the Cyclo specialization carries the
/// field every scalar in the document must live in.
template <class S>
struct ScalarReader;

template <>
struct ScalarReader<CD> {
  CD operator()(const Json& j, const std::string& where) const {
    detail::expect(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(), where,
                   "expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
  }
};

template <>
struct ScalarReader<Cyclo> {
  FieldPtr field;

  Cyclo operator()(const Json& j, const std::string& where) const {
    detail::expect(j.is_object() && j.contains("N") && j.contains("coeffs"), where,
                   "expected {\"N\": ..., \"coeffs\": ...}");
    detail::expect(j["N"].is_number_integer() && j["N"].get<long>() == field->conductor(), where,
                   "conductor does not match the document field Q(zeta_" +
                       std::to_string(field->conductor()) + ")");
    const Json& cs = j["coeffs"];
    detail::expect(cs.is_array() && static_cast<int>(cs.size()) == field->degree(), where,
                   "expected " + std::to_string(field->degree()) + " coefficient pairs");
    std::vector<Rational> coords;
    for (size_t i = 0; i < cs.size(); ++i)
      coords.push_back(detail::rational_from_json(cs[i], where + ".coeffs[" + std::to_string(i) + "]"));
    return Cyclo(field, std::move(coords));
  }
};

template <class S>
Json point_to_json(const Point<S>& p) {
  return Json::array({scalar_to_json(p.c[0]), scalar_to_json(p.c[1]), scalar_to_json(p.c[2])});
}

template <class S>
Json line_to_json(const Line<S>& l) {
  return Json::array({scalar_to_json(l.c[0]), scalar_to_json(l.c[1]), scalar_to_json(l.c[2])});
}

namespace detail {

template <class S, class Make>
auto triple_from_json(const Json& j, const ScalarReader<S>& read, const std::string& where,
                      Make make) {
  expect(j.is_array() && j.size() == 3, where, "expected three scalars");
  return make(read(j[0], where + "[0]"), read(j[1], where + "[1]"), read(j[2], where + "[2]"));
}

}  // namespace detail

template <class S>
Point<S> point_from_json(const Json& j, const ScalarReader<S>& read, const std::string& where) {
  return detail::triple_from_json(j, read, where,
                                  [](S a, S b, S c) { return make_point(a, b, c); });
}

template <class S>
Line<S> line_from_json(const Json& j, const ScalarReader<S>& read, const std::string& where) {
  return detail::triple_from_json(j, read, where,
                                  [](S a, S b, S c) { return make_line(a, b, c); });
}

template <class S>
Json net_to_json(const Net<S>& net) {
  Json j;
  if constexpr (scalar_traits<S>::is_exact) {
    if (net.classes.empty() || net.classes[0].empty())
      throw InputError("cannot serialize an exact net with no lines");
    j["field"] = Json{{"cyclotomic", net.classes[0][0].c[0].field()->conductor()}};
  } else {
    j["field"] = "complex";
  }
  Json classes = Json::array();
  for (const auto& cls : net.classes) {
    Json lines = Json::array();
    for (const auto& l : cls) lines.push_back(line_to_json(l));
    classes.push_back(std::move(lines));
  }
  j["classes"] = std::move(classes);
  if (!net.points.empty()) {
    Json pts = Json::array();
    for (const auto& p : net.points) pts.push_back(point_to_json(p));
    j["points"] = std::move(pts);
  }
  return j;
}

using AnyNet = std::variant<Net<CD>, Net<Cyclo>>;

namespace detail {

template <class S>
Net<S> net_body_from_json(const Json& j, const ScalarReader<S>& read) {
  Net<S> net;
  const Json& classes = j["classes"];
  expect(classes.is_array() && !classes.empty(), "classes", "expected a nonempty array");
  for (size_t t = 0; t < classes.size(); ++t) {
    const std::string where = "classes[" + std::to_string(t) + "]";
    expect(classes[t].is_array(), where, "expected an array of lines");
    std::vector<Line<S>> cls;
    for (size_t i = 0; i < classes[t].size(); ++i)
      cls.push_back(line_from_json(classes[t][i], read, where + "[" + std::to_string(i) + "]"));
    net.classes.push_back(std::move(cls));
  }
  if (j.contains("points")) {
    const Json& pts = j["points"];
    expect(pts.is_array(), "points", "expected an array of points");
    for (size_t i = 0; i < pts.size(); ++i)
      net.points.push_back(point_from_json(pts[i], read, "points[" + std::to_string(i) + "]"));
  }
  return net;
}

}  // namespace detail

inline AnyNet net_from_json(const Json& j) {
  detail::expect(j.is_object() && j.contains("field") && j.contains("classes"), "net",
                 "expected {\"field\": ..., \"classes\": ...}");
  const Json& f = j["field"];
  if (f.is_string() && f.get<std::string>() == "complex")
    return detail::net_body_from_json<CD>(j, ScalarReader<CD>{});
  if (f.is_object() && f.contains("cyclotomic") && f["cyclotomic"].is_number_integer()) {
    FieldPtr field = CyclotomicField::make(f["cyclotomic"].get<int>());
    return detail::net_body_from_json<Cyclo>(j, ScalarReader<Cyclo>{field});
  }
  throw InputError("net.field: expected \"complex\" or {\"cyclotomic\": N}");
}

/// Coefficients in the order x^3, x^2 y, x^2 z, x y^2, x y z, x z^2, y^3,
/// y^2 z, y z^2, z^3: x-degree descending, then y-degree descending.
template <class S>
Json cubic_to_json(const Cubic<S>& cu) {
  Json coeffs = Json::array();
  for (int ax = 3; ax >= 0; --ax)
    for (int ay = 3 - ax; ay >= 0; --ay) coeffs.push_back(scalar_to_json(cu.f.at(ax, ay)));
  return Json{{"coeffs", std::move(coeffs)}};
}

template <class S>
Cubic<S> cubic_from_json(const Json& j, const ScalarReader<S>& read) {
  detail::expect(j.is_object() && j.contains("coeffs"), "cubic", "expected {\"coeffs\": ...}");
  const Json& cs = j["coeffs"];
  detail::expect(cs.is_array() && cs.size() == 10, "cubic.coeffs", "expected ten scalars");
  std::vector<S> coeffs;
  for (size_t i = 0; i < 10; ++i)
    coeffs.push_back(read(cs[i], "cubic.coeffs[" + std::to_string(i) + "]"));
  return make_cubic(std::move(coeffs));
}

template <class S>
std::vector<S> vector_from_json(const Json& j, const ScalarReader<S>& read) {
  detail::expect(j.is_array(), "vector", "expected an array of scalars");
  std::vector<S> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(read(j[i], "vector[" + std::to_string(i) + "]"));
  return out;
}

inline Json latin_to_json(const LatinSquare& ls) {
  return Json{{"m", ls.m},
              {"table", ls.table},
              {"labels",
               Json{{"rows", ls.row_labels}, {"cols", ls.col_labels}, {"syms", ls.sym_labels}}}};
}

}  // namespace planet
