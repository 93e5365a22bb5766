#pragma once

// JSON encodings of the library types.
//
//   real matrix     row-major array of arrays
//   complex matrix  {"re": [[...]], "im": [[...]]}
//   complex scalar  [re, im] or a plain number
//   SqueezeVectors  {"k": [3], "l": [3]}
//   ClassLabel      {"a": x, "b": y, "no_squeeze": bool}
//   GaussianState   {"mean": [4], "variance": [[4] x 4]}
//
// Quadrature order is (q1, q2, p1, p2) throughout.

#include "sp4/classification.hpp"
#include "sp4/core.hpp"
#include "sp4/detection.hpp"
#include "sp4/gaussian.hpp"

#include <json.hpp>

#include <string>

namespace sp4::io {

using json = nlohmann::json;

/// Malformed or missing JSON fields.
class SchemaError : public InputError {
 public:
  using InputError::InputError;
};

inline const json& field(const json& j, const std::string& key) {
  if (!j.is_object()) throw SchemaError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError("missing field '" + key + "'");
  return *it;
}

inline double number(const json& j, const std::string& what) {
  if (!j.is_number()) throw SchemaError("'" + what + "' must be a number");
  return j.get<double>();
}

inline double number_field(const json& j, const std::string& key) {
  return number(field(j, key), key);
}

template <int R, int C>
json to_json(const Eigen::Matrix<double, R, C>& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <int N>
json to_json(const Eigen::Matrix<double, N, 1>& v) {
  json a = json::array();
  for (int i = 0; i < N; ++i) a.push_back(v[i]);
  return a;
}

template <int R, int C>
json to_json(const Eigen::Matrix<Complex, R, C>& m) {
  const Eigen::Matrix<double, R, C> re = m.real(), im = m.imag();
  return {{"re", to_json(re)}, {"im", to_json(im)}};
}

template <int R, int C>
Eigen::Matrix<double, R, C> read_matrix(const json& j, const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != R) {
    throw SchemaError("'" + what + "' must be an array of " + std::to_string(R) +
                      " rows");
  }
  Eigen::Matrix<double, R, C> m;
  for (int r = 0; r < R; ++r) {
    const json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != C) {
      throw SchemaError("'" + what + "' rows must have " + std::to_string(C) +
                        " entries");
    }
    for (int c = 0; c < C; ++c) m(r, c) = number(row[c], what);
  }
  return m;
}

template <int N>
Eigen::Matrix<double, N, 1> read_vector(const json& j, const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != N) {
    throw SchemaError("'" + what + "' must be an array of " + std::to_string(N) +
                      " numbers");
  }
  Eigen::Matrix<double, N, 1> v;
  for (int i = 0; i < N; ++i) v[i] = number(j[i], what);
  return v;
}

template <int R, int C>
Eigen::Matrix<Complex, R, C> read_complex_matrix(const json& j,
                                                 const std::string& what) {
  const auto re = read_matrix<R, C>(field(j, "re"), what + ".re");
  const auto im = read_matrix<R, C>(field(j, "im"), what + ".im");
  return re.template cast<Complex>() + Complex{0.0, 1.0} * im.template cast<Complex>();
}

inline Complex read_complex(const json& j, const std::string& what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {number(j[0], what), number(j[1], what)};
  throw SchemaError("'" + what + "' must be a number or [re, im]");
}

inline json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline json to_json(const SqueezeVectors& v) {
  return {{"k", to_json<3>(v.k)}, {"l", to_json<3>(v.l)}};
}

inline SqueezeVectors read_squeeze_vectors(const json& j) {
  return {read_vector<3>(field(j, "k"), "k"), read_vector<3>(field(j, "l"), "l")};
}

inline json to_json(const ClassLabel& c) {
  return {{"a", c.a}, {"b", c.b}, {"no_squeeze", c.no_squeeze}};
}

inline ClassLabel read_label(const json& j) {
  return ClassLabel::make(number_field(j, "a"), number_field(j, "b"));
}

inline json to_json(const InvariantPair& p) { return {{"i1", p.i1}, {"i2", p.i2}}; }

inline json to_json(const GaussianState& s) {
  return {{"mean", to_json<4>(s.mean)}, {"variance", to_json<4, 4>(s.variance.matrix())}};
}

/// Reads {"mean", "variance"}; the mean is optional and defaults to zero.
/// With require_physical = false the uncertainty relation is not enforced.
inline GaussianState read_state(const json& j, bool require_physical = true,
                                double tol = tol::structural) {
  Vec4 mean = Vec4::Zero();
  if (j.is_object() && j.contains("mean")) mean = read_vector<4>(j["mean"], "mean");
  const Mat4 v = read_matrix<4, 4>(field(j, "variance"), "variance");
  return {mean, require_physical ? VarianceMatrix::make(v, tol)
                                 : VarianceMatrix::quadratic_form(v, tol)};
}

inline json to_json(const SqueezingVerdict& v) {
  return {{"least_eigenvalue", v.least_eigenvalue},
          {"squeezed", v.squeezed},
          {"multiplicity", v.multiplicity},
          {"optimal_passive", to_json<2, 2>(v.optimal_passive)}};
}

inline json to_json(const MachZehnderParams& p) {
  return {{"phi", p.phi}, {"theta", p.theta}, {"psi1", p.psi1}, {"psi2", p.psi2}};
}

inline json to_json(const WaveplateSynthesis& w) {
  return {{"alpha", w.params.alpha},
          {"beta", w.params.beta},
          {"gamma", w.params.gamma},
          {"global_phase", w.global_phase}};
}

}  // namespace sp4::io
