#pragma once

// Command implementations behind the sp4 executable. Each command maps a
// validated JSON payload to output text; nothing is written until the
// whole result has been computed.
//
// Exit codes: 0 success, 2 input or schema error, 3 numerical validation
// failure.

#include "sp4/classification.hpp"
#include "sp4/detection.hpp"
#include "sp4/gaussian.hpp"
#include "sp4/io.hpp"

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace sp4::cli {

using io::json;

enum class Format { json, csv };

inline constexpr int exit_ok = 0;
inline constexpr int exit_input = 2;
inline constexpr int exit_numerical = 3;

/// Largest forward-verification residual accepted by `synth`.
inline constexpr double synth_residual_limit = 1e-7;

struct Options {
  std::optional<Format> format;  // per-command default when unset
  double tol = tol::validation;
  std::uint64_t seed = 0;
};

struct Output {
  std::string text;
  int exit_code = exit_ok;
  /// True when `text` is an error message rather than a command result.
  bool is_error = false;
};

inline Output failure(std::string message, int code) {
  return {std::move(message), code, true};
}

/// Locale-independent, 12 significant digits.
inline std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

/// Replaces -0.0 by 0.0 throughout.
inline void clear_negative_zeros(json& j) {
  if (j.is_structured()) {
    for (auto& x : j) clear_negative_zeros(x);
  } else if (j.is_number_float() && j.get<double>() == 0.0) {
    j = 0.0;
  }
}

inline std::string dump(json j) {
  clear_negative_zeros(j);
  return j.dump(2) + "\n";
}

/// key,value rows for a JSON object; nested keys are joined with '.'.
inline void flatten(const json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(*it, prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      flatten(j[i], prefix + "." + std::to_string(i), out);
    }
  } else {
    out += prefix + ",";
    if (j.is_number()) {
      out += format_number(j.get<double>());
    } else if (j.is_boolean()) {
      out += j.get<bool>() ? "true" : "false";
    } else if (j.is_null()) {
      out += "";
    } else {
      out += j.get<std::string>();
    }
    out += "\n";
  }
}

inline std::string render(const json& j, Format f) {
  if (f == Format::json) return dump(j);
  std::string out = "key,value\n";
  flatten(j, "", out);
  return out;
}

// ---------------------------------------------------------------- classify

inline json classify_report(const ClassLabel& label, const U2Element& passive) {
  json r = io::to_json(label);
  r["two_mode_character"] = label.no_squeeze ? json(nullptr) : json(two_mode_character(label));
  r["invariants"] = io::to_json(InvariantPair{label.a * label.a * label.b * label.b,
                                              label.a * label.a + label.b * label.b});
  r["passive_factor"] = io::to_json<2, 2>(passive);
  return r;
}

/// Input: {"matrix": [[4x4]]} or {"k": [3], "l": [3]}.
inline json cmd_classify(const json& in, const Options& opt) {
  if (!in.is_object()) throw io::SchemaError("classify: expected a JSON object");
  const bool has_matrix = in.contains("matrix");
  const bool has_vectors = in.contains("k") || in.contains("l");
  if (has_matrix == has_vectors) {
    throw io::SchemaError("classify: give either 'matrix' or both 'k' and 'l'");
  }
  if (has_matrix) {
    const Mat4 s = io::read_matrix<4, 4>(in["matrix"], "matrix");
    const Classification c = classify_symplectic(s, opt.tol);
    json r = classify_report(c.label, c.passive);
    r["input"] = "matrix";
    return r;
  }
  const SqueezeVectors v = io::read_squeeze_vectors(in);
  const ClassLabel label = class_from_vectors(v);
  json r = classify_report(label, U2Element::Identity());
  r["input"] = "vectors";
  r["invariants"] = io::to_json(invariants(v));
  if (!v.is_zero()) {
    const CanonicalForm cf = canonicalize(v);
    r["canonical"] = {{"theta", cf.theta}, {"rotation", io::to_json<3, 3>(cf.rotation)}};
  }
  return r;
}

// ------------------------------------------------------------------- state

/// Input: {"kind": "coherent", "alpha1": z, "alpha2": z, "label": {a, b}} or
/// {"kind": "thermal", "beta": x, "label": {a, b}}. The label defaults to
/// (0, 0).
inline json cmd_state(const json& in, const Options&) {
  const json& kind_j = io::field(in, "kind");
  if (!kind_j.is_string()) throw io::SchemaError("state: 'kind' must be a string");
  const std::string kind = kind_j.get<std::string>();
  ClassLabel label;
  if (in.contains("label")) label = io::read_label(in["label"]);

  std::optional<GaussianState> st;
  if (kind == "coherent") {
    const Complex a1 = in.contains("alpha1") ? io::read_complex(in["alpha1"], "alpha1") : 0.0;
    const Complex a2 = in.contains("alpha2") ? io::read_complex(in["alpha2"], "alpha2") : 0.0;
    st = squeezed_coherent(a1, a2, label);
  } else if (kind == "thermal") {
    st = squeezed_thermal(io::number_field(in, "beta"), label);
  } else {
    throw io::SchemaError("state: 'kind' must be 'coherent' or 'thermal'");
  }
  return {{"state", io::to_json(*st)},
          {"label", io::to_json(label)},
          {"verdict", io::to_json(squeezing_verdict(st->variance))}};
}

// --------------------------------------------------------- scan-heterodyne

/// Input: a GaussianState object, or the output of `state` (which nests it
/// under "state"). Optional "samples" (default 64). The variance only has to
/// be symmetric positive definite; "physical" in the summary reports whether
/// it also satisfies the uncertainty relation.
inline Output cmd_scan_heterodyne(const json& in, const Options& opt) {
  if (!in.is_object()) throw io::SchemaError("scan-heterodyne: expected a JSON object");
  const json& sj = in.contains("state") ? in["state"] : in;
  const GaussianState st = io::read_state(sj, false);
  int samples = 64;
  if (in.contains("samples")) {
    const json& n = in["samples"];
    if (!n.is_number_integer()) throw io::SchemaError("'samples' must be an integer");
    samples = n.get<int>();
  }
  const HeterodyneScan scan = heterodyne_scan(st.variance, samples);
  const double ell = least_eigenvalue(st.variance);

  if (opt.format.value_or(Format::csv) == Format::json) {
    json rows = json::array();
    for (auto [psi, var] : scan.samples) rows.push_back({psi, var});
    return {dump({{"psi_min", scan.psi_min},
                  {"var_min", scan.var_min},
                  {"detects", scan.detects},
                  {"least_eigenvalue", ell},
                  {"physical", st.variance.physical()},
                  {"samples", rows}})};
  }
  std::string out = "psi,variance\n";
  for (auto [psi, var] : scan.samples) {
    out += format_number(psi) + "," + format_number(var) + "\n";
  }
  out += "# psi_min=" + format_number(scan.psi_min) +
         ",var_min=" + format_number(scan.var_min) +
         ",detects=" + (scan.detects ? "true" : "false") +
         ",least_eigenvalue=" + format_number(ell) +
         ",physical=" + (st.variance.physical() ? "true" : "false") + "\n";
  return {out};
}

// ------------------------------------------------------------------- synth

/// Input: {"unitary": {"re": [[2x2]], "im": [[2x2]]}, "target": "mz" |
/// "waveplates"}. The target may also come from the command line.
inline Output cmd_synth(const json& in, const Options& opt,
                        std::optional<std::string> target_override = {}) {
  const U2Element u = io::read_complex_matrix<2, 2>(io::field(in, "unitary"), "unitary");
  std::string target;
  if (target_override) {
    target = *target_override;
  } else {
    const json& t = io::field(in, "target");
    if (!t.is_string()) throw io::SchemaError("synth: 'target' must be a string");
    target = t.get<std::string>();
  }
  if (!is_unitary(u, 1e-8)) {
    throw InputError("synth: matrix is not unitary (residual " +
                     format_number(unitarity_residual(u)) + ")");
  }

  json r;
  double residual = 0.0;
  if (target == "mz") {
    const MachZehnderParams p = mz_synthesize(u, 1e-8);
    residual = max_abs(mz_forward(p) - u);
    r = io::to_json(p);
  } else if (target == "waveplates") {
    const WaveplateSynthesis w = waveplate_synthesize(u, false, 1e-8);
    residual = max_abs(std::exp(Complex{0.0, w.global_phase}) *
                           waveplate_forward(w.params) - u);
    r = io::to_json(w);
  } else {
    throw io::SchemaError("synth: 'target' must be 'mz' or 'waveplates'");
  }
  r["target"] = target;
  r["residual"] = residual;
  const Format f = opt.format.value_or(Format::json);
  if (residual > synth_residual_limit) {
    return {render(r, f), exit_numerical};
  }
  return {render(r, f)};
}

// ------------------------------------------------------------------ octant

/// Input: {"a_max": x > 0, "steps": n in [1, 2000], "beta": optional x > 0}.
/// Rows cover the grid a = i h, b = j h with 0 <= j <= i <= n, h = a_max/n,
/// excluding the origin.
inline Output cmd_octant(const json& in, const Options& opt) {
  const double a_max = io::number_field(in, "a_max");
  const json& steps_j = io::field(in, "steps");
  if (!steps_j.is_number_integer()) throw io::SchemaError("'steps' must be an integer");
  const long steps = steps_j.get<long>();
  if (!(a_max > 0.0) || !std::isfinite(a_max)) throw io::SchemaError("'a_max' must be positive");
  if (steps < 1 || steps > 2000) throw io::SchemaError("'steps' must be in [1, 2000]");
  std::optional<double> beta;
  if (in.contains("beta") && !in["beta"].is_null()) {
    beta = io::number(in["beta"], "beta");
    if (!(*beta > 0.0)) throw io::SchemaError("'beta' must be positive");
  }

  const double h = a_max / static_cast<double>(steps);
  const Format f = opt.format.value_or(Format::csv);
  std::string out;
  json rows = json::array();
  if (f == Format::csv) out = "a,b,two_mode_character,squeezed_thermal,boundary\n";
  for (long i = 1; i <= steps; ++i) {
    for (long j = 0; j <= i; ++j) {
      const ClassLabel c = ClassLabel::make(i * h, j * h);
      const char* boundary = j == 0 ? "cs" : (j == i ? "single_mode" : "interior");
      std::optional<bool> sq;
      if (beta) sq = squeezing_verdict(squeezed_thermal(*beta, c).variance).squeezed;
      if (f == Format::csv) {
        out += format_number(c.a) + "," + format_number(c.b) + "," +
               format_number(two_mode_character(c)) + "," +
               (sq ? (*sq ? "true" : "false") : "") + "," + boundary + "\n";
      } else {
        rows.push_back({{"a", c.a},
                        {"b", c.b},
                        {"two_mode_character", two_mode_character(c)},
                        {"squeezed_thermal", sq ? json(*sq) : json(nullptr)},
                        {"boundary", boundary}});
      }
    }
  }
  if (f == Format::json) {
    json r = {{"rows", rows}};
    if (beta) r["threshold"] = thermal_squeeze_threshold(*beta);
    return {dump(r)};
  }
  if (beta) out += "# threshold=" + format_number(thermal_squeeze_threshold(*beta)) + "\n";
  return {out};
}

// ----------------------------------------------------------------- dispatch

/// Runs a subcommand on raw JSON text, mapping exceptions to exit codes.
/// On failure the text is the error message.
inline Output run(std::string_view command, std::string_view payload,
                  const Options& opt, std::optional<std::string> target = {}) {
  try {
    json in;
    try {
      in = json::parse(payload);
    } catch (const json::parse_error& e) {
      return failure(std::string("invalid JSON input: ") + e.what(), exit_input);
    }
    if (command == "classify") return {render(cmd_classify(in, opt), opt.format.value_or(Format::json))};
    if (command == "state") return {render(cmd_state(in, opt), opt.format.value_or(Format::json))};
    if (command == "scan-heterodyne") return cmd_scan_heterodyne(in, opt);
    if (command == "synth") return cmd_synth(in, opt, target);
    if (command == "octant") return cmd_octant(in, opt);
    return failure("unknown command '" + std::string(command) + "'", exit_input);
  } catch (const NumericalError& e) {
    return failure(e.what(), exit_numerical);
  } catch (const InputError& e) {
    return failure(e.what(), exit_input);
  } catch (const json::exception& e) {
    return failure(std::string("schema error: ") + e.what(), exit_input);
  }
}

}  // namespace sp4::cli
