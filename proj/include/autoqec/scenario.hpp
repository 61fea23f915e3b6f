// Copyright 2026 The autoqec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "autoqec/core.hpp"
#include "autoqec/noise.hpp"

namespace autoqec {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

// Configuration problem, reported with the JSON path of the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One term of a codeword or probe superposition: coeff * |state>, with the
// state written as a product label over {0, 1, +, -}.
struct StateTerm {
  Complex coeff{1.0, 0.0};
  std::string state;
};

// One term of a custom Hamiltonian: coeff * (Pauli string).
struct PauliTerm {
  double coeff = 0.0;
  std::string pauli;
};

// A fully described experiment: Hamiltonian family, noise model, code
// source, correction orders, rates, and probe.  Everything here is symbolic
// and serializable; `build_*` helpers below materialize operators.
struct Scenario {
  std::string name;
  int n_qubits = 0;        // sensing qubits (noise support)
  int ancilla_qubits = 0;  // trailing noiseless qubits

  std::string hamiltonian_kind;    // "sum-z" | "product-z" | "custom"
  std::vector<PauliTerm> hamiltonian_terms;  // for "custom"

  std::string noise_kind;  // "local-dephasing" | "local-bitflip" |
                           // "correlated-dephasing" | "lindblad-list"
  RealMatrix correlation;  // for "correlated-dephasing"
  std::vector<std::string> lindblad_paulis;  // for "lindblad-list"

  std::string code_mode;  // "search" | "explicit"
  std::vector<std::vector<StateTerm>> codewords;  // two entries when explicit

  std::vector<int> orders;   // correction orders c to run
  double w = 1.0;
  double kappa = 0.0;
  std::vector<double> r_list;
  double t_max = 5.0;

  std::string probe_kind;  // "code-plus" | "explicit"
  std::vector<StateTerm> probe_terms;

  std::vector<std::string> notes;  // documented divergences and caveats

  int total_qubits() const { return n_qubits + ancilla_qubits; }
  Eigen::Index dim() const { return Eigen::Index{1} << total_qubits(); }
};

namespace detail {

inline std::string pad_label(const std::string& label, const Scenario& s, const std::string& field) {
  if (static_cast<int>(label.size()) == s.total_qubits()) return label;
  if (static_cast<int>(label.size()) == s.n_qubits)
    return label + std::string(static_cast<size_t>(s.ancilla_qubits), 'I');
  throw ConfigError(field + ": label '" + label + "' must cover " + std::to_string(s.n_qubits) +
                    " or " + std::to_string(s.total_qubits()) + " qubits");
}

inline Ket resolve_terms(const std::vector<StateTerm>& terms, const Scenario& s,
                         const std::string& field) {
  if (terms.empty()) throw ConfigError(field + ": empty superposition");
  Ket v = Ket::Zero(s.dim());
  for (const auto& term : terms) {
    if (static_cast<int>(term.state.size()) != s.total_qubits())
      throw ConfigError(field + ": state label '" + term.state + "' must cover " +
                        std::to_string(s.total_qubits()) + " qubits");
    v += term.coeff * product_state(term.state);
  }
  return v;
}

}  // namespace detail

inline Operator build_hamiltonian(const Scenario& s) {
  const int total = s.total_qubits();
  if (s.hamiltonian_kind == "sum-z") {
    Operator h = Operator::Zero(s.dim(), s.dim());
    for (int i = 1; i <= s.n_qubits; ++i) h += pauli_on('Z', i, total);
    return h;
  }
  if (s.hamiltonian_kind == "product-z") {
    std::string labels(static_cast<size_t>(s.n_qubits), 'Z');
    return pauli_string(detail::pad_label(labels, s, "hamiltonian"));
  }
  if (s.hamiltonian_kind == "custom") {
    if (s.hamiltonian_terms.empty()) throw ConfigError("hamiltonian.terms: empty custom Hamiltonian");
    Operator h = Operator::Zero(s.dim(), s.dim());
    for (const auto& term : s.hamiltonian_terms)
      h += term.coeff * pauli_string(detail::pad_label(term.pauli, s, "hamiltonian.terms"));
    return h;
  }
  throw ConfigError("hamiltonian.kind: unknown kind '" + s.hamiltonian_kind + "'");
}

inline NoiseModel build_noise(const Scenario& s) {
  if (s.noise_kind == "local-dephasing") return local_dephasing(s.n_qubits, s.kappa, s.total_qubits());
  if (s.noise_kind == "local-bitflip") return local_bitflip(s.n_qubits, s.kappa, s.total_qubits());
  if (s.noise_kind == "correlated-dephasing") {
    if (s.correlation.rows() != s.n_qubits || s.correlation.cols() != s.n_qubits)
      throw ConfigError("noise.correlation: expected a " + std::to_string(s.n_qubits) + "x" +
                        std::to_string(s.n_qubits) + " matrix");
    return correlated_dephasing(s.correlation, s.kappa, s.total_qubits());
  }
  if (s.noise_kind == "lindblad-list") {
    if (s.lindblad_paulis.empty()) throw ConfigError("noise.paulis: empty Lindblad list");
    std::vector<Operator> ops;
    for (const auto& label : s.lindblad_paulis)
      ops.push_back(pauli_string(detail::pad_label(label, s, "noise.paulis")));
    NoiseModel m = lindblad_list(std::move(ops), s.kappa);
    m.n_qubits = s.total_qubits();
    m.kind = "lindblad-list";
    return m;
  }
  throw ConfigError("noise.kind: unknown kind '" + s.noise_kind + "'");
}

// Resolves explicit codewords to kets; validates normalization and
// orthogonality.  Only valid when code_mode == "explicit".
inline std::pair<Ket, Ket> build_codewords(const Scenario& s) {
  if (s.code_mode != "explicit")
    throw std::logic_error("build_codewords: scenario uses code search");
  if (s.codewords.size() != 2) throw ConfigError("code.codewords: exactly two codewords required");
  Ket mu0 = detail::resolve_terms(s.codewords[0], s, "code.codewords[0]");
  Ket mu1 = detail::resolve_terms(s.codewords[1], s, "code.codewords[1]");
  if (std::abs(mu0.norm() - 1.0) > 1e-9 || std::abs(mu1.norm() - 1.0) > 1e-9)
    throw ConfigError("code.codewords: codewords must be normalized");
  if (std::abs(mu0.dot(mu1)) > 1e-9) throw ConfigError("code.codewords: codewords must be orthogonal");
  return {mu0, mu1};
}

// The initial probe state given the (searched or explicit) codewords.
inline Ket build_probe(const Scenario& s, const Ket& mu0, const Ket& mu1) {
  if (s.probe_kind == "code-plus") return Ket(((mu0 + mu1) / std::sqrt(2.0)).eval());
  if (s.probe_kind == "explicit") {
    Ket psi = detail::resolve_terms(s.probe_terms, s, "probe.state");
    if (std::abs(psi.norm() - 1.0) > 1e-9) throw ConfigError("probe.state: probe must be normalized");
    return psi;
  }
  throw ConfigError("probe.kind: unknown kind '" + s.probe_kind + "'");
}

// ---------------------------------------------------------------------------
// JSON (de)serialization
// ---------------------------------------------------------------------------

namespace detail {

inline Json terms_to_json(const std::vector<StateTerm>& terms) {
  Json arr = Json::array();
  for (const auto& t : terms)
    arr.push_back(Json{{"coeff", {t.coeff.real(), t.coeff.imag()}}, {"state", t.state}});
  return arr;
}

inline std::vector<StateTerm> terms_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw ConfigError(field + ": expected a non-empty array of terms");
  std::vector<StateTerm> out;
  for (size_t k = 0; k < j.size(); ++k) {
    const Json& t = j[k];
    const std::string at = field + "[" + std::to_string(k) + "]";
    StateTerm term;
    if (t.is_string()) {
      term.state = t.get<std::string>();
    } else if (t.is_object()) {
      if (!t.contains("state") || !t["state"].is_string())
        throw ConfigError(at + ".state: expected a product-state label");
      term.state = t["state"].get<std::string>();
      if (t.contains("coeff")) {
        const Json& c = t["coeff"];
        if (c.is_number())
          term.coeff = Complex(c.get<double>(), 0.0);
        else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number())
          term.coeff = Complex(c[0].get<double>(), c[1].get<double>());
        else
          throw ConfigError(at + ".coeff: expected a number or [re, im]");
      }
    } else {
      throw ConfigError(at + ": expected a string label or {coeff, state} object");
    }
    out.push_back(std::move(term));
  }
  return out;
}

template <typename T>
inline T require(const Json& j, const std::string& key, const char* type_name) {
  if (!j.contains(key)) throw ConfigError(key + ": required field is missing");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ConfigError(key + ": expected " + std::string(type_name));
  }
}

inline std::vector<double> number_or_list(const Json& j, const std::string& key) {
  const Json& v = j.at(key);
  std::vector<double> out;
  if (v.is_number()) {
    out.push_back(v.get<double>());
  } else if (v.is_array()) {
    for (const auto& e : v) {
      if (!e.is_number()) throw ConfigError(key + ": expected numbers");
      out.push_back(e.get<double>());
    }
  } else {
    throw ConfigError(key + ": expected a number or a list of numbers");
  }
  if (out.empty()) throw ConfigError(key + ": list must be non-empty");
  return out;
}

}  // namespace detail

inline Json to_json(const Scenario& s) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["name"] = s.name;
  j["n_qubits"] = s.n_qubits;
  j["ancilla_qubits"] = s.ancilla_qubits;

  Json h;
  h["kind"] = s.hamiltonian_kind;
  if (s.hamiltonian_kind == "custom") {
    Json terms = Json::array();
    for (const auto& t : s.hamiltonian_terms)
      terms.push_back(Json{{"coeff", t.coeff}, {"pauli", t.pauli}});
    h["terms"] = terms;
  }
  j["hamiltonian"] = h;

  Json noise;
  noise["kind"] = s.noise_kind;
  if (s.noise_kind == "correlated-dephasing") {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < s.correlation.rows(); ++r)
      for (Eigen::Index c = 0; c < s.correlation.cols(); ++c) rows.push_back(s.correlation(r, c));
    noise["correlation"] = rows;  // row-major
  }
  if (s.noise_kind == "lindblad-list") noise["paulis"] = s.lindblad_paulis;
  j["noise"] = noise;

  Json code;
  code["mode"] = s.code_mode;
  if (s.code_mode == "explicit") {
    Json words = Json::array();
    for (const auto& cw : s.codewords) words.push_back(detail::terms_to_json(cw));
    code["codewords"] = words;
  }
  j["code"] = code;

  j["c"] = s.orders;
  j["w"] = s.w;
  j["kappa"] = s.kappa;
  j["R"] = s.r_list;
  j["T"] = s.t_max;

  Json probe;
  probe["kind"] = s.probe_kind;
  if (s.probe_kind == "explicit") probe["state"] = detail::terms_to_json(s.probe_terms);
  j["probe"] = probe;

  j["notes"] = s.notes;
  return j;
}

// Parses and validates a scenario, applying documented defaults:
// ancilla_qubits = 0, code = search, c = 1, T = 5, probe = code-plus.
inline Scenario scenario_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  Scenario s;
  s.name = detail::require<std::string>(j, "name", "a string");
  s.n_qubits = detail::require<int>(j, "n_qubits", "an integer");
  if (s.n_qubits < 1 || s.n_qubits > kMaxQubits)
    throw ConfigError("n_qubits: must be between 1 and " + std::to_string(kMaxQubits));
  if (j.contains("ancilla_qubits")) {
    s.ancilla_qubits = detail::require<int>(j, "ancilla_qubits", "an integer");
    if (s.ancilla_qubits < 0) throw ConfigError("ancilla_qubits: must be >= 0");
  }
  if (s.total_qubits() > kMaxQubits)
    throw ConfigError("n_qubits: total register exceeds " + std::to_string(kMaxQubits) + " qubits");

  if (!j.contains("hamiltonian")) throw ConfigError("hamiltonian: required field is missing");
  const Json& h = j.at("hamiltonian");
  if (h.is_string()) {
    s.hamiltonian_kind = h.get<std::string>();
  } else if (h.is_object()) {
    s.hamiltonian_kind = detail::require<std::string>(h, "kind", "a string");
    if (s.hamiltonian_kind == "custom") {
      if (!h.contains("terms") || !h.at("terms").is_array() || h.at("terms").empty())
        throw ConfigError("hamiltonian.terms: expected a non-empty array");
      for (size_t k = 0; k < h.at("terms").size(); ++k) {
        const Json& t = h.at("terms")[k];
        const std::string at = "hamiltonian.terms[" + std::to_string(k) + "]";
        if (!t.is_object() || !t.contains("coeff") || !t.contains("pauli") ||
            !t["coeff"].is_number() || !t["pauli"].is_string())
          throw ConfigError(at + ": expected {coeff: number, pauli: string}");
        s.hamiltonian_terms.push_back({t["coeff"].get<double>(), t["pauli"].get<std::string>()});
      }
    }
  } else {
    throw ConfigError("hamiltonian: expected a string or an object");
  }
  if (s.hamiltonian_kind != "sum-z" && s.hamiltonian_kind != "product-z" &&
      s.hamiltonian_kind != "custom")
    throw ConfigError("hamiltonian.kind: unknown kind '" + s.hamiltonian_kind + "'");

  if (!j.contains("noise")) throw ConfigError("noise: required field is missing");
  const Json& noise = j.at("noise");
  if (noise.is_string()) {
    s.noise_kind = noise.get<std::string>();
  } else if (noise.is_object()) {
    s.noise_kind = detail::require<std::string>(noise, "kind", "a string");
    if (s.noise_kind == "correlated-dephasing") {
      if (!noise.contains("correlation") || !noise.at("correlation").is_array())
        throw ConfigError("noise.correlation: expected a row-major array of numbers");
      const Json& rows = noise.at("correlation");
      const size_t expected = static_cast<size_t>(s.n_qubits) * static_cast<size_t>(s.n_qubits);
      if (rows.size() != expected)
        throw ConfigError("noise.correlation: expected " + std::to_string(expected) +
                          " entries for " + std::to_string(s.n_qubits) + " qubits, got " +
                          std::to_string(rows.size()));
      s.correlation.resize(s.n_qubits, s.n_qubits);
      for (int r = 0; r < s.n_qubits; ++r)
        for (int c = 0; c < s.n_qubits; ++c) {
          const Json& e = rows[static_cast<size_t>(r * s.n_qubits + c)];
          if (!e.is_number()) throw ConfigError("noise.correlation: expected numbers");
          s.correlation(r, c) = e.get<double>();
        }
    }
    if (s.noise_kind == "lindblad-list") {
      if (!noise.contains("paulis") || !noise.at("paulis").is_array() || noise.at("paulis").empty())
        throw ConfigError("noise.paulis: expected a non-empty array of Pauli strings");
      for (const auto& p : noise.at("paulis")) {
        if (!p.is_string()) throw ConfigError("noise.paulis: expected strings");
        s.lindblad_paulis.push_back(p.get<std::string>());
      }
    }
  } else {
    throw ConfigError("noise: expected a string or an object");
  }
  if (s.noise_kind != "local-dephasing" && s.noise_kind != "local-bitflip" &&
      s.noise_kind != "correlated-dephasing" && s.noise_kind != "lindblad-list")
    throw ConfigError("noise.kind: unknown kind '" + s.noise_kind + "'");
  if (s.noise_kind == "correlated-dephasing" && s.correlation.size() == 0)
    throw ConfigError("noise.correlation: required for correlated-dephasing");

  s.code_mode = "search";
  if (j.contains("code")) {
    const Json& code = j.at("code");
    if (code.is_string()) {
      s.code_mode = code.get<std::string>();
    } else if (code.is_object()) {
      s.code_mode = detail::require<std::string>(code, "mode", "a string");
      if (s.code_mode == "explicit") {
        if (!code.contains("codewords") || !code.at("codewords").is_array() ||
            code.at("codewords").size() != 2)
          throw ConfigError("code.codewords: expected exactly two codewords");
        for (size_t k = 0; k < 2; ++k)
          s.codewords.push_back(detail::terms_from_json(
              code.at("codewords")[k], "code.codewords[" + std::to_string(k) + "]"));
      }
    } else {
      throw ConfigError("code: expected a string or an object");
    }
  }
  if (s.code_mode != "search" && s.code_mode != "explicit")
    throw ConfigError("code.mode: unknown mode '" + s.code_mode + "'");
  if (s.code_mode == "explicit" && s.codewords.size() != 2)
    throw ConfigError("code.codewords: explicit mode requires two codewords");

  if (j.contains("c")) {
    for (double c : detail::number_or_list(j, "c")) {
      const int ci = static_cast<int>(c);
      if (ci < 1 || static_cast<double>(ci) != c) throw ConfigError("c: orders must be integers >= 1");
      s.orders.push_back(ci);
    }
  } else {
    s.orders = {1};
  }

  s.w = detail::require<double>(j, "w", "a number");
  s.kappa = detail::require<double>(j, "kappa", "a number");
  if (s.kappa < 0.0) throw ConfigError("kappa: must be >= 0");
  if (!j.contains("R")) throw ConfigError("R: required field is missing");
  s.r_list = detail::number_or_list(j, "R");
  for (double r : s.r_list)
    if (r < 0.0) throw ConfigError("R: rate ratios must be >= 0");

  if (j.contains("T")) {
    s.t_max = detail::require<double>(j, "T", "a number");
    if (s.t_max <= 0.0) throw ConfigError("T: must be positive");
  }

  s.probe_kind = "code-plus";
  if (j.contains("probe")) {
    const Json& probe = j.at("probe");
    if (probe.is_string()) {
      s.probe_kind = probe.get<std::string>();
    } else if (probe.is_object()) {
      s.probe_kind = detail::require<std::string>(probe, "kind", "a string");
      if (s.probe_kind == "explicit")
        s.probe_terms = detail::terms_from_json(probe.at("state"), "probe.state");
    } else {
      throw ConfigError("probe: expected a string or an object");
    }
  }
  if (s.probe_kind != "code-plus" && s.probe_kind != "explicit")
    throw ConfigError("probe.kind: unknown kind '" + s.probe_kind + "'");
  if (s.probe_kind == "explicit" && s.probe_terms.empty())
    throw ConfigError("probe.state: required for explicit probe");

  if (j.contains("notes")) {
    if (!j.at("notes").is_array()) throw ConfigError("notes: expected an array of strings");
    for (const auto& n : j.at("notes")) {
      if (!n.is_string()) throw ConfigError("notes: expected strings");
      s.notes.push_back(n.get<std::string>());
    }
  }
  return s;
}

inline Scenario load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw ConfigError("config: JSON parse error in '" + path + "': " + e.what());
  }
  return scenario_from_json(j);
}

// ---------------------------------------------------------------------------
// Preset registry
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<StateTerm> plus_minus_superposition(int n, double sign) {
  const double amp = 1.0 / std::sqrt(2.0);
  return {{Complex(amp, 0.0), std::string(static_cast<size_t>(n), '+')},
          {Complex(sign * amp, 0.0), std::string(static_cast<size_t>(n), '-')}};
}

}  // namespace detail

inline std::vector<std::string> preset_names() {
  return {"fig2-correlated-dephasing", "fig3-repetition",     "sm-s3b-p1-violated",
          "sm-s3b-p2-violated",        "sm-s3a-hnls-ok",      "sm-s3a-hnls-violated",
          "sm-s4a-infeasible",         "sm-s3b-sufficient"};
}

inline Scenario preset(const std::string& name) {
  Scenario s;
  s.name = name;
  s.w = 1.0;
  s.kappa = 0.1;
  s.probe_kind = "code-plus";

  if (name == "fig2-correlated-dephasing") {
    s.n_qubits = 3;
    s.hamiltonian_kind = "sum-z";
    s.noise_kind = "correlated-dephasing";
    s.correlation.resize(3, 3);
    s.correlation << 1.6, -0.4, -0.4, -0.4, 0.7, -0.5, -0.4, -0.5, 0.7;
    s.code_mode = "search";
    s.orders = {1};
    s.r_list = {100.0, 200.0, 400.0};
    s.t_max = 5.0;
    s.notes = {"no canonical time horizon for this scenario; T = 5 chosen as default"};
    return s;
  }
  if (name == "fig3-repetition") {
    s.n_qubits = 5;
    s.hamiltonian_kind = "product-z";
    s.noise_kind = "local-dephasing";
    s.code_mode = "explicit";
    s.codewords = {detail::plus_minus_superposition(5, 1.0),
                   detail::plus_minus_superposition(5, -1.0)};
    s.orders = {1, 2};
    s.r_list = {100.0};
    s.t_max = 5.0;
    s.notes = {"no canonical time horizon for this scenario; T = 5 chosen as default"};
    return s;
  }
  if (name == "sm-s3b-sufficient") {
    s.n_qubits = 3;
    s.hamiltonian_kind = "product-z";
    s.noise_kind = "local-dephasing";
    s.code_mode = "explicit";
    s.codewords = {detail::plus_minus_superposition(3, 1.0),
                   detail::plus_minus_superposition(3, -1.0)};
    s.orders = {1};
    s.r_list = {100.0, 200.0, 400.0};
    s.t_max = 5.0;
    return s;
  }
  if (name == "sm-s3b-p1-violated") {
    s.n_qubits = 3;
    s.hamiltonian_kind = "product-z";
    s.noise_kind = "local-bitflip";
    s.code_mode = "explicit";
    s.codewords = {{{Complex(1.0, 0.0), "000"}}, {{Complex(1.0, 0.0), "111"}}};
    s.orders = {1};
    s.r_list = {100.0, 200.0, 400.0};
    s.t_max = 5.0;
    return s;
  }
  if (name == "sm-s3b-p2-violated") {
    s.n_qubits = 3;
    s.hamiltonian_kind = "custom";
    s.hamiltonian_terms = {{0.5, "ZZZ"}, {0.5, "ZII"}, {0.5, "IZI"}, {0.5, "IIZ"}};
    s.noise_kind = "local-dephasing";
    s.code_mode = "explicit";
    s.codewords = {detail::plus_minus_superposition(3, 1.0),
                   detail::plus_minus_superposition(3, -1.0)};
    s.orders = {1};
    s.r_list = {100.0, 200.0, 400.0};
    s.t_max = 5.0;
    return s;
  }
  if (name == "sm-s3a-hnls-ok") {
    s.n_qubits = 1;
    s.ancilla_qubits = 1;
    s.hamiltonian_kind = "custom";
    s.hamiltonian_terms = {{1.0, "Z"}};
    s.noise_kind = "local-bitflip";
    s.code_mode = "explicit";
    s.codewords = {{{Complex(1.0, 0.0), "00"}}, {{Complex(1.0, 0.0), "11"}}};
    s.orders = {1};
    s.r_list = {1e4};
    s.t_max = 2.0;
    s.notes = {"T capped at 2: R*kappa = 1e3 forces dt ~ 2e-5, full T = 5 is disproportionate"};
    return s;
  }
  if (name == "sm-s3a-hnls-violated") {
    s.n_qubits = 1;
    s.ancilla_qubits = 1;
    s.hamiltonian_kind = "custom";
    s.hamiltonian_terms = {{1.0, "Z"}};
    s.noise_kind = "local-dephasing";
    s.code_mode = "explicit";
    s.codewords = {{{Complex(1.0, 0.0), "++"}}, {{Complex(1.0, 0.0), "--"}}};
    s.orders = {1};
    s.r_list = {1e4};
    s.t_max = 2.0;
    s.notes = {"T capped at 2: R*kappa = 1e3 forces dt ~ 2e-5, full T = 5 is disproportionate"};
    return s;
  }
  if (name == "sm-s4a-infeasible") {
    s.n_qubits = 3;
    s.hamiltonian_kind = "sum-z";
    s.noise_kind = "correlated-dephasing";
    s.correlation.resize(3, 3);
    s.correlation << 8, 6, 4, 6, 6, 6, 4, 6, 8;
    s.code_mode = "search";
    s.orders = {1};
    s.r_list = {100.0};
    s.t_max = 5.0;
    s.notes = {"code search is expected to fail on every eigenvalue pair"};
    return s;
  }
  throw ConfigError("preset: unknown preset name '" + name + "'");
}

}  // namespace autoqec
