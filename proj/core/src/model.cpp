// Copyright 2026 The Vibronic Authors
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

#include "vibronic/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace vibronic {

namespace {

using json = nlohmann::json;

// D2h irreps as parities under the three C2 axes; the direct product is XOR.
constexpr std::array<unsigned, 8> kParity = {
    0b000,  // Ag
    0b110,  // B1g ~ xy
    0b101,  // B2g ~ xz
    0b011,  // B3g ~ yz
    0b111,  // Au  ~ xyz
    0b001,  // B1u ~ z
    0b010,  // B2u ~ y
    0b100,  // B3u ~ x
};

constexpr std::array<std::string_view, 8> kSymmetryNames = {"Ag",  "B1g", "B2g", "B3g",
                                                            "Au",  "B1u", "B2u", "B3u"};

std::string mode_name(const std::vector<ModeParams>& modes, std::size_t k) {
  return k < modes.size() ? modes[k].label : std::to_string(k);
}

}  // namespace

std::string_view to_string(Symmetry s) { return kSymmetryNames[static_cast<std::size_t>(s)]; }

Symmetry parse_symmetry(std::string_view text) {
  for (std::size_t i = 0; i < kSymmetryNames.size(); ++i) {
    if (kSymmetryNames[i] == text) return static_cast<Symmetry>(i);
  }
  throw ModelError("unknown symmetry label '" + std::string(text) + "'");
}

Symmetry product(Symmetry a, Symmetry b) {
  const unsigned p = kParity[static_cast<std::size_t>(a)] ^ kParity[static_cast<std::size_t>(b)];
  for (std::size_t i = 0; i < kParity.size(); ++i) {
    if (kParity[i] == p) return static_cast<Symmetry>(i);
  }
  throw std::logic_error("D2h product table incomplete");
}

VibronicModel::VibronicModel(std::string name, std::vector<ModeParams> modes, double lambda,
                             double delta, std::vector<BilinearDiagTerm> bilinear_diag,
                             std::vector<BilinearOffTerm> bilinear_off)
    : name_(std::move(name)),
      modes_(std::move(modes)),
      lambda_(lambda),
      delta_(delta),
      bilinear_diag_(std::move(bilinear_diag)),
      bilinear_off_(std::move(bilinear_off)) {
  if (modes_.empty()) throw ModelError("model has no modes");
  if (!std::isfinite(lambda_) || !std::isfinite(delta_)) {
    throw ModelError("lambda and delta must be finite");
  }
  for (std::size_t k = 0; k < modes_.size(); ++k) {
    const auto& m = modes_[k];
    if (m.label.empty()) throw ModelError("mode " + std::to_string(k) + " has no label");
    if (!(m.omega > 0.0) || !std::isfinite(m.omega)) {
      throw ModelError("mode '" + m.label + "' needs omega > 0");
    }
    if (m.kappa1.has_value() != m.kappa2.has_value()) {
      throw ModelError("mode '" + m.label + "' must give both kappa1 and kappa2 or neither");
    }
    if (m.is_tuning() && m.symmetry != Symmetry::Ag) {
      throw ModelError("mode '" + m.label + "' has linear couplings but symmetry " +
                       std::string(to_string(m.symmetry)) + " (tuning modes are Ag)");
    }
    if (!m.is_tuning() && m.symmetry == Symmetry::Ag) {
      throw ModelError("Ag mode '" + m.label + "' is missing kappa1/kappa2");
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (modes_[j].label == m.label) throw ModelError("duplicate mode label '" + m.label + "'");
    }
    if (m.symmetry == Symmetry::B1g) {
      if (coupling_mode_) throw ModelError("more than one B1g coupling mode");
      coupling_mode_ = k;
    }
  }
  if (lambda_ != 0.0 && !coupling_mode_) {
    throw ModelError("lambda is nonzero but no B1g coupling mode is present");
  }

  auto check_pair = [&](std::size_t l, std::size_t m, std::string_view kind) {
    if (l >= modes_.size() || m >= modes_.size()) {
      throw ModelError(std::string(kind) + " term references a mode index out of range");
    }
    if (l == m) {
      throw ModelError(std::string(kind) + " term pairs mode '" + modes_[l].label +
                       "' with itself");
    }
  };
  for (const auto& t : bilinear_diag_) {
    check_pair(t.l, t.m, "bilinear_diag");
    if (modes_[t.l].symmetry != modes_[t.m].symmetry) {
      throw ModelError("bilinear_diag pair (" + mode_name(modes_, t.l) + ", " +
                       mode_name(modes_, t.m) + ") has mismatched symmetries " +
                       std::string(to_string(modes_[t.l].symmetry)) + " x " +
                       std::string(to_string(modes_[t.m].symmetry)));
    }
  }
  for (const auto& t : bilinear_off_) {
    check_pair(t.l, t.m, "bilinear_off");
    const Symmetry p = product(modes_[t.l].symmetry, modes_[t.m].symmetry);
    if (p != Symmetry::B1g) {
      throw ModelError("bilinear_off pair (" + mode_name(modes_, t.l) + ", " +
                       mode_name(modes_, t.m) + ") has product symmetry " +
                       std::string(to_string(p)) + ", expected B1g");
    }
  }
}

std::optional<std::size_t> VibronicModel::find_mode(std::string_view label) const {
  for (std::size_t k = 0; k < modes_.size(); ++k) {
    if (modes_[k].label == label) return k;
  }
  return std::nullopt;
}

double VibronicModel::potential(Branch branch, std::span<const double> q) const {
  double v = branch == Branch::S1 ? -delta_ : delta_;
  for (std::size_t k = 0; k < modes_.size(); ++k) {
    const auto& m = modes_[k];
    v += 0.5 * m.omega * q[k] * q[k];
    if (m.is_tuning()) v += (branch == Branch::S1 ? *m.kappa1 : *m.kappa2) * q[k];
  }
  for (const auto& t : bilinear_diag_) {
    v += (branch == Branch::S1 ? t.gamma1 : t.gamma2) * q[t.l] * q[t.m];
  }
  return v;
}

double VibronicModel::coupling(std::span<const double> q) const {
  double v = coupling_mode_ ? lambda_ * q[*coupling_mode_] : 0.0;
  for (const auto& t : bilinear_off_) v += t.mu * q[t.l] * q[t.m];
  return v;
}

double VibronicModel::harmonic_potential(std::span<const double> q) const {
  double v = 0.0;
  for (std::size_t k = 0; k < modes_.size(); ++k) v += 0.5 * modes_[k].omega * q[k] * q[k];
  return v;
}

double VibronicModel::harmonic_zpe() const {
  double e = 0.0;
  for (const auto& m : modes_) e += 0.5 * m.omega;
  return e;
}

VibronicModel VibronicModel::subset(std::span<const std::string> labels) const {
  std::vector<ModeParams> kept;
  std::vector<std::optional<std::size_t>> remap(modes_.size());
  for (const auto& label : labels) {
    auto k = find_mode(label);
    if (!k) throw ModelError("no mode labelled '" + label + "' in model " + name_);
    if (remap[*k]) throw ModelError("mode '" + label + "' selected twice");
    remap[*k] = kept.size();
    kept.push_back(modes_[*k]);
  }
  std::vector<BilinearDiagTerm> diag;
  for (const auto& t : bilinear_diag_) {
    if (remap[t.l] && remap[t.m]) diag.push_back({*remap[t.l], *remap[t.m], t.gamma1, t.gamma2});
  }
  std::vector<BilinearOffTerm> off;
  for (const auto& t : bilinear_off_) {
    if (remap[t.l] && remap[t.m]) off.push_back({*remap[t.l], *remap[t.m], t.mu});
  }
  const bool keeps_coupling = coupling_mode_ && remap[*coupling_mode_];
  return VibronicModel(name_ + "-subset", std::move(kept), keeps_coupling ? lambda_ : 0.0, delta_,
                       std::move(diag), std::move(off));
}

VibronicModel VibronicModel::uncoupled() const {
  auto modes = modes_;
  for (auto& m : modes) {
    if (m.is_tuning()) {
      m.kappa1 = 0.0;
      m.kappa2 = 0.0;
    }
  }
  return VibronicModel(name_ + "-uncoupled", std::move(modes), 0.0, delta_);
}

// ---------------------------------------------------------------------------
// JSON

namespace {

double require_number(const json& obj, const char* key, std::string_view where) {
  if (!obj.contains(key)) {
    throw ModelError(std::string(where) + ": missing required field '" + key + "'");
  }
  const auto& v = obj.at(key);
  if (!v.is_number()) {
    throw ModelError(std::string(where) + ": field '" + key + "' must be a number");
  }
  return v.get<double>();
}

std::size_t mode_ref(const json& v, const std::vector<ModeParams>& modes, std::string_view where) {
  if (v.is_number_integer()) {
    const auto i = v.get<long long>();
    if (i < 0 || static_cast<std::size_t>(i) >= modes.size()) {
      throw ModelError(std::string(where) + ": mode index " + std::to_string(i) + " out of range");
    }
    return static_cast<std::size_t>(i);
  }
  if (v.is_string()) {
    const auto label = v.get<std::string>();
    for (std::size_t k = 0; k < modes.size(); ++k) {
      if (modes[k].label == label) return k;
    }
    throw ModelError(std::string(where) + ": unknown mode '" + label + "'");
  }
  throw ModelError(std::string(where) + ": mode reference must be a label or index");
}

}  // namespace

VibronicModel load_model(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end(), nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ModelError(std::string("model config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ModelError("model config must be a JSON object");
  if (doc.contains("units") && doc.at("units") != "eV") {
    throw ModelError("only eV units are supported");
  }
  if (!doc.contains("modes") || !doc.at("modes").is_array()) {
    throw ModelError("model config needs a 'modes' array");
  }

  std::vector<ModeParams> modes;
  for (const auto& m : doc.at("modes")) {
    const std::string where = "mode " + std::to_string(modes.size());
    if (!m.is_object()) throw ModelError(where + ": expected an object");
    ModeParams p;
    if (!m.contains("label") || !m.at("label").is_string()) {
      throw ModelError(where + ": missing string field 'label'");
    }
    p.label = m.at("label").get<std::string>();
    p.omega = require_number(m, "omega", where);
    if (m.contains("kappa1")) p.kappa1 = require_number(m, "kappa1", where);
    if (m.contains("kappa2")) p.kappa2 = require_number(m, "kappa2", where);
    if (!m.contains("symmetry") || !m.at("symmetry").is_string()) {
      throw ModelError(where + ": missing string field 'symmetry'");
    }
    p.symmetry = parse_symmetry(m.at("symmetry").get<std::string>());
    modes.push_back(std::move(p));
  }

  std::vector<BilinearDiagTerm> diag;
  if (doc.contains("bilinear_diag")) {
    for (const auto& t : doc.at("bilinear_diag")) {
      const std::string where = "bilinear_diag " + std::to_string(diag.size());
      if (!t.contains("l") || !t.contains("m")) throw ModelError(where + ": needs 'l' and 'm'");
      diag.push_back({mode_ref(t.at("l"), modes, where), mode_ref(t.at("m"), modes, where),
                      require_number(t, "gamma1", where), require_number(t, "gamma2", where)});
    }
  }
  std::vector<BilinearOffTerm> off;
  if (doc.contains("bilinear_off")) {
    for (const auto& t : doc.at("bilinear_off")) {
      const std::string where = "bilinear_off " + std::to_string(off.size());
      if (!t.contains("l") || !t.contains("m")) throw ModelError(where + ": needs 'l' and 'm'");
      off.push_back({mode_ref(t.at("l"), modes, where), mode_ref(t.at("m"), modes, where),
                     require_number(t, "mu", where)});
    }
  }

  const std::string name = doc.contains("name") && doc.at("name").is_string()
                               ? doc.at("name").get<std::string>()
                               : std::string("custom");
  return VibronicModel(name, std::move(modes), require_number(doc, "lambda", "model"),
                       require_number(doc, "delta", "model"), std::move(diag), std::move(off));
}

std::string to_json(const VibronicModel& model) {
  json doc;
  doc["name"] = model.name();
  doc["units"] = "eV";
  doc["lambda"] = model.lambda();
  doc["delta"] = model.delta();
  json modes = json::array();
  for (const auto& m : model.modes()) {
    json j{{"label", m.label}, {"omega", m.omega}, {"symmetry", std::string(to_string(m.symmetry))}};
    if (m.kappa1) j["kappa1"] = *m.kappa1;
    if (m.kappa2) j["kappa2"] = *m.kappa2;
    modes.push_back(std::move(j));
  }
  doc["modes"] = std::move(modes);
  json diag = json::array();
  for (const auto& t : model.bilinear_diag()) {
    diag.push_back({{"l", model.mode(t.l).label},
                    {"m", model.mode(t.m).label},
                    {"gamma1", t.gamma1},
                    {"gamma2", t.gamma2}});
  }
  doc["bilinear_diag"] = std::move(diag);
  json off = json::array();
  for (const auto& t : model.bilinear_off()) {
    off.push_back({{"l", model.mode(t.l).label}, {"m", model.mode(t.m).label}, {"mu", t.mu}});
  }
  doc["bilinear_off"] = std::move(off);
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Presets

VibronicModel preset(std::string_view name) {
  if (name == "pyrazine-4d" || name == "4d") {
    std::vector<ModeParams> modes = {
        {"nu6a", 0.0740, -0.0964, 0.1194, Symmetry::Ag},
        {"nu1", 0.1273, 0.0470, 0.2012, Symmetry::Ag},
        {"nu9a", 0.1568, 0.1594, 0.0484, Symmetry::Ag},
        {"nu10a", 0.0936, std::nullopt, std::nullopt, Symmetry::B1g},
    };
    return VibronicModel("pyrazine-4d", std::move(modes), 0.1825, 0.4617);
  }
  if (name == "pyrazine-2d" || name == "2d") {
    const std::vector<std::string> keep = {"nu6a", "nu10a"};
    auto reduced = preset("pyrazine-4d").subset(keep);
    return VibronicModel("pyrazine-2d",
                         std::vector<ModeParams>(reduced.modes().begin(), reduced.modes().end()),
                         reduced.lambda(), reduced.delta());
  }
  if (name == "pyrazine-24d" || name == "24d") {
    return resolve_model(data_path("pyrazine-24d-template.json"));
  }
  throw ModelError("unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() { return {"pyrazine-4d", "pyrazine-2d", "pyrazine-24d"}; }

std::string data_path(std::string_view file) {
  if (const char* env = std::getenv("VIBRONIC_DATA_DIR")) {
    return (std::filesystem::path(env) / file).string();
  }
  return (std::filesystem::path(VIBRONIC_DATA_DIR) / file).string();
}

VibronicModel resolve_model(std::string_view name_or_path) {
  for (const auto& p : preset_names()) {
    if (p == name_or_path) return preset(name_or_path);
  }
  if (name_or_path == "4d" || name_or_path == "2d" || name_or_path == "24d") {
    return preset(name_or_path);
  }
  std::ifstream in{std::string(name_or_path)};
  if (!in) {
    throw ModelError("'" + std::string(name_or_path) + "' is neither a preset nor a readable file");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return load_model(buf.str());
}

}  // namespace vibronic
