// Copyright 2026 The cuspvol Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cuspvol/json_io.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "cuspvol/error.hpp"
#include "json_detail.hpp"

namespace cuspvol {

namespace detail {

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json volume_report_json(const VolumeReport& report) {
  Json per_tet = Json::array();
  for (const TetVolume& tv : report.per_tet) {
    Json entry;
    if (tv.modulus.is_degenerate())
      entry["modulus"] = "degenerate:" + std::string(to_string(tv.modulus.tag()));
    else
      entry["modulus"] = complex_json(tv.modulus.z());
    entry["volume"] = tv.volume;
    entry["flags"] = tv.flags;
    per_tet.push_back(std::move(entry));
  }
  Json out;
  out["total"] = report.total;
  out["per_tet"] = std::move(per_tet);
  out["bound_v3n"] = report.within_bound;
  out["policy"] = report.policy ? Json(*report.policy) : Json(nullptr);
  out["relator_residual"] =
      report.relator_residual ? Json(*report.relator_residual) : Json(nullptr);
  return out;
}

Json scan_result_json(const ScanResult& result) {
  Json solutions = Json::array();
  for (const ScanSolution& s : result.solutions) {
    Json shapes = Json::array();
    for (Complex z : s.shapes) shapes.push_back(complex_json(z));
    Json entry;
    entry["shapes"] = std::move(shapes);
    entry["residual"] = s.residual;
    entry["volume"] = s.volume;
    entry["flags"] = s.flags;
    solutions.push_back(std::move(entry));
  }
  Json out;
  out["solutions"] = std::move(solutions);
  out["max_volume_index"] =
      result.max_volume_index ? Json(*result.max_volume_index) : Json(nullptr);
  out["all_zero_volume"] = result.all_zero_volume;
  return out;
}

}  // namespace detail

namespace {

using detail::Json;

Error malformed(const std::string& what) {
  return Error(ErrorKind::MalformedInput, what);
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw malformed(std::string("invalid JSON: ") + e.what());
  }
}

Complex complex_from(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw malformed(where + ": expected [re, im]");
  const Complex z(j[0].get<double>(), j[1].get<double>());
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw malformed(where + ": non-finite value");
  return z;
}

}  // namespace

Representation parse_representation(std::string_view text) {
  const Json root = parse_json(text);
  if (!root.is_object() || !root.contains("generators") || !root["generators"].is_array())
    throw malformed("representation needs a \"generators\" array");
  Representation rep;
  for (size_t i = 0; i < root["generators"].size(); ++i) {
    const Json& g = root["generators"][i];
    const std::string where = "generator " + std::to_string(i);
    if (!g.is_object()) throw malformed(where + ": expected an object");
    std::array<Complex, 4> e;
    const char* keys[] = {"a", "b", "c", "d"};
    for (size_t k = 0; k < 4; ++k) {
      if (!g.contains(keys[k])) throw malformed(where + ": missing entry " + keys[k]);
      e[k] = complex_from(g[keys[k]], where + "." + keys[k]);
    }
    if (std::abs(e[0] * e[3] - e[1] * e[2]) < 1e-14)
      throw malformed(where + ": determinant below 1e-14");
    rep.generators.emplace_back(e[0], e[1], e[2], e[3]);
  }
  return rep;
}

std::string representation_to_json(const Representation& rep) {
  Json gens = Json::array();
  for (const Moebius& m : rep.generators) {
    Json g;
    g["a"] = detail::complex_json(m.a());
    g["b"] = detail::complex_json(m.b());
    g["c"] = detail::complex_json(m.c());
    g["d"] = detail::complex_json(m.d());
    gens.push_back(std::move(g));
  }
  Json root;
  root["generators"] = std::move(gens);
  return root.dump(1);
}

ShapeVector parse_shapes(std::string_view text) {
  const Json root = parse_json(text);
  if (!root.is_object() || !root.contains("shapes") || !root["shapes"].is_array())
    throw malformed("shape file needs a \"shapes\" array");
  ShapeVector z;
  for (size_t i = 0; i < root["shapes"].size(); ++i)
    z.push_back(complex_from(root["shapes"][i], "shape " + std::to_string(i)));
  return z;
}

std::string shapes_to_json(std::span<const Complex> z) {
  Json shapes = Json::array();
  for (Complex w : z) shapes.push_back(detail::complex_json(w));
  Json root;
  root["shapes"] = std::move(shapes);
  return root.dump(1);
}

std::string volume_report_to_json(const VolumeReport& report, int indent) {
  return detail::volume_report_json(report).dump(indent);
}

std::string scan_result_to_json(const ScanResult& result, int indent) {
  return detail::scan_result_json(result).dump(indent);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw malformed("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

}  // namespace cuspvol
