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

// File formats: representations, shape vectors, volume and solver reports.

#pragma once

#include <span>
#include <string>
#include <string_view>

#include "cuspvol/gluing_solver.hpp"
#include "cuspvol/holonomy.hpp"
#include "cuspvol/volume_report.hpp"

namespace cuspvol {

/// `{"generators": [{"a":[re,im],"b":…,"c":…,"d":…}, …]}`; matrices are
/// normalized to determinant 1. Throws MalformedInput (including
/// |det| < 1e-14).
Representation parse_representation(std::string_view text);
std::string representation_to_json(const Representation& rep);

/// `{"shapes": [[re,im], …]}`. Throws MalformedInput.
ShapeVector parse_shapes(std::string_view text);
std::string shapes_to_json(std::span<const Complex> z);

std::string volume_report_to_json(const VolumeReport& report, int indent = -1);
std::string scan_result_to_json(const ScanResult& result, int indent = -1);

/// Whole file contents. Throws MalformedInput when unreadable.
std::string read_file(const std::string& path);
/// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view bytes);

}  // namespace cuspvol
