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

// nlohmann-level serializers shared by json_io.cpp and cli.cpp.

#pragma once

#include "cuspvol/json_io.hpp"
#include "json.hpp"

namespace cuspvol::detail {

using Json = nlohmann::ordered_json;

Json complex_json(Complex z);
Json volume_report_json(const VolumeReport& report);
Json scan_result_json(const ScanResult& result);

}  // namespace cuspvol::detail
