// Copyright 2026 The cpforge Authors
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

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "cpforge/channel.hpp"

namespace cpforge {

/**
 * Channel files.
 *
 *   {"rep": "a" | "b" | "choi" | "kraus", "dim_in": n, "dim_out": m,
 *    "trace_preserving": true | false | null, "data": ...}
 *
 * Matrices are arrays of rows, each row an array of [re, im] pairs (a bare number
 * is read as a real entry). Kraus data is [{"eta": 1 | -1, "matrix": ...}, ...].
 * A file may instead name a map family:
 *
 *   {"family": "adm", "params": [[a, b, g], ...], "allow_unphysical": false}
 *   {"family": "translation", "offset": [x, y, z]}
 *   {"family": "robust", "kappa": k}
 *
 * A declared "trace_preserving": true is checked against the data.
 */
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

/** Serializes in the representation the channel was built from; families are written as "a". */
nlohmann::json channel_to_json(const Channel& c);
/** Throws ParseError on malformed or inconsistent input. */
Channel channel_from_json(const nlohmann::json& j);

/** Doubles are written with 17 significant digits, so the round trip is exact. */
std::string channel_to_string(const Channel& c);
Channel channel_from_string(std::string_view text);

/** Throws IoError if the file cannot be opened. */
Channel load_channel(const std::filesystem::path& path);
void save_channel(const Channel& c, const std::filesystem::path& path);

}  // namespace cpforge
