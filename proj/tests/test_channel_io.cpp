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

#include <doctest.h>

#include <filesystem>
#include <random>

#include "cpforge/channel.hpp"
#include "cpforge/channel_io.hpp"
#include "cpforge/errors.hpp"
#include "cpforge/maps.hpp"
#include "oracle.hpp"

using namespace cpforge;

TEST_SUITE("channel_io") {

TEST_CASE("round trip in every representation") {
  std::mt19937_64 rng(51);
  const ComplexMatrix b = oracle::from_eigen(oracle::random_hermitian(rng, 4));
  const std::vector<Channel> channels{
      Channel::from_b(oracle::from_eigen(oracle::random_hermitian(rng, 6)), 2, 3),
      Channel::from_a(Channel::from_b(b, 2, 2).a_matrix()),
      Channel::from_b(b, 2, 2),
      Channel::from_choi(choi(Channel::from_b(b, 2, 2)), 2, 2),
      Channel::from_kraus(Channel::transpose_map(2).kraus()),
      translation({0.1, -0.2, 0.3}),
  };
  for (const Channel& c : channels) {
    const Channel back = channel_from_string(channel_to_string(c));
    CHECK(back.source() == c.source());
    CHECK(back.dim_in() == c.dim_in());
    CHECK(back.dim_out() == c.dim_out());
    CHECK(back.trace_preserving() == c.trace_preserving());
    CHECK(max_abs_diff(back.a_matrix(), c.a_matrix()) <= 1e-15);
  }
}

TEST_CASE("family shorthand") {
  const Channel t = channel_from_string(R"({"family": "translation", "offset": [0, 0, 0.5]})");
  CHECK(max_abs_diff(t.a_matrix(), translation({0.0, 0.0, 0.5}).a_matrix()) == 0.0);
  const Channel a = channel_from_string(R"({"family": "adm", "params": [[0.1, 0.2, 0.3], [1, 1, 1]]})");
  CHECK(a.dim_in() == 4);
  CHECK_THROWS_AS(channel_from_string(R"({"family": "adm", "params": [[2, 0, 0]]})"), ParamOutOfRange);
  CHECK_NOTHROW(channel_from_string(R"({"family": "adm", "params": [[2, 0, 0]], "allow_unphysical": true})"));
  const Channel r = channel_from_string(R"({"family": "robust", "kappa": 2})");
  CHECK(max_abs_diff(r.a_matrix(), robust_map(2.0).a_matrix()) == 0.0);
}

TEST_CASE("complex entries") {
  const Channel c = channel_from_string(R"({"rep": "kraus", "data": [{"eta": 1, "matrix": [[0, [0, -1]], [[0, 1], 0]]}]})");
  CHECK(max_abs_diff(c.a_matrix(), Channel::unitary(pauli(2)).a_matrix()) < 1e-15);
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(channel_from_string("{not json"), ParseError);
  CHECK_THROWS_AS(channel_from_string(R"({"rep": "a", "dim_in": 2, "dim_out": 2})"), ParseError);
  CHECK_THROWS_AS(channel_from_string(R"({"rep": "q", "dim_in": 2, "dim_out": 2, "data": []})"), ParseError);
  CHECK_THROWS_AS(channel_from_string(R"({"rep": "a", "dim_in": 2, "dim_out": 2, "data": [[1, 0], [0, 1]]})"), ParseError);
  CHECK_THROWS_AS(channel_from_string(R"({"rep": "a", "dim_in": 0, "dim_out": 2, "data": []})"), ParseError);
  CHECK_THROWS_AS(channel_from_string(R"({"family": "spiral"})"), ParseError);
  CHECK_THROWS_AS(channel_from_string(R"({"rep": "b", "dim_in": 2, "dim_out": 2, "trace_preserving": true,
      "data": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]})"),
                  ParseError);
  CHECK_THROWS_AS(channel_from_string(R"({"rep": "a", "dim_in": 2, "dim_out": 2,
      "data": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, "x"]]})"),
                  ParseError);
}

TEST_CASE("files") {
  const auto dir = std::filesystem::temp_directory_path() / "cpforge_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "t.json";
  save_channel(translation({0.0, 0.0, 0.5}), path);
  CHECK(max_abs_diff(load_channel(path).a_matrix(), translation({0.0, 0.0, 0.5}).a_matrix()) == 0.0);
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(load_channel(dir / "missing.json"), IoError);
  CHECK_THROWS_AS(save_channel(Channel::identity(2), dir / "no" / "such" / "dir.json"), IoError);
}

}  // TEST_SUITE
