// Copyright 2026 The seqproc Authors
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

#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "seqproc/io.hpp"

using namespace seqproc;

TEST_SUITE("io") {
  TEST_CASE("target documents round trip") {
    auto target = fixtures::qutrit4_target();
    auto doc = to_json(target);
    CHECK(doc["format"] == "seqproc-target");
    CHECK(doc["version"] == kFormatVersion);
    CHECK(target_from_json(parse_json(doc.dump())) == target);

    auto wrong = doc;
    wrong["version"] = 2;
    CHECK_THROWS_AS(target_from_json(wrong), ContractError);
    wrong = doc;
    wrong["values"][0] = 3;
    CHECK_THROWS_AS(target_from_json(wrong), ContractError);
    wrong = doc;
    wrong["values"].erase(0);
    CHECK_THROWS_AS(target_from_json(wrong), ContractError);
    wrong = doc;
    wrong.erase("channel_arity");
    CHECK_THROWS_AS(target_from_json(wrong), ContractError);
    CHECK_THROWS_AS(target_from_json(to_json(reference_strategy(ReferenceStrategy::kBit3))), ContractError);
    CHECK_THROWS_AS(parse_json("{not json"), ContractError);
  }

  TEST_CASE("strategy documents round trip") {
    for (auto which : {ReferenceStrategy::kBit3, ReferenceStrategy::kTrit3, ReferenceStrategy::kTrit4}) {
      auto s = reference_strategy(which);
      CHECK(strategies_from_json(parse_json(to_json(s).dump(2))) == s);
    }
    auto doc = to_json(reference_strategy(ReferenceStrategy::kBit3));
    CHECK(doc["modules"].size() == 3);
    CHECK(doc["modules"][1].size() == 2);
    CHECK(doc["modules"][1][0].size() == 4);
    doc["modules"][0][0].erase(0);
    CHECK_THROWS_AS(strategies_from_json(doc), ContractError);
  }

  TEST_CASE("certificate and anneal documents") {
    auto cert = certify_qubit3(fixtures::qubit3_target());
    auto doc = to_json(cert);
    CHECK(doc["pass"] == true);
    CHECK(doc["bound"] == 8);
    CHECK(doc["facts"].size() == cert.facts.size());

    AnnealResult r;
    r.best_energy = Rational(-16);
    r.errors = 8;
    r.wall_seconds = 1.5;
    r.best_state = {1, 0};
    Schedule s;
    auto report = anneal_report(r, s);
    CHECK(report["best_energy"] == "-16");
    CHECK(report["errors"] == 8);
    CHECK(report["schedule"]["initial_temperature"].is_null());
    CHECK(report["schedule"]["sweeps"] == 2000);
    CHECK_FALSE(report.contains("wall_seconds"));
  }

  TEST_CASE("matrix files") {
    SignMatrix m(2, 3, {1, 0, -1, -1, 1, 1});
    std::stringstream s;
    write_matrix(s, m);
    CHECK(s.str() == "mat 2 3\n1 0 -1\n-1 1 1\n");
    CHECK(read_matrix(s) == m);
    CHECK(render_matrix(m) == " 1  0 -1\n-1  1  1\n");
    std::stringstream short_file("mat 2 2\n1 1 1\n");
    CHECK_THROWS_AS(read_matrix(short_file), ContractError);
    std::stringstream bad_value("mat 1 2\n1 2\n");
    CHECK_THROWS_AS(read_matrix(bad_value), ContractError);
    std::stringstream trailing("mat 1 1\n1 1\n");
    CHECK_THROWS_AS(read_matrix(trailing), ContractError);
    std::stringstream header("matrix 1 1\n1\n");
    CHECK_THROWS_AS(read_matrix(header), ContractError);
  }

  TEST_CASE("shot log") {
    std::vector<ShotRecord> shots{{3, 1, 0}, {5, 0, 1}, {5, -1, 2}};
    std::stringstream s;
    write_shot_log(s, shots);
    CHECK(s.str() == "word_index,outcome\n3,+1\n5,D\n5,-1\n");
  }

  TEST_CASE("file helpers") {
    auto dir = std::filesystem::temp_directory_path() / "seqproc_io_test";
    std::filesystem::create_directories(dir);
    auto path = (dir / "x.txt").string();
    write_file(path, "abc\n");
    CHECK(read_file(path) == "abc\n");
    CHECK_THROWS_AS(read_file((dir / "missing.txt").string()), IoError);
    CHECK_THROWS_AS(write_file((dir / "no" / "such" / "dir.txt").string(), "x"), IoError);
    std::filesystem::remove_all(dir);
  }
}
