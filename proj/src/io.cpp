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

#include "seqproc/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace seqproc {

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("failed writing '" + path + "'");
}

Json parse_json(const std::string &text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error &e) {
    throw ContractError(std::string("malformed JSON: ") + e.what());
  }
}

namespace {

void expect_format(const Json &doc, const char *format) {
  if (!doc.is_object() || doc.value("format", "") != format) {
    throw ContractError(std::string("document is not a ") + format + " file");
  }
  if (doc.value("version", 0) != kFormatVersion) {
    throw ContractError("unsupported " + std::string(format) + " version");
  }
}

template <typename T>
T field(const Json &doc, const char *key) {
  if (!doc.contains(key)) throw ContractError(std::string("missing field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const Json::exception &e) {
    throw ContractError(std::string("bad field '") + key + "': " + e.what());
  }
}

}  // namespace

Json to_json(const ProcessorTopology &topology) {
  return Json{{"num_modules", topology.num_modules()},
              {"local_bits", topology.local_bits()},
              {"channel_arity", topology.channel_arity()}};
}

ProcessorTopology topology_from_json(const Json &doc) {
  return ProcessorTopology(field<int>(doc, "num_modules"), field<std::vector<int>>(doc, "local_bits"),
                           field<int>(doc, "channel_arity"));
}

Json to_json(const TargetFunction &target) {
  Json doc{{"format", "seqproc-target"}, {"version", kFormatVersion}};
  doc.update(to_json(target.topology()));
  Json values = Json::array();
  for (std::size_t w = 0; w < target.size(); ++w) values.push_back(static_cast<int>(target[w]));
  doc["values"] = std::move(values);
  return doc;
}

TargetFunction target_from_json(const Json &doc) {
  expect_format(doc, "seqproc-target");
  auto raw = field<std::vector<int>>(doc, "values");
  std::vector<std::int8_t> values;
  for (int v : raw) {
    if (v < -1 || v > 1) throw ContractError("target values must be -1, 0 or 1");
    values.push_back(static_cast<std::int8_t>(v));
  }
  return TargetFunction(topology_from_json(doc), std::move(values));
}

Json to_json(const StrategySet &strategies) {
  Json doc{{"format", "seqproc-strategies"}, {"version", kFormatVersion}};
  doc.update(to_json(strategies.topology()));
  Json modules = Json::array();
  for (const auto &m : strategies.modules()) {
    Json rows = Json::array();
    for (int s = 0; s < m.incoming; ++s) {
      Json row = Json::array();
      for (std::uint32_t y = 0; y < m.cells_per_symbol(); ++y) row.push_back(static_cast<int>(m.at(s, y)));
      rows.push_back(std::move(row));
    }
    modules.push_back(std::move(rows));
  }
  doc["modules"] = std::move(modules);
  return doc;
}

StrategySet strategies_from_json(const Json &doc) {
  expect_format(doc, "seqproc-strategies");
  ProcessorTopology topology = topology_from_json(doc);
  auto raw = field<std::vector<std::vector<std::vector<int>>>>(doc, "modules");
  if (raw.size() != static_cast<std::size_t>(topology.num_modules())) {
    throw ContractError("strategy file lists " + std::to_string(raw.size()) + " modules");
  }
  std::vector<ModuleStrategy> modules;
  for (std::size_t m = 0; m < raw.size(); ++m) {
    ModuleStrategy s;
    s.incoming = static_cast<int>(raw[m].size());
    s.local_bits = topology.local_bits(static_cast<int>(m));
    for (const auto &row : raw[m]) {
      if (row.size() != s.cells_per_symbol()) throw ContractError("strategy row has the wrong length");
      for (int v : row) s.table.push_back(static_cast<std::int8_t>(v));
    }
    modules.push_back(std::move(s));
  }
  return StrategySet(topology, std::move(modules));
}

Json to_json(const BoundCertificate &certificate) {
  Json facts = Json::array();
  for (const auto &f : certificate.facts) {
    facts.push_back(Json{{"description", f.description},
                         {"operation", f.operation},
                         {"observed", f.observed},
                         {"relation", f.relation == FactRelation::kEqual ? "=" : ">="},
                         {"required", f.required},
                         {"holds", f.holds}});
  }
  return Json{{"format", "seqproc-certificate"}, {"version", kFormatVersion}, {"target", certificate.target_id},
              {"claimed_bound", certificate.claimed_bound}, {"pass", certificate.pass},
              {"bound", certificate.bound()}, {"facts", std::move(facts)}};
}

Json to_json(const Schedule &schedule) {
  Json doc{{"initial_temperature", nullptr},
           {"final_temperature", schedule.final_temperature},
           {"cooling", schedule.cooling},
           {"sweeps", schedule.sweeps},
           {"restarts", schedule.restarts},
           {"seed", schedule.seed}};
  if (schedule.initial_temperature) doc["initial_temperature"] = *schedule.initial_temperature;
  return doc;
}

Json anneal_report(const AnnealResult &result, const Schedule &schedule) {
  Json doc{{"format", "seqproc-anneal"}, {"version", kFormatVersion}};
  doc["best_energy"] = to_string(result.best_energy);
  doc["errors"] = result.errors ? Json(*result.errors) : Json(nullptr);
  doc["best_restart"] = result.best_restart;
  doc["initial_temperature"] = result.initial_temperature;
  doc["schedule"] = to_json(schedule);
  Json restarts = Json::array();
  for (const auto &r : result.restarts) {
    restarts.push_back(Json{{"index", r.index},
                            {"seed", r.seed},
                            {"best_energy", r.best_energy},
                            {"final_energy", r.final_energy},
                            {"best_sweep", r.best_sweep},
                            {"accepted_moves", r.accepted_moves}});
  }
  doc["restarts"] = std::move(restarts);
  Json assignment = Json::array();
  for (auto v : result.best_state) assignment.push_back(static_cast<int>(v));
  doc["assignment"] = std::move(assignment);
  doc["strategies"] = result.strategies ? to_json(*result.strategies) : Json(nullptr);
  return doc;
}

void write_matrix(std::ostream &out, const SignMatrix &matrix) {
  out << "mat " << matrix.rows() << " " << matrix.cols() << "\n";
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    for (std::size_t c = 0; c < matrix.cols(); ++c) out << (c ? " " : "") << static_cast<int>(matrix.at(r, c));
    out << "\n";
  }
}

SignMatrix read_matrix(std::istream &in) {
  std::string tag;
  long long rows = 0, cols = 0;
  if (!(in >> tag >> rows >> cols) || tag != "mat") throw ContractError("matrix file must start with 'mat m n'");
  if (rows < 1 || cols < 1 || rows * cols > (1LL << 24)) throw ContractError("matrix dimensions out of range");
  std::vector<std::int8_t> data;
  data.reserve(static_cast<std::size_t>(rows * cols));
  for (long long i = 0; i < rows * cols; ++i) {
    int v = 0;
    if (!(in >> v)) throw ContractError("matrix file ends after " + std::to_string(i) + " entries");
    if (v < -1 || v > 1) throw ContractError("matrix entries must be -1, 0 or 1");
    data.push_back(static_cast<std::int8_t>(v));
  }
  std::string extra;
  if (in >> extra) throw ContractError("matrix file has trailing data");
  return SignMatrix(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), std::move(data));
}

std::string render_matrix(const SignMatrix &matrix) {
  std::ostringstream out;
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    for (std::size_t c = 0; c < matrix.cols(); ++c) {
      const int v = matrix.at(r, c);
      out << (c ? " " : "") << (v > 0 ? " 1" : v < 0 ? "-1" : " 0");
    }
    out << "\n";
  }
  return out.str();
}

void write_shot_log(std::ostream &out, std::span<const ShotRecord> shots) {
  out << "word_index,outcome\n";
  for (const auto &s : shots) {
    out << s.word << ",";
    if (s.discarded()) {
      out << "D";
    } else {
      out << (s.outcome > 0 ? "+1" : "-1");
    }
    out << "\n";
  }
}

}  // namespace seqproc
