// Copyright 2026 The qamem Authors
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

#include "qamem/report_io.hpp"

#include <fstream>

#include "qamem/errors.hpp"

namespace qamem {

const char* to_string(ReportSource source) {
  return source == ReportSource::analytic ? "analytic" : "gate_level";
}

Json state_to_json(const QuantumState& state) {
  Json entries = Json::array();
  const auto amps = state.amplitudes();
  const std::size_t nq = state.num_qubits();
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if (std::abs(amps[i]) <= kDumpCutoff) continue;
    std::string bits(nq, '0');
    for (std::size_t q = 0; q < nq; ++q) {
      if (state.layout().qubit_value(i, q)) bits[q] = '1';
    }
    entries.push_back(Json{{"basis", bits}, {"re", amps[i].real()}, {"im", amps[i].imag()}});
  }
  Json layout = Json::array();
  for (const auto& r : state.layout().registers()) {
    layout.push_back(Json{{"name", r.name}, {"width", r.width}});
  }
  return Json{{"registers", layout}, {"amplitudes", entries}};
}

Json report_to_json(const DistributionReport& r) {
  Json j;
  j["n"] = r.n;
  j["p"] = r.p;
  j["input"] = r.input;
  if (r.filled_input) j["filled_input"] = *r.filled_input;
  j["mask"] = r.mask ? Json(*r.mask) : Json(nullptr);
  j["f_table"] = r.f_table ? Json(*r.f_table) : Json(nullptr);
  j["p0"] = r.p0;
  j["p1"] = r.p1;
  Json per = Json::object();
  for (const auto& [pattern, prob] : r.per_pattern) per[pattern] = prob;
  j["per_pattern"] = per;
  j["source"] = to_string(r.source);
  return j;
}

DistributionReport report_from_json(const Json& j) {
  try {
    DistributionReport r;
    r.n = j.at("n").get<std::size_t>();
    r.p = j.at("p").get<std::size_t>();
    r.input = j.at("input").get<std::string>();
    if (j.contains("filled_input")) r.filled_input = j["filled_input"].get<std::string>();
    if (!j.at("mask").is_null()) r.mask = j["mask"].get<std::string>();
    if (!j.at("f_table").is_null()) r.f_table = j["f_table"].get<DistanceTable>();
    r.p0 = j.at("p0").get<double>();
    r.p1 = j.at("p1").get<double>();
    for (const auto& [pattern, prob] : j.at("per_pattern").items()) {
      r.per_pattern[pattern] = prob.get<double>();
    }
    r.recognizable = !r.per_pattern.empty();
    const auto source = j.at("source").get<std::string>();
    if (source == "analytic") {
      r.source = ReportSource::analytic;
    } else if (source == "gate_level") {
      r.source = ReportSource::gate_level;
    } else {
      throw InvalidInput("unknown report source '" + source + "'");
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed distribution report: ") + e.what());
  }
}

Json outcome_to_json(const RetrievalOutcome& o) {
  return Json{{"control_bit", o.control_bit},
              {"retrieved", o.retrieved ? Json(o.retrieved->str()) : Json(nullptr)},
              {"trial_index", o.trial_index}};
}

Json recognition_to_json(const RecognitionResult& r) {
  return Json{{"recognized", r.recognized},
              {"trials_used", r.trials_used},
              {"outcome", r.outcome ? outcome_to_json(*r.outcome) : Json(nullptr)}};
}

Json worst_case_to_json(const WorstCaseReport& r) {
  Json j;
  j["n"] = r.n;
  j["x"] = r.x;
  j["p"] = r.p;
  j["p0_exact"] = r.p0_exact;
  j["p0_gate_level"] = r.p0_gate_level ? Json(*r.p0_gate_level) : Json(nullptr);
  j["threshold"] = r.threshold;
  j["threshold_over_n"] = static_cast<double>(r.threshold) / static_cast<double>(r.n);
  j["threshold_over_n_squared"] =
      static_cast<double>(r.threshold) / static_cast<double>(r.n * r.n);
  j["asymptotic_bound"] = r.asymptotic_bound;
  j["bound_holds"] = r.bound_holds;
  return j;
}

DistanceTable parse_distance_table(std::istream& in) {
  DistanceTable f;
  std::string token;
  while (in >> token) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      f.push_back(v);
    } catch (const std::exception&) {
      throw InvalidInput("distance table entry " + std::to_string(f.size()) + " ('" + token +
                         "') is not an integer");
    }
  }
  if (f.empty()) throw InvalidInput("distance table is empty");
  return f;
}

DistanceTable load_distance_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open distance table '" + path.string() + "'");
  return parse_distance_table(in);
}

}  // namespace qamem
