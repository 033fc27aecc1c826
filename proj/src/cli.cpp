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

#include "qamem/cli.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "qamem/errors.hpp"
#include "qamem/oracle.hpp"
#include "qamem/pattern.hpp"
#include "qamem/report_io.hpp"
#include "qamem/retrieval.hpp"
#include "qamem/storage.hpp"

namespace qamem::cli {

namespace {

/// Gate-level and analytic values must agree to this for a zero exit code.
constexpr double kAgreementTolerance = 1e-9;
/// Stream reserved for filling unknown input bits; trial streams count up from 0.
constexpr std::uint64_t kFillStream = ~std::uint64_t{0};

std::string num(double v) { return Json(v).dump(); }

void emit(const std::string& text, const ExperimentConfig& config, std::ostream& out) {
  if (config.output) {
    std::ofstream file(*config.output, std::ios::binary);
    if (!file) throw InvalidInput("cannot write output file '" + config.output->string() + "'");
    file << text;
  } else {
    out << text;
  }
}

void emit_json(const Json& j, const ExperimentConfig& config, std::ostream& out) {
  emit(j.dump(2) + "\n", config, out);
}

struct Loaded {
  PatternSet set;
  Query query;
};

Loaded load(const ExperimentConfig& config) {
  PatternSet set = load_patterns(config.pattern_file);
  if (config.input.size() != set.n()) {
    throw InvalidInput("--input has length " + std::to_string(config.input.size()) +
                       " but the patterns have length " + std::to_string(set.n()));
  }
  std::optional<DistanceTable> f;
  if (config.f_table) f = load_distance_table(*config.f_table);
  std::optional<Rng> fill;
  if (config.seed) fill.emplace(Rng::stream(*config.seed, kFillStream));
  Query query = Query::make(config.input, config.mask, std::move(f), fill ? &*fill : nullptr,
                            config.mask_scale);
  return Loaded{std::move(set), std::move(query)};
}

RetrievalOptions retrieval_options(const ExperimentConfig& config) {
  RetrievalOptions options;
  options.max_qubits = config.max_qubits;
  return options;
}

std::size_t resolve_threshold(const ExperimentConfig& config, const PatternSet& set) {
  if (config.threshold == "auto") return choose_threshold(set);
  std::size_t used = 0;
  unsigned long long t = 0;
  try {
    t = std::stoull(config.threshold, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != config.threshold.size() || t == 0) {
    throw InvalidInput("--threshold must be 'auto' or a positive integer");
  }
  return static_cast<std::size_t>(t);
}

const char* csv_header() { return "pattern,probability,empirical_frequency,stderr\n"; }

}  // namespace

int cmd_store(const std::filesystem::path& pattern_file,
              const std::optional<std::filesystem::path>& dump_path, const ExperimentConfig& config,
              std::ostream& out) {
  const PatternSet set = load_patterns(pattern_file);
  StoreOptions options;
  options.max_qubits = config.max_qubits;
  const QuantumState memory = store(set, options);
  const double deviation = verify_memory(memory, set);
  if (dump_path) {
    std::ofstream file(*dump_path, std::ios::binary);
    if (!file) throw InvalidInput("cannot write state dump '" + dump_path->string() + "'");
    file << state_to_json(memory).dump(2) << "\n";
  }
  if (config.format == Format::csv) {
    emit("n,p,deviation\n" + std::to_string(set.n()) + "," + std::to_string(set.p()) + "," +
             num(deviation) + "\n",
         config, out);
  } else {
    emit_json(Json{{"n", set.n()}, {"p", set.p()}, {"deviation", deviation}}, config, out);
  }
  return deviation <= kAgreementTolerance ? kSuccess : kNumericalError;
}

int cmd_report(const ExperimentConfig& config, std::ostream& out) {
  const Loaded in = load(config);
  const DistributionReport gate = gate_level_report(in.set, in.query, retrieval_options(config));
  const DistributionReport analytic = oracle::analytic_report(in.set, in.query);
  const double deviation = max_report_deviation(gate, analytic);
  if (config.format == Format::csv) {
    std::ostringstream os;
    os << "# gate_level p0=" << num(gate.p0) << " p1=" << num(gate.p1) << "\n";
    os << "# analytic p0=" << num(analytic.p0) << " p1=" << num(analytic.p1) << "\n";
    os << "# max_deviation=" << num(deviation) << "\n";
    os << csv_header();
    for (const auto& [pattern, prob] : gate.per_pattern) os << pattern << "," << num(prob) << ",,\n";
    emit(os.str(), config, out);
  } else {
    emit_json(Json{{"gate_level", report_to_json(gate)},
                   {"analytic", report_to_json(analytic)},
                   {"max_deviation", deviation}},
              config, out);
  }
  return deviation <= kAgreementTolerance ? kSuccess : kNumericalError;
}

int cmd_recognize(const ExperimentConfig& config, std::ostream& out) {
  if (!config.seed) throw InvalidInput("recognize needs --seed");
  const Loaded in = load(config);
  const std::size_t threshold = resolve_threshold(config, in.set);
  Rng rng(*config.seed);
  const RecognitionResult result =
      recognize(in.set, in.query, threshold, rng, retrieval_options(config));
  const double p0 = oracle::analytic_report(in.set, in.query).p0;
  if (config.format == Format::csv) {
    std::ostringstream os;
    os << "recognized,trials_used,threshold,control_bit,retrieved,trial_index,p0_analytic\n";
    os << (result.recognized ? "true" : "false") << "," << result.trials_used << "," << threshold
       << ",";
    if (result.outcome) {
      os << result.outcome->control_bit << ","
         << (result.outcome->retrieved ? result.outcome->retrieved->str() : "") << ","
         << result.outcome->trial_index;
    } else {
      os << ",,";
    }
    os << "," << num(p0) << "\n";
    emit(os.str(), config, out);
  } else {
    Json j = recognition_to_json(result);
    j["threshold"] = threshold;
    j["seed"] = *config.seed;
    j["p0_analytic"] = p0;
    j["non_recognition_probability"] = std::pow(1.0 - p0, static_cast<double>(threshold));
    emit_json(j, config, out);
  }
  return kSuccess;
}

int cmd_experiment(const ExperimentConfig& config, std::ostream& out) {
  if (!config.seed) throw InvalidInput("experiment needs --seed");
  if (config.trials == 0) throw InvalidInput("--trials must be >= 1");
  const Loaded in = load(config);
  const ExperimentCounts counts = run_experiment(in.set, in.query, config.trials, *config.seed,
                                                 retrieval_options(config), config.workers);
  const DistributionReport analytic = oracle::analytic_report(in.set, in.query);

  const double trials = static_cast<double>(counts.trials);
  const double zero = static_cast<double>(counts.control_zero);
  const double p0_hat = zero / trials;
  const double p0_err = std::sqrt(p0_hat * (1.0 - p0_hat) / trials);

  struct Row {
    std::string pattern;
    double analytic;
    std::optional<double> freq;
    std::optional<double> err;
    std::size_t count;
  };
  std::vector<Row> rows;
  for (const auto& [pattern, count] : counts.retrieved) {
    Row row{pattern, 0.0, std::nullopt, std::nullopt, count};
    auto it = analytic.per_pattern.find(pattern);
    if (it != analytic.per_pattern.end()) row.analytic = it->second;
    if (counts.control_zero > 0) {
      const double f = static_cast<double>(count) / zero;
      row.freq = f;
      row.err = std::sqrt(f * (1.0 - f) / zero);
    }
    rows.push_back(row);
  }

  if (config.format == Format::csv) {
    std::ostringstream os;
    os << "# trials=" << counts.trials << " seed=" << counts.seed << "\n";
    os << "# p0 analytic=" << num(analytic.p0) << " empirical=" << num(p0_hat)
       << " stderr=" << num(p0_err) << "\n";
    os << csv_header();
    for (const auto& r : rows) {
      os << r.pattern << "," << num(r.analytic) << "," << (r.freq ? num(*r.freq) : "") << ","
         << (r.err ? num(*r.err) : "") << "\n";
    }
    emit(os.str(), config, out);
  } else {
    Json j;
    j["n"] = in.set.n();
    j["p"] = in.set.p();
    j["input"] = in.query.raw_input();
    if (in.query.was_filled()) j["filled_input"] = in.query.input().str();
    j["mask"] = in.query.mask() ? Json(*in.query.mask()) : Json(nullptr);
    j["f_table"] = in.query.f_table() ? Json(*in.query.f_table()) : Json(nullptr);
    j["trials"] = counts.trials;
    j["seed"] = counts.seed;
    j["p0"] = Json{{"empirical", p0_hat}, {"stderr", p0_err}, {"analytic", analytic.p0}};
    j["p1"] = Json{{"empirical", 1.0 - p0_hat}, {"stderr", p0_err}, {"analytic", analytic.p1}};
    Json per = Json::object();
    for (const auto& r : rows) {
      per[r.pattern] = Json{{"count", r.count},
                            {"empirical", r.freq ? Json(*r.freq) : Json(nullptr)},
                            {"stderr", r.err ? Json(*r.err) : Json(nullptr)},
                            {"analytic", r.analytic}};
    }
    j["per_pattern"] = per;
    emit_json(j, config, out);
  }
  return kSuccess;
}

int cmd_threshold(const ExperimentConfig& config, std::ostream& out) {
  const PatternSet set = load_patterns(config.pattern_file);
  const std::vector<double> probs = self_recognition_probabilities(set);
  double p_min = probs.front();
  for (double v : probs) p_min = std::min(p_min, v);
  const std::size_t threshold = choose_threshold(set);
  if (config.format == Format::csv) {
    std::ostringstream os;
    os << "# p_min=" << num(p_min) << " threshold=" << threshold << "\n";
    os << csv_header();
    for (std::size_t k = 0; k < set.p(); ++k) os << set[k].str() << "," << num(probs[k]) << ",,\n";
    emit(os.str(), config, out);
  } else {
    Json self = Json::object();
    for (std::size_t k = 0; k < set.p(); ++k) self[set[k].str()] = probs[k];
    emit_json(Json{{"n", set.n()},
                   {"p", set.p()},
                   {"self_recognition", self},
                   {"p_min", p_min},
                   {"threshold", threshold}},
              config, out);
  }
  return kSuccess;
}

int cmd_worst_case(std::size_t n, std::size_t x, bool gate_level, const ExperimentConfig& config,
                   std::ostream& out) {
  const WorstCaseReport report = worst_case_threshold_scaling(n, x, gate_level);
  const Json j = worst_case_to_json(report);
  if (config.format == Format::csv) {
    std::ostringstream header;
    std::ostringstream row;
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      header << (first ? "" : ",") << key;
      row << (first ? "" : ",") << (value.is_null() ? "" : value.dump());
      first = false;
    }
    emit(header.str() + "\n" + row.str() + "\n", config, out);
  } else {
    emit_json(j, config, out);
  }
  if (report.p0_gate_level && std::abs(*report.p0_gate_level - report.p0_exact) > kAgreementTolerance) {
    return kNumericalError;
  }
  return kSuccess;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum associative memory simulator"};
  app.require_subcommand(1);

  ExperimentConfig config;
  std::string format = "json";
  std::string mask_scale = "n";
  std::optional<std::string> mask;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> f_table;
  std::optional<std::string> output;
  std::optional<std::string> dump;
  std::string patterns;
  std::size_t n = 0;
  std::size_t x = 0;
  bool gate_level = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output", output, "Write the result here instead of stdout");
    sub->add_option("--max-qubits", config.max_qubits, "Largest simulated register")
        ->check(CLI::Range(1, 62));
  };
  auto add_query = [&](CLI::App* sub) {
    sub->add_option("--patterns", patterns, "Pattern file")->required();
    sub->add_option("--input", config.input, "Input bits over {0,1,?}")->required();
    sub->add_option("--mask", mask, "Known positions (1 = known)");
    sub->add_option("--f-table", f_table, "Distance table file: n+1 integers");
    sub->add_option("--mask-scale", mask_scale, "Phase denominator under a mask: n or q")
        ->check(CLI::IsMember({"n", "q"}));
    add_common(sub);
  };

  auto* store_cmd = app.add_subcommand("store", "Build the memory state and check it");
  store_cmd->add_option("--patterns", patterns, "Pattern file")->required();
  store_cmd->add_option("--dump", dump, "Write the memory state as JSON");
  add_common(store_cmd);

  auto* report_cmd = app.add_subcommand("report", "Gate-level and analytic distributions");
  add_query(report_cmd);
  report_cmd->add_option("--seed", seed, "Seed for filling unknown input bits");

  auto* recognize_cmd = app.add_subcommand("recognize", "Threshold-bounded recognition run");
  add_query(recognize_cmd);
  recognize_cmd->add_option("--seed", seed, "Random seed")->required();
  recognize_cmd->add_option("--threshold", config.threshold, "auto or a positive integer");

  auto* experiment_cmd = app.add_subcommand("experiment", "Monte Carlo retrieval statistics");
  add_query(experiment_cmd);
  experiment_cmd->add_option("--seed", seed, "Random seed")->required();
  experiment_cmd->add_option("--trials", config.trials, "Number of trials")
      ->check(CLI::PositiveNumber);
  experiment_cmd->add_option("--workers", config.workers, "Worker threads (0 = all cores)");

  auto* threshold_cmd = app.add_subcommand("threshold", "Self-recognition probabilities and T");
  threshold_cmd->add_option("--patterns", patterns, "Pattern file")->required();
  add_common(threshold_cmd);

  auto* worst_cmd = app.add_subcommand("worst-case", "Isolated-pattern threshold scaling");
  worst_cmd->add_option("--n", n, "Pattern length")->required();
  worst_cmd->add_option("--x", x, "Cluster radius")->required();
  worst_cmd->add_flag("--gate-level", gate_level, "Also simulate the circuit");
  add_common(worst_cmd);

  std::vector<const char*> argv{"qamem"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  config.pattern_file = patterns;
  config.mask = mask;
  config.seed = seed;
  if (f_table) config.f_table = *f_table;
  if (output) config.output = *output;
  config.format = format == "csv" ? Format::csv : Format::json;
  config.mask_scale = mask_scale == "q" ? MaskScale::known_bits : MaskScale::pattern_length;

  try {
    if (store_cmd->parsed()) {
      std::optional<std::filesystem::path> dump_path;
      if (dump) dump_path = *dump;
      return cmd_store(config.pattern_file, dump_path, config, out);
    }
    if (report_cmd->parsed()) return cmd_report(config, out);
    if (recognize_cmd->parsed()) return cmd_recognize(config, out);
    if (experiment_cmd->parsed()) return cmd_experiment(config, out);
    if (threshold_cmd->parsed()) return cmd_threshold(config, out);
    if (worst_cmd->parsed()) return cmd_worst_case(n, x, gate_level, config, out);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumericalError;
  }
  return kInputError;
}

}  // namespace qamem::cli
