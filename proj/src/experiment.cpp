#include "signlink/experiment.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>

#include "signlink/edge_list.hpp"
#include "signlink/features.hpp"
#include "signlink/rng.hpp"

namespace signlink {

namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  throw InputError("config field '" + key + "': expected on/off, got '" + v + "'");
}

template <typename T>
T parse_number(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    T out{};
    if constexpr (std::is_floating_point_v<T>) out = static_cast<T>(std::stod(v, &used));
    else out = static_cast<T>(std::stoull(v, &used));
    if (used != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw InputError("config field '" + key + "': cannot parse '" + v + "'");
  }
}

double round_to(double x, double scale) { return std::round(x * scale) / scale; }

json summary_json(const Summary& s) {
  return {{"accuracy", percent(s.accuracy)},
          {"mcc", percent(s.mcc)},
          {"fraction", percent(s.fraction)},
          {"wall_ms", round_to(s.wall_ms, 1000)}};
}

json rep_json(std::size_t rep, const RunMetrics& m) {
  return {{"rep", rep},
          {"seed", m.seed},
          {"fraction", percent(m.fraction)},
          {"accuracy", percent(m.accuracy)},
          {"mcc", percent(m.mcc)},
          {"wall_ms", round_to(m.wall_ms, 1000)},
          {"confusion", {{"tp", m.counts.tp}, {"tn", m.counts.tn}, {"fp", m.counts.fp}, {"fn", m.counts.fn}}}};
}

json record_json(const std::string& dataset, const std::string& algorithm, json params, const SignedDigraph& g,
                 const std::vector<RunMetrics>& runs) {
  const AggregateMetrics agg = aggregate(runs);
  json reps = json::array();
  for (std::size_t r = 0; r < runs.size(); ++r) reps.push_back(rep_json(r, runs[r]));
  return {{"dataset", dataset},
          {"algorithm", algorithm},
          {"params", std::move(params)},
          {"graph", {{"V", g.node_count()}, {"E", g.edge_count()}}},
          {"n", agg.n},
          {"single_run", agg.single_run},
          {"reps", std::move(reps)},
          {"mean", summary_json(agg.mean)},
          {"std", summary_json(agg.std)}};
}

json document(const ExperimentConfig& cfg, json records) {
  return {{"tool", kToolName}, {"version", kToolVersion}, {"config", cfg.to_json()}, {"records", std::move(records)}};
}

std::string dataset_label(const ExperimentConfig& cfg) {
  if (!cfg.dataset.empty()) return cfg.dataset;
  return std::filesystem::path(cfg.graph).stem().string();
}

}  // namespace

double percent(double x) { return round_to(x * 100.0, 100.0); }

BatchAlgorithm batch_algorithm_from_string(const std::string& s) {
  if (s == "blc-t") return BatchAlgorithm::blc_t;
  if (s == "blc-u") return BatchAlgorithm::blc_u;
  if (s == "blc-tu") return BatchAlgorithm::blc_tu;
  if (s == "perceptron") return BatchAlgorithm::perceptron;
  throw InputError("unknown batch algorithm '" + s + "' (expected blc-t, blc-u, blc-tu or perceptron)");
}

std::string to_string(BatchAlgorithm a) {
  switch (a) {
    case BatchAlgorithm::blc_t: return "blc-t";
    case BatchAlgorithm::blc_u: return "blc-u";
    case BatchAlgorithm::blc_tu: return "blc-tu";
    case BatchAlgorithm::perceptron: return "perceptron";
  }
  return "?";
}

void ExperimentConfig::validate(bool active) const {
  if (algorithm.empty()) throw InputError("config field 'algorithm' is required");
  if (active) strategy_from_string(algorithm);
  else batch_algorithm_from_string(algorithm);
  if (!active) {
    if (fractions.empty()) throw InputError("config field 'fractions' is empty");
    for (double f : fractions)
      if (!(f > 0.0 && f < 1.0)) throw InputError("config field 'fractions': " + std::to_string(f) + " not in (0, 1)");
  }
  if (reps < 1) throw InputError("config field 'reps' must be >= 1");
  if (perceptron_epochs < 1) throw InputError("config field 'perceptron_epochs' must be >= 1");
}

nlohmann::json ExperimentConfig::to_json() const {
  return {{"graph", graph},
          {"dataset", dataset},
          {"algorithm", algorithm},
          {"fractions", fractions},
          {"reps", reps},
          {"seed", seed},
          {"tie_label", to_int(tie_label)},
          {"reciprocal", reciprocal},
          {"wcc", wcc},
          {"log_base", log_base == LogBase::natural ? "e" : "2"},
          {"perceptron_epochs", perceptron_epochs},
          {"out", out}};
}

std::string ExperimentConfig::to_text() const {
  std::ostringstream s;
  s << "graph = " << graph << '\n' << "dataset = " << dataset << '\n' << "algorithm = " << algorithm << '\n';
  s << "fractions = ";
  for (std::size_t k = 0; k < fractions.size(); ++k) s << (k ? "," : "") << json(fractions[k]).dump();
  s << '\n'
    << "reps = " << reps << '\n'
    << "seed = " << seed << '\n'
    << "tie_label = " << to_int(tie_label) << '\n'
    << "reciprocal = " << (reciprocal ? "on" : "off") << '\n'
    << "wcc = " << (wcc ? "on" : "off") << '\n'
    << "log_base = " << (log_base == LogBase::natural ? "e" : "2") << '\n'
    << "perceptron_epochs = " << perceptron_epochs << '\n'
    << "out = " << out << '\n';
  return s.str();
}

ExperimentConfig ExperimentConfig::from_text(std::string_view text) {
  ExperimentConfig c;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw InputError("config line " + std::to_string(no) + ": expected key = value");
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string v = trim(std::string_view(t).substr(eq + 1));
    if (key == "graph") c.graph = v;
    else if (key == "dataset") c.dataset = v;
    else if (key == "algorithm") c.algorithm = v;
    else if (key == "fractions") {
      c.fractions.clear();
      std::istringstream parts(v);
      std::string item;
      while (std::getline(parts, item, ',')) c.fractions.push_back(parse_number<double>(key, trim(item)));
    } else if (key == "reps") c.reps = parse_number<std::size_t>(key, v);
    else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, v);
    else if (key == "tie_label") {
      if (v == "1" || v == "+1") c.tie_label = Sign::positive;
      else if (v == "-1") c.tie_label = Sign::negative;
      else throw InputError("config field 'tie_label': expected -1 or 1, got '" + v + "'");
    } else if (key == "reciprocal") c.reciprocal = parse_bool(key, v);
    else if (key == "wcc") c.wcc = parse_bool(key, v);
    else if (key == "log_base") {
      if (v == "e") c.log_base = LogBase::natural;
      else if (v == "2") c.log_base = LogBase::two;
      else throw InputError("config field 'log_base': expected e or 2, got '" + v + "'");
    } else if (key == "perceptron_epochs") c.perceptron_epochs = parse_number<int>(key, v);
    else if (key == "out") c.out = v;
    else throw InputError("config line " + std::to_string(no) + ": unknown field '" + key + "'");
  }
  return c;
}

std::uint64_t rep_seed(std::uint64_t master, std::size_t fraction_index, std::size_t rep) {
  return derive_seed(master, fraction_index, rep);
}

TrainMask sample_train_mask(const SignedDigraph& g, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw std::invalid_argument("training fraction must lie in (0, 1)");
  const std::size_t n = g.edge_count();
  const auto k = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  if (k == 0 || k == n)
    throw std::invalid_argument("training fraction " + std::to_string(fraction) + " leaves an empty train or test set");
  Rng rng(seed);
  std::vector<EdgeId> order(n);
  std::iota(order.begin(), order.end(), EdgeId{0});
  TrainMask mask(n);
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(order[i], order[i + uniform_below(rng, n - i)]);
    mask.set(order[i]);
  }
  return mask;
}

BatchRun run_batch_once(const SignedDigraph& g, const TrainMask& mask, BatchAlgorithm algo, const ExperimentConfig& cfg,
                        std::uint64_t seed) {
  const std::vector<EdgeId> train = mask.observed_edges();
  const std::vector<EdgeId> test = mask.hidden_edges();

  const auto start = std::chrono::steady_clock::now();
  const FeatureEstimates f = estimate_features(g, mask);
  BatchRun run;
  switch (algo) {
    case BatchAlgorithm::blc_t:
      run.prediction = predict_one_feature(g, f, test, FeatureSet::trollness, cfg.tie_label);
      break;
    case BatchAlgorithm::blc_u:
      run.prediction = predict_one_feature(g, f, test, FeatureSet::unpleasantness, cfg.tie_label);
      break;
    case BatchAlgorithm::blc_tu:
      run.prediction = predict_two_feature(g, f, fit_kstar(g, f, train, cfg.tie_label), test);
      break;
    case BatchAlgorithm::perceptron: {
      PerceptronOptions opts;
      opts.epochs = cfg.perceptron_epochs;
      opts.seed = derive_seed(seed, 1);
      opts.tie_label = cfg.tie_label;
      const auto points = feature_points(g, f, train);
      run.prediction = predict_linear(g, f, fit_perceptron(points, opts), test);
      break;
    }
  }
  if (cfg.reciprocal) run.prediction = reciprocal_override(g, mask, std::move(run.prediction));
  const auto stop = std::chrono::steady_clock::now();

  const Confusion c = confusion(run.prediction, g);
  run.metrics.seed = seed;
  run.metrics.counts = c;
  run.metrics.accuracy = accuracy(c);
  run.metrics.mcc = mcc(c);
  run.metrics.fraction = static_cast<double>(train.size()) / static_cast<double>(g.edge_count());
  run.metrics.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return run;
}

nlohmann::json run_batch_experiment(const SignedDigraph& g, const ExperimentConfig& cfg) {
  cfg.validate(false);
  const BatchAlgorithm algo = batch_algorithm_from_string(cfg.algorithm);
  std::optional<WccView> view;
  if (cfg.wcc) view = largest_wcc(g);
  const SignedDigraph& graph = view ? view->graph : g;

  const std::size_t tasks = cfg.fractions.size() * cfg.reps;
  std::vector<RunMetrics> metrics(tasks);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(tasks); ++t) {
    const std::size_t fi = static_cast<std::size_t>(t) / cfg.reps;
    const std::size_t rep = static_cast<std::size_t>(t) % cfg.reps;
    const std::uint64_t seed = rep_seed(cfg.seed, fi, rep);
    const TrainMask mask = sample_train_mask(graph, cfg.fractions[fi], seed);
    metrics[t] = run_batch_once(graph, mask, algo, cfg, seed).metrics;
  }

  json records = json::array();
  for (std::size_t fi = 0; fi < cfg.fractions.size(); ++fi) {
    std::vector<RunMetrics> runs(metrics.begin() + static_cast<std::ptrdiff_t>(fi * cfg.reps),
                                 metrics.begin() + static_cast<std::ptrdiff_t>((fi + 1) * cfg.reps));
    json params = {{"train_fraction", cfg.fractions[fi]},
                   {"reciprocal", cfg.reciprocal},
                   {"tie_label", to_int(cfg.tie_label)},
                   {"wcc", cfg.wcc}};
    if (algo == BatchAlgorithm::perceptron) params["perceptron_epochs"] = cfg.perceptron_epochs;
    if (view) params["wcc_coverage"] = view->coverage;
    records.push_back(record_json(dataset_label(cfg), to_string(algo), std::move(params), graph, runs));
  }
  return document(cfg, std::move(records));
}

nlohmann::json run_active_experiment(const SignedDigraph& g, const ExperimentConfig& cfg) {
  cfg.validate(true);
  const Strategy strategy = strategy_from_string(cfg.algorithm);
  std::optional<WccView> view;
  if (cfg.wcc) view = largest_wcc(g);
  const SignedDigraph& graph = view ? view->graph : g;

  std::vector<RunMetrics> runs(cfg.reps);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t r = 0; r < static_cast<std::int64_t>(cfg.reps); ++r) {
    const std::uint64_t seed = rep_seed(cfg.seed, 0, static_cast<std::size_t>(r));
    const auto start = std::chrono::steady_clock::now();
    const QueryPlan plan = select_queries(graph, strategy, seed, cfg.log_base);
    ActiveRun run = run_active(graph, plan, rule_for(strategy.which), cfg.tie_label);
    const auto stop = std::chrono::steady_clock::now();
    run.metrics.seed = seed;
    run.metrics.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    runs[r] = run.metrics;
  }

  json params = {{"strategy", to_string(strategy)},
                 {"wcc", cfg.wcc},
                 {"log_base", cfg.log_base == LogBase::natural ? "e" : "2"},
                 {"tie_label", to_int(cfg.tie_label)}};
  if (view) params["wcc_coverage"] = view->coverage;
  json records = json::array();
  records.push_back(record_json(dataset_label(cfg), to_string(strategy), std::move(params), graph, runs));
  return document(cfg, std::move(records));
}

nlohmann::json graph_stats(const SignedDigraph& g, const std::string& name) {
  const ComplexityStats c = complexity(g);
  const PfcSummary pfc = pfc_surrogate(g);
  const double e = static_cast<double>(g.edge_count());
  json out = {{"dataset", name},
              {"V", g.node_count()},
              {"E", g.edge_count()},
              {"pos_frac", e > 0 ? static_cast<double>(g.positive_count()) / e : 0.0},
              {"psi_in_frac", c.psi_in_fraction()},
              {"psi_out_frac", c.psi_out_fraction()},
              {"psi_in", c.total_in},
              {"psi_out", c.total_out},
              {"d_bar", c.d_bar},
              {"pfc_quartiles", pfc.quartiles}};
  out["psi_bar_0"] = c.psi_bar_0 ? json(*c.psi_bar_0) : json(nullptr);
  if (g.node_count() > 0) out["wcc_coverage"] = largest_wcc(g).coverage;
  return out;
}

nlohmann::json to_json(const BoundReport& r) {
  json j = {{"theorem", r.theorem},
            {"algorithm", r.algorithm},
            {"trials", r.trials},
            {"mean_mistakes", r.mean_mistakes},
            {"std_error", r.std_error},
            {"bound", r.bound},
            {"psi_out", r.psi_out},
            {"max_queries", r.max_queries},
            {"query_cap", r.query_cap},
            {"queries_within_cap", r.queries_within_cap},
            {"passed", r.passed},
            {"skipped", r.skipped}};
  if (r.aggregate_bound) j["aggregate_bound"] = *r.aggregate_bound;
  if (r.skipped) j["skip_reason"] = r.skip_reason;
  return j;
}

std::string results_to_csv(const nlohmann::json& doc) {
  std::ostringstream s;
  s << "dataset,algorithm,train_fraction,rep,seed,fraction,accuracy,mcc,wall_ms\n";
  for (const auto& rec : doc.at("records")) {
    const std::string tf = rec.at("params").contains("train_fraction") ? rec["params"]["train_fraction"].dump() : "";
    for (const auto& rep : rec.at("reps")) {
      s << rec.at("dataset").get<std::string>() << ',' << rec.at("algorithm").get<std::string>() << ',' << tf << ','
        << rep.at("rep").dump() << ',' << rep.at("seed").dump() << ',' << rep.at("fraction").dump() << ','
        << rep.at("accuracy").dump() << ',' << rep.at("mcc").dump() << ',' << rep.at("wall_ms").dump() << '\n';
    }
  }
  return s.str();
}

nlohmann::json without_wall_times(const nlohmann::json& doc) {
  if (doc.is_object()) {
    json out = json::object();
    for (const auto& [k, v] : doc.items())
      if (k != "wall_ms") out[k] = without_wall_times(v);
    return out;
  }
  if (doc.is_array()) {
    json out = json::array();
    for (const auto& v : doc) out.push_back(without_wall_times(v));
    return out;
  }
  return doc;
}

void write_results(const nlohmann::json& doc, const std::filesystem::path& out) {
  if (out.extension() == ".csv") write_file_atomic(out, results_to_csv(doc));
  else write_file_atomic(out, doc.dump(2) + "\n");
}

}  // namespace signlink
