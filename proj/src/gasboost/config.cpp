#include "gasboost/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "gasboost/common.hpp"

namespace gasboost {

std::string classifier_name(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::nb: return "nb";
    case ClassifierKind::lr: return "lr";
    case ClassifierKind::dt: return "dt";
    case ClassifierKind::xgb: return "xgb";
    case ClassifierKind::fuzzy_xgb: return "fuzzy_xgb";
    case ClassifierKind::pso_fuzzy_xgb: return "pso_fuzzy_xgb";
  }
  throw Error("unknown classifier kind");
}

ClassifierKind classifier_from_name(const std::string& name) {
  if (name == "nb") return ClassifierKind::nb;
  if (name == "lr") return ClassifierKind::lr;
  if (name == "dt") return ClassifierKind::dt;
  if (name == "xgb") return ClassifierKind::xgb;
  if (name == "fuzzy_xgb") return ClassifierKind::fuzzy_xgb;
  if (name == "pso_fuzzy_xgb") return ClassifierKind::pso_fuzzy_xgb;
  throw Error("unknown classifier '" + name + "'");
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// section -> ordered (key, value) pairs. `key = value` lines under
// `[section]` headers; `#` starts a comment.
std::map<std::string, std::map<std::string, std::string>> parse_sections(
    const std::string& text) {
  std::map<std::string, std::map<std::string, std::string>> sections;
  std::istringstream in(text);
  std::string line, section;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw Error("config line " + std::to_string(line_no) +
                    ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      sections[section];
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw Error("config line " + std::to_string(line_no) +
                  ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw Error("config line " + std::to_string(line_no) + ": empty key");
    sections[section][key] = value;
  }
  return sections;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(value);
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& value) {
  double v;
  auto res = std::from_chars(value.data(), value.data() + value.size(), v);
  if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
    throw Error("config key '" + key + "': '" + value + "' is not a number");
  return v;
}

long to_long(const std::string& key, const std::string& value) {
  long v;
  auto res = std::from_chars(value.data(), value.data() + value.size(), v);
  if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
    throw Error("config key '" + key + "': '" + value + "' is not an integer");
  return v;
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
  std::uint64_t v;
  auto res = std::from_chars(value.data(), value.data() + value.size(), v);
  if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
    throw Error("config key '" + key + "': '" + value +
                "' is not an unsigned integer");
  return v;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw Error("config key '" + key + "': '" + value + "' is not a boolean");
}

}  // namespace

void ExperimentConfig::validate() const {
  if (grid.seeds.empty()) throw Error("config: seeds list is empty");
  if (grid.fractions.empty()) throw Error("config: fractions list is empty");
  for (double f : grid.fractions)
    if (f <= 0.0 || f > 1.0)
      throw Error("config: fraction " + format_double(f) + " outside (0,1]");
  if (grid.classifiers.empty()) throw Error("config: classifier list is empty");
  if (grid.selectors.empty()) throw Error("config: selector list is empty");
  if (split.train_ratio <= 0.0 || split.train_ratio >= 1.0)
    throw Error("config: train_ratio outside (0,1)");
  if (data.source == DataConfig::Source::csv && data.csv_path.empty())
    throw Error("config: data source is csv but csv_path is empty");
  ngn.validate();
  if (boost.n_rounds < 1) throw Error("config: boost n_rounds must be >= 1");
  pso.validate();
  if (tune.tune_rounds < 1) throw Error("config: tune_rounds must be >= 1");
  if (grid.workers < 0) throw Error("config: workers must be >= 0");
}

std::string ExperimentConfig::canonical_text() const {
  std::ostringstream out;
  out << "[data]\n";
  out << "source = " << (data.source == DataConfig::Source::synth ? "synth" : "csv") << '\n';
  out << "csv_path = " << data.csv_path << '\n';
  out << "synth_n = " << data.synth_n << '\n';
  out << "synth_d = " << data.synth_d << '\n';
  out << "synth_k = " << data.synth_k << '\n';
  out << "synth_separation = " << format_double(data.synth_separation) << '\n';
  out << "synth_seed = " << data.synth_seed << '\n';
  out << "[split]\n";
  out << "train_ratio = " << format_double(split.train_ratio) << '\n';
  out << "stratified = " << (split.stratified ? "true" : "false") << '\n';
  out << "standardize_scope = "
      << (standardize_scope == StandardizeScope::train_only ? "train_only" : "full") << '\n';
  out << "[grid]\n";
  out << "seeds = ";
  for (std::size_t i = 0; i < grid.seeds.size(); ++i)
    out << (i ? "," : "") << grid.seeds[i];
  out << '\n';
  out << "fractions = ";
  for (std::size_t i = 0; i < grid.fractions.size(); ++i)
    out << (i ? "," : "") << format_double(grid.fractions[i]);
  out << '\n';
  out << "classifiers = ";
  for (std::size_t i = 0; i < grid.classifiers.size(); ++i)
    out << (i ? "," : "") << classifier_name(grid.classifiers[i]);
  out << '\n';
  out << "selectors = ";
  for (std::size_t i = 0; i < grid.selectors.size(); ++i)
    out << (i ? "," : "") << selector_name(grid.selectors[i]);
  out << '\n';
  out << "workers = " << grid.workers << '\n';
  out << "[ngn]\n";
  out << "n_neurons = " << ngn.n_neurons << '\n';
  out << "eps_initial = " << format_double(ngn.eps_initial) << '\n';
  out << "eps_final = " << format_double(ngn.eps_final) << '\n';
  out << "lambda_initial = " << format_double(ngn.lambda_initial) << '\n';
  out << "lambda_final = " << format_double(ngn.lambda_final) << '\n';
  out << "t_max = " << ngn.t_max << '\n';
  out << "[fuzzy]\n";
  out << "mode = " << (fuzzy_mode == FuzzyMode::replace ? "replace" : "augment") << '\n';
  out << "[boost]\n";
  out << "max_depth = " << boost.max_depth << '\n';
  out << "learning_rate = " << format_double(boost.learning_rate) << '\n';
  out << "n_rounds = " << boost.n_rounds << '\n';
  out << "reg_lambda = " << format_double(boost.reg_lambda) << '\n';
  out << "min_child_weight = " << format_double(boost.min_child_weight) << '\n';
  out << "gamma_min_gain = " << format_double(boost.gamma_min_gain) << '\n';
  out << "[pso]\n";
  out << "swarm_size = " << pso.swarm_size << '\n';
  out << "max_iters = " << pso.max_iters << '\n';
  out << "inertia = " << format_double(pso.inertia) << '\n';
  out << "cognitive = " << format_double(pso.cognitive) << '\n';
  out << "social = " << format_double(pso.social) << '\n';
  out << "tune_rounds = " << tune.tune_rounds << '\n';
  out << "inner_ratio = " << format_double(tune.inner_ratio) << '\n';
  out << "objective_scope = "
      << (tune.scope == TuneObjectiveScope::inner_val ? "inner_val" : "train") << '\n';
  out << "[lasso]\n";
  out << "lambda_l1 = " << format_double(lasso.lambda_l1) << '\n';
  out << "max_sweeps = " << lasso.max_sweeps << '\n';
  out << "[lr]\n";
  out << "step_size = " << format_double(lr.step_size) << '\n';
  out << "iterations = " << lr.iterations << '\n';
  out << "l2 = " << format_double(lr.l2) << '\n';
  out << "[cart]\n";
  out << "max_depth = " << cart.max_depth << '\n';
  out << "min_samples_split = " << cart.min_samples_split << '\n';
  return out.str();
}

std::uint64_t ExperimentConfig::hash() const {
  return hash_string(canonical_text());
}

std::string ExperimentConfig::hash_tag() const {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = hash();
  std::string tag(8, '0');
  for (int i = 7; i >= 0; --i) {
    tag[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return tag;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_text(buffer.str());
}

ExperimentConfig ExperimentConfig::from_text(const std::string& text) {
  ExperimentConfig cfg;
  auto sections = parse_sections(text);
  for (const auto& [section, entries] : sections) {
    for (const auto& [key, value] : entries) {
      const std::string where = section.empty() ? key : section + "." + key;
      if (section == "data") {
        if (key == "source") {
          if (value == "synth") cfg.data.source = DataConfig::Source::synth;
          else if (value == "csv") cfg.data.source = DataConfig::Source::csv;
          else throw Error("config key 'data.source': unknown value '" + value + "'");
        } else if (key == "csv_path") cfg.data.csv_path = value;
        else if (key == "synth_n") cfg.data.synth_n = to_long(where, value);
        else if (key == "synth_d") cfg.data.synth_d = to_long(where, value);
        else if (key == "synth_k") cfg.data.synth_k = static_cast<int>(to_long(where, value));
        else if (key == "synth_separation") cfg.data.synth_separation = to_double(where, value);
        else if (key == "synth_seed") cfg.data.synth_seed = to_u64(where, value);
        else throw Error("config: unknown key '" + where + "'");
      } else if (section == "split") {
        if (key == "train_ratio") cfg.split.train_ratio = to_double(where, value);
        else if (key == "stratified") cfg.split.stratified = to_bool(where, value);
        else if (key == "standardize_scope") {
          if (value == "train_only") cfg.standardize_scope = StandardizeScope::train_only;
          else if (value == "full") cfg.standardize_scope = StandardizeScope::full;
          else throw Error("config key 'split.standardize_scope': unknown value '" + value + "'");
        } else throw Error("config: unknown key '" + where + "'");
      } else if (section == "grid") {
        if (key == "seeds") {
          cfg.grid.seeds.clear();
          for (const auto& item : split_list(value))
            cfg.grid.seeds.push_back(to_u64(where, item));
        } else if (key == "fractions") {
          cfg.grid.fractions.clear();
          for (const auto& item : split_list(value))
            cfg.grid.fractions.push_back(to_double(where, item));
        } else if (key == "classifiers") {
          cfg.grid.classifiers.clear();
          for (const auto& item : split_list(value))
            cfg.grid.classifiers.push_back(classifier_from_name(item));
        } else if (key == "selectors") {
          cfg.grid.selectors.clear();
          for (const auto& item : split_list(value))
            cfg.grid.selectors.push_back(selector_from_name(item));
        } else if (key == "workers") cfg.grid.workers = static_cast<int>(to_long(where, value));
        else throw Error("config: unknown key '" + where + "'");
      } else if (section == "ngn") {
        if (key == "n_neurons") cfg.ngn.n_neurons = static_cast<int>(to_long(where, value));
        else if (key == "eps_initial") cfg.ngn.eps_initial = to_double(where, value);
        else if (key == "eps_final") cfg.ngn.eps_final = to_double(where, value);
        else if (key == "lambda_initial") cfg.ngn.lambda_initial = to_double(where, value);
        else if (key == "lambda_final") cfg.ngn.lambda_final = to_double(where, value);
        else if (key == "t_max") cfg.ngn.t_max = to_long(where, value);
        else throw Error("config: unknown key '" + where + "'");
      } else if (section == "fuzzy") {
        if (key == "mode") {
          if (value == "replace") cfg.fuzzy_mode = FuzzyMode::replace;
          else if (value == "augment") cfg.fuzzy_mode = FuzzyMode::augment;
          else throw Error("config key 'fuzzy.mode': unknown value '" + value + "'");
        } else throw Error("config: unknown key '" + where + "'");
      } else if (section == "boost") {
        if (key == "max_depth") cfg.boost.max_depth = static_cast<int>(to_long(where, value));
        else if (key == "learning_rate") cfg.boost.learning_rate = to_double(where, value);
        else if (key == "n_rounds") cfg.boost.n_rounds = static_cast<int>(to_long(where, value));
        else if (key == "reg_lambda") cfg.boost.reg_lambda = to_double(where, value);
        else if (key == "min_child_weight") cfg.boost.min_child_weight = to_double(where, value);
        else if (key == "gamma_min_gain") cfg.boost.gamma_min_gain = to_double(where, value);
        else throw Error("config: unknown key '" + where + "'");
      } else if (section == "pso") {
        if (key == "swarm_size") cfg.pso.swarm_size = static_cast<int>(to_long(where, value));
        else if (key == "max_iters") cfg.pso.max_iters = static_cast<int>(to_long(where, value));
        else if (key == "inertia") cfg.pso.inertia = to_double(where, value);
        else if (key == "cognitive") cfg.pso.cognitive = to_double(where, value);
        else if (key == "social") cfg.pso.social = to_double(where, value);
        else if (key == "tune_rounds") cfg.tune.tune_rounds = static_cast<int>(to_long(where, value));
        else if (key == "inner_ratio") cfg.tune.inner_ratio = to_double(where, value);
        else if (key == "objective_scope") {
          if (value == "inner_val") cfg.tune.scope = TuneObjectiveScope::inner_val;
          else if (value == "train") cfg.tune.scope = TuneObjectiveScope::train;
          else throw Error("config key 'pso.objective_scope': unknown value '" + value + "'");
        } else throw Error("config: unknown key '" + where + "'");
      } else if (section == "lasso") {
        if (key == "lambda_l1") cfg.lasso.lambda_l1 = to_double(where, value);
        else if (key == "max_sweeps") cfg.lasso.max_sweeps = static_cast<int>(to_long(where, value));
        else throw Error("config: unknown key '" + where + "'");
      } else if (section == "lr") {
        if (key == "step_size") cfg.lr.step_size = to_double(where, value);
        else if (key == "iterations") cfg.lr.iterations = static_cast<int>(to_long(where, value));
        else if (key == "l2") cfg.lr.l2 = to_double(where, value);
        else throw Error("config: unknown key '" + where + "'");
      } else if (section == "cart") {
        if (key == "max_depth") cfg.cart.max_depth = static_cast<int>(to_long(where, value));
        else if (key == "min_samples_split") cfg.cart.min_samples_split = static_cast<int>(to_long(where, value));
        else throw Error("config: unknown key '" + where + "'");
      } else {
        throw Error("config: unknown section '" + section + "'");
      }
    }
  }
  cfg.validate();
  return cfg;
}

}  // namespace gasboost
