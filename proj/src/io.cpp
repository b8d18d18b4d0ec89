#include "qgossip/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qgossip::io {

namespace {

struct SpecParser {
  const std::string& text;
  std::size_t pos = 0;

  explicit SpecParser(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("init spec error at position " + std::to_string(pos) + ": " + what);
  }

  std::vector<QubitState> parse_list() {
    std::vector<QubitState> out;
    while (true) {
      auto item = parse_item();
      out.insert(out.end(), item.begin(), item.end());
      if (!eat(',')) break;
    }
    return out;
  }

  std::vector<QubitState> parse_item() {
    skip_ws();
    if (pos >= text.size()) fail("expected a state");
    const char c = text[pos];
    if (c == '(') {
      ++pos;
      auto inner = parse_list();
      if (!eat(')')) fail("expected ')'");
      skip_ws();
      if (pos < text.size() && (text[pos] == 'x' || text[pos] == 'X')) {
        ++pos;
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected a repeat count after 'x'");
        const long repeat = std::stol(text.substr(start, pos - start));
        if (repeat < 1) fail("repeat count must be positive");
        std::vector<QubitState> expanded;
        expanded.reserve(inner.size() * static_cast<std::size_t>(repeat));
        for (long r = 0; r < repeat; ++r)
          expanded.insert(expanded.end(), inner.begin(), inner.end());
        return expanded;
      }
      return inner;
    }
    ++pos;
    switch (c) {
      case '0': return {standard_state(StandardState::ket0)};
      case '1': return {standard_state(StandardState::ket1)};
      case '+': return {standard_state(StandardState::plus)};
      case '-': return {standard_state(StandardState::minus)};
      default: fail(std::string("unknown state '") + c + "'");
    }
  }
};

std::vector<int> edge_from_one_based(const json& arr) {
  std::vector<int> edge;
  for (const auto& v : arr) edge.push_back(v.get<int>() - 1);
  return edge;
}

json edge_to_one_based(const std::vector<int>& edge) {
  json arr = json::array();
  for (int v : edge) arr.push_back(v + 1);
  return arr;
}

}  // namespace

std::vector<QubitState> parse_init_spec(const std::string& spec) {
  SpecParser parser(spec);
  auto out = parser.parse_list();
  parser.skip_ws();
  if (parser.pos != spec.size()) parser.fail("trailing characters");
  if (out.empty()) parser.fail("empty spec");
  return out;
}

GeneralizedGraph graph_from_json(const json& j) {
  const std::string err = check_graph_json(j);
  if (!err.empty()) throw std::invalid_argument("graph json: " + err);
  std::vector<std::vector<int>> edges;
  for (const auto& e : j.at("edges")) edges.push_back(edge_from_one_based(e));
  return GeneralizedGraph(j.at("n").get<int>(), std::move(edges));
}

json graph_to_json(const GeneralizedGraph& g) {
  json j;
  j["n"] = g.node_count();
  j["edges"] = json::array();
  for (const auto& e : g.edges()) j["edges"].push_back(edge_to_one_based(e));
  return j;
}

GeneralizedGraph load_graph(const std::string& path) {
  return graph_from_json(json::parse(read_file(path)));
}

Schedule schedule_from_json(const json& j) {
  const std::string err = check_schedule_json(j);
  if (!err.empty()) throw std::invalid_argument("schedule json: " + err);
  const int n = j.at("n").get<int>();
  if (j.at("mode") == "deterministic") {
    std::vector<ScheduleItem> items;
    for (const auto& item : j.at("items")) {
      ScheduleItem si;
      si.edge = edge_from_one_based(item.at("edge"));
      si.cycle_index = item.value("cycle_index", std::int64_t{0});
      items.push_back(std::move(si));
    }
    return Schedule::deterministic(n, std::move(items));
  }
  return Schedule::random(n, j.at("k").get<int>(), j.at("seed").get<std::uint64_t>());
}

json schedule_to_json(const Schedule& s) {
  json j;
  j["n"] = s.n;
  if (s.mode == Schedule::Mode::deterministic) {
    j["mode"] = "deterministic";
    j["items"] = json::array();
    for (const auto& item : s.items) {
      json ji;
      ji["edge"] = edge_to_one_based(item.edge);
      ji["cycle_index"] = item.cycle_index;
      j["items"].push_back(std::move(ji));
    }
  } else {
    j["mode"] = "random";
    j["k"] = s.k;
    j["seed"] = s.seed;
  }
  return j;
}

Schedule load_schedule(const std::string& path) {
  return schedule_from_json(json::parse(read_file(path)));
}

json permutation_to_json(const Permutation& p) {
  return json(p.one_based_images());
}

json finite_time_report_to_json(const FiniteTimeReport& report) {
  json j;
  j["n"] = report.n;
  j["k"] = report.k;
  j["feasible"] = report.feasible;
  if (report.feasible) j["T"] = report.steps;
  auto factors = [](const std::vector<std::pair<std::int64_t, int>>& fs) {
    json arr = json::array();
    for (const auto& [p, e] : fs) arr.push_back(json::array({p, e}));
    return arr;
  };
  j["factor_table"] = {{"n", factors(report.n_factors)}, {"k", factors(report.k_factors)}};
  return j;
}

json rate_report_to_json(const RateReport& report) {
  json j;
  j["n"] = report.n;
  j["k"] = report.k;
  j["nu_reduced"] = report.nu_reduced_value;
  if (report.nu_star_value) {
    j["nu_star"] = *report.nu_star_value;
    j["nu_star_degenerate"] = report.nu_star_degenerate;
  }
  if (!report.nu_star_note.empty()) j["nu_star_note"] = report.nu_star_note;
  if (!report.eigenvalue_table.empty()) {
    json table = json::array();
    for (const auto& entry : report.eigenvalue_table)
      table.push_back({{"magnitude", entry.magnitude}, {"multiplicity", entry.multiplicity}});
    j["eigenvalue_table"] = std::move(table);
  }
  if (report.fitted_slope) j["fitted_slope"] = *report.fitted_slope;
  if (!report.series.t.empty()) {
    json series = json::array();
    for (std::size_t i = 0; i < report.series.size(); ++i)
      series.push_back(json::array({report.series.t[i], report.series.value[i]}));
    j["series"] = std::move(series);
  }
  return j;
}

json density_to_json(const DensityMatrix& rho, bool full_entries) {
  json j;
  j["n"] = rho.num_qubits();
  j["trace"] = rho.matrix().trace().real();
  j["purity"] = rho.purity();
  if (full_entries) {
    const auto& m = rho.matrix();
    json real_rows = json::array(), imag_rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      json re = json::array(), im = json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        re.push_back(m(r, c).real());
        im.push_back(m(r, c).imag());
      }
      real_rows.push_back(std::move(re));
      imag_rows.push_back(std::move(im));
    }
    j["real"] = std::move(real_rows);
    j["imag"] = std::move(imag_rows);
  } else {
    json reduced = json::array();
    for (int q = 0; q < rho.num_qubits(); ++q) {
      const QubitState s = partial_trace_qubit(rho, q);
      json entry;
      entry["qubit"] = q + 1;
      entry["real"] = {{s(0, 0).real(), s(0, 1).real()}, {s(1, 0).real(), s(1, 1).real()}};
      entry["imag"] = {{s(0, 0).imag(), s(0, 1).imag()}, {s(1, 0).imag(), s(1, 1).imag()}};
      reduced.push_back(std::move(entry));
    }
    j["reduced_states"] = std::move(reduced);
  }
  return j;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string series_to_csv(const Series& series) {
  std::ostringstream os;
  os << "t,value,stderr\n";
  for (std::size_t i = 0; i < series.size(); ++i)
    os << series.t[i] << ',' << format_double(series.value[i]) << ','
       << format_double(series.stderr_[i]) << '\n';
  return os.str();
}

std::string trajectories_to_csv(const std::string& metric,
                                const std::vector<Trajectory>& per_trial) {
  std::ostringstream os;
  os << "t,metric,value,trial\n";
  for (std::size_t trial = 0; trial < per_trial.size(); ++trial) {
    const auto& traj = per_trial[trial];
    for (std::size_t i = 0; i < traj.steps.size(); ++i)
      os << traj.steps[i] << ',' << metric << ',' << format_double(traj.values[i]) << ','
         << trial << '\n';
  }
  return os.str();
}

std::string eigenvalue_table_to_csv(const std::vector<EigenvalueEntry>& table) {
  std::ostringstream os;
  os << "magnitude,multiplicity\n";
  for (const auto& entry : table)
    os << format_double(entry.magnitude) << ',' << entry.multiplicity << '\n';
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

namespace {

std::string check_edge_array(const json& e, const char* what) {
  if (!e.is_array() || e.size() < 2) return std::string(what) + " must be an array of >= 2 nodes";
  for (const auto& v : e)
    if (!v.is_number_integer() || v.get<int>() < 1)
      return std::string(what) + " nodes must be integers >= 1 (1-based)";
  return {};
}

}  // namespace

std::string check_graph_json(const json& j) {
  if (!j.is_object()) return "top level must be an object";
  if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<int>() < 1)
    return "missing or invalid 'n'";
  if (!j.contains("edges") || !j["edges"].is_array()) return "missing or invalid 'edges'";
  const int n = j["n"].get<int>();
  for (const auto& e : j["edges"]) {
    auto err = check_edge_array(e, "edge");
    if (!err.empty()) return err;
    for (const auto& v : e)
      if (v.get<int>() > n) return "edge node exceeds n";
  }
  return {};
}

std::string check_schedule_json(const json& j) {
  if (!j.is_object()) return "top level must be an object";
  if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<int>() < 1)
    return "missing or invalid 'n'";
  if (!j.contains("mode") || !j["mode"].is_string()) return "missing 'mode'";
  const std::string mode = j["mode"].get<std::string>();
  if (mode == "deterministic") {
    if (!j.contains("items") || !j["items"].is_array() || j["items"].empty())
      return "deterministic schedule needs a non-empty 'items' array";
    for (const auto& item : j["items"]) {
      if (!item.is_object() || !item.contains("edge")) return "item missing 'edge'";
      auto err = check_edge_array(item["edge"], "item edge");
      if (!err.empty()) return err;
      if (item.contains("cycle_index") &&
          (!item["cycle_index"].is_number_integer() || item["cycle_index"].get<int>() < 0))
        return "cycle_index must be a non-negative integer";
    }
    return {};
  }
  if (mode == "random") {
    if (!j.contains("k") || !j["k"].is_number_integer() || j["k"].get<int>() < 2)
      return "random schedule needs integer 'k' >= 2";
    if (!j.contains("seed") || !j["seed"].is_number_integer() ||
        (!j["seed"].is_number_unsigned() && j["seed"].get<std::int64_t>() < 0))
      return "random schedule needs a non-negative integer 'seed'";
    return {};
  }
  return "mode must be 'deterministic' or 'random'";
}

std::string check_rate_report_json(const json& j) {
  if (!j.is_object()) return "top level must be an object";
  for (const char* key : {"n", "k"})
    if (!j.contains(key) || !j[key].is_number_integer()) return std::string("missing integer '") + key + "'";
  if (!j.contains("nu_reduced") || !j["nu_reduced"].is_number()) return "missing 'nu_reduced'";
  if (j.contains("eigenvalue_table")) {
    if (!j["eigenvalue_table"].is_array()) return "'eigenvalue_table' must be an array";
    double prev = 1e300;
    for (const auto& entry : j["eigenvalue_table"]) {
      if (!entry.contains("magnitude") || !entry.contains("multiplicity"))
        return "eigenvalue entries need 'magnitude' and 'multiplicity'";
      const double mag = entry["magnitude"].get<double>();
      if (mag > prev) return "eigenvalue magnitudes must be sorted descending";
      prev = mag;
    }
  }
  return {};
}

std::string check_finite_time_json(const json& j) {
  if (!j.is_object()) return "top level must be an object";
  for (const char* key : {"n", "k"})
    if (!j.contains(key) || !j[key].is_number_integer()) return std::string("missing integer '") + key + "'";
  if (!j.contains("feasible") || !j["feasible"].is_boolean()) return "missing boolean 'feasible'";
  if (j["feasible"].get<bool>() && (!j.contains("T") || !j["T"].is_number_integer()))
    return "feasible report needs integer 'T'";
  if (!j.contains("factor_table")) return "missing 'factor_table'";
  return {};
}

namespace {

std::string check_csv(const std::string& text, const std::string& header, int columns) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) return "empty file";
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) return "header must be '" + header + "'";
  std::size_t row = 1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    int commas = 0;
    for (char c : line) commas += (c == ',');
    if (commas != columns - 1)
      return "row " + std::to_string(row) + " has " + std::to_string(commas + 1) +
             " columns, expected " + std::to_string(columns);
    ++row;
  }
  return {};
}

}  // namespace

std::string check_series_csv(const std::string& text) {
  return check_csv(text, "t,value,stderr", 3);
}

std::string check_trajectory_csv(const std::string& text) {
  return check_csv(text, "t,metric,value,trial", 4);
}

std::string check_eigenvalue_csv(const std::string& text) {
  return check_csv(text, "magnitude,multiplicity", 2);
}

}  // namespace qgossip::io
