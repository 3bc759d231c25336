#include "graphon/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "graphon/errors.hpp"
#include "graphon/version.hpp"

namespace graphon {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open for writing: " + path);
  return out;
}

long long parse_label(const std::string& token, int line_no) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(token, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used != token.size())
    throw InputError("non-integer node label '" + token + "' at line " + std::to_string(line_no));
  return v;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return buf;
}

AdjacencyMatrix ingest_edge_list(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open edge list: " + path);

  std::vector<long long> labels;
  std::map<long long, int> index;
  const auto node_index = [&](long long label) {
    auto it = index.find(label);
    if (it != index.end()) return it->second;
    const int idx = static_cast<int>(labels.size());
    labels.push_back(label);
    index.emplace(label, idx);
    return idx;
  };

  std::set<std::pair<int, int>> edges;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string a, b;
    if (!(ss >> a)) continue;  // blank line
    if (a[0] == '#') continue;
    std::string extra;
    if (!(ss >> b) || (ss >> extra))
      throw InputError("expected two node labels at line " + std::to_string(line_no));
    const long long la = parse_label(a, line_no);
    const long long lb = parse_label(b, line_no);
    const int ia = node_index(la);
    const int ib = node_index(lb);
    if (ia == ib) {
      if (warnings != nullptr)
        warnings->push_back("self-loop '" + a + " " + b + "' at line " +
                            std::to_string(line_no) + " dropped");
      continue;
    }
    edges.emplace(std::min(ia, ib), std::max(ia, ib));
  }

  const int n = static_cast<int>(labels.size());
  if (n == 0) throw InputError("edge list is empty: " + path);
  if (n < 2) throw InputError("edge list names fewer than 2 nodes: " + path);

  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [i, j] : edges) {
    y(i, j) = 1.0;
    y(j, i) = 1.0;
  }
  return AdjacencyMatrix(std::move(y), std::move(labels));
}

void write_edge_list(const std::string& path, const AdjacencyMatrix& y) {
  std::ofstream out = open_out(path);
  const auto& labels = y.labels();
  for (int i = 0; i < y.n(); ++i)
    for (int j = i + 1; j < y.n(); ++j)
      if (y(i, j) != 0.0)
        out << labels[static_cast<std::size_t>(i)] << ' ' << labels[static_cast<std::size_t>(j)]
            << '\n';
}

void write_label_map(const std::string& path, const AdjacencyMatrix& y) {
  std::ofstream out = open_out(path);
  out << "index,label\n";
  for (int i = 0; i < y.n(); ++i) out << i << ',' << y.labels()[static_cast<std::size_t>(i)] << '\n';
}

void write_result(const std::string& path, const ResultDocument& doc) {
  nlohmann::ordered_json j;
  j["theta"] = std::vector<double>(doc.theta.data(), doc.theta.data() + doc.theta.size());
  j["K"] = doc.K;
  j["lambda"] = doc.lambda;
  j["aic_c"] = doc.aic_c;
  j["df"] = doc.df;
  j["log_lik"] = doc.log_lik;
  j["u_hat"] = std::vector<double>(doc.u_hat.data(), doc.u_hat.data() + doc.u_hat.size());
  j["seed"] = doc.seed;
  j["version"] = doc.version.empty() ? kVersion : doc.version;
  j["config"] = doc.config;
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
}

ResultDocument read_result(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open result document: " + path);
  nlohmann::ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("malformed result document " + path + ": " + e.what());
  }
  ResultDocument doc;
  try {
    const auto theta = j.at("theta").get<std::vector<double>>();
    doc.theta = Eigen::Map<const Eigen::VectorXd>(theta.data(), static_cast<Eigen::Index>(theta.size()));
    doc.K = j.at("K").get<int>();
    doc.lambda = j.at("lambda").get<double>();
    doc.aic_c = j.at("aic_c").get<double>();
    doc.df = j.at("df").get<double>();
    doc.log_lik = j.at("log_lik").get<double>();
    const auto u = j.at("u_hat").get<std::vector<double>>();
    doc.u_hat = Eigen::Map<const Eigen::VectorXd>(u.data(), static_cast<Eigen::Index>(u.size()));
    doc.seed = j.at("seed").get<std::uint64_t>();
    doc.version = j.at("version").get<std::string>();
    if (j.contains("config")) doc.config = j.at("config");
  } catch (const nlohmann::json::exception& e) {
    throw InputError("result document " + path + " missing fields: " + e.what());
  }
  return doc;
}

SplineGraphon result_graphon(const ResultDocument& doc) {
  return SplineGraphon(make_knots(doc.K), doc.theta);
}

void write_surface_csv(const std::string& path, const Graphon& w, int grid_size) {
  std::ofstream out = open_out(path);
  out << "u,v,w\n";
  const Eigen::VectorXd grid = linspace01(grid_size);
  for (int i = 0; i < grid_size; ++i)
    for (int j = 0; j < grid_size; ++j)
      out << format_double(grid[i]) << ',' << format_double(grid[j]) << ','
          << format_double(w.value(grid[i], grid[j])) << '\n';
}

void write_profile_csv(const std::string& path, const Graphon& w, int grid_size) {
  std::ofstream out = open_out(path);
  out << "u,g\n";
  const Eigen::VectorXd grid = linspace01(grid_size);
  for (int i = 0; i < grid_size; ++i)
    out << format_double(grid[i]) << ',' << format_double(marginal(w, grid[i])) << '\n';
}

void write_density_csv(const std::string& path, const DensityOnGrid& d) {
  std::ofstream out = open_out(path);
  out << "u,density\n";
  for (Eigen::Index i = 0; i < d.grid.size(); ++i)
    out << format_double(d.grid[i]) << ',' << format_double(d.values[i]) << '\n';
}

void write_latent_csv(const std::string& path, const Eigen::VectorXd& u,
                      const std::vector<long long>& labels) {
  std::ofstream out = open_out(path);
  out << "node,u\n";
  for (Eigen::Index i = 0; i < u.size(); ++i)
    out << labels[static_cast<std::size_t>(i)] << ',' << format_double(u[i]) << '\n';
}

}  // namespace graphon
