#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vendor_json.hpp"

#include "graphon/bspline.hpp"
#include "graphon/types.hpp"

namespace graphon {

// Reads "<label> <label>" per line; '#' comment lines are skipped, duplicate
// edges collapse, self-loops are dropped with a warning.  Nodes are
// relabeled densely in first-appearance order.
AdjacencyMatrix ingest_edge_list(const std::string& path,
                                 std::vector<std::string>* warnings = nullptr);

void write_edge_list(const std::string& path, const AdjacencyMatrix& y);
void write_label_map(const std::string& path, const AdjacencyMatrix& y);

// The JSON result document every estimation command emits.
struct ResultDocument {
  Eigen::VectorXd theta;  // row-major, length K^2
  int K = 0;
  double lambda = 0.0;
  double aic_c = 0.0;
  double df = 0.0;
  double log_lik = 0.0;
  Eigen::VectorXd u_hat;  // ordered by node
  std::uint64_t seed = 0;
  std::string version;
  nlohmann::ordered_json config;
};

void write_result(const std::string& path, const ResultDocument& doc);
ResultDocument read_result(const std::string& path);

SplineGraphon result_graphon(const ResultDocument& doc);

// Plot-ready CSV dumps, >= 12 significant digits.
void write_surface_csv(const std::string& path, const Graphon& w, int grid_size = 101);
void write_profile_csv(const std::string& path, const Graphon& w, int grid_size = 201);
void write_density_csv(const std::string& path, const DensityOnGrid& d);
void write_latent_csv(const std::string& path, const Eigen::VectorXd& u,
                      const std::vector<long long>& labels);

std::string format_double(double x);

}  // namespace graphon
