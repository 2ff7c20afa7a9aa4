#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace stl2vec {

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

/// Row-major numeric CSV with an optional header line.
void save_matrix_csv(const std::string& path, const Eigen::MatrixXd& m,
                     const std::vector<std::string>& header = {});
Eigen::MatrixXd load_matrix_csv(const std::string& path, bool has_header);

/// Embeddings CSV: header formula_index,c1,...,cd.
void save_embedding_csv(const std::string& path, const Eigen::MatrixXd& coords);
Eigen::MatrixXd load_embedding_csv(const std::string& path);

/// FNV-1a over the raw bytes of a file, rendered as 16 hex digits.
std::string file_hash(const std::string& path);

/// One manifest per output directory: the command, effective config, seed,
/// and input hashes needed to reproduce the run bitwise.
struct RunManifest {
  std::string command;
  nlohmann::json config;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> input_hashes;   // path -> FNV-1a
  std::map<std::string, std::string> output_hashes;  // filename -> FNV-1a
  std::string version;
  std::string timestamp;
};

void save_manifest(const std::string& path, const RunManifest& m);
RunManifest load_manifest(const std::string& path);

}  // namespace stl2vec
