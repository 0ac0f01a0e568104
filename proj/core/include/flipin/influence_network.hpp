#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace flipin {

/// Elementwise tolerance for structural kernel identities.
inline constexpr double kStructuralTolerance = 1e-10;
/// Slack allowed when checking that a weight row sums to one.
inline constexpr double kRowSumSlack = 1e-12;

/// Directed influence graph with global discount ratio.
///
/// `weights` is row-major N x N; `weight(m, n)` is the influence of node m
/// on node n. `ids` are optional display labels (defaults to "1".."N").
struct NetworkSpec {
  std::size_t node_count = 0;
  std::vector<double> weights;
  double eta = 0.0;
  std::vector<std::string> ids;

  double weight(std::size_t m, std::size_t n) const { return weights[m * node_count + n]; }
  double& weight(std::size_t m, std::size_t n) { return weights[m * node_count + n]; }

  std::string label(std::size_t n) const;

  /// Build from nested rows; rows must be square.
  static NetworkSpec from_rows(const std::vector<std::vector<double>>& rows, double eta);
  /// N isolated nodes (all-zero weight matrix).
  static NetworkSpec unconnected(std::size_t n, double eta = 0.0);
};

enum class NetworkRule {
  Shape,
  Eta,
  WeightRange,
  Diagonal,
  RowSum,
  PartialSink,
};

struct ValidationIssue {
  NetworkRule rule;
  std::size_t node;  // zero-based row/node index; 0 for global rules
  std::string message;
};

/// Reports every violated NetworkSpec rule. An empty result means valid.
std::vector<ValidationIssue> validate_network(const NetworkSpec& spec);

class NetworkError : public std::invalid_argument {
 public:
  explicit NetworkError(const std::string& what) : std::invalid_argument(what) {}
};

class SingularKernelError : public std::runtime_error {
 public:
  explicit SingularKernelError(const std::string& what) : std::runtime_error(what) {}
};

/// The risk-propagation kernel (I - eta W^T)^{-1}.
class InfluenceKernel {
 public:
  InfluenceKernel() = default;
  InfluenceKernel(std::size_t n, std::vector<double> entries, double eta);

  /// Identity kernel for N isolated nodes.
  static InfluenceKernel identity(std::size_t n);

  std::size_t size() const { return n_; }
  double eta() const { return eta_; }
  double operator()(std::size_t n, std::size_t m) const { return entries_[n * n_ + m]; }
  const std::vector<double>& entries() const { return entries_; }

  double row_sum(std::size_t n) const;
  double column_sum(std::size_t m) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
  double eta_ = 0.0;
};

/// Throws NetworkError listing all violations when the network is invalid.
InfluenceKernel compute_kernel(const NetworkSpec& spec);

/// R_n = sum_m w*_nm alpha_m.
std::vector<double> risk_levels(const InfluenceKernel& kernel, std::span<const double> alphas);

}  // namespace flipin
