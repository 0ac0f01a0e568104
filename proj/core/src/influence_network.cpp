#include "flipin/influence_network.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>

namespace flipin {

namespace {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::string NetworkSpec::label(std::size_t n) const {
  if (n < ids.size()) return ids[n];
  return std::to_string(n + 1);
}

NetworkSpec NetworkSpec::from_rows(const std::vector<std::vector<double>>& rows, double eta) {
  NetworkSpec spec;
  spec.node_count = rows.size();
  spec.eta = eta;
  spec.weights.reserve(rows.size() * rows.size());
  for (const auto& row : rows) {
    if (row.size() != rows.size()) throw NetworkError("weight matrix is not square");
    spec.weights.insert(spec.weights.end(), row.begin(), row.end());
  }
  return spec;
}

NetworkSpec NetworkSpec::unconnected(std::size_t n, double eta) {
  NetworkSpec spec;
  spec.node_count = n;
  spec.eta = eta;
  spec.weights.assign(n * n, 0.0);
  return spec;
}

std::vector<ValidationIssue> validate_network(const NetworkSpec& spec) {
  std::vector<ValidationIssue> issues;
  const std::size_t n = spec.node_count;

  if (n == 0) {
    issues.push_back({NetworkRule::Shape, 0, "network has no nodes"});
    return issues;
  }
  if (spec.weights.size() != n * n) {
    issues.push_back({NetworkRule::Shape, 0,
                      "weight matrix has " + std::to_string(spec.weights.size()) +
                          " entries, expected " + std::to_string(n * n)});
    return issues;
  }
  if (!spec.ids.empty() && spec.ids.size() != n) {
    issues.push_back({NetworkRule::Shape, 0, "id list length does not match node count"});
  }
  if (!(spec.eta >= 0.0 && spec.eta < 1.0)) {
    issues.push_back({NetworkRule::Eta, 0, "eta = " + format_number(spec.eta) + " outside [0, 1)"});
  }

  bool any_edge = false;
  std::vector<double> row_sums(n, 0.0);
  std::vector<bool> row_zero(n, true);
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t k = 0; k < n; ++k) {
      const double w = spec.weight(m, k);
      if (!(w >= 0.0 && w <= 1.0)) {
        issues.push_back({NetworkRule::WeightRange, m,
                          "w_" + spec.label(m) + spec.label(k) + " = " + format_number(w) +
                              " outside [0, 1] (node " + spec.label(m) + ")"});
      }
      if (w != 0.0) {
        row_zero[m] = false;
        any_edge = true;
      }
      row_sums[m] += w;
    }
    if (spec.weight(m, m) != 0.0) {
      issues.push_back({NetworkRule::Diagonal, m,
                        "w_" + spec.label(m) + spec.label(m) + " ≠ 0 (node " + spec.label(m) +
                            ")"});
    }
  }

  if (!any_edge) return issues;  // unconnected network

  for (std::size_t m = 0; m < n; ++m) {
    if (row_zero[m]) {
      issues.push_back({NetworkRule::PartialSink, m,
                        "row " + spec.label(m) +
                            " is all-zero but the network has edges (node " + spec.label(m) +
                            ")"});
    } else if (std::abs(row_sums[m] - 1.0) > kRowSumSlack) {
      issues.push_back({NetworkRule::RowSum, m,
                        "row " + spec.label(m) + " sums to " + format_number(row_sums[m])});
    }
  }
  return issues;
}

InfluenceKernel::InfluenceKernel(std::size_t n, std::vector<double> entries, double eta)
    : n_(n), entries_(std::move(entries)), eta_(eta) {
  if (entries_.size() != n_ * n_) throw std::invalid_argument("kernel entries are not N x N");
}

InfluenceKernel InfluenceKernel::identity(std::size_t n) {
  std::vector<double> e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return InfluenceKernel(n, std::move(e), 0.0);
}

double InfluenceKernel::row_sum(std::size_t n) const {
  double s = 0.0;
  for (std::size_t m = 0; m < n_; ++m) s += (*this)(n, m);
  return s;
}

double InfluenceKernel::column_sum(std::size_t m) const {
  double s = 0.0;
  for (std::size_t n = 0; n < n_; ++n) s += (*this)(n, m);
  return s;
}

InfluenceKernel compute_kernel(const NetworkSpec& spec) {
  if (auto issues = validate_network(spec); !issues.empty()) {
    std::string msg = "invalid network:";
    for (const auto& i : issues) msg += " " + i.message + ";";
    throw NetworkError(msg);
  }

  const auto n = static_cast<Eigen::Index>(spec.node_count);
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index k = 0; k < n; ++k) {
      // (I - eta W^T)_{k,m} = delta_km - eta w_mk
      a(k, m) -= spec.eta * spec.weight(static_cast<std::size_t>(m), static_cast<std::size_t>(k));
    }
  }

  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) throw SingularKernelError("I - eta W^T is singular");
  const Eigen::MatrixXd inv = lu.inverse();

  std::vector<double> entries(spec.node_count * spec.node_count);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      entries[static_cast<std::size_t>(r * n + c)] = inv(r, c);
  return InfluenceKernel(spec.node_count, std::move(entries), spec.eta);
}

std::vector<double> risk_levels(const InfluenceKernel& kernel, std::span<const double> alphas) {
  if (alphas.size() != kernel.size()) {
    throw std::invalid_argument("risk_levels: expected " + std::to_string(kernel.size()) +
                                " alphas, got " + std::to_string(alphas.size()));
  }
  for (double a : alphas) {
    if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("risk_levels: alpha outside [0, 1]");
  }
  std::vector<double> r(kernel.size(), 0.0);
  for (std::size_t n = 0; n < kernel.size(); ++n) {
    double acc = 0.0;
    for (std::size_t m = 0; m < kernel.size(); ++m) acc += kernel(n, m) * alphas[m];
    r[n] = acc;
  }
  return r;
}

}  // namespace flipin
