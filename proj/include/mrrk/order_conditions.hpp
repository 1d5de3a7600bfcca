#pragma once

#include "mrrk/tableau.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace mrrk {

/// Rooted tree for the classical order conditions. The empty child list is
/// the single-node tree tau.
struct RootedTree {
  std::vector<RootedTree> children;

  int order() const {
    int n = 1;
    for (const auto& c : children) n += c.order();
    return n;
  }

  long density() const {
    long d = order();
    for (const auto& c : children) d *= c.density();
    return d;
  }

  std::string key() const {
    std::vector<std::string> ks;
    for (const auto& c : children) ks.push_back(c.key());
    std::sort(ks.begin(), ks.end());
    std::string out = "(";
    for (const auto& k : ks) out += k;
    return out + ")";
  }
};

namespace detail {

inline void partitions(int n, int maxpart, std::vector<int>& cur,
                       std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(n, maxpart); k >= 1; --k) {
    cur.push_back(k);
    partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}

inline const std::vector<RootedTree>& trees_of_order(int n);

inline std::vector<RootedTree> build_trees(int n) {
  if (n == 1) return {RootedTree{}};
  std::vector<std::vector<int>> parts;
  std::vector<int> cur;
  partitions(n - 1, n - 1, cur, parts);
  std::map<std::string, RootedTree> unique;
  for (const auto& part : parts) {
    // choose one child tree per part entry, over all combinations
    std::vector<size_t> idx(part.size(), 0);
    while (true) {
      RootedTree t;
      for (size_t i = 0; i < part.size(); ++i) t.children.push_back(trees_of_order(part[i])[idx[i]]);
      unique.emplace(t.key(), t);
      size_t i = 0;
      for (; i < part.size(); ++i) {
        if (++idx[i] < trees_of_order(part[i]).size()) break;
        idx[i] = 0;
      }
      if (i == part.size()) break;
    }
  }
  std::vector<RootedTree> out;
  for (auto& [k, t] : unique) out.push_back(t);
  return out;
}

inline const std::vector<RootedTree>& trees_of_order(int n) {
  static std::map<int, std::vector<RootedTree>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_trees(n)).first;
  return it->second;
}

}  // namespace detail

inline std::vector<RootedTree> rooted_trees_of_order(int n) { return detail::trees_of_order(n); }

/// Elementary weight vector phi(t): phi(tau) = e, phi([t1..tk]) = prod A phi(ti).
inline Eigen::VectorXd elementary_weights(const RootedTree& t, const Eigen::MatrixXd& A) {
  Eigen::VectorXd v = Eigen::VectorXd::Ones(A.rows());
  for (const auto& c : t.children) v = v.cwiseProduct(A * elementary_weights(c, A));
  return v;
}

/// Largest q <= up_to such that b'phi(t) = 1/density(t) holds for every rooted
/// tree of order <= q, to the given tolerance. Conditions through order 5 only.
inline int verify_order(const ButcherTableau& tab, int up_to, double tol = 1e-12) {
  if (up_to > 5) throw std::invalid_argument("order conditions implemented through order 5");
  int q = 0;
  for (int n = 1; n <= up_to; ++n) {
    for (const auto& t : detail::trees_of_order(n)) {
      double lhs = tab.b.dot(elementary_weights(t, tab.A));
      if (std::abs(lhs - 1.0 / static_cast<double>(t.density())) > tol) return q;
    }
    q = n;
  }
  return q;
}

struct SetValidation {
  double abscissae_residual = 0.0;
  int weight_rank = 0;
  double sigma_min = 0.0;  // smallest singular value of the row-normalized stack
  std::vector<int> verified_orders;
  bool pass = false;
  std::vector<std::string> failures;
};

/// Reports c = A e residual, weight-stack rank, and the verified order of each
/// weight vector. Passes iff the rank equals the set's expected rank and every
/// verified order reaches the stated one. Reports findings, never throws.
inline SetValidation check_embedded_set(const EmbeddedSet& set, double order_tol = 1e-12) {
  SetValidation v;
  v.abscissae_residual =
      (set.c - set.A * Eigen::VectorXd::Ones(set.stage_count())).lpNorm<Eigen::Infinity>();

  Eigen::MatrixXd stack(set.count(), set.stage_count());
  for (int k = 0; k < set.count(); ++k) stack.row(k) = set.weights[k].normalized().transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stack);
  v.sigma_min = svd.singularValues().minCoeff();
  v.weight_rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > 1e-10) ++v.weight_rank;

  for (int k = 0; k < set.count(); ++k) {
    int up_to = std::min(5, set.orders[k] + 1);
    v.verified_orders.push_back(verify_order(set.method(k), up_to, order_tol));
  }

  v.pass = true;
  if (v.abscissae_residual > 1e-14) {
    v.pass = false;
    v.failures.push_back("abscissae residual " + std::to_string(v.abscissae_residual));
  }
  if (v.weight_rank != set.expected_rank()) {
    v.pass = false;
    v.failures.push_back("weight rank " + std::to_string(v.weight_rank) + " != expected " +
                         std::to_string(set.expected_rank()));
  }
  for (int k = 0; k < set.count(); ++k) {
    if (v.verified_orders[k] < set.orders[k]) {
      v.pass = false;
      v.failures.push_back("b" + std::to_string(k + 1) + " verified order " +
                           std::to_string(v.verified_orders[k]) + " < stated " +
                           std::to_string(set.orders[k]));
    }
  }
  return v;
}

}  // namespace mrrk
