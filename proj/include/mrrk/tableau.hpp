#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace mrrk {

/// Parses a coefficient token, either a rational "p/q" or a decimal literal.
/// Rationals are divided in extended precision before rounding to double.
inline double parse_coefficient(const std::string& tok) {
  auto slash = tok.find('/');
  if (slash == std::string::npos) {
    size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("bad coefficient: " + tok);
    return v;
  }
  long double num = std::stold(tok.substr(0, slash));
  long double den = std::stold(tok.substr(slash + 1));
  if (den == 0.0L) throw std::invalid_argument("zero denominator: " + tok);
  return static_cast<double>(num / den);
}

inline std::string format_coefficient(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

struct ButcherTableau {
  std::string name;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  int stated_order = 0;

  int stage_count() const { return static_cast<int>(b.size()); }

  bool is_explicit() const {
    for (int i = 0; i < A.rows(); ++i)
      for (int j = i; j < A.cols(); ++j)
        if (A(i, j) != 0.0) return false;
    return true;
  }

  /// ||c - A e||_inf; the abscissae assumption baked into every method here.
  double abscissae_residual() const {
    return (c - A * Eigen::VectorXd::Ones(A.cols())).lpNorm<Eigen::Infinity>();
  }

  double weight_sum() const { return b.sum(); }
};

/// A family of RK methods sharing (A, c) and differing only in weights.
/// `orders` holds the validated order of each weight vector; `declared_rank`
/// is the rank of the weight stack (weights.size() unless the family is
/// structurally degenerate).
struct EmbeddedSet {
  std::string name;
  Eigen::MatrixXd A;
  Eigen::VectorXd c;
  std::vector<Eigen::VectorXd> weights;
  std::vector<int> orders;
  int declared_rank = -1;

  int stage_count() const { return static_cast<int>(c.size()); }
  int count() const { return static_cast<int>(weights.size()); }

  int p_min() const {
    int p = orders.empty() ? 0 : orders.front();
    for (int o : orders) p = std::min(p, o);
    return p;
  }

  int expected_rank() const { return declared_rank >= 0 ? declared_rank : count(); }

  ButcherTableau method(int k) const {
    return ButcherTableau{name + "[b" + std::to_string(k + 1) + "]", A, weights.at(k), c,
                          orders.at(k)};
  }
};

/// Additive pair in the Kennedy-Carpenter layout: an explicit part and an
/// ESDIRK implicit part with identical abscissae and shared weight vectors.
struct ArkPair {
  std::string name;
  Eigen::MatrixXd A_explicit;
  Eigen::MatrixXd A_implicit;
  Eigen::VectorXd c;
  std::vector<Eigen::VectorXd> weights;
  std::vector<int> orders;

  int stage_count() const { return static_cast<int>(c.size()); }
  int count() const { return static_cast<int>(weights.size()); }

  ButcherTableau explicit_part() const {
    return ButcherTableau{name + " (ERK)", A_explicit, weights.at(0), c, orders.at(0)};
  }
  ButcherTableau implicit_part() const {
    return ButcherTableau{name + " (ESDIRK)", A_implicit, weights.at(0), c, orders.at(0)};
  }

  /// Diagonal entry of the implicit part (equal for stages i >= 2).
  double esdirk_diagonal() const { return A_implicit(1, 1); }

  /// View of the explicit half as an embedded set; relaxation directions for
  /// IMEX stepping share the weight vectors across both parts.
  EmbeddedSet as_embedded_set() const {
    return EmbeddedSet{name, A_explicit, c, weights, orders, -1};
  }
};

using Method = std::variant<EmbeddedSet, ArkPair>;

// ---------------------------------------------------------------------------
// Coefficient data files: one method per file, header lines, then rows of A
// (two blocks for additive pairs), then one "b" row per weight vector, then c.
// Values are decimal strings with >= 17 significant digits or rationals "p/q".
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::string> tokens(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

inline Eigen::VectorXd parse_row(const std::vector<std::string>& toks, size_t from, int n,
                                 const std::string& what) {
  if (static_cast<int>(toks.size() - from) != n)
    throw std::runtime_error("expected " + std::to_string(n) + " values in " + what);
  Eigen::VectorXd v(n);
  for (int j = 0; j < n; ++j) v[j] = parse_coefficient(toks[from + j]);
  return v;
}

}  // namespace detail

inline Method read_method(std::istream& in) {
  std::string name, line;
  int stages = 0, nweights = 0, rank = -1;
  bool ark = false;
  std::vector<int> orders;
  Eigen::MatrixXd A_e, A_i;
  std::vector<Eigen::VectorXd> weights;
  Eigen::VectorXd c;

  auto read_matrix = [&](Eigen::MatrixXd& M) {
    M.resize(stages, stages);
    for (int i = 0; i < stages; ++i) {
      if (!std::getline(in, line)) throw std::runtime_error("truncated A block");
      auto toks = detail::tokens(line);
      M.row(i) = detail::parse_row(toks, 0, stages, "A row").transpose();
    }
  };

  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto toks = detail::tokens(line);
    const std::string& key = toks[0];
    if (key == "method") {
      name = line.substr(line.find(' ') + 1);
    } else if (key == "type") {
      ark = toks.at(1) == "ark";
    } else if (key == "stages") {
      stages = std::stoi(toks.at(1));
    } else if (key == "weights") {
      nweights = std::stoi(toks.at(1));
    } else if (key == "rank") {
      rank = std::stoi(toks.at(1));
    } else if (key == "orders") {
      for (size_t i = 1; i < toks.size(); ++i) orders.push_back(std::stoi(toks[i]));
    } else if (key == "A") {
      if (stages <= 0) throw std::runtime_error("A block before stages header");
      if (toks.size() > 1 && toks[1] == "implicit")
        read_matrix(A_i);
      else
        read_matrix(A_e);
    } else if (key == "b") {
      weights.push_back(detail::parse_row(toks, 1, stages, "b row"));
    } else if (key == "c") {
      c = detail::parse_row(toks, 1, stages, "c row");
    } else {
      throw std::runtime_error("unknown key in method file: " + key);
    }
  }
  if (name.empty() || stages == 0 || weights.empty() || c.size() != stages)
    throw std::runtime_error("incomplete method file");
  if (static_cast<int>(weights.size()) != nweights)
    throw std::runtime_error("weight count mismatch in " + name);
  if (orders.size() != weights.size())
    throw std::runtime_error("orders/weights mismatch in " + name);

  if (ark) {
    if (A_i.size() == 0) throw std::runtime_error("ark method missing implicit A");
    return ArkPair{name, A_e, A_i, c, weights, orders};
  }
  return EmbeddedSet{name, A_e, c, weights, orders, rank};
}

inline void write_method(std::ostream& out, const Method& m) {
  auto write_common = [&](const std::string& name, const Eigen::VectorXd& c,
                          const std::vector<Eigen::VectorXd>& ws, const std::vector<int>& orders,
                          int rank, bool ark) {
    out << "method " << name << "\n";
    if (ark) out << "type ark\n";
    out << "stages " << c.size() << "\n";
    out << "weights " << ws.size() << "\n";
    out << "orders";
    for (int o : orders) out << ' ' << o;
    out << "\n";
    if (rank >= 0) out << "rank " << rank << "\n";
  };
  auto write_matrix = [&](const Eigen::MatrixXd& A, const char* tag) {
    out << "A" << (tag ? std::string(" ") + tag : "") << "\n";
    for (int i = 0; i < A.rows(); ++i) {
      for (int j = 0; j < A.cols(); ++j) out << (j ? " " : "") << format_coefficient(A(i, j));
      out << "\n";
    }
  };
  auto write_tail = [&](const std::vector<Eigen::VectorXd>& ws, const Eigen::VectorXd& c) {
    for (const auto& w : ws) {
      out << "b";
      for (int j = 0; j < w.size(); ++j) out << ' ' << format_coefficient(w[j]);
      out << "\n";
    }
    out << "c";
    for (int j = 0; j < c.size(); ++j) out << ' ' << format_coefficient(c[j]);
    out << "\n";
  };

  if (std::holds_alternative<EmbeddedSet>(m)) {
    const auto& s = std::get<EmbeddedSet>(m);
    write_common(s.name, s.c, s.weights, s.orders, s.declared_rank, false);
    write_matrix(s.A, nullptr);
    write_tail(s.weights, s.c);
  } else {
    const auto& p = std::get<ArkPair>(m);
    write_common(p.name, p.c, p.weights, p.orders, -1, true);
    write_matrix(p.A_explicit, "explicit");
    write_matrix(p.A_implicit, "implicit");
    write_tail(p.weights, p.c);
  }
}

inline Method parse_method(const std::string& text) {
  std::istringstream is(text);
  return read_method(is);
}

}  // namespace mrrk
