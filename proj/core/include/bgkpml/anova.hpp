#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bgkpml/cubature.hpp"

namespace bgkpml {

/// Black-box functional evaluated at physical parameter coordinates.
using Functional = std::function<double(const std::vector<double>&)>;

/// Variant that also receives the flat node index (useful when one solver
/// run feeds several tables).
using IndexedFunctional =
    std::function<double(std::size_t, const std::vector<double>&)>;

enum class NodeStatus : std::uint8_t { pending = 0, ok = 1, failed = 2 };

/// One functional evaluation per tensor node, reused by every projection
/// integral of the decomposition. Failed evaluations poison the node but do
/// not abort the sweep; the decomposition refuses to build while poisoned
/// nodes remain.
struct EvalTable {
  ParameterBox box;
  CubatureRule rule;
  std::vector<double> value;
  std::vector<NodeStatus> status;
  std::vector<std::string> error;

  std::size_t count(NodeStatus s) const {
    std::size_t c = 0;
    for (auto v : status) c += (v == s);
    return c;
  }
  std::vector<std::size_t> failed_nodes() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < status.size(); ++i)
      if (status[i] == NodeStatus::failed) out.push_back(i);
    return out;
  }
};

EvalTable make_eval_table(const ParameterBox& box, const CubatureRule& rule);

/// Evaluates f at every node still pending. Workers > 1 evaluates nodes
/// concurrently; results are keyed by node index so the table contents are
/// identical for any worker count. Exceptions from f mark the node failed.
void evaluate_on_grid(EvalTable& table, const Functional& f, int workers = 1);
void evaluate_on_grid(EvalTable& table, const IndexedFunctional& f,
                      int workers = 1);

struct PoisonedNodesError : std::runtime_error {
  explicit PoisonedNodesError(std::vector<std::size_t> n)
      : std::runtime_error("decomposition aborted: poisoned nodes"),
        nodes(std::move(n)) {}
  std::vector<std::size_t> nodes;
};

/// One projection term g_T, tabulated on the |T|-dimensional subgrid of the
/// tensor nodes (lexicographic over the coordinates in T, ascending).
struct AnovaTerm {
  unsigned mask = 0;
  int order = 0;
  std::vector<double> value;
  double variance = 0.0;
};

struct AnovaDecomposition {
  ParameterBox box;
  CubatureRule rule;
  int order = 0;  // highest term order retained
  double g0 = 0.0;
  std::vector<AnovaTerm> terms;  // sorted by (order, mask)
  double total_variance = 0.0;   // over the retained terms

  const AnovaTerm* find(unsigned mask) const {
    for (const auto& t : terms)
      if (t.mask == mask) return &t;
    return nullptr;
  }
};

/// Builds all terms of order <= r from a complete evaluation table using the
/// projection recursion: the complement-coordinate cubature of f minus every
/// strict-subset term and the mean.
AnovaDecomposition anova_terms(const EvalTable& table, int order);

struct VarianceReport {
  std::vector<std::pair<unsigned, double>> by_subset;
  double total = 0.0;
};

VarianceReport variances(const AnovaDecomposition& dec);

/// Total sensitivity index per coordinate: sum of V_T/V over subsets T
/// containing the coordinate. Requires r = p (all terms) for exact values.
std::vector<double> tsi(const AnovaDecomposition& dec);

struct TruncatedEval {
  double value = 0.0;
  double captured_proportion = 0.0;  // sum of V_T, order <= r, over V
};

/// Evaluates the order-r truncation at an arbitrary point of the box via
/// per-coordinate barycentric interpolation between node values. Points
/// outside the box are rejected.
TruncatedEval truncated_eval(const AnovaDecomposition& dec,
                             const std::vector<double>& alpha_physical, int r);

/// Smallest r such that the terms of order <= r capture at least proportion
/// q of the total variance.
int superposition_dimension(const AnovaDecomposition& dec, double q);

}  // namespace bgkpml
