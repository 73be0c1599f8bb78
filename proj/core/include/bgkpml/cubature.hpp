#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bgkpml {

/// Gauss-Legendre nodes and weights mapped to [0,1], with the weights
/// normalized to a probability measure (they sum to one), so cubature of a
/// function is its mean over the unit interval. Exact for polynomials of
/// degree <= 2n-1.
struct GaussLegendre {
  int n = 0;
  std::vector<double> node;
  std::vector<double> weight;

  static GaussLegendre make(int n);
};

/// Axis-aligned parameter box with named coordinates and the affine map to
/// the unit hypercube.
struct ParameterBox {
  struct Interval {
    std::string name;
    double lo = 0.0;
    double hi = 1.0;
  };
  std::vector<Interval> dims;

  int p() const { return static_cast<int>(dims.size()); }

  void validate() const {
    if (dims.empty()) throw std::invalid_argument("ParameterBox: empty");
    for (const auto& d : dims)
      if (!(d.lo < d.hi))
        throw std::invalid_argument("ParameterBox: lo < hi violated for " +
                                    d.name);
  }

  int index_of(const std::string& name) const {
    for (int i = 0; i < p(); ++i)
      if (dims[i].name == name) return i;
    return -1;
  }

  std::vector<double> to_physical(const std::vector<double>& unit) const {
    std::vector<double> x(unit.size());
    for (std::size_t i = 0; i < unit.size(); ++i)
      x[i] = dims[i].lo + (dims[i].hi - dims[i].lo) * unit[i];
    return x;
  }

  std::vector<double> to_unit(const std::vector<double>& phys) const {
    std::vector<double> u(phys.size());
    for (std::size_t i = 0; i < phys.size(); ++i)
      u[i] = (phys[i] - dims[i].lo) / (dims[i].hi - dims[i].lo);
    return u;
  }
};

/// Full tensor rule (G_n)^p: the same 1D Gauss-Legendre rule in every
/// coordinate. Nodes are enumerated lexicographically, last coordinate
/// fastest.
struct CubatureRule {
  int n = 0;
  int p = 0;
  GaussLegendre g1d;

  static CubatureRule make(int n, int p);

  std::size_t total() const {
    std::size_t t = 1;
    for (int i = 0; i < p; ++i) t *= static_cast<std::size_t>(n);
    return t;
  }

  void decode(std::size_t flat, int* mi) const {
    for (int d = p - 1; d >= 0; --d) {
      mi[d] = static_cast<int>(flat % n);
      flat /= n;
    }
  }

  double weight(const int* mi) const {
    double w = 1.0;
    for (int d = 0; d < p; ++d) w *= g1d.weight[mi[d]];
    return w;
  }

  void unit_point(const int* mi, double* x) const {
    for (int d = 0; d < p; ++d) x[d] = g1d.node[mi[d]];
  }

  std::string label() const {
    return "(G" + std::to_string(n) + ")^" + std::to_string(p);
  }
};

}  // namespace bgkpml
