#include "bgkpml/anova.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <thread>

namespace bgkpml {

EvalTable make_eval_table(const ParameterBox& box, const CubatureRule& rule) {
  box.validate();
  if (box.p() != rule.p)
    throw std::invalid_argument("make_eval_table: box/rule dimension mismatch");
  EvalTable t;
  t.box = box;
  t.rule = rule;
  t.value.assign(rule.total(), 0.0);
  t.status.assign(rule.total(), NodeStatus::pending);
  t.error.assign(rule.total(), {});
  return t;
}

void evaluate_on_grid(EvalTable& table, const Functional& f, int workers) {
  evaluate_on_grid(
      table,
      IndexedFunctional(
          [&f](std::size_t, const std::vector<double>& x) { return f(x); }),
      workers);
}

void evaluate_on_grid(EvalTable& table, const IndexedFunctional& f,
                      int workers) {
  const std::size_t total = table.rule.total();
  const int p = table.rule.p;

  auto eval_one = [&](std::size_t idx) {
    std::vector<int> mi(p);
    std::vector<double> unit(p), phys(p);
    table.rule.decode(idx, mi.data());
    table.rule.unit_point(mi.data(), unit.data());
    phys = table.box.to_physical(unit);
    try {
      table.value[idx] = f(idx, phys);
      table.status[idx] = NodeStatus::ok;
    } catch (const std::exception& e) {
      table.status[idx] = NodeStatus::failed;
      table.error[idx] = e.what();
    }
  };

  if (workers <= 1) {
    for (std::size_t idx = 0; idx < total; ++idx)
      if (table.status[idx] == NodeStatus::pending) eval_one(idx);
    return;
  }

  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= total) return;
      if (table.status[idx] == NodeStatus::pending) eval_one(idx);
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();
}

namespace {

// Flat index into the subgrid of subset `mask` given the full multi-index.
std::size_t subset_index(unsigned mask, const int* mi, int p, int n) {
  std::size_t idx = 0;
  for (int d = 0; d < p; ++d)
    if (mask & (1u << d)) idx = idx * n + mi[d];
  return idx;
}

std::size_t subset_size(unsigned mask, int n) {
  std::size_t s = 1;
  for (int c = std::popcount(mask); c > 0; --c) s *= n;
  return s;
}

}  // namespace

AnovaDecomposition anova_terms(const EvalTable& table, int order) {
  if (auto bad = table.failed_nodes(); !bad.empty())
    throw PoisonedNodesError(std::move(bad));
  if (table.count(NodeStatus::pending) > 0)
    throw std::invalid_argument("anova_terms: evaluation table incomplete");

  const int p = table.rule.p;
  const int n = table.rule.n;
  const std::size_t total = table.rule.total();
  order = std::min(order, p);

  AnovaDecomposition dec;
  dec.box = table.box;
  dec.rule = table.rule;
  dec.order = order;

  std::vector<int> mi(p);

  // g0: full-tensor mean.
  double g0 = 0.0;
  for (std::size_t idx = 0; idx < total; ++idx) {
    table.rule.decode(idx, mi.data());
    g0 += table.rule.weight(mi.data()) * table.value[idx];
  }
  dec.g0 = g0;

  // Terms by increasing order so every strict subset is available when the
  // projection recursion needs it. Reserve up front: by_mask stores raw
  // pointers into dec.terms.
  dec.terms.reserve(1u << p);
  std::vector<const AnovaTerm*> by_mask(1u << p, nullptr);
  for (int t = 1; t <= order; ++t) {
    for (unsigned mask = 1; mask < (1u << p); ++mask) {
      if (std::popcount(mask) != t) continue;

      AnovaTerm term;
      term.mask = mask;
      term.order = t;
      term.value.assign(subset_size(mask, n), 0.0);

      // Complement-coordinate contraction of the evaluation table.
      for (std::size_t idx = 0; idx < total; ++idx) {
        table.rule.decode(idx, mi.data());
        double w = 1.0;
        for (int d = 0; d < p; ++d)
          if (!(mask & (1u << d))) w *= table.rule.g1d.weight[mi[d]];
        term.value[subset_index(mask, mi.data(), p, n)] +=
            w * table.value[idx];
      }

      // Subtract the mean and every strict-subset term, restricted to the
      // subgrid coordinates.
      std::vector<int> smi(t);
      for (std::size_t sidx = 0; sidx < term.value.size(); ++sidx) {
        std::size_t rem = sidx;
        for (int d = t - 1; d >= 0; --d) {
          smi[d] = static_cast<int>(rem % n);
          rem /= n;
        }
        // expand subgrid index back to per-coordinate indices
        std::vector<int> full(p, 0);
        int c = 0;
        for (int d = 0; d < p; ++d)
          if (mask & (1u << d)) full[d] = smi[c++];

        double v = term.value[sidx] - g0;
        for (unsigned sub = (mask - 1) & mask; sub != 0;
             sub = (sub - 1) & mask) {
          const AnovaTerm* st = by_mask[sub];
          v -= st->value[subset_index(sub, full.data(), p, n)];
        }
        term.value[sidx] = v;
      }

      // V_T: cubature of g_T^2 over the subset coordinates.
      double vt = 0.0;
      for (std::size_t sidx = 0; sidx < term.value.size(); ++sidx) {
        std::size_t rem = sidx;
        double w = 1.0;
        for (int d = t - 1; d >= 0; --d) {
          w *= table.rule.g1d.weight[rem % n];
          rem /= n;
        }
        vt += w * term.value[sidx] * term.value[sidx];
      }
      term.variance = vt;
      dec.total_variance += vt;

      dec.terms.push_back(std::move(term));
      by_mask[mask] = &dec.terms.back();
    }
  }

  return dec;
}

VarianceReport variances(const AnovaDecomposition& dec) {
  VarianceReport r;
  for (const auto& t : dec.terms) r.by_subset.emplace_back(t.mask, t.variance);
  r.total = dec.total_variance;
  return r;
}

std::vector<double> tsi(const AnovaDecomposition& dec) {
  // Round-off turns an exactly constant functional into a tiny positive
  // variance; treat anything at that level as degenerate.
  const double floor = 1e-28 * (1.0 + dec.g0 * dec.g0);
  if (!(dec.total_variance > floor))
    throw std::domain_error("tsi: total variance is zero");
  std::vector<double> out(dec.box.p(), 0.0);
  for (const auto& t : dec.terms)
    for (int d = 0; d < dec.box.p(); ++d)
      if (t.mask & (1u << d)) out[d] += t.variance;
  for (double& v : out) v /= dec.total_variance;
  return out;
}

namespace {

// Barycentric weights for polynomial interpolation on the 1D rule nodes.
std::vector<double> barycentric_weights(const std::vector<double>& x) {
  std::vector<double> w(x.size(), 1.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (i != j) w[i] /= (x[i] - x[j]);
  return w;
}

}  // namespace

TruncatedEval truncated_eval(const AnovaDecomposition& dec,
                             const std::vector<double>& alpha_physical,
                             int r) {
  const int p = dec.box.p();
  const int n = dec.rule.n;
  if (static_cast<int>(alpha_physical.size()) != p)
    throw std::invalid_argument("truncated_eval: wrong point dimension");
  r = std::min(r, dec.order);

  const std::vector<double> unit = dec.box.to_unit(alpha_physical);
  for (double u : unit)
    if (u < -1e-12 || u > 1.0 + 1e-12)
      throw std::domain_error("truncated_eval: point outside the box");

  const std::vector<double>& nodes = dec.rule.g1d.node;
  const std::vector<double> bary = barycentric_weights(nodes);

  // Per-coordinate Lagrange cardinal values at the query point.
  std::vector<std::vector<double>> card(p, std::vector<double>(n, 0.0));
  for (int d = 0; d < p; ++d) {
    int hit = -1;
    for (int k = 0; k < n; ++k)
      if (unit[d] == nodes[k]) hit = k;
    if (hit >= 0) {
      card[d][hit] = 1.0;
      continue;
    }
    double denom = 0.0;
    for (int k = 0; k < n; ++k) {
      card[d][k] = bary[k] / (unit[d] - nodes[k]);
      denom += card[d][k];
    }
    for (int k = 0; k < n; ++k) card[d][k] /= denom;
  }

  TruncatedEval out;
  out.value = dec.g0;
  double captured = 0.0;
  for (const auto& term : dec.terms) {
    if (term.order > r) continue;
    captured += term.variance;

    // tensor-product interpolation of g_T at the query coordinates
    std::vector<int> coords;
    for (int d = 0; d < p; ++d)
      if (term.mask & (1u << d)) coords.push_back(d);

    double acc = 0.0;
    std::vector<int> smi(term.order, 0);
    for (std::size_t sidx = 0; sidx < term.value.size(); ++sidx) {
      std::size_t rem = sidx;
      double w = 1.0;
      for (int d = term.order - 1; d >= 0; --d) {
        smi[d] = static_cast<int>(rem % n);
        rem /= n;
      }
      for (int d = 0; d < term.order; ++d) w *= card[coords[d]][smi[d]];
      acc += w * term.value[sidx];
    }
    out.value += acc;
  }
  out.captured_proportion =
      dec.total_variance > 0 ? captured / dec.total_variance : 0.0;
  return out;
}

int superposition_dimension(const AnovaDecomposition& dec, double q) {
  if (!(dec.total_variance > 0))
    throw std::domain_error("superposition_dimension: total variance is zero");
  double captured = 0.0;
  for (int r = 1; r <= dec.box.p(); ++r) {
    for (const auto& t : dec.terms)
      if (t.order == r) captured += t.variance;
    if (captured >= q * dec.total_variance) return r;
  }
  return dec.box.p();
}

}  // namespace bgkpml
