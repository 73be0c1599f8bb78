#include "bgkpml/frank.hpp"

#include <cmath>
#include <stdexcept>

namespace bgkpml {

namespace {

// i^(m mod 4) with exact sign bookkeeping; sampling-based extraction of
// Q0/Q1 would be much worse conditioned.
inline Complex unit_power(int m) {
  switch (((m % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

CfExpansion frank_cf(const ComplexPoly& q_in, double drop_tol_rel) {
  ComplexPoly q = q_in;
  q.trim(drop_tol_rel * q.max_abs_coeff());
  const int n = q.degree();
  if (n < 1)
    throw std::invalid_argument("frank_cf: polynomial degree must be >= 1");

  // Rotating q by a unimodular constant leaves its roots untouched but makes
  // the leading coefficient real and positive, which guarantees
  // deg Q0 = n and deg Q1 <= n-1 so the expansion can start.
  const Complex lead = q.lead();
  q = q.scaled(std::conj(lead) / std::abs(lead));

  // q(iD) = i^n (Q0(D) + i Q1(D))  =>  Q0 + i Q1 = sum_m q_m i^(m-n) D^m.
  RealPoly q0, q1;
  q0.coeff.resize(n + 1);
  q1.coeff.resize(n + 1);
  for (int m = 0; m <= n; ++m) {
    const Complex w = q.coeff[m] * unit_power(m - n);
    q0.coeff[m] = w.real();
    q1.coeff[m] = w.imag();
  }
  const double scale0 = std::max(q0.max_abs_coeff(), q1.max_abs_coeff());
  q0.trim(drop_tol_rel * scale0);
  q1.trim(drop_tol_rel * scale0);

  CfExpansion cf;
  cf.n = n;

  // Euclidean division chain R_{j-1} = (c_j D + d_j) R_j - R_{j+1}.
  //
  // Remainders shrink or grow by orders of magnitude along the chain, which
  // would quickly drown genuine low-order remainders in the drop tolerance.
  // Each remainder is therefore renormalized to unit max-coefficient;
  // positive rescalings multiply the partial quotients by positive factors,
  // so the sign pattern is untouched, and the accumulated scales are undone
  // when the true (c_j, d_j) are recorded.
  RealPoly prev = q0, cur = q1;
  double gamma_prev = prev.max_abs_coeff();
  for (double& c : prev.coeff) c /= gamma_prev;
  double gamma_cur = cur.is_zero() ? 1.0 : cur.max_abs_coeff();
  for (double& c : cur.coeff) c /= gamma_cur;

  while (true) {
    if (cur.is_zero()) {
      cf.n_r = static_cast<int>(cf.steps.size());
      return cf;
    }
    const int dp = prev.degree(), dc = cur.degree();
    if (dp - dc != 1) {
      // A degree gap means the partial quotient cannot be linear; the chain
      // does not exist in this form (roots on or numerically near the
      // imaginary axis, or an exactly degenerate configuration).
      cf.undefined = true;
      cf.n_r = static_cast<int>(cf.steps.size());
      return cf;
    }

    const double c_hat = prev.lead() / cur.lead();
    // T = prev - c_hat * (D * cur); the z^dp coefficients cancel by the
    // choice of c_hat, so only indices 0..dc are stored.
    RealPoly t;
    t.coeff.assign(dp, 0.0);
    for (int m = 0; m < dp; ++m) t.coeff[m] = prev.coeff[m];
    for (int m = 0; m < dc; ++m) t.coeff[m + 1] -= c_hat * cur.coeff[m];

    const double d_hat = t.coeff[dc] / cur.lead();
    // next = (c_hat D + d_hat) cur - prev = d_hat * cur - T.
    RealPoly next;
    next.coeff.assign(dc + 1, 0.0);
    for (int m = 0; m <= dc; ++m)
      next.coeff[m] = d_hat * cur.coeff[m] - t.coeff[m];

    // Cancellation noise floor of the subtraction above.
    const double noise = std::max({std::abs(c_hat), std::abs(d_hat), 1.0});
    next.trim(drop_tol_rel * noise);

    cf.steps.push_back({c_hat * gamma_prev / gamma_cur,
                        d_hat * gamma_prev / gamma_cur});

    const double gamma_next =
        next.is_zero() ? 1.0 : gamma_prev * next.max_abs_coeff();
    if (!next.is_zero()) {
      const double s = next.max_abs_coeff();
      for (double& c : next.coeff) c /= s;
    }
    prev = std::move(cur);
    gamma_prev = gamma_cur;
    cur = std::move(next);
    gamma_cur = gamma_next;

    if (static_cast<int>(cf.steps.size()) > n) {
      cf.undefined = true;  // cannot happen with consistent degrees
      cf.n_r = n;
      return cf;
    }
  }
}

}  // namespace bgkpml
