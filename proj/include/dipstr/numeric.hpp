#pragma once

#include <Eigen/Core>

#include <cmath>
#include <limits>

namespace dipstr {

template <typename Scalar>
using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

using ArrayXd = Array<double>;

template <typename Scalar = double>
constexpr Scalar neg_inf() {
  return -std::numeric_limits<Scalar>::infinity();
}

// log(exp(a) + exp(b))
template <typename Scalar>
Scalar log_add(Scalar a, Scalar b) {
  if (a == neg_inf<Scalar>()) return b;
  if (b == neg_inf<Scalar>()) return a;
  const Scalar hi = a < b ? b : a;
  const Scalar lo = a < b ? a : b;
  return hi + std::log1p(std::exp(lo - hi));
}

// log(sum(exp(v))); -inf on empty or all-(-inf) input
template <typename Derived>
typename Derived::Scalar log_sum_exp(const Eigen::ArrayBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  if (v.size() == 0) return neg_inf<Scalar>();
  const Scalar hi = v.maxCoeff();
  if (!(hi > neg_inf<Scalar>())) return hi;
  return hi + std::log((v - hi).exp().sum());
}

// log C(n, r) via lgamma; stays finite for very large n
template <typename Scalar = double>
Scalar log_choose(long n, long r) {
  if (r < 0 || r > n) return neg_inf<Scalar>();
  return std::lgamma(Scalar(n + 1)) - std::lgamma(Scalar(r + 1)) -
         std::lgamma(Scalar(n - r + 1));
}

}  // namespace dipstr
