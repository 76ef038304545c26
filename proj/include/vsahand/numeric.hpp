/*
 * Copyright 2026 The vsahand Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
*/

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include "vsahand/errors.hpp"

namespace vsahand::numeric {

/// Bisection on a sign-changing bracket [lo, hi]. Stops when |f| <= f_tol or the
/// bracket is narrower than x_tol. Returns nullopt when f(lo) and f(hi) share a sign.
template <typename F>
std::optional<double> bisect(F&& f, double lo, double hi, double f_tol, double x_tol = 0.0,
                             int max_iter = 400) {
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (std::abs(f_lo) <= f_tol) return lo;
  if (std::abs(f_hi) <= f_tol) return hi;
  if ((f_lo < 0.0) == (f_hi < 0.0)) return std::nullopt;
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if (std::abs(f_mid) <= f_tol || (hi - lo) <= x_tol || mid == lo || mid == hi) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Centered finite difference.
template <typename F>
double central_difference(F&& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline bool close_rel(double a, double b, double rel, double abs_floor = 0.0) {
  return std::abs(a - b) <= std::max(abs_floor, rel * std::max(std::abs(a), std::abs(b)));
}

}  // namespace vsahand::numeric
