// Copyright (c) 2026 the hetnet-meta authors.
// SPDX-License-Identifier: Apache-2.0
#ifndef HETMETA_QUADRATURE_HPP
#define HETMETA_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

// Globally adaptive Gauss-Kronrod 7-15 quadrature over a finite interval,
// templated on the integrand's value type (double or std::complex<double>).
// Callers map infinite tails onto finite intervals themselves; helpers for
// the transforms this project needs live with their users.
namespace hetmeta::quad {

struct Tolerance {
  double rel = 1e-8;
  double abs = 1e-12;
  // Subdivision budget: at most 2^max_depth segments in the work list.
  int max_depth = 14;
};

template <class T>
struct IntegralResult {
  T value{};
  double abs_error = 0.0;  // estimated, not a strict bound
  long n_evals = 0;
  bool converged = false;
};

namespace detail {

// Abscissae/weights of the 15-point Kronrod rule and the embedded 7-point
// Gauss rule on [-1, 1], positive half (QUADPACK dqk15).
inline constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double kWg[4] = {0.129484966168870, 0.279705391489277,
                                  0.381830050505119, 0.417959183673469};

template <class T>
struct PanelEstimate {
  T value{};
  double error = 0.0;
};

// One G7-K15 evaluation on [a, b].  The error estimate follows QUADPACK:
// the |K15 - G7| difference is rescaled by the deviation integral so that
// smooth panels are not flagged by rounding noise.
template <class F, class T = std::invoke_result_t<F&, double>>
PanelEstimate<T> gk15(F&& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  T fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(center - half * kXgk[i]);
    fv[14 - i] = f(center + half * kXgk[i]);
  }
  fv[7] = f(center);

  T res_g = kWg[3] * fv[7];
  for (int i = 0; i < 3; ++i) {
    res_g += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
  }
  T res_k = kWgk[7] * fv[7];
  double res_abs = kWgk[7] * std::abs(fv[7]);
  for (int i = 0; i < 7; ++i) {
    res_k += kWgk[i] * (fv[i] + fv[14 - i]);
    res_abs += kWgk[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
  }
  const T mean = res_k * 0.5;
  double res_asc = kWgk[7] * std::abs(fv[7] - mean);
  for (int i = 0; i < 7; ++i) {
    res_asc += kWgk[i] * (std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean));
  }

  PanelEstimate<T> out;
  out.value = res_k * half;
  res_abs *= std::abs(half);
  res_asc *= std::abs(half);
  double err = std::abs(res_k - res_g) * std::abs(half);
  if (res_asc != 0.0 && err != 0.0) {
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  }
  constexpr double kEps = 2.22044604925031e-16;
  if (res_abs > 1e-290) {
    err = std::max(err, 50.0 * kEps * res_abs);
  }
  out.error = err;
  return out;
}

template <class T>
struct Segment {
  double a, b;
  T value;
  double error;
};

}  // namespace detail

// Integrate f over the interval spanned by `edges` (sorted breakpoints,
// size >= 2).  Seeding known kinks/bump locations as edges keeps the
// adaptive refinement from missing narrow features.
template <class F, class T = std::invoke_result_t<F&, double>>
IntegralResult<T> integrate(F&& f, std::span<const double> edges,
                            Tolerance tol = {}) {
  IntegralResult<T> out;
  if (edges.size() < 2) {
    out.converged = true;
    return out;
  }

  std::vector<detail::Segment<T>> segs;
  const std::size_t max_segs =
      static_cast<std::size_t>(1) << std::min(tol.max_depth, 24);
  segs.reserve(std::min<std::size_t>(max_segs, 256));

  T total{};
  double err_total = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (!(edges[i] < edges[i + 1])) continue;  // skip empty/duplicate panels
    auto est = detail::gk15(f, edges[i], edges[i + 1]);
    segs.push_back({edges[i], edges[i + 1], est.value, est.error});
    total += est.value;
    err_total += est.error;
    out.n_evals += 15;
  }
  if (segs.empty()) {
    out.converged = true;
    return out;
  }

  const double span = edges.back() - edges.front();
  const double min_width = 1e-14 * std::max(std::abs(span), 1.0);
  double frozen_err = 0.0;  // error of panels too narrow to refine further

  const auto by_error = [](const detail::Segment<T>& x,
                           const detail::Segment<T>& y) {
    return x.error < y.error;
  };
  std::make_heap(segs.begin(), segs.end(), by_error);

  for (long iter = 1;; ++iter) {
    if ((iter & 63) == 0) {
      // Resync the running sums; the incremental updates drift by rounding.
      total = T{};
      err_total = frozen_err;
      for (const auto& s : segs) {
        total += s.value;
        err_total += s.error;
      }
    }
    out.value = total;
    out.abs_error = err_total;
    const double target = std::max(tol.abs, tol.rel * std::abs(total));
    if (err_total <= target) {
      out.converged = true;
      return out;
    }
    if (!std::isfinite(err_total)) {
      return out;  // integrand produced NaN/Inf, refining cannot help
    }
    if (frozen_err > target) {
      return out;  // unrefinable panels alone exceed the tolerance
    }
    if (segs.size() >= max_segs) {
      return out;  // budget exhausted, converged stays false
    }

    std::pop_heap(segs.begin(), segs.end(), by_error);
    const detail::Segment<T> w = segs.back();
    if (w.error == 0.0) {
      std::push_heap(segs.begin(), segs.end(), by_error);
      return out;  // nothing refinable is left
    }
    if (w.b - w.a <= min_width) {
      // Cannot refine further (discontinuity or rounding floor): keep the
      // panel's estimate and let refinement continue elsewhere.
      frozen_err += w.error;
      segs.back().error = 0.0;
      std::push_heap(segs.begin(), segs.end(), by_error);
      continue;
    }
    const double mid = 0.5 * (w.a + w.b);
    auto left = detail::gk15(f, w.a, mid);
    auto right = detail::gk15(f, mid, w.b);
    out.n_evals += 30;
    total += left.value + right.value - w.value;
    err_total += left.error + right.error - w.error;
    segs.back() = {w.a, mid, left.value, left.error};
    std::push_heap(segs.begin(), segs.end(), by_error);
    segs.push_back({mid, w.b, right.value, right.error});
    std::push_heap(segs.begin(), segs.end(), by_error);
  }
}

template <class F, class T = std::invoke_result_t<F&, double>>
IntegralResult<T> integrate(F&& f, double a, double b, Tolerance tol = {}) {
  const double edges[2] = {a, b};
  return integrate(std::forward<F>(f), std::span<const double>(edges, 2), tol);
}

template <class F, class T = std::invoke_result_t<F&, double>>
IntegralResult<T> integrate(F&& f, std::initializer_list<double> edges,
                            Tolerance tol = {}) {
  return integrate(std::forward<F>(f),
                   std::span<const double>(edges.begin(), edges.size()), tol);
}

}  // namespace hetmeta::quad

#endif  // HETMETA_QUADRATURE_HPP
