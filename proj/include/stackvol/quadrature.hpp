#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <queue>
#include <utility>
#include <vector>

#include "stackvol/errors.hpp"
#include "stackvol/random.hpp"

namespace stackvol {

/// Small dense point; stays on the stack for dimension <= 4.
template <typename Scalar>
using Point = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, Eigen::ColMajor, 4, 1>;

template <typename Scalar>
struct QuadratureResult {
  Scalar value{0};
  Scalar error_estimate{0};
  std::size_t evaluations = 0;
};

template <typename Scalar>
struct Box {
  Point<Scalar> lower;
  Point<Scalar> upper;

  Eigen::Index dimension() const { return lower.size(); }
  Scalar volume() const { return (upper - lower).prod(); }
};

template <typename Scalar>
Box<Scalar> make_box(std::initializer_list<std::pair<Scalar, Scalar>> extents) {
  Box<Scalar> box{Point<Scalar>(static_cast<Eigen::Index>(extents.size())),
                  Point<Scalar>(static_cast<Eigen::Index>(extents.size()))};
  Eigen::Index k = 0;
  for (const auto& [lo, hi] : extents) {
    box.lower(k) = lo;
    box.upper(k) = hi;
    ++k;
  }
  return box;
}

namespace detail {

template <typename Scalar, typename F>
struct SimpsonState {
  F& f;
  std::size_t evaluations = 0;
  int max_depth = 15;
  int min_depth = 3;
  bool converged = true;
  Scalar error = 0;

  Scalar eval(Scalar x) {
    ++evaluations;
    return static_cast<Scalar>(f(x));
  }

  // [a, b] with f(a), f(m), f(b) known and whole = Simpson estimate on [a, b]
  Scalar refine(Scalar a, Scalar b, Scalar fa, Scalar fm, Scalar fb, Scalar whole, Scalar tol, int depth) {
    const Scalar m = (a + b) / 2;
    const Scalar lm = (a + m) / 2, rm = (m + b) / 2;
    const Scalar flm = eval(lm), frm = eval(rm);
    const Scalar left = (m - a) / 6 * (fa + 4 * flm + fm);
    const Scalar right = (b - m) / 6 * (fm + 4 * frm + fb);
    const Scalar delta = left + right - whole;
    const bool accept = depth >= min_depth && std::abs(delta) <= 15 * tol;
    if (accept || depth >= max_depth) {
      if (!accept) converged = false;
      error += std::abs(delta) / 15;
      return left + right + delta / 15;
    }
    return refine(a, m, fa, flm, fm, left, tol / 2, depth + 1) +
           refine(m, b, fm, frm, fb, right, tol / 2, depth + 1);
  }
};

}  // namespace detail

/// Adaptive Simpson with Richardson correction. Each half gets half the
/// tolerance; recursion stops at depth `max_depth` and reports NonConvergence
/// carrying the partial result.
template <typename Scalar, typename F>
QuadratureResult<Scalar> integrate_1d(F&& f, Scalar a, Scalar b, Scalar tol, int max_depth = 15) {
  if (!(tol > 0)) throw ValidationError("quadrature tolerance must be positive");
  detail::SimpsonState<Scalar, std::remove_reference_t<F>> state{f};
  state.max_depth = max_depth;
  if (a == b) {
    state.eval(a);
    return {Scalar(0), Scalar(0), state.evaluations};
  }
  const Scalar fa = state.eval(a), fb = state.eval(b), fm = state.eval((a + b) / 2);
  const Scalar whole = (b - a) / 6 * (fa + 4 * fm + fb);
  const Scalar value = state.refine(a, b, fa, fm, fb, whole, tol, 1);
  if (!std::isfinite(static_cast<double>(value))) {
    throw NonConvergence("integrand is not finite on the interval", static_cast<double>(value),
                         static_cast<double>(state.error), state.evaluations);
  }
  if (!state.converged) {
    throw NonConvergence("adaptive Simpson reached its depth limit", static_cast<double>(value),
                         static_cast<double>(state.error), state.evaluations);
  }
  return {value, state.error, state.evaluations};
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Golub-Welsch.
template <typename Scalar>
std::pair<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>, Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>
gauss_legendre(Eigen::Index n) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix jacobi = Matrix::Zero(n, n);
  for (Eigen::Index k = 1; k < n; ++k) {
    const Scalar kk = static_cast<Scalar>(k);
    jacobi(k, k - 1) = jacobi(k - 1, k) = kk / std::sqrt(4 * kk * kk - 1);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(jacobi);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights = 2 * solver.eigenvectors().row(0).transpose().array().square();
  return {solver.eigenvalues(), weights};
}

namespace detail {

template <typename Scalar>
struct Cell {
  Point<Scalar> lower;
  Point<Scalar> upper;
  Scalar coarse{0};   // rule on the whole cell
  Scalar fine{0};     // sum of the rule on the children
  Scalar error{0};
  std::vector<Scalar> child_values;
};

template <typename Scalar>
struct CellOrder {
  bool operator()(const Cell<Scalar>& a, const Cell<Scalar>& b) const { return a.error < b.error; }
};

template <typename Scalar, typename F>
class TensorGauss {
 public:
  TensorGauss(F& f, Eigen::Index order) : f_(f) {
    std::tie(nodes_, weights_) = gauss_legendre<Scalar>(order);
  }

  Scalar rule(const Point<Scalar>& lower, const Point<Scalar>& upper) {
    const Eigen::Index d = lower.size();
    const Eigen::Index n = nodes_.size();
    const Point<Scalar> half = (upper - lower) / 2;
    const Point<Scalar> mid = (upper + lower) / 2;
    Point<Scalar> x(d);
    Scalar sum = 0;
    Eigen::Index total = 1;
    for (Eigen::Index k = 0; k < d; ++k) total *= n;
    for (Eigen::Index flat = 0; flat < total; ++flat) {
      Scalar w = 1;
      Eigen::Index rest = flat;
      for (Eigen::Index k = 0; k < d; ++k) {
        const Eigen::Index i = rest % n;
        rest /= n;
        x(k) = mid(k) + half(k) * nodes_(i);
        w *= weights_(i);
      }
      sum += w * static_cast<Scalar>(f_(x));
      ++evaluations;
    }
    return sum * half.prod();
  }

  std::vector<std::pair<Point<Scalar>, Point<Scalar>>> split(const Point<Scalar>& lower,
                                                             const Point<Scalar>& upper) const {
    const Eigen::Index d = lower.size();
    const Point<Scalar> mid = (upper + lower) / 2;
    std::vector<std::pair<Point<Scalar>, Point<Scalar>>> out;
    for (Eigen::Index mask = 0; mask < (Eigen::Index{1} << d); ++mask) {
      Point<Scalar> lo(d), hi(d);
      for (Eigen::Index k = 0; k < d; ++k) {
        const bool upper_half = (mask >> k) & 1;
        lo(k) = upper_half ? mid(k) : lower(k);
        hi(k) = upper_half ? upper(k) : mid(k);
      }
      out.emplace_back(lo, hi);
    }
    return out;
  }

  Cell<Scalar> make_cell(const Point<Scalar>& lower, const Point<Scalar>& upper, Scalar coarse) {
    Cell<Scalar> cell{lower, upper, coarse, Scalar(0), Scalar(0), {}};
    for (const auto& [lo, hi] : split(lower, upper)) {
      cell.child_values.push_back(rule(lo, hi));
      cell.fine += cell.child_values.back();
    }
    cell.error = std::abs(cell.fine - cell.coarse);
    return cell;
  }

  std::size_t evaluations = 0;

 private:
  F& f_;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> nodes_, weights_;
};

}  // namespace detail

/// Globally adaptive tensor-product Gauss-Legendre cubature on a box of
/// dimension 1 or 2. The cell with the largest |coarse - refined| gap is
/// split until the summed gap is at most `tol`.
template <typename Scalar, typename F>
QuadratureResult<Scalar> integrate_box(F&& f, const Box<Scalar>& box, Scalar tol, std::size_t max_cells = 20000,
                                       Eigen::Index order = 5) {
  if (!(tol > 0)) throw ValidationError("quadrature tolerance must be positive");
  if (box.dimension() < 1 || box.dimension() > 2) {
    throw ValidationError("integrate_box handles dimensions 1 and 2; use integrate_mc beyond that");
  }
  detail::TensorGauss<Scalar, std::remove_reference_t<F>> gauss(f, order);
  std::priority_queue<detail::Cell<Scalar>, std::vector<detail::Cell<Scalar>>, detail::CellOrder<Scalar>> queue;
  const Scalar root = gauss.rule(box.lower, box.upper);
  queue.push(gauss.make_cell(box.lower, box.upper, root));
  Scalar total_error = queue.top().error;
  std::size_t cells = 1;
  while (total_error > tol && cells < max_cells) {
    auto worst = queue.top();
    queue.pop();
    total_error -= worst.error;
    const auto children = gauss.split(worst.lower, worst.upper);
    for (std::size_t c = 0; c < children.size(); ++c) {
      auto cell = gauss.make_cell(children[c].first, children[c].second, worst.child_values[c]);
      total_error += cell.error;
      queue.push(std::move(cell));
    }
    cells += children.size() - 1;
  }
  // sum in a fixed order so the result does not depend on heap layout
  std::vector<detail::Cell<Scalar>> all;
  all.reserve(queue.size());
  while (!queue.empty()) {
    all.push_back(queue.top());
    queue.pop();
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    return std::lexicographical_compare(a.lower.data(), a.lower.data() + a.lower.size(), b.lower.data(),
                                        b.lower.data() + b.lower.size());
  });
  Scalar value = 0, error = 0;
  for (const auto& c : all) {
    value += c.fine;
    error += c.error;
  }
  if (!std::isfinite(static_cast<double>(value))) {
    throw NonConvergence("integrand is not finite on the box", static_cast<double>(value),
                         static_cast<double>(error), gauss.evaluations);
  }
  if (error > tol) {
    throw NonConvergence("cubature cell budget exhausted", static_cast<double>(value), static_cast<double>(error),
                         gauss.evaluations);
  }
  return {value, error, gauss.evaluations};
}

/// Integral over the annulus r0 <= |x| <= r1 in the plane through polar
/// coordinates (r, theta) with the Jacobian r. A disk is the case r0 = 0.
template <typename Scalar, typename F>
QuadratureResult<Scalar> integrate_annulus(F&& f, Scalar r0, Scalar r1, Scalar tol) {
  const Scalar two_pi = 2 * static_cast<Scalar>(EIGEN_PI);
  auto polar = [&f](const Point<Scalar>& p) {
    Point<Scalar> x(2);
    x << p(0) * std::cos(p(1)), p(0) * std::sin(p(1));
    return static_cast<Scalar>(f(x)) * p(0);
  };
  return integrate_box(polar, make_box<Scalar>({{r0, r1}, {Scalar(0), two_pi}}), tol);
}

/// Plain Monte Carlo over a box: volume * sample mean, with the standard
/// error as the error estimate. Samples are drawn and reduced in a fixed
/// order, so identical (seed, samples) give bit-identical results.
template <typename Scalar, typename F>
QuadratureResult<Scalar> integrate_mc(F&& f, const Box<Scalar>& box, std::size_t samples, std::uint64_t seed) {
  if (samples < 2) throw ValidationError("Monte Carlo needs at least two samples");
  Engine rng(seed);
  const Eigen::Index d = box.dimension();
  const Point<Scalar> width = box.upper - box.lower;
  Point<Scalar> x(d);
  // Welford running moments
  Scalar mean = 0, m2 = 0;
  for (std::size_t n = 1; n <= samples; ++n) {
    for (Eigen::Index k = 0; k < d; ++k) x(k) = box.lower(k) + width(k) * static_cast<Scalar>(uniform_unit(rng));
    const Scalar y = static_cast<Scalar>(f(x));
    const Scalar delta = y - mean;
    mean += delta / static_cast<Scalar>(n);
    m2 += delta * (y - mean);
  }
  const Scalar n = static_cast<Scalar>(samples);
  const Scalar variance = m2 / (n - 1);
  const Scalar volume = box.volume();
  return {volume * mean, volume * std::sqrt(variance / n), samples};
}

}  // namespace stackvol
