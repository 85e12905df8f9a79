#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "opmoment/fields.hpp"
#include "opmoment/polynomial.hpp"

namespace opmoment {

enum class RegionKind { allSpace, box, ball };

inline std::string regionKindName(RegionKind k) {
  switch (k) {
    case RegionKind::allSpace: return "allSpace";
    case RegionKind::box: return "box";
    case RegionKind::ball: return "ball";
  }
  return "?";
}

/// Closed region K of R^n: all of R^n, an axis box, or a Euclidean ball.
/// `shift` records the accumulated offset y when the region represents K - y;
/// box/ball parameters are stored already translated, so membership tests stay
/// a direct (and exact) comparison.
template <ScalarField F>
class RegionK {
 public:
  using Real = typename F::Real;

  static RegionK allSpace(int nvars) {
    RegionK r;
    r.kind_ = RegionKind::allSpace;
    r.nvars_ = nvars;
    r.shift_ = std::vector<Real>(static_cast<std::size_t>(nvars), F::fromLong(0));
    return r;
  }

  static RegionK box(std::vector<Real> lo, std::vector<Real> hi) {
    if (lo.size() != hi.size() || lo.empty())
      throw std::invalid_argument("RegionK::box: bound arity mismatch");
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (hi[i] < lo[i]) throw std::invalid_argument("RegionK::box: lo > hi on axis " + std::to_string(i));
    RegionK r;
    r.kind_ = RegionKind::box;
    r.nvars_ = static_cast<int>(lo.size());
    r.shift_ = std::vector<Real>(lo.size(), F::fromLong(0));
    r.lo_ = std::move(lo);
    r.hi_ = std::move(hi);
    return r;
  }

  static RegionK ball(std::vector<Real> center, Real radius) {
    if (center.empty()) throw std::invalid_argument("RegionK::ball: empty center");
    if (!(radius > F::fromLong(0))) throw std::invalid_argument("RegionK::ball: radius must be > 0");
    RegionK r;
    r.kind_ = RegionKind::ball;
    r.nvars_ = static_cast<int>(center.size());
    r.shift_ = std::vector<Real>(center.size(), F::fromLong(0));
    r.center_ = std::move(center);
    r.radius_ = std::move(radius);
    return r;
  }

  RegionKind kind() const { return kind_; }
  int nvars() const { return nvars_; }
  const std::vector<Real>& shiftOffset() const { return shift_; }
  const std::vector<Real>& lo() const { return lo_; }
  const std::vector<Real>& hi() const { return hi_; }
  const std::vector<Real>& center() const { return center_; }
  const Real& radius() const { return radius_; }

  bool contains(const std::vector<Real>& x) const {
    if (x.size() != static_cast<std::size_t>(nvars_))
      throw std::invalid_argument("RegionK::contains: point dimension mismatch");
    switch (kind_) {
      case RegionKind::allSpace:
        return true;
      case RegionKind::box:
        for (std::size_t i = 0; i < x.size(); ++i)
          if (x[i] < lo_[i] || hi_[i] < x[i]) return false;
        return true;
      case RegionKind::ball: {
        Real acc = F::fromLong(0);
        for (std::size_t i = 0; i < x.size(); ++i) {
          Real d = x[i] - center_[i];
          acc = acc + d * d;
        }
        return !(radius_ * radius_ < acc);
      }
    }
    return false;
  }

  /// Same geometry, with the bookkeeping offset restored (deserialization).
  static RegionK withRecordedShift(RegionK region, std::vector<Real> shift) {
    if (shift.size() != static_cast<std::size_t>(region.nvars_))
      throw std::invalid_argument("RegionK::withRecordedShift: arity mismatch");
    region.shift_ = std::move(shift);
    return region;
  }

  /// The translated region K - y.
  RegionK shifted(const std::vector<Real>& y) const {
    if (y.size() != static_cast<std::size_t>(nvars_))
      throw std::invalid_argument("RegionK::shifted: offset dimension mismatch");
    RegionK r(*this);
    for (std::size_t i = 0; i < y.size(); ++i) {
      r.shift_[i] = r.shift_[i] + y[i];
      if (kind_ == RegionKind::box) {
        r.lo_[i] = r.lo_[i] - y[i];
        r.hi_[i] = r.hi_[i] - y[i];
      } else if (kind_ == RegionKind::ball) {
        r.center_[i] = r.center_[i] - y[i];
      }
    }
    return r;
  }

  /// Defining polynomials g with K ⊇ {g_i >= 0}: one per axis for boxes,
  /// a single polynomial for balls, none for allSpace.
  std::vector<ScalarPolynomial<F>> constraintPolys() const {
    std::vector<ScalarPolynomial<F>> out;
    const int n = nvars_;
    if (kind_ == RegionKind::box) {
      for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
        auto xi = ScalarPolynomial<F>::variable(n, i);
        auto gi = (xi - ScalarPolynomial<F>::constant(n, lo_[i])) *
                  (ScalarPolynomial<F>::constant(n, hi_[i]) - xi);
        out.push_back(std::move(gi));
      }
    } else if (kind_ == RegionKind::ball) {
      auto g = ScalarPolynomial<F>::constant(n, radius_ * radius_);
      for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
        auto di = ScalarPolynomial<F>::variable(n, i) - ScalarPolynomial<F>::constant(n, center_[i]);
        g = g - di * di;
      }
      out.push_back(std::move(g));
    }
    return out;
  }

  /// lo/hi of the natural bounding box; nullopt for allSpace.
  std::optional<std::pair<std::vector<Real>, std::vector<Real>>> boundingBox() const {
    if (kind_ == RegionKind::box) return std::make_pair(lo_, hi_);
    if (kind_ == RegionKind::ball) {
      std::vector<Real> lo(center_), hi(center_);
      for (std::size_t i = 0; i < lo.size(); ++i) {
        lo[i] = lo[i] - radius_;
        hi[i] = hi[i] + radius_;
      }
      return std::make_pair(std::move(lo), std::move(hi));
    }
    return std::nullopt;
  }

  friend bool operator==(const RegionK& a, const RegionK& b) {
    return a.kind_ == b.kind_ && a.nvars_ == b.nvars_ && a.shift_ == b.shift_ && a.lo_ == b.lo_ &&
           a.hi_ == b.hi_ && a.center_ == b.center_ && a.radius_ == b.radius_;
  }
  friend bool operator!=(const RegionK& a, const RegionK& b) { return !(a == b); }

 private:
  RegionK() = default;
  RegionKind kind_ = RegionKind::allSpace;
  int nvars_ = 0;
  std::vector<Real> shift_;
  std::vector<Real> lo_, hi_;
  std::vector<Real> center_;
  Real radius_ = F::fromLong(0);
};

/// Sampling resolution for grid-based checks. allSpace regions need an
/// explicit bounding box.
template <ScalarField F>
struct GridSpec {
  int pointsPerAxis = 17;
  std::optional<std::pair<std::vector<typename F::Real>, std::vector<typename F::Real>>> boundingBox;
};

/// Deterministic lattice of grid points inside K (row-major over axes).
template <ScalarField F>
inline std::vector<std::vector<typename F::Real>> regionGridPoints(const RegionK<F>& region,
                                                                   const GridSpec<F>& grid) {
  using Real = typename F::Real;
  if (grid.pointsPerAxis < 2)
    throw std::invalid_argument("regionGridPoints: need at least 2 points per axis");
  auto bounds = grid.boundingBox ? grid.boundingBox : region.boundingBox();
  if (!bounds)
    throw std::invalid_argument("regionGridPoints: unbounded region needs an explicit bounding box");
  const auto& [lo, hi] = *bounds;
  const std::size_t n = lo.size();
  if (n != static_cast<std::size_t>(region.nvars()))
    throw std::invalid_argument("regionGridPoints: bounding box arity mismatch");

  const int m = grid.pointsPerAxis;
  std::vector<std::vector<Real>> axes(n);
  for (std::size_t i = 0; i < n; ++i) {
    axes[i].reserve(static_cast<std::size_t>(m));
    Real span = hi[i] - lo[i];
    for (int k = 0; k < m; ++k)
      axes[i].push_back(lo[i] + span * F::fromRatio(k, m - 1));
  }

  std::vector<std::vector<Real>> out;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::vector<Real> pt(n, F::fromLong(0));
    for (std::size_t i = 0; i < n; ++i) pt[i] = axes[i][idx[i]];
    if (region.contains(pt)) out.push_back(std::move(pt));
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (idx[i] + 1 < static_cast<std::size_t>(m)) {
        ++idx[i];
        for (std::size_t j = i + 1; j < n; ++j) idx[j] = 0;
        break;
      }
      if (i == 0) return out;
    }
    if (n == 0) return out;
  }
}

}  // namespace opmoment
