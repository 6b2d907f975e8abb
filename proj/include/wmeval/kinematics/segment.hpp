#pragma once

#include "wmeval/core/centroid_trajectory.hpp"
#include "wmeval/kinematics/params.hpp"
#include "wmeval/kinematics/stats.hpp"

#include <cmath>
#include <string_view>
#include <vector>

namespace wmeval::kin {

enum class AxisRoute { Vertical, Horizontal, Both };

enum class SegmentKind { Rest, Lift, Fall, Rise, Push, Slide };

constexpr std::string_view to_string(AxisRoute route) {
  switch (route) {
    case AxisRoute::Vertical: return "vertical";
    case AxisRoute::Horizontal: return "horizontal";
    case AxisRoute::Both: return "both";
  }
  return "both";
}

constexpr std::string_view to_string(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::Rest: return "rest";
    case SegmentKind::Lift: return "lift";
    case SegmentKind::Fall: return "fall";
    case SegmentKind::Rise: return "rise";
    case SegmentKind::Push: return "push";
    case SegmentKind::Slide: return "slide";
  }
  return "rest";
}

/// Frames [start, end). A segment built from velocity block [a, b) covers
/// frames [a, b + 1), so neighbours share their boundary frame.
struct Segment {
  SegmentKind kind = SegmentKind::Rest;
  Eigen::Index start = 0;
  Eigen::Index end = 0;

  Eigen::Index points() const { return end - start; }
  bool is_rest() const { return kind == SegmentKind::Rest; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

template <typename Scalar>
AxisRoute dispatch_axis(const BasicCentroidTrajectory<Scalar>& traj,
                        const PhysLawParams& params = {}) {
  const double dx = static_cast<double>(span(traj.x()));
  const double dy = static_cast<double>(span(traj.y()));
  if (dy > params.dominance * dx && dy > params.min_axis_span) return AxisRoute::Vertical;
  if (dx > params.dominance * dy && dx > params.min_axis_span) return AxisRoute::Horizontal;
  return AxisRoute::Both;
}

namespace detail {

template <typename Scalar>
bool same_sign(Scalar a, Scalar b) {
  return (a > 0 && b > 0) || (a < 0 && b < 0);
}

/// Velocity-index blocks [a, b) with a move flag, after run compression.
struct Block {
  Eigen::Index a;
  Eigen::Index b;
  bool move;
};

template <typename Scalar>
std::vector<Block> compress_runs(const Vec<Scalar>& v, Scalar move_thresh) {
  std::vector<Block> blocks;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const bool move = std::abs(v(i)) > move_thresh;
    if (!blocks.empty() && blocks.back().move == move) {
      blocks.back().b = i + 1;
    } else {
      blocks.push_back({i, i + 1, move});
    }
  }
  return blocks;
}

inline void merge_rests(std::vector<Segment>& segs) {
  std::vector<Segment> merged;
  for (const auto& s : segs) {
    if (!merged.empty() && merged.back().is_rest() && s.is_rest()) {
      merged.back().end = s.end;
    } else {
      merged.push_back(s);
    }
  }
  segs = std::move(merged);
}

}  // namespace detail

/// Segments the series `p` (sampled at `t`) along one axis.
template <typename DerivedT, typename DerivedP>
std::vector<Segment> segment_series(const Eigen::MatrixBase<DerivedT>& t,
                                    const Eigen::MatrixBase<DerivedP>& p, Axis axis,
                                    const PhysLawParams& params = {}) {
  using Scalar = typename DerivedP::Scalar;
  const Eigen::Index n = p.size();
  if (n < 4) throw TrajectoryError("segmentation needs at least 4 frames");

  const Vec<Scalar> v = velocities(t, p);
  const Eigen::Index m = v.size();
  const auto v_ref = percentile(v.cwiseAbs(), params.reference_percentile);
  const auto move_thresh =
      std::max(static_cast<Scalar>(params.move_floor), static_cast<Scalar>(params.move_fraction) * v_ref);
  const auto min_v =
      std::max(static_cast<Scalar>(params.flip_floor), static_cast<Scalar>(params.flip_fraction) * v_ref);

  std::vector<Segment> segs;
  const auto emit = [&](SegmentKind kind, Eigen::Index a, Eigen::Index b) {
    const Eigen::Index start = a;
    const Eigen::Index end = b + 1;
    if (kind != SegmentKind::Rest) {
      const bool too_short = end - start < params.min_points;
      if (too_short || span(p.segment(start, end - start)) < static_cast<Scalar>(params.min_span)) {
        kind = SegmentKind::Rest;
      }
    }
    segs.push_back({kind, start, end});
  };

  for (const auto& block : detail::compress_runs(v, move_thresh)) {
    if (!block.move) {
      emit(SegmentKind::Rest, block.a, block.b);
      continue;
    }
    std::vector<Eigen::Index> flips{block.a};
    Eigen::Index k = block.a + 1;
    while (k < block.b) {
      const bool flip = v(k - 1) * v(k) < Scalar(0) && std::abs(v(k - 1)) > min_v &&
                        std::abs(v(k)) > min_v && (k + 1 >= m || detail::same_sign(v(k + 1), v(k)));
      if (flip) {
        flips.push_back(k);
        k += 2;
        continue;
      }
      ++k;
    }
    flips.push_back(block.b);
    for (std::size_t i = 0; i + 1 < flips.size(); ++i) {
      const Eigen::Index a = flips[i];
      const Eigen::Index b = flips[i + 1];
      const bool down = v.segment(a, b - a).mean() > Scalar(0);
      emit(down ? SegmentKind::Fall : SegmentKind::Rise, a, b);
    }
  }
  detail::merge_rests(segs);

  if (axis == Axis::Vertical) {
    // Rises ahead of the first fall are the externally driven lift. Without a
    // fall they stay rises and are scored as ordering violations.
    const auto first_fall = std::find_if(segs.begin(), segs.end(), [](const Segment& s) {
      return s.kind == SegmentKind::Fall;
    });
    if (first_fall != segs.end()) {
      for (auto it = segs.begin(); it != first_fall; ++it) {
        if (it->kind == SegmentKind::Rise) it->kind = SegmentKind::Lift;
      }
    }
    return segs;
  }

  // Horizontal: the first motion block is driven until its peak speed (push)
  // and coasts afterwards (slide); later motion blocks are slides.
  std::vector<Segment> out;
  bool seen_motion = false;
  for (const auto& s : segs) {
    if (s.is_rest()) {
      out.push_back(s);
      continue;
    }
    if (seen_motion) {
      out.push_back({SegmentKind::Slide, s.start, s.end});
      continue;
    }
    seen_motion = true;
    Eigen::Index peak = s.start;
    v.segment(s.start, s.end - 1 - s.start).cwiseAbs().maxCoeff(&peak);
    peak += s.start;
    const Eigen::Index push_points = peak + 1 - s.start;
    const Eigen::Index slide_points = s.end - peak;
    if (push_points >= params.min_points && slide_points >= params.min_points) {
      out.push_back({SegmentKind::Push, s.start, peak + 1});
      out.push_back({SegmentKind::Slide, peak, s.end});
    } else {
      out.push_back({SegmentKind::Slide, s.start, s.end});
    }
  }
  return out;
}

template <typename Scalar>
std::vector<Segment> segment(const BasicCentroidTrajectory<Scalar>& traj, Axis axis,
                             const PhysLawParams& params = {}) {
  return segment_series(traj.t(), traj.along(axis), axis, params);
}

}  // namespace wmeval::kin
