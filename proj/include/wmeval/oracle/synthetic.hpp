#pragma once

#include "wmeval/core/centroid_trajectory.hpp"

#include <cstdint>
#include <string_view>

namespace wmeval::oracle {

enum class Level { L0, L1, L2, L3, L4 };
enum class AccelShape { Constant, Pm5, Pm20, Pm50, Step, Ramp };

inline constexpr Level kAllLevels[] = {Level::L0, Level::L1, Level::L2, Level::L3, Level::L4};
inline constexpr AccelShape kAllShapes[] = {AccelShape::Constant, AccelShape::Pm5, AccelShape::Pm20,
                                            AccelShape::Pm50,     AccelShape::Step, AccelShape::Ramp};

std::string_view to_string(Level level);
std::string_view to_string(AccelShape shape);
Level level_from_string(std::string_view text);
AccelShape shape_from_string(std::string_view text);

/// Geometry shared by every generator. Image y grows downward; the object
/// is released at `y_top`, lands at `y_ground`.
struct FallGeometry {
  double y_top = 0.1;
  double y_ground = 0.9;
  double x = 0.5;
  /// Landing frame as a fraction of the clip.
  double fall_fraction = 0.35;
  /// Pixel noise is expressed against this frame height.
  double image_height = 480.0;
  double sigma_l1_px = 3.0;
  double sigma_l2_px = 15.0;
  /// Standard deviation of one random-walk step (L4), normalized units.
  double walk_step = 0.03;
  /// Optional centroid jitter for the acceleration sweep, in pixels.
  double shape_jitter_px = 0.0;
};

/// Frame at which the falling object reaches the ground.
long landing_frame(int frames, const FallGeometry& geometry = {});

/// L0 exact free fall then rest; L1/L2 add pixel noise to L0; L3 descends at
/// constant velocity for the whole clip; L4 is a reflected random walk in y.
CentroidTrajectory gen_ladder(Level level, std::uint64_t seed, int frames = 32, double fps = 16.0,
                              const FallGeometry& geometry = {});

/// Drop under a modulated acceleration a(u) = g * m(u), u the fraction of the
/// fall elapsed; positions come from integrating twice and rescaling the
/// drop to the configured span.
CentroidTrajectory gen_accel_shape(AccelShape shape, std::uint64_t seed, int frames = 32,
                                   double fps = 16.0, const FallGeometry& geometry = {});

/// Drop of height h1 onto `y_ground`, one rebound to ratio * h1, a second
/// fall, then rest. Landing happens exactly on a frame.
CentroidTrajectory gen_bounce(double h1, double ratio, int frames = 120, double fps = 16.0,
                              const FallGeometry& geometry = {});

}  // namespace wmeval::oracle
