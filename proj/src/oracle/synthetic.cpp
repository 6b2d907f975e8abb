#include "wmeval/oracle/synthetic.hpp"

#include "wmeval/core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace wmeval::oracle {
namespace {

using Vector = CentroidTrajectory::Vector;

constexpr int kMinFrames = 12;

void check_frames(int frames, double fps) {
  if (frames < kMinFrames) {
    throw GenerationError("synthetic trajectories need at least 12 frames, got " +
                          std::to_string(frames));
  }
  if (!(fps > 0.0)) throw GenerationError("fps must be positive");
}

Vector timestamps(int frames, double fps) {
  Vector t(frames);
  for (int k = 0; k < frames; ++k) t(k) = static_cast<double>(k) / fps;
  return t;
}

void add_noise(Vector& v, double sigma, std::mt19937_64& rng) {
  std::normal_distribution<double> noise(0.0, sigma);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = std::clamp(v(i) + noise(rng), 0.0, 1.0);
}

double modulation(AccelShape shape, double u) {
  const double wave = std::sin(2.0 * std::numbers::pi * u);
  switch (shape) {
    case AccelShape::Constant: return 1.0;
    case AccelShape::Pm5: return 1.0 + 0.05 * wave;
    case AccelShape::Pm20: return 1.0 + 0.20 * wave;
    case AccelShape::Pm50: return 1.0 + 0.50 * wave;
    case AccelShape::Step: return u < 0.5 ? 1.0 : 1.5;
    case AccelShape::Ramp: return 0.5 + u;
  }
  return 1.0;
}

}  // namespace

std::string_view to_string(Level level) {
  switch (level) {
    case Level::L0: return "L0";
    case Level::L1: return "L1";
    case Level::L2: return "L2";
    case Level::L3: return "L3";
    case Level::L4: return "L4";
  }
  return "L0";
}

std::string_view to_string(AccelShape shape) {
  switch (shape) {
    case AccelShape::Constant: return "constant";
    case AccelShape::Pm5: return "pm5";
    case AccelShape::Pm20: return "pm20";
    case AccelShape::Pm50: return "pm50";
    case AccelShape::Step: return "step";
    case AccelShape::Ramp: return "ramp";
  }
  return "constant";
}

Level level_from_string(std::string_view text) {
  for (auto level : kAllLevels) {
    if (to_string(level) == text) return level;
  }
  throw GenerationError("unknown ladder level '" + std::string(text) + "'");
}

AccelShape shape_from_string(std::string_view text) {
  for (auto shape : kAllShapes) {
    if (to_string(shape) == text) return shape;
  }
  throw GenerationError("unknown acceleration shape '" + std::string(text) + "'");
}

long landing_frame(int frames, const FallGeometry& geometry) {
  return std::lround(geometry.fall_fraction * static_cast<double>(frames - 1));
}

CentroidTrajectory gen_ladder(Level level, std::uint64_t seed, int frames, double fps,
                              const FallGeometry& geometry) {
  check_frames(frames, fps);
  std::mt19937_64 rng(seed);
  const Vector t = timestamps(frames, fps);
  Vector x = Vector::Constant(frames, geometry.x);
  Vector y(frames);

  const long land = landing_frame(frames, geometry);
  const double drop = geometry.y_ground - geometry.y_top;
  const double t_land = t(land);

  if (level == Level::L4) {
    std::normal_distribution<double> step(0.0, geometry.walk_step);
    y(0) = 0.5 * (geometry.y_top + geometry.y_ground);
    for (int k = 1; k < frames; ++k) {
      double next = y(k - 1) + step(rng);
      if (next < 0.0) next = -next;
      if (next > 1.0) next = 2.0 - next;
      y(k) = std::clamp(next, 0.0, 1.0);
    }
    return CentroidTrajectory(t, x, y);
  }

  if (level == Level::L3) {
    // Constant velocity over the whole clip: no acceleration and no landing.
    const double t_end = t(frames - 1);
    for (int k = 0; k < frames; ++k) y(k) = geometry.y_top + drop * t(k) / t_end;
    return CentroidTrajectory(t, x, y);
  }

  const double g = 2.0 * drop / (t_land * t_land);
  for (int k = 0; k < frames; ++k) {
    y(k) = k >= land ? geometry.y_ground : geometry.y_top + 0.5 * g * t(k) * t(k);
  }

  const double px = 1.0 / geometry.image_height;
  if (level == Level::L1 || level == Level::L2) {
    const double sigma = (level == Level::L1 ? geometry.sigma_l1_px : geometry.sigma_l2_px) * px;
    add_noise(x, sigma, rng);
    add_noise(y, sigma, rng);
  }
  return CentroidTrajectory(t, x, y);
}

CentroidTrajectory gen_accel_shape(AccelShape shape, std::uint64_t seed, int frames, double fps,
                                   const FallGeometry& geometry) {
  check_frames(frames, fps);
  const Vector t = timestamps(frames, fps);
  const long land = landing_frame(frames, geometry);
  const double t_land = t(land);

  // Midpoint integration of y'' = m(t / t_land) on a fine grid.
  constexpr int kSubsteps = 2000;
  Vector s = Vector::Zero(frames);
  double pos = 0.0;
  double vel = 0.0;
  const double h = t_land / static_cast<double>(land * kSubsteps);
  for (long k = 0; k < land; ++k) {
    for (int j = 0; j < kSubsteps; ++j) {
      const double tau = (static_cast<double>(k * kSubsteps + j) + 0.5) * h;
      const double a = modulation(shape, tau / t_land);
      pos += vel * h + 0.5 * a * h * h;
      vel += a * h;
    }
    s(k + 1) = pos;
  }

  Vector x = Vector::Constant(frames, geometry.x);
  Vector y(frames);
  const double drop = geometry.y_ground - geometry.y_top;
  for (int k = 0; k < frames; ++k) {
    y(k) = k >= land ? geometry.y_ground : geometry.y_top + drop * s(k) / s(land);
  }
  if (geometry.shape_jitter_px > 0.0) {
    std::mt19937_64 rng(seed);
    const double sigma = geometry.shape_jitter_px / geometry.image_height;
    add_noise(x, sigma, rng);
    add_noise(y, sigma, rng);
  }
  return CentroidTrajectory(t, x, y);
}

CentroidTrajectory gen_bounce(double h1, double ratio, int frames, double fps,
                              const FallGeometry& geometry) {
  check_frames(frames, fps);
  if (!(h1 > 0.0) || h1 > geometry.y_ground) {
    throw GenerationError("drop height must lie in (0, ground]");
  }
  if (!(ratio >= 0.0)) throw GenerationError("rebound ratio must be non-negative");
  const double h2 = ratio * h1;
  if (h2 > geometry.y_ground) throw GenerationError("rebound apex leaves the image");

  // Landing frame chosen so the rebound arc plus a short rest fits the clip:
  // the arc lasts 2 * sqrt(ratio) landing durations.
  constexpr int kTailFrames = 10;
  const long land = std::min<long>(
      std::lround(0.45 * (frames - 1)),
      static_cast<long>(std::floor((frames - kTailFrames) / (1.0 + 2.0 * std::sqrt(ratio)))));
  if (land < 6) throw GenerationError("clip too short for the requested rebound");

  const Vector t = timestamps(frames, fps);
  const double t1 = t(land);
  const double g = 2.0 * h1 / (t1 * t1);
  const double v_up = std::sqrt(2.0 * g * h2);
  const double t2 = t1 + 2.0 * v_up / g;
  const double top = geometry.y_ground - h1;

  Vector x = Vector::Constant(frames, geometry.x);
  Vector y(frames);
  for (int k = 0; k < frames; ++k) {
    const double tk = t(k);
    if (k <= land) {
      y(k) = top + 0.5 * g * tk * tk;
    } else if (tk < t2) {
      const double dt = tk - t1;
      y(k) = std::min(geometry.y_ground, geometry.y_ground - v_up * dt + 0.5 * g * dt * dt);
    } else {
      y(k) = geometry.y_ground;
    }
  }
  y(land) = geometry.y_ground;
  return CentroidTrajectory(t, x, y);
}

}  // namespace wmeval::oracle
