#ifndef BARRIERCLOCK_PROFILE_HPP
#define BARRIERCLOCK_PROFILE_HPP

#include <string>
#include <vector>

#include "barrierclock/units.hpp"

namespace barrierclock {

/// One piece of a piecewise-constant potential: V on [x_left, x_right).
struct Segment {
  double x_left = 0.0;
  double x_right = 0.0;
  double V = 0.0;
};

/// Finite interval used for projector regions and density probes.
/// x1 == x2 is allowed and denotes a zero-measure region.
struct Region {
  double x1 = 0.0;
  double x2 = 0.0;

  Region() = default;
  Region(double a, double b);
  double length() const { return x2 - x1; }
};

/// Piecewise-constant 1D potential with V = 0 outside a finite support.
///
/// Profiles are normalized on construction: segments are sorted, interior
/// gaps are filled with explicit V = 0 segments, and overlapping or
/// zero-width segments are rejected.  An empty profile means free space.
class PotentialProfile {
 public:
  PotentialProfile() = default;
  explicit PotentialProfile(std::vector<Segment> segments);

  /// Rectangular barrier of height V0 on [-d/2, +d/2].
  static PotentialProfile rectangular(double V0, double d);

  /// Parse either a JSON array of {x_left, x_right, V} objects or the
  /// shorthand {"V0": .., "d": ..} for the centered rectangular barrier.
  static PotentialProfile from_json(const std::string& text);
  std::string to_json() const;

  const std::vector<Segment>& segments() const { return segments_; }
  bool empty() const { return segments_.empty(); }
  std::size_t size() const { return segments_.size(); }

  double support_left() const { return segments_.empty() ? 0.0 : segments_.front().x_left; }
  double support_right() const { return segments_.empty() ? 0.0 : segments_.back().x_right; }
  double support_width() const { return support_right() - support_left(); }

  double potential_at(double x) const;
  double max_abs_potential() const;

  /// True when V(x) = V(-c - x + c') ... i.e. the profile is mirror
  /// symmetric about the midpoint of its support.
  bool is_symmetric(double tol = 1e-12) const;

  /// Profile reflected through the origin (x -> -x).
  PotentialProfile mirrored() const;

  /// New profile with V raised by delta_v on `region`.  Region endpoints
  /// must coincide with existing segment boundaries or lie outside the
  /// support; the exterior part is materialized as explicit V = 0
  /// segments before the offset is applied.  Throws std::invalid_argument
  /// when an endpoint falls strictly inside a segment.
  PotentialProfile with_region_offset(const Region& region, double delta_v) const;

  /// True if both region endpoints land on segment boundaries or outside
  /// the support (the alignment required by with_region_offset).
  bool region_is_aligned(const Region& region, double tol = 1e-9) const;

 private:
  std::vector<Segment> segments_;
};

}  // namespace barrierclock

#endif
