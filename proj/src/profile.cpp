#include "barrierclock/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace barrierclock {

namespace {
constexpr double kEdgeTol = 1e-12;
}

Region::Region(double a, double b) : x1(a), x2(b) {
  if (!std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("Region: endpoints must be finite");
  if (x1 > x2) throw std::invalid_argument("Region: requires x1 <= x2");
}

PotentialProfile::PotentialProfile(std::vector<Segment> segments)
    : segments_(std::move(segments)) {
  for (const auto& s : segments_) {
    if (!std::isfinite(s.x_left) || !std::isfinite(s.x_right) || !std::isfinite(s.V))
      throw std::invalid_argument("PotentialProfile: non-finite segment");
    if (!(s.x_right > s.x_left))
      throw std::invalid_argument("PotentialProfile: zero- or negative-width segment");
  }
  std::sort(segments_.begin(), segments_.end(),
            [](const Segment& a, const Segment& b) { return a.x_left < b.x_left; });
  std::vector<Segment> normalized;
  normalized.reserve(segments_.size());
  for (const auto& s : segments_) {
    if (!normalized.empty()) {
      double gap = s.x_left - normalized.back().x_right;
      if (gap < -kEdgeTol)
        throw std::invalid_argument("PotentialProfile: overlapping segments");
      if (gap > kEdgeTol)
        normalized.push_back({normalized.back().x_right, s.x_left, 0.0});
      else if (gap != 0.0) {
        // snap tiny mismatches so boundaries are shared exactly
        Segment fixed = s;
        fixed.x_left = normalized.back().x_right;
        normalized.push_back(fixed);
        continue;
      }
    }
    normalized.push_back(s);
  }
  segments_ = std::move(normalized);
}

PotentialProfile PotentialProfile::rectangular(double V0, double d) {
  if (!(d > 0.0)) throw std::invalid_argument("rectangular: width must be positive");
  return PotentialProfile({{-d / 2.0, d / 2.0, V0}});
}

PotentialProfile PotentialProfile::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.is_object() && j.contains("V0") && j.contains("d"))
    return rectangular(j.at("V0").get<double>(), j.at("d").get<double>());
  if (!j.is_array())
    throw std::invalid_argument("profile JSON: expected array of segments or {V0,d}");
  std::vector<Segment> segs;
  for (const auto& item : j) {
    segs.push_back({item.at("x_left").get<double>(), item.at("x_right").get<double>(),
                    item.at("V").get<double>()});
  }
  return PotentialProfile(std::move(segs));
}

std::string PotentialProfile::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& s : segments_)
    j.push_back({{"x_left", s.x_left}, {"x_right", s.x_right}, {"V", s.V}});
  return j.dump();
}

double PotentialProfile::potential_at(double x) const {
  for (const auto& s : segments_)
    if (x >= s.x_left && x < s.x_right) return s.V;
  return 0.0;
}

double PotentialProfile::max_abs_potential() const {
  double m = 0.0;
  for (const auto& s : segments_) m = std::max(m, std::fabs(s.V));
  return m;
}

bool PotentialProfile::is_symmetric(double tol) const {
  const std::size_t n = segments_.size();
  const double c = 0.5 * (support_left() + support_right());
  for (std::size_t i = 0; i < n; ++i) {
    const Segment& a = segments_[i];
    const Segment& b = segments_[n - 1 - i];
    if (std::fabs((a.x_left - c) + (b.x_right - c)) > tol) return false;
    if (std::fabs((a.x_right - c) + (b.x_left - c)) > tol) return false;
    if (std::fabs(a.V - b.V) > tol) return false;
  }
  return true;
}

PotentialProfile PotentialProfile::mirrored() const {
  std::vector<Segment> segs;
  segs.reserve(segments_.size());
  for (auto it = segments_.rbegin(); it != segments_.rend(); ++it)
    segs.push_back({-it->x_right, -it->x_left, it->V});
  return PotentialProfile(std::move(segs));
}

bool PotentialProfile::region_is_aligned(const Region& region, double tol) const {
  auto aligned = [&](double x) {
    if (segments_.empty()) return true;
    if (x <= support_left() + tol || x >= support_right() - tol) return true;
    for (const auto& s : segments_)
      if (std::fabs(x - s.x_left) <= tol || std::fabs(x - s.x_right) <= tol) return true;
    return false;
  };
  return aligned(region.x1) && aligned(region.x2);
}

PotentialProfile PotentialProfile::with_region_offset(const Region& region,
                                                      double delta_v) const {
  if (!region_is_aligned(region))
    throw std::invalid_argument(
        "with_region_offset: region endpoints must coincide with segment "
        "boundaries or lie outside the support");
  if (region.length() == 0.0) return *this;

  // Materialize the union of the support and the region as segments.
  std::vector<Segment> segs = segments_;
  if (segments_.empty()) {
    segs.push_back({region.x1, region.x2, 0.0});
  } else {
    if (region.x1 < support_left() - kEdgeTol) {
      double hi = std::min(region.x2, support_left());
      segs.push_back({region.x1, hi, 0.0});
    }
    if (region.x2 > support_right() + kEdgeTol) {
      double lo = std::max(region.x1, support_right());
      segs.push_back({lo, region.x2, 0.0});
    }
  }
  PotentialProfile extended(std::move(segs));

  const double tol = 1e-9;
  std::vector<Segment> out = extended.segments_;
  for (auto& s : out) {
    if (s.x_left >= region.x1 - tol && s.x_right <= region.x2 + tol) s.V += delta_v;
  }
  return PotentialProfile(std::move(out));
}

}  // namespace barrierclock
