#pragma once

#include <optional>
#include <vector>

#include "tsurf/geometry.hpp"
#include "tsurf/module.hpp"
#include "tsurf/surface.hpp"

namespace tsurf {

enum class SlitKind { segment, ray };

struct Slit {
  SlitKind kind = SlitKind::segment;
  Vec2 p0;
  Vec2 p1;   // segment end
  Vec2 dir;  // ray direction

  Vec2 direction() const { return kind == SlitKind::segment ? Vec2(p1 - p0) : dir; }
  static Slit segment(Vec2 a, Vec2 b) { return {SlitKind::segment, std::move(a), std::move(b), Vec2()}; }
  static Slit ray(Vec2 a, Vec2 d) { return {SlitKind::ray, std::move(a), Vec2(), std::move(d)}; }
};

// The left bank faces the points x with cross(direction, x - p0) > 0.
enum class Bank { left, right };

struct BankRef {
  int plane = 0;
  int slit = 0;
  Bank bank = Bank::left;
  friend auto operator<=>(const BankRef&, const BankRef&) = default;
};

// Axis-aligned box, the same in every plane.
struct Window {
  Vec2 lo, hi;
};

// A singular point: one incidence per plane position it occupies, in
// counterclockwise order of the corner walk.
struct Singularity {
  struct Incidence {
    int plane;
    int slit;
    int end;  // 0 = p0, 1 = p1
    Vec2 position;
  };
  std::vector<Incidence> incidences;
  std::optional<int> turns;  // angle 2 pi turns; empty when the walk does not close
};

class SlitAtlas {
 public:
  // Checks: slits pairwise disjoint within a plane except at shared
  // endpoints, glued banks opposite and congruent, gluing graph connected.
  SlitAtlas(int planes, std::vector<std::vector<Slit>> slits, std::vector<std::pair<BankRef, BankRef>> gluings,
            Window window);

  int planes() const { return static_cast<int>(slits_.size()); }
  const std::vector<std::vector<Slit>>& slits() const { return slits_; }
  const std::vector<std::pair<BankRef, BankRef>>& gluings() const { return gluings_; }
  const Window& window() const { return window_; }
  std::optional<BankRef> partner(const BankRef& b) const;
  // Translation from the plane of b to the plane of its partner.
  Vec2 translation(const BankRef& b) const;
  const std::vector<Singularity>& singularities() const { return singularities_; }
  int singularity_at(int plane, int slit, int end) const;
  // Some bank is unglued, so the atlas is a truncation.
  bool truncated() const { return truncated_; }
  TowerPtr tower() const { return tower_; }

 private:
  void find_singularities();

  std::vector<std::vector<Slit>> slits_;
  std::vector<std::pair<BankRef, BankRef>> gluings_;
  Window window_;
  std::vector<std::vector<std::array<std::optional<BankRef>, 2>>> partner_;
  std::vector<std::vector<std::array<int, 2>>> singularity_of_;
  std::vector<Singularity> singularities_;
  bool truncated_ = false;
  TowerPtr tower_;
};

enum class TraceStop { hit_singularity, max_crossings, escaped_window, length_bound };

struct Crossing {
  int plane;
  int slit;
  Bank bank;
};

struct TraceResult {
  std::vector<Crossing> crossings;
  Vec2 developed_endpoint;  // start + direction * length, in the start chart
  TraceStop terminated = TraceStop::escaped_window;
  std::optional<int> singularity;
  int end_plane = 0;
  Vec2 end_position;  // in the chart of end_plane
};

// Straight ray from `start` in `plane`. Stops at a slit endpoint, after
// max_crossings crossings, on leaving the window or an unglued bank, or once
// the squared length exceeds max_length_sq when given.
TraceResult trace_ray(const SlitAtlas& a, int plane, const Vec2& start, const Vec2& dir, int max_crossings,
                      const std::optional<FieldElem>& max_length_sq = std::nullopt);

SaddleConnectionSet saddle_connections_window(const SlitAtlas& a, const FieldElem& bound, int max_crossings);

struct WindowModules {
  ModuleDesc lambda, lambda0;
  bool stabilized = false;
  bool truncated = false;
};

// Lambda from cycles of the graph of saddle connections, Lambda0 from the
// saddle connections themselves.
WindowModules holonomy_modules_window(const SlitAtlas& a, const FieldElem& bound, int max_crossings);
// Absolute cycles only, from an already computed set.
ModuleDesc cycle_module(const SaddleConnectionSet& s);

}  // namespace tsurf
