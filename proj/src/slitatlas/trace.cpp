#include <algorithm>
#include <map>
#include <set>

#include "tsurf/slitatlas.hpp"

namespace tsurf {

namespace {

const Vec2 kOrigin(FieldElem(0), FieldElem(0));

bool on_slit_interior(const Slit& s, const Vec2& x) {
  const Vec2 u = s.direction();
  const Vec2 w = x - s.p0;
  if (!cross(u, w).is_zero()) return false;
  const FieldElem t = dot(w, u);
  if (t.sign() <= 0) return false;
  return s.kind == SlitKind::ray || compare(t, squared_norm(u)) < 0;
}

// Parameter at which x + s d leaves the window (0 when already outside).
FieldElem window_exit(const Window& w, const Vec2& x, const Vec2& d) {
  std::optional<FieldElem> best;
  for (int i = 0; i < 2; ++i) {
    if (d(i).is_zero()) {
      if (compare(x(i), w.lo(i)) < 0 || compare(x(i), w.hi(i)) > 0) return FieldElem(0);
      continue;
    }
    const FieldElem s = ((d(i).sign() > 0 ? w.hi(i) : w.lo(i)) - x(i)) / d(i);
    if (!best || compare(s, *best) < 0) best = s;
  }
  if (best->sign() < 0) return FieldElem(0);
  return *best;
}

FieldElem squared_distance_to_ray(const Vec2& x, const Vec2& p, const Vec2& d) {
  const Vec2 w = x - p;
  const FieldElem t = dot(w, d);
  if (t.sign() <= 0) return squared_norm(w);
  return squared_norm(w) - t * t / squared_norm(d);
}

struct Key {
  Vec2 v;
  int start, end;
};

struct KeyLess {
  bool operator()(const Key& a, const Key& b) const {
    if (int c = compare_lex(a.v, b.v)) return c < 0;
    if (a.start != b.start) return a.start < b.start;
    return a.end < b.end;
  }
};

}  // namespace

TraceResult trace_ray(const SlitAtlas& a, int plane, const Vec2& start, const Vec2& dir, int max_crossings,
                      const std::optional<FieldElem>& max_length_sq) {
  if (plane < 0 || plane >= a.planes()) throw Error(ErrorCode::constraint_violation, "no such plane");
  if (is_zero(dir)) throw Error(ErrorCode::constraint_violation, "zero direction");
  for (const Slit& s : a.slits()[plane])
    if (on_slit_interior(s, start)) throw Error(ErrorCode::starts_on_slit_interior, "start lies inside a slit");

  TraceResult res;
  const FieldElem dd = squared_norm(dir);
  FieldElem travelled(0);  // in units of dir
  int p = plane;
  Vec2 x = start;

  auto finish = [&](TraceStop why, const FieldElem& s) {
    res.terminated = why;
    res.end_plane = p;
    res.end_position = x + dir * s;
    res.developed_endpoint = start + dir * (travelled + s);
    return res;
  };
  auto too_long = [&](const FieldElem& s) {
    if (!max_length_sq) return false;
    const FieldElem t = travelled + s;
    return compare(t * t * dd, *max_length_sq) > 0;
  };

  for (;;) {
    const auto& slits = a.slits()[p];
    std::optional<FieldElem> best;
    int best_slit = -1, best_end = -1;  // end >= 0 means a singularity
    for (int j = 0; j < static_cast<int>(slits.size()); ++j) {
      const Slit& sl = slits[j];
      const Vec2 u = sl.direction();
      const Vec2 w = sl.p0 - x;
      const FieldElem den = cross(dir, u);
      auto offer = [&](const FieldElem& s, int end) {
        if (!best || compare(s, *best) < 0) {
          best = s;
          best_slit = j;
          best_end = end;
        }
      };
      if (!den.is_zero()) {
        const FieldElem s = cross(w, u) / den;
        const FieldElem r = cross(w, dir) / den;
        if (s.sign() > 0 && r.sign() > 0 && (sl.kind == SlitKind::ray || compare(r, FieldElem(1)) < 0)) offer(s, -1);
      }
      const int n_ends = sl.kind == SlitKind::segment ? 2 : 1;
      for (int e = 0; e < n_ends; ++e) {
        const Vec2 we = (e == 0 ? sl.p0 : sl.p1) - x;
        if (!cross(dir, we).is_zero()) continue;
        const FieldElem t = dot(dir, we);
        if (t.sign() > 0) offer(t / dd, e);
      }
    }
    const FieldElem exit = window_exit(a.window(), x, dir);
    if (!best || compare(exit, *best) < 0) {
      if (too_long(exit)) return finish(TraceStop::length_bound, exit);
      return finish(TraceStop::escaped_window, exit);
    }
    if (too_long(*best)) return finish(TraceStop::length_bound, *best);
    if (best_end >= 0) {
      res.singularity = a.singularity_at(p, best_slit, best_end);
      return finish(TraceStop::hit_singularity, *best);
    }
    if (static_cast<int>(res.crossings.size()) >= max_crossings) return finish(TraceStop::max_crossings, *best);
    const Slit& sl = slits[best_slit];
    const Bank bank = side(sl.direction(), sl.p0, x) > 0 ? Bank::left : Bank::right;
    const BankRef here{p, best_slit, bank};
    const auto other = a.partner(here);
    if (!other) return finish(TraceStop::escaped_window, *best);
    res.crossings.push_back({p, best_slit, bank});
    x = x + dir * *best + a.translation(here);
    travelled += *best;
    p = other->plane;
  }
}

SaddleConnectionSet saddle_connections_window(const SlitAtlas& a, const FieldElem& bound, int max_crossings) {
  if (bound.sign() <= 0) throw Error(ErrorCode::constraint_violation, "length bound must be positive");
  if (max_crossings < 0) throw Error(ErrorCode::constraint_violation, "crossing budget must be nonnegative");
  const FieldElem b2 = bound * bound;
  SaddleConnectionSet out;
  out.bound = bound;
  std::map<Key, int, KeyLess> found;

  for (int sid = 0; sid < static_cast<int>(a.singularities().size()); ++sid) {
    for (const auto& inc : a.singularities()[sid].incidences) {
      // Charts reachable through short developed slits, keyed by plane and the
      // offset taking chart coordinates to coordinates centred at the start.
      std::set<std::pair<int, Vec2>, decltype([](const auto& l, const auto& r) {
                 if (l.first != r.first) return l.first < r.first;
                 return VecLess{}(l.second, r.second);
               })>
          seen;
      std::vector<std::pair<int, Vec2>> frontier{{inc.plane, Vec2(-inc.position)}};
      seen.insert(frontier.front());
      std::vector<Vec2> candidates;
      for (int depth = 0; !frontier.empty(); ++depth) {
        std::vector<std::pair<int, Vec2>> next;
        for (const auto& [pl, off] : frontier) {
          const auto& slits = a.slits()[pl];
          for (int j = 0; j < static_cast<int>(slits.size()); ++j) {
            const Slit& sl = slits[j];
            const int n_ends = sl.kind == SlitKind::segment ? 2 : 1;
            for (int e = 0; e < n_ends; ++e) {
              const Vec2 v = (e == 0 ? sl.p0 : sl.p1) + off;
              if (!is_zero(v) && compare(squared_norm(v), b2) <= 0) candidates.push_back(v);
            }
            if (depth >= max_crossings) continue;
            const Vec2 p0 = sl.p0 + off;
            const FieldElem dist = sl.kind == SlitKind::segment
                                       ? squared_distance_to_segment(kOrigin, p0, Vec2(sl.p1 + off))
                                       : squared_distance_to_ray(kOrigin, p0, sl.dir);
            if (compare(dist, b2) > 0) continue;
            // A ray from the origin meets the bank facing the origin.
            const int sd = side(sl.direction(), p0, kOrigin);
            if (sd == 0) continue;
            const BankRef here{pl, j, sd > 0 ? Bank::left : Bank::right};
            const auto other = a.partner(here);
            if (!other) continue;
            std::pair<int, Vec2> st{other->plane, Vec2(off - a.translation(here))};
            if (seen.insert(st).second) next.push_back(std::move(st));
          }
        }
        frontier = std::move(next);
      }

      std::sort(candidates.begin(), candidates.end(),
                [](const Vec2& l, const Vec2& r) { return compare(squared_norm(l), squared_norm(r)) < 0; });
      std::vector<Vec2> traced;
      for (const Vec2& c : candidates) {
        bool dup = false;
        for (const Vec2& t : traced) dup = dup || (parallel(t, c) && dot(t, c).sign() > 0);
        if (dup) continue;
        traced.push_back(c);
        const auto tr = trace_ray(a, inc.plane, inc.position, c, max_crossings, b2);
        if (tr.terminated == TraceStop::max_crossings) out.truncated = true;
        if (tr.terminated != TraceStop::hit_singularity) continue;
        const Vec2 hol = tr.developed_endpoint - inc.position;
        ++found[Key{hol, sid, *tr.singularity}];
      }
    }
  }
  for (const auto& [k, m] : found) out.connections.push_back({k.v, k.start, k.end, m});
  return out;
}

ModuleDesc cycle_module(const SaddleConnectionSet& s) {
  int n = 0;
  for (const auto& c : s.connections) n = std::max({n, c.start + 1, c.end + 1});
  std::vector<std::optional<Vec2>> pot(n);
  std::vector<std::vector<std::pair<int, Vec2>>> adj(n);
  for (const auto& c : s.connections) {
    adj[c.start].push_back({c.end, c.holonomy});
    adj[c.end].push_back({c.start, Vec2(-c.holonomy)});
  }
  for (int r = 0; r < n; ++r) {
    if (pot[r]) continue;
    pot[r] = kOrigin;
    std::vector<int> stack{r};
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (const auto& [w, h] : adj[v])
        if (!pot[w]) {
          pot[w] = Vec2(*pot[v] + h);
          stack.push_back(w);
        }
    }
  }
  std::vector<Vec2> gens;
  for (const auto& c : s.connections) {
    const Vec2 g = *pot[c.start] + c.holonomy - *pot[c.end];
    if (!is_zero(g)) gens.push_back(g);
  }
  return make_module(std::move(gens));
}

namespace {

bool same_module(const ModuleDesc& x, const ModuleDesc& y) {
  if (x.rank_z != y.rank_z || x.span_dim != y.span_dim) return false;
  for (const auto& g : x.generators)
    if (!q_contains(y, g)) return false;
  for (const auto& g : y.generators)
    if (!q_contains(x, g)) return false;
  return true;
}

}  // namespace

WindowModules holonomy_modules_window(const SlitAtlas& a, const FieldElem& bound, int max_crossings) {
  const auto sc = saddle_connections_window(a, bound, max_crossings);
  WindowModules m;
  m.lambda0 = make_module(sc.vectors());
  m.lambda = cycle_module(sc);
  m.truncated = sc.truncated || a.truncated();
  const auto sc2 = saddle_connections_window(a, bound, 2 * std::max(max_crossings, 1));
  m.stabilized = same_module(m.lambda0, make_module(sc2.vectors())) && same_module(m.lambda, cycle_module(sc2));
  return m;
}

}  // namespace tsurf
