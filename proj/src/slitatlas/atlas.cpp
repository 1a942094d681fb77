#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "tsurf/slitatlas.hpp"

namespace tsurf {

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

bool is_endpoint_param(const Slit& s, const FieldElem& r) {
  return r.is_zero() || (s.kind == SlitKind::segment && r == FieldElem(1));
}

bool param_inside(const Slit& s, const FieldElem& r) {
  if (r.sign() < 0) return false;
  return s.kind == SlitKind::ray || compare(r, FieldElem(1)) <= 0;
}

// Slits may only meet in a common endpoint.
bool slits_conflict(const Slit& a, const Slit& b) {
  const Vec2 u = a.direction(), w = b.direction();
  const FieldElem den = cross(u, w);
  const Vec2 d = b.p0 - a.p0;
  if (!den.is_zero()) {
    const FieldElem ra = cross(d, w) / den, rb = cross(d, u) / den;
    if (!param_inside(a, ra) || !param_inside(b, rb)) return false;
    return !(is_endpoint_param(a, ra) && is_endpoint_param(b, rb));
  }
  if (!cross(u, d).is_zero()) return false;
  // Collinear: compare parameter intervals along u.
  const FieldElem uu = squared_norm(u);
  auto param = [&](const Vec2& p) { return dot((p - a.p0).eval(), u) / uu; };
  const FieldElem b0 = param(b.p0);
  const FieldElem wdir = dot(w, u) / uu;  // b's parameter speed
  // b covers [b0, b1] (or a half-line) in a's parameter.
  const bool a_ray = a.kind == SlitKind::ray, b_ray = b.kind == SlitKind::ray;
  FieldElem alo(0), ahi(1);
  FieldElem blo = b0, bhi = b0 + wdir;
  bool blo_inf = false, bhi_inf = false;
  if (b_ray) {
    if (wdir.sign() > 0)
      bhi_inf = true;
    else {
      blo_inf = true;
      bhi = b0;
    }
  } else if (compare(blo, bhi) > 0) {
    std::swap(blo, bhi);
  }
  // Intersection of [alo, ahi or inf) with [blo or -inf, bhi or inf).
  FieldElem lo = blo_inf ? alo : (compare(alo, blo) > 0 ? alo : blo);
  std::optional<FieldElem> hi;
  if (!a_ray) hi = ahi;
  if (!bhi_inf) hi = hi ? (compare(*hi, bhi) < 0 ? *hi : bhi) : bhi;
  if (hi && compare(lo, *hi) > 0) return false;
  if (!hi || compare(lo, *hi) < 0) return true;
  // Single common point: allowed when it is an endpoint of both.
  const Vec2 pt = a.p0 + u * lo;
  auto is_end = [](const Slit& s, const Vec2& p) {
    return equal(s.p0, p) || (s.kind == SlitKind::segment && equal(s.p1, p));
  };
  return !(is_end(a, pt) && is_end(b, pt));
}

bool sweep_passes_axis(const Vec2& a, const Vec2& b) {
  const Vec2 r(FieldElem(1), FieldElem(0));
  const Vec2 rr(dot(a, r), cross(a, r));
  const Vec2 bb(dot(a, b), cross(a, b));
  return compare_direction(rr, bb) < 0;
}

}  // namespace

SlitAtlas::SlitAtlas(int planes, std::vector<std::vector<Slit>> slits, std::vector<std::pair<BankRef, BankRef>> gluings,
                     Window window)
    : slits_(std::move(slits)), gluings_(std::move(gluings)), window_(std::move(window)) {
  if (planes < 1) fail(ErrorCode::constraint_violation, "an atlas needs at least one plane");
  slits_.resize(planes);
  tower_ = common_tower(tower_of(window_.lo), tower_of(window_.hi));
  if (compare(window_.lo(0), window_.hi(0)) >= 0 || compare(window_.lo(1), window_.hi(1)) >= 0)
    fail(ErrorCode::constraint_violation, "window must have positive width and height");
  for (int p = 0; p < planes; ++p) {
    const auto& ss = slits_[p];
    for (std::size_t i = 0; i < ss.size(); ++i) {
      tower_ = common_tower(tower_, tower_of(ss[i].p0));
      tower_ = common_tower(tower_, tower_of(ss[i].direction()));
      if (is_zero(ss[i].direction())) fail(ErrorCode::malformed_polygon, "slit of zero length");
      for (std::size_t j = 0; j < i; ++j)
        if (slits_conflict(ss[j], ss[i]))
          fail(ErrorCode::overlapping_slits, "slits " + std::to_string(j) + " and " + std::to_string(i) +
                                                 " of plane " + std::to_string(p) + " intersect");
    }
  }

  partner_.resize(planes);
  for (int p = 0; p < planes; ++p) partner_[p].resize(slits_[p].size());
  std::vector<int> parent(planes);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [a, b] : gluings_) {
    for (const BankRef& r : {a, b}) {
      if (r.plane < 0 || r.plane >= planes || r.slit < 0 || r.slit >= static_cast<int>(slits_[r.plane].size()))
        fail(ErrorCode::incongruent_gluing, "gluing refers to a missing slit");
      if (partner_[r.plane][r.slit][static_cast<int>(r.bank)])
        fail(ErrorCode::incongruent_gluing, "bank glued twice");
    }
    if (a.bank == b.bank) fail(ErrorCode::incongruent_gluing, "glued banks must be opposite");
    const Slit &sa = slits_[a.plane][a.slit], &sb = slits_[b.plane][b.slit];
    if (sa.kind != sb.kind) fail(ErrorCode::incongruent_gluing, "a segment can only be glued to a segment");
    const Vec2 ua = sa.direction(), ub = sb.direction();
    const bool congruent = sa.kind == SlitKind::segment ? equal(ua, ub) : parallel(ua, ub) && dot(ua, ub).sign() > 0;
    if (!congruent) fail(ErrorCode::incongruent_gluing, "glued slits are not translates");
    if (a.plane == b.plane && a.slit == b.slit) fail(ErrorCode::incongruent_gluing, "slit glued to itself");
    partner_[a.plane][a.slit][static_cast<int>(a.bank)] = b;
    partner_[b.plane][b.slit][static_cast<int>(b.bank)] = a;
    parent[root(a.plane)] = root(b.plane);
  }
  for (int p = 0; p < planes; ++p) {
    if (root(p) != root(0)) fail(ErrorCode::not_connected, "gluing graph is not connected");
    for (const auto& banks : partner_[p])
      for (const auto& b : banks) truncated_ = truncated_ || !b;
  }
  find_singularities();
}

std::optional<BankRef> SlitAtlas::partner(const BankRef& b) const {
  return partner_.at(b.plane).at(b.slit)[static_cast<int>(b.bank)];
}

Vec2 SlitAtlas::translation(const BankRef& b) const {
  const auto p = partner(b);
  if (!p) throw Error(ErrorCode::constraint_violation, "bank is not glued");
  return slits_[p->plane][p->slit].p0 - slits_[b.plane][b.slit].p0;
}

int SlitAtlas::singularity_at(int plane, int slit, int end) const { return singularity_of_.at(plane).at(slit)[end]; }

void SlitAtlas::find_singularities() {
  // Endpoint ids, then identification by co-location and by gluing.
  struct End {
    int plane, slit, end;
  };
  std::vector<End> ends;
  std::vector<std::vector<std::array<int, 2>>> id(planes());
  for (int p = 0; p < planes(); ++p) {
    id[p].resize(slits_[p].size(), {-1, -1});
    for (int s = 0; s < static_cast<int>(slits_[p].size()); ++s) {
      const int n_ends = slits_[p][s].kind == SlitKind::segment ? 2 : 1;
      for (int e = 0; e < n_ends; ++e) {
        id[p][s][e] = static_cast<int>(ends.size());
        ends.push_back({p, s, e});
      }
    }
  }
  auto pos = [&](const End& e) {
    const Slit& s = slits_[e.plane][e.slit];
    return e.end == 0 ? s.p0 : s.p1;
  };
  std::vector<int> parent(ends.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < ends.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (ends[i].plane == ends[j].plane && equal(pos(ends[i]), pos(ends[j])))
        parent[root(static_cast<int>(i))] = root(static_cast<int>(j));
  for (const auto& [a, b] : gluings_) {
    const int n_ends = slits_[a.plane][a.slit].kind == SlitKind::segment ? 2 : 1;
    for (int e = 0; e < n_ends; ++e) parent[root(id[a.plane][a.slit][e])] = root(id[b.plane][b.slit][e]);
  }

  // Slits emanating from an endpoint, counterclockwise.
  auto emanating = [&](int plane, const Vec2& q) {
    std::vector<std::pair<int, int>> out;  // (slit, end)
    for (int s = 0; s < static_cast<int>(slits_[plane].size()); ++s) {
      const Slit& sl = slits_[plane][s];
      if (equal(sl.p0, q)) out.push_back({s, 0});
      if (sl.kind == SlitKind::segment && equal(sl.p1, q)) out.push_back({s, 1});
    }
    auto dir = [this, plane](std::pair<int, int> x) {
      const Vec2 u = slits_[plane][x.first].direction();
      return x.second == 0 ? u : Vec2(-u);
    };
    std::sort(out.begin(), out.end(), [&](auto x, auto y) { return compare_direction(dir(x), dir(y)) < 0; });
    return std::make_pair(out, dir);
  };

  std::map<int, int> class_index;
  singularity_of_.resize(planes());
  for (int p = 0; p < planes(); ++p) singularity_of_[p].resize(slits_[p].size(), {-1, -1});
  for (std::size_t i = 0; i < ends.size(); ++i) {
    const int r = root(static_cast<int>(i));
    auto [it, fresh] = class_index.emplace(r, static_cast<int>(singularities_.size()));
    if (fresh) singularities_.emplace_back();
    singularity_of_[ends[i].plane][ends[i].slit][ends[i].end] = it->second;
  }

  // Corner walk from one endpoint of every class.
  std::vector<bool> done(singularities_.size(), false);
  for (const End& start : ends) {
    const int cls = singularity_of_[start.plane][start.slit][start.end];
    if (done[cls]) continue;
    done[cls] = true;
    Singularity& sing = singularities_[cls];
    int turns = 0;
    bool closed = true;
    End cur = start;
    std::vector<std::pair<int, Vec2>> seen;
    do {
      const Vec2 q = pos(cur);
      bool listed = false;
      for (const auto& [pl, v] : seen) listed = listed || (pl == cur.plane && equal(v, q));
      if (!listed) {
        seen.emplace_back(cur.plane, q);
        sing.incidences.push_back({cur.plane, cur.slit, cur.end, q});
      }
      const auto [em, dir] = emanating(cur.plane, q);
      std::size_t k = 0;
      while (em[k] != std::make_pair(cur.slit, cur.end)) ++k;
      const auto next = em[(k + 1) % em.size()];
      turns += em.size() == 1 ? 1 : (sweep_passes_axis(dir(em[k]), dir(next)) ? 1 : 0);
      const Bank hit = next.second == 0 ? Bank::right : Bank::left;
      const auto other = partner({cur.plane, next.first, hit});
      if (!other) {
        closed = false;
        break;
      }
      cur = {other->plane, other->slit, next.second};
    } while (!(cur.plane == start.plane && cur.slit == start.slit && cur.end == start.end));
    if (closed) {
      sing.turns = turns;
    } else {
      // Collect the remaining incidences of an open walk.
      for (const End& e : ends) {
        if (singularity_of_[e.plane][e.slit][e.end] != cls) continue;
        bool listed = false;
        for (const auto& [pl, v] : seen) listed = listed || (pl == e.plane && equal(v, pos(e)));
        if (!listed) {
          seen.emplace_back(e.plane, pos(e));
          sing.incidences.push_back({e.plane, e.slit, e.end, pos(e)});
        }
      }
    }
  }
}

}  // namespace tsurf
