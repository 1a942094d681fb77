#include <algorithm>
#include <cctype>
#include <map>
#include <queue>
#include <sstream>

#include "tsurf/origami.hpp"

namespace tsurf {

Permutation then(const Permutation& a, const Permutation& b) {
  Permutation out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = b[a[i]];
  return out;
}

Permutation inverse(const Permutation& p) {
  Permutation out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = static_cast<int>(i);
  return out;
}

std::vector<std::vector<int>> cycles(const Permutation& p) {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::vector<int> cyc;
    for (int j = static_cast<int>(i); !seen[j]; j = p[j]) {
      seen[j] = true;
      cyc.push_back(j);
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

bool is_permutation(const Permutation& p) {
  std::vector<bool> hit(p.size(), false);
  for (int x : p) {
    if (x < 0 || x >= static_cast<int>(p.size()) || hit[x]) return false;
    hit[x] = true;
  }
  return true;
}

namespace {

[[noreturn]] void malformed(const std::string& msg) { throw Error(ErrorCode::malformed_permutation, msg); }

std::vector<int> numbers(std::string_view text) {
  std::vector<int> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    if (cur.size() > 9) malformed("label too large: " + cur);
    out.push_back(std::stoi(cur));
    cur.clear();
  };
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      cur += c;
    } else if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '[' || c == ']') {
      flush();
    } else {
      malformed("unexpected character '" + std::string(1, c) + "' in permutation");
    }
  }
  flush();
  return out;
}

}  // namespace

Permutation parse_permutation(std::string_view text, int n) {
  if (n < 1) malformed("number of squares must be positive");
  Permutation p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  if (text.find('(') != std::string_view::npos) {
    std::vector<bool> used(n, false);
    std::size_t pos = 0;
    while (pos < text.size()) {
      const char c = text[pos];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
        continue;
      }
      if (c != '(') malformed("expected '(' in cycle notation");
      const std::size_t close = text.find(')', pos);
      if (close == std::string_view::npos) malformed("unbalanced parenthesis in cycle notation");
      const auto cyc = numbers(text.substr(pos + 1, close - pos - 1));
      for (std::size_t k = 0; k < cyc.size(); ++k) {
        const int a = cyc[k] - 1;
        if (a < 0 || a >= n) malformed("label " + std::to_string(cyc[k]) + " out of range");
        if (used[a]) malformed("label " + std::to_string(cyc[k]) + " repeated");
        used[a] = true;
        p[a] = cyc[(k + 1) % cyc.size()] - 1;
      }
      pos = close + 1;
    }
    return p;
  }
  const auto img = numbers(text);
  if (img.empty()) return p;
  if (static_cast<int>(img.size()) != n) malformed("one-line permutation needs exactly n entries");
  for (int i = 0; i < n; ++i) p[i] = img[i] - 1;
  if (!is_permutation(p)) malformed("one-line notation is not a permutation");
  return p;
}

std::string cycle_string(const Permutation& p) {
  std::string out;
  for (const auto& c : cycles(p)) {
    if (c.size() == 1) continue;
    out += "(";
    for (std::size_t i = 0; i < c.size(); ++i) out += (i ? " " : "") + std::to_string(c[i] + 1);
    out += ")";
  }
  return out.empty() ? "()" : out;
}

Origami::Origami(Permutation sigma_h, Permutation sigma_v) : h_(std::move(sigma_h)), v_(std::move(sigma_v)) {
  if (h_.empty()) malformed("an origami needs at least one square");
  if (h_.size() != v_.size()) malformed("sigma_h and sigma_v act on different sets");
  if (!is_permutation(h_) || !is_permutation(v_)) malformed("sigma_h or sigma_v is not a permutation");
  std::vector<bool> seen(h_.size(), false);
  std::vector<int> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const int s = stack.back();
    stack.pop_back();
    for (int t : {h_[s], v_[s]}) {
      if (seen[t]) continue;
      seen[t] = true;
      ++count;
      stack.push_back(t);
    }
  }
  if (count != h_.size()) throw Error(ErrorCode::not_connected, "origami is not connected");
}

Origami relabeled(const Origami& o, const Permutation& relabel) {
  const int n = o.size();
  Permutation h(n), v(n);
  for (int i = 0; i < n; ++i) {
    h[relabel[i]] = relabel[o.h()[i]];
    v[relabel[i]] = relabel[o.v()[i]];
  }
  return Origami(std::move(h), std::move(v));
}

Origami canonical_form(const Origami& o) {
  const int n = o.size();
  Permutation best_h, best_v;
  Permutation label(n), h(n), v(n);
  std::vector<int> order(n);
  for (int base = 0; base < n; ++base) {
    std::fill(label.begin(), label.end(), -1);
    label[base] = 0;
    order[0] = base;
    int next = 1;
    for (int k = 0; k < n; ++k) {
      const int s = order[k];
      for (int t : {o.h()[s], o.v()[s]}) {
        if (label[t] >= 0) continue;
        label[t] = next;
        order[next++] = t;
      }
    }
    for (int i = 0; i < n; ++i) {
      h[label[i]] = label[o.h()[i]];
      v[label[i]] = label[o.v()[i]];
    }
    if (best_h.empty() || std::tie(h, v) < std::tie(best_h, best_v)) {
      best_h = h;
      best_v = v;
    }
  }
  return Origami(std::move(best_h), std::move(best_v));
}

Permutation commutator(const Origami& o) {
  return then(then(then(o.h(), o.v()), inverse(o.h())), inverse(o.v()));
}

StratumDesc stratum(const Origami& o) {
  StratumDesc out;
  for (const auto& c : cycles(commutator(o))) {
    const int l = static_cast<int>(c.size());
    out.cycle_lengths.push_back(l);
    if (l >= 2)
      out.cone_points.push_back(l);
    else
      ++out.marked_regular_points;
  }
  std::sort(out.cycle_lengths.rbegin(), out.cycle_lengths.rend());
  std::sort(out.cone_points.rbegin(), out.cone_points.rend());
  const int vertices = static_cast<int>(out.cycle_lengths.size());
  out.genus = (2 - vertices + o.size()) / 2;
  return out;
}

PolygonComplex to_surface(const Origami& o) {
  const int n = o.size();
  std::vector<Polygon> squares(n);
  std::vector<Gluing> gluings;
  std::vector<VertexRef> marked;
  const FieldElem zero(0), one(1);
  for (int i = 0; i < n; ++i) {
    squares[i].vertices = {Vec2(zero, zero), Vec2(one, zero), Vec2(one, one), Vec2(zero, one)};
    gluings.push_back({{i, 1}, {o.h()[i], 3}});
    gluings.push_back({{i, 2}, {o.v()[i], 0}});
    marked.push_back({i, 0});
  }
  return PolygonComplex(std::move(squares), std::move(gluings), std::move(marked));
}

}  // namespace tsurf
