#include "thetacell/theta.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

#include "thetacell/error.hpp"

namespace thetacell {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

int dim(const ThetaObj& a) {
  int d = a.n();
  for (const auto& c : a.labels) d += dim(c);
  return d;
}

int height(const ThetaObj& a) {
  int h = 0;
  for (const auto& c : a.labels) h = std::max(h, height(c));
  return a.is_leaf() ? 0 : h + 1;
}

int compare(const ThetaObj& a, const ThetaObj& b) {
  int da = dim(a), db = dim(b);
  if (da != db) return da < db ? -1 : 1;
  if (a.n() != b.n()) return a.n() < b.n() ? -1 : 1;
  for (int i = 0; i < a.n(); ++i)
    if (int c = compare(a.labels[i], b.labels[i]); c != 0) return c;
  return 0;
}

bool operator==(const ThetaObj& a, const ThetaObj& b) {
  if (a.n() != b.n()) return false;
  for (int i = 0; i < a.n(); ++i)
    if (!(a.labels[i] == b.labels[i])) return false;
  return true;
}

std::size_t hash_value(const ThetaObj& a) {
  std::size_t h = 0x51ed27 + a.labels.size();
  for (const auto& c : a.labels) h = mix(h, hash_value(c));
  return h;
}

int compare(const ThetaMap& a, const ThetaMap& b) {
  if (a.alpha != b.alpha) return a.alpha < b.alpha ? -1 : 1;
  for (std::size_t i = 0; i < a.comps.size() && i < b.comps.size(); ++i) {
    const auto& x = a.comps[i];
    const auto& y = b.comps[i];
    for (std::size_t j = 0; j < x.size() && j < y.size(); ++j)
      if (int c = compare(x[j], y[j]); c != 0) return c;
    if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
  }
  if (a.comps.size() != b.comps.size()) return a.comps.size() < b.comps.size() ? -1 : 1;
  return 0;
}

bool operator==(const ThetaMap& a, const ThetaMap& b) {
  if (a.alpha != b.alpha || a.comps.size() != b.comps.size()) return false;
  for (std::size_t i = 0; i < a.comps.size(); ++i) {
    if (a.comps[i].size() != b.comps[i].size()) return false;
    for (std::size_t j = 0; j < a.comps[i].size(); ++j)
      if (!(a.comps[i][j] == b.comps[i][j])) return false;
  }
  return true;
}

std::size_t hash_value(const ThetaMap& a) {
  std::size_t h = 0x2545f4914f6cdd1dULL;
  for (int v : a.alpha) h = mix(h, static_cast<std::size_t>(v));
  for (const auto& slot : a.comps) {
    h = mix(h, slot.size());
    for (const auto& c : slot) h = mix(h, hash_value(c));
  }
  return h;
}

ThetaMap identity_map(const ThetaObj& a) {
  ThetaMap f;
  f.alpha.resize(a.n() + 1);
  for (int i = 0; i <= a.n(); ++i) f.alpha[i] = i;
  f.comps.resize(a.n());
  for (int i = 0; i < a.n(); ++i) f.comps[i].push_back(identity_map(a.labels[i]));
  return f;
}

ThetaMap compose(const ThetaMap& g, const ThetaMap& f) {
  ThetaMap h;
  h.alpha.resize(f.alpha.size());
  for (std::size_t i = 0; i < f.alpha.size(); ++i) {
    int k = f.alpha[i];
    if (k < 0 || k >= static_cast<int>(g.alpha.size()))
      throw UsageError("Theta maps not composable");
    h.alpha[i] = g.alpha[k];
  }
  h.comps.resize(f.comps.size());
  for (std::size_t i = 1; i < f.alpha.size(); ++i) {
    auto& out = h.comps[i - 1];
    for (int k = f.alpha[i - 1] + 1; k <= f.alpha[i]; ++k) {
      const ThetaMap& fk = f.comps[i - 1][k - f.alpha[i - 1] - 1];
      for (int j = g.alpha[k - 1] + 1; j <= g.alpha[k]; ++j)
        out.push_back(compose(g.comps[k - 1][j - g.alpha[k - 1] - 1], fk));
    }
  }
  return h;
}

bool is_valid_map(const ThetaMap& f, const ThetaObj& s, const ThetaObj& t) {
  if (static_cast<int>(f.alpha.size()) != s.n() + 1) return false;
  if (static_cast<int>(f.comps.size()) != s.n()) return false;
  for (int i = 0; i <= s.n(); ++i) {
    if (f.alpha[i] < 0 || f.alpha[i] > t.n()) return false;
    if (i > 0 && f.alpha[i] < f.alpha[i - 1]) return false;
  }
  for (int i = 1; i <= s.n(); ++i) {
    const auto& slot = f.comps[i - 1];
    if (static_cast<int>(slot.size()) != f.alpha[i] - f.alpha[i - 1]) return false;
    for (int j = f.alpha[i - 1] + 1; j <= f.alpha[i]; ++j)
      if (!is_valid_map(slot[j - f.alpha[i - 1] - 1], s.labels[i - 1], t.labels[j - 1]))
        return false;
  }
  return true;
}

std::vector<ThetaMap> hom(const ThetaObj& s, const ThetaObj& t) {
  std::vector<ThetaMap> out;
  for (const auto& a : enumerate_monotone(s.n(), t.n())) {
    std::vector<std::vector<ThetaMap>> lists;
    std::vector<std::pair<int, int>> where;
    bool empty = false;
    for (int i = 1; i <= s.n(); ++i)
      for (int j = a.values[i - 1] + 1; j <= a.values[i]; ++j) {
        lists.push_back(hom(s.labels[i - 1], t.labels[j - 1]));
        where.emplace_back(i, j);
        if (lists.back().empty()) empty = true;
      }
    if (empty) continue;
    std::vector<std::size_t> idx(lists.size(), 0);
    while (true) {
      ThetaMap f;
      f.alpha = a.values;
      f.comps.resize(s.n());
      for (std::size_t q = 0; q < lists.size(); ++q)
        f.comps[where[q].first - 1].push_back(lists[q][idx[q]]);
      out.push_back(std::move(f));
      int q = static_cast<int>(lists.size()) - 1;
      while (q >= 0 && idx[q] + 1 == lists[q].size()) idx[q--] = 0;
      if (q < 0) break;
      ++idx[q];
    }
  }
  return out;
}

ThetaMap from_monotone(const MonotoneMap& a) {
  ThetaMap f;
  f.alpha = a.values;
  f.comps.resize(a.source);
  for (int i = 1; i <= a.source; ++i)
    f.comps[i - 1].assign(a.values[i] - a.values[i - 1], ThetaMap{{0}, {}});
  return f;
}

MonotoneMap to_monotone(const ThetaMap& f, int target_n) { return MonotoneMap(target_n, f.alpha); }

ThetaMap constant_label_map(const MonotoneMap& a, const ThetaMap& u) {
  ThetaMap f;
  f.alpha = a.values;
  f.comps.resize(a.source);
  for (int i = 1; i <= a.source; ++i) f.comps[i - 1].assign(a.values[i] - a.values[i - 1], u);
  return f;
}

MultiFactor multi_factor(const ThetaObj& src, std::span<const ThetaObj> targets,
                         std::span<const ThetaMap> maps) {
  const int k = static_cast<int>(targets.size());
  const int p = src.n();
  MultiFactor out;
  if (p == 0) {
    out.degeneracy = identity_map(src);
    out.faces.assign(maps.begin(), maps.end());
    return out;
  }
  auto same = [&](int v, int w) {
    for (int j = 0; j < k; ++j)
      if (maps[j].alpha[v] != maps[j].alpha[w]) return false;
    return true;
  };
  std::vector<int> sigma(p + 1, 0);
  for (int v = 1; v <= p; ++v) sigma[v] = sigma[v - 1] + (same(v, v - 1) ? 0 : 1);
  const int q = sigma[p];

  out.degeneracy.alpha = sigma;
  out.degeneracy.comps.resize(p);
  out.faces.resize(k);
  for (int j = 0; j < k; ++j) {
    out.faces[j].alpha.assign(q + 1, 0);
    out.faces[j].comps.resize(q);
    for (int v = 0; v <= p; ++v) out.faces[j].alpha[sigma[v]] = maps[j].alpha[v];
  }
  out.middle.labels.resize(q);
  for (int i = 1; i <= p; ++i) {
    if (sigma[i] == sigma[i - 1]) continue;
    const int s = sigma[i];
    std::vector<ThetaObj> tg;
    std::vector<ThetaMap> mp;
    std::vector<int> owner;
    for (int j = 0; j < k; ++j) {
      const auto& a = maps[j].alpha;
      for (int l = a[i - 1] + 1; l <= a[i]; ++l) {
        tg.push_back(targets[j].labels[l - 1]);
        mp.push_back(maps[j].comps[i - 1][l - a[i - 1] - 1]);
        owner.push_back(j);
      }
    }
    MultiFactor sub = multi_factor(src.labels[i - 1], tg, mp);
    out.middle.labels[s - 1] = sub.middle;
    out.degeneracy.comps[i - 1].push_back(std::move(sub.degeneracy));
    for (std::size_t r = 0; r < owner.size(); ++r)
      out.faces[owner[r]].comps[s - 1].push_back(std::move(sub.faces[r]));
  }
  return out;
}

bool is_identity(const ThetaMap& f) {
  for (std::size_t i = 0; i < f.alpha.size(); ++i)
    if (f.alpha[i] != static_cast<int>(i)) return false;
  for (const auto& slot : f.comps)
    if (slot.size() != 1 || !is_identity(slot[0])) return false;
  return true;
}

bool is_nondegenerate_section(const ThetaObj& src, std::span<const ThetaObj> targets,
                              std::span<const ThetaMap> maps) {
  return is_identity(multi_factor(src, targets, maps).degeneracy);
}

ReedyFactor reedy_factor(const ThetaMap& f, const ThetaObj& s, const ThetaObj& t) {
  MultiFactor m = multi_factor(s, std::span<const ThetaObj>(&t, 1), std::span<const ThetaMap>(&f, 1));
  return {std::move(m.middle), std::move(m.degeneracy), std::move(m.faces[0])};
}

bool is_minus(const ThetaMap& f, const ThetaObj& s, const ThetaObj& t) {
  if (f.alpha.front() != 0 || f.alpha.back() != t.n()) return false;
  for (int i = 1; i <= s.n(); ++i) {
    int step = f.alpha[i] - f.alpha[i - 1];
    if (step > 1) return false;
    if (step == 1 && !is_minus(f.comps[i - 1][0], s.labels[i - 1], t.labels[f.alpha[i] - 1]))
      return false;
  }
  return true;
}

bool is_plus(const ThetaMap& f, const ThetaObj& s, const ThetaObj& t) {
  return is_nondegenerate_section(s, std::span<const ThetaObj>(&t, 1), std::span<const ThetaMap>(&f, 1));
}

bool is_mono(const ThetaMap& f, const ThetaObj& s, const ThetaObj& t, int level) {
  if (!is_valid_map(f, s, t)) throw UsageError("is_mono: map does not match its objects");
  for (const auto& u : enumerate_objects(level, dim(s))) {
    std::unordered_set<ThetaMap, ThetaMapHash> seen;
    for (const auto& x : hom(u, s))
      if (!seen.insert(compose(f, x)).second) return false;
  }
  return true;
}

std::vector<ThetaObj> enumerate_objects(int level, int max_dim) {
  if (level < 0) throw UsageError("negative Theta level");
  std::vector<ThetaObj> out;
  if (max_dim < 0) return out;
  out.emplace_back();
  if (level == 0) return out;
  std::vector<ThetaObj> lower = enumerate_objects(level - 1, max_dim - 1);
  std::vector<ThetaObj> cur;
  auto rec = [&](auto&& self, int budget) -> void {
    if (!cur.empty()) out.emplace_back(cur);
    if (budget < 1) return;
    for (const auto& c : lower) {
      int dc = dim(c);
      if (dc + 1 > budget) continue;
      cur.push_back(c);
      self(self, budget - 1 - dc);
      cur.pop_back();
    }
  };
  rec(rec, max_dim);
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(const ThetaObj& a, int level) {
  if (level <= 0) return "*";
  std::string s = "[" + std::to_string(a.n()) + "]";
  if (level == 1 || a.is_leaf()) return s;
  s += '(';
  for (int i = 0; i < a.n(); ++i) {
    if (i) s += ',';
    s += to_string(a.labels[i], level - 1);
  }
  return s + ')';
}

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  void skip() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool peek(char c) {
    skip();
    return pos < text.size() && text[pos] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos;
    return true;
  }
  bool accept(std::string_view w) {
    skip();
    if (text.substr(pos, w.size()) != w) return false;
    pos += w.size();
    return true;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw UsageError("cannot parse '" + std::string(text) + "' at " + std::to_string(pos) + ": " + what);
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  int number() {
    skip();
    std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (start == pos) fail("expected a number");
    return std::stoi(std::string(text.substr(start, pos - start)));
  }
  bool done() {
    skip();
    return pos == text.size();
  }
};

ThetaObj parse_obj(Cursor& c, int level) {
  if (c.accept('*')) return ThetaObj();
  if (level <= 0) {
    c.expect('[');
    if (c.number() != 0) c.fail("level 0 has only the point");
    c.expect(']');
    return ThetaObj();
  }
  c.expect('[');
  int n = c.number();
  c.expect(']');
  ThetaObj a = ThetaObj::simplex(n);
  if (c.accept('(')) {
    for (int i = 0; i < n; ++i) {
      if (i) c.expect(',');
      a.labels[i] = parse_obj(c, level - 1);
    }
    c.expect(')');
  }
  return a;
}

ThetaMap parse_map_rec(Cursor& c, const ThetaObj& s, const ThetaObj& t) {
  c.expect('(');
  if (!c.accept("alpha")) c.fail("expected alpha");
  c.expect('=');
  c.expect('[');
  ThetaMap f;
  if (!c.peek(']')) {
    f.alpha.push_back(c.number());
    while (c.accept(',')) f.alpha.push_back(c.number());
  }
  c.expect(']');
  if (static_cast<int>(f.alpha.size()) != s.n() + 1) c.fail("alpha has the wrong length");
  for (int i = 0; i <= s.n(); ++i)
    if (f.alpha[i] < 0 || f.alpha[i] > t.n() || (i && f.alpha[i] < f.alpha[i - 1]))
      c.fail("alpha is not a monotone map");
  f.comps.resize(s.n());
  std::vector<std::vector<bool>> given(s.n());
  for (int i = 1; i <= s.n(); ++i) {
    f.comps[i - 1].resize(f.alpha[i] - f.alpha[i - 1]);
    given[i - 1].assign(f.alpha[i] - f.alpha[i - 1], false);
  }
  while (c.accept(';')) {
    c.expect('f');
    c.expect('[');
    int i = c.number();
    c.expect(']');
    c.expect('[');
    int j = c.number();
    c.expect(']');
    c.expect('=');
    if (i < 1 || i > s.n() || j <= f.alpha[i - 1] || j > f.alpha[i]) c.fail("component index out of range");
    f.comps[i - 1][j - f.alpha[i - 1] - 1] = parse_map_rec(c, s.labels[i - 1], t.labels[j - 1]);
    given[i - 1][j - f.alpha[i - 1] - 1] = true;
  }
  c.expect(')');
  for (int i = 1; i <= s.n(); ++i)
    for (int j = f.alpha[i - 1] + 1; j <= f.alpha[i]; ++j) {
      if (given[i - 1][j - f.alpha[i - 1] - 1]) continue;
      if (!s.labels[i - 1].is_leaf() || !t.labels[j - 1].is_leaf()) c.fail("missing component");
      f.comps[i - 1][j - f.alpha[i - 1] - 1] = ThetaMap{{0}, {}};
    }
  return f;
}

}  // namespace

ThetaObj parse_object(std::string_view text, int level) {
  Cursor c{text};
  ThetaObj a = parse_obj(c, level);
  if (!c.done()) c.fail("trailing characters");
  if (height(a) > level) throw UsageError("object " + std::string(text) + " is not in Theta_" + std::to_string(level));
  return a;
}

std::string to_string(const ThetaMap& f, const ThetaObj& s, const ThetaObj& t) {
  std::string out = "(alpha=[";
  for (std::size_t i = 0; i < f.alpha.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(f.alpha[i]);
  }
  out += ']';
  for (int i = 1; i <= s.n(); ++i)
    for (int j = f.alpha[i - 1] + 1; j <= f.alpha[i]; ++j) {
      if (s.labels[i - 1].is_leaf() && t.labels[j - 1].is_leaf()) continue;
      out += "; f[" + std::to_string(i) + "][" + std::to_string(j) + "]=";
      out += to_string(f.comps[i - 1][j - f.alpha[i - 1] - 1], s.labels[i - 1], t.labels[j - 1]);
    }
  return out + ')';
}

ThetaMap parse_map(std::string_view text, const ThetaObj& s, const ThetaObj& t) {
  Cursor c{text};
  ThetaMap f = parse_map_rec(c, s, t);
  if (!c.done()) c.fail("trailing characters");
  return f;
}

namespace {

struct VecMapHash {
  std::size_t operator()(const std::vector<ThetaMap>& v) const {
    std::size_t h = v.size();
    for (const auto& m : v) h = mix(h, hash_value(m));
    return h;
  }
};

}  // namespace

CrReport check_cr_axioms(int level, int d, int arity, long budget) {
  CrReport rep;
  const auto objs = enumerate_objects(level, d);
  std::vector<std::vector<std::vector<ThetaMap>>> homs(objs.size(), std::vector<std::vector<ThetaMap>>(objs.size()));
  for (std::size_t a = 0; a < objs.size(); ++a)
    for (std::size_t b = 0; b < objs.size(); ++b) homs[a][b] = hom(objs[a], objs[b]);

  std::vector<std::size_t> tuple;
  auto check_tuple = [&]() {
    std::vector<ThetaObj> targets;
    int sum = 0;
    std::string tname = "(";
    for (std::size_t q = 0; q < tuple.size(); ++q) {
      targets.push_back(objs[tuple[q]]);
      sum += dim(objs[tuple[q]]);
      tname += (q ? "," : "") + to_string(objs[tuple[q]], level);
    }
    tname += ")";
    for (std::size_t c = 0; c < objs.size(); ++c) {
      std::vector<const std::vector<ThetaMap>*> lists;
      bool empty = false;
      for (auto t : tuple) {
        lists.push_back(&homs[c][t]);
        if (homs[c][t].empty()) empty = true;
      }
      long count = 0;
      if (!empty) {
        std::vector<std::size_t> idx(lists.size(), 0);
        std::vector<ThetaMap> maps(lists.size());
        while (true) {
          if (++rep.tuples_checked > budget) {
            rep.truncated = true;
            return false;
          }
          for (std::size_t q = 0; q < lists.size(); ++q) maps[q] = (*lists[q])[idx[q]];
          if (is_nondegenerate_section(objs[c], targets, maps)) {
            ++count;
            const std::string where = to_string(objs[c], level) + " -> " + tname;
            if (dim(objs[c]) > sum) {
              rep.ok = false;
              rep.violations.push_back("dimension: " + where);
            }
            for (std::size_t u = 0; u < objs.size() && dim(objs[u]) <= dim(objs[c]); ++u) {
              std::unordered_set<std::vector<ThetaMap>, VecMapHash> seen;
              bool mono = true;
              for (const auto& x : homs[u][c]) {
                std::vector<ThetaMap> key;
                for (const auto& m : maps) key.push_back(compose(m, x));
                if (!seen.insert(std::move(key)).second) {
                  mono = false;
                  break;
                }
              }
              if (!mono) {
                rep.ok = false;
                rep.violations.push_back("not monic at " + to_string(objs[u], level) + ": " + where);
                break;
              }
            }
          }
          int q = static_cast<int>(lists.size()) - 1;
          while (q >= 0 && idx[q] + 1 == lists[q]->size()) idx[q--] = 0;
          if (q < 0) break;
          ++idx[q];
        }
      }
      rep.nondegenerate_sections += count;
      rep.census.emplace_back(tname + " <- " + to_string(objs[c], level), count);
    }
    return true;
  };
  auto rec = [&](auto&& self, std::size_t from, int left) -> bool {
    if (!tuple.empty() && !check_tuple()) return false;
    if (left == 0) return true;
    for (std::size_t t = from; t < objs.size(); ++t) {
      tuple.push_back(t);
      bool go = self(self, t, left - 1);
      tuple.pop_back();
      if (!go) return false;
    }
    return true;
  };
  rec(rec, 0, arity);
  return rep;
}

}  // namespace thetacell
