#include "thetacell/realization.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

#include "thetacell/error.hpp"
#include "thetacell/lifting.hpp"
#include "thetacell/necklace.hpp"

namespace thetacell {

namespace {

std::shared_ptr<const ThetaCategory> label_cat(const ProductCategory& base) {
  auto c = std::dynamic_pointer_cast<const ThetaCategory>(base.first_ptr());
  if (!c) throw UsageError("enrichment base must be a Theta truncation times Delta");
  return c;
}

std::shared_ptr<const ThetaCategory> delta_cat(const ProductCategory& base) {
  auto d = std::dynamic_pointer_cast<const ThetaCategory>(base.second_ptr());
  if (!d || d->level() != 1) throw UsageError("enrichment base must be a Theta truncation times Delta");
  return d;
}

// Simplices of Delta^1 at level p are indexed by their number of ones, which
// is their position in lexicographic order.
int ones_of(Elem e) { return e; }
Elem with_ones(int ones) { return ones; }

int simplicial_level(const ProductCategory& base, ObjId o) {
  return static_cast<const ThetaCategory&>(base.second()).object(base.components(o).second).n();
}

}  // namespace

std::shared_ptr<const ProductCategory> enrichment_base(int level, int bound) {
  if (level < 1) throw UsageError("enrichment needs Theta level >= 1");
  return product_category(theta_category(level - 1, bound), theta_category(1, bound), bound);
}

Elem EnrichedCat::identity_at(int x, ObjId o) const {
  ObjId t = *base->terminal();
  return hom(x, x).act(base->hom(o, t).at(0), ids.at(x));
}

PresheafMap EnrichedCat::composition_map(int x, int y, int z) const {
  FinPresheaf src = product(hom(x, y), hom(y, z));
  return map_from_function(src, hom(x, z), [&](ObjId o, Elem e) {
    auto parts = product_components(src, o, e);
    return compose(x, y, z, o, parts[0], parts[1]);
  });
}

LawReport check_enriched_laws(const EnrichedCat& d) {
  LawReport r;
  const int n = d.objects;
  const int objs = d.base->object_count();
  auto fail = [&](std::string why) {
    if (r.ok) r.failure = std::move(why);
    r.ok = false;
  };
  for (int x = 0; x < n && r.ok; ++x)
    for (int y = 0; y < n && r.ok; ++y)
      for (ObjId o = 0; o < objs && r.ok; ++o)
        for (Elem f = 0; f < d.hom(x, y).size(o); ++f) {
          ++r.checked;
          if (d.compose(x, x, y, o, d.identity_at(x, o), f) != f || d.compose(x, y, y, o, f, d.identity_at(y, o)) != f) {
            fail("unit law fails at " + std::to_string(x) + "->" + std::to_string(y) + " " + d.base->object_name(o));
            break;
          }
        }
  for (int x = 0; x < n && r.ok; ++x)
    for (int y = 0; y < n && r.ok; ++y)
      for (int z = 0; z < n && r.ok; ++z) {
        std::string why;
        if (!is_natural(d.composition_map(x, y, z), &why)) fail("composition is not natural: " + why);
        for (int w = 0; w < n && r.ok; ++w)
          for (ObjId o = 0; o < objs && r.ok; ++o) {
            const int a = d.hom(x, y).size(o), b = d.hom(y, z).size(o), c = d.hom(z, w).size(o);
            for (Elem f = 0; f < a && r.ok; ++f)
              for (Elem g = 0; g < b && r.ok; ++g) {
                Elem fg = d.compose(x, y, z, o, f, g);
                for (Elem h = 0; h < c; ++h) {
                  ++r.checked;
                  if (d.compose(x, z, w, o, fg, h) != d.compose(x, y, w, o, f, d.compose(y, z, w, o, g, h))) {
                    fail("associativity fails at " + std::to_string(x) + std::to_string(y) + std::to_string(z) +
                         std::to_string(w) + " " + d.base->object_name(o));
                    break;
                  }
                }
              }
          }
      }
  return r;
}

LawReport check_functor_laws(const EnrichedFunctor& f, const EnrichedCat& s, const EnrichedCat& t) {
  LawReport r;
  const int n = s.objects;
  auto fail = [&](std::string why) {
    if (r.ok) r.failure = std::move(why);
    r.ok = false;
  };
  if (static_cast<int>(f.object_map.size()) != n) {
    fail("object map has the wrong size");
    return r;
  }
  for (int x = 0; x < n && r.ok; ++x)
    for (int y = 0; y < n && r.ok; ++y) {
      std::string why;
      if (!is_natural(f.hom(x, y), &why)) fail("hom map not natural: " + why);
    }
  for (int x = 0; x < n && r.ok; ++x)
    for (ObjId o = 0; o < s.base->object_count(); ++o) {
      ++r.checked;
      if (f.hom(x, x)(o, s.identity_at(x, o)) != t.identity_at(f.object_map[x], o)) {
        fail("identity of " + std::to_string(x) + " not preserved");
        break;
      }
    }
  for (int x = 0; x < n && r.ok; ++x)
    for (int y = 0; y < n && r.ok; ++y)
      for (int z = 0; z < n && r.ok; ++z)
        for (ObjId o = 0; o < s.base->object_count() && r.ok; ++o)
          for (Elem a = 0; a < s.hom(x, y).size(o) && r.ok; ++a)
            for (Elem b = 0; b < s.hom(y, z).size(o); ++b) {
              ++r.checked;
              const int fx = f.object_map[x], fy = f.object_map[y], fz = f.object_map[z];
              if (f.hom(x, z)(o, s.compose(x, y, z, o, a, b)) != t.compose(fx, fy, fz, o, f.hom(x, y)(o, a), f.hom(y, z)(o, b))) {
                fail("composition not preserved at " + std::to_string(x) + std::to_string(y) + std::to_string(z) + " " +
                     s.base->object_name(o));
                break;
              }
            }
  return r;
}

EnrichedFunctor compose(const EnrichedFunctor& g, const EnrichedFunctor& f) {
  const int n = static_cast<int>(f.object_map.size());
  EnrichedFunctor h;
  for (int x : f.object_map) h.object_map.push_back(g.object_map.at(x));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) h.homs.push_back(compose(g.hom(f.object_map[x], f.object_map[y]), f.hom(x, y)));
  return h;
}

bool operator==(const EnrichedFunctor& a, const EnrichedFunctor& b) {
  if (a.object_map != b.object_map || a.homs.size() != b.homs.size()) return false;
  for (std::size_t i = 0; i < a.homs.size(); ++i)
    if (a.homs[i].comp != b.homs[i].comp) return false;
  return true;
}

EnrichedCat realize_labeled_simplex(const std::vector<Label>& labels, std::shared_ptr<const ProductCategory> base) {
  auto c = label_cat(*base);
  auto delta = delta_cat(*base);
  const int n = static_cast<int>(labels.size());
  std::vector<FinPresheaf> pulled;
  for (const auto& l : labels) pulled.push_back(pullback_projection(label_presheaf(l, c), base, 0));
  FinPresheaf interval = pullback_projection(representable(delta, delta->object_id(ThetaObj::simplex(1))), base, 1);

  EnrichedCat d;
  d.base = base;
  d.objects = n + 1;
  FinPresheaf pt = terminal_presheaf(base);
  FinPresheaf none = empty_presheaf(base);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      if (i > j) {
        d.homs.push_back(none);
      } else if (i == j) {
        d.homs.push_back(pt);
      } else {
        std::vector<FinPresheaf> factors{pulled[i]};
        for (int k = i + 2; k <= j; ++k) {
          factors.push_back(interval);
          factors.push_back(pulled[k - 1]);
        }
        d.homs.push_back(product(factors));
      }
    }
  d.ids.assign(n + 1, 0);
  auto homs = d.homs;
  auto* b = base.get();
  d.compose = [homs, b, n](int x, int y, int z, ObjId o, Elem f, Elem g) -> Elem {
    if (x == y) return g;
    if (y == z) return f;
    const int stride = n + 1;
    auto pf = product_components(homs[x * stride + y], o, f);
    auto pg = product_components(homs[y * stride + z], o, g);
    pf.push_back(with_ones(simplicial_level(*b, o) + 1));
    pf.insert(pf.end(), pg.begin(), pg.end());
    return product_element(homs[x * stride + z], o, pf);
  };
  return d;
}

std::shared_ptr<const EnrichedCat> realize_object(const ThetaObj& t, std::shared_ptr<const ProductCategory> base) {
  static std::mutex mu;
  static std::map<std::pair<const ProductCategory*, ThetaObj>, std::shared_ptr<const EnrichedCat>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(base.get(), t);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<Label> labels;
  for (const auto& c : t.labels) labels.push_back(Label::full(c));
  auto d = std::make_shared<const EnrichedCat>(realize_labeled_simplex(labels, base));
  cache.emplace(key, d);
  return d;
}

EnrichedFunctor realize_map(const ThetaMap& f, const ThetaObj& s, const ThetaObj& t,
                            std::shared_ptr<const ProductCategory> base, MergeRule rule) {
  if (!is_valid_map(f, s, t)) throw UsageError("realize_map: map does not match its objects");
  auto c = label_cat(*base);
  auto qs = realize_object(s, base);
  auto qt = realize_object(t, base);
  const int n = s.n();
  const auto& g = f.alpha;
  EnrichedFunctor out;
  out.object_map = g;
  // Label arrows f_{i,k} : c_i -> d_k.
  std::vector<std::vector<ArrowId>> label(n + 1);
  for (int i = 1; i <= n; ++i)
    for (int k = g[i - 1] + 1; k <= g[i]; ++k)
      label[i].push_back(c->arrow_id(c->object_id(s.labels[i - 1]), c->object_id(t.labels[k - 1]),
                                     f.comps[i - 1][k - g[i - 1] - 1]));
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b) {
      const FinPresheaf& src = qs->hom(a, b);
      const FinPresheaf& dst = qt->hom(g[a], g[b]);
      if (a >= b || g[a] == g[b]) {
        out.homs.push_back(map_from_function(src, dst, [](ObjId, Elem) { return 0; }));
        continue;
      }
      out.homs.push_back(map_from_function(src, dst, [&](ObjId o, Elem e) {
        auto parts = product_components(src, o, e);
        const ObjId eo = base->components(o).first;
        const int len = 2 * (g[b] - g[a]) - 1;
        std::vector<Elem> res(len, with_ones(0));
        std::vector<char> seen(len, 0);
        for (int i = a + 1; i <= b; ++i) {
          ArrowId xi = c->hom(eo, c->object_id(s.labels[i - 1]))[parts[2 * (i - a - 1)]];
          for (int k = g[i - 1] + 1; k <= g[i]; ++k)
            res[2 * (k - g[a] - 1)] = c->hom_index(c->compose(label[i][k - g[i - 1] - 1], xi));
        }
        for (int w = a + 1; w < b; ++w) {
          const int v = g[w];
          if (v == g[a] || v == g[b]) continue;
          const int pos = 2 * (v - g[a]) - 1;
          const int tw = ones_of(parts[2 * (w - a) - 1]);
          if (!seen[pos]) {
            res[pos] = with_ones(tw);
            seen[pos] = 1;
          } else {
            res[pos] = with_ones(rule == MergeRule::Max ? std::max(ones_of(res[pos]), tw) : std::min(ones_of(res[pos]), tw));
          }
        }
        return product_element(dst, o, res);
      }));
    }
  return out;
}

std::vector<EnrichedFunctor> coherent_nerve(const EnrichedCat& d, const ThetaObj& t, long budget) {
  auto c = label_cat(*d.base);
  for (const auto& l : t.labels)
    if (!c->find_object(l)) throw TruncationError("coherent_nerve: label " + to_string(l, c->level()) + " outside the base");
  if (d.base->bound() < dim(t) - 1) throw TruncationError("coherent_nerve: homs truncated below the generators");
  auto q = realize_object(t, d.base);
  const int n = t.n();
  const int m = d.objects;
  std::vector<std::pair<int, int>> pairs;
  for (int len = 1; len <= n; ++len)
    for (int a = 0; a + len <= n; ++a) pairs.push_back({a, a + len});

  std::vector<EnrichedFunctor> out;
  long spent = 0;
  std::vector<int> obj(n + 1, 0);
  std::vector<PresheafMap> maps((n + 1) * (n + 1));
  auto at = [&](int a, int b) -> PresheafMap& { return maps[a * (n + 1) + b]; };

  auto rec = [&](auto&& self, std::size_t pi) -> void {
    if (pi == pairs.size()) {
      EnrichedFunctor f;
      f.object_map = obj;
      f.homs = maps;
      out.push_back(std::move(f));
      return;
    }
    auto [a, b] = pairs[pi];
    const FinPresheaf& src = q->hom(a, b);
    const FinPresheaf& dst = d.hom(obj[a], obj[b]);
    ExtensionProblem prob{src, Subobject(src), {}, dst};
    prob.fixed_values.resize(d.base->object_count());
    bool consistent = true;
    for (ObjId o = 0; o < d.base->object_count() && consistent; ++o) {
      prob.fixed_values[o].assign(src.size(o), -1);
      for (Elem e = 0; e < src.size(o); ++e) {
        std::optional<Elem> val;
        auto parts = product_components(src, o, e);
        for (int w = a + 1; w < b; ++w) {
          if (ones_of(parts[2 * (w - a) - 1]) != simplicial_level(*d.base, o) + 1) continue;
          std::vector<Elem> left(parts.begin(), parts.begin() + 2 * (w - a) - 1);
          std::vector<Elem> right(parts.begin() + 2 * (w - a), parts.end());
          Elem l = product_element(q->hom(a, w), o, left);
          Elem r = product_element(q->hom(w, b), o, right);
          Elem v = d.compose(obj[a], obj[w], obj[b], o, at(a, w)(o, l), at(w, b)(o, r));
          if (val && *val != v) consistent = false;
          val = v;
        }
        if (val) {
          prob.fixed.insert(o, e);
          prob.fixed_values[o][e] = *val;
        }
      }
    }
    if (!consistent) return;
    std::vector<PresheafMap> found;
    ExtensionOutcome eo = enumerate_extensions(prob, budget - spent, [&](const PresheafMap& h) {
      found.push_back(h);
      return true;
    });
    spent += eo.trials;
    if (eo.budget_exhausted || spent > budget) throw BudgetExceeded("coherent_nerve: extension budget exhausted");
    for (auto& h : found) {
      at(a, b) = std::move(h);
      self(self, pi + 1);
    }
  };

  const int total = n + 1;
  std::vector<int> assign(total, 0);
  while (true) {
    obj = assign;
    {
      for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= n; ++b) {
          const FinPresheaf& src = q->hom(a, b);
          const FinPresheaf& dst = d.hom(obj[a], obj[b]);
          if (a == b) {
            const int x = obj[a];
            at(a, b) = map_from_function(src, dst, [&](ObjId o, Elem) { return d.identity_at(x, o); });
          } else if (a > b) {
            at(a, b) = map_from_function(src, dst, [](ObjId, Elem) -> Elem { throw IntegrityError("empty hom"); });
          }
        }
      rec(rec, 0);
    }
    int i = total - 1;
    while (i >= 0 && assign[i] == m - 1) assign[i--] = 0;
    if (i < 0) break;
    ++assign[i];
  }
  return out;
}

namespace {

std::vector<int> functor_key(const EnrichedFunctor& f) {
  std::vector<int> k = f.object_map;
  for (const auto& h : f.homs)
    for (const auto& row : h.comp) {
      k.push_back(-1);
      k.insert(k.end(), row.begin(), row.end());
    }
  return k;
}

struct NerveImpl final : detail::PresheafImpl {
  NerveImpl(std::shared_ptr<const ThetaCategory> cat, std::vector<int> sizes, std::shared_ptr<const EnrichedCat> d,
            std::vector<std::vector<EnrichedFunctor>> functors)
      : PresheafImpl(cat, std::move(sizes)), theta(std::move(cat)), d(std::move(d)), functors(std::move(functors)) {
    index.resize(this->functors.size());
    for (std::size_t o = 0; o < this->functors.size(); ++o)
      for (std::size_t e = 0; e < this->functors[o].size(); ++e) index[o][functor_key(this->functors[o][e])] = static_cast<Elem>(e);
  }

  Elem act(ArrowId f, Elem x) const override {
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(f, x);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    ObjId s = theta->source(f), t = theta->target(f);
    EnrichedFunctor g = compose(functors[t].at(x), realize_map(theta->arrow(f), theta->object(s), theta->object(t), d->base));
    auto it = index[s].find(functor_key(g));
    if (it == index[s].end()) throw IntegrityError("coherent nerve: precomposite functor not enumerated");
    memo.emplace(key, it->second);
    return it->second;
  }

  std::string describe(ObjId o, Elem x) const override {
    std::string s = "F(";
    for (std::size_t i = 0; i < functors[o][x].object_map.size(); ++i)
      s += (i ? "," : "") + std::to_string(functors[o][x].object_map[i]);
    return s + ")#" + std::to_string(x);
  }

  std::shared_ptr<const ThetaCategory> theta;
  std::shared_ptr<const EnrichedCat> d;
  std::vector<std::vector<EnrichedFunctor>> functors;
  std::vector<std::map<std::vector<int>, Elem>> index;
  mutable std::mutex mu;
  mutable std::map<std::pair<ArrowId, Elem>, Elem> memo;
};

}  // namespace

FinPresheaf coherent_nerve_presheaf(std::shared_ptr<const EnrichedCat> d, std::shared_ptr<const ThetaCategory> cat) {
  if (cat->level() != label_cat(*d->base)->level() + 1) throw UsageError("coherent nerve: Theta level does not match the base");
  std::vector<std::vector<EnrichedFunctor>> functors(cat->object_count());
  std::vector<int> sizes(cat->object_count());
  for (ObjId o = 0; o < cat->object_count(); ++o) {
    functors[o] = coherent_nerve(*d, cat->object(o));
    sizes[o] = static_cast<int>(functors[o].size());
  }
  return FinPresheaf(std::make_shared<NerveImpl>(cat, std::move(sizes), std::move(d), std::move(functors)));
}

EnrichedCat free_arrow(const FinPresheaf& x, std::shared_ptr<const ProductCategory> base) {
  EnrichedCat d;
  d.base = base;
  d.objects = 2;
  FinPresheaf pt = terminal_presheaf(base);
  d.homs = {pt, pullback_projection(x, base, 0), empty_presheaf(base), pt};
  d.ids = {0, 0};
  d.compose = [](int x, int y, int z, ObjId, Elem f, Elem g) -> Elem {
    if (x == y) return g;
    if (y == z) return f;
    throw IntegrityError("free arrow: no composable pair");
  };
  return d;
}

}  // namespace thetacell

namespace thetacell {

namespace {

// Nerve of the free category on the graph 0 -> 1 -> ... -> n with a_k arrows
// k-1 -> k. An m-simplex is a vertex chain v_0 <= ... <= v_m with one arrow
// for every k in (v_0, v_m]; the key lists the chain and then the arrows.
struct FreeNerve {
  std::vector<std::vector<std::vector<int>>> keys;  // by level
  std::vector<std::map<std::vector<int>, Elem>> index;
  FinPresheaf nerve;

  Elem find(int m, const std::vector<int>& key) const {
    auto it = index[m].find(key);
    return it == index[m].end() ? -1 : it->second;
  }
};

FreeNerve free_nerve(const std::vector<int>& arrows) {
  const int n = static_cast<int>(arrows.size());
  auto delta = theta_category(1, std::max(n, 1));
  FreeNerve fnv;
  const int levels = delta->bound() + 1;
  fnv.keys.resize(levels);
  fnv.index.resize(levels);
  for (int m = 0; m < levels; ++m) {
    std::vector<int> v(m + 1, 0);
    while (true) {
      std::vector<int> key = v;
      auto rec = [&](auto&& self, int k) -> void {
        if (k > v[m]) {
          fnv.index[m][key] = static_cast<Elem>(fnv.keys[m].size());
          fnv.keys[m].push_back(key);
          return;
        }
        for (int a = 0; a < arrows[k - 1]; ++a) {
          key.push_back(a);
          self(self, k + 1);
          key.pop_back();
        }
      };
      rec(rec, v[0] + 1);
      int i = m;
      while (i >= 0 && v[i] == n) --i;
      if (i < 0) break;
      ++v[i];
      for (int r = i + 1; r <= m; ++r) v[r] = v[i];
    }
  }
  std::vector<int> sizes(delta->object_count());
  for (ObjId o = 0; o < delta->object_count(); ++o) sizes[o] = static_cast<int>(fnv.keys[delta->object(o).n()].size());
  auto keys = fnv.keys;
  auto index = fnv.index;
  fnv.nerve = make_presheaf(delta, sizes, [delta, keys, index](ArrowId f, Elem x) {
    const int m = delta->object(delta->target(f)).n();
    const int q = delta->object(delta->source(f)).n();
    MonotoneMap th = to_monotone(delta->arrow(f), m);
    const auto& key = keys[m][x];
    std::vector<int> out;
    for (int r = 0; r <= q; ++r) out.push_back(key[th(r)]);
    const int lo = out.front(), hi = out.back();
    for (int k = lo + 1; k <= hi; ++k) out.push_back(key[m + 1 + k - key[0] - 1]);
    auto it = index[q].find(out);
    if (it == index[q].end()) {
      std::string msg = "free nerve: missing face of";
      for (int v : key) msg += " " + std::to_string(v);
      msg += " under " + th.to_string();
      throw IntegrityError(msg);
    }
    return it->second;
  });
  return fnv;
}

struct FlagKey {
  int necklace;
  std::vector<int> entry;
  auto operator<=>(const FlagKey&) const = default;
};

}  // namespace

PointwiseReport pointwise_compare(const std::vector<Label>& labels, int level, const ThetaObj& c, int i, int j,
                                  int max_level) {
  const int n = static_cast<int>(labels.size());
  if (level < 1 || i < 0 || j > n || i >= j || max_level < 0) throw UsageError("pointwise_compare: bad arguments");
  int bound = dim(c) + max_level;
  for (const auto& l : labels) bound = std::max(bound, dim(l.carrier));
  auto base = enrichment_base(level, bound);
  auto ccat = label_cat(*base);
  auto delta = delta_cat(*base);
  if (!ccat->find_object(c)) throw UsageError("pointwise_compare: c is not an object of the label category");
  EnrichedCat q = realize_labeled_simplex(labels, base);
  const FinPresheaf& hij = q.hom(i, j);

  std::vector<FinPresheaf> label_ps;
  for (const auto& l : labels) label_ps.push_back(label_presheaf(l, ccat));

  PointwiseReport rep;
  auto fail = [&](std::string why) {
    if (rep.ok) rep.failure = std::move(why);
    rep.ok = false;
  };

  struct AtObject {
    FreeNerve nerve;
    std::unique_ptr<FlaggedNecklaces> flagged;
    std::vector<std::map<FlagKey, int>> flags;  // by level
  };
  std::map<ObjId, AtObject> cache;
  auto at_object = [&](ObjId co) -> AtObject& {
    auto it = cache.find(co);
    if (it != cache.end()) return it->second;
    std::vector<int> arrows;
    for (const auto& l : label_ps) arrows.push_back(l.size(co));
    AtObject a{free_nerve(arrows), nullptr, {}};
    const Elem vi = a.nerve.find(0, {i}), vj = a.nerve.find(0, {j});
    a.flagged = std::make_unique<FlaggedNecklaces>(a.nerve.nerve, vi, vj, j - i);
    for (int p = 0; p <= max_level; ++p) {
      std::map<FlagKey, int> m;
      auto all = a.flagged->simplices(p);
      for (int k = 0; k < static_cast<int>(all.size()); ++k) m[{all[k].necklace, all[k].entry}] = k;
      a.flags.push_back(std::move(m));
    }
    return cache.emplace(co, std::move(a)).first->second;
  };

  // The flagged necklace of an element of Q(i,j) at (c', [p]).
  auto phi = [&](ObjId co, int p, Elem e) -> FlagKey {
    AtObject& a = at_object(co);
    ObjId o = *base->find_object(co, delta->object_id(ThetaObj::simplex(p)));
    auto parts = product_components(hij, o, e);
    auto ones = [&](int v) { return parts[2 * (v - i) - 1]; };
    std::vector<int> verts{i}, jts{i};
    for (int v = i + 1; v < j; ++v) {
      if (ones(v) >= 1) verts.push_back(v);
      if (ones(v) == p + 1) jts.push_back(v);
    }
    verts.push_back(j);
    jts.push_back(j);
    NecklaceMap nm{Necklace{}, {}, -1};
    for (std::size_t b = 0; b + 1 < jts.size(); ++b) {
      std::vector<int> key;
      for (int v : verts)
        if (v >= jts[b] && v <= jts[b + 1]) key.push_back(v);
      const int m = static_cast<int>(key.size()) - 1;
      for (int k = jts[b] + 1; k <= jts[b + 1]; ++k) key.push_back(parts[2 * (k - i - 1)]);
      nm.shape.beads.push_back(m);
      nm.beads.push_back(a.nerve.find(m, key));
    }
    FlagKey fk{a.flagged->find(nm), {}};
    for (int v : verts)
      if (std::find(jts.begin(), jts.end(), v) == jts.end()) fk.entry.push_back(p + 1 - ones(v));
    return fk;
  };

  const ObjId cid = ccat->object_id(c);
  for (int p = 0; p <= max_level && rep.ok; ++p) {
    AtObject& a = at_object(cid);
    ObjId o = *base->find_object(cid, delta->object_id(ThetaObj::simplex(p)));
    rep.q_counts.push_back(hij.size(o));
    rep.necklace_counts.push_back(static_cast<long>(a.flags[p].size()));
    std::set<int> hit;
    for (Elem e = 0; e < hij.size(o); ++e) {
      FlagKey fk = phi(cid, p, e);
      auto it = a.flags[p].find(fk);
      if (fk.necklace < 0 || it == a.flags[p].end()) {
        fail("element " + hij.describe(o, e) + " has no flagged necklace");
        break;
      }
      hit.insert(it->second);
    }
    if (rep.ok && (static_cast<long>(hit.size()) != hij.size(o) || hit.size() != a.flags[p].size()))
      fail("no bijection at level " + std::to_string(p));
  }

  // Simplicial operators.
  for (int p = 0; p <= max_level && rep.ok; ++p)
    for (int qd = 0; qd <= max_level && rep.ok; ++qd)
      for (const auto& th : enumerate_monotone(qd, p)) {
        ObjId so = *base->find_object(cid, delta->object_id(ThetaObj::simplex(qd)));
        ObjId to = *base->find_object(cid, delta->object_id(ThetaObj::simplex(p)));
        ArrowId f = base->arrow_id(ccat->identity(cid),
                                   delta->arrow_id(delta->object_id(ThetaObj::simplex(qd)),
                                                   delta->object_id(ThetaObj::simplex(p)), from_monotone(th)));
        AtObject& a = at_object(cid);
        for (Elem e = 0; e < hij.size(to) && rep.ok; ++e) {
          ++rep.arrows_checked;
          FlagKey x = phi(cid, p, e);
          FlaggedNecklace img = a.flagged->act(th.values, p, FlaggedNecklace{x.necklace, x.entry});
          FlagKey y = phi(cid, qd, hij.act(f, e));
          if (y.necklace != img.necklace || y.entry != img.entry)
            fail("simplicial operator " + th.to_string() + " does not commute at " + hij.describe(to, e));
        }
        (void)so;
      }

  // Arrows g : c' -> c of the label category.
  for (ObjId co = 0; co < ccat->object_count() && rep.ok; ++co) {
    if (ccat->dim(co) > dim(c)) continue;
    for (ArrowId g : ccat->hom(co, cid)) {
      for (int p = 0; p <= max_level && rep.ok; ++p) {
        ObjId to = *base->find_object(cid, delta->object_id(ThetaObj::simplex(p)));
        ArrowId f = base->arrow_id(g, delta->identity(delta->object_id(ThetaObj::simplex(p))));
        AtObject& a = at_object(cid);
        AtObject& b = at_object(co);
        for (Elem e = 0; e < hij.size(to) && rep.ok; ++e) {
          ++rep.arrows_checked;
          FlagKey x = phi(cid, p, e);
          const NecklaceMap& nm = a.flagged->necklaces()[x.necklace];
          NecklaceMap moved{nm.shape, {}, -1};
          for (std::size_t bd = 0; bd < nm.beads.size(); ++bd) {
            const int m = nm.shape.beads[bd];
            std::vector<int> key = a.nerve.keys[m][nm.beads[bd]];
            for (int k = key[0] + 1; k <= key[m]; ++k) {
              int& s = key[m + 1 + k - key[0] - 1];
              s = label_ps[k - 1].act(g, s);
            }
            moved.beads.push_back(b.nerve.find(m, key));
          }
          FlagKey want{b.flagged->find(moved), x.entry};
          FlagKey got = phi(co, p, hij.act(f, e));
          if (want.necklace != got.necklace || want.entry != got.entry)
            fail("arrow " + ccat->arrow_name(g) + " does not commute at " + hij.describe(to, e));
        }
      }
    }
  }

  // k_star of the labeled region at c against the nerve.
  AtObject& a = at_object(cid);
  std::vector<std::vector<Elem>> member_pos;
  for (int k = 1; k <= n; ++k) {
    auto sub = label_subobject(labels[k - 1], ccat);
    ObjId ck = ccat->object_id(labels[k - 1].carrier);
    std::vector<Elem> pos(ccat->hom(cid, ck).size(), -1);
    auto mem = sub.members(cid);
    for (std::size_t r = 0; r < mem.size(); ++r) pos[mem[r]] = static_cast<Elem>(r);
    member_pos.push_back(std::move(pos));
  }
  LabeledRegion region{SimplicialSubset::full(n), labels};
  auto key_of = [&](const ThetaMap& x, int p) {
    std::vector<int> key = x.alpha;
    for (int r = 1; r <= p; ++r)
      for (int k = x.alpha[r - 1] + 1; k <= x.alpha[r]; ++k) {
        ObjId ck = ccat->object_id(labels[k - 1].carrier);
        ArrowId u = ccat->arrow_id(cid, ck, x.comps[r - 1][k - x.alpha[r - 1] - 1]);
        key.push_back(member_pos[k - 1][ccat->hom_index(u)]);
      }
    return key;
  };
  const int kmax = std::min(max_level, a.nerve.nerve.bound());
  for (int p = 0; p <= kmax && rep.ok; ++p) {
    ThetaObj cp(std::vector<ThetaObj>(p, c));
    auto elems = v_elements(region, cp);
    std::set<Elem> seen;
    for (const auto& x : elems) {
      Elem s = a.nerve.find(p, key_of(x, p));
      if (s < 0 || !seen.insert(s).second) {
        fail("k_star element at level " + std::to_string(p) + " does not match the nerve");
        break;
      }
      for (int qd = 0; qd <= p && rep.ok; ++qd)
        for (const auto& th : enumerate_monotone(qd, p)) {
          if (!th.is_injective()) continue;
          ThetaObj cq(std::vector<ThetaObj>(qd, c));
          ThetaMap face = compose(x, constant_label_map(th, identity_map(c)));
          auto d1 = a.nerve.nerve.base_ptr();
          auto dc = std::static_pointer_cast<const ThetaCategory>(d1);
          ArrowId fa = dc->arrow_id(dc->object_id(ThetaObj::simplex(qd)), dc->object_id(ThetaObj::simplex(p)),
                                    from_monotone(th));
          if (a.nerve.find(qd, key_of(face, qd)) != a.nerve.nerve.act(fa, s)) {
            fail("k_star face " + th.to_string() + " does not match the nerve");
            break;
          }
        }
    }
    if (rep.ok && static_cast<long>(seen.size()) != static_cast<long>(a.nerve.keys[p].size()))
      fail("k_star count differs from the nerve at level " + std::to_string(p));
  }
  return rep;
}

}  // namespace thetacell
