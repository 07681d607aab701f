#include "thetacell/necklace.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "thetacell/error.hpp"

namespace thetacell {

namespace {

std::shared_ptr<const ThetaCategory> delta_of(const FinPresheaf& x) {
  auto c = std::dynamic_pointer_cast<const ThetaCategory>(x.base_ptr());
  if (!c || c->level() != 1) throw UsageError("necklaces need a simplicial set");
  return c;
}

Elem act_monotone(const FinPresheaf& x, int m, Elem s, const std::vector<int>& values) {
  auto d = delta_of(x);
  const int q = static_cast<int>(values.size()) - 1;
  ArrowId f = d->arrow_id(d->object_id(ThetaObj::simplex(q)), d->object_id(ThetaObj::simplex(m)),
                          from_monotone(MonotoneMap(m, values)));
  return x.act(f, s);
}

// Joint positions of a necklace, including both ends.
std::vector<int> joints(const Necklace& t) {
  std::vector<int> j{0};
  for (int m : t.beads) j.push_back(j.back() + m);
  return j;
}

}  // namespace

int Necklace::vertex_count() const { return std::accumulate(beads.begin(), beads.end(), 0) + 1; }
int Necklace::dimension() const { return std::accumulate(beads.begin(), beads.end(), 0); }

std::string Necklace::to_string() const {
  if (beads.empty()) return "D0";
  std::string s;
  for (std::size_t i = 0; i < beads.size(); ++i) s += (i ? "v" : "") + ("D" + std::to_string(beads[i]));
  return s;
}

Elem simplex_vertex(const FinPresheaf& x, int m, Elem s, int q) { return act_monotone(x, m, s, {q}); }

Elem simplex_face(const FinPresheaf& x, int m, Elem s, const std::vector<int>& vertices) {
  return act_monotone(x, m, s, vertices);
}

std::vector<NecklaceMap> necklace_maps(const Necklace& t, const FinPresheaf& x, Elem from, Elem to,
                                       bool nondegenerate_beads) {
  auto d = delta_of(x);
  std::vector<NecklaceMap> out;
  if (t.beads.empty()) {
    if (from == to) out.push_back({t, {}, from});
    return out;
  }
  for (int m : t.beads)
    if (m < 1 || m > d->bound()) return out;
  std::optional<EzData> ez;
  if (nondegenerate_beads) ez = eilenberg_zilber(x);
  // Simplices of each dimension grouped by their first vertex.
  std::map<int, std::vector<std::vector<Elem>>> by_first;
  for (int m : t.beads) {
    if (by_first.count(m)) continue;
    ObjId o = d->object_id(ThetaObj::simplex(m));
    auto& v = by_first[m];
    v.assign(x.size(d->object_id(ThetaObj::simplex(0))), {});
    for (Elem s = 0; s < x.size(o); ++s) {
      if (ez && !ez->nondegenerate(o, s)) continue;
      v[simplex_vertex(x, m, s, 0)].push_back(s);
    }
  }
  NecklaceMap cur{t, {}, -1};
  auto rec = [&](auto&& self, std::size_t b, Elem at) -> void {
    if (b == t.beads.size()) {
      if (at == to) out.push_back(cur);
      return;
    }
    const int m = t.beads[b];
    for (Elem s : by_first[m][at]) {
      cur.beads.push_back(s);
      self(self, b + 1, simplex_vertex(x, m, s, m));
      cur.beads.pop_back();
    }
  };
  rec(rec, 0, from);
  return out;
}

std::vector<NecklaceMap> all_necklace_maps(const FinPresheaf& x, Elem from, Elem to, int max_beads,
                                           bool nondegenerate_beads) {
  auto d = delta_of(x);
  std::vector<NecklaceMap> out;
  for (int k = 0; k <= max_beads; ++k) {
    std::vector<int> beads(k, 1);
    while (true) {
      auto part = necklace_maps(Necklace{beads}, x, from, to, nondegenerate_beads);
      out.insert(out.end(), part.begin(), part.end());
      int i = k - 1;
      while (i >= 0 && beads[i] == d->bound()) beads[i--] = 1;
      if (i < 0) break;
      ++beads[i];
    }
  }
  return out;
}

FlaggedNecklaces::FlaggedNecklaces(FinPresheaf x, Elem from, Elem to, int max_beads)
    : x_(std::move(x)),
      from_(from),
      to_(to),
      maps_(all_necklace_maps(x_, from, to, max_beads, true)),
      ez_(eilenberg_zilber(x_)) {}

std::vector<FlaggedNecklace> FlaggedNecklaces::simplices(int p) const {
  std::vector<FlaggedNecklace> out;
  for (int k = 0; k < static_cast<int>(maps_.size()); ++k) {
    const Necklace& t = maps_[k].shape;
    const int r = t.beads.empty() ? 0 : t.vertex_count() - static_cast<int>(t.beads.size()) - 1;
    if (r > 0 && p == 0) continue;
    std::vector<int> e(r, 1);
    while (true) {
      out.push_back({k, e});
      int i = r - 1;
      while (i >= 0 && e[i] == p) e[i--] = 1;
      if (i < 0) break;
      ++e[i];
    }
  }
  return out;
}

int FlaggedNecklaces::find(const NecklaceMap& m) const {
  for (int k = 0; k < static_cast<int>(maps_.size()); ++k)
    if (maps_[k].shape.beads == m.shape.beads && maps_[k].beads == m.beads && maps_[k].point == m.point) return k;
  return -1;
}

FlaggedNecklace FlaggedNecklaces::act(const std::vector<int>& theta, int p, const FlaggedNecklace& s) const {
  const NecklaceMap& nm = maps_.at(s.necklace);
  if (nm.shape.beads.empty()) return s;
  for (int v : theta)
    if (v < 0 || v > p) throw UsageError("simplicial operator out of range");
  const int q = static_cast<int>(theta.size()) - 1;
  const std::vector<int> jt = joints(nm.shape);
  const int nv = nm.shape.vertex_count();
  // Entry level of every vertex; joints enter at 0.
  std::vector<int> entry(nv, 0);
  for (int v = 0, r = 0, b = 0; v < nv; ++v) {
    if (v == jt[b]) {
      ++b;
      continue;
    }
    entry[v] = s.entry[r++];
  }
  std::vector<int> kept, new_joint;
  for (int v = 0; v < nv; ++v)
    if (entry[v] <= theta[q]) {
      kept.push_back(v);
      if (entry[v] <= theta[0]) new_joint.push_back(v);
    }
  NecklaceMap out{Necklace{}, {}, -1};
  const EzData& ez = ez_;
  auto dx = delta_of(x_);
  for (std::size_t a = 0; a + 1 < new_joint.size(); ++a) {
    const int lo = new_joint[a], hi = new_joint[a + 1];
    auto bead = std::upper_bound(jt.begin(), jt.end(), lo) - jt.begin() - 1;
    const int start = jt[bead];
    std::vector<int> local;
    for (int v : kept)
      if (v >= lo && v <= hi) local.push_back(v - start);
    const int m = nm.shape.beads[bead];
    Elem f = simplex_face(x_, m, nm.beads[bead], local);
    const int dim = static_cast<int>(local.size()) - 1;
    if (!ez.nondegenerate(dx->object_id(ThetaObj::simplex(dim)), f))
      throw IntegrityError("flagged necklace: a face of a bead is degenerate");
    out.shape.beads.push_back(dim);
    out.beads.push_back(f);
  }
  FlaggedNecklace res{find(out), {}};
  if (res.necklace < 0) throw IntegrityError("flagged necklace: face necklace missing from the enumeration");
  for (int v : kept) {
    if (std::find(new_joint.begin(), new_joint.end(), v) != new_joint.end()) continue;
    int r = 0;
    while (theta[r] < entry[v]) ++r;
    res.entry.push_back(r);
  }
  return res;
}

NecklaceSpace nec_mapping_space(const FinPresheaf& x, Elem from, Elem to, int max_beads, int degree_bound) {
  if (degree_bound < 0 || max_beads < 0) throw UsageError("necklace budgets must be nonnegative");
  NecklaceSpace res;
  res.objects = all_necklace_maps(x, from, to, max_beads, true);
  res.final = all_necklace_maps(x, from, to, max_beads + 1, true).size() == res.objects.size();
  const int n = static_cast<int>(res.objects.size());

  // Morphisms are monotone bipointed vertex maps carrying every bead into a
  // bead of the target, compatibly with the simplices of X.
  struct Mor {
    int src, tgt;
    std::vector<int> vmap;
  };
  std::vector<Mor> mors;
  std::map<std::tuple<int, int, std::vector<int>>, int> mor_index;
  std::vector<std::vector<int>> out_of(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const NecklaceMap& s = res.objects[a];
      const NecklaceMap& t = res.objects[b];
      const int vs = s.shape.vertex_count(), vt = t.shape.vertex_count();
      const auto js = joints(s.shape), jt = joints(t.shape);
      for (const auto& f : enumerate_monotone(vs - 1, vt - 1)) {
        if (f.values.front() != 0 || f.values.back() != vt - 1) continue;
        bool ok = true;
        for (std::size_t bead = 0; ok && bead < s.shape.beads.size(); ++bead) {
          const int lo = f.values[js[bead]], hi = f.values[js[bead + 1]];
          auto tb = std::upper_bound(jt.begin(), jt.end(), lo) - jt.begin() - 1;
          if (tb >= static_cast<long>(t.shape.beads.size())) tb = static_cast<long>(t.shape.beads.size()) - 1;
          if (hi > jt[tb + 1]) {
            ok = false;
            break;
          }
          std::vector<int> local;
          for (int v = js[bead]; v <= js[bead + 1]; ++v) local.push_back(f.values[v] - jt[tb]);
          ok = act_monotone(x, t.shape.beads[tb], t.beads[tb], local) == s.beads[bead];
        }
        if (s.shape.beads.empty() && !t.shape.beads.empty()) ok = false;
        if (!ok) continue;
        mor_index[{a, b, f.values}] = static_cast<int>(mors.size());
        out_of[a].push_back(static_cast<int>(mors.size()));
        mors.push_back({a, b, f.values});
      }
    }
  res.morphisms = static_cast<long>(mors.size());
  auto identity_of = [&](int a) {
    std::vector<int> v(res.objects[a].shape.vertex_count());
    std::iota(v.begin(), v.end(), 0);
    return mor_index.at({a, a, v});
  };
  auto compose_mor = [&](int g, int f) {
    std::vector<int> v;
    for (int i : mors[f].vmap) v.push_back(mors[g].vmap[i]);
    return mor_index.at({mors[f].src, mors[g].tgt, v});
  };

  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const auto& m : mors) parent[root(m.src)] = root(m.tgt);
  for (int a = 0; a < n; ++a) res.components += root(a) == a;

  // Chains of composable morphisms, by level.
  auto delta = theta_category(1, degree_bound);
  std::vector<std::vector<std::vector<int>>> chains(degree_bound + 1);
  std::vector<std::map<std::vector<int>, Elem>> chain_index(degree_bound + 1);
  for (int a = 0; a < n; ++a) chains[0].push_back({a});
  for (int p = 1; p <= degree_bound; ++p)
    for (const auto& c : chains[p - 1]) {
      const int last = p == 1 ? c[0] : mors[c.back()].tgt;
      for (int m : out_of[last]) {
        auto d = p == 1 ? std::vector<int>{} : c;
        d.push_back(m);
        chains[p].push_back(std::move(d));
      }
    }
  for (int p = 0; p <= degree_bound; ++p)
    for (Elem e = 0; e < static_cast<Elem>(chains[p].size()); ++e) chain_index[p][chains[p][e]] = e;
  std::vector<int> sizes(delta->object_count());
  for (int p = 0; p <= degree_bound; ++p) sizes[delta->object_id(ThetaObj::simplex(p))] = static_cast<int>(chains[p].size());

  std::unordered_map<ArrowId, std::vector<Elem>> tables;
  for (ObjId so = 0; so < delta->object_count(); ++so)
    for (ObjId to = 0; to < delta->object_count(); ++to)
      for (ArrowId f : delta->hom(so, to)) {
        const int q = delta->object(so).n(), p = delta->object(to).n();
        const auto th = to_monotone(delta->arrow(f), p).values;
        std::vector<Elem> tab;
        for (const auto& c : chains[p]) {
          // Objects o_0..o_p of the chain.
          std::vector<int> objs;
          if (p == 0) {
            objs.push_back(c[0]);
          } else {
            objs.push_back(mors[c[0]].src);
            for (int m : c) objs.push_back(mors[m].tgt);
          }
          std::vector<int> d;
          if (q == 0) {
            d.push_back(objs[th[0]]);
          } else {
            for (int r = 1; r <= q; ++r) {
              int m = identity_of(objs[th[r - 1]]);
              for (int k = th[r - 1] + 1; k <= th[r]; ++k) m = compose_mor(c[k - 1], m);
              d.push_back(m);
            }
          }
          tab.push_back(chain_index[q].at(d));
        }
        tables.emplace(f, std::move(tab));
      }
  res.nerve = table_presheaf(delta, std::move(sizes), std::move(tables));
  return res;
}

}  // namespace thetacell
