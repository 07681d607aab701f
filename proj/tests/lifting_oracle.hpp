#pragma once

// Lifting problems solved without the cell-by-cell extension search, and a
// seeded corpus of small problems to compare against.

#include <functional>
#include <random>
#include <vector>

#include "thetacell/intertwiner.hpp"
#include "thetacell/lifting.hpp"

namespace oracle {

using namespace thetacell;

// Natural maps B -> X agreeing with `forced` where it is set (>= 0) and with
// p h = bottom if p is given. Every element of B is assigned one at a time,
// checking every action whose two ends are already assigned; no use of cells
// or of the Eilenberg-Zilber decomposition. The visitor returns false to stop.
inline long naive_maps(const FinPresheaf& b, const std::vector<std::vector<Elem>>& forced, const FinPresheaf& x,
                       const PresheafMap* p, const PresheafMap* bottom,
                       const std::function<bool(const std::vector<std::vector<Elem>>&)>& visit) {
  const Category& c = b.base();
  std::vector<std::pair<ObjId, Elem>> order;
  for (ObjId o : c.objects_by_dim())
    for (Elem e = 0; e < b.size(o); ++e) order.emplace_back(o, e);
  std::vector<std::vector<Elem>> h(c.object_count());
  for (ObjId o = 0; o < c.object_count(); ++o) h[o].assign(b.size(o), -1);

  auto consistent = [&](ObjId t, Elem e) {
    for (ObjId s = 0; s < c.object_count(); ++s)
      for (ArrowId f : c.hom(s, t)) {
        Elem y = b.act(f, e);
        if (h[s][y] >= 0 && h[s][y] != x.act(f, h[t][e])) return false;
      }
    for (ObjId u = 0; u < c.object_count(); ++u)
      for (ArrowId g : c.hom(t, u))
        for (Elem z = 0; z < b.size(u); ++z)
          if (h[u][z] >= 0 && b.act(g, z) == e && x.act(g, h[u][z]) != h[t][e]) return false;
    return true;
  };

  long count = 0;
  bool stop = false;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (stop) return;
    if (k == order.size()) {
      ++count;
      if (!visit(h)) stop = true;
      return;
    }
    auto [o, e] = order[k];
    for (Elem v = 0; v < x.size(o) && !stop; ++v) {
      if (!forced.empty() && forced[o][e] >= 0 && v != forced[o][e]) continue;
      if (p && p->comp[o][v] != bottom->comp[o][e]) continue;
      h[o][e] = v;
      if (consistent(o, e)) self(self, k + 1);
      h[o][e] = -1;
    }
  };
  rec(rec, 0);
  return count;
}

inline std::vector<std::vector<Elem>> forced_by(const PresheafMap& i, const PresheafMap& on_a) {
  std::vector<std::vector<Elem>> forced(i.target.base().object_count());
  for (ObjId o = 0; o < i.target.base().object_count(); ++o) {
    forced[o].assign(i.target.size(o), -1);
    for (Elem a = 0; a < i.source.size(o); ++a) forced[o][i.comp[o][a]] = on_a.comp[o][a];
  }
  return forced;
}

inline long naive_lift_count(const LiftingProblem& prob) {
  return naive_maps(prob.i.target, forced_by(prob.i, prob.top), prob.p.source, &prob.p, &prob.bottom,
                    [](const auto&) { return true; });
}

// Right lifting against the inner horn generators with target dim <= d,
// deciding each filler with naive_maps.
inline bool naive_fibrant(const FinPresheaf& x, int d) {
  auto cat = std::dynamic_pointer_cast<const ThetaCategory>(x.base_ptr());
  for (const Generator& g : generators(cat, d).inner_horns) {
    PresheafMap inc = g.domain.inclusion();
    bool ok = true;
    naive_maps(inc.source, {}, x, nullptr, nullptr, [&](const std::vector<std::vector<Elem>>& u) {
      PresheafMap um{inc.source, x, u};
      ok = naive_maps(inc.target, forced_by(inc, um), x, nullptr, nullptr, [](const auto&) { return false; }) > 0;
      return ok;
    });
    if (!ok) return false;
  }
  return true;
}

inline std::vector<PresheafMap> all_maps(const FinPresheaf& a, const FinPresheaf& x, long cap) {
  std::vector<PresheafMap> out;
  ExtensionProblem e{a, Subobject(a), {}, x};
  enumerate_extensions(e, 10'000'000, [&](const PresheafMap& m) {
    out.push_back(m);
    return static_cast<long>(out.size()) < cap;
  });
  return out;
}

inline std::vector<PresheafMap> extensions_of(const PresheafMap& i, const PresheafMap& on_a, const FinPresheaf& y, long cap) {
  ExtensionProblem e;
  e.source = i.target;
  e.fixed = image(i);
  e.fixed_values.resize(i.target.base().object_count());
  for (ObjId o = 0; o < i.target.base().object_count(); ++o) {
    e.fixed_values[o].assign(i.target.size(o), -1);
    for (Elem a = 0; a < i.source.size(o); ++a) e.fixed_values[o][i.comp[o][a]] = on_a.comp[o][a];
  }
  e.target = y;
  std::vector<PresheafMap> out;
  enumerate_extensions(e, 10'000'000, [&](const PresheafMap& m) {
    out.push_back(m);
    return static_cast<long>(out.size()) < cap;
  });
  return out;
}

inline FinPresheaf discrete_two(std::shared_ptr<const ThetaCategory> cat) {
  return coproduct(terminal_presheaf(cat), terminal_presheaf(cat)).object;
}

inline PresheafMap to_point(const FinPresheaf& x) { return map_from_function(x, terminal_presheaf(x.base_ptr()), [](ObjId, Elem) { return 0; }); }


// Random closed subobject: the closure of a random set of nondegenerate cells.
inline Subobject random_subobject(const FinPresheaf& b, std::mt19937& rng) {
  Subobject s(b);
  std::bernoulli_distribution pick(0.4);
  for (const Cell& c : nondegenerate_cells(b))
    if (pick(rng)) s.insert(c.object, c.element);
  return s.closure();
}

struct CorpusEntry {
  std::string label;
  LiftingProblem prob;
};

// Problems A -> B over X -> Y with all four presheaves at most max_elems.
inline std::vector<CorpusEntry> lifting_corpus(unsigned seed, int count, long max_elems = 200) {
  std::mt19937 rng(seed);
  std::vector<CorpusEntry> out;
  struct Shape {
    std::string name;
    FinPresheaf b;
  };
  struct Fibration {
    std::string name;
    PresheafMap p;
  };
  std::vector<Shape> shapes;
  std::vector<Fibration> maps;
  for (int level : {1, 2}) {
    auto cat = theta_category(level, 2);
    auto lv = [&](const char* s) { return parse_object(s, level); };
    std::vector<const char*> objs = level == 1 ? std::vector<const char*>{"[1]", "[2]"}
                                               : std::vector<const char*>{"[1]([0])", "[1]([1])", "[2]([0],[0])"};
    for (const char* o : objs) {
      shapes.push_back({o, representable(cat, cat->object_id(lv(o)))});
      shapes.push_back({std::string("bd ") + o, theta_boundary(lv(o), cat).as_presheaf()});
    }
    std::string l = "L" + std::to_string(level) + " ";
    auto pt = terminal_presheaf(cat);
    std::vector<std::pair<std::string, FinPresheaf>> xs = {
        {"point", pt},
        {"two points", discrete_two(cat)},
        {"edge", representable(cat, cat->object_id(level == 1 ? lv("[1]") : lv("[1]([0])")))},
        {"E1", e_simplex(1, cat)},
        {"triangle", representable(cat, cat->object_id(level == 1 ? lv("[2]") : lv("[2]([0],[0])")))},
        {"horn", theta_horn(level == 1 ? lv("[2]") : lv("[2]([0],[0])"), 1, cat).as_presheaf()},
    };
    for (const auto& [name, x] : xs) {
      if (x.total_size() > max_elems) continue;
      maps.push_back({l + name + " -> point", to_point(x)});
      maps.push_back({l + "id " + name, identity_morphism(x)});
    }
    auto edge = xs[2].second;
    auto two = xs[1].second;
    auto prod = product(edge, two);
    if (prod.total_size() <= max_elems) maps.push_back({l + "edge x two -> edge", product_projection(prod, 0)});
    auto horn = theta_horn(level == 1 ? lv("[2]") : lv("[2]([0],[0])"), 1, cat);
    maps.push_back({l + "horn -> triangle", horn.inclusion()});
    auto bd = theta_boundary(level == 1 ? lv("[1]") : lv("[1]([0])"), cat);
    maps.push_back({l + "ends -> edge", bd.inclusion()});
  }
  int guard = 0;
  while (static_cast<int>(out.size()) < count && guard++ < 50 * count) {
    const Shape& sh = shapes[rng() % shapes.size()];
    const Fibration& fb = maps[rng() % maps.size()];
    if (!sh.b.same_base(fb.p.source) || sh.b.total_size() > max_elems) continue;
    Subobject a = random_subobject(sh.b, rng);
    PresheafMap i = a.inclusion();
    auto tops = all_maps(i.source, fb.p.source, 400);
    if (tops.empty()) continue;
    const PresheafMap& top = tops[rng() % tops.size()];
    auto bottoms = extensions_of(i, compose(fb.p, top), fb.p.target, 400);
    if (bottoms.empty()) continue;
    const PresheafMap& bottom = bottoms[rng() % bottoms.size()];
    out.push_back({sh.name + " (" + std::to_string(a.count()) + " fixed) over " + fb.name, LiftingProblem{i, fb.p, top, bottom}});
  }
  return out;
}

}  // namespace oracle
