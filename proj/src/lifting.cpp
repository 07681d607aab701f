#include "thetacell/lifting.hpp"

#include "thetacell/error.hpp"

namespace thetacell {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Found:
      return "found";
    case Verdict::None:
      return "none";
    case Verdict::BudgetExhausted:
      return "budget-exhausted";
  }
  return "?";
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Yes:
      return "yes";
    case Outcome::No:
      return "no";
    case Outcome::Unknown:
      return "unknown";
  }
  return "?";
}

ExtensionOutcome enumerate_extensions(const ExtensionProblem& prob, long budget,
                                      const std::function<bool(const PresheafMap&)>& visit) {
  const FinPresheaf& x = prob.source;
  const FinPresheaf& y = prob.target;
  require_same_base(x, y, "extension");
  if (prob.fixed.ambient().impl() != x.impl()) throw UsageError("extension: fixed part is not a subobject of the source");
  if ((prob.over == nullptr) != (prob.base == nullptr)) throw UsageError("extension: fiber constraint needs both maps");
  const Category& c = x.base();
  const EzData ez = eilenberg_zilber(x);

  struct CellInfo {
    ObjId o;
    Elem e;
    std::vector<std::pair<ArrowId, std::pair<ObjId, Elem>>> faces;
  };
  std::vector<CellInfo> cells;
  for (ObjId o : c.objects_by_dim())
    for (Elem e = 0; e < x.size(o); ++e) {
      if (!ez.nondegenerate(o, e) || prob.fixed.contains(o, e)) continue;
      CellInfo info{o, e, {}};
      for (ArrowId f : c.faces_into(o)) info.faces.push_back({f, {c.source(f), x.act(f, e)}});
      cells.push_back(std::move(info));
    }

  std::vector<std::vector<Elem>> h(c.object_count());
  for (ObjId o = 0; o < c.object_count(); ++o) h[o].assign(x.size(o), -1);

  std::function<Elem(ObjId, Elem)> value = [&](ObjId o, Elem e) -> Elem {
    if (prob.fixed.contains(o, e)) return prob.fixed_values[o][e];
    ObjId ro = ez.root_object[o][e];
    Elem re = ez.root_element[o][e];
    if (ro == o && re == e) return h[o][e];
    Elem v = h[ro][re];
    if (v < 0) return -1;
    return y.act(ez.sigma[o][e], v);
  };

  ExtensionOutcome out;
  const int n = static_cast<int>(cells.size());
  std::vector<Elem> next(n, 0);
  std::vector<std::vector<Elem>> req(n);
  auto enter = [&](int level) {
    next[level] = 0;
    req[level].clear();
    for (const auto& fc : cells[level].faces) req[level].push_back(value(fc.second.first, fc.second.second));
  };
  auto emit = [&]() {
    ++out.found;
    return visit(map_from_function(x, y, [&](ObjId o, Elem e) { return value(o, e); }));
  };

  if (n == 0) {
    emit();
    return out;
  }
  int level = 0;
  enter(0);
  while (level >= 0) {
    if (level == n) {
      if (!emit()) return out;
      --level;
      continue;
    }
    const CellInfo& cell = cells[level];
    bool advanced = false;
    for (Elem cand = next[level]; cand < y.size(cell.o); ++cand) {
      if (++out.trials > budget) {
        out.budget_exhausted = true;
        return out;
      }
      if (prob.over && prob.over->comp[cell.o][cand] != prob.base->comp[cell.o][cell.e]) continue;
      bool ok = true;
      for (std::size_t q = 0; ok && q < cell.faces.size(); ++q)
        ok = y.act(cell.faces[q].first, cand) == req[level][q];
      if (!ok) continue;
      h[cell.o][cell.e] = cand;
      next[level] = cand + 1;
      ++level;
      if (level < n) enter(level);
      advanced = true;
      break;
    }
    if (!advanced) {
      h[cell.o][cell.e] = -1;
      --level;
    }
  }
  return out;
}

namespace {

ExtensionProblem lifting_extension(const LiftingProblem& prob) {
  require_same_base(prob.i.source, prob.top.source, "lift");
  require_same_base(prob.i.target, prob.bottom.source, "lift");
  require_same_base(prob.p.source, prob.top.target, "lift");
  require_same_base(prob.p.target, prob.bottom.target, "lift");
  require_same_base(prob.i.source, prob.p.source, "lift");
  if (!is_mono(prob.i)) throw UsageError("lifting problem: the left map must be a monomorphism");
  const Category& c = prob.i.source.base();
  for (ObjId o = 0; o < c.object_count(); ++o)
    for (Elem a = 0; a < prob.i.source.size(o); ++a)
      if (prob.p.comp[o][prob.top.comp[o][a]] != prob.bottom.comp[o][prob.i.comp[o][a]])
        throw UsageError("lifting problem: the square does not commute");
  ExtensionProblem e;
  e.source = prob.i.target;
  e.fixed = image(prob.i);
  e.fixed_values.resize(c.object_count());
  for (ObjId o = 0; o < c.object_count(); ++o) {
    e.fixed_values[o].assign(prob.i.target.size(o), -1);
    for (Elem a = 0; a < prob.i.source.size(o); ++a) e.fixed_values[o][prob.i.comp[o][a]] = prob.top.comp[o][a];
  }
  e.target = prob.p.source;
  e.over = &prob.p;
  e.base = &prob.bottom;
  return e;
}

}  // namespace

LiftResult find_lift(const LiftingProblem& prob, long budget) {
  ExtensionProblem e = lifting_extension(prob);
  LiftResult r;
  auto out = enumerate_extensions(e, budget, [&](const PresheafMap& m) {
    r.lift = m;
    return false;
  });
  r.trials = out.trials;
  r.verdict = r.lift ? Verdict::Found : (out.budget_exhausted ? Verdict::BudgetExhausted : Verdict::None);
  return r;
}

std::optional<long> count_lifts(const LiftingProblem& prob, long budget) {
  ExtensionProblem e = lifting_extension(prob);
  auto out = enumerate_extensions(e, budget, [](const PresheafMap&) { return true; });
  if (out.budget_exhausted) return std::nullopt;
  return out.found;
}

namespace {

std::shared_ptr<const ThetaCategory> theta_of(const FinPresheaf& x) {
  auto c = std::dynamic_pointer_cast<const ThetaCategory>(x.base_ptr());
  if (!c) throw UsageError("expected a presheaf on a Theta truncation");
  return c;
}

std::string describe_map_on(const PresheafMap& m, const Subobject& where) {
  const Category& c = m.source.base();
  std::string s;
  int shown = 0;
  for (ObjId o : c.objects_by_dim())
    for (Elem e : where.members(o)) {
      if (shown++ >= 6) return s + " ...";
      if (!s.empty()) s += "; ";
      s += where.ambient().describe(o, e) + " -> " + m.target.describe(o, m.comp[o][e]);
    }
  return s;
}

}  // namespace

FibrancyReport is_formal_quasicategory(const FinPresheaf& x, int d, long budget) {
  auto cat = theta_of(x);
  if (x.bound() < d + 1)
    throw TruncationError("is_formal_quasicategory: deciding fillers up to dimension " + std::to_string(d) +
                          " needs truncation >= " + std::to_string(d + 1));
  FibrancyReport rep;
  rep.up_to_dim = d;
  rep.holds = Outcome::Yes;
  long spent = 0;
  for (ObjId o : cat->objects_by_dim()) {
    if (cat->dim(o) > d) break;
    const ThetaObj& t = cat->object(o);
    for (int k = 1; k < t.n(); ++k) {
      GeneratorId id = GeneratorId::inner_horn(t, k);
      Generator g = make_generator(id, cat);
      PresheafMap inc = g.domain.inclusion();
      ExtensionProblem maps_in{inc.source, Subobject(inc.source), {}, x};
      bool stop = false;
      auto outer = enumerate_extensions(maps_in, budget - spent, [&](const PresheafMap& u) {
        ++rep.horns_checked;
        ExtensionProblem fill;
        fill.source = inc.target;
        fill.fixed = g.domain;
        fill.fixed_values.resize(cat->object_count());
        for (ObjId q = 0; q < cat->object_count(); ++q) {
          fill.fixed_values[q].assign(inc.target.size(q), -1);
          for (Elem a = 0; a < inc.source.size(q); ++a) fill.fixed_values[q][inc.comp[q][a]] = u.comp[q][a];
        }
        fill.target = x;
        auto r = enumerate_extensions(fill, budget - spent, [](const PresheafMap&) { return false; });
        spent += r.trials;
        if (r.found == 0) {
          stop = true;
          if (r.budget_exhausted) {
            rep.holds = Outcome::Unknown;
            rep.note = "budget exhausted while filling " + id.to_string(cat->level());
          } else {
            rep.holds = Outcome::No;
            rep.counterexample = id.to_string(cat->level()) + " with no filler for {" +
                                 describe_map_on(compose(u, identity_morphism(inc.source)), Subobject(inc.source, true)) +
                                 "}";
          }
          return false;
        }
        return spent < budget;
      });
      spent += outer.trials;
      if (stop) return rep;
      if (outer.budget_exhausted || spent >= budget) {
        rep.holds = Outcome::Unknown;
        rep.note = "budget exhausted while enumerating horns of " + id.to_string(cat->level());
        return rep;
      }
    }
  }
  return rep;
}

PresheafMap restrict_map(const PresheafMap& f, std::shared_ptr<const ThetaCategory> smaller) {
  auto big = theta_of(f.source);
  FinPresheaf s = restrict_to(f.source, smaller);
  FinPresheaf t = restrict_to(f.target, smaller);
  std::vector<ObjId> omap(smaller->object_count());
  for (ObjId o = 0; o < smaller->object_count(); ++o) omap[o] = big->object_id(smaller->object(o));
  return map_from_function(s, t, [&](ObjId o, Elem e) { return f.comp[omap[o]][e]; });
}

FibrancyReport isofibration_check(const PresheafMap& p, int d, long budget) {
  auto cat = theta_of(p.source);
  FibrancyReport rep;
  rep.up_to_dim = d;
  FibrancyReport fx = is_formal_quasicategory(p.source, d, budget);
  FibrancyReport fy = is_formal_quasicategory(p.target, d, budget);
  if (fx.holds != Outcome::Yes || fy.holds != Outcome::Yes) {
    rep.holds = Outcome::Unknown;
    rep.note = std::string("precondition failed: source fibrant=") + to_string(fx.holds) +
               ", target fibrant=" + to_string(fy.holds);
    return rep;
  }
  auto small = theta_category(cat->level(), d);
  PresheafMap q = restrict_map(p, small);
  FinPresheaf e = e_simplex(1, small);
  const ObjId pt = 0;
  Subobject v0 = generated(e, pt, 0);
  rep.holds = Outcome::Yes;
  long spent = 0;
  for (Elem xv = 0; xv < q.source.size(pt); ++xv) {
    ExtensionProblem bottoms;
    bottoms.source = e;
    bottoms.fixed = v0;
    bottoms.fixed_values.resize(small->object_count());
    for (ObjId o = 0; o < small->object_count(); ++o) {
      bottoms.fixed_values[o].assign(e.size(o), -1);
      for (Elem a : v0.members(o)) bottoms.fixed_values[o][a] = q.target.act(small->hom(o, pt)[0], q.comp[pt][xv]);
    }
    bottoms.target = q.target;
    bool stop = false;
    auto outer = enumerate_extensions(bottoms, budget - spent, [&](const PresheafMap& b) {
      ++rep.horns_checked;
      ExtensionProblem lift;
      lift.source = e;
      lift.fixed = v0;
      lift.fixed_values.resize(small->object_count());
      for (ObjId o = 0; o < small->object_count(); ++o) {
        lift.fixed_values[o].assign(e.size(o), -1);
        for (Elem a : v0.members(o)) lift.fixed_values[o][a] = q.source.act(small->hom(o, pt)[0], xv);
      }
      lift.target = q.source;
      lift.over = &q;
      lift.base = &b;
      auto r = enumerate_extensions(lift, budget - spent, [](const PresheafMap&) { return false; });
      spent += r.trials;
      if (r.found == 0) {
        stop = true;
        if (r.budget_exhausted) {
          rep.holds = Outcome::Unknown;
          rep.note = "budget exhausted";
        } else {
          rep.holds = Outcome::No;
          rep.counterexample = "vertex " + q.source.describe(pt, xv) + " has no lift of the isomorphism {" +
                               describe_map_on(b, Subobject(e, true)) + "}";
        }
        return false;
      }
      return spent < budget;
    });
    spent += outer.trials;
    if (stop) return rep;
    if (outer.budget_exhausted || spent >= budget) {
      rep.holds = Outcome::Unknown;
      rep.note = "budget exhausted";
      return rep;
    }
  }
  return rep;
}

}  // namespace thetacell
