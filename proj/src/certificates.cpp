#include <map>

#include "thetacell/error.hpp"
#include "thetacell/lifting.hpp"

namespace thetacell {

namespace {

std::shared_ptr<const ThetaCategory> theta_of(const FinPresheaf& x) {
  auto c = std::dynamic_pointer_cast<const ThetaCategory>(x.base_ptr());
  if (!c) throw UsageError("certificates need a presheaf on a Theta truncation");
  return c;
}

class GeneratorCache {
 public:
  explicit GeneratorCache(std::shared_ptr<const ThetaCategory> cat) : cat_(std::move(cat)) {}

  struct Entry {
    Generator gen;
    // Nondegenerate cells of the representable on the target, and whether
    // they lie in the generator's domain.
    std::vector<std::pair<Cell, bool>> cells;
  };

  const Entry& get(const GeneratorId& id) {
    const std::string key = id.to_string(cat_->level());
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Entry e{make_generator(id, cat_), {}};
    for (const Cell& c : nondegenerate_cells(e.gen.domain.ambient()))
      e.cells.push_back({c, e.gen.domain.contains(c.object, c.element)});
    return cache_.emplace(key, std::move(e)).first->second;
  }

 private:
  std::shared_ptr<const ThetaCategory> cat_;
  std::map<std::string, Entry> cache_;
};

// Full check of one pushout step against the current stage; on success the
// new cells are added to `current`.
bool attach_step(const FinPresheaf& ambient, const Subobject& target, const Generator& g, Elem attach,
                 Subobject& current, std::string* why) {
  const Category& c = ambient.base();
  const ObjId t = g.target_object;
  if (attach < 0 || attach >= ambient.size(t)) {
    if (why) *why = "attaching element out of range";
    return false;
  }
  std::vector<std::pair<ObjId, Elem>> added;
  for (ObjId u = 0; u < c.object_count(); ++u) {
    const auto& h = c.hom(u, t);
    std::vector<char> fresh(ambient.size(u), 0);
    for (Elem d = 0; d < static_cast<Elem>(h.size()); ++d) {
      Elem y = ambient.act(h[d], attach);
      if (g.domain.contains(u, d)) {
        if (!current.contains(u, y)) {
          if (why) *why = "attaching map does not land in the previous stage at " + ambient.describe(u, y);
          return false;
        }
      } else {
        if (current.contains(u, y) || fresh[y]) {
          if (why) *why = "new cell " + ambient.describe(u, y) + " is already present or hit twice";
          return false;
        }
        if (!target.contains(u, y)) {
          if (why) *why = "new cell " + ambient.describe(u, y) + " lies outside the target";
          return false;
        }
        fresh[y] = 1;
        added.push_back({u, y});
      }
    }
  }
  for (auto [u, y] : added) current.insert(u, y);
  return true;
}

}  // namespace

CertificateCheck verify_certificate(const CellCertificate& cert) {
  auto cat = theta_of(cert.ambient);
  CertificateCheck res;
  if (cert.source.ambient().impl() != cert.ambient.impl() || cert.target.ambient().impl() != cert.ambient.impl()) {
    res.reason = "source and target must be subobjects of the ambient";
    return res;
  }
  std::string why;
  if (!cert.source.is_closed(&why) || !cert.target.is_closed(&why)) {
    res.reason = why;
    return res;
  }
  if (!cert.source.subset_of(cert.target)) {
    res.reason = "source is not contained in target";
    return res;
  }
  GeneratorCache cache(cat);
  Subobject current = cert.source;
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    const auto& st = cert.steps[i];
    try {
      const auto& e = cache.get(st.generator);
      if (!attach_step(cert.ambient, cert.target, e.gen, st.attach, current, &why)) {
        res.failed_step = static_cast<int>(i);
        res.reason = why;
        return res;
      }
    } catch (const Error& err) {
      res.failed_step = static_cast<int>(i);
      res.reason = err.what();
      return res;
    }
  }
  if (!(current == cert.target)) {
    res.reason = "the steps do not exhaust the target (" + std::to_string(cert.target.count() - current.count()) +
                 " elements missing)";
    return res;
  }
  res.ok = true;
  return res;
}

GeneratorFamily inner_horn_family() {
  return [](const ThetaObj& t) {
    std::vector<GeneratorId> out;
    for (int k = 1; k < t.n(); ++k) out.push_back(GeneratorId::inner_horn(t, k));
    return out;
  };
}

CertificateSearch search_certificate(const FinPresheaf& ambient, const Subobject& source, const Subobject& target,
                                     const GeneratorFamily& family, long budget) {
  auto cat = theta_of(ambient);
  CertificateSearch res;
  if (!source.subset_of(target)) throw UsageError("search_certificate: source is not inside target");
  GeneratorCache cache(cat);
  const Category& c = ambient.base();

  struct Cand {
    Cell cell;
    std::vector<GeneratorId> gens;
  };
  std::vector<Cand> cands;
  for (const Cell& cl : nondegenerate_cells(ambient))
    if (target.contains(cl.object, cl.element) && !source.contains(cl.object, cl.element)) {
      auto gens = family(cat->object(cl.object));
      if (!gens.empty()) cands.push_back({cl, std::move(gens)});
    }

  auto quick_viable = [&](const GeneratorCache::Entry& e, Elem x, const Subobject& cur) {
    std::vector<std::pair<ObjId, Elem>> seen;
    for (const auto& [cell, in_dom] : e.cells) {
      Elem y = ambient.act(c.hom(cell.object, e.gen.target_object)[cell.element], x);
      if (in_dom) {
        if (!cur.contains(cell.object, y)) return false;
      } else {
        if (cur.contains(cell.object, y) || !target.contains(cell.object, y)) return false;
        for (auto& s : seen)
          if (s.first == cell.object && s.second == y) return false;
        seen.push_back({cell.object, y});
      }
    }
    return true;
  };

  std::vector<CertStep> steps;
  bool exhausted = false;
  auto dfs = [&](auto&& self, const Subobject& cur) -> bool {
    if (cur == target) return true;
    for (const auto& cd : cands) {
      if (cur.contains(cd.cell.object, cd.cell.element)) continue;
      for (const auto& gid : cd.gens) {
        if (++res.trials > budget) {
          exhausted = true;
          return false;
        }
        const auto& e = cache.get(gid);
        if (!quick_viable(e, cd.cell.element, cur)) continue;
        Subobject next = cur;
        if (!attach_step(ambient, target, e.gen, cd.cell.element, next, nullptr)) continue;
        steps.push_back({gid, cd.cell.element});
        if (self(self, next)) return true;
        steps.pop_back();
        if (exhausted) return false;
      }
    }
    return false;
  };
  bool ok = dfs(dfs, source);
  if (ok) {
    res.verdict = Verdict::Found;
    res.certificate = CellCertificate{ambient, source, target, steps};
  } else {
    res.verdict = exhausted ? Verdict::BudgetExhausted : Verdict::None;
  }
  return res;
}

}  // namespace thetacell

#include "thetacell/certificates.hpp"

namespace thetacell {

std::vector<CertStep> translate_steps(const std::vector<CertStep>& steps, ObjId s, ObjId t, ArrowId phi,
                                      const ThetaCategory& cat) {
  if (cat.source(phi) != s || cat.target(phi) != t) throw UsageError("translate_steps: map has the wrong ends");
  std::vector<CertStep> out;
  for (const auto& st : steps) {
    ObjId u = cat.object_id(st.generator.target());
    ArrowId x = cat.hom(u, s).at(st.attach);
    out.push_back({st.generator, cat.hom_index(cat.compose(phi, x))});
  }
  return out;
}

namespace {

struct SpineParts {
  std::vector<CertStep> b, a, c;
  std::vector<CertStep> all() const {
    std::vector<CertStep> v = b;
    v.insert(v.end(), a.begin(), a.end());
    v.insert(v.end(), c.begin(), c.end());
    return v;
  }
};

ThetaMap outer_face(const ThetaObj& t, bool first) {
  // d_0 : [n-1](c_2..c_n) -> [n](c), d_n : [n-1](c_1..c_{n-1}) -> [n](c)
  ThetaMap f;
  const int n = t.n();
  for (int i = 0; i < n; ++i) f.alpha.push_back(first ? i + 1 : i);
  for (int i = 1; i < n; ++i) f.comps.push_back({identity_map(t.labels[first ? i : i - 1])});
  return f;
}

class SpineBuilder {
 public:
  SpineBuilder(std::shared_ptr<const ThetaCategory> cat, long budget) : cat_(std::move(cat)), budget_(budget) {}

  SpineParts build(const ThetaObj& t) {
    const std::string key = to_string(t, cat_->level());
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    SpineParts parts;
    const int n = t.n();
    if (n >= 2) {
      const ObjId to = cat_->object_id(t);
      ThetaObj tail(std::vector<ThetaObj>(t.labels.begin() + 1, t.labels.end()));
      ThetaObj head(std::vector<ThetaObj>(t.labels.begin(), t.labels.end() - 1));
      ObjId so = cat_->object_id(tail), ho = cat_->object_id(head);
      parts.b = translate_steps(build(tail).all(), so, to, cat_->arrow_id(so, to, outer_face(t, true)), *cat_);
      SpineParts hp = build(head);
      std::vector<CertStep> ac = hp.a;
      ac.insert(ac.end(), hp.c.begin(), hp.c.end());
      parts.a = translate_steps(ac, ho, to, cat_->arrow_id(ho, to, outer_face(t, false)), *cat_);

      parts.c = outer_horn_stage(t);
    }
    memo_.emplace(key, parts);
    return parts;
  }

  // V_{d_0 u d_n}(c) -> [n](c): a simplicial inner-horn decomposition of
  // d_0 u d_n -> Delta^n, each horn (alpha, l) tensored with the cell
  // structures of the label products over the edges of alpha.
  std::vector<CertStep> outer_horn_stage(const ThetaObj& t) {
    const int n = t.n();
    const ObjId to = cat_->object_id(t);
    auto delta = theta_category(1, n);
    ObjId dn = delta->object_id(ThetaObj::simplex(n));
    Subobject lam = v_construct(LabeledRegion{SimplicialSubset::faces(n, {0, n}),
                                              std::vector<Label>(n, Label::full(ThetaObj()))},
                                delta);
    CertificateSearch simp =
        search_certificate(lam.ambient(), lam, Subobject(lam.ambient(), true), inner_horn_family(), budget_ - spent_);
    spent_ += simp.trials;
    if (simp.verdict != Verdict::Found) {
      failed_ = simp.verdict;
      throw BudgetExceeded("no inner horn decomposition of the outer horn of Delta^" + std::to_string(n));
    }
    const int lv = cat_->level() - 1;
    std::vector<CertStep> out;
    for (const auto& st : simp.certificate->steps) {
      const int r = st.generator.n;
      const ObjId ro = delta->object_id(ThetaObj::simplex(r));
      const std::vector<int> alpha = delta->arrow(delta->hom(ro, dn)[st.attach]).alpha;
      // Nondegenerate cells of each product c_{alpha(j-1)+1} x ... x c_{alpha(j)}.
      struct ProdCell {
        ThetaObj e;
        std::vector<ThetaMap> maps;
      };
      std::vector<std::vector<ProdCell>> cells(r);
      for (int j = 1; j <= r; ++j) {
        std::vector<ThetaObj> targets(t.labels.begin() + alpha[j - 1], t.labels.begin() + alpha[j]);
        int top = 0;
        for (const auto& c : targets) top += dim(c);
        for (const auto& e : enumerate_objects(lv, top)) {
          std::vector<std::vector<ThetaMap>> lists;
          for (const auto& c : targets) lists.push_back(hom(e, c));
          std::vector<std::size_t> idx(lists.size(), 0);
          bool any = true;
          for (const auto& l : lists) any = any && !l.empty();
          while (any) {
            std::vector<ThetaMap> maps;
            for (std::size_t q = 0; q < lists.size(); ++q) maps.push_back(lists[q][idx[q]]);
            if (is_nondegenerate_section(e, targets, maps)) cells[j - 1].push_back({e, maps});
            int q = static_cast<int>(lists.size()) - 1;
            while (q >= 0 && idx[q] + 1 == lists[q].size()) idx[q--] = 0;
            if (q < 0) break;
            ++idx[q];
          }
        }
      }
      struct Tuple {
        int total;
        std::vector<int> pick;
      };
      std::vector<Tuple> tuples;
      std::vector<int> pick(r, 0);
      auto rec = [&](auto&& self, int j) -> void {
        if (j == r) {
          int total = 0;
          for (int q = 0; q < r; ++q) total += dim(cells[q][pick[q]].e);
          tuples.push_back({total, pick});
          return;
        }
        for (int q = 0; q < static_cast<int>(cells[j].size()); ++q) {
          pick[j] = q;
          self(self, j + 1);
        }
      };
      rec(rec, 0);
      std::stable_sort(tuples.begin(), tuples.end(), [](const Tuple& a, const Tuple& b) { return a.total < b.total; });
      for (const auto& tp : tuples) {
        ThetaObj src;
        ThetaMap x;
        x.alpha = alpha;
        for (int j = 0; j < r; ++j) {
          const ProdCell& pc = cells[j][tp.pick[j]];
          src.labels.push_back(pc.e);
          x.comps.push_back(pc.maps);
        }
        ObjId so = cat_->object_id(src);
        out.push_back({GeneratorId::inner_horn(src, st.generator.k), cat_->hom_index(cat_->arrow_id(so, to, x))});
      }
    }
    return out;
  }

  long spent() const { return spent_; }
  Verdict failed() const { return failed_; }

 private:
  std::shared_ptr<const ThetaCategory> cat_;
  long budget_;
  long spent_ = 0;
  Verdict failed_ = Verdict::Found;
  std::map<std::string, SpineParts> memo_;
};

}  // namespace

CertificateSearch spine_anodyne_certificate(const ThetaObj& t, std::shared_ptr<const ThetaCategory> cat,
                                            long budget) {
  SpineBuilder b(cat, budget);
  CertificateSearch res;
  const ObjId to = cat->object_id(t);
  Subobject spine = theta_spine(t, cat);
  try {
    SpineParts p = b.build(t);
    res.verdict = Verdict::Found;
    res.certificate = CellCertificate{spine.ambient(), spine, Subobject(spine.ambient(), true), p.all()};
  } catch (const BudgetExceeded&) {
    res.verdict = b.failed();
  }
  res.trials = b.spent();
  (void)to;
  return res;
}

}  // namespace thetacell
