#include "thetacell/resolution.hpp"

#include <algorithm>

#include "thetacell/error.hpp"
#include "thetacell/intertwiner.hpp"

namespace thetacell {

namespace {

ThetaObj cone_object(ResolutionFlavor f, const ThetaObj& c, int n) {
  std::vector<ThetaObj> labels(n + 1, ThetaObj::point());
  if (f == ResolutionFlavor::R) labels.back() = c;
  else labels.front() = c;
  return ThetaObj(std::move(labels));
}

// The map s -> t with the given alpha whose components are identities into
// matching labels and the unique maps into the point.
ThetaMap label_preserving_map(const ThetaObj& s, const ThetaObj& t, std::vector<int> alpha) {
  ThetaMap f{std::move(alpha), {}};
  for (int r = 1; r <= s.n(); ++r) {
    std::vector<ThetaMap> slot;
    for (int k = f.alpha[r - 1] + 1; k <= f.alpha[r]; ++k) {
      const ThetaObj& from = s.labels[r - 1];
      const ThetaObj& to = t.labels[k - 1];
      if (to.is_leaf()) slot.push_back(hom(from, to).at(0));
      else if (from == to) slot.push_back(identity_map(from));
      else throw IntegrityError("resolution: no canonical label map");
    }
    f.comps.push_back(std::move(slot));
  }
  if (!is_valid_map(f, s, t)) throw IntegrityError("resolution: invalid structure map");
  return f;
}

// Postcomposition rep(s) -> rep(t) with an arrow s -> t.
PresheafMap representable_map(const FinPresheaf& rs, const FinPresheaf& rt, const ThetaCategory& cat, ObjId s,
                              ArrowId f) {
  return map_from_function(rs, rt, [&](ObjId o, Elem e) { return cat.hom_index(cat.compose(f, cat.hom(o, s)[e])); });
}

// The map of pushouts induced by compatible maps of the B and C corners.
PresheafMap induced_map(const Pushout& from, const Pushout& to, const PresheafMap& on_b, const PresheafMap& on_c) {
  const Category& cat = from.object.base();
  std::vector<std::vector<Elem>> image(cat.object_count());
  for (ObjId o = 0; o < cat.object_count(); ++o) {
    image[o].assign(from.object.size(o), -1);
    for (Elem b = 0; b < from.from_b.source.size(o); ++b) image[o][from.from_b(o, b)] = to.from_b(o, on_b(o, b));
    for (Elem x = 0; x < from.from_c.source.size(o); ++x) {
      Elem v = to.from_c(o, on_c(o, x));
      Elem& slot = image[o][from.from_c(o, x)];
      if (slot >= 0 && slot != v) throw IntegrityError("resolution: structure maps do not agree on the quotient");
      slot = v;
    }
  }
  return map_from_function(from.object, to.object, [&](ObjId o, Elem e) { return image[o][e]; });
}

// Element of E^n at an object with n(o) = p, as its function [p] -> [n].
std::vector<int> e_digits(Elem e, int len, int n) {
  std::vector<int> v(len);
  for (int i = len - 1; i >= 0; --i) {
    v[i] = e % (n + 1);
    e /= n + 1;
  }
  return v;
}

Elem e_encode(const std::vector<int>& v, int n) {
  Elem r = 0;
  for (int d : v) r = r * (n + 1) + d;
  return r;
}

FinPresheaf cylinder_factor(ResolutionFlavor f, int n, std::shared_ptr<const ThetaCategory> cat) {
  if (f == ResolutionFlavor::E) return e_simplex(n, cat);
  auto o = cat->find_object(ThetaObj::simplex(n));
  if (!o) throw TruncationError("resolution: Delta^" + std::to_string(n) + " is outside the truncation");
  return representable(cat, *o);
}

}  // namespace

const char* to_string(ResolutionFlavor f) {
  switch (f) {
    case ResolutionFlavor::R: return "R";
    case ResolutionFlavor::L: return "L";
    case ResolutionFlavor::Cyl: return "cyl";
    case ResolutionFlavor::E: return "E";
  }
  return "?";
}

ResolutionFlavor parse_flavor(const std::string& s) {
  if (s == "R") return ResolutionFlavor::R;
  if (s == "L") return ResolutionFlavor::L;
  if (s == "cyl") return ResolutionFlavor::Cyl;
  if (s == "E") return ResolutionFlavor::E;
  throw UsageError("unknown resolution flavor '" + s + "' (expected R, L, cyl or E)");
}

Resolution resolution(ResolutionFlavor flavor, const ThetaObj& c, int n, std::shared_ptr<const ThetaCategory> cat) {
  if (n < 0) throw UsageError("resolution: negative degree");
  if (height(c) >= cat->level()) throw UsageError("resolution: c must be an object one level down");
  Resolution r;
  r.flavor = flavor;
  r.c = c;
  r.n = n;
  const ObjId pt = *cat->terminal();
  if (flavor == ResolutionFlavor::R || flavor == ResolutionFlavor::L) {
    r.cone = cone_object(flavor, c, n);
    auto co = cat->find_object(r.cone);
    if (!co) throw TruncationError("resolution: " + to_string(r.cone, cat->level()) + " is outside the truncation");
    FinPresheaf rep = representable(cat, *co);
    const bool right = flavor == ResolutionFlavor::R;
    Subobject face = Subobject::from_predicate(rep, [&](ObjId o, Elem e) {
      const ThetaMap a = cat->arrow(cat->hom(o, *co)[e]);
      return right ? a.alpha.back() <= n : a.alpha.front() >= 1;
    });
    r.quotient = collapse(face);
    // Vertex v of the cone is element v of rep at [0].
    if (right) {
      r.source = 0;
      r.target = r.quotient.from_b(pt, n + 1);
    } else {
      r.source = r.quotient.from_b(pt, 0);
      r.target = 0;
    }
    return r;
  }
  auto io = cat->find_object(ThetaObj(std::vector<ThetaObj>{c}));
  if (!io) throw TruncationError("resolution: [1](c) is outside the truncation");
  FinPresheaf interval = representable(cat, *io);
  FinPresheaf left = cylinder_factor(flavor, n, cat);
  FinPresheaf prod = product(left, interval);
  Subobject ends = v_construct(LabeledRegion{SimplicialSubset::full(1), {Label::empty(c)}}, cat);
  FinPresheaf ends_ps = ends.as_presheaf();
  Subobject a = Subobject::from_predicate(prod, [&](ObjId o, Elem e) { return ends.contains(o, product_components(prod, o, e)[1]); });
  PresheafMap inc = a.inclusion();
  PresheafMap proj = map_from_function(inc.source, ends_ps, [&](ObjId o, Elem e) {
    const Elem b = product_components(prod, o, inc(o, e))[1];
    auto m = ends.members(o);
    return static_cast<Elem>(std::lower_bound(m.begin(), m.end(), b) - m.begin());
  });
  r.quotient = pushout(inc, proj);
  r.source = r.quotient.from_c(pt, 0);
  r.target = r.quotient.from_c(pt, 1);
  return r;
}

PresheafMap resolution_map(const Resolution& from, const Resolution& to, const MonotoneMap& theta) {
  if (from.flavor != to.flavor || !(from.c == to.c)) throw UsageError("resolution_map: resolutions differ");
  if (theta.source != from.n || theta.target != to.n) throw UsageError("resolution_map: degrees do not match theta");
  auto cat = std::dynamic_pointer_cast<const ThetaCategory>(from.realized().base_ptr());
  if (!cat || cat != to.realized().base_ptr()) throw UsageError("resolution_map: resolutions live on different bases");
  const FinPresheaf& b_from = from.quotient.from_b.source;
  const FinPresheaf& b_to = to.quotient.from_b.source;
  PresheafMap on_c;
  PresheafMap on_b;
  const int m = from.n, n = to.n;
  if (from.flavor == ResolutionFlavor::R || from.flavor == ResolutionFlavor::L) {
    std::vector<int> alpha;
    if (from.flavor == ResolutionFlavor::R) {
      alpha = theta.values;
      alpha.push_back(n + 1);
    } else {
      alpha.push_back(0);
      for (int v : theta.values) alpha.push_back(v + 1);
    }
    ObjId s = cat->object_id(from.cone), t = cat->object_id(to.cone);
    ArrowId f = cat->arrow_id(s, t, label_preserving_map(from.cone, to.cone, alpha));
    on_b = representable_map(b_from, b_to, *cat, s, f);
  } else if (from.flavor == ResolutionFlavor::Cyl) {
    ObjId s = cat->object_id(ThetaObj::simplex(m)), t = cat->object_id(ThetaObj::simplex(n));
    ArrowId f = cat->arrow_id(s, t, constant_label_map(theta, identity_map(ThetaObj::point())));
    on_b = map_from_function(b_from, b_to, [&](ObjId o, Elem e) {
      auto parts = product_components(b_from, o, e);
      parts[0] = cat->hom_index(cat->compose(f, cat->hom(o, s)[parts[0]]));
      return product_element(b_to, o, parts);
    });
  } else {
    on_b = map_from_function(b_from, b_to, [&](ObjId o, Elem e) {
      auto parts = product_components(b_from, o, e);
      const int len = cat->object(o).n() + 1;
      auto v = e_digits(parts[0], len, m);
      for (int& d : v) d = theta(d);
      parts[0] = e_encode(v, n);
      return product_element(b_to, o, parts);
    });
  }
  on_c = map_from_function(from.quotient.from_c.source, to.quotient.from_c.source, [](ObjId, Elem e) { return e; });
  return induced_map(from.quotient, to.quotient, on_b, on_c);
}

CellCertificate resolution_L_filtration(const ThetaObj& c, int n, std::shared_ptr<const ThetaCategory> cat) {
  Resolution res = resolution(ResolutionFlavor::L, c, n, cat);
  const FinPresheaf& amb = res.realized();
  const FinPresheaf& rep = res.quotient.from_b.source;
  const ObjId co = cat->object_id(res.cone);
  CellCertificate cert{amb, Subobject(amb), Subobject(amb, true), {}};
  for (ObjId o = 0; o < cat->object_count(); ++o)
    for (Elem e = 0; e < rep.size(o); ++e)
      if (cat->arrow(cat->hom(o, co)[e]).alpha.back() <= 1) cert.source.insert(o, res.quotient.from_b(o, e));
  for (int k = 1; k <= n; ++k) {
    ThetaObj t = cone_object(ResolutionFlavor::L, c, k);
    auto to = cat->find_object(t);
    if (!to) throw TruncationError("resolution_L_filtration: " + to_string(t, cat->level()) + " is outside the truncation");
    // Increasing tuples 1 < i_1 < ... < i_k <= n+1.
    std::vector<int> idx(k);
    for (int r = 0; r < k; ++r) idx[r] = r + 2;
    while (true) {
      std::vector<int> alpha{0, 1};
      alpha.insert(alpha.end(), idx.begin(), idx.end());
      ArrowId f = cat->arrow_id(*to, co, label_preserving_map(t, res.cone, alpha));
      cert.steps.push_back({GeneratorId::h_map(t, 1), res.quotient.from_b(*to, cat->hom_index(f))});
      int r = k - 1;
      while (r >= 0 && idx[r] == n + 1 - (k - 1 - r)) --r;
      if (r < 0) break;
      ++idx[r];
      for (int s = r + 1; s < k; ++s) idx[s] = idx[s - 1] + 1;
    }
  }
  return cert;
}

std::vector<Elem> map_object(const FinPresheaf& x, Elem from, Elem to, const ThetaObj& c, int n) {
  auto cat = std::dynamic_pointer_cast<const ThetaCategory>(x.base_ptr());
  if (!cat) throw UsageError("map_object: X must be a presheaf on a Theta truncation");
  if (n < 0) throw UsageError("map_object: negative level");
  const ThetaObj cone = cone_object(ResolutionFlavor::R, c, n);
  auto co = cat->find_object(cone);
  if (!co) throw TruncationError("map_object: " + to_string(cone, cat->level()) + " is outside the truncation of X");
  const ObjId pt = *cat->terminal();
  if (from < 0 || from >= x.size(pt) || to < 0 || to >= x.size(pt)) throw UsageError("map_object: vertex out of range");
  const ThetaObj base_face = ThetaObj::simplex(n);
  const ObjId fo = cat->object_id(base_face);
  std::vector<int> face_alpha(n + 1);
  for (int v = 0; v <= n; ++v) face_alpha[v] = v;
  ArrowId face = cat->arrow_id(fo, *co, label_preserving_map(base_face, cone, face_alpha));
  ArrowId last = cat->arrow_id(pt, *co, ThetaMap{{n + 1}, {}});
  const Elem degenerate = x.act(cat->hom(fo, pt).at(0), from);
  std::vector<Elem> out;
  for (Elem z = 0; z < x.size(*co); ++z)
    if (x.act(face, z) == degenerate && x.act(last, z) == to) out.push_back(z);
  return out;
}

}  // namespace thetacell
