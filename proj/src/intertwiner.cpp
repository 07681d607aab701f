#include "thetacell/intertwiner.hpp"

#include <bit>

#include "thetacell/error.hpp"

namespace thetacell {

namespace {

std::uint32_t all_vertices(int n) { return (n >= 31) ? 0xffffffffu : ((1u << (n + 1)) - 1); }

}  // namespace

SimplicialSubset SimplicialSubset::full(int n) { return {n, {all_vertices(n)}}; }
SimplicialSubset SimplicialSubset::empty(int n) { return {n, {}}; }

SimplicialSubset SimplicialSubset::faces(int n, const std::vector<int>& which) {
  SimplicialSubset s{n, {}};
  for (int i : which) {
    if (i < 0 || i > n) throw UsageError("face index out of range");
    s.facets.push_back(all_vertices(n) & ~(1u << i));
  }
  return s;
}

SimplicialSubset SimplicialSubset::boundary(int n) {
  std::vector<int> all;
  for (int i = 0; i <= n; ++i) all.push_back(i);
  return faces(n, all);
}

SimplicialSubset SimplicialSubset::horn(int n, int k) {
  if (k < 0 || k > n) throw UsageError("horn index out of range");
  std::vector<int> which;
  for (int i = 0; i <= n; ++i)
    if (i != k) which.push_back(i);
  return faces(n, which);
}

SimplicialSubset SimplicialSubset::spine(int n) {
  SimplicialSubset s{n, {}};
  if (n == 0) s.facets.push_back(1u);
  for (int i = 1; i <= n; ++i) s.facets.push_back((1u << (i - 1)) | (1u << i));
  return s;
}

bool SimplicialSubset::contains_mask(std::uint32_t mask) const {
  for (auto f : facets)
    if ((mask & ~f) == 0) return true;
  return false;
}

bool SimplicialSubset::contains(const std::vector<int>& alpha) const {
  std::uint32_t m = 0;
  for (int v : alpha) m |= 1u << v;
  return contains_mask(m);
}

std::string SimplicialSubset::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < facets.size(); ++i) {
    if (i) s += ",";
    s += "{";
    bool first = true;
    for (int v = 0; v <= n; ++v)
      if (facets[i] >> v & 1u) {
        s += (first ? "" : ",") + std::to_string(v);
        first = false;
      }
    s += "}";
  }
  return s + "}";
}

bool Label::contains(const ThetaObj& e, const ThetaMap& f) const {
  switch (kind) {
    case LabelKind::Full:
      return true;
    case LabelKind::Empty:
      return false;
    case LabelKind::Boundary:
      return !(reedy_factor(f, e, carrier).middle == carrier);
    case LabelKind::Explicit:
      return explicit_maps.count({e, f}) > 0;
  }
  return false;
}

std::string Label::to_string(int level) const {
  std::string c = thetacell::to_string(carrier, level);
  switch (kind) {
    case LabelKind::Full:
      return c;
    case LabelKind::Boundary:
      return "d" + c;
    case LabelKind::Empty:
      return "0" + c;
    case LabelKind::Explicit:
      return "sub" + c;
  }
  return c;
}

Subobject label_subobject(const Label& l, std::shared_ptr<const ThetaCategory> c) {
  ObjId t = c->object_id(l.carrier);
  FinPresheaf rep = representable(c, t);
  return Subobject::from_predicate(rep, [&](ObjId o, Elem x) { return l.contains(c->object(o), c->arrow(c->hom(o, t)[x])); });
}

FinPresheaf label_presheaf(const Label& l, std::shared_ptr<const ThetaCategory> c) {
  if (l.kind == LabelKind::Full) return representable(c, c->object_id(l.carrier));
  return label_subobject(l, c).as_presheaf();
}

ThetaObj LabeledRegion::carrier() const {
  ThetaObj t;
  for (const auto& l : labels) t.labels.push_back(l.carrier);
  return t;
}

bool LabeledRegion::contains(const ThetaMap& x, const ThetaObj& source) const {
  if (!shape.contains(x.alpha)) return false;
  for (int i = 1; i <= source.n(); ++i)
    for (int j = x.alpha[i - 1] + 1; j <= x.alpha[i]; ++j)
      if (!labels[j - 1].contains(source.labels[i - 1], x.comps[i - 1][j - x.alpha[i - 1] - 1])) return false;
  return true;
}

namespace {

void check_region(const LabeledRegion& r) {
  if (static_cast<int>(r.labels.size()) != r.shape.n) throw UsageError("region needs one label per edge");
}

// Evaluates pred on the Theta map of every element of representable(t).
Subobject over_representable(std::shared_ptr<const ThetaCategory> cat, ObjId t,
                             const std::function<bool(const ThetaMap&, const ThetaObj&)>& pred) {
  FinPresheaf rep = representable(cat, t);
  return Subobject::from_predicate(rep, [&](ObjId o, Elem x) {
    return pred(cat->arrow(cat->hom(o, t)[x]), cat->object(o));
  });
}

}  // namespace

Subobject v_construct(const LabeledRegion& r, std::shared_ptr<const ThetaCategory> cat) {
  check_region(r);
  ObjId t = cat->object_id(r.carrier());
  return over_representable(cat, t, [&](const ThetaMap& x, const ThetaObj& s) { return r.contains(x, s); });
}

std::vector<ThetaMap> v_elements(const LabeledRegion& r, const ThetaObj& at) {
  check_region(r);
  std::vector<ThetaMap> out;
  for (const auto& beta : enumerate_monotone(at.n(), r.shape.n)) {
    if (!r.shape.contains(beta.values)) continue;
    std::vector<std::vector<ThetaMap>> lists;
    std::vector<int> slot;
    bool empty = false;
    for (int i = 1; i <= at.n(); ++i)
      for (int j = beta.values[i - 1] + 1; j <= beta.values[i]; ++j) {
        std::vector<ThetaMap> ok;
        for (auto& g : hom(at.labels[i - 1], r.labels[j - 1].carrier))
          if (r.labels[j - 1].contains(at.labels[i - 1], g)) ok.push_back(std::move(g));
        if (ok.empty()) empty = true;
        lists.push_back(std::move(ok));
        slot.push_back(i);
      }
    if (empty) continue;
    std::vector<std::size_t> idx(lists.size(), 0);
    while (true) {
      ThetaMap x;
      x.alpha = beta.values;
      x.comps.resize(at.n());
      for (std::size_t q = 0; q < lists.size(); ++q) x.comps[slot[q] - 1].push_back(lists[q][idx[q]]);
      out.push_back(std::move(x));
      int q = static_cast<int>(lists.size()) - 1;
      while (q >= 0 && idx[q] + 1 == lists[q].size()) idx[q--] = 0;
      if (q < 0) break;
      ++idx[q];
    }
  }
  return out;
}

Subobject corner_domain(const SimplicialSubset& k, const std::vector<CornerLeg>& legs,
                        std::shared_ptr<const ThetaCategory> cat) {
  const int n = k.n;
  if (static_cast<int>(legs.size()) != n) throw UsageError("corner needs one leg per edge");
  if (n > 20) throw UsageError("corner too large");
  ThetaObj t;
  for (const auto& l : legs) {
    if (!(l.domain.carrier == l.codomain.carrier)) throw UsageError("corner leg with mismatched carriers");
    t.labels.push_back(l.codomain.carrier);
  }
  return over_representable(cat, cat->object_id(t), [&](const ThetaMap& x, const ThetaObj& s) {
    // in_b[i], in_a[i]: every component landing in edge i lies in B_i, A_i.
    std::vector<char> in_a(n + 1, 1), in_b(n + 1, 1);
    for (int i = 1; i <= s.n(); ++i)
      for (int j = x.alpha[i - 1] + 1; j <= x.alpha[i]; ++j) {
        const ThetaMap& g = x.comps[i - 1][j - x.alpha[i - 1] - 1];
        if (!legs[j - 1].codomain.contains(s.labels[i - 1], g)) in_b[j] = 0;
        if (!legs[j - 1].domain.contains(s.labels[i - 1], g)) in_a[j] = 0;
      }
    for (int j = 1; j <= n; ++j)
      if (!in_b[j]) return false;
    const bool in_k = k.contains(x.alpha);
    const std::uint32_t top = (1u << (n + 1)) - 1;
    for (std::uint32_t eps = 0; eps < top; ++eps) {
      bool ok = (eps & 1u) || in_k;
      for (int j = 1; ok && j <= n; ++j) ok = (eps >> j & 1u) || in_a[j];
      if (ok) return true;
    }
    return false;
  });
}

namespace {

std::vector<CornerLeg> boundary_legs(const ThetaObj& t) {
  std::vector<CornerLeg> legs;
  for (const auto& c : t.labels) legs.push_back({Label::boundary(c), Label::full(c)});
  return legs;
}

}  // namespace

Subobject theta_boundary(const ThetaObj& t, std::shared_ptr<const ThetaCategory> cat) {
  return corner_domain(SimplicialSubset::boundary(t.n()), boundary_legs(t), cat);
}

Subobject theta_horn(const ThetaObj& t, int k, std::shared_ptr<const ThetaCategory> cat) {
  if (k < 1 || k >= t.n()) throw UsageError("only inner horns: need 0 < k < n");
  return corner_domain(SimplicialSubset::horn(t.n(), k), boundary_legs(t), cat);
}

Subobject theta_spine(const ThetaObj& t, std::shared_ptr<const ThetaCategory> cat) {
  LabeledRegion r{SimplicialSubset::spine(t.n()), {}};
  for (const auto& c : t.labels) r.labels.push_back(Label::full(c));
  return v_construct(r, cat);
}

GeneratorId GeneratorId::inner_horn(const ThetaObj& t, int k) {
  if (k < 1 || k >= t.n()) throw UsageError("only inner horns: need 0 < k < n");
  return {t.n(), k, t.labels, std::vector<LegKind>(t.n(), LegKind::Boundary)};
}

GeneratorId GeneratorId::h_map(const ThetaObj& t, int k) {
  if (k < 1 || k >= t.n()) throw UsageError("only inner horns: need 0 < k < n");
  return {t.n(), k, t.labels, std::vector<LegKind>(t.n(), LegKind::Empty)};
}

GeneratorId GeneratorId::boundary(const ThetaObj& t) {
  return {t.n(), -1, t.labels, std::vector<LegKind>(t.n(), LegKind::Boundary)};
}

ThetaObj GeneratorId::target() const { return ThetaObj(labels); }

std::string GeneratorId::to_string(int level) const {
  std::string s = k < 0 ? "boundary(" + std::to_string(n) : "horn(" + std::to_string(n) + "," + std::to_string(k);
  s += ";";
  for (int i = 0; i < n; ++i) {
    if (i) s += ",";
    s += thetacell::to_string(labels[i], level - 1);
    s += legs[i] == LegKind::Boundary ? ":bdry" : ":empty";
  }
  return s + ")";
}

GeneratorId GeneratorId::parse(const std::string& text, int level) {
  auto fail = [&](const std::string& why) -> GeneratorId {
    throw UsageError("cannot parse generator '" + text + "': " + why);
  };
  GeneratorId g;
  std::size_t pos;
  if (text.rfind("horn(", 0) == 0) {
    pos = 5;
  } else if (text.rfind("boundary(", 0) == 0) {
    pos = 9;
    g.k = -1;
  } else {
    return fail("expected horn( or boundary(");
  }
  std::size_t semi = text.find(';', pos);
  if (semi == std::string::npos || text.back() != ')') return fail("malformed");
  std::string head = text.substr(pos, semi - pos);
  try {
    if (g.k < 0) {
      g.n = std::stoi(head);
    } else {
      auto comma = head.find(',');
      if (comma == std::string::npos) return fail("missing horn index");
      g.n = std::stoi(head.substr(0, comma));
      g.k = std::stoi(head.substr(comma + 1));
    }
  } catch (const std::logic_error&) {
    return fail("bad number");
  }
  std::string body = text.substr(semi + 1, text.size() - semi - 2);
  std::vector<std::string> items;
  int depth = 0;
  std::string cur;
  for (char ch : body) {
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (ch == ',' && depth == 0) {
      items.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) items.push_back(cur);
  if (static_cast<int>(items.size()) != g.n) return fail("wrong number of legs");
  for (const auto& it : items) {
    auto colon = it.rfind(':');
    if (colon == std::string::npos) return fail("leg without kind");
    g.labels.push_back(parse_object(it.substr(0, colon), level - 1));
    std::string kind = it.substr(colon + 1);
    if (kind == "bdry")
      g.legs.push_back(LegKind::Boundary);
    else if (kind == "empty")
      g.legs.push_back(LegKind::Empty);
    else
      return fail("unknown leg kind " + kind);
  }
  if (g.k >= 0 && (g.k < 1 || g.k >= g.n)) return fail("only inner horns");
  return g;
}

Generator make_generator(const GeneratorId& id, std::shared_ptr<const ThetaCategory> cat) {
  std::vector<CornerLeg> legs;
  for (int i = 0; i < id.n; ++i) {
    const ThetaObj& c = id.labels[i];
    legs.push_back({id.legs[i] == LegKind::Boundary ? Label::boundary(c) : Label::empty(c), Label::full(c)});
  }
  SimplicialSubset k = id.k < 0 ? SimplicialSubset::boundary(id.n) : SimplicialSubset::horn(id.n, id.k);
  Generator g;
  g.id = id;
  g.target_object = cat->object_id(id.target());
  g.domain = corner_domain(k, legs, cat);
  return g;
}

GeneratorSets generators(std::shared_ptr<const ThetaCategory> cat, int d) {
  if (d > cat->bound()) throw TruncationError("generators: dimension above the truncation");
  GeneratorSets out;
  for (ObjId o : cat->objects_by_dim()) {
    if (cat->dim(o) > d) break;
    const ThetaObj& t = cat->object(o);
    out.boundaries.push_back(make_generator(GeneratorId::boundary(t), cat));
    for (int k = 1; k < t.n(); ++k) out.inner_horns.push_back(make_generator(GeneratorId::inner_horn(t, k), cat));
  }
  return out;
}

}  // namespace thetacell
