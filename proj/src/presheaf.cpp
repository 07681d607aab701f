#include "thetacell/presheaf.hpp"

#include <algorithm>

#include "thetacell/error.hpp"

namespace thetacell {

std::string detail::PresheafImpl::describe(ObjId, Elem x) const { return "#" + std::to_string(x); }

long FinPresheaf::total_size() const {
  long n = 0;
  for (int s : impl_->sizes) n += s;
  return n;
}

void require_same_base(const FinPresheaf& a, const FinPresheaf& b, const char* op) {
  if (!a.valid() || !b.valid()) throw UsageError(std::string(op) + ": empty presheaf handle");
  if (!a.same_base(b))
    throw UsageError(std::string(op) + ": presheaves live on different truncations (" + a.base().name() + " vs " +
                     b.base().name() + ")");
}

namespace {

std::vector<int> sizes_of(const Category& c, const std::function<int(ObjId)>& f) {
  std::vector<int> s(c.object_count());
  for (ObjId o = 0; o < c.object_count(); ++o) s[o] = f(o);
  return s;
}

struct LambdaImpl final : detail::PresheafImpl {
  LambdaImpl(std::shared_ptr<const Category> c, std::vector<int> s, std::function<Elem(ArrowId, Elem)> a,
             std::function<std::string(ObjId, Elem)> d)
      : PresheafImpl(std::move(c), std::move(s)), act_fn(std::move(a)), desc_fn(std::move(d)) {}
  Elem act(ArrowId f, Elem x) const override { return act_fn(f, x); }
  std::string describe(ObjId o, Elem x) const override {
    return desc_fn ? desc_fn(o, x) : PresheafImpl::describe(o, x);
  }
  std::function<Elem(ArrowId, Elem)> act_fn;
  std::function<std::string(ObjId, Elem)> desc_fn;
};

struct TableImpl final : detail::PresheafImpl {
  TableImpl(std::shared_ptr<const Category> c, std::vector<int> s, std::unordered_map<ArrowId, std::vector<Elem>> t,
            std::vector<std::vector<std::string>> n)
      : PresheafImpl(std::move(c), std::move(s)), tables(std::move(t)), names(std::move(n)) {}
  Elem act(ArrowId f, Elem x) const override {
    auto it = tables.find(f);
    if (it == tables.end()) {
      if (cat->is_identity(f)) return x;
      throw IntegrityError("table presheaf has no action for arrow " + cat->arrow_name(f));
    }
    return it->second.at(x);
  }
  std::string describe(ObjId o, Elem x) const override {
    if (!names.empty() && !names[o].empty()) return names[o][x];
    return PresheafImpl::describe(o, x);
  }
  std::unordered_map<ArrowId, std::vector<Elem>> tables;
  std::vector<std::vector<std::string>> names;
};

struct RepresentableImpl final : detail::PresheafImpl {
  RepresentableImpl(std::shared_ptr<const Category> c, ObjId t)
      : PresheafImpl(c, sizes_of(*c, [&](ObjId o) { return static_cast<int>(c->hom(o, t).size()); })), top(t) {}
  Elem act(ArrowId f, Elem x) const override {
    ArrowId a = cat->hom(cat->target(f), top)[x];
    return cat->hom_index(cat->compose(a, f));
  }
  std::string describe(ObjId o, Elem x) const override { return cat->arrow_name(cat->hom(o, top)[x]); }
  ObjId top;
};

struct ProductImpl final : detail::PresheafImpl {
  ProductImpl(std::shared_ptr<const Category> c, std::vector<FinPresheaf> f)
      : PresheafImpl(c, sizes_of(*c, [&](ObjId o) {
          long n = 1;
          for (const auto& x : f) n *= x.size(o);
          if (n > (1L << 30)) throw UsageError("product too large");
          return static_cast<int>(n);
        })),
        factors(std::move(f)) {}
  std::vector<Elem> decode(ObjId o, Elem e) const {
    std::vector<Elem> parts(factors.size());
    for (int i = static_cast<int>(factors.size()) - 1; i >= 0; --i) {
      int s = factors[i].size(o);
      parts[i] = e % s;
      e /= s;
    }
    return parts;
  }
  Elem encode(ObjId o, std::span<const Elem> parts) const {
    long e = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) e = e * factors[i].size(o) + parts[i];
    return static_cast<Elem>(e);
  }
  Elem act(ArrowId f, Elem x) const override {
    auto parts = decode(cat->target(f), x);
    for (std::size_t i = 0; i < parts.size(); ++i) parts[i] = factors[i].act(f, parts[i]);
    return encode(cat->source(f), parts);
  }
  std::string describe(ObjId o, Elem x) const override {
    auto parts = decode(o, x);
    std::string s = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? ", " : "") + factors[i].describe(o, parts[i]);
    return s + ")";
  }
  std::vector<FinPresheaf> factors;
};

struct SubImpl final : detail::PresheafImpl {
  SubImpl(FinPresheaf amb, std::vector<std::vector<Elem>> mem)
      : PresheafImpl(amb.base_ptr(), sizes_of(amb.base(), [&](ObjId o) { return static_cast<int>(mem[o].size()); })),
        ambient(std::move(amb)),
        members(std::move(mem)) {
    local.resize(members.size());
    for (std::size_t o = 0; o < members.size(); ++o) {
      local[o].assign(ambient.size(static_cast<ObjId>(o)), -1);
      for (std::size_t i = 0; i < members[o].size(); ++i) local[o][members[o][i]] = static_cast<Elem>(i);
    }
  }
  Elem act(ArrowId f, Elem x) const override {
    Elem y = ambient.act(f, members[cat->target(f)][x]);
    Elem r = local[cat->source(f)][y];
    if (r < 0) throw IntegrityError("subobject is not closed under " + cat->arrow_name(f));
    return r;
  }
  std::string describe(ObjId o, Elem x) const override { return ambient.describe(o, members[o][x]); }
  FinPresheaf ambient;
  std::vector<std::vector<Elem>> members;
  std::vector<std::vector<Elem>> local;
};

// P(o) = C(o) followed by the elements of B(o) outside the image of i.
struct PushoutImpl final : detail::PresheafImpl {
  PushoutImpl(const PresheafMap& i, const PresheafMap& g, std::vector<std::vector<Elem>> r,
              std::vector<std::vector<Elem>> rin, std::vector<std::vector<Elem>> pre)
      : PresheafImpl(i.target.base_ptr(), sizes_of(i.target.base(), [&](ObjId o) {
          return g.target.size(o) + static_cast<int>(r[o].size());
        })),
        b(i.target),
        c(g.target),
        gmap(g.comp),
        rest(std::move(r)),
        rest_index(std::move(rin)),
        preimage(std::move(pre)) {}
  Elem act(ArrowId f, Elem x) const override {
    ObjId t = cat->target(f), s = cat->source(f);
    int nc = c.size(t);
    if (x < nc) return c.act(f, x);
    Elem y = b.act(f, rest[t][x - nc]);
    Elem a = preimage[s][y];
    if (a >= 0) return gmap[s][a];
    return c.size(s) + rest_index[s][y];
  }
  std::string describe(ObjId o, Elem x) const override {
    int nc = c.size(o);
    if (x < nc) return c.describe(o, x);
    return b.describe(o, rest[o][x - nc]);
  }
  FinPresheaf b, c;
  std::vector<std::vector<Elem>> gmap;
  std::vector<std::vector<Elem>> rest;
  std::vector<std::vector<Elem>> rest_index;
  std::vector<std::vector<Elem>> preimage;
};

}  // namespace

FinPresheaf make_presheaf(std::shared_ptr<const Category> cat, std::vector<int> sizes,
                          std::function<Elem(ArrowId, Elem)> act, std::function<std::string(ObjId, Elem)> describe) {
  if (static_cast<int>(sizes.size()) != cat->object_count()) throw UsageError("size vector does not match category");
  return FinPresheaf(std::make_shared<LambdaImpl>(std::move(cat), std::move(sizes), std::move(act), std::move(describe)));
}

FinPresheaf table_presheaf(std::shared_ptr<const Category> cat, std::vector<int> sizes,
                           std::unordered_map<ArrowId, std::vector<Elem>> tables,
                           std::vector<std::vector<std::string>> names) {
  if (static_cast<int>(sizes.size()) != cat->object_count()) throw UsageError("size vector does not match category");
  for (const auto& [f, tab] : tables) {
    if (static_cast<int>(tab.size()) != sizes[cat->target(f)]) throw UsageError("action table has the wrong length");
    for (Elem e : tab)
      if (e < 0 || e >= sizes[cat->source(f)]) throw UsageError("action table value out of range");
  }
  return FinPresheaf(std::make_shared<TableImpl>(std::move(cat), std::move(sizes), std::move(tables), std::move(names)));
}

FinPresheaf tabulate(const FinPresheaf& x) {
  const Category& c = x.base();
  std::unordered_map<ArrowId, std::vector<Elem>> tables;
  std::vector<std::vector<std::string>> names(c.object_count());
  std::vector<int> sizes(c.object_count());
  for (ObjId o = 0; o < c.object_count(); ++o) {
    sizes[o] = x.size(o);
    for (Elem e = 0; e < x.size(o); ++e) names[o].push_back(x.describe(o, e));
  }
  for (ObjId s = 0; s < c.object_count(); ++s)
    for (ObjId t = 0; t < c.object_count(); ++t)
      for (ArrowId f : c.hom(s, t)) {
        std::vector<Elem> tab(x.size(t));
        for (Elem e = 0; e < x.size(t); ++e) tab[e] = x.act(f, e);
        tables.emplace(f, std::move(tab));
      }
  return table_presheaf(x.base_ptr(), std::move(sizes), std::move(tables), std::move(names));
}

FinPresheaf representable(std::shared_ptr<const Category> cat, ObjId o) {
  return FinPresheaf(std::make_shared<RepresentableImpl>(std::move(cat), o));
}

FinPresheaf terminal_presheaf(std::shared_ptr<const Category> cat) {
  std::vector<int> sizes(cat->object_count(), 1);
  return make_presheaf(std::move(cat), std::move(sizes), [](ArrowId, Elem) { return 0; },
                       [](ObjId, Elem) { return std::string("*"); });
}

FinPresheaf empty_presheaf(std::shared_ptr<const Category> cat) {
  std::vector<int> sizes(cat->object_count(), 0);
  return make_presheaf(std::move(cat), std::move(sizes), [](ArrowId, Elem) -> Elem {
    throw IntegrityError("empty presheaf has no elements");
  });
}

FinPresheaf product(const std::vector<FinPresheaf>& factors) {
  if (factors.empty()) throw UsageError("product of no factors: use terminal_presheaf");
  for (const auto& f : factors) require_same_base(factors[0], f, "product");
  return FinPresheaf(std::make_shared<ProductImpl>(factors[0].base_ptr(), factors));
}

namespace {

const ProductImpl& as_product(const FinPresheaf& p) {
  auto* impl = dynamic_cast<const ProductImpl*>(p.impl());
  if (!impl) throw UsageError("presheaf is not a product");
  return *impl;
}

}  // namespace

Elem product_element(const FinPresheaf& p, ObjId o, std::span<const Elem> parts) {
  const auto& impl = as_product(p);
  if (parts.size() != impl.factors.size()) throw UsageError("wrong number of product components");
  return impl.encode(o, parts);
}

std::vector<Elem> product_components(const FinPresheaf& p, ObjId o, Elem e) { return as_product(p).decode(o, e); }

PresheafMap product_projection(const FinPresheaf& p, int factor) {
  const auto& impl = as_product(p);
  return map_from_function(p, impl.factors.at(factor),
                           [&](ObjId o, Elem e) { return impl.decode(o, e)[factor]; });
}

Coproduct coproduct(const FinPresheaf& a, const FinPresheaf& b) {
  require_same_base(a, b, "coproduct");
  auto sizes = sizes_of(a.base(), [&](ObjId o) { return a.size(o) + b.size(o); });
  const Category* cat = &a.base();
  FinPresheaf p = make_presheaf(
      a.base_ptr(), sizes,
      [a, b, cat](ArrowId f, Elem x) {
        int na = a.size(cat->target(f));
        return x < na ? a.act(f, x) : a.size(cat->source(f)) + b.act(f, x - na);
      },
      [a, b](ObjId o, Elem x) {
        return x < a.size(o) ? "L" + a.describe(o, x) : "R" + b.describe(o, x - a.size(o));
      });
  return {p, map_from_function(a, p, [](ObjId, Elem x) { return x; }),
          map_from_function(b, p, [a](ObjId o, Elem x) { return a.size(o) + x; })};
}

Pushout pushout(const PresheafMap& i, const PresheafMap& g) {
  require_same_base(i.source, g.source, "pushout");
  require_same_base(i.target, g.target, "pushout");
  if (!is_mono(i)) throw UsageError("pushout: the first leg must be a monomorphism");
  const Category& cat = i.target.base();
  const int n = cat.object_count();
  std::vector<std::vector<Elem>> rest(n), rest_index(n), pre(n);
  for (ObjId o = 0; o < n; ++o) {
    pre[o].assign(i.target.size(o), -1);
    for (Elem a = 0; a < i.source.size(o); ++a) pre[o][i.comp[o][a]] = a;
    rest_index[o].assign(i.target.size(o), -1);
    for (Elem b = 0; b < i.target.size(o); ++b)
      if (pre[o][b] < 0) {
        rest_index[o][b] = static_cast<Elem>(rest[o].size());
        rest[o].push_back(b);
      }
  }
  auto impl = std::make_shared<PushoutImpl>(i, g, rest, rest_index, pre);
  FinPresheaf p(impl);
  PresheafMap from_b = map_from_function(i.target, p, [&](ObjId o, Elem b) {
    Elem a = pre[o][b];
    return a >= 0 ? g.comp[o][a] : g.target.size(o) + rest_index[o][b];
  });
  PresheafMap from_c = map_from_function(g.target, p, [](ObjId, Elem x) { return x; });
  return {p, std::move(from_b), std::move(from_c)};
}

Pushout collapse(const Subobject& s) {
  PresheafMap inc = s.inclusion();
  FinPresheaf pt = terminal_presheaf(inc.source.base_ptr());
  return pushout(inc, map_from_function(inc.source, pt, [](ObjId, Elem) { return 0; }));
}

PresheafMap map_from_function(const FinPresheaf& source, const FinPresheaf& target,
                              const std::function<Elem(ObjId, Elem)>& fn) {
  require_same_base(source, target, "map");
  PresheafMap m{source, target, {}};
  m.comp.resize(source.base().object_count());
  for (ObjId o = 0; o < source.base().object_count(); ++o) {
    m.comp[o].resize(source.size(o));
    for (Elem x = 0; x < source.size(o); ++x) {
      Elem y = fn(o, x);
      if (y < 0 || y >= target.size(o)) throw IntegrityError("map component out of range");
      m.comp[o][x] = y;
    }
  }
  return m;
}

PresheafMap identity_morphism(const FinPresheaf& x) {
  return map_from_function(x, x, [](ObjId, Elem e) { return e; });
}

PresheafMap compose(const PresheafMap& g, const PresheafMap& f) {
  if (f.target.impl() != g.source.impl()) require_same_base(f.target, g.source, "compose");
  return map_from_function(f.source, g.target, [&](ObjId o, Elem x) { return g.comp[o][f.comp[o][x]]; });
}

bool operator==(const PresheafMap& a, const PresheafMap& b) { return a.comp == b.comp; }

bool is_natural(const PresheafMap& m, std::string* why) {
  const Category& c = m.source.base();
  auto check = [&](ArrowId f) {
    ObjId s = c.source(f), t = c.target(f);
    for (Elem x = 0; x < m.source.size(t); ++x)
      if (m.comp[s][m.source.act(f, x)] != m.target.act(f, m.comp[t][x])) {
        if (why) *why = "not natural along " + c.arrow_name(f) + " at " + m.source.describe(t, x);
        return false;
      }
    return true;
  };
  for (ObjId o = 0; o < c.object_count(); ++o) {
    for (ArrowId f : c.faces_into(o))
      if (!check(f)) return false;
    for (ArrowId f : c.degeneracies_from(o))
      if (!check(f)) return false;
  }
  return true;
}

bool is_mono(const PresheafMap& m) {
  for (ObjId o = 0; o < static_cast<ObjId>(m.comp.size()); ++o) {
    std::vector<char> seen(m.target.size(o), 0);
    for (Elem y : m.comp[o]) {
      if (seen[y]) return false;
      seen[y] = 1;
    }
  }
  return true;
}

bool is_epi(const PresheafMap& m) {
  for (ObjId o = 0; o < static_cast<ObjId>(m.comp.size()); ++o) {
    std::vector<char> seen(m.target.size(o), 0);
    for (Elem y : m.comp[o]) seen[y] = 1;
    if (std::count(seen.begin(), seen.end(), 0)) return false;
  }
  return true;
}

Subobject::Subobject(FinPresheaf ambient, bool full) : ambient_(std::move(ambient)) {
  bits_.resize(ambient_.base().object_count());
  for (ObjId o = 0; o < static_cast<ObjId>(bits_.size()); ++o) bits_[o].assign(ambient_.size(o), full ? 1 : 0);
}

Subobject Subobject::from_predicate(FinPresheaf ambient, const std::function<bool(ObjId, Elem)>& pred) {
  Subobject s(std::move(ambient));
  for (ObjId o = 0; o < static_cast<ObjId>(s.bits_.size()); ++o)
    for (Elem x = 0; x < static_cast<Elem>(s.bits_[o].size()); ++x) s.bits_[o][x] = pred(o, x) ? 1 : 0;
  return s;
}

long Subobject::count() const {
  long n = 0;
  for (std::size_t o = 0; o < bits_.size(); ++o) n += count(static_cast<ObjId>(o));
  return n;
}

int Subobject::count(ObjId o) const { return static_cast<int>(std::count(bits_[o].begin(), bits_[o].end(), 1)); }

std::vector<Elem> Subobject::members(ObjId o) const {
  std::vector<Elem> m;
  for (Elem x = 0; x < static_cast<Elem>(bits_[o].size()); ++x)
    if (bits_[o][x]) m.push_back(x);
  return m;
}

namespace {

void require_same_ambient(const Subobject& a, const Subobject& b) {
  if (a.ambient().impl() != b.ambient().impl()) throw UsageError("subobjects of different ambient presheaves");
}

}  // namespace

Subobject Subobject::unite(const Subobject& other) const {
  require_same_ambient(*this, other);
  Subobject r = *this;
  for (std::size_t o = 0; o < bits_.size(); ++o)
    for (std::size_t x = 0; x < bits_[o].size(); ++x) r.bits_[o][x] |= other.bits_[o][x];
  return r;
}

Subobject Subobject::intersect(const Subobject& other) const {
  require_same_ambient(*this, other);
  Subobject r = *this;
  for (std::size_t o = 0; o < bits_.size(); ++o)
    for (std::size_t x = 0; x < bits_[o].size(); ++x) r.bits_[o][x] &= other.bits_[o][x];
  return r;
}

Subobject Subobject::complement() const {
  Subobject r = *this;
  for (auto& v : r.bits_)
    for (auto& b : v) b = !b;
  return r;
}

bool Subobject::subset_of(const Subobject& other) const {
  require_same_ambient(*this, other);
  for (std::size_t o = 0; o < bits_.size(); ++o)
    for (std::size_t x = 0; x < bits_[o].size(); ++x)
      if (bits_[o][x] && !other.bits_[o][x]) return false;
  return true;
}

bool Subobject::is_full() const {
  for (const auto& v : bits_)
    for (char b : v)
      if (!b) return false;
  return true;
}

bool Subobject::operator==(const Subobject& other) const {
  return ambient_.impl() == other.ambient_.impl() && bits_ == other.bits_;
}

bool Subobject::is_closed(std::string* why) const {
  const Category& c = ambient_.base();
  auto check = [&](ArrowId f) {
    ObjId s = c.source(f), t = c.target(f);
    for (Elem x = 0; x < ambient_.size(t); ++x)
      if (bits_[t][x] && !bits_[s][ambient_.act(f, x)]) {
        if (why) *why = "not closed under " + c.arrow_name(f) + " at " + ambient_.describe(t, x);
        return false;
      }
    return true;
  };
  for (ObjId o = 0; o < c.object_count(); ++o) {
    for (ArrowId f : c.faces_into(o))
      if (!check(f)) return false;
    for (ArrowId f : c.degeneracies_from(o))
      if (!check(f)) return false;
  }
  return true;
}

Subobject Subobject::closure() const {
  const Category& c = ambient_.base();
  Subobject r = *this;
  for (ObjId t = 0; t < c.object_count(); ++t)
    for (Elem x = 0; x < ambient_.size(t); ++x) {
      if (!bits_[t][x]) continue;
      for (ObjId s = 0; s < c.object_count(); ++s)
        for (ArrowId f : c.hom(s, t)) r.bits_[s][ambient_.act(f, x)] = 1;
    }
  return r;
}

FinPresheaf Subobject::as_presheaf() const {
  std::vector<std::vector<Elem>> mem(bits_.size());
  for (std::size_t o = 0; o < bits_.size(); ++o) mem[o] = members(static_cast<ObjId>(o));
  return FinPresheaf(std::make_shared<SubImpl>(ambient_, std::move(mem)));
}

PresheafMap Subobject::inclusion() const {
  FinPresheaf p = as_presheaf();
  const auto* impl = static_cast<const SubImpl*>(p.impl());
  return map_from_function(p, ambient_, [impl](ObjId o, Elem x) { return impl->members[o][x]; });
}

Subobject image(const PresheafMap& f) {
  Subobject s(f.target);
  for (ObjId o = 0; o < static_cast<ObjId>(f.comp.size()); ++o)
    for (Elem y : f.comp[o]) s.insert(o, y);
  return s;
}

Subobject preimage(const PresheafMap& f, const Subobject& s) {
  return Subobject::from_predicate(f.source, [&](ObjId o, Elem x) { return s.contains(o, f.comp[o][x]); });
}

Subobject generated(const FinPresheaf& x, ObjId o, Elem e) {
  Subobject s(x);
  s.insert(o, e);
  return s.closure();
}

EzData eilenberg_zilber(const FinPresheaf& x) {
  const Category& c = x.base();
  const int n = c.object_count();
  EzData ez;
  ez.root_object.resize(n);
  ez.root_element.resize(n);
  ez.sigma.resize(n);
  for (ObjId o : c.objects_by_dim()) {
    ez.root_object[o].assign(x.size(o), -1);
    ez.root_element[o].assign(x.size(o), -1);
    ez.sigma[o].assign(x.size(o), -1);
    for (ArrowId s : c.degeneracies_from(o)) {
      ObjId t = c.target(s);
      for (Elem y = 0; y < x.size(t); ++y) {
        if (!ez.nondegenerate(t, y)) continue;
        Elem z = x.act(s, y);
        if (ez.sigma[o][z] >= 0)
          throw IntegrityError("element " + x.describe(o, z) + " at " + c.object_name(o) +
                               " has two degeneracy decompositions");
        ez.root_object[o][z] = t;
        ez.root_element[o][z] = y;
        ez.sigma[o][z] = s;
      }
    }
    for (Elem z = 0; z < x.size(o); ++z)
      if (ez.sigma[o][z] < 0) {
        ez.root_object[o][z] = o;
        ez.root_element[o][z] = z;
        ez.sigma[o][z] = c.identity(o);
      }
  }
  return ez;
}

std::vector<Cell> nondegenerate_cells(const FinPresheaf& x) {
  EzData ez = eilenberg_zilber(x);
  std::vector<Cell> out;
  for (ObjId o : x.base().objects_by_dim())
    for (Elem e = 0; e < x.size(o); ++e)
      if (ez.nondegenerate(o, e)) out.push_back({o, e, true});
  return out;
}

Subobject skeleton(const FinPresheaf& x, int n) {
  EzData ez = eilenberg_zilber(x);
  const Category& c = x.base();
  return Subobject::from_predicate(x, [&](ObjId o, Elem e) { return c.dim(ez.root_object[o][e]) <= n; });
}

FinPresheaf restrict_to(const FinPresheaf& x, std::shared_ptr<const ThetaCategory> smaller) {
  auto big = std::dynamic_pointer_cast<const ThetaCategory>(x.base_ptr());
  if (!big || big->level() != smaller->level() || big->bound() < smaller->bound())
    throw UsageError("restrict_to needs a Theta truncation of the same level and smaller bound");
  std::vector<ObjId> omap(smaller->object_count());
  std::vector<int> sizes(smaller->object_count());
  for (ObjId o = 0; o < smaller->object_count(); ++o) {
    omap[o] = big->object_id(smaller->object(o));
    sizes[o] = x.size(omap[o]);
  }
  const ThetaCategory* sm = smaller.get();
  return make_presheaf(
      smaller, std::move(sizes),
      [x, big, sm, omap](ArrowId f, Elem e) {
        ObjId s = sm->source(f), t = sm->target(f);
        return x.act(big->arrow_id(omap[s], omap[t], sm->arrow(f)), e);
      },
      [x, omap](ObjId o, Elem e) { return x.describe(omap[o], e); });
}

FinPresheaf pullback_projection(const FinPresheaf& x, std::shared_ptr<const ProductCategory> prod, int which) {
  const Category& factor = which == 0 ? prod->first() : prod->second();
  if (&factor != &x.base()) throw UsageError("pullback_projection: presheaf is not on that factor");
  const ProductCategory* p = prod.get();
  std::vector<int> sizes(prod->object_count());
  for (ObjId o = 0; o < prod->object_count(); ++o) {
    auto pr = prod->components(o);
    sizes[o] = x.size(which == 0 ? pr.first : pr.second);
  }
  return make_presheaf(
      prod, std::move(sizes),
      [x, p, which](ArrowId f, Elem e) {
        auto pr = p->arrow_components(f);
        return x.act(which == 0 ? pr.first : pr.second, e);
      },
      [x, p, which](ObjId o, Elem e) {
        auto pr = p->components(o);
        return x.describe(which == 0 ? pr.first : pr.second, e);
      });
}

namespace {

std::shared_ptr<const ThetaCategory> theta_base(const FinPresheaf& x, const char* op) {
  auto c = std::dynamic_pointer_cast<const ThetaCategory>(x.base_ptr());
  if (!c) throw UsageError(std::string(op) + " needs a presheaf on a Theta truncation");
  return c;
}

}  // namespace

FinPresheaf k_star(const FinPresheaf& x, const ThetaObj& c) {
  auto cat = theta_base(x, "k_star");
  if (cat->level() < 1 || height(c) > cat->level() - 1) throw UsageError("k_star: label is not in the label category");
  int levels = cat->bound() / (1 + dim(c));
  auto delta = theta_category(1, levels);
  std::vector<ObjId> omap(levels + 1);
  std::vector<int> sizes(levels + 1);
  for (int p = 0; p <= levels; ++p) {
    omap[p] = cat->object_id(ThetaObj(std::vector<ThetaObj>(p, c)));
    sizes[delta->object_id(ThetaObj::simplex(p))] = x.size(omap[p]);
  }
  ThetaMap idc = identity_map(c);
  const ThetaCategory* d = delta.get();
  return make_presheaf(
      delta, std::move(sizes),
      [x, cat, d, omap, idc](ArrowId f, Elem e) {
        int s = d->object(d->source(f)).n(), t = d->object(d->target(f)).n();
        MonotoneMap a(t, d->arrow(f).alpha);
        return x.act(cat->arrow_id(omap[s], omap[t], constant_label_map(a, idc)), e);
      },
      [x, omap, d](ObjId o, Elem e) { return x.describe(omap[d->object(o).n()], e); });
}

FinPresheaf underlying_sset(const FinPresheaf& x) { return k_star(x, ThetaObj::point()); }

FinPresheaf local_termination(const FinPresheaf& s, std::shared_ptr<const ThetaCategory> target) {
  auto delta = theta_base(s, "local_termination");
  if (delta->level() != 1) throw UsageError("local_termination needs a simplicial set");
  if (delta->bound() < target->bound()) throw TruncationError("local_termination: simplicial set truncated too low");
  std::vector<int> sizes(target->object_count());
  for (ObjId o = 0; o < target->object_count(); ++o)
    sizes[o] = s.size(delta->object_id(ThetaObj::simplex(target->object(o).n())));
  const ThetaCategory* t = target.get();
  return make_presheaf(
      target, std::move(sizes),
      [s, delta, t](ArrowId f, Elem e) {
        ObjId a = delta->object_id(ThetaObj::simplex(t->object(t->source(f)).n()));
        ObjId b = delta->object_id(ThetaObj::simplex(t->object(t->target(f)).n()));
        MonotoneMap m(t->object(t->target(f)).n(), t->arrow(f).alpha);
        return s.act(delta->arrow_id(a, b, from_monotone(m)), e);
      },
      [s, delta, t](ObjId o, Elem e) { return s.describe(delta->object_id(ThetaObj::simplex(t->object(o).n())), e); });
}

FinPresheaf cosk0_simplex(int n, std::shared_ptr<const ThetaCategory> delta) {
  if (delta->level() != 1) throw UsageError("cosk0_simplex lives over Delta");
  std::vector<int> sizes(delta->object_count());
  for (ObjId o = 0; o < delta->object_count(); ++o) {
    long v = 1;
    for (int i = 0; i <= delta->object(o).n(); ++i) v *= n + 1;
    if (v > (1L << 30)) throw UsageError("cosk0 too large");
    sizes[o] = static_cast<int>(v);
  }
  const ThetaCategory* d = delta.get();
  auto digits = [n](Elem e, int len) {
    std::vector<int> v(len);
    for (int i = len - 1; i >= 0; --i) {
      v[i] = e % (n + 1);
      e /= n + 1;
    }
    return v;
  };
  return make_presheaf(
      delta, std::move(sizes),
      [d, n, digits](ArrowId f, Elem e) {
        const ThetaMap a = d->arrow(f);
        auto v = digits(e, d->object(d->target(f)).n() + 1);
        Elem r = 0;
        for (int x : a.alpha) r = r * (n + 1) + v[x];
        return r;
      },
      [d, digits](ObjId o, Elem e) {
        auto v = digits(e, d->object(o).n() + 1);
        std::string s = "<";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
        return s + ">";
      });
}

FinPresheaf e_simplex(int n, std::shared_ptr<const ThetaCategory> target) {
  return local_termination(cosk0_simplex(n, theta_category(1, target->bound())), target);
}

// Every arrow is plus after minus, uniquely, so it suffices that each action
// factors the same way, that plus maps and minus maps compose among
// themselves, and that each minus after plus agrees with its factorization.
bool is_functorial(const FinPresheaf& x, std::string* why) {
  const Category& c = x.base();
  const ObjId n = c.object_count();
  auto agree = [&](ArrowId outer, ArrowId inner, ObjId t) {
    ArrowId both = c.compose(outer, inner);
    for (Elem e = 0; e < x.size(t); ++e)
      if (x.act(both, e) != x.act(inner, x.act(outer, e))) {
        if (why) *why = "action not functorial for " + c.arrow_name(outer) + " after " + c.arrow_name(inner);
        return false;
      }
    return true;
  };
  for (ObjId o = 0; o < n; ++o) {
    ArrowId id = c.identity(o);
    for (Elem e = 0; e < x.size(o); ++e)
      if (x.act(id, e) != e) {
        if (why) *why = "identity acts nontrivially at " + c.object_name(o);
        return false;
      }
  }
  for (ObjId s = 0; s < n; ++s)
    for (ObjId t = 0; t < n; ++t)
      for (ArrowId f : c.hom(s, t)) {
        auto [minus, plus] = c.factor(f);
        for (Elem e = 0; e < x.size(t); ++e)
          if (x.act(f, e) != x.act(minus, x.act(plus, e))) {
            if (why) *why = "action of " + c.arrow_name(f) + " is not the composite of its factors";
            return false;
          }
      }
  // plus_out[b]: non-identity plus maps out of b; minus_in[b] likewise into b.
  std::vector<std::vector<ArrowId>> plus_out(n), minus_in(n);
  for (ObjId o = 0; o < n; ++o) {
    for (ArrowId f : c.faces_into(o)) plus_out[c.source(f)].push_back(f);
    for (ArrowId f : c.degeneracies_from(o)) minus_in[c.target(f)].push_back(f);
  }
  for (ObjId b = 0; b < n; ++b) {
    for (ArrowId in : c.faces_into(b))
      for (ArrowId out : plus_out[b])
        if (!agree(out, in, c.target(out))) return false;
    for (ArrowId in : minus_in[b])
      for (ArrowId out : c.degeneracies_from(b))
        if (!agree(out, in, c.target(out))) return false;
    for (ArrowId in : c.faces_into(b))
      for (ArrowId out : c.degeneracies_from(b))
        if (!agree(out, in, c.target(out))) return false;
  }
  return true;
}

}  // namespace thetacell
