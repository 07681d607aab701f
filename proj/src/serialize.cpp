#include "thetacell/serialize.hpp"

#include <map>
#include <tuple>

#include "thetacell/error.hpp"

namespace thetacell {

namespace {

void require_type(const Json& j, const char* type) {
  if (!j.is_object() || j.value("schema", "") != kSchema || j.value("type", "") != type)
    throw UsageError(std::string("expected a ") + type + " document with schema " + kSchema);
}

// Generating arrows with target o: faces into o and degeneracies onto o.
std::vector<ArrowId> generating_arrows(const Category& c, ObjId o) {
  std::vector<ArrowId> out = c.faces_into(o);
  for (ObjId s = 0; s < c.object_count(); ++s)
    for (ArrowId f : c.degeneracies_from(s))
      if (c.target(f) == o) out.push_back(f);
  return out;
}

ObjId object_by_name(const std::map<std::string, ObjId>& names, const std::string& n) {
  auto it = names.find(n);
  if (it == names.end()) throw UsageError("unknown object '" + n + "'");
  return it->second;
}

std::map<std::string, ObjId> object_names(const Category& c) {
  std::map<std::string, ObjId> m;
  for (ObjId o = 0; o < c.object_count(); ++o) m[c.object_name(o)] = o;
  return m;
}

}  // namespace

Json category_to_json(const Category& c) {
  if (auto* t = dynamic_cast<const ThetaCategory*>(&c)) return {{"kind", "theta"}, {"level", t->level()}, {"bound", t->bound()}};
  if (auto* p = dynamic_cast<const ProductCategory*>(&c))
    return {{"kind", "product"},
            {"first", category_to_json(p->first())},
            {"second", category_to_json(p->second())},
            {"bound", p->bound()}};
  throw UsageError("category cannot be serialized");
}

std::shared_ptr<const Category> category_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "theta") return theta_category(j.at("level").get<int>(), j.at("bound").get<int>());
  if (kind == "product")
    return product_category(category_from_json(j.at("first")), category_from_json(j.at("second")), j.at("bound").get<int>());
  throw UsageError("unknown category kind '" + kind + "'");
}

Json presheaf_to_json(const FinPresheaf& x) {
  const Category& c = x.base();
  Json objects = Json::array();
  Json actions = Json::array();
  for (ObjId o = 0; o < c.object_count(); ++o) {
    objects.push_back({{"name", c.object_name(o)}, {"size", x.size(o)}});
    for (ArrowId f : generating_arrows(c, o)) {
      std::vector<Elem> table(x.size(o));
      for (Elem e = 0; e < x.size(o); ++e) table[e] = x.act(f, e);
      actions.push_back({{"source", c.object_name(c.source(f))},
                         {"target", c.object_name(o)},
                         {"arrow", c.arrow_name(f)},
                         {"table", table}});
    }
  }
  return {{"schema", kSchema}, {"type", "presheaf"}, {"category", category_to_json(c)}, {"objects", objects}, {"actions", actions}};
}

FinPresheaf presheaf_from_json(const Json& j) {
  require_type(j, "presheaf");
  auto cat = category_from_json(j.at("category"));
  auto names = object_names(*cat);
  std::vector<int> sizes(cat->object_count(), -1);
  for (const auto& o : j.at("objects")) sizes[object_by_name(names, o.at("name"))] = o.at("size").get<int>();
  for (int s : sizes)
    if (s < 0) throw UsageError("presheaf document does not list every object");
  std::map<std::tuple<ObjId, ObjId, std::string>, ArrowId> arrows;
  for (ObjId o = 0; o < cat->object_count(); ++o)
    for (ArrowId f : generating_arrows(*cat, o)) arrows[{cat->source(f), o, cat->arrow_name(f)}] = f;
  auto tables = std::make_shared<std::map<ArrowId, std::vector<Elem>>>();
  for (const auto& a : j.at("actions")) {
    auto key = std::make_tuple(object_by_name(names, a.at("source")), object_by_name(names, a.at("target")),
                               a.at("arrow").get<std::string>());
    auto it = arrows.find(key);
    if (it == arrows.end()) throw UsageError("unknown generating arrow '" + std::get<2>(key) + "'");
    auto table = a.at("table").get<std::vector<Elem>>();
    if (static_cast<int>(table.size()) != sizes[std::get<1>(key)]) throw UsageError("action table has the wrong length");
    for (Elem e : table)
      if (e < 0 || e >= sizes[std::get<0>(key)]) throw UsageError("action table value out of range");
    (*tables)[it->second] = std::move(table);
  }
  for (ObjId o = 0; o < cat->object_count(); ++o)
    for (ArrowId f : generating_arrows(*cat, o))
      if (!tables->count(f)) throw UsageError("missing action table for " + cat->arrow_name(f));
  const Category* c = cat.get();
  FinPresheaf x = make_presheaf(cat, sizes, [c, tables](ArrowId f, Elem x) {
    if (c->is_identity(f)) return x;
    auto [minus, plus] = c->factor(f);
    if (!c->is_identity(plus)) x = tables->at(plus)[x];
    if (!c->is_identity(minus)) x = tables->at(minus)[x];
    return x;
  });
  std::string why;
  if (!is_functorial(x, &why)) throw UsageError("action tables are not compatible with composition: " + why);
  return x;
}

Json subobject_to_json(const Subobject& s) {
  const Category& c = s.ambient().base();
  Json j = Json::object();
  for (ObjId o = 0; o < c.object_count(); ++o) {
    auto m = s.members(o);
    if (!m.empty()) j[c.object_name(o)] = m;
  }
  return j;
}

Subobject subobject_from_json(const Json& j, const FinPresheaf& ambient) {
  auto names = object_names(ambient.base());
  Subobject s(ambient);
  for (const auto& [name, members] : j.items()) {
    ObjId o = object_by_name(names, name);
    for (Elem e : members.get<std::vector<Elem>>()) {
      if (e < 0 || e >= ambient.size(o)) throw UsageError("subobject member out of range at " + name);
      s.insert(o, e);
    }
  }
  return s;
}

namespace {

Json components_to_json(const PresheafMap& f) {
  const Category& c = f.source.base();
  Json j = Json::object();
  for (ObjId o = 0; o < c.object_count(); ++o)
    if (!f.comp[o].empty()) j[c.object_name(o)] = f.comp[o];
  return j;
}

PresheafMap components_from_json(const Json& j, const FinPresheaf& source, const FinPresheaf& target) {
  require_same_base(source, target, "map");
  auto names = object_names(source.base());
  PresheafMap f{source, target, std::vector<std::vector<Elem>>(source.base().object_count())};
  for (const auto& [name, comp] : j.items()) f.comp[object_by_name(names, name)] = comp.get<std::vector<Elem>>();
  for (ObjId o = 0; o < source.base().object_count(); ++o) {
    if (static_cast<int>(f.comp[o].size()) != source.size(o)) throw UsageError("map component has the wrong length");
    for (Elem e : f.comp[o])
      if (e < 0 || e >= target.size(o)) throw UsageError("map component out of range");
  }
  return f;
}

}  // namespace

Json map_to_json(const PresheafMap& f) {
  return {{"schema", kSchema},
          {"type", "map"},
          {"source", presheaf_to_json(f.source)},
          {"target", presheaf_to_json(f.target)},
          {"components", components_to_json(f)}};
}

PresheafMap map_from_json(const Json& j) {
  require_type(j, "map");
  return components_from_json(j.at("components"), presheaf_from_json(j.at("source")), presheaf_from_json(j.at("target")));
}

Json lifting_problem_to_json(const LiftingProblem& p) {
  return {{"schema", kSchema},
          {"type", "lifting-problem"},
          {"A", presheaf_to_json(p.i.source)},
          {"B", presheaf_to_json(p.i.target)},
          {"X", presheaf_to_json(p.p.source)},
          {"Y", presheaf_to_json(p.p.target)},
          {"i", components_to_json(p.i)},
          {"p", components_to_json(p.p)},
          {"top", components_to_json(p.top)},
          {"bottom", components_to_json(p.bottom)}};
}

LiftingProblem lifting_problem_from_json(const Json& j) {
  require_type(j, "lifting-problem");
  FinPresheaf a = presheaf_from_json(j.at("A")), b = presheaf_from_json(j.at("B"));
  FinPresheaf x = presheaf_from_json(j.at("X")), y = presheaf_from_json(j.at("Y"));
  return {components_from_json(j.at("i"), a, b), components_from_json(j.at("p"), x, y),
          components_from_json(j.at("top"), a, x), components_from_json(j.at("bottom"), b, y)};
}

Json certificate_to_json(const CellCertificate& c) {
  auto cat = std::dynamic_pointer_cast<const ThetaCategory>(c.ambient.base_ptr());
  if (!cat) throw UsageError("certificates live on Theta truncations");
  Json steps = Json::array();
  for (const auto& s : c.steps)
    steps.push_back({{"generator", s.generator.to_string(cat->level())},
                     {"object", cat->object_name(cat->object_id(s.generator.target()))},
                     {"attach", s.attach}});
  return {{"schema", kSchema},       {"type", "certificate"},
          {"ambient", presheaf_to_json(c.ambient)},
          {"source", subobject_to_json(c.source)},
          {"target", subobject_to_json(c.target)},
          {"steps", steps}};
}

CellCertificate certificate_from_json(const Json& j) {
  require_type(j, "certificate");
  CellCertificate c;
  c.ambient = presheaf_from_json(j.at("ambient"));
  auto cat = std::dynamic_pointer_cast<const ThetaCategory>(c.ambient.base_ptr());
  if (!cat) throw UsageError("certificates live on Theta truncations");
  c.source = subobject_from_json(j.at("source"), c.ambient);
  c.target = subobject_from_json(j.at("target"), c.ambient);
  for (const auto& s : j.at("steps")) {
    GeneratorId g = GeneratorId::parse(s.at("generator").get<std::string>(), cat->level());
    Elem a = s.at("attach").get<Elem>();
    auto o = cat->find_object(g.target());
    if (!o || a < 0 || a >= c.ambient.size(*o)) throw UsageError("certificate step attaches outside the ambient");
    c.steps.push_back({g, a});
  }
  return c;
}

Json enriched_to_json(const EnrichedCat& d) {
  const int n = d.objects;
  const Category& b = *d.base;
  Json homs = Json::array();
  Json comp = Json::array();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) homs.push_back({{"from", x}, {"to", y}, {"hom", presheaf_to_json(d.hom(x, y))}});
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        Json tables = Json::object();
        for (ObjId o = 0; o < b.object_count(); ++o) {
          const int p = d.hom(x, y).size(o), q = d.hom(y, z).size(o);
          if (p * q == 0) continue;
          std::vector<Elem> t;
          t.reserve(static_cast<std::size_t>(p) * q);
          for (Elem f = 0; f < p; ++f)
            for (Elem g = 0; g < q; ++g) t.push_back(d.compose(x, y, z, o, f, g));
          tables[b.object_name(o)] = t;
        }
        if (!tables.empty()) comp.push_back({{"x", x}, {"y", y}, {"z", z}, {"tables", tables}});
      }
  return {{"schema", kSchema}, {"type", "enriched"}, {"base", category_to_json(b)}, {"objects", n},
          {"homs", homs},      {"identities", d.ids}, {"composition", comp}};
}

EnrichedCat enriched_from_json(const Json& j) {
  require_type(j, "enriched");
  EnrichedCat d;
  d.base = std::dynamic_pointer_cast<const ProductCategory>(category_from_json(j.at("base")));
  if (!d.base) throw UsageError("enriched categories need a product base");
  d.objects = j.at("objects").get<int>();
  const int n = d.objects;
  d.homs.resize(static_cast<std::size_t>(n) * n);
  for (const auto& h : j.at("homs")) {
    FinPresheaf p = presheaf_from_json(h.at("hom"));
    if (p.base_ptr() != d.base) throw UsageError("hom lives on a different base");
    d.homs.at(h.at("from").get<int>() * n + h.at("to").get<int>()) = p;
  }
  for (const auto& h : d.homs)
    if (!h.valid()) throw UsageError("enriched category is missing a hom");
  d.ids = j.at("identities").get<std::vector<Elem>>();
  auto names = object_names(*d.base);
  using Key = std::tuple<int, int, int, ObjId>;
  auto tables = std::make_shared<std::map<Key, std::vector<Elem>>>();
  for (const auto& c : j.at("composition"))
    for (const auto& [name, t] : c.at("tables").items())
      (*tables)[{c.at("x").get<int>(), c.at("y").get<int>(), c.at("z").get<int>(), object_by_name(names, name)}] =
          t.get<std::vector<Elem>>();
  auto homs = d.homs;
  d.compose = [tables, homs, n](int x, int y, int z, ObjId o, Elem f, Elem g) -> Elem {
    auto it = tables->find({x, y, z, o});
    if (it == tables->end()) throw IntegrityError("no composition table for this triple");
    return it->second.at(static_cast<std::size_t>(f) * homs[y * n + z].size(o) + g);
  };
  return d;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace thetacell
