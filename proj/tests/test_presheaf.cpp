#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "thetacell/error.hpp"
#include "thetacell/intertwiner.hpp"
#include "thetacell/presheaf.hpp"

using namespace thetacell;

namespace {

std::map<int, int> cells_by_dim(const FinPresheaf& x) {
  std::map<int, int> out;
  for (const Cell& c : nondegenerate_cells(x)) ++out[x.base().dim(c.object)];
  return out;
}

// The map rep(s) -> rep(t) given by postcomposition with f.
PresheafMap post(const FinPresheaf& rs, const FinPresheaf& rt, ObjId s, ArrowId f) {
  const Category& c = rs.base();
  return map_from_function(rs, rt, [&](ObjId o, Elem e) { return c.hom_index(c.compose(f, c.hom(o, s)[e])); });
}

}  // namespace

TEST_CASE("representable examples") {
  auto d1 = theta_category(1, 2);
  auto pt = representable(d1, d1->object_id(ThetaObj::point()));
  for (ObjId o = 0; o < d1->object_count(); ++o) CHECK(pt.size(o) == 1);

  auto t2 = theta_category(2, 2);
  auto r = representable(t2, t2->parse_object_id("[1]([1])"));
  CHECK(r.size(t2->parse_object_id("[1]([0])")) == 4);
  CHECK(r.size(t2->parse_object_id("[1]([1])")) == 5);

  auto d3 = theta_category(1, 3);
  auto r2 = representable(d3, d3->object_id(ThetaObj::simplex(2)));
  CHECK(r2.size(d3->object_id(ThetaObj::simplex(1))) == 6);
  CHECK(is_functorial(r));
  CHECK(is_functorial(r2));
}

TEST_CASE("pushout along an identity leaves the other corner alone") {
  auto d = theta_category(1, 2);
  auto r = representable(d, d->object_id(ThetaObj::simplex(2)));
  auto p = pushout(identity_morphism(r), identity_morphism(r));
  for (ObjId o = 0; o < d->object_count(); ++o) CHECK(p.object.size(o) == r.size(o));
  CHECK(is_natural(p.from_b));
}

TEST_CASE("collapsing the boundary of an edge gives a loop") {
  auto d = theta_category(1, 2);
  Subobject b = theta_boundary(ThetaObj::simplex(1), d);
  auto p = collapse(b);
  auto cells = cells_by_dim(p.object);
  CHECK(cells[0] == 1);
  CHECK(cells[1] == 1);
  CHECK(cells.count(2) == 0);
  CHECK(is_functorial(p.object));
  CHECK(is_natural(p.from_b));
  CHECK(is_natural(p.from_c));
}

TEST_CASE("two edges glued end to start form the spine of a triangle") {
  auto d = theta_category(1, 2);
  ObjId v = d->object_id(ThetaObj::point()), e = d->object_id(ThetaObj::simplex(1));
  auto rv = representable(d, v), re = representable(d, e);
  const auto& verts = d->hom(v, e);
  auto i = post(rv, re, v, verts[0]);
  auto g = post(rv, re, v, verts[1]);
  auto p = pushout(i, g);
  auto cells = cells_by_dim(p.object);
  CHECK(cells[0] == 3);
  CHECK(cells[1] == 2);
  CHECK(cells.count(2) == 0);
  // The square commutes.
  CHECK(compose(p.from_b, i) == compose(p.from_c, g));
}

TEST_CASE("pushout rejects a non-mono first leg") {
  auto d = theta_category(1, 2);
  ObjId e = d->object_id(ThetaObj::simplex(1));
  auto re = representable(d, e);
  auto pt = terminal_presheaf(d);
  auto bang = map_from_function(re, pt, [](ObjId, Elem) { return 0; });
  CHECK_THROWS_AS(pushout(bang, identity_morphism(re)), UsageError);
}

TEST_CASE("skeleton examples") {
  auto t2 = theta_category(2, 2);
  ObjId t = t2->parse_object_id("[1]([1])");
  auto r = representable(t2, t);
  CHECK(skeleton(r, 2).is_full());
  Subobject sk1 = skeleton(r, 1);
  auto sub = sk1.as_presheaf();
  auto cells = cells_by_dim(sub);
  CHECK(cells[0] == 2);
  CHECK(cells[1] == 2);
  for (const Cell& c : nondegenerate_cells(sub)) {
    if (t2->dim(c.object) == 1) CHECK(t2->object_name(c.object) == "[1]([0])");
  }
  Subobject sk0 = skeleton(r, 0);
  for (ObjId o = 0; o < t2->object_count(); ++o) CHECK(sk0.count(o) == 2);
}

TEST_CASE("skeleton is the closure of the low-dimensional cells") {
  for (int level = 1; level <= 2; ++level) {
    auto cat = theta_category(level, 3);
    for (ObjId t = 0; t < cat->object_count(); ++t) {
      auto r = representable(cat, t);
      for (int n = 0; n <= cat->dim(t); ++n) {
        Subobject seed(r);
        for (const Cell& c : nondegenerate_cells(r))
          if (cat->dim(c.object) <= n) seed.insert(c.object, c.element);
        Subobject sk = skeleton(r, n);
        CHECK(sk.is_closed());
        CHECK(sk == seed.closure());
      }
    }
  }
}

TEST_CASE("nondegenerate cell counts") {
  auto d = theta_category(1, 3);
  auto r1 = representable(d, d->object_id(ThetaObj::simplex(1)));
  CHECK(nondegenerate_cells(r1).size() == 3);
  auto sq = product(r1, r1);
  auto cells = cells_by_dim(sq);
  CHECK(cells[0] == 4);
  CHECK(cells[1] == 5);
  CHECK(cells[2] == 2);
  CHECK(nondegenerate_cells(sq).size() == 11);
  CHECK(is_functorial(sq));

  auto t2 = theta_category(2, 3);
  auto h = local_termination(terminal_presheaf(theta_category(1, 3)), t2);
  auto hc = cells_by_dim(h);
  CHECK(hc.size() == 1);
  CHECK(hc[0] == 1);
}

// Nondegenerate simplices of Delta^n x Delta^m are the vertex sets of
// faces of lattice paths.
TEST_CASE("product cell census matches lattice paths") {
  auto d = theta_category(1, 6);
  for (int n = 0; n <= 3; ++n)
    for (int m = 0; m <= 3; ++m) {
      std::set<std::vector<std::pair<int, int>>> faces;
      for (const auto& s : shuffles(n, m)) {
        std::vector<std::pair<int, int>> path{{0, 0}};
        for (bool b : s.steps) {
          auto [x, y] = path.back();
          path.push_back(b ? std::pair{x, y + 1} : std::pair{x + 1, y});
        }
        for (std::uint32_t mask = 1; mask < (1u << path.size()); ++mask) {
          std::vector<std::pair<int, int>> f;
          for (std::size_t k = 0; k < path.size(); ++k)
            if (mask >> k & 1) f.push_back(path[k]);
          faces.insert(f);
        }
      }
      std::map<int, int> expect;
      for (const auto& f : faces) ++expect[static_cast<int>(f.size()) - 1];
      auto p = product(representable(d, d->object_id(ThetaObj::simplex(n))),
                       representable(d, d->object_id(ThetaObj::simplex(m))));
      CHECK(cells_by_dim(p) == expect);
    }
}

TEST_CASE("Eilenberg-Zilber violations are reported") {
  auto d = theta_category(1, 1);
  ObjId v = d->object_id(ThetaObj::point()), e = d->object_id(ThetaObj::simplex(1));
  std::unordered_map<ArrowId, std::vector<Elem>> tables;
  for (ArrowId f : d->hom(v, e)) tables[f] = {0};
  tables[d->hom(e, v)[0]] = {0, 0};
  // Two vertices degenerate to the same edge.
  auto bad = table_presheaf(d, {2, 1}, tables);
  CHECK_THROWS_AS(eilenberg_zilber(bad), IntegrityError);
}

TEST_CASE("underlying simplicial set and local termination") {
  auto t2 = theta_category(2, 2);
  auto d = theta_category(1, 2);
  auto r = representable(t2, t2->parse_object_id("[2]([0],[0])"));
  auto n = underlying_sset(r);
  auto r2 = representable(d, d->object_id(ThetaObj::simplex(2)));
  REQUIRE(n.base().object_count() == 3);
  for (ObjId p = 0; p < 3; ++p) CHECK(n.size(p) == r2.size(d->object_id(ThetaObj::simplex(p))));

  auto e = empty_presheaf(t2);
  auto ne = underlying_sset(e);
  CHECK(ne.total_size() == 0);

  auto h = local_termination(terminal_presheaf(d), t2);
  for (ObjId o = 0; o < t2->object_count(); ++o) CHECK(h.size(o) == 1);
}

TEST_CASE("N after H is the identity") {
  auto d = theta_category(1, 3);
  auto t2 = theta_category(2, 3);
  std::vector<FinPresheaf> samples = {representable(d, d->object_id(ThetaObj::simplex(2))),
                                      theta_boundary(ThetaObj::simplex(3), d).as_presheaf(),
                                      cosk0_simplex(1, d)};
  for (const auto& s : samples) {
    auto back = underlying_sset(local_termination(s, t2));
    REQUIRE(back.base().object_count() == d->object_count());
    for (ObjId o = 0; o < d->object_count(); ++o) {
      REQUIRE(back.size(o) == s.size(o));
      for (ObjId q = 0; q < d->object_count(); ++q)
        for (ArrowId f : d->hom(q, o))
          for (Elem x = 0; x < s.size(o); ++x) CHECK(back.act(back.base().hom(q, o)[d->hom_index(f)], x) == s.act(f, x));
    }
  }
}

TEST_CASE("local termination counts") {
  auto d = theta_category(1, 3);
  auto t2 = theta_category(2, 3);
  auto h = local_termination(theta_boundary(ThetaObj::simplex(1), d).as_presheaf(), t2);
  CHECK(h.size(t2->parse_object_id("[1]([1])")) == 2);
  for (int n = 0; n <= 2; ++n) {
    auto e = e_simplex(n, t2);
    CHECK(is_functorial(e));
    for (ObjId o = 0; o < t2->object_count(); ++o) {
      long expect = 1;
      for (int k = 0; k <= t2->object(o).n(); ++k) expect *= n + 1;
      CHECK(e.size(o) == expect);
    }
  }
}

TEST_CASE("subobject algebra") {
  auto d = theta_category(1, 3);
  Subobject h0 = theta_horn(ThetaObj::simplex(3), 1, d);
  const FinPresheaf& r = h0.ambient();
  Subobject other = theta_horn(ThetaObj::simplex(3), 2, d);
  Subobject h1 = Subobject::from_predicate(r, [&](ObjId o, Elem e) { return other.contains(o, e); });
  Subobject u = h0.unite(h1), i = h0.intersect(h1);
  CHECK(u.is_closed());
  CHECK(i.is_closed());
  CHECK(i.subset_of(h0));
  CHECK(h0.subset_of(u));
  CHECK(u.count() + i.count() == h0.count() + h1.count());
  CHECK(h0.complement().intersect(h0).count() == 0);
  CHECK(image(h0.inclusion()) == h0);
  CHECK(preimage(identity_morphism(r), h0) == h0);
}

namespace {

// Every composable pair, elementwise.
bool all_pairs_functorial(const FinPresheaf& x) {
  const Category& c = x.base();
  for (ObjId o = 0; o < c.object_count(); ++o)
    for (Elem e = 0; e < x.size(o); ++e)
      if (x.act(c.identity(o), e) != e) return false;
  for (ObjId a = 0; a < c.object_count(); ++a)
    for (ObjId b = 0; b < c.object_count(); ++b)
      for (ArrowId g : c.hom(a, b))
        for (ObjId t = 0; t < c.object_count(); ++t)
          for (ArrowId f : c.hom(b, t))
            for (Elem e = 0; e < x.size(t); ++e)
              if (x.act(c.compose(f, g), e) != x.act(g, x.act(f, e))) return false;
  return true;
}

}  // namespace

TEST_CASE("functoriality check agrees with all composable pairs") {
  std::mt19937 rng(11);
  int broken = 0;
  for (int level : {1, 2}) {
    auto cat = theta_category(level, 2);
    std::vector<FinPresheaf> xs = {representable(cat, cat->object_count() - 1), e_simplex(1, cat),
                                   skeleton(representable(cat, cat->object_count() - 1), 1).as_presheaf()};
    for (const auto& x : xs) {
      CHECK(is_functorial(x));
      std::unordered_map<ArrowId, std::vector<Elem>> tables;
      std::vector<int> sizes;
      for (ObjId o = 0; o < cat->object_count(); ++o) sizes.push_back(x.size(o));
      std::vector<ArrowId> arrows;
      for (ObjId s = 0; s < cat->object_count(); ++s)
        for (ObjId t = 0; t < cat->object_count(); ++t)
          for (ArrowId f : cat->hom(s, t)) {
            if (cat->is_identity(f) || x.size(t) == 0 || x.size(s) < 2) continue;
            arrows.push_back(f);
            auto& tab = tables[f];
            for (Elem e = 0; e < x.size(t); ++e) tab.push_back(x.act(f, e));
          }
      REQUIRE(!arrows.empty());
      for (int trial = 0; trial < 40; ++trial) {
        auto bent = tables;
        ArrowId f = arrows[rng() % arrows.size()];
        auto& tab = bent[f];
        Elem& v = tab[rng() % tab.size()];
        v = (v + 1 + static_cast<Elem>(rng() % (x.size(cat->source(f)) - 1))) % x.size(cat->source(f));
        // Arrows not listed keep the action of x.
        for (ObjId s = 0; s < cat->object_count(); ++s)
          for (ObjId t = 0; t < cat->object_count(); ++t)
            for (ArrowId g : cat->hom(s, t))
              if (!cat->is_identity(g) && !bent.count(g)) {
                auto& tg = bent[g];
                for (Elem e = 0; e < x.size(t); ++e) tg.push_back(x.act(g, e));
              }
        FinPresheaf y = table_presheaf(cat, sizes, bent);
        bool ok = is_functorial(y);
        CHECK(ok == all_pairs_functorial(y));
        broken += !ok;
      }
    }
  }
  // Most single-entry corruptions break some composite.
  CHECK(broken > 100);
}
