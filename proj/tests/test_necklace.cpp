#include <doctest.h>

#include "thetacell/intertwiner.hpp"
#include "thetacell/necklace.hpp"

using namespace thetacell;

namespace {

FinPresheaf simplex_rep(int n, int bound) {
  auto d = theta_category(1, bound);
  return representable(d, d->object_id(ThetaObj::simplex(n)));
}

}  // namespace

TEST_CASE("point necklace") {
  auto x = simplex_rep(2, 3);
  auto maps = necklace_maps(Necklace{}, x, 1, 1, true);
  REQUIRE(maps.size() == 1);
  CHECK(maps[0].point == 1);
  CHECK(necklace_maps(Necklace{}, x, 0, 1, true).empty());
}

TEST_CASE("bead-nondegenerate necklaces in a triangle") {
  auto x = simplex_rep(2, 3);
  long total = 0;
  for (const Necklace& t : {Necklace{{1}}, Necklace{{2}}, Necklace{{1, 1}}}) total += necklace_maps(t, x, 0, 2, true).size();
  CHECK(total == 3);
  CHECK(all_necklace_maps(x, 0, 2, 4, true).size() == 3);
}

TEST_CASE("no edge, no necklace") {
  auto d = theta_category(1, 2);
  auto two = theta_boundary(ThetaObj::simplex(1), d).as_presheaf();
  CHECK(necklace_maps(Necklace{{1}}, two, 0, 1, false).empty());
}

// Each inner vertex of Delta^n is skipped, kept, or a joint.
TEST_CASE("necklaces in Delta^n number 3^(n-1)") {
  for (int n = 1; n <= 4; ++n) {
    auto x = simplex_rep(n, 4);
    long expect = 1;
    for (int k = 1; k < n; ++k) expect *= 3;
    CHECK(static_cast<long>(all_necklace_maps(x, 0, n, n, true).size()) == expect);
  }
}

TEST_CASE("simplex vertices and faces") {
  auto x = simplex_rep(3, 3);
  // Element k of Delta^3 at [0] is the vertex k.
  for (int q = 0; q <= 3; ++q) CHECK(simplex_vertex(x, 0, q, 0) == q);
  Elem top = 0;
  for (Elem e = 0; e < x.size(3); ++e)
    if (simplex_vertex(x, 3, e, 0) == 0 && simplex_vertex(x, 3, e, 3) == 3 && simplex_vertex(x, 3, e, 1) == 1 &&
        simplex_vertex(x, 3, e, 2) == 2)
      top = e;
  Elem f = simplex_face(x, 3, top, {0, 2, 3});
  CHECK(simplex_vertex(x, 2, f, 0) == 0);
  CHECK(simplex_vertex(x, 2, f, 1) == 2);
  CHECK(simplex_vertex(x, 2, f, 2) == 3);
}

TEST_CASE("necklace mapping spaces") {
  auto e = simplex_rep(1, 3);
  auto s1 = nec_mapping_space(e, 0, 1, 3, 3);
  CHECK(s1.objects.size() == 1);
  CHECK(s1.components == 1);
  CHECK(s1.final);
  for (ObjId o = 0; o < s1.nerve.base().object_count(); ++o) CHECK(s1.nerve.size(o) == 1);

  auto tri = simplex_rep(2, 3);
  auto s2 = nec_mapping_space(tri, 0, 2, 3, 3);
  CHECK(s2.objects.size() == 3);
  CHECK(s2.components == 1);
  CHECK(s2.morphisms == 5);
  CHECK(s2.final);
  CHECK(is_functorial(s2.nerve));

  auto s3 = nec_mapping_space(tri, 2, 0, 3, 3);
  CHECK(s3.objects.empty());
  CHECK(s3.nerve.total_size() == 0);
}

TEST_CASE("a small bead budget marks the space as not final") {
  auto x = simplex_rep(3, 3);
  auto s = nec_mapping_space(x, 0, 3, 1, 2);
  CHECK_FALSE(s.final);
}

// Levels of (Delta^1)^2, degenerate simplices included.
TEST_CASE("flagged necklaces of a simplex form a square") {
  auto x = simplex_rep(3, 3);
  FlaggedNecklaces fl(x, 0, 3, 3);
  CHECK(fl.simplices(0).size() == 4);
  CHECK(fl.simplices(1).size() == 9);
  CHECK(fl.simplices(2).size() == 16);
  for (int p = 1; p <= 2; ++p)
    for (const auto& s : fl.simplices(p))
      for (int i = 0; i <= p; ++i) {
        std::vector<int> face;
        for (int k = 0; k <= p; ++k)
          if (k != i) face.push_back(k);
        auto d = fl.act(face, p, s);
        int hits = 0;
        for (const auto& t : fl.simplices(p - 1)) hits += t.necklace == d.necklace && t.entry == d.entry;
        CHECK(hits == 1);
      }
}
