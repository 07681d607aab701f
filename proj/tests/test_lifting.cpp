#include <doctest.h>

#include <algorithm>

#include "thetacell/certificates.hpp"
#include "thetacell/error.hpp"
#include "thetacell/realization.hpp"
#include "lifting_oracle.hpp"

using namespace thetacell;

using namespace oracle;

namespace {

ThetaObj obj(const char* s, int level = 2) { return parse_object(s, level); }

}  // namespace

TEST_CASE("lifting against an identity returns the bottom map") {
  auto d = theta_category(1, 2);
  auto x = representable(d, d->object_id(ThetaObj::simplex(1)));
  PresheafMap id = identity_morphism(x);
  for (const auto& top : all_maps(x, x, 50)) {
    LiftingProblem prob{id, id, top, top};
    auto r = find_lift(prob);
    REQUIRE(r.verdict == Verdict::Found);
    CHECK(*r.lift == top);
  }
}

TEST_CASE("inner horns of the nerve of [2] lift uniquely") {
  auto d = theta_category(1, 3);
  auto x = representable(d, d->object_id(ThetaObj::simplex(2)));
  Subobject horn = theta_horn(ThetaObj::simplex(2), 1, d);
  PresheafMap i = horn.inclusion();
  PresheafMap p = to_point(x);
  auto tops = all_maps(i.source, x, 1000);
  // One horn per chain a <= b <= c in [2].
  CHECK(tops.size() == 10);
  for (const auto& top : tops) {
    LiftingProblem prob{i, p, top, to_point(i.target)};
    auto r = find_lift(prob);
    CHECK(r.verdict == Verdict::Found);
    CHECK(count_lifts(prob) == 1);
  }
}

TEST_CASE("a boundary of an edge does not lift into two discrete points") {
  auto d = theta_category(1, 2);
  Subobject bd = theta_boundary(ThetaObj::simplex(1), d);
  PresheafMap i = bd.inclusion();
  FinPresheaf x = discrete_two(d);
  auto tops = all_maps(i.source, x, 100);
  REQUIRE(tops.size() == 4);
  int split = 0;
  for (const auto& top : tops) {
    LiftingProblem prob{i, to_point(x), top, to_point(i.target)};
    auto r = find_lift(prob);
    if (top.comp[0][0] != top.comp[0][1]) {
      ++split;
      CHECK(r.verdict == Verdict::None);
    } else {
      CHECK(r.verdict == Verdict::Found);
    }
    CHECK(naive_lift_count(prob) == (r.verdict == Verdict::Found ? 1 : 0));
  }
  CHECK(split == 2);
}

TEST_CASE("find_lift agrees with the naive solver on a random corpus") {
  auto corpus = lifting_corpus(20261016u, 120);
  REQUIRE(corpus.size() == 120);
  int found = 0;
  for (const auto& [label, prob] : corpus) {
    CAPTURE(label);
    long naive = naive_lift_count(prob);
    auto r = find_lift(prob);
    REQUIRE(r.verdict != Verdict::BudgetExhausted);
    CHECK((r.verdict == Verdict::Found) == (naive > 0));
    CHECK(count_lifts(prob) == naive);
    if (r.lift) {
      ++found;
      CHECK(is_natural(*r.lift));
      CHECK(compose(*r.lift, prob.i) == prob.top);
      CHECK(compose(prob.p, *r.lift) == prob.bottom);
    }
  }
  // Both verdicts occur.
  CHECK(found > 0);
  CHECK(found < 120);
}

TEST_CASE("an empty certificate verifies the identity") {
  auto cat = theta_category(2, 3);
  Subobject s = theta_boundary(obj("[1]([1])"), cat);
  CellCertificate cert{s.ambient(), s, s, {}};
  CHECK(verify_certificate(cert).ok);
  cert.target = Subobject(s.ambient(), true);
  auto r = verify_certificate(cert);
  CHECK_FALSE(r.ok);
}

TEST_CASE("corrupted certificates are rejected") {
  auto cat = theta_category(2, 4);
  for (const char* t : {"[2]([0],[0])", "[2]([1],[0])", "[3]([0],[0],[0])"}) {
    CAPTURE(t);
    auto search = spine_anodyne_certificate(obj(t), cat);
    REQUIRE(search.certificate);
    const CellCertificate& good = *search.certificate;
    REQUIRE(verify_certificate(good).ok);
    REQUIRE(!good.steps.empty());

    CellCertificate dropped = good;
    dropped.steps.pop_back();
    CHECK_FALSE(verify_certificate(dropped).ok);

    CellCertificate doubled = good;
    doubled.steps.push_back(good.steps.back());
    auto r = verify_certificate(doubled);
    CHECK_FALSE(r.ok);
    CHECK(r.failed_step == static_cast<int>(good.steps.size()));

    CellCertificate moved = good;
    moved.steps.back().attach += 1;
    CHECK_FALSE(verify_certificate(moved).ok);

    CellCertificate swapped = good;
    swapped.steps.back().generator = GeneratorId::boundary(swapped.steps.back().generator.target());
    CHECK_FALSE(verify_certificate(swapped).ok);

    if (good.steps.size() > 1) {
      CellCertificate reversed = good;
      std::reverse(reversed.steps.begin(), reversed.steps.end());
      CHECK_FALSE(verify_certificate(reversed).ok);
    }
  }
}

TEST_CASE("fibrancy of small presheaves") {
  for (int level : {1, 2}) {
    auto cat = theta_category(level, 3);
    for (int d = 0; d <= 2; ++d) CHECK(is_formal_quasicategory(terminal_presheaf(cat), d).holds == Outcome::Yes);
    CHECK_THROWS_AS(is_formal_quasicategory(terminal_presheaf(cat), 3), TruncationError);
  }
  auto cat = theta_category(2, 3);
  // Representables are nerves of strict categories with no invertible cells,
  // so they fill every horizontal inner horn.
  for (const char* t : {"[2]([0],[0])", "[1]([1])", "[2]([1],[0])"}) {
    auto x = representable(cat, cat->parse_object_id(t));
    CHECK(is_formal_quasicategory(x, 2).holds == Outcome::Yes);
    CHECK(naive_fibrant(x, 2));
  }
  auto horn = theta_horn(obj("[2]([0],[0])"), 1, cat).as_presheaf();
  auto rep = is_formal_quasicategory(horn, 2);
  CHECK(rep.holds == Outcome::No);
  CHECK(!rep.counterexample.empty());
  CHECK_FALSE(naive_fibrant(horn, 2));
  auto bd = theta_boundary(obj("[2]([1],[0])"), cat).as_presheaf();
  CHECK((is_formal_quasicategory(bd, 2).holds == Outcome::Yes) == naive_fibrant(bd, 2));

  // A one-object category whose single hom is a point.
  for (int level : {1, 2}) {
    auto base = enrichment_base(level, 3);
    auto d = std::make_shared<EnrichedCat>();
    d->base = base;
    d->objects = 1;
    d->homs = {terminal_presheaf(base)};
    d->compose = [](int, int, int, ObjId, Elem, Elem) { return 0; };
    d->ids = {0};
    REQUIRE(check_enriched_laws(*d).ok);
    auto nerve = coherent_nerve_presheaf(d, theta_category(level, 3));
    for (int dd = 0; dd <= 2; ++dd) CHECK(is_formal_quasicategory(nerve, dd).holds == Outcome::Yes);
  }
}

TEST_CASE("nerves of posets are fibrant and the horn is not") {
  auto d = theta_category(1, 3);
  CHECK(is_formal_quasicategory(representable(d, d->object_id(ThetaObj::simplex(2))), 2).holds == Outcome::Yes);
  CHECK(is_formal_quasicategory(e_simplex(1, d), 2).holds == Outcome::Yes);
  auto horn = theta_horn(ThetaObj::simplex(2), 1, d).as_presheaf();
  CHECK(is_formal_quasicategory(horn, 2).holds == Outcome::No);
  CHECK_FALSE(naive_fibrant(horn, 2));
  CHECK(naive_fibrant(e_simplex(1, d), 2));
}

TEST_CASE("isofibration checks") {
  auto d = theta_category(1, 3);
  auto e1 = e_simplex(1, d);
  auto r = isofibration_check(identity_morphism(e1), 2);
  CHECK(r.holds == Outcome::Yes);
  CHECK(isofibration_check(to_point(e1), 2).holds == Outcome::Yes);

  // An arrow 0 -> 1 with no inverse sits inside E^1 over the identity.
  auto edge = representable(d, d->object_id(ThetaObj::simplex(1)));
  auto incs = all_maps(edge, e1, 100);
  const PresheafMap* inc = nullptr;
  for (const auto& m : incs)
    if (is_mono(m)) inc = &m;
  REQUIRE(inc != nullptr);
  auto bad = isofibration_check(*inc, 2);
  CHECK(bad.holds == Outcome::No);
  CHECK(!bad.counterexample.empty());

  // Preconditions are reported rather than assumed.
  auto horn = theta_horn(ThetaObj::simplex(2), 1, d).as_presheaf();
  CHECK(isofibration_check(to_point(horn), 2).holds == Outcome::Unknown);
}
