#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "thetacell/intertwiner.hpp"
#include "thetacell/presheaf.hpp"

namespace thetacell {

// C x Delta for C = Theta_{level-1}, truncated at bound on dim c + p.
std::shared_ptr<const ProductCategory> enrichment_base(int level, int bound);

// A category enriched in presheaves on C x Delta. Composition is evaluated
// elementwise; composition_map tabulates it as a map out of the product.
struct EnrichedCat {
  std::shared_ptr<const ProductCategory> base;
  int objects = 0;
  std::vector<FinPresheaf> homs;  // homs[x * objects + y]
  // (x, y, z, o, f in hom(x,y)(o), g in hom(y,z)(o)) -> element of hom(x,z)(o)
  std::function<Elem(int, int, int, ObjId, Elem, Elem)> compose;
  std::vector<Elem> ids;  // identity of x, at the terminal object of base

  const FinPresheaf& hom(int x, int y) const { return homs[x * objects + y]; }
  Elem identity_at(int x, ObjId o) const;
  PresheafMap composition_map(int x, int y, int z) const;
};

struct LawReport {
  bool ok = true;
  long checked = 0;
  std::string failure;
};

// Associativity and unit laws, elementwise at every stored object.
LawReport check_enriched_laws(const EnrichedCat& d);

struct EnrichedFunctor {
  std::vector<int> object_map;
  std::vector<PresheafMap> homs;  // homs[x * source objects + y]

  const PresheafMap& hom(int x, int y) const { return homs[x * static_cast<int>(object_map.size()) + y]; }
};

LawReport check_functor_laws(const EnrichedFunctor& f, const EnrichedCat& source, const EnrichedCat& target);
// g after f.
EnrichedFunctor compose(const EnrichedFunctor& g, const EnrichedFunctor& f);
bool operator==(const EnrichedFunctor& a, const EnrichedFunctor& b);

// Objects 0..n; hom(i,j) = A_{i+1} x Delta^1 x ... x Delta^1 x A_j for i < j,
// a point for i = j and empty otherwise; composition inserts the vertex 1
// of the Delta^1 factor at the middle object.
EnrichedCat realize_labeled_simplex(const std::vector<Label>& labels, std::shared_ptr<const ProductCategory> base);
// The same with full labels; cached per (object, base).
std::shared_ptr<const EnrichedCat> realize_object(const ThetaObj& t, std::shared_ptr<const ProductCategory> base);

// How a collapsed edge merges its two Delta^1 coordinates. Max is the rule
// compatible with composition at the vertex 1; Min is kept for tests.
enum class MergeRule { Max, Min };

// Functor realize(s) -> realize(t) for a map f : s -> t of Theta[C].
EnrichedFunctor realize_map(const ThetaMap& f, const ThetaObj& s, const ThetaObj& t,
                            std::shared_ptr<const ProductCategory> base, MergeRule rule = MergeRule::Max);

// Enriched functors realize(t) -> d, in order of object assignment and then
// extension order. Throws TruncationError if the homs of d are cut below the
// dimension of the generators of realize(t).
std::vector<EnrichedFunctor> coherent_nerve(const EnrichedCat& d, const ThetaObj& t, long budget = 10'000'000);
// The functors over every object of cat assembled into a presheaf; the action
// is precomposition with realize_map.
FinPresheaf coherent_nerve_presheaf(std::shared_ptr<const EnrichedCat> d, std::shared_ptr<const ThetaCategory> cat);

// Two objects, hom(0,1) = x (a presheaf on C pulled back to C x Delta),
// hom(1,0) empty.
EnrichedCat free_arrow(const FinPresheaf& x, std::shared_ptr<const ProductCategory> base);

struct PointwiseReport {
  bool ok = true;
  std::vector<long> q_counts;         // |Q(i,j)_c| by simplicial level
  std::vector<long> necklace_counts;  // flagged necklaces of the nerve by level
  long arrows_checked = 0;
  std::string failure;
};

// Compares Q([n](A))(i,j) at c with the rigidification of the nerve of the
// free category on the graph with A_k(c) arrows k-1 -> k, described by
// flagged totally nondegenerate necklaces. Checks a bijection at levels
// <= max_level, naturality in the simplicial operators and in the arrows of C
// into c, and that k_star(V[n](A), c) is that nerve.
// The labels and c live in Theta_{level-1}.
PointwiseReport pointwise_compare(const std::vector<Label>& labels, int level, const ThetaObj& c, int i, int j,
                                  int max_level = 3);

}  // namespace thetacell
