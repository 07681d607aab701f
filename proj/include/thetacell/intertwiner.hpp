#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "thetacell/presheaf.hpp"

namespace thetacell {

// A simplicial subset of Delta^n generated by faces given as vertex masks.
struct SimplicialSubset {
  int n = 0;
  std::vector<std::uint32_t> facets;

  static SimplicialSubset full(int n);
  static SimplicialSubset empty(int n);
  static SimplicialSubset boundary(int n);
  static SimplicialSubset horn(int n, int k);
  static SimplicialSubset spine(int n);
  // Union of the faces d_i for i in the list.
  static SimplicialSubset faces(int n, const std::vector<int>& which);

  bool contains(const std::vector<int>& alpha) const;
  bool contains_mask(std::uint32_t mask) const;
  std::string to_string() const;
};

enum class LabelKind { Full, Boundary, Empty, Explicit };

// A subpresheaf of the representable on an object c of the label category,
// given by a membership test on maps e -> c.
struct Label {
  ThetaObj carrier;
  LabelKind kind = LabelKind::Full;
  std::set<std::pair<ThetaObj, ThetaMap>> explicit_maps;

  static Label full(ThetaObj c) { return {std::move(c), LabelKind::Full, {}}; }
  static Label boundary(ThetaObj c) { return {std::move(c), LabelKind::Boundary, {}}; }
  static Label empty(ThetaObj c) { return {std::move(c), LabelKind::Empty, {}}; }

  bool contains(const ThetaObj& e, const ThetaMap& f) const;
  std::string to_string(int level) const;
};

// The label as a subpresheaf of representable(carrier) on the label category;
// element k at e is the k-th member, in hom order.
Subobject label_subobject(const Label& l, std::shared_ptr<const ThetaCategory> c);
FinPresheaf label_presheaf(const Label& l, std::shared_ptr<const ThetaCategory> c);

// The region V_K(A_1,...,A_n) inside the representable [n](c_1,...,c_n).
struct LabeledRegion {
  SimplicialSubset shape;
  std::vector<Label> labels;

  ThetaObj carrier() const;
  bool contains(const ThetaMap& x, const ThetaObj& source) const;
};

// Membership in the region as a subobject of the representable on its carrier
// inside the truncation cat (whose level is one more than the labels').
Subobject v_construct(const LabeledRegion& r, std::shared_ptr<const ThetaCategory> cat);
// Direct evaluation of the region at one object, by enumerating
// beta in K_p and label elements instead of filtering a hom set.
std::vector<ThetaMap> v_elements(const LabeledRegion& r, const ThetaObj& at);

struct CornerLeg {
  Label domain;    // A_i
  Label codomain;  // B_i, with A_i inside it
};

// The union of V_{K or Delta^n}(mixed A_i / B_i) over all corners of the
// punctured cube, as a subobject of the representable on [n](carriers of B).
Subobject corner_domain(const SimplicialSubset& k, const std::vector<CornerLeg>& legs,
                        std::shared_ptr<const ThetaCategory> cat);

Subobject theta_boundary(const ThetaObj& t, std::shared_ptr<const ThetaCategory> cat);
Subobject theta_horn(const ThetaObj& t, int k, std::shared_ptr<const ThetaCategory> cat);
Subobject theta_spine(const ThetaObj& t, std::shared_ptr<const ThetaCategory> cat);

enum class LegKind { Boundary, Empty };

// Identifies the inclusion corner(f; l_1,...,l_n) -> [n](c_1,...,c_n) where
// f is the inner horn lambda^n_k (k = -1: the boundary of Delta^n) and l_i is
// the boundary or the empty inclusion into c_i.
struct GeneratorId {
  int n = 0;
  int k = 0;
  std::vector<ThetaObj> labels;
  std::vector<LegKind> legs;

  static GeneratorId inner_horn(const ThetaObj& t, int k);  // boundary legs
  static GeneratorId h_map(const ThetaObj& t, int k);       // empty legs
  static GeneratorId boundary(const ThetaObj& t);

  ThetaObj target() const;
  std::string to_string(int level) const;
  static GeneratorId parse(const std::string& text, int level);
  friend bool operator==(const GeneratorId&, const GeneratorId&) = default;
};

struct Generator {
  GeneratorId id;
  ObjId target_object = 0;
  Subobject domain;  // inside representable(target_object)
};

Generator make_generator(const GeneratorId& id, std::shared_ptr<const ThetaCategory> cat);

struct GeneratorSets {
  std::vector<Generator> boundaries;   // the set M
  std::vector<Generator> inner_horns;  // the set J
};

// Boundary inclusions and inner horn inclusions with target dim <= d.
GeneratorSets generators(std::shared_ptr<const ThetaCategory> cat, int d);

}  // namespace thetacell
