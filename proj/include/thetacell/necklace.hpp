#pragma once

#include <string>
#include <vector>

#include "thetacell/presheaf.hpp"

namespace thetacell {

// Delta^{m_1} v ... v Delta^{m_k}. The empty bead list is the point necklace.
struct Necklace {
  std::vector<int> beads;

  int vertex_count() const;
  int dimension() const;
  std::string to_string() const;
};

// A bipointed map T -> X: one simplex of X per bead, matching at the joints.
struct NecklaceMap {
  Necklace shape;
  std::vector<Elem> beads;  // element of X at [m_b]
  Elem point = -1;          // the vertex, for the point necklace
};

// Vertex q of an m-simplex of a simplicial set.
Elem simplex_vertex(const FinPresheaf& x, int m, Elem s, int q);
// Face of an m-simplex on the given increasing vertex list.
Elem simplex_face(const FinPresheaf& x, int m, Elem s, const std::vector<int>& vertices);

// Maps T -> X sending the first vertex to `from` and the last to `to`.
// With nondegenerate_beads only maps with every bead nondegenerate are kept.
std::vector<NecklaceMap> necklace_maps(const Necklace& t, const FinPresheaf& x, Elem from, Elem to,
                                       bool nondegenerate_beads);
// Over all shapes with at most max_beads beads, each of dimension >= 1 and
// within the truncation of x.
std::vector<NecklaceMap> all_necklace_maps(const FinPresheaf& x, Elem from, Elem to, int max_beads,
                                           bool nondegenerate_beads);

// A simplex of the rigidification: a totally nondegenerate necklace map and
// a flag J = T^0 c T^1 c ... c T^p = V of vertex sets, stored as the entry
// level in 1..p of every non-joint vertex.
struct FlaggedNecklace {
  int necklace = 0;  // index into the list of necklace maps
  std::vector<int> entry;
};

// The p-simplices of C(X)(from,to) for a simplicial set X in the flagged
// necklace description, with the simplicial operators. Requires the faces of
// nondegenerate simplices of X to be nondegenerate (true for nerves of free
// categories), otherwise throws IntegrityError on use.
class FlaggedNecklaces {
 public:
  FlaggedNecklaces(FinPresheaf x, Elem from, Elem to, int max_beads);

  const std::vector<NecklaceMap>& necklaces() const { return maps_; }
  // All p-simplices, in necklace order then lexicographic entries.
  std::vector<FlaggedNecklace> simplices(int p) const;
  // The simplex theta^* s for theta : [q] -> [p] given by its values.
  FlaggedNecklace act(const std::vector<int>& theta, int p, const FlaggedNecklace& s) const;
  // The necklace map with the given vertex sequence per bead, if present.
  int find(const NecklaceMap& m) const;

 private:
  FinPresheaf x_;
  Elem from_, to_;
  std::vector<NecklaceMap> maps_;
  EzData ez_;
};

struct NecklaceSpace {
  FinPresheaf nerve;  // over Delta, truncated at the degree bound
  std::vector<NecklaceMap> objects;
  long morphisms = 0;
  int components = 0;
  bool final = true;  // false if some necklace map exceeds the bead budget
};

// Truncated nerve of the category of totally nondegenerate necklace maps to
// X from x to y, with necklace maps over X as morphisms.
NecklaceSpace nec_mapping_space(const FinPresheaf& x, Elem from, Elem to, int max_beads, int degree_bound);

}  // namespace thetacell
