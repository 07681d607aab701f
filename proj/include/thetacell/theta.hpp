#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "thetacell/simplex.hpp"

namespace thetacell {

// An object [n](c_1,...,c_n) of the tower Theta_0 -> Theta_1 -> ..., stored
// as a rooted tree. The leaf is the point of Theta_0 and the terminal [0]
// of every higher level; a tree of height <= k is an object of Theta_k.
struct ThetaObj {
  std::vector<ThetaObj> labels;

  ThetaObj() = default;
  explicit ThetaObj(std::vector<ThetaObj> l) : labels(std::move(l)) {}

  int n() const { return static_cast<int>(labels.size()); }
  bool is_leaf() const { return labels.empty(); }

  static ThetaObj point() { return ThetaObj(); }
  // [n](*,...,*)
  static ThetaObj simplex(int n) { return ThetaObj(std::vector<ThetaObj>(n)); }
};

int compare(const ThetaObj& a, const ThetaObj& b);
bool operator==(const ThetaObj& a, const ThetaObj& b);
inline bool operator<(const ThetaObj& a, const ThetaObj& b) { return compare(a, b) < 0; }
std::size_t hash_value(const ThetaObj& a);

int dim(const ThetaObj& a);
int height(const ThetaObj& a);

// A map (alpha, f) : [p](e) -> [n](c). comps[i-1] lists f_{i,j} : e_i -> c_j
// for j = alpha(i-1)+1 .. alpha(i).
struct ThetaMap {
  std::vector<int> alpha;
  std::vector<std::vector<ThetaMap>> comps;
};

int compare(const ThetaMap& a, const ThetaMap& b);
bool operator==(const ThetaMap& a, const ThetaMap& b);
inline bool operator<(const ThetaMap& a, const ThetaMap& b) { return compare(a, b) < 0; }
std::size_t hash_value(const ThetaMap& a);

struct ThetaObjHash {
  std::size_t operator()(const ThetaObj& a) const { return hash_value(a); }
};
struct ThetaMapHash {
  std::size_t operator()(const ThetaMap& a) const { return hash_value(a); }
};

ThetaMap identity_map(const ThetaObj& a);
// g after f.
ThetaMap compose(const ThetaMap& g, const ThetaMap& f);
bool is_valid_map(const ThetaMap& f, const ThetaObj& s, const ThetaObj& t);

// All maps s -> t: monotone alpha in lexicographic order, then components
// in lexicographic order slot by slot.
std::vector<ThetaMap> hom(const ThetaObj& s, const ThetaObj& t);

// Maps in Theta_1 are monotone maps.
ThetaMap from_monotone(const MonotoneMap& a);
MonotoneMap to_monotone(const ThetaMap& f, int target_n);

// The Theta map [p](c,...,c) -> [q](c',...,c') with the given alpha and
// every component equal to u : c -> c'.
ThetaMap constant_label_map(const MonotoneMap& a, const ThetaMap& u);

// Factorization of a multi-map c -> (d_1,...,d_k) as a minus map followed
// by a nondegenerate section of the product d_1 x ... x d_k.
struct MultiFactor {
  ThetaObj middle;
  ThetaMap degeneracy;
  std::vector<ThetaMap> faces;
};

MultiFactor multi_factor(const ThetaObj& src, std::span<const ThetaObj> targets,
                         std::span<const ThetaMap> maps);
bool is_nondegenerate_section(const ThetaObj& src, std::span<const ThetaObj> targets,
                              std::span<const ThetaMap> maps);

struct ReedyFactor {
  ThetaObj middle;
  ThetaMap minus;
  ThetaMap plus;
};

ReedyFactor reedy_factor(const ThetaMap& f, const ThetaObj& s, const ThetaObj& t);
// Only meaningful when the target is known to match, e.g. for degeneracies.
bool is_identity(const ThetaMap& f);
bool is_minus(const ThetaMap& f, const ThetaObj& s, const ThetaObj& t);
bool is_plus(const ThetaMap& f, const ThetaObj& s, const ThetaObj& t);

// Objectwise injectivity of the induced map of representables, tested on all
// objects of Theta_level with dimension <= dim(s).
bool is_mono(const ThetaMap& f, const ThetaObj& s, const ThetaObj& t, int level);

// Objects of Theta_level with dim <= max_dim, sorted by (dim, n, labels).
std::vector<ThetaObj> enumerate_objects(int level, int max_dim);

// "[2]([1],[0])"; in Theta_1 the terminal labels are omitted ("[2]"), and
// the leaf prints as "*" at level 0.
std::string to_string(const ThetaObj& a, int level);
ThetaObj parse_object(std::string_view text, int level);

// "(alpha=[0,1]; f[1][1]=(alpha=[1]))". Components between two leaves are
// unique and omitted.
std::string to_string(const ThetaMap& f, const ThetaObj& s, const ThetaObj& t);
ThetaMap parse_map(std::string_view text, const ThetaObj& s, const ThetaObj& t);

struct CrReport {
  bool ok = true;
  bool truncated = false;
  long tuples_checked = 0;
  long nondegenerate_sections = 0;
  std::vector<std::string> violations;
  // (target tuple, source object) -> number of nondegenerate sections
  std::vector<std::pair<std::string, long>> census;
};

// Checks that nondegenerate sections c -> c_1 x ... x c_r of products of
// representables of Theta_level are monic and satisfy dim c <= sum dim c_i,
// for objects of dim <= d and r <= arity.
CrReport check_cr_axioms(int level, int d, int arity, long budget = 50'000'000);

}  // namespace thetacell
