#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "thetacell/category.hpp"

namespace thetacell {

using Elem = int;

namespace detail {

struct PresheafImpl {
  PresheafImpl(std::shared_ptr<const Category> c, std::vector<int> s) : cat(std::move(c)), sizes(std::move(s)) {}
  virtual ~PresheafImpl() = default;
  // x in X(target f) goes to X(source f).
  virtual Elem act(ArrowId f, Elem x) const = 0;
  virtual std::string describe(ObjId o, Elem x) const;

  std::shared_ptr<const Category> cat;
  std::vector<int> sizes;
};

}  // namespace detail

// A presheaf of finite sets on a truncated Reedy category. Elements of X(o)
// are 0..size(o)-1. Values are immutable and cheap to copy.
class FinPresheaf {
 public:
  FinPresheaf() = default;
  explicit FinPresheaf(std::shared_ptr<const detail::PresheafImpl> impl) : impl_(std::move(impl)) {}

  bool valid() const { return impl_ != nullptr; }
  const Category& base() const { return *impl_->cat; }
  const std::shared_ptr<const Category>& base_ptr() const { return impl_->cat; }
  int bound() const { return impl_->cat->bound(); }
  int size(ObjId o) const { return impl_->sizes[o]; }
  long total_size() const;
  Elem act(ArrowId f, Elem x) const { return impl_->act(f, x); }
  std::string describe(ObjId o, Elem x) const { return impl_->describe(o, x); }
  const detail::PresheafImpl* impl() const { return impl_.get(); }
  bool same_base(const FinPresheaf& other) const { return impl_->cat == other.impl_->cat; }

 private:
  std::shared_ptr<const detail::PresheafImpl> impl_;
};

// Throws UsageError unless both presheaves live on the same truncation.
void require_same_base(const FinPresheaf& a, const FinPresheaf& b, const char* op);

// comp[o][x] is the image of x in X(o).
struct PresheafMap {
  FinPresheaf source;
  FinPresheaf target;
  std::vector<std::vector<Elem>> comp;

  Elem operator()(ObjId o, Elem x) const { return comp[o][x]; }
};

PresheafMap map_from_function(const FinPresheaf& source, const FinPresheaf& target,
                              const std::function<Elem(ObjId, Elem)>& fn);
PresheafMap identity_morphism(const FinPresheaf& x);
// g after f.
PresheafMap compose(const PresheafMap& g, const PresheafMap& f);
bool operator==(const PresheafMap& a, const PresheafMap& b);
// Naturality against all non-identity plus and minus arrows, which generate.
bool is_natural(const PresheafMap& f, std::string* why = nullptr);
bool is_mono(const PresheafMap& f);
bool is_epi(const PresheafMap& f);

struct Cell {
  ObjId object = 0;
  Elem element = 0;
  bool nondegenerate = true;
};

// A subpresheaf candidate: a set of elements of a fixed ambient presheaf.
class Subobject {
 public:
  Subobject() = default;
  explicit Subobject(FinPresheaf ambient, bool full = false);
  static Subobject from_predicate(FinPresheaf ambient, const std::function<bool(ObjId, Elem)>& pred);

  const FinPresheaf& ambient() const { return ambient_; }
  bool contains(ObjId o, Elem x) const { return bits_[o][x] != 0; }
  void insert(ObjId o, Elem x) { bits_[o][x] = 1; }
  void erase(ObjId o, Elem x) { bits_[o][x] = 0; }
  long count() const;
  int count(ObjId o) const;
  std::vector<Elem> members(ObjId o) const;

  Subobject unite(const Subobject& other) const;
  Subobject intersect(const Subobject& other) const;
  Subobject complement() const;
  bool subset_of(const Subobject& other) const;
  bool is_full() const;
  bool operator==(const Subobject& other) const;

  bool is_closed(std::string* why = nullptr) const;
  // Smallest subpresheaf containing these elements.
  Subobject closure() const;
  // Requires is_closed().
  FinPresheaf as_presheaf() const;
  PresheafMap inclusion() const;

 private:
  FinPresheaf ambient_;
  std::vector<std::vector<char>> bits_;
};

Subobject image(const PresheafMap& f);
// Preimage of a subobject of f.target.
Subobject preimage(const PresheafMap& f, const Subobject& s);
// Subpresheaf generated by one element.
Subobject generated(const FinPresheaf& x, ObjId o, Elem e);

FinPresheaf make_presheaf(std::shared_ptr<const Category> cat, std::vector<int> sizes,
                          std::function<Elem(ArrowId, Elem)> act,
                          std::function<std::string(ObjId, Elem)> describe = {});
// Action tables keyed by arrow id; identities may be omitted.
FinPresheaf table_presheaf(std::shared_ptr<const Category> cat, std::vector<int> sizes,
                           std::unordered_map<ArrowId, std::vector<Elem>> tables,
                           std::vector<std::vector<std::string>> names = {});
// Freezes every action of x into a table.
FinPresheaf tabulate(const FinPresheaf& x);

FinPresheaf representable(std::shared_ptr<const Category> cat, ObjId o);
FinPresheaf terminal_presheaf(std::shared_ptr<const Category> cat);
FinPresheaf empty_presheaf(std::shared_ptr<const Category> cat);

FinPresheaf product(const std::vector<FinPresheaf>& factors);
inline FinPresheaf product(const FinPresheaf& a, const FinPresheaf& b) { return product(std::vector{a, b}); }
// Element of a product from its components, and back.
Elem product_element(const FinPresheaf& p, ObjId o, std::span<const Elem> parts);
std::vector<Elem> product_components(const FinPresheaf& p, ObjId o, Elem e);
PresheafMap product_projection(const FinPresheaf& p, int factor);

struct Coproduct {
  FinPresheaf object;
  PresheafMap left;
  PresheafMap right;
};
Coproduct coproduct(const FinPresheaf& a, const FinPresheaf& b);

struct Pushout {
  FinPresheaf object;
  PresheafMap from_b;  // B -> P
  PresheafMap from_c;  // C -> P
};
// Pushout of B <-i- A -g-> C with i a monomorphism.
Pushout pushout(const PresheafMap& i, const PresheafMap& g);
// X with the subpresheaf s collapsed to a point.
Pushout collapse(const Subobject& s);

struct EzData {
  std::vector<std::vector<ObjId>> root_object;
  std::vector<std::vector<Elem>> root_element;
  // Minus arrow o -> root_object with x = X(sigma)(root); identity if nondegenerate.
  std::vector<std::vector<ArrowId>> sigma;

  bool nondegenerate(ObjId o, Elem x) const { return root_object[o][x] == o && root_element[o][x] == x; }
};

// Unique decomposition of every element as a degeneracy of a nondegenerate
// element; throws IntegrityError if uniqueness fails.
EzData eilenberg_zilber(const FinPresheaf& x);
std::vector<Cell> nondegenerate_cells(const FinPresheaf& x);
// Elements whose nondegenerate root has dimension <= n.
Subobject skeleton(const FinPresheaf& x, int n);

// Restriction to a smaller truncation of the same Theta level.
FinPresheaf restrict_to(const FinPresheaf& x, std::shared_ptr<const ThetaCategory> smaller);
// X on C x D pulled back along the projection to C (which = 0) or D (which = 1).
FinPresheaf pullback_projection(const FinPresheaf& x, std::shared_ptr<const ProductCategory> prod, int which);

// (k_star X)_p = X([p](c,...,c)) over Delta, truncated at the largest p with
// [p](c,...,c) inside the truncation of X.
FinPresheaf k_star(const FinPresheaf& x, const ThetaObj& c);
// Underlying simplicial set, X([n](*,...,*)).
FinPresheaf underlying_sset(const FinPresheaf& x);
// (H S)([n](c)) = S_n.
FinPresheaf local_termination(const FinPresheaf& s, std::shared_ptr<const ThetaCategory> target);
// cosk_0 Delta^n: p-simplices are all functions [p] -> [n].
FinPresheaf cosk0_simplex(int n, std::shared_ptr<const ThetaCategory> delta);
// E^n = H(cosk_0 Delta^n).
FinPresheaf e_simplex(int n, std::shared_ptr<const ThetaCategory> target);

// Exact functoriality check, elementwise; used in tests and when loading.
bool is_functorial(const FinPresheaf& x, std::string* why = nullptr);

}  // namespace thetacell
