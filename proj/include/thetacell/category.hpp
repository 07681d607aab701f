#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "thetacell/theta.hpp"

namespace thetacell {

using ObjId = int;
using ArrowId = int;

// A finite truncation of a Reedy category: objects of dimension <= bound,
// with homs, composition and the minus/plus classification computed lazily
// and interned as integer ids. Safe to share between threads.
class Category {
 public:
  virtual ~Category() = default;

  int bound() const { return bound_; }
  int object_count() const { return static_cast<int>(dims_.size()); }
  int dim(ObjId o) const { return dims_[o]; }

  virtual std::string name() const = 0;
  virtual std::string object_name(ObjId o) const = 0;
  virtual std::string arrow_name(ArrowId f) const = 0;
  // A terminal object, if the truncation has one.
  virtual std::optional<ObjId> terminal() const = 0;

  const std::vector<ArrowId>& hom(ObjId s, ObjId t) const;
  ObjId source(ArrowId f) const;
  ObjId target(ArrowId f) const;
  // Position of f in hom(source f, target f).
  int hom_index(ArrowId f) const;
  // g after f.
  ArrowId compose(ArrowId g, ArrowId f) const;
  ArrowId identity(ObjId o) const;
  bool is_identity(ArrowId f) const { return f == identity(source(f)); }

  bool is_minus(ArrowId f) const;
  bool is_plus(ArrowId f) const;
  // f = plus after minus.
  std::pair<ArrowId, ArrowId> factor(ArrowId f) const;

  // Non-identity minus maps out of o, and non-identity plus maps into o.
  const std::vector<ArrowId>& degeneracies_from(ObjId o) const;
  const std::vector<ArrowId>& faces_into(ObjId o) const;

  // Objects in increasing dimension.
  const std::vector<ObjId>& objects_by_dim() const { return by_dim_; }

 protected:
  Category(int bound, std::vector<int> dims);

  struct Classified {
    bool minus = false;
    bool plus = false;
    ArrowId minus_part = -1;
    ArrowId plus_part = -1;
  };

  virtual std::vector<ArrowId> build_hom(ObjId s, ObjId t) const = 0;
  virtual ArrowId build_compose(ArrowId g, ArrowId f) const = 0;
  virtual ArrowId build_identity(ObjId o) const = 0;
  virtual Classified classify(ArrowId f) const = 0;

  // Called by build_hom implementations.
  ArrowId new_arrow(ObjId s, ObjId t, int index) const;

  mutable std::recursive_mutex mu_;

 private:
  struct ArrowRec {
    ObjId src;
    ObjId tgt;
    int index;
  };
  const Classified& classified(ArrowId f) const;

  int bound_;
  std::vector<int> dims_;
  std::vector<ObjId> by_dim_;
  mutable std::vector<std::unique_ptr<std::vector<ArrowId>>> homs_;
  mutable std::vector<ArrowRec> arrows_;
  mutable std::unordered_map<std::uint64_t, ArrowId> compose_memo_;
  mutable std::vector<ArrowId> identity_;
  mutable std::vector<std::unique_ptr<Classified>> classes_;
  mutable std::vector<std::unique_ptr<std::vector<ArrowId>>> degen_;
  mutable std::vector<std::unique_ptr<std::vector<ArrowId>>> faces_;
};

// Truncation of Theta_level at the given dimension bound.
class ThetaCategory final : public Category {
 public:
  ThetaCategory(int level, int bound);

  int level() const { return level_; }
  const ThetaObj& object(ObjId o) const { return objects_[o]; }
  std::optional<ObjId> find_object(const ThetaObj& a) const;
  ObjId object_id(const ThetaObj& a) const;
  ObjId parse_object_id(std::string_view text) const;
  ThetaMap arrow(ArrowId f) const;
  ArrowId arrow_id(ObjId s, ObjId t, const ThetaMap& f) const;

  std::string name() const override;
  std::string object_name(ObjId o) const override;
  std::string arrow_name(ArrowId f) const override;
  std::optional<ObjId> terminal() const override { return 0; }

 protected:
  std::vector<ArrowId> build_hom(ObjId s, ObjId t) const override;
  ArrowId build_compose(ArrowId g, ArrowId f) const override;
  ArrowId build_identity(ObjId o) const override;
  Classified classify(ArrowId f) const override;

 private:
  int level_;
  std::vector<ThetaObj> objects_;
  std::unordered_map<ThetaObj, ObjId, ThetaObjHash> object_index_;
  mutable std::vector<ThetaMap> trees_;
  mutable std::unordered_map<std::uint64_t, std::unique_ptr<std::unordered_map<ThetaMap, ArrowId, ThetaMapHash>>> lookup_;
};

// Truncation of A x B at a bound on dim a + dim b. Minus and plus maps are
// componentwise.
class ProductCategory final : public Category {
 public:
  ProductCategory(std::shared_ptr<const Category> a, std::shared_ptr<const Category> b, int bound);

  const Category& first() const { return *a_; }
  const Category& second() const { return *b_; }
  const std::shared_ptr<const Category>& first_ptr() const { return a_; }
  const std::shared_ptr<const Category>& second_ptr() const { return b_; }
  std::pair<ObjId, ObjId> components(ObjId o) const { return pairs_[o]; }
  std::optional<ObjId> find_object(ObjId a, ObjId b) const;
  std::pair<ArrowId, ArrowId> arrow_components(ArrowId f) const;
  ArrowId arrow_id(ArrowId fa, ArrowId fb) const;

  std::string name() const override;
  std::string object_name(ObjId o) const override;
  std::string arrow_name(ArrowId f) const override;
  std::optional<ObjId> terminal() const override;

 protected:
  std::vector<ArrowId> build_hom(ObjId s, ObjId t) const override;
  ArrowId build_compose(ArrowId g, ArrowId f) const override;
  ArrowId build_identity(ObjId o) const override;
  Classified classify(ArrowId f) const override;

 private:
  std::shared_ptr<const Category> a_, b_;
  std::vector<std::pair<ObjId, ObjId>> pairs_;
  std::unordered_map<std::uint64_t, ObjId> pair_index_;
  mutable std::vector<std::pair<ArrowId, ArrowId>> arrow_pairs_;
  mutable std::unordered_map<std::uint64_t, ArrowId> arrow_index_;
};

// Shared, cached instances.
std::shared_ptr<const ThetaCategory> theta_category(int level, int bound);
std::shared_ptr<const ProductCategory> product_category(std::shared_ptr<const Category> a,
                                                        std::shared_ptr<const Category> b, int bound);

inline std::uint64_t pack(std::uint64_t a, std::uint64_t b) { return (a << 32) | b; }

}  // namespace thetacell
