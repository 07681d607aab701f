#include "thetacell/category.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "thetacell/error.hpp"

namespace thetacell {

Category::Category(int bound, std::vector<int> dims) : bound_(bound), dims_(std::move(dims)) {
  const std::size_t n = dims_.size();
  by_dim_.resize(n);
  std::iota(by_dim_.begin(), by_dim_.end(), 0);
  std::stable_sort(by_dim_.begin(), by_dim_.end(), [&](int a, int b) { return dims_[a] < dims_[b]; });
  homs_.resize(n * n);
  identity_.assign(n, -1);
  degen_.resize(n);
  faces_.resize(n);
}

const std::vector<ArrowId>& Category::hom(ObjId s, ObjId t) const {
  std::lock_guard lk(mu_);
  if (s < 0 || t < 0 || s >= object_count() || t >= object_count())
    throw UsageError("object id out of range in " + name());
  auto& slot = homs_[static_cast<std::size_t>(s) * dims_.size() + t];
  if (!slot) {
    auto built = std::make_unique<std::vector<ArrowId>>(build_hom(s, t));
    slot = std::move(built);
  }
  return *slot;
}

ArrowId Category::new_arrow(ObjId s, ObjId t, int index) const {
  std::lock_guard lk(mu_);
  arrows_.push_back({s, t, index});
  classes_.emplace_back();
  return static_cast<ArrowId>(arrows_.size()) - 1;
}

ObjId Category::source(ArrowId f) const {
  std::lock_guard lk(mu_);
  return arrows_.at(f).src;
}

ObjId Category::target(ArrowId f) const {
  std::lock_guard lk(mu_);
  return arrows_.at(f).tgt;
}

int Category::hom_index(ArrowId f) const {
  std::lock_guard lk(mu_);
  return arrows_.at(f).index;
}

ArrowId Category::compose(ArrowId g, ArrowId f) const {
  std::lock_guard lk(mu_);
  const std::uint64_t key = pack(static_cast<std::uint32_t>(g), static_cast<std::uint32_t>(f));
  if (auto it = compose_memo_.find(key); it != compose_memo_.end()) return it->second;
  if (arrows_.at(f).tgt != arrows_.at(g).src) throw UsageError("arrows not composable in " + name());
  ArrowId h = build_compose(g, f);
  compose_memo_.emplace(key, h);
  return h;
}

ArrowId Category::identity(ObjId o) const {
  std::lock_guard lk(mu_);
  if (identity_.at(o) < 0) identity_[o] = build_identity(o);
  return identity_[o];
}

const Category::Classified& Category::classified(ArrowId f) const {
  std::lock_guard lk(mu_);
  if (!classes_.at(f)) {
    // classify may mint arrows and grow classes_, so index again afterwards.
    auto c = std::make_unique<Classified>(classify(f));
    classes_[f] = std::move(c);
  }
  return *classes_[f];
}

bool Category::is_minus(ArrowId f) const { return classified(f).minus; }
bool Category::is_plus(ArrowId f) const { return classified(f).plus; }

std::pair<ArrowId, ArrowId> Category::factor(ArrowId f) const {
  const auto& c = classified(f);
  return {c.minus_part, c.plus_part};
}

const std::vector<ArrowId>& Category::degeneracies_from(ObjId o) const {
  std::lock_guard lk(mu_);
  if (!degen_.at(o)) {
    auto v = std::make_unique<std::vector<ArrowId>>();
    for (ObjId t : by_dim_) {
      if (dims_[t] >= dims_[o]) break;
      for (ArrowId f : hom(o, t))
        if (is_minus(f)) v->push_back(f);
    }
    degen_[o] = std::move(v);
  }
  return *degen_[o];
}

const std::vector<ArrowId>& Category::faces_into(ObjId o) const {
  std::lock_guard lk(mu_);
  if (!faces_.at(o)) {
    auto v = std::make_unique<std::vector<ArrowId>>();
    for (ObjId s : by_dim_) {
      if (dims_[s] >= dims_[o]) break;
      for (ArrowId f : hom(s, o))
        if (is_plus(f)) v->push_back(f);
    }
    faces_[o] = std::move(v);
  }
  return *faces_[o];
}

namespace {

std::vector<int> theta_dims(const std::vector<ThetaObj>& objs) {
  std::vector<int> d;
  for (const auto& o : objs) d.push_back(thetacell::dim(o));
  return d;
}

}  // namespace

ThetaCategory::ThetaCategory(int level, int bound)
    : Category(bound, theta_dims(enumerate_objects(level, bound))), level_(level) {
  objects_ = enumerate_objects(level, bound);
  for (std::size_t i = 0; i < objects_.size(); ++i) object_index_.emplace(objects_[i], static_cast<ObjId>(i));
}

std::optional<ObjId> ThetaCategory::find_object(const ThetaObj& a) const {
  auto it = object_index_.find(a);
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

ObjId ThetaCategory::object_id(const ThetaObj& a) const {
  if (auto o = find_object(a)) return *o;
  throw TruncationError("object " + to_string(a, std::max(level_, height(a))) + " is not in " + name());
}

ObjId ThetaCategory::parse_object_id(std::string_view text) const {
  return object_id(parse_object(text, level_));
}

ThetaMap ThetaCategory::arrow(ArrowId f) const {
  std::lock_guard lk(mu_);
  return trees_.at(f);
}

ArrowId ThetaCategory::arrow_id(ObjId s, ObjId t, const ThetaMap& f) const {
  std::lock_guard lk(mu_);
  hom(s, t);
  const auto& m = *lookup_.at(pack(s, t));
  auto it = m.find(f);
  if (it == m.end())
    throw UsageError("not a map " + object_name(s) + " -> " + object_name(t));
  return it->second;
}

std::string ThetaCategory::name() const {
  return "Theta_" + std::to_string(level_) + "<=" + std::to_string(bound());
}

std::string ThetaCategory::object_name(ObjId o) const { return to_string(objects_.at(o), level_); }

std::string ThetaCategory::arrow_name(ArrowId f) const {
  return to_string(arrow(f), objects_[source(f)], objects_[target(f)]);
}

std::vector<ArrowId> ThetaCategory::build_hom(ObjId s, ObjId t) const {
  auto trees = thetacell::hom(objects_[s], objects_[t]);
  auto index = std::make_unique<std::unordered_map<ThetaMap, ArrowId, ThetaMapHash>>();
  std::vector<ArrowId> ids;
  ids.reserve(trees.size());
  for (std::size_t i = 0; i < trees.size(); ++i) {
    ArrowId a = new_arrow(s, t, static_cast<int>(i));
    if (static_cast<std::size_t>(a) != trees_.size()) throw IntegrityError("arrow registry out of sync");
    trees_.push_back(trees[i]);
    index->emplace(std::move(trees[i]), a);
    ids.push_back(a);
  }
  lookup_[pack(s, t)] = std::move(index);
  return ids;
}

ArrowId ThetaCategory::build_compose(ArrowId g, ArrowId f) const {
  return arrow_id(source(f), target(g), thetacell::compose(trees_[g], trees_[f]));
}

ArrowId ThetaCategory::build_identity(ObjId o) const { return arrow_id(o, o, identity_map(objects_[o])); }

Category::Classified ThetaCategory::classify(ArrowId f) const {
  const ObjId s = source(f), t = target(f);
  const ThetaMap tree = trees_[f];
  ReedyFactor rf = reedy_factor(tree, objects_[s], objects_[t]);
  ObjId mid = object_id(rf.middle);
  Classified c;
  c.minus = thetacell::is_minus(tree, objects_[s], objects_[t]);
  c.plus = thetacell::is_identity(rf.minus);
  c.minus_part = arrow_id(s, mid, rf.minus);
  c.plus_part = arrow_id(mid, t, rf.plus);
  return c;
}

namespace {

std::vector<std::pair<ObjId, ObjId>> product_pairs(const Category& a, const Category& b, int bound) {
  std::vector<std::pair<ObjId, ObjId>> out;
  for (ObjId x = 0; x < a.object_count(); ++x)
    for (ObjId y = 0; y < b.object_count(); ++y)
      if (a.dim(x) + b.dim(y) <= bound) out.emplace_back(x, y);
  std::stable_sort(out.begin(), out.end(), [&](auto p, auto q) {
    return a.dim(p.first) + b.dim(p.second) < a.dim(q.first) + b.dim(q.second);
  });
  return out;
}

std::vector<int> pair_dims(const Category& a, const Category& b, const std::vector<std::pair<ObjId, ObjId>>& ps) {
  std::vector<int> d;
  for (auto [x, y] : ps) d.push_back(a.dim(x) + b.dim(y));
  return d;
}

}  // namespace

ProductCategory::ProductCategory(std::shared_ptr<const Category> a, std::shared_ptr<const Category> b, int bound)
    : Category(bound, pair_dims(*a, *b, product_pairs(*a, *b, bound))), a_(std::move(a)), b_(std::move(b)) {
  if (a_->bound() < bound || b_->bound() < bound)
    throw UsageError("product truncation exceeds the factor truncations");
  pairs_ = product_pairs(*a_, *b_, bound);
  for (std::size_t i = 0; i < pairs_.size(); ++i)
    pair_index_.emplace(pack(pairs_[i].first, pairs_[i].second), static_cast<ObjId>(i));
}

std::optional<ObjId> ProductCategory::find_object(ObjId a, ObjId b) const {
  auto it = pair_index_.find(pack(a, b));
  if (it == pair_index_.end()) return std::nullopt;
  return it->second;
}

std::pair<ArrowId, ArrowId> ProductCategory::arrow_components(ArrowId f) const {
  std::lock_guard lk(mu_);
  return arrow_pairs_.at(f);
}

ArrowId ProductCategory::arrow_id(ArrowId fa, ArrowId fb) const {
  std::lock_guard lk(mu_);
  auto s = find_object(a_->source(fa), b_->source(fb));
  auto t = find_object(a_->target(fa), b_->target(fb));
  if (!s || !t) throw TruncationError("arrow leaves the truncation of " + name());
  hom(*s, *t);
  return arrow_index_.at(pack(fa, fb));
}

std::string ProductCategory::name() const {
  return "(" + a_->name() + " x " + b_->name() + ")<=" + std::to_string(bound());
}

std::string ProductCategory::object_name(ObjId o) const {
  return "(" + a_->object_name(pairs_.at(o).first) + ", " + b_->object_name(pairs_.at(o).second) + ")";
}

std::string ProductCategory::arrow_name(ArrowId f) const {
  auto [x, y] = arrow_components(f);
  return "(" + a_->arrow_name(x) + ", " + b_->arrow_name(y) + ")";
}

std::optional<ObjId> ProductCategory::terminal() const {
  auto x = a_->terminal();
  auto y = b_->terminal();
  if (!x || !y) return std::nullopt;
  return find_object(*x, *y);
}

std::vector<ArrowId> ProductCategory::build_hom(ObjId s, ObjId t) const {
  auto [sa, sb] = pairs_[s];
  auto [ta, tb] = pairs_[t];
  std::vector<ArrowId> ids;
  const auto& ha = a_->hom(sa, ta);
  const auto& hb = b_->hom(sb, tb);
  int i = 0;
  for (ArrowId x : ha)
    for (ArrowId y : hb) {
      ArrowId id = new_arrow(s, t, i++);
      if (static_cast<std::size_t>(id) != arrow_pairs_.size()) throw IntegrityError("arrow registry out of sync");
      arrow_pairs_.emplace_back(x, y);
      arrow_index_.emplace(pack(x, y), id);
      ids.push_back(id);
    }
  return ids;
}

ArrowId ProductCategory::build_compose(ArrowId g, ArrowId f) const {
  auto [ga, gb] = arrow_pairs_[g];
  auto [fa, fb] = arrow_pairs_[f];
  return arrow_id(a_->compose(ga, fa), b_->compose(gb, fb));
}

ArrowId ProductCategory::build_identity(ObjId o) const {
  return arrow_id(a_->identity(pairs_[o].first), b_->identity(pairs_[o].second));
}

Category::Classified ProductCategory::classify(ArrowId f) const {
  auto [fa, fb] = arrow_pairs_[f];
  Classified c;
  c.minus = a_->is_minus(fa) && b_->is_minus(fb);
  c.plus = a_->is_plus(fa) && b_->is_plus(fb);
  auto [ma, pa] = a_->factor(fa);
  auto [mb, pb] = b_->factor(fb);
  c.minus_part = arrow_id(ma, mb);
  c.plus_part = arrow_id(pa, pb);
  return c;
}

std::shared_ptr<const ThetaCategory> theta_category(int level, int bound) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const ThetaCategory>> cache;
  if (level < 0 || bound < 0) throw UsageError("Theta level and bound must be non-negative");
  std::lock_guard lk(mu);
  auto& slot = cache[{level, bound}];
  if (!slot) slot = std::make_shared<ThetaCategory>(level, bound);
  return slot;
}

std::shared_ptr<const ProductCategory> product_category(std::shared_ptr<const Category> a,
                                                        std::shared_ptr<const Category> b, int bound) {
  static std::mutex mu;
  static std::map<std::tuple<const Category*, const Category*, int>, std::shared_ptr<const ProductCategory>> cache;
  std::lock_guard lk(mu);
  auto& slot = cache[{a.get(), b.get(), bound}];
  if (!slot) slot = std::make_shared<ProductCategory>(a, b, bound);
  return slot;
}

}  // namespace thetacell
