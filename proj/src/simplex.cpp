#include "thetacell/simplex.hpp"

#include "thetacell/error.hpp"

namespace thetacell {

MonotoneMap::MonotoneMap(int tgt, std::vector<int> v)
    : source(static_cast<int>(v.size()) - 1), target(tgt), values(std::move(v)) {
  if (values.empty()) throw UsageError("monotone map needs at least one value");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0 || values[i] > target)
      throw UsageError("monotone map value out of range: " + to_string());
    if (i > 0 && values[i] < values[i - 1])
      throw UsageError("map is not monotone: " + to_string());
  }
}

MonotoneMap MonotoneMap::identity(int n) {
  std::vector<int> v(n + 1);
  for (int i = 0; i <= n; ++i) v[i] = i;
  return MonotoneMap(n, std::move(v));
}

MonotoneMap MonotoneMap::face(int n, int i) {
  if (n < 1 || i < 0 || i > n) throw UsageError("face index out of range");
  std::vector<int> v;
  for (int k = 0; k <= n; ++k)
    if (k != i) v.push_back(k);
  return MonotoneMap(n, std::move(v));
}

MonotoneMap MonotoneMap::degeneracy(int n, int i) {
  if (n < 0 || i < 0 || i > n) throw UsageError("degeneracy index out of range");
  std::vector<int> v;
  for (int k = 0; k <= n + 1; ++k) v.push_back(k <= i ? k : k - 1);
  return MonotoneMap(n, std::move(v));
}

bool MonotoneMap::is_injective() const {
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] == values[i - 1]) return false;
  return true;
}

bool MonotoneMap::is_surjective() const {
  if (values.front() != 0 || values.back() != target) return false;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] - values[i - 1] > 1) return false;
  return true;
}

std::uint32_t MonotoneMap::image_mask() const {
  std::uint32_t m = 0;
  for (int v : values) m |= 1u << v;
  return m;
}

std::string MonotoneMap::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(values[i]);
  }
  return s;
}

MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f) {
  if (f.target != g.source) throw UsageError("monotone maps not composable");
  std::vector<int> v(f.values.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = g.values[f.values[i]];
  return MonotoneMap(g.target, std::move(v));
}

std::vector<MonotoneMap> enumerate_monotone(int m, int n) {
  if (m < 0 || n < 0) throw UsageError("negative simplex dimension");
  std::vector<MonotoneMap> out;
  std::vector<int> v(m + 1, 0);
  while (true) {
    out.emplace_back(n, v);
    int i = m;
    while (i >= 0 && v[i] == n) --i;
    if (i < 0) break;
    ++v[i];
    for (int k = i + 1; k <= m; ++k) v[k] = v[i];
  }
  return out;
}

EpiMono epi_mono_factor(const MonotoneMap& f) {
  std::vector<int> surj(f.values.size());
  std::vector<int> inj{f.values[0]};
  for (std::size_t i = 1; i < f.values.size(); ++i) {
    if (f.values[i] != f.values[i - 1]) inj.push_back(f.values[i]);
    surj[i] = static_cast<int>(inj.size()) - 1;
  }
  int k = static_cast<int>(inj.size()) - 1;
  return {MonotoneMap(k, std::move(surj)), MonotoneMap(f.target, std::move(inj))};
}

std::pair<MonotoneMap, MonotoneMap> Shuffle::simplex() const {
  std::vector<int> a{0}, b{0};
  for (bool s : steps) {
    a.push_back(a.back() + (s ? 0 : 1));
    b.push_back(b.back() + (s ? 1 : 0));
  }
  return {MonotoneMap(n, std::move(a)), MonotoneMap(m, std::move(b))};
}

std::string Shuffle::to_string() const {
  std::string s;
  for (bool b : steps) s += b ? '1' : '0';
  return s;
}

std::vector<Shuffle> shuffles(int n, int m) {
  if (n < 0 || m < 0) throw UsageError("negative shuffle dimension");
  std::vector<Shuffle> out;
  std::vector<bool> cur;
  auto rec = [&](auto&& self, int a, int b) -> void {
    if (a == n && b == m) {
      out.push_back(Shuffle{n, m, cur});
      return;
    }
    if (a < n) {
      cur.push_back(false);
      self(self, a + 1, b);
      cur.pop_back();
    }
    if (b < m) {
      cur.push_back(true);
      self(self, a, b + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0, 0);
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace thetacell
