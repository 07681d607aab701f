#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace thetacell {

// A monotone map [source] -> [target], stored as its list of values.
struct MonotoneMap {
  int source = 0;
  int target = 0;
  std::vector<int> values;

  MonotoneMap() : values{0} {}
  MonotoneMap(int tgt, std::vector<int> v);

  static MonotoneMap identity(int n);
  static MonotoneMap face(int n, int i);        // d^i : [n-1] -> [n]
  static MonotoneMap degeneracy(int n, int i);  // s^i : [n+1] -> [n]

  bool is_injective() const;
  bool is_surjective() const;
  std::uint32_t image_mask() const;
  int operator()(int i) const { return values[i]; }

  std::string to_string() const;

  friend bool operator==(const MonotoneMap&, const MonotoneMap&) = default;
  friend auto operator<=>(const MonotoneMap& a, const MonotoneMap& b) {
    if (auto c = a.source <=> b.source; c != 0) return c;
    if (auto c = a.target <=> b.target; c != 0) return c;
    return a.values <=> b.values;
  }
};

// g after f.
MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f);

// All monotone maps [m] -> [n] in lexicographic order of value lists.
std::vector<MonotoneMap> enumerate_monotone(int m, int n);

struct EpiMono {
  MonotoneMap surjection;
  MonotoneMap injection;
};

EpiMono epi_mono_factor(const MonotoneMap& f);

// A lattice path in [n] x [m]; steps[i] is false for a step along the
// first axis and true for a step along the second.
struct Shuffle {
  int n = 0;
  int m = 0;
  std::vector<bool> steps;

  // The nondegenerate (n+m)-simplex of Delta^n x Delta^m it spans.
  std::pair<MonotoneMap, MonotoneMap> simplex() const;
  std::string to_string() const;
};

// All (n,m)-shuffles, lexicographic in the step string.
std::vector<Shuffle> shuffles(int n, int m);

std::uint64_t binomial(int n, int k);

}  // namespace thetacell
