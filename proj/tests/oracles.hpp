#pragma once

// Brute-force reference computations shared by the unit and acceptance tests.
// They use only object enumeration, hom enumeration and composition.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "thetacell/simplex.hpp"
#include "thetacell/theta.hpp"

namespace oracle {

using thetacell::ThetaMap;
using thetacell::ThetaObj;

// |hom(s, t)| from the wreath formula, recursively on the label trees.
inline long hom_count(const ThetaObj& s, const ThetaObj& t) {
  const int p = s.n(), q = t.n();
  // ways[i][v]: choices for slots 1..i with alpha(i) = v
  std::vector<std::vector<long>> ways(p + 1, std::vector<long>(q + 1, 0));
  for (int v = 0; v <= q; ++v) ways[0][v] = 1;
  for (int i = 1; i <= p; ++i)
    for (int v = 0; v <= q; ++v)
      for (int u = 0; u <= v; ++u) {
        long prod = ways[i - 1][u];
        for (int k = u + 1; k <= v && prod; ++k) prod *= hom_count(s.labels[i - 1], t.labels[k - 1]);
        ways[i][v] += prod;
      }
  long total = 0;
  for (int v = 0; v <= q; ++v) total += ways[p][v];
  return total;
}

// Maps c -> c' that admit a section and are not identities.
inline std::vector<ThetaMap> proper_split_epis(const ThetaObj& c, const ThetaObj& cp) {
  std::vector<ThetaMap> out;
  if (c == cp) return out;
  const auto back = thetacell::hom(cp, c);
  const ThetaMap idp = thetacell::identity_map(cp);
  for (const auto& sigma : thetacell::hom(c, cp))
    for (const auto& s : back)
      if (thetacell::compose(sigma, s) == idp) {
        out.push_back(sigma);
        break;
      }
  return out;
}

// Number of tuples (f_q : c -> c_q) that do not factor through a proper
// split epi out of c, keyed like CrReport::census.
inline std::map<std::string, long> cr_census(int level, int d, int arity) {
  const auto objs = thetacell::enumerate_objects(level, d);
  std::map<std::string, long> out;
  std::vector<std::size_t> tuple;
  auto visit = [&]() {
    std::string tname = "(";
    for (std::size_t q = 0; q < tuple.size(); ++q) tname += (q ? "," : "") + thetacell::to_string(objs[tuple[q]], level);
    tname += ")";
    for (const auto& c : objs) {
      std::vector<std::vector<ThetaMap>> lists;
      long total = 1;
      for (auto t : tuple) {
        lists.push_back(thetacell::hom(c, objs[t]));
        total *= static_cast<long>(lists.back().size());
      }
      std::set<std::vector<ThetaMap>> degenerate;
      for (const auto& cp : objs) {
        for (const auto& sigma : proper_split_epis(c, cp)) {
          std::vector<std::vector<ThetaMap>> gs;
          for (auto t : tuple) gs.push_back(thetacell::hom(cp, objs[t]));
          std::vector<std::size_t> idx(gs.size(), 0);
          bool any = true;
          for (const auto& g : gs) any = any && !g.empty();
          while (any) {
            std::vector<ThetaMap> key;
            for (std::size_t q = 0; q < gs.size(); ++q) key.push_back(thetacell::compose(gs[q][idx[q]], sigma));
            degenerate.insert(std::move(key));
            int q = static_cast<int>(gs.size()) - 1;
            while (q >= 0 && idx[q] + 1 == gs[q].size()) idx[q--] = 0;
            if (q < 0) break;
            ++idx[q];
          }
        }
      }
      out[tname + " <- " + thetacell::to_string(c, level)] = total - static_cast<long>(degenerate.size());
    }
  };
  auto rec = [&](auto&& self, std::size_t from, int left) -> void {
    if (!tuple.empty()) visit();
    if (left == 0) return;
    for (std::size_t t = from; t < objs.size(); ++t) {
      tuple.push_back(t);
      self(self, t, left - 1);
      tuple.pop_back();
    }
  };
  rec(rec, 0, arity);
  return out;
}

// Nondegenerate simplices of Delta^n x Delta^m outside
// Lambda^n_j x Delta^m u Delta^n x dDelta^m, by brute force.
inline std::multiset<std::pair<std::vector<int>, std::vector<int>>> brute_missing(int n, int j, int m) {
  std::multiset<std::pair<std::vector<int>, std::vector<int>>> out;
  for (int r = 0; r <= n + m; ++r)
    for (const auto& a : thetacell::enumerate_monotone(r, n))
      for (const auto& b : thetacell::enumerate_monotone(r, m)) {
        std::set<std::pair<int, int>> pts;
        for (int k = 0; k <= r; ++k) pts.insert({a(k), b(k)});
        if (static_cast<int>(pts.size()) != r + 1) continue;
        std::set<int> ia(a.values.begin(), a.values.end()), ib(b.values.begin(), b.values.end());
        ia.insert(j);
        if (static_cast<int>(ia.size()) == n + 1 && static_cast<int>(ib.size()) == m + 1) out.insert({a.values, b.values});
      }
  return out;
}

// Strictly increasing chains of r+1 subsets of a k-element set.
inline long cube_chains(int k, int r) {
  const int n = 1 << k;
  std::vector<long> ways(n, 1);
  for (int step = 0; step < r; ++step) {
    std::vector<long> next(n, 0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a != b && (a & b) == a) next[b] += ways[a];
    ways = next;
  }
  long total = 0;
  for (long w : ways) total += w;
  return total;
}

}  // namespace oracle
