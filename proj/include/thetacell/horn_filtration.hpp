#pragma once

#include <vector>

#include "thetacell/lifting.hpp"
#include "thetacell/simplex.hpp"

namespace thetacell {

// Attaching data of one inner horn pushout into Delta^n x Delta^m.
struct HornStep {
  int r = 0;
  int ell = 0;
  MonotoneMap first;   // [r] -> [n]
  MonotoneMap second;  // [r] -> [m]
};

// Steps extending Lambda^n_j x Delta^m u Delta^n x dDelta^m to the product.
struct HornFiltration {
  int n = 0, j = 0, m = 0;
  std::vector<HornStep> steps;
};

// Throws UsageError for outer j, BudgetExceeded if the search runs out.
HornFiltration horn_product_filtration(int n, int j, int m, long budget = 5'000'000);

// The filtration as a certificate inside representable([n]) x representable([m]).
CellCertificate to_certificate(const HornFiltration& h);

// Nondegenerate simplices of the product outside the corner domain, as
// (first, second) pairs in (dimension, lexicographic) order.
std::vector<std::pair<MonotoneMap, MonotoneMap>> missing_simplices(int n, int j, int m);

}  // namespace thetacell
