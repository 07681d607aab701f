#pragma once

#include <memory>
#include <string>
#include <vector>

#include "thetacell/lifting.hpp"
#include "thetacell/presheaf.hpp"

namespace thetacell {

enum class ResolutionFlavor { R, L, Cyl, E };

const char* to_string(ResolutionFlavor f);
ResolutionFlavor parse_flavor(const std::string& s);

// Degree n of a cosimplicial resolution of [1](c), as a bipointed presheaf.
// R and L collapse the face Delta^n of [n+1](*,...,*,c), resp.
// [n+1](c,*,...,*); Cyl and E collapse the two ends of Delta^n x [1](c),
// resp. E^n x [1](c), onto the endpoints of [1](c).
struct Resolution {
  ResolutionFlavor flavor = ResolutionFlavor::R;
  ThetaObj c;
  int n = 0;
  Pushout quotient;    // from_b is the quotient map out of the uncollapsed object
  ThetaObj cone;       // [n+1](*,...,*,c) or [n+1](c,*,...,*); unused for Cyl and E
  Elem source = 0;     // distinguished vertices, elements at [0]
  Elem target = 0;

  const FinPresheaf& realized() const { return quotient.object; }
};

// cat is the Theta truncation the result lives on; c is a label, one level
// down.
Resolution resolution(ResolutionFlavor flavor, const ThetaObj& c, int n, std::shared_ptr<const ThetaCategory> cat);

// The structure map C^m -> C^n for theta : [m] -> [n]; from.n = m, to.n = n.
PresheafMap resolution_map(const Resolution& from, const Resolution& to, const MonotoneMap& theta);

// The filtration [0,1](c) = X_0 c X_1 c ... of C^n_L(c), where X_k adds the
// simplices [0,1,i_1,...,i_k](c,*,...,*) by pushouts of the maps h^{k+1}_1.
CellCertificate resolution_L_filtration(const ThetaObj& c, int n, std::shared_ptr<const ThetaCategory> cat);

// Level n of Map_X(x,y) at c, via the R resolution: elements of X at
// [n+1](*,...,*,c) whose face on {0,...,n} is the degenerate simplex at x
// and whose last vertex is y. Throws TruncationError if that object is
// outside the truncation of X.
std::vector<Elem> map_object(const FinPresheaf& x, Elem from, Elem to, const ThetaObj& c, int n);

}  // namespace thetacell
