#pragma once

#include "thetacell/lifting.hpp"

namespace thetacell {

// Moves a certificate living in representable(s) along a mono phi : s -> t.
std::vector<CertStep> translate_steps(const std::vector<CertStep>& steps, ObjId s, ObjId t, ArrowId phi,
                                      const ThetaCategory& cat);

// Certificate exhibiting the spine inclusion V_Sp(c) -> [n](c) as a relative
// J-cell complex, following the induction over the outer faces d_0 and d_n;
// the final stage V_{d_0 u d_n}(c) -> [n](c) is an inner horn decomposition
// of d_0 u d_n -> Delta^n tensored with cell structures of the labels.
CertificateSearch spine_anodyne_certificate(const ThetaObj& t, std::shared_ptr<const ThetaCategory> cat,
                                            long budget = 5'000'000);

}  // namespace thetacell
