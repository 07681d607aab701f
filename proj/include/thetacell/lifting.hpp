#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "thetacell/intertwiner.hpp"
#include "thetacell/presheaf.hpp"

namespace thetacell {

enum class Verdict { Found, None, BudgetExhausted };
enum class Outcome { Yes, No, Unknown };

const char* to_string(Verdict v);
const char* to_string(Outcome o);

// Natural maps h : X -> Y agreeing with fixed_values on the subpresheaf
// `fixed` of X and, if `over` is set, with p h = base for p = *over.
struct ExtensionProblem {
  FinPresheaf source;
  Subobject fixed;
  std::vector<std::vector<Elem>> fixed_values;
  FinPresheaf target;
  const PresheafMap* over = nullptr;
  const PresheafMap* base = nullptr;
};

struct ExtensionOutcome {
  bool budget_exhausted = false;
  long found = 0;
  long trials = 0;
};

// Backtracking over the nondegenerate cells of X outside `fixed`, in
// increasing dimension. Each candidate is checked against its plus faces;
// degenerate cells follow from the Eilenberg-Zilber decomposition. The
// visitor returns false to stop.
ExtensionOutcome enumerate_extensions(const ExtensionProblem& prob, long budget,
                                      const std::function<bool(const PresheafMap&)>& visit);

// Square  A --top--> X
//         i|         |p
//          B -bottom-> Y
struct LiftingProblem {
  PresheafMap i;
  PresheafMap p;
  PresheafMap top;
  PresheafMap bottom;
};

struct LiftResult {
  Verdict verdict = Verdict::None;
  std::optional<PresheafMap> lift;
  long trials = 0;
};

LiftResult find_lift(const LiftingProblem& prob, long budget = 10'000'000);
// Number of lifts, or nullopt if the budget ran out.
std::optional<long> count_lifts(const LiftingProblem& prob, long budget = 10'000'000);

struct FibrancyReport {
  Outcome holds = Outcome::Unknown;
  int up_to_dim = 0;
  bool truncated = true;
  long horns_checked = 0;
  std::string counterexample;
  std::string note;
};

// Right lifting against the inner horn inclusions with target dim <= d;
// X must be truncated at d+1 or higher.
FibrancyReport is_formal_quasicategory(const FinPresheaf& x, int d, long budget = 50'000'000);

// Right lifting of p against the endpoint inclusion Delta^0 -> E^1,
// computed on the truncation at d, after checking that source and target
// are formal quasicategories up to d.
FibrancyReport isofibration_check(const PresheafMap& p, int d, long budget = 50'000'000);

// One step of a relative cell complex: a pushout of the generator along the
// map from the representable on its target picked out by `attach`.
struct CertStep {
  GeneratorId generator;
  Elem attach = 0;
};

// Exhibits source -> target (subpresheaves of ambient) as a composite of
// pushouts of generators.
struct CellCertificate {
  FinPresheaf ambient;
  Subobject source;
  Subobject target;
  std::vector<CertStep> steps;
};

struct CertificateCheck {
  bool ok = false;
  int failed_step = -1;
  std::string reason;
};

CertificateCheck verify_certificate(const CellCertificate& cert);

// Candidate generators for a cell with the given carrier.
using GeneratorFamily = std::function<std::vector<GeneratorId>(const ThetaObj&)>;

GeneratorFamily inner_horn_family();

struct CertificateSearch {
  Verdict verdict = Verdict::None;
  std::optional<CellCertificate> certificate;
  long trials = 0;
};

// Depth-first search for a certificate, attaching at each stage the first
// viable (cell, generator) pair in (dimension, object, element) order.
CertificateSearch search_certificate(const FinPresheaf& ambient, const Subobject& source, const Subobject& target,
                                     const GeneratorFamily& family, long budget = 5'000'000);

// Restriction of a map between Theta presheaves to a smaller truncation.
PresheafMap restrict_map(const PresheafMap& f, std::shared_ptr<const ThetaCategory> smaller);

}  // namespace thetacell
