#include "thetacell/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <sstream>

#include "thetacell/certificates.hpp"
#include "thetacell/error.hpp"
#include "thetacell/horn_filtration.hpp"
#include "thetacell/necklace.hpp"
#include "thetacell/resolution.hpp"
#include "thetacell/serialize.hpp"

namespace thetacell {

namespace {

constexpr int kOk = 0, kFailed = 1, kBudget = 2, kUsage = 3;

// Splits "[1],[2]([0]),*" at top-level commas.
std::vector<std::string> split_top(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '[' || ch == '(') ++depth;
    if (ch == ']' || ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// "[1]" is a full label; "bd:[1]" its boundary and "empty:[1]" the empty one.
Label parse_label(const std::string& s, int level) {
  auto colon = s.find(':');
  if (colon == std::string::npos) return Label::full(parse_object(s, level));
  const std::string kind = s.substr(0, colon);
  ThetaObj c = parse_object(s.substr(colon + 1), level);
  if (kind == "bd") return Label::boundary(c);
  if (kind == "empty") return Label::empty(c);
  if (kind == "full") return Label::full(c);
  throw UsageError("unknown label kind '" + kind + "' (expected full, bd or empty)");
}

std::vector<Label> parse_labels(const std::string& s, int level) {
  std::vector<Label> out;
  for (const auto& part : split_top(s)) out.push_back(parse_label(part, level));
  return out;
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

Json header(const std::string& command) { return {{"schema", kSchema}, {"command", command}}; }

Json cell_list(const Subobject& s, const ThetaCategory& cat, ObjId t) {
  Json cells = Json::array();
  for (ObjId o : cat.objects_by_dim())
    for (Elem e : s.members(o)) {
      ArrowId f = cat.hom(o, t)[e];
      if (cat.is_plus(f)) cells.push_back(cat.object_name(o) + " " + cat.arrow_name(f));
    }
  return cells;
}

struct Common {
  int level = 2;
  int dim = -1;
  long budget = 5'000'000;
};

std::shared_ptr<const ThetaCategory> category_for(const Common& c, int needed) {
  return theta_category(c.level, std::max(c.dim, needed));
}

// A presheaf from --input or the representable on --object.
FinPresheaf load_presheaf(const std::string& input, const std::string& object, const Common& c, int needed = 0) {
  if (!input.empty()) return presheaf_from_json(read_json(input));
  if (object.empty()) throw UsageError("give --input or --object");
  ThetaObj t = parse_object(object, c.level);
  auto cat = category_for(c, std::max(needed, dim(t)));
  return representable(cat, cat->object_id(t));
}

Json certificate_report(const CellCertificate& cert) {
  CertificateCheck chk = verify_certificate(cert);
  Json j = {{"verified", chk.ok}, {"steps", cert.steps.size()}, {"certificate", certificate_to_json(cert)}};
  if (!chk.ok) j["failure"] = {{"step", chk.failed_step}, {"reason", chk.reason}};
  return j;
}

class Cli {
 public:
  Cli(std::ostream& out) : out_(out) {}

  int exit_code = kOk;

  void emit(const Json& j) { out_ << dump(j); }

  void add_all(CLI::App& app) {
    add_objects(app);
    add_hom(app);
    add_boundary(app);
    add_horn(app);
    add_spine(app);
    add_generators(app);
    add_corner(app);
    add_realize(app);
    add_pointwise(app);
    add_kstar(app);
    add_necklace(app);
    add_mapspace(app);
    add_resolution(app);
    add_certify_spine(app);
    add_certify_resolution(app);
    add_certify_horn(app);
    add_lift(app);
    add_fibrant(app);
    add_isofib(app);
    add_verify(app);
    add_cr_check(app);
  }

 private:
  std::ostream& out_;
  Common common_;
  std::string object_, input_, labels_, c_, flavor_ = "R", legs_;
  int n_ = 0, k_ = -1, j_ = 1, m_ = 0, i_ = -1, to_ = -1, from_ = 0, beads_ = 3, degree_ = 3, arity_ = 2, max_level_ = 3;
  bool summary_ = false;

  CLI::App* sub(CLI::App& app, const std::string& name, const std::string& help, bool with_dim = true) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("--theta", common_.level, "Theta level")->capture_default_str();
    if (with_dim) s->add_option("--dim", common_.dim, "truncation bound");
    s->add_option("--budget", common_.budget, "search budget")->capture_default_str();
    return s;
  }

  void add_objects(CLI::App& app) {
    auto* s = sub(app, "objects", "list the objects of a truncation");
    s->callback([this] {
      if (common_.dim < 0) throw UsageError("objects needs --dim");
      auto objs = enumerate_objects(common_.level, common_.dim);
      Json j = header("objects");
      j["objects"] = Json::array();
      for (const auto& o : objs) j["objects"].push_back({{"name", to_string(o, common_.level)}, {"dim", dim(o)}});
      j["count"] = objs.size();
      emit(j);
    });
  }

  void add_hom(CLI::App& app) {
    auto* s = sub(app, "hom", "list the maps between two objects");
    s->add_option("--source", object_, "source object")->required();
    s->add_option("--target", c_, "target object")->required();
    s->callback([this] {
      ThetaObj a = parse_object(object_, common_.level), b = parse_object(c_, common_.level);
      auto maps = hom(a, b);
      Json j = header("hom");
      j["source"] = to_string(a, common_.level);
      j["target"] = to_string(b, common_.level);
      j["maps"] = Json::array();
      for (const auto& f : maps) {
        auto r = reedy_factor(f, a, b);
        const char* kind = is_minus(f, a, b) ? "degeneracy" : is_plus(f, a, b) ? "face" : "mixed";
        j["maps"].push_back({{"map", to_string(f, a, b)}, {"kind", r.middle == a && r.middle == b ? "identity" : kind}});
      }
      j["count"] = maps.size();
      emit(j);
    });
  }

  void add_boundary(CLI::App& app) {
    auto* s = sub(app, "boundary", "boundary of a representable, checked against its skeleton");
    s->add_option("--object", object_, "object")->required();
    s->callback([this] {
      ThetaObj t = parse_object(object_, common_.level);
      auto cat = category_for(common_, dim(t));
      ObjId to = cat->object_id(t);
      Subobject b = theta_boundary(t, cat);
      Subobject sk = skeleton(b.ambient(), dim(t) - 1);
      bool ok = b == sk;
      Json j = header("boundary");
      j["object"] = to_string(t, common_.level);
      j["dim"] = dim(t);
      j["cells"] = cell_list(b, *cat, to);
      j["matches_skeleton"] = ok;
      emit(j);
      if (!ok) exit_code = kFailed;
    });
  }

  void add_horn(CLI::App& app) {
    auto* s = sub(app, "horn", "inner horn of a representable");
    s->add_option("--object", object_, "object")->required();
    s->add_option("--k", k_, "horn index, 0 < k < n")->required();
    s->callback([this] {
      ThetaObj t = parse_object(object_, common_.level);
      auto cat = category_for(common_, dim(t));
      Subobject h = theta_horn(t, k_, cat);
      Json j = header("horn");
      j["object"] = to_string(t, common_.level);
      j["k"] = k_;
      j["cells"] = cell_list(h, *cat, cat->object_id(t));
      emit(j);
    });
  }

  void add_spine(CLI::App& app) {
    auto* s = sub(app, "spine", "spine of a representable");
    s->add_option("--object", object_, "object")->required();
    s->callback([this] {
      ThetaObj t = parse_object(object_, common_.level);
      auto cat = category_for(common_, dim(t));
      Json j = header("spine");
      j["object"] = to_string(t, common_.level);
      j["cells"] = cell_list(theta_spine(t, cat), *cat, cat->object_id(t));
      emit(j);
    });
  }

  void add_generators(CLI::App& app) {
    auto* s = sub(app, "generators", "boundary inclusions and generating anodynes up to a dimension");
    s->callback([this] {
      if (common_.dim < 0) throw UsageError("generators needs --dim");
      auto cat = theta_category(common_.level, common_.dim + 1);
      GeneratorSets g = generators(cat, common_.dim);
      Json j = header("generators");
      j["boundaries"] = Json::array();
      j["inner_horns"] = Json::array();
      for (const auto& x : g.boundaries) j["boundaries"].push_back(x.id.to_string(common_.level));
      for (const auto& x : g.inner_horns) j["inner_horns"].push_back(x.id.to_string(common_.level));
      emit(j);
    });
  }

  void add_corner(CLI::App& app) {
    auto* s = sub(app, "corner", "domain of a corner map");
    s->add_option("--object", object_, "target object [n](c_1,...,c_n)")->required();
    s->add_option("--k", k_, "inner horn index; omit for the boundary of Delta^n");
    s->add_option("--legs", legs_, "comma separated bd/empty per label (default bd)");
    s->callback([this] {
      ThetaObj t = parse_object(object_, common_.level);
      auto cat = category_for(common_, dim(t));
      std::vector<std::string> legs = split_top(legs_);
      if (legs.empty()) legs.assign(t.n(), "bd");
      if (static_cast<int>(legs.size()) != t.n()) throw UsageError("--legs needs one entry per label");
      GeneratorId g{t.n(), k_, t.labels, {}};
      for (const auto& l : legs) {
        if (l == "bd") g.legs.push_back(LegKind::Boundary);
        else if (l == "empty") g.legs.push_back(LegKind::Empty);
        else throw UsageError("unknown leg '" + l + "'");
      }
      if (k_ >= 0 && (k_ < 1 || k_ >= t.n())) throw UsageError("only inner horns: need 0 < k < n");
      Generator gen = make_generator(g, cat);
      Json j = header("corner");
      j["generator"] = g.to_string(common_.level);
      j["domain_cells"] = cell_list(gen.domain, *cat, gen.target_object);
      j["missing_cells"] = cell_list(gen.domain.complement(), *cat, gen.target_object);
      emit(j);
    });
  }

  void add_realize(CLI::App& app) {
    auto* s = sub(app, "realize", "coherent realization of a labeled simplex");
    s->add_option("--labels", labels_, "labels, e.g. [1],bd:[1],[0]")->required();
    s->add_flag("--summary", summary_, "print hom sizes instead of the full category");
    s->callback([this] {
      auto ls = parse_labels(labels_, common_.level - 1);
      int need = static_cast<int>(ls.size());
      for (const auto& l : ls) need = std::max(need, dim(l.carrier));
      auto base = enrichment_base(common_.level, std::max(common_.dim, need));
      EnrichedCat d = realize_labeled_simplex(ls, base);
      LawReport laws = check_enriched_laws(d);
      Json j = header("realize");
      j["laws"] = {{"ok", laws.ok}, {"checked", laws.checked}};
      if (!laws.ok) j["laws"]["failure"] = laws.failure;
      if (summary_) {
        j["homs"] = Json::array();
        for (int x = 0; x < d.objects; ++x)
          for (int y = x + 1; y < d.objects; ++y)
            j["homs"].push_back({{"from", x},
                                 {"to", y},
                                 {"elements", d.hom(x, y).total_size()},
                                 {"nondegenerate", nondegenerate_cells(d.hom(x, y)).size()}});
      } else {
        j["category"] = enriched_to_json(d);
      }
      emit(j);
      if (!laws.ok) exit_code = kFailed;
    });
  }

  void add_pointwise(CLI::App& app) {
    auto* s = sub(app, "pointwise-check", "compare the realization with the rigidification pointwise", false);
    s->add_option("--n", n_, "number of labels (checked against --labels)")->required();
    s->add_option("--labels", labels_, "labels")->required();
    s->add_option("--c", c_, "object of the label category")->required();
    s->add_option("--i", i_, "first object (default: all pairs)");
    s->add_option("--j", to_, "second object");
    s->add_option("--max-level", max_level_, "simplicial levels checked")->capture_default_str();
    s->callback([this] {
      auto ls = parse_labels(labels_, common_.level - 1);
      if (static_cast<int>(ls.size()) != n_) throw UsageError("--n does not match the number of labels");
      ThetaObj c = parse_object(c_, common_.level - 1);
      std::vector<std::pair<int, int>> pairs;
      if (i_ >= 0) pairs.push_back({i_, to_});
      else
        for (int a = 0; a < n_; ++a)
          for (int b = a + 1; b <= n_; ++b) pairs.push_back({a, b});
      Json j = header("pointwise-check");
      j["pairs"] = Json::array();
      bool ok = true;
      for (auto [a, b] : pairs) {
        PointwiseReport r = pointwise_compare(ls, common_.level, c, a, b, max_level_);
        Json pj = {{"i", a}, {"j", b}, {"ok", r.ok}, {"q_counts", r.q_counts},
                   {"necklace_counts", r.necklace_counts}, {"arrows_checked", r.arrows_checked}};
        if (!r.ok) pj["failure"] = r.failure;
        ok = ok && r.ok;
        j["pairs"].push_back(pj);
      }
      j["result"] = ok ? "pass" : "fail";
      emit(j);
      if (!ok) exit_code = kFailed;
    });
  }

  void add_kstar(CLI::App& app) {
    auto* s = sub(app, "kstar", "the simplicial set p -> X([p](c,...,c))");
    s->add_option("--input", input_, "presheaf file");
    s->add_option("--object", object_, "use the representable on this object");
    s->add_option("--c", c_, "label object")->required();
    s->callback([this] {
      FinPresheaf x = load_presheaf(input_, object_, common_);
      auto cat = std::dynamic_pointer_cast<const ThetaCategory>(x.base_ptr());
      if (!cat) throw UsageError("kstar needs a presheaf on a Theta truncation");
      FinPresheaf k = k_star(x, parse_object(c_, cat->level() - 1));
      Json j = header("kstar");
      j["levels"] = Json::array();
      for (ObjId o = 0; o < k.base().object_count(); ++o) j["levels"].push_back(k.size(o));
      j["presheaf"] = presheaf_to_json(k);
      emit(j);
    });
  }

  void add_necklace_options(CLI::App* s) {
    s->add_option("--input", input_, "simplicial set file");
    s->add_option("--object", object_, "use Delta^n for this object of Theta_1, e.g. [2]");
    s->add_option("--from", from_, "first vertex")->capture_default_str();
    s->add_option("--to", to_, "last vertex (default: the last vertex of --object)");
    s->add_option("--max-beads", beads_, "bead budget")->capture_default_str();
  }

  FinPresheaf necklace_source() {
    Common c = common_;
    c.level = 1;
    FinPresheaf x = load_presheaf(input_, object_, c);
    if (to_ < 0) {
      if (object_.empty()) throw UsageError("give --to");
      to_ = parse_object(object_, 1).n();
    }
    return x;
  }

  void add_necklace(CLI::App& app) {
    auto* s = sub(app, "necklace", "totally nondegenerate necklace maps between two vertices");
    add_necklace_options(s);
    s->callback([this] {
      FinPresheaf x = necklace_source();
      auto maps = all_necklace_maps(x, from_, to_, beads_, true);
      Json j = header("necklace");
      j["maps"] = Json::array();
      for (const auto& m : maps) j["maps"].push_back({{"shape", m.shape.to_string()}, {"beads", m.beads}});
      j["count"] = maps.size();
      emit(j);
    });
  }

  void add_mapspace(CLI::App& app) {
    auto* s = sub(app, "mapspace", "truncated nerve of the necklace category");
    add_necklace_options(s);
    s->add_option("--degree", degree_, "simplicial truncation")->capture_default_str();
    s->callback([this] {
      FinPresheaf x = necklace_source();
      NecklaceSpace sp = nec_mapping_space(x, from_, to_, beads_, degree_);
      Json j = header("mapspace");
      j["objects"] = sp.objects.size();
      j["morphisms"] = sp.morphisms;
      j["components"] = sp.components;
      j["final"] = sp.final;
      j["levels"] = Json::array();
      for (ObjId o = 0; o < sp.nerve.base().object_count(); ++o) j["levels"].push_back(sp.nerve.size(o));
      emit(j);
    });
  }

  void add_resolution(CLI::App& app) {
    auto* s = sub(app, "resolution", "degree n of a cosimplicial resolution of [1](c)");
    s->add_option("--flavor", flavor_, "R, L, cyl or E")->capture_default_str();
    s->add_option("--c", c_, "label object")->required();
    s->add_option("--n", n_, "cosimplicial degree")->required();
    s->callback([this] {
      ThetaObj c = parse_object(c_, common_.level - 1);
      auto cat = category_for(common_, n_ + 1 + dim(c));
      Resolution r = resolution(parse_flavor(flavor_), c, n_, cat);
      Json j = header("resolution");
      j["flavor"] = to_string(r.flavor);
      j["n"] = n_;
      j["vertices"] = r.realized().size(*cat->terminal());
      j["source"] = r.source;
      j["target"] = r.target;
      j["presheaf"] = presheaf_to_json(r.realized());
      emit(j);
    });
  }

  void add_certify_spine(CLI::App& app) {
    auto* s = sub(app, "certify-spine", "certificate for a spine inclusion");
    s->add_option("--object", object_, "object")->required();
    s->callback([this] {
      ThetaObj t = parse_object(object_, common_.level);
      auto cat = category_for(common_, dim(t));
      CertificateSearch cs = spine_anodyne_certificate(t, cat, common_.budget);
      Json j = header("certify-spine");
      j["verdict"] = to_string(cs.verdict);
      if (cs.certificate) {
        Json rep = certificate_report(*cs.certificate);
        j.update(rep);
        if (!rep["verified"].get<bool>()) exit_code = kFailed;
      } else {
        exit_code = cs.verdict == Verdict::BudgetExhausted ? kBudget : kFailed;
        j["note"] = "no finite certificate found; this proves nothing about membership";
      }
      emit(j);
    });
  }

  void add_certify_resolution(CLI::App& app) {
    auto* s = sub(app, "certify-resolution", "filtration certificate of [1](c) -> C^n_L(c)");
    s->add_option("--c", c_, "label object")->required();
    s->add_option("--n", n_, "cosimplicial degree")->required();
    s->callback([this] {
      ThetaObj c = parse_object(c_, common_.level - 1);
      auto cat = category_for(common_, n_ + 1 + dim(c));
      Json j = header("certify-resolution");
      Json rep = certificate_report(resolution_L_filtration(c, n_, cat));
      j.update(rep);
      emit(j);
      if (!rep["verified"].get<bool>()) exit_code = kFailed;
    });
  }

  void add_certify_horn(CLI::App& app) {
    auto* s = sub(app, "certify-horn-product", "inner horn filtration of Lambda^n_j x Delta^m", false);
    s->add_option("--n", n_, "horn dimension")->required();
    s->add_option("--j", j_, "horn index")->required();
    s->add_option("--m", m_, "second factor")->required();
    s->callback([this] {
      HornFiltration h = horn_product_filtration(n_, j_, m_, common_.budget);
      Json j = header("certify-horn-product");
      j["filtration"] = Json::array();
      for (const auto& st : h.steps)
        j["filtration"].push_back(
            {{"r", st.r}, {"ell", st.ell}, {"first", st.first.to_string()}, {"second", st.second.to_string()}});
      Json rep = certificate_report(to_certificate(h));
      j.update(rep);
      emit(j);
      if (!rep["verified"].get<bool>()) exit_code = kFailed;
    });
  }

  void add_lift(CLI::App& app) {
    auto* s = sub(app, "lift", "solve a lifting problem", false);
    s->add_option("--input", input_, "lifting problem file")->required();
    s->callback([this] {
      LiftingProblem p = lifting_problem_from_json(read_json(input_));
      LiftResult r = find_lift(p, common_.budget);
      Json j = header("lift");
      j["verdict"] = to_string(r.verdict);
      j["trials"] = r.trials;
      if (r.lift) j["lift"] = map_to_json(*r.lift)["components"];
      emit(j);
      if (r.verdict == Verdict::BudgetExhausted) exit_code = kBudget;
    });
  }

  void add_fibrant(CLI::App& app) {
    auto* s = sub(app, "fibrant", "lifting against generating anodynes up to a dimension");
    s->add_option("--input", input_, "presheaf file");
    s->add_option("--object", object_, "use the representable on this object");
    s->add_option("--up-to", degree_, "generator dimension")->required();
    s->callback([this] {
      FinPresheaf x = load_presheaf(input_, object_, common_, degree_ + 1);
      FibrancyReport r = is_formal_quasicategory(x, degree_, common_.budget);
      emit(fibrancy_json("fibrant", r));
      set_outcome(r.holds);
    });
  }

  void add_isofib(CLI::App& app) {
    auto* s = sub(app, "isofib", "lifting against the endpoint inclusion into E^1", false);
    s->add_option("--input", input_, "map file")->required();
    s->add_option("--up-to", degree_, "truncation")->required();
    s->callback([this] {
      PresheafMap p = map_from_json(read_json(input_));
      FibrancyReport r = isofibration_check(p, degree_, common_.budget);
      emit(fibrancy_json("isofib", r));
      set_outcome(r.holds);
    });
  }

  Json fibrancy_json(const std::string& cmd, const FibrancyReport& r) {
    Json j = header(cmd);
    j["holds"] = to_string(r.holds);
    j["up_to_dim"] = r.up_to_dim;
    j["truncated"] = r.truncated;
    j["horns_checked"] = r.horns_checked;
    if (!r.counterexample.empty()) j["counterexample"] = r.counterexample;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
  }

  void set_outcome(Outcome o) {
    if (o == Outcome::No) exit_code = kFailed;
    if (o == Outcome::Unknown) exit_code = kBudget;
  }

  void add_verify(CLI::App& app) {
    auto* s = sub(app, "verify", "check a serialized certificate", false);
    s->add_option("input", input_, "certificate file, or the output of a certify command")->required();
    s->callback([this] {
      Json doc = read_json(input_);
      if (doc.contains("certificate")) doc = doc.at("certificate");
      CellCertificate cert = certificate_from_json(doc);
      CertificateCheck chk = verify_certificate(cert);
      Json j = header("verify");
      j["verified"] = chk.ok;
      j["steps"] = cert.steps.size();
      if (!chk.ok) j["failure"] = {{"step", chk.failed_step}, {"reason", chk.reason}};
      j["note"] = "a finite certificate witnesses membership in the cell closure; its absence proves nothing";
      emit(j);
      if (!chk.ok) exit_code = kFailed;
    });
  }

  void add_cr_check(CLI::App& app) {
    auto* s = sub(app, "cr-check", "regular Cartesian Reedy axioms");
    s->add_option("--arity", arity_, "number of factors")->capture_default_str();
    s->callback([this] {
      if (common_.dim < 0) throw UsageError("cr-check needs --dim");
      CrReport r = check_cr_axioms(common_.level, common_.dim, arity_, common_.budget * 10);
      Json j = header("cr-check");
      j["ok"] = r.ok;
      j["truncated"] = r.truncated;
      j["tuples_checked"] = r.tuples_checked;
      j["nondegenerate_sections"] = r.nondegenerate_sections;
      j["violations"] = r.violations;
      emit(j);
      if (!r.ok) exit_code = kFailed;
      else if (r.truncated) exit_code = kBudget;
    });
  }
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Computations with cellular sets over Theta"};
  app.require_subcommand(1);
  Cli cli(out);
  cli.add_all(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  } catch (const BudgetExceeded& e) {
    err << "budget exhausted: " << e.what() << "\n";
    return kBudget;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const TruncationError& e) {
    err << "truncation error: " << e.what() << "\n";
    return kUsage;
  } catch (const IntegrityError& e) {
    err << "integrity failure: " << e.what() << "\n";
    return kFailed;
  } catch (const Json::exception& e) {
    err << "malformed input: " << e.what() << "\n";
    return kUsage;
  }
  return cli.exit_code;
}

}  // namespace thetacell
