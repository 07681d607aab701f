#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "thetacell/cli.hpp"
#include "thetacell/serialize.hpp"
#include "lifting_oracle.hpp"

using namespace thetacell;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "thetacell");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "thetacell_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

struct Golden {
  const char* name;
  std::vector<std::string> args;
};

// Regenerate with THETACELL_UPDATE_GOLDEN=1.
const std::vector<Golden>& goldens() {
  static const std::vector<Golden> g = {
      {"objects_t2_d2", {"objects", "--theta", "2", "--dim", "2"}},
      {"objects_t1_d3", {"objects", "--theta", "1", "--dim", "3"}},
      {"hom_1_2", {"hom", "--theta", "1", "--source", "[1]", "--target", "[2]"}},
      {"hom_edge_globe", {"hom", "--source", "[1]([0])", "--target", "[1]([1])"}},
      {"boundary_2_10", {"boundary", "--object", "[2]([1],[0])"}},
      {"horn_3_1", {"horn", "--theta", "1", "--object", "[3]", "--k", "1"}},
      {"spine_2_00", {"spine", "--object", "[2]([0],[0])"}},
      {"generators_t2_d2", {"generators", "--dim", "2"}},
      {"corner_2_10_empty", {"corner", "--object", "[2]([1],[0])", "--k", "1", "--legs", "empty,bd"}},
      {"realize_summary", {"realize", "--labels", "[1],bd:[1]", "--summary"}},
      {"pointwise_2", {"pointwise-check", "--theta", "2", "--n", "2", "--labels", "[1],[0]", "--c", "[1]"}},
      {"kstar_11", {"kstar", "--object", "[1]([1])", "--c", "[1]", "--dim", "3"}},
      {"necklace_3", {"necklace", "--object", "[3]"}},
      {"mapspace_2", {"mapspace", "--object", "[2]"}},
      {"resolution_L_1", {"resolution", "--flavor", "L", "--c", "[0]", "--n", "1"}},
      {"certify_spine_2_10", {"certify-spine", "--object", "[2]([1],[0])"}},
      {"certify_resolution_1", {"certify-resolution", "--c", "[0]", "--n", "1"}},
      {"certify_horn_product_2_1_1", {"certify-horn-product", "--n", "2", "--j", "1", "--m", "1"}},
      {"fibrant_rep", {"fibrant", "--object", "[2]([0],[0])", "--up-to", "2"}},
      {"cr_check_t1", {"cr-check", "--theta", "1", "--dim", "3"}},
  };
  return g;
}

}  // namespace

TEST_CASE("golden outputs") {
  const bool update = std::getenv("THETACELL_UPDATE_GOLDEN") != nullptr;
  for (const auto& g : goldens()) {
    CAPTURE(g.name);
    Run r = run(g.args);
    CAPTURE(r.err);
    CHECK(r.code == 0);
    fs::path file = fs::path(GOLDEN_DIR) / (std::string(g.name) + ".json");
    if (update) {
      write_file(file, r.out);
      continue;
    }
    REQUIRE(fs::exists(file));
    CHECK(r.out == slurp(file));
  }
}

TEST_CASE("output is reproducible and canonical") {
  for (const auto& g : goldens()) {
    CAPTURE(g.name);
    Run a = run(g.args), b = run(g.args);
    CHECK(a.out == b.out);
    Json j = Json::parse(a.out);
    CHECK(j.at("schema") == kSchema);
    CHECK(dump(j) == a.out);
  }
}

TEST_CASE("objects lists four objects of dimension at most two") {
  Run r = run({"objects", "--theta", "2", "--dim", "2"});
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out).at("count") == 4);
}

TEST_CASE("pointwise check passes") {
  Run r = run({"pointwise-check", "--theta", "2", "--n", "2", "--labels", "[1],[0]", "--c", "[1]"});
  CHECK(r.code == 0);
  for (const auto& p : Json::parse(r.out).at("pairs")) CHECK(p.at("ok") == true);
}

TEST_CASE("verify accepts a certificate and rejects corruptions") {
  Run c = run({"certify-spine", "--object", "[3]([0],[1],[0])", "--dim", "4"});
  REQUIRE(c.code == 0);
  Json cert = Json::parse(c.out).at("certificate");
  fs::path good = scratch("good.json");
  write_file(good, dump(cert));
  CHECK(run({"verify", good.string()}).code == 0);
  // The whole report of a certify command is accepted too.
  fs::path report = scratch("report.json");
  write_file(report, c.out);
  CHECK(run({"verify", report.string()}).code == 0);

  Json dropped = cert;
  dropped["steps"].erase(dropped["steps"].size() - 1);
  fs::path bad = scratch("dropped.json");
  write_file(bad, dump(dropped));
  Run r = run({"verify", bad.string()});
  CHECK(r.code == 1);
  CHECK(Json::parse(r.out).contains("failure"));

  Json doubled = cert;
  doubled["steps"].push_back(cert["steps"].back());
  write_file(bad, dump(doubled));
  r = run({"verify", bad.string()});
  CHECK(r.code == 1);
  CHECK(Json::parse(r.out).at("failure").at("step") == cert["steps"].size());

  write_file(bad, "{\"ambient\": ");
  CHECK(run({"verify", bad.string()}).code == 3);
}

TEST_CASE("usage errors exit with 3") {
  CHECK(run({}).code == 3);
  CHECK(run({"bogus"}).code == 3);
  CHECK(run({"objects", "--nope"}).code == 3);
  CHECK(run({"horn", "--object", "[2]([0],[0])", "--k", "0"}).code == 3);
  CHECK(run({"hom", "--source", "[1](", "--target", "[0]"}).code == 3);
  CHECK(run({"pointwise-check", "--n", "3", "--labels", "[1],[0]", "--c", "[1]"}).code == 3);
  CHECK(run({"verify", scratch("missing-file.json").string()}).code == 3);
}

TEST_CASE("budget exhaustion exits with 2") {
  Run r = run({"fibrant", "--object", "[2]([1],[0])", "--up-to", "3", "--budget", "3"});
  CHECK(r.code == 2);
  CHECK(Json::parse(r.out).at("holds") == "unknown");
}

TEST_CASE("lift reads a serialized problem") {
  auto corpus = oracle::lifting_corpus(3u, 12);
  for (const auto& [label, prob] : corpus) {
    CAPTURE(label);
    fs::path file = scratch("problem.json");
    write_file(file, dump(lifting_problem_to_json(prob)));
    Run r = run({"lift", "--input", file.string()});
    CHECK(r.code == 0);
    Json j = Json::parse(r.out);
    long naive = oracle::naive_lift_count(prob);
    CHECK((j.at("verdict") == "found") == (naive > 0));
  }
}

TEST_CASE("isofib reads a serialized map") {
  auto d = theta_category(1, 3);
  auto e1 = e_simplex(1, d);
  fs::path file = scratch("map.json");
  write_file(file, dump(map_to_json(identity_morphism(e1))));
  Run r = run({"isofib", "--input", file.string(), "--up-to", "2"});
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out).at("holds") == "yes");

  auto edge = representable(d, d->object_id(ThetaObj::simplex(1)));
  for (const auto& m : oracle::all_maps(edge, e1, 100))
    if (is_mono(m)) {
      write_file(file, dump(map_to_json(m)));
      break;
    }
  r = run({"isofib", "--input", file.string(), "--up-to", "2"});
  CHECK(r.code == 1);
  CHECK(Json::parse(r.out).at("holds") == "no");
}

TEST_CASE("emitted artifacts survive a round trip") {
  Json k = Json::parse(run({"kstar", "--object", "[1]([1])", "--c", "[1]", "--dim", "3"}).out);
  std::string text = dump(k.at("presheaf"));
  CHECK(dump(presheaf_to_json(presheaf_from_json(Json::parse(text)))) == text);
  Json c = Json::parse(run({"certify-spine", "--object", "[2]([1],[0])"}).out);
  text = dump(c.at("certificate"));
  CHECK(dump(certificate_to_json(certificate_from_json(Json::parse(text)))) == text);
}
