// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "flatcover/cli.hpp"
#include "flatcover/error.hpp"
#include "flatcover/io.hpp"
#include "flatcover/theorems.hpp"

using namespace flatcover;

namespace {

constexpr std::uint64_t kCorpusSeed = 20240607;
constexpr int kCorpusSize = 200;
constexpr int kSamples = 100;

const std::string kData = FLATCOVER_TEST_DATA;
const std::string kGolden = FLATCOVER_GOLDEN_DIR;

struct Outcome {
  bool pass = true;
  std::string summary;
};

struct Corpus {
  std::vector<Instance> instances;
  int skipped = 0;
  double build_seconds = 0;
};

Corpus build_corpus() {
  const auto start = std::chrono::steady_clock::now();
  Corpus c;
  for (auto& data : random_corpus(kCorpusSeed, kCorpusSize)) {
    try {
      c.instances.push_back(Instance::build(std::move(data)));
    } catch (const CapExceeded&) {
      ++c.skipped;
    } catch (const PreconditionError&) {
      ++c.skipped;
    }
  }
  c.build_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return c;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome holonomy_image_suite(const Corpus& c) {
  const auto start = std::chrono::steady_clock::now();
  int held = 0;
  for (const auto& inst : c.instances) held += verify_induced_holonomy_image(inst).verdict == Verdict::holds;
  const double seconds =
      c.build_seconds + std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const int n = static_cast<int>(c.instances.size());
  std::ostringstream s;
  s << held << "/" << n << " hold, " << c.skipped << " incomplete, " << seconds << " s";
  return {held == n && n > 0 && seconds < 60.0, s.str()};
}

Outcome triviality_suite(const Corpus& c) {
  int held = 0, trivial = 0;
  for (const auto& inst : c.instances) {
    const VerificationReport r = is_induced_trivial(inst);
    held += r.verdict == Verdict::holds;
    trivial += *r.detail("trivial") == "yes";
  }
  const int n = static_cast<int>(c.instances.size());
  std::ostringstream s;
  s << held << "/" << n << " biconditionals agree, " << trivial << " trivial with product form";
  return {held == n && trivial > 0, s.str()};
}

Outcome functoriality_suite(const Corpus& c) {
  int held = 0;
  long words = 0;
  for (std::size_t i = 0; i < c.instances.size(); ++i) {
    const VerificationReport r = verify_functoriality(c.instances[i], kSamples, kCorpusSeed + i);
    held += r.verdict == Verdict::holds;
    words += std::stol(*r.detail("agreements"));
  }
  const int n = static_cast<int>(c.instances.size());
  std::ostringstream s;
  s << held << "/" << n << " instances, " << words << " words agree";
  return {held == n, s.str()};
}

Outcome bundle_covering_suite(const Corpus& c) {
  int held = 0;
  for (const auto& inst : c.instances) held += verify_induced_bundle_covering(inst).verdict == Verdict::holds;
  const int n = static_cast<int>(c.instances.size());
  return {held == n, std::to_string(held) + "/" + std::to_string(n) + " induced bundle maps are coverings"};
}

Outcome gated_suite(const Corpus& c) {
  using Check = std::function<VerificationReport(const Instance&)>;
  const std::vector<std::pair<const char*, Check>> checks{
      {"kernel-cover-leaf", [](const Instance& i) { return verify_kernel_cover_leaf(i); }},
      {"intermediate-cover-leaf", [](const Instance& i) { return verify_intermediate_cover_leaf(i); }},
      {"kernel-cover-total-space", [](const Instance& i) { return verify_kernel_cover_total_space(i); }},
      {"leaf-fundamental-group", [](const Instance& i) { return verify_leaf_fundamental_group(i); }}};
  Outcome out;
  std::ostringstream s;
  for (const auto& [name, check] : checks) {
    int held = 0, failed = 0;
    for (const auto& inst : c.instances) {
      const Verdict v = check(inst).verdict;
      held += v == Verdict::holds;
      failed += v == Verdict::fails;
    }
    if (failed > 0 || held < 20) out.pass = false;
    s << name << " " << held << " hold/" << failed << " fail; ";
  }
  out.summary = s.str();
  return out;
}

Outcome oracle_suite(const Corpus& c) {
  int eligible = 0, agreed = 0;
  for (const auto& inst : c.instances) {
    if (graph_diameter(inst.base()) > 3) continue;
    ++eligible;
    const OracleResult r = oracle_holonomy(inst.base(), inst.group(), inst.voltage(), 8);
    agreed += r.stabilized && r.group == inst.holonomy_image();
  }
  return {agreed == eligible && eligible > 0,
          std::to_string(agreed) + "/" + std::to_string(eligible) + " oracle runs stabilize and agree"};
}

Outcome structural_suite(const Corpus& c) {
  int components_ok = 0, rank_checked = 0, rank_ok = 0, leaf_ok = 0;
  for (const auto& inst : c.instances) {
    const DerivedBundle d = derived_bundle(inst.base(), inst.group(), inst.voltage());
    components_ok += d.component_count == inst.group().order() / static_cast<int>(inst.holonomy_image().size());
    if (inst.base().relators().empty()) {
      ++rank_checked;
      rank_ok += graph_rank(inst.cover().total) == inst.cover().degree * (inst.presentation().rank - 1) + 1;
    }
    const CosetAutomaton leaf = subgroup_of_cover(inst.base(), inst.tree(), holonomy_bundle(d));
    leaf_ok += automata_equal(leaf, inst.kernel());
  }
  const int n = static_cast<int>(c.instances.size());
  std::ostringstream s;
  s << "components " << components_ok << "/" << n << ", rank formula " << rank_ok << "/" << rank_checked
    << ", leaf subgroup = kernel " << leaf_ok << "/" << n;
  return {components_ok == n && rank_ok == rank_checked && leaf_ok == n, s.str()};
}

struct GoldenCase {
  std::vector<std::string> args;
  std::string file;
};

const std::vector<GoldenCase>& golden_cases() {
  static const std::vector<GoldenCase> cases{
      {{"holonomy", kData + "/wedge_s3_a3.json"}, "holonomy_wedge_s3.json"},
      {{"cover", kData + "/wedge_s3_a3.json"}, "cover_wedge_s3_a3.json"},
      {{"induce", kData + "/wedge_s3_a3.json"}, "induce_wedge_s3_a3.json"},
      {{"trivial", kData + "/wedge_s3_kernel.json"}, "trivial_wedge_s3_kernel.json"},
      {{"bundle", kData + "/wedge_s3_a3.json"}, "bundle_wedge_s3.json"},
      {{"verify", kData + "/wedge_s3_a3.json", "--seed", "7"}, "verify_wedge_s3_a3.json"},
      {{"verify", kData + "/wedge_s3_kernel.json", "--seed", "7"}, "verify_wedge_s3_kernel.json"},
      {{"export-dot", kData + "/wedge_s3_a3.json", "--what", "cover"}, "cover_wedge_s3_a3.dot"},
  };
  return cases;
}

Outcome regression_vector() {
  std::vector<std::string> problems;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  };
  const Instance a3 = Instance::build(load_instance(kData + "/wedge_s3_a3.json"));
  const GroupTable& g = a3.group();
  expect(a3.holonomy_image() == whole_group(g), "Im h = S3");
  expect(a3.kernel().state_count() == 6, "kernel index 6");
  expect(a3.cover().degree == 2, "A3 cover degree 2");
  expect(graph_rank(a3.cover().total) == 3, "A3 cover rank 3");
  const SubgroupSet alternating = subgroup_closure(g, std::vector<Element>{*g.find_label("(012)")});
  expect(induced_holonomy_image(a3) == alternating, "induced image A3");
  expect(restricted_holonomy_image(a3) == alternating, "h(H) = A3");

  const Instance ker = Instance::build(load_instance(kData + "/wedge_s3_kernel.json"));
  expect(*is_induced_trivial(ker).detail("trivial") == "yes", "kernel cover trivial");
  const VerificationReport leaf = verify_kernel_cover_leaf(ker);
  expect(leaf.verdict == Verdict::holds && *leaf.detail("composite_equals_kernel") == "yes",
         "composite subgroup = Ker h");
  const DerivedBundle d = derived_bundle(ker.base(), g, ker.voltage());
  expect(graph_rank(holonomy_bundle(d).total) == 7, "rank of leaf 7");

  int golden_ok = 0;
  for (const auto& gc : golden_cases()) {
    const CommandResult r = run_command(gc.args);
    const bool same = r.out == read_file(kGolden + "/" + gc.file);
    golden_ok += same;
    expect(same, "golden " + gc.file);
  }
  std::string summary = std::to_string(golden_ok) + "/" + std::to_string(golden_cases().size()) + " golden files match";
  for (const auto& p : problems) summary += "; mismatch: " + p;
  return {problems.empty(), summary};
}

Outcome negative_controls() {
  std::vector<std::string> problems;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  };
  const CommandResult nonflat = run_command({"holonomy", kData + "/torus_s3_nonflat.json"});
  expect(nonflat.exit_code == 2 && nonflat.err.find("product (021)") != std::string::npos, "flatness violation");

  const CommandResult cap = run_command({"cover", kData + "/torus_z4_words_a.json"});
  expect(cap.exit_code == 2 && cap.err.find("cap") != std::string::npos, "cap exceeded via cli");
  try {
    const BaseComplex t = load_instance(kData + "/torus_z4_words_a.json").base;
    const Presentation p = pi1_presentation(t, spanning_tree(t));
    const std::vector<FreeWord> a{{Letter{0, 1}}};
    todd_coxeter(p, a, 1000);
    expect(false, "cap exceeded in enumeration");
  } catch (const CapExceeded&) {
  }

  const CommandResult odd = run_command({"cover", kData + "/wedge_s3_transposition.json"});
  expect(odd.exit_code == 0 && Json::parse(odd.out)["regular"] == false, "non-regular cover flagged");
  const CommandResult gated = run_command({"verify", kData + "/wedge_s3_transposition.json", "--seed", "3"});
  expect(gated.exit_code == 0, "gate failures do not fail verify");
  const CommandResult strict =
      run_command({"verify", kData + "/wedge_s3_transposition.json", "--seed", "3", "--strict-gates"});
  expect(strict.exit_code == 2, "strict gates exit 2");
  const CommandResult missing = run_command({"holonomy", kData + "/wedge_s3_missing_voltage.json"});
  expect(missing.exit_code == 2 && missing.err.find("edge b") != std::string::npos, "missing voltage named");

  std::string summary = problems.empty() ? "flatness, cap, regularity and exit codes as specified" : "";
  for (const auto& p : problems) summary += "failed: " + p + "; ";
  return {problems.empty(), summary};
}

}  // namespace

int main() {
  const Corpus corpus = build_corpus();
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"induced holonomy image on random corpus", [&] { return holonomy_image_suite(corpus); }},
      {"triviality biconditional and product form", [&] { return triviality_suite(corpus); }},
      {"functoriality on sampled closed words", [&] { return functoriality_suite(corpus); }},
      {"induced bundle map is a covering", [&] { return bundle_covering_suite(corpus); }},
      {"gated holonomy-bundle claims", [&] { return gated_suite(corpus); }},
      {"brute-force oracle equivalence", [&] { return oracle_suite(corpus); }},
      {"structural identities", [&] { return structural_suite(corpus); }},
      {"running-example regression vector", regression_vector},
      {"negative controls", negative_controls},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("criterion %zu: %s - %s (%s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.summary.c_str());
  }
  return failures == 0 ? 0 : 1;
}
