#include "flatcover/cli.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "flatcover/error.hpp"
#include "flatcover/io.hpp"

namespace flatcover {

namespace {

struct Options {
  std::string path;
  std::size_t cap = kDefaultCellCap;
  std::optional<std::uint64_t> seed;
  int samples = 100;
  int all_random = 0;
  bool strict_gates = false;
  bool relaxed_gates = false;
  std::string what = "base";
};

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Instance load(const Options& o) { return Instance::build(load_instance(o.path), o.cap); }

Json images_json(const Instance& inst) {
  Json images = Json::object();
  for (int k = 0; k < inst.presentation().rank; ++k)
    images[inst.presentation().generator_names[k]] = inst.group().label(inst.holonomy().images[k]);
  return images;
}

CommandResult cmd_holonomy(const Options& o) {
  const Instance inst = load(o);
  Json j;
  j["instance"] = inst.name();
  j["group_order"] = inst.group().order();
  j["generator_images"] = images_json(inst);
  j["holonomy_image"] = format_subgroup(inst.group(), inst.holonomy_image());
  j["holonomy_order"] = inst.holonomy_image().size();
  j["kernel_index"] = inst.kernel().state_count();
  return {dump(j), "", 0};
}

CommandResult cmd_cover(const Options& o) {
  const Instance inst = load(o);
  Json j;
  j["instance"] = inst.name();
  j["method"] = to_string(inst.subgroup_method());
  j["degree"] = inst.cover().degree;
  j["vertices"] = inst.cover().total.vertex_count();
  j["edges"] = inst.cover().total.edge_count();
  j["relators"] = inst.cover().total.relators().size();
  j["rank"] = inst.cover_presentation().rank;
  j["regular"] = is_normal_subgroup(inst.subgroup());
  Json gens = Json::array();
  for (const auto& w : reidemeister_schreier(inst.subgroup())) gens.push_back(format_free_word(inst.presentation(), w));
  j["subgroup_generators"] = gens;
  return {dump(j), "", 0};
}

CommandResult cmd_induce(const Options& o) {
  const Instance inst = load(o);
  const SubgroupSet induced = induced_holonomy_image(inst);
  const SubgroupSet restricted = restricted_holonomy_image(inst);
  Json j;
  j["instance"] = inst.name();
  j["degree"] = inst.cover().degree;
  j["induced_image"] = format_subgroup(inst.group(), induced);
  j["restricted_image"] = format_subgroup(inst.group(), restricted);
  j["equal"] = induced == restricted;
  return {dump(j), "", induced == restricted ? 0 : 1};
}

CommandResult cmd_trivial(const Options& o) {
  const Instance inst = load(o);
  const VerificationReport r = is_induced_trivial(inst);
  Json j;
  j["instance"] = inst.name();
  j["trivial"] = *r.detail("trivial");
  j["report"] = report_to_json(r);
  return {dump(j), "", r.verdict == Verdict::holds ? 0 : 1};
}

CommandResult cmd_bundle(const Options& o) {
  const Instance inst = load(o);
  const DerivedBundle d = derived_bundle(inst.base(), inst.group(), inst.voltage());
  const BundleComponent n = holonomy_bundle(d);
  Json j;
  j["instance"] = inst.name();
  j["vertices"] = d.total.vertex_count();
  j["edges"] = d.total.edge_count();
  j["components"] = d.component_count;
  j["expected_components"] = inst.group().order() / static_cast<int>(inst.holonomy_image().size());
  j["holonomy_bundle_degree"] = n.degree;
  j["holonomy_bundle_vertices"] = n.total.vertex_count();
  j["holonomy_bundle_rank"] = graph_rank(n.total);
  Json fiber = Json::array();
  for (Element x : n.fiber_over_basepoint(inst.base())) fiber.push_back(inst.group().label(x));
  j["fiber_over_basepoint"] = fiber;
  return {dump(j), "", 0};
}

struct Tally {
  int holds = 0, fails = 0, not_met = 0;
  void add(const VerificationReport& r) {
    (r.verdict == Verdict::holds ? holds : r.verdict == Verdict::fails ? fails : not_met)++;
  }
  Json json() const { return {{"holds", holds}, {"fails", fails}, {"hypotheses_not_met", not_met}}; }
  int exit_code(bool strict) const { return fails ? 1 : (strict && not_met) ? 2 : 0; }
};

CommandResult cmd_verify(const Options& o) {
  if (!o.seed) throw InputError("--seed is required", "");
  if (o.samples < 1) throw InputError("--samples must be positive", "");
  const VerifyOptions options{o.relaxed_gates};
  Tally tally;
  Json j;
  j["seed"] = *o.seed;
  j["samples"] = o.samples;
  if (o.all_random > 0) {
    Json instances = Json::array();
    int skipped = 0;
    const auto corpus = random_corpus(*o.seed, o.all_random);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      Json entry;
      entry["name"] = corpus[i].name;
      try {
        const Instance inst = Instance::build(corpus[i], o.cap);
        Json reports = Json::array();
        for (const auto& r : verify_all(inst, o.samples, *o.seed + i, options)) {
          tally.add(r);
          reports.push_back(report_to_json(r));
        }
        entry["status"] = "verified";
        entry["reports"] = reports;
      } catch (const CapExceeded& e) {
        entry["status"] = "skipped";
        entry["reason"] = e.what();
        ++skipped;
      } catch (const PreconditionError& e) {
        entry["status"] = "skipped";
        entry["reason"] = e.what();
        ++skipped;
      }
      instances.push_back(entry);
    }
    j["count"] = o.all_random;
    j["skipped"] = skipped;
    j["instances"] = instances;
  } else {
    const Instance inst = load(o);
    j["instance"] = inst.name();
    Json reports = Json::array();
    for (const auto& r : verify_all(inst, o.samples, *o.seed, options)) {
      tally.add(r);
      reports.push_back(report_to_json(r));
    }
    j["reports"] = reports;
  }
  j["summary"] = tally.json();
  return {dump(j), "", tally.exit_code(o.strict_gates)};
}

CommandResult cmd_export_dot(const Options& o) {
  const Instance inst = load(o);
  const GroupTable& g = inst.group();
  if (o.what == "base") return {base_to_dot(inst.base(), &g, &inst.voltage()), "", 0};
  if (o.what == "cover") return {cover_to_dot(inst.base(), inst.cover(), &g, &inst.voltage()), "", 0};
  const DerivedBundle d = derived_bundle(inst.base(), g, inst.voltage());
  if (o.what == "bundle") return {bundle_to_dot(inst.base(), g, inst.voltage(), d), "", 0};
  return {component_to_dot(inst.base(), g, inst.voltage(), holonomy_bundle(d)), "", 0};
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& args) {
  CLI::App app{"Flat connections over coverings of finite 2-complexes", "flatcover"};
  app.require_subcommand(1);
  Options o;

  auto instance_command = [&](const char* name, const char* description) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("instance", o.path, "Instance document (JSON)")->check(CLI::ExistingFile);
    sub->add_option("--cap", o.cap, "Coset-table cell budget for enumeration")->check(CLI::PositiveNumber);
    return sub;
  };
  CLI::App* holonomy = instance_command("holonomy", "Holonomy image and kernel index");
  CLI::App* cover = instance_command("cover", "Build the covering complex");
  CLI::App* induce = instance_command("induce", "Compare the induced holonomy with the restricted one");
  CLI::App* trivial = instance_command("trivial", "Triviality criterion for the induced connection");
  CLI::App* bundle = instance_command("bundle", "Derived bundle and holonomy bundle statistics");
  CLI::App* verify = instance_command("verify", "Run every verification");
  CLI::App* dot = instance_command("export-dot", "Graphviz export");

  for (CLI::App* sub : {holonomy, cover, induce, trivial, bundle, dot}) sub->get_option("instance")->required();
  verify->add_option("--seed", o.seed, "Seed for sampled words and random instances")->required();
  verify->add_option("--samples", o.samples, "Sampled closed words per instance");
  verify->add_option("--all-random", o.all_random, "Verify N seeded random instances instead of a file")
      ->check(CLI::PositiveNumber);
  auto* strict = verify->add_flag("--strict-gates", o.strict_gates, "Exit 2 when a hypothesis gate fails");
  verify->add_flag("--relaxed-gates", o.relaxed_gates, "Evaluate claims even when their gates fail")->excludes(strict);
  dot->add_option("--what", o.what, "Which complex to export")
      ->check(CLI::IsMember({"base", "cover", "bundle", "holonomy-bundle"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    const int code = app.exit(e, out, err);
    return {out.str(), err.str(), code == 0 ? 0 : 2};
  }
  if (verify->parsed() && o.all_random == 0 && o.path.empty()) {
    return {"", "verify: an instance file or --all-random N is required\n", 2};
  }

  try {
    if (holonomy->parsed()) return cmd_holonomy(o);
    if (cover->parsed()) return cmd_cover(o);
    if (induce->parsed()) return cmd_induce(o);
    if (trivial->parsed()) return cmd_trivial(o);
    if (bundle->parsed()) return cmd_bundle(o);
    if (verify->parsed()) return cmd_verify(o);
    return cmd_export_dot(o);
  } catch (const Error& e) {
    return {"", std::string("error: ") + e.what() + "\n", 2};
  }
}

}  // namespace flatcover
