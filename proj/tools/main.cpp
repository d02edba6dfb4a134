// Command-line front end: runs axiom suites, classifies user-supplied maps,
// verifies the characterization theorems over generated map families, and
// searches for counterexample witnesses.
//
// Exit codes: 0 = run passed, 1 = suite failure (a serialized witness is part
// of the report), 2 = malformed input.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "absorder/axioms.hpp"
#include "absorder/generators.hpp"
#include "absorder/io.hpp"
#include "absorder/maps.hpp"
#include "absorder/matrix_order.hpp"
#include "absorder/quotient.hpp"
#include "absorder/space.hpp"
#include "absorder/version.hpp"

using nlohmann::json;
using namespace absorder;

namespace {

struct CommonOpts {
  double eps_abs = 1e-9;
  double eps_rel = 1e-9;
  int samples = 200;
  std::uint64_t seed = 0;
  int levels = 3;
  std::string out;
  std::string format = "text";

  ToleranceConfig tolerance() const {
    ToleranceConfig cfg;
    cfg.eps_abs = eps_abs;
    cfg.eps_rel = eps_rel;
    cfg.samples = samples;
    cfg.seed = seed;
    return cfg;
  }
};

// Defaults may come from a JSON config file pointed to by ABSORDER_CONFIG;
// explicit flags win.
void load_env_defaults(CommonOpts& opts) {
  const char* path = std::getenv("ABSORDER_CONFIG");
  if (!path || !*path) return;
  try {
    const json j = json::parse(read_text_file(path));
    if (j.contains("eps_abs")) opts.eps_abs = j.at("eps_abs").get<double>();
    if (j.contains("eps_rel")) opts.eps_rel = j.at("eps_rel").get<double>();
    if (j.contains("samples")) opts.samples = j.at("samples").get<int>();
    if (j.contains("seed")) opts.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("levels")) opts.levels = j.at("levels").get<int>();
  } catch (const std::exception& e) {
    throw ParseError(std::string("bad ABSORDER_CONFIG file: ") + e.what());
  }
}

void attach_common_flags(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--eps-abs", opts.eps_abs, "absolute tolerance");
  cmd->add_option("--eps-rel", opts.eps_rel, "relative tolerance");
  cmd->add_option("--samples", opts.samples, "sampled trials per check");
  cmd->add_option("--seed", opts.seed, "RNG seed");
  cmd->add_option("--levels", opts.levels, "matricial level cap N");
  cmd->add_option("--out", opts.out, "write the report to this path");
  cmd->add_option("--format", opts.format, "report format")
      ->check(CLI::IsMember({"text", "machine"}));
}

json run_config_json(const std::string& command, const CommonOpts& opts,
                     const json& extra) {
  json j{{"command", command},
         {"eps_abs", opts.eps_abs},
         {"eps_rel", opts.eps_rel},
         {"samples", opts.samples},
         {"seed", opts.seed},
         {"levels", opts.levels},
         {"out", opts.out},
         {"format", opts.format}};
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  return j;
}

void emit(const CommonOpts& opts, const std::string& text_form,
          const json& machine_form) {
  const std::string payload =
      opts.format == "machine" ? machine_form.dump(2) + "\n" : text_form;
  if (opts.out.empty())
    std::cout << payload;
  else
    write_text_file(opts.out, payload);
}

json check_report_json(const CheckReport& r) {
  return json::parse(check_report_to_json(r));
}

json classification_json(const ClassificationReport& r) {
  return json::parse(classification_report_to_json(r));
}

// ---------------------------------------------------------------------------
// verify-axioms

int run_verify_axioms(const CommonOpts& opts, const std::string& model_str) {
  const SpaceModel model = parse_model_descriptor(model_str);
  const ToleranceConfig cfg = opts.tolerance();
  const CheckReport axioms = check_absolutely_ordered_axioms(model, cfg);
  const CheckReport unit = check_absolute_order_unit(model, cfg);
  const bool passed = axioms.passed() && unit.passed();

  json machine{{"version", kVersion},
               {"run_config",
                run_config_json("verify-axioms", opts, {{"model", model_str}})},
               {"reports", json::array({check_report_json(axioms),
                                        check_report_json(unit)})},
               {"passed", passed}};
  emit(opts, to_text(axioms) + to_text(unit), machine);
  return passed ? 0 : 1;
}

// ---------------------------------------------------------------------------
// classify-map

int run_classify_map(const CommonOpts& opts, const std::string& map_path) {
  const StarLinearMap map = read_map_file(map_path, /*validate=*/true);
  const ToleranceConfig cfg = opts.tolerance();

  ClassificationReport rep;
  rep.title = "classification of " + map_path + ": " +
              map.domain().descriptor() + " -> " + map.codomain().descriptor();
  rep.sample_count = cfg.samples;
  rep.set("unital", is_unital_detail(map, cfg));
  rep.set("positive", is_positive_detail(map, cfg));
  rep.set("jordan_homomorphism", is_jordan_hom_detail(map, cfg));
  const int cap = map.domain().is_hermitian() ? opts.levels : 1;
  for (int n = 1; n <= cap; ++n) {
    rep.levels_tested.push_back(n);
    rep.set("isometry@" + std::to_string(n), is_isometry_detail(map, cfg, n));
    rep.set("order_isometry@" + std::to_string(n),
            is_order_isometry_detail(map, cfg, n));
    rep.set("abs_preserving@" + std::to_string(n),
            is_abs_preserving_detail(map, cfg, n));
  }
  if (map.domain().is_hermitian())
    rep.set("multiplicative", is_multiplicative_detail(map, cfg));
  rep.notes.push_back(std::string("bijective: ") +
                      (is_bijective(map, cfg) ? "yes" : "no"));
  rep.notes.push_back(std::string("surjective: ") +
                      (is_surjective(map, cfg) ? "yes" : "no"));

  json machine{{"version", kVersion},
               {"run_config",
                run_config_json("classify-map", opts, {{"map", map_path}})},
               {"reports", json::array({classification_json(rep)})},
               {"passed", true}};
  emit(opts, to_text(rep), machine);
  return 0;  // classification is the output, not a verdict
}

// ---------------------------------------------------------------------------
// theorem-suite

struct SuiteTally {
  json reports = json::array();
  std::vector<std::string> failures;
  std::optional<json> first_witness;

  void add_check(const CheckReport& r) {
    json j = check_report_json(r);
    if (!r.passed()) {
      failures.push_back(r.title);
      capture(j);
    }
    reports.push_back(std::move(j));
  }
  void add_classification(const ClassificationReport& r) {
    json j = classification_json(r);
    if (!r.equivalences_hold) {
      failures.push_back(r.title);
      capture(j);
    }
    reports.push_back(std::move(j));
  }
  void add_note_failure(const std::string& what, const json& detail) {
    failures.push_back(what);
    capture(detail);
  }
  void capture(const json& j) {
    if (!first_witness) first_witness = j;
  }
};

StarLinearMap skewed_identity(int k) {
  // Intentionally violates phi(x*) = phi(x)*; built with validation off.
  const SpaceModel m = SpaceModel::hermitian(k);
  return StarLinearMap::from_complex_function(
      m, m,
      [](const Mat& x) {
        Mat out = x;
        out(0, 1) += Cplx(0, 0.3) * x.trace();
        return out;
      },
      /*validate=*/false);
}

int run_theorem_suite(const CommonOpts& opts, std::vector<int> sizes,
                      std::vector<int> lattice_dims, int maps_per_family,
                      const std::string& inject) {
  const ToleranceConfig cfg = opts.tolerance();
  const bool declamp = inject == "no-clamp";
  SuiteTally tally;
  std::ostringstream text;

  auto adjust_model = [&](SpaceModel m) {
    return declamp ? m.with_clamping(false) : m;
  };
  auto adjust_map = [&](StarLinearMap m) {
    return declamp ? m.with_clamping(false) : m;
  };

  // Model-level suites.
  for (int k : sizes) {
    const SpaceModel model = adjust_model(SpaceModel::hermitian(k));
    tally.add_check(check_absolutely_ordered_axioms(model, cfg));
    tally.add_check(check_absolute_order_unit(model, cfg));
    tally.add_check(
        matrix_axiom_suite(model, cfg.with_samples(cfg.samples / 2 + 1)));
    tally.add_check(
        matrix_abs_identities_suite(model, cfg.with_samples(cfg.samples / 2 + 1)));
  }
  for (int d : lattice_dims) {
    const SpaceModel model = adjust_model(SpaceModel::lattice(d));
    tally.add_check(check_absolutely_ordered_axioms(model, cfg));
    tally.add_check(check_absolute_order_unit(model, cfg));
  }

  // Kernel / quotient structure on compression maps.
  for (int k : sizes) {
    const StarLinearMap comp = adjust_map(make_block_compression(k, k));
    try {
      const KernelData kd = kernel_data(comp, cfg);
      tally.add_check(kd.checks);
      const QuotientSpace q = quotient_model(comp, cfg);
      tally.add_check(
          quotient_axiom_suite(q, cfg.with_samples(cfg.samples / 2 + 1)));
    } catch (const Error& e) {
      tally.add_note_failure(
          std::string("kernel/quotient machinery failed: ") + e.what(),
          json{{"error", e.what()}});
    }
  }

  // The generated map matrix.
  const auto specs = default_map_matrix(sizes, lattice_dims, maps_per_family);
  if (specs.empty())
    text << "warning: empty map matrix; nothing to verify\n";
  int n_maps = 0;
  for (const auto& spec : specs) {
    GeneratedMap gen = gen_map(spec);
    gen.map = adjust_map(std::move(gen.map));
    ++n_maps;

    try {
      const auto mismatches = compare_with_truth(gen, cfg);
      if (!mismatches.empty()) {
        json detail{{"map", spec.name()}, {"mismatches", mismatches}};
        tally.add_note_failure("ground truth mismatch for " + spec.name(),
                               detail);
        text << "[FAIL] ground truth: " << spec.name() << "\n";
        for (const auto& m : mismatches) text << "   - " << m << "\n";
      }

      tally.add_classification(abs_preserver_equivalence_suite(gen.map, cfg));
      if (is_surjective(gen.map, cfg))
        tally.add_classification(order_isometry_equivalence_suite(gen.map, cfg));
      if (is_bijective(gen.map, cfg)) {
        tally.add_classification(isometry_characterization_suite(gen.map, cfg));
        if (gen.map.domain().is_hermitian()) {
          tally.add_classification(jordan_equivalence_suite(gen.map, cfg));
          tally.add_classification(
              multiplicativity_equivalence_suite(gen.map, cfg));
          if (is_unital(gen.map, cfg))
            tally.add_classification(three_isometry_suite(gen.map, cfg));
          try {
            const StarLinearMap inv = inverse_map(gen.map, cfg);
            if (is_abs_preserving(gen.map, cfg) &&
                !is_abs_preserving(inv, cfg)) {
              tally.add_note_failure(
                  "inverse of an |.|-preserving bijection lost preservation: " +
                      spec.name(),
                  json{{"map", spec.name()}});
            }
          } catch (const Singular&) {
          }
        }
      }
      if (is_unital(gen.map, cfg) && is_abs_preserving(gen.map, cfg))
        tally.add_check(order_projection_preservation_suite(gen.map, cfg));
      if (gen.truth.unit_image_is_order_projection &&
          is_abs_preserving(gen.map, cfg))
        tally.add_check(abs_compatibility_preservation_suite(gen.map, cfg));
    } catch (const Error& e) {
      tally.add_note_failure(
          "suite aborted on " + spec.name() + ": " + e.what(),
          json{{"map", spec.name()}, {"error", e.what()}});
    }
  }

  // Optional star-linearity fault: a non-star-linear action must blow up at
  // least one classifier.
  if (inject == "non-star-linear") {
    const StarLinearMap skew = adjust_map(skewed_identity(sizes.front()));
    const PropertyResult abs = is_abs_preserving_detail(skew, cfg);
    const PropertyResult iso = is_isometry_detail(skew, cfg);
    json detail{{"map", "skewed identity"},
                {"abs_preserving", to_string(abs.verdict)},
                {"isometry", to_string(iso.verdict)}};
    if (abs.witness) {
      detail["witness"] = json{{"description", abs.witness->description}};
      if (!abs.witness->items.empty())
        detail["witness"]["element"] = json::parse(element_to_json(
            skew.domain(), abs.witness->items.front().element));
    }
    tally.add_note_failure("injected non-star-linear action detected", detail);
  }

  const bool passed = tally.failures.empty();
  text << "theorem suites over " << n_maps << " generated maps: "
       << (passed ? "ALL EQUIVALENCES HOLD" : "FAILURES PRESENT") << "\n";
  for (const auto& f : tally.failures) text << "  failed: " << f << "\n";

  json machine{{"version", kVersion},
               {"run_config",
                run_config_json("theorem-suite", opts,
                                {{"sizes", sizes},
                                 {"lattice_dims", lattice_dims},
                                 {"maps_per_family", maps_per_family},
                                 {"inject_fault", inject}})},
               {"reports", tally.reports},
               {"map_count", n_maps},
               {"failures", tally.failures},
               {"passed", passed}};
  if (tally.first_witness) machine["witness"] = *tally.first_witness;
  emit(opts, text.str(), machine);
  return passed ? 0 : 1;
}

// ---------------------------------------------------------------------------
// counterexample-search

int run_counterexample_search(const CommonOpts& opts,
                              const std::string& model_str) {
  const ToleranceConfig cfg = opts.tolerance();
  const SpaceModel model = parse_model_descriptor(model_str);
  if (!model.is_hermitian() || model.ambient_size() < 2)
    throw ParseError("counterexample search needs a hermitian model of size >= 2");
  const int k = model.ambient_size();

  json findings = json::array();
  std::ostringstream text;
  bool all_found = true;

  // (i) The transpose amplification must fail |.|-preservation at level 2;
  // the canonical witness is the maximally entangled element, whose partial
  // transpose has a -1 eigenvalue.
  {
    const auto gen =
        gen_map({MapFamily::transpose, k, 0, 0.0, false, false, cfg.seed});
    const Element omega = max_entangled_element(model, 2);
    const Element img = gen.map.apply(omega);
    Eigen::SelfAdjointEigenSolver<Mat> es(img.coords, Eigen::EigenvaluesOnly);
    const double negativity = es.eigenvalues().minCoeff();
    const double residual = frobenius(
        gen.map.apply(abs_element(model, omega)) - abs_element(model, img));
    const bool found = residual > cfg.scaled(1.0);
    all_found = all_found && found;
    json f{{"target", "transpose level-2 |.|-preservation failure"},
           {"found", found},
           {"residual", residual},
           {"negativity", negativity},
           {"witness", json::parse(element_to_json(model, omega))}};
    findings.push_back(std::move(f));
    text << (found ? "[FOUND] " : "[MISSING] ")
         << "transpose level-2 witness: residual " << residual
         << ", partial-transpose eigenvalue " << negativity << "\n";
  }

  // (ii) A positive unital map that is not |.|-preserving, with a concrete
  // witness element found within the sample budget.
  {
    const auto gen = gen_map(
        {MapFamily::positive_nonpreserver, k, 0, 0.0, false, false, cfg.seed});
    const PropertyResult pos = is_positive_detail(gen.map, cfg);
    const PropertyResult abs = is_abs_preserving_detail(gen.map, cfg);
    const bool found = pos.pass() && abs.fail() && abs.witness.has_value();
    all_found = all_found && found;
    json f{{"target", "positive unital map that is not |.|-preserving"},
           {"found", found},
           {"residual", abs.max_residual}};
    if (abs.witness && !abs.witness->items.empty())
      f["witness"] = json::parse(
          element_to_json(model, abs.witness->items.front().element));
    findings.push_back(std::move(f));
    text << (found ? "[FOUND] " : "[MISSING] ")
         << "non-preserving positive map witness: residual "
         << abs.max_residual << "\n";
  }

  // (iii) Scaling violates the lower-bound functional.
  {
    const auto gen =
        gen_map({MapFamily::scaling, k, 0, 2.0, false, false, cfg.seed});
    const PropertyResult ord = is_order_isometry_detail(gen.map, cfg);
    const bool found = ord.fail() && ord.witness.has_value();
    all_found = all_found && found;
    json f{{"target", "scaling map violating the order isometry property"},
           {"found", found},
           {"residual", ord.max_residual}};
    if (ord.witness && !ord.witness->items.empty())
      f["witness"] = json::parse(
          element_to_json(model, ord.witness->items.front().element));
    findings.push_back(std::move(f));
    text << (found ? "[FOUND] " : "[MISSING] ")
         << "scaling order-isometry witness: residual " << ord.max_residual
         << "\n";
  }

  // Control: unitary conjugation must yield no witness.
  {
    const auto gen = gen_map(
        {MapFamily::unitary_conjugation, k, 0, 0.0, false, false, cfg.seed});
    const bool clean = is_abs_preserving(gen.map, cfg) &&
                       is_order_isometry(gen.map, cfg) &&
                       is_abs_preserving(gen.map, cfg, 2);
    findings.push_back(json{{"target", "unitary conjugation control"},
                            {"found", !clean},
                            {"consistent", clean}});
    text << (clean ? "[CONSISTENT] " : "[UNEXPECTED] ")
         << "unitary conjugation control\n";
    all_found = all_found && clean;
  }

  json machine{{"version", kVersion},
               {"run_config", run_config_json("counterexample-search", opts,
                                              {{"model", model_str}})},
               {"findings", findings},
               {"passed", all_found}};
  emit(opts, text.str(), machine);
  return all_found ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification toolkit for absolutely ordered spaces and their "
               "matricial structure"};
  app.require_subcommand(1);

  CommonOpts opts;
  try {
    load_env_defaults(opts);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  std::string model_str = "hermitian:2";
  std::string map_path;
  std::vector<int> sizes{2, 3};
  std::vector<int> lattice_dims{3, 4};
  int maps_per_family = 2;
  std::string inject = "none";

  auto* verify = app.add_subcommand(
      "verify-axioms", "check the ordered-space axioms on a model");
  verify->add_option("--model", model_str, "model descriptor")->required();
  attach_common_flags(verify, opts);

  auto* classify =
      app.add_subcommand("classify-map", "classify a map from a JSON file");
  classify->add_option("--map", map_path, "path to the map document")
      ->required();
  attach_common_flags(classify, opts);

  auto* theorem = app.add_subcommand(
      "theorem-suite", "run every equivalence suite over generated families");
  theorem->add_option("--sizes", sizes, "hermitian sizes");
  theorem->add_option("--lattice-dims", lattice_dims, "lattice dimensions");
  theorem->add_option("--maps-per-family", maps_per_family,
                      "seeds per family (0 = empty matrix)");
  theorem
      ->add_option("--inject-fault", inject,
                   "fault injection: none | no-clamp | non-star-linear")
      ->check(CLI::IsMember({"none", "no-clamp", "non-star-linear"}));
  attach_common_flags(theorem, opts);

  auto* search = app.add_subcommand("counterexample-search",
                                    "search for hypothesis-boundary witnesses");
  search->add_option("--model", model_str, "hermitian model descriptor");
  attach_common_flags(search, opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return run_verify_axioms(opts, model_str);
    if (classify->parsed()) return run_classify_map(opts, map_path);
    if (theorem->parsed())
      return run_theorem_suite(opts, sizes, lattice_dims, maps_per_family,
                               inject);
    if (search->parsed()) return run_counterexample_search(opts, model_str);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
