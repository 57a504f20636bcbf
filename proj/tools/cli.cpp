#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <functional>
#include <memory>
#include <nlohmann/json.hpp>
#include <ostream>

#include "gdist/classic.hpp"
#include "gdist/classify.hpp"
#include "gdist/error.hpp"
#include "gdist/family.hpp"
#include "gdist/fixtures.hpp"
#include "gdist/io.hpp"
#include "gdist/kernel.hpp"
#include "gdist/oracle.hpp"
#include "gdist/parallel.hpp"
#include "gdist/sbm.hpp"
#include "gdist/seed.hpp"
#include "gdist/stats.hpp"

namespace gdist::cli {

namespace {

// --config file: a JSON object whose keys are long option names. A nested
// object keyed by a subcommand name holds that subcommand's options.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}\n"; }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    nlohmann::json root;
    try {
      root = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw CLI::ConversionError("config", e.what());
    }
    if (!root.is_object()) throw CLI::ConversionError("config", "top level must be an object");
    std::vector<CLI::ConfigItem> items;
    collect(root, {}, items);
    return items;
  }

 private:
  static std::string scalar(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_float()) return format_double(v.get<double>());
    return v.dump();
  }

  static void collect(const nlohmann::json& obj, const std::vector<std::string>& parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : obj.items()) {
      if (value.is_object()) {
        auto nested = parents;
        nested.push_back(key);
        collect(value, nested, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(value));
      }
      items.push_back(std::move(item));
    }
  }
};

CostedGraph load_input(const std::string& input) {
  if (input.empty()) throw Error(ErrorCode::InvalidArgument, "no input graph (-i)");
  if (std::filesystem::exists(input)) return load_graph(input);
  if (auto g = fixtures::by_name(input)) return *g;
  throw Error(ErrorCode::IoError, "no such file or built-in fixture: " + input);
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

struct MethodFlags {
  std::string method;
  double beta = 0.0, alpha = 0.0, gamma = 0.0, lambda = 0.0, p = 0.0;
  int pres_cap = PResistanceOptions{}.max_nodes;
  double pres_tol = PResistanceOptions{}.tolerance;
  CLI::Option *o_beta = nullptr, *o_alpha = nullptr, *o_gamma = nullptr, *o_lambda = nullptr, *o_p = nullptr;

  void add(CLI::App* sub, bool with_method, const std::string& default_method) {
    method = default_method;
    if (with_method) {
      sub->add_option("--method,-m", method, "sp, spu, ct, cc, res, spct, rsp, fe, logfor, pres")
          ->capture_default_str();
    }
    o_beta = sub->add_option("--beta", beta, "inverse temperature (rsp, fe)");
    o_alpha = sub->add_option("--alpha", alpha, "forest parameter (logfor)");
    o_gamma = sub->add_option("--gamma", gamma, "scale of the forest distance (logfor)");
    o_lambda = sub->add_option("--lambda", lambda, "weight of SP against resistance (spct)");
    o_p = sub->add_option("--p", p, "exponent in [1, 2] (pres)");
    sub->add_option("--pres-cap", pres_cap, "largest graph accepted by pres")->capture_default_str();
    sub->add_option("--pres-tol", pres_tol, "pres solver tolerance")->capture_default_str();
  }

  Params params() const {
    Params out;
    if (o_beta->count()) out.beta = beta;
    if (o_alpha->count()) out.alpha = alpha;
    if (o_gamma->count()) out.gamma = gamma;
    if (o_lambda->count()) out.lambda = lambda;
    if (o_p->count()) out.p = p;
    return out;
  }

  bool any_param() const {
    return o_beta->count() || o_alpha->count() || o_gamma->count() || o_lambda->count() || o_p->count();
  }

  PResistanceOptions pres() const {
    PResistanceOptions o;
    o.max_nodes = pres_cap;
    o.tolerance = pres_tol;
    return o;
  }

  DistanceMatrix compute(const CostedGraph& g) const {
    return compute_distance(g, parse_method(method), params(), pres());
  }
};

struct Common {
  std::string input;
  std::string output;
};

void add_io(CLI::App* sub, Common& c, bool output_required = false) {
  sub->add_option("--input,-i", c.input, "graph TSV file or built-in fixture name")->required();
  auto* o = sub->add_option("--output,-o", c.output, "output file (default: standard output)");
  if (output_required) o->required();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graph node distances: shortest path to commute time families, kernels and clustering."};
  app.name(args.empty() ? "gdist" : std::filesystem::path(args[0]).filename().string());
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file of option values; command-line flags take precedence");
  app.require_subcommand(1);
  app.allow_config_extras(CLI::config_extras_mode::error);

  bool json_errors = false;
  int threads = 0;
  app.add_flag("--json-errors", json_errors, "report errors as one JSON object on standard error");
  app.add_option("--threads", threads, "worker threads for parallel kernels (0: runtime default)");

  std::function<void()> action;

  // dist
  Common dist_io;
  MethodFlags dist_m;
  auto* dist = app.add_subcommand("dist", "write an all-pairs distance matrix (CSV plus .meta.json sidecar)");
  add_io(dist, dist_io);
  dist_m.add(dist, true, "sp");
  dist->callback([&] {
    action = [&] {
      const CostedGraph g = load_input(dist_io.input);
      const DistanceMatrix d = dist_m.compute(g);
      if (dist_io.output.empty()) {
        out << format_matrix_csv(d.values);
      } else {
        write_matrix_csv(dist_io.output, d.values);
        write_distance_metadata(dist_io.output, d, g);
      }
    };
  });

  // ratio-curve
  Common rc_io;
  std::string rc_method;
  double rc_from = 0.0, rc_to = 0.0;
  int rc_points = 20;
  std::string rc_spacing;
  auto* rc = app.add_subcommand("ratio-curve", "d(0,1) / d(1,2) across a parameter grid");
  rc->add_option("--input,-i", rc_io.input, "ext-triangle or hub-4-3")->default_val("ext-triangle");
  rc->add_option("--output,-o", rc_io.output, "output CSV (default: standard output)");
  rc->add_option("--method,-m", rc_method, "rsp, fe, logfor, spct or pres")->required();
  auto* o_from = rc->add_option("--from", rc_from, "first grid value");
  auto* o_to = rc->add_option("--to", rc_to, "last grid value");
  rc->add_option("--points", rc_points, "grid size")->capture_default_str();
  auto* o_spacing = rc->add_option("--spacing", rc_spacing, "log or linear")->check(CLI::IsMember({"log", "linear"}));
  rc->callback([&] {
    action = [&] {
      if (rc_io.input != "ext-triangle" && rc_io.input != "hub-4-3") {
        throw Error(ErrorCode::InvalidArgument, "ratio-curve runs on ext-triangle or hub-4-3");
      }
      const Method m = parse_method(rc_method);
      ParamGrid grid = default_grid(m);
      if (o_from->count()) grid.lo = rc_from;
      if (o_to->count()) grid.hi = rc_to;
      if (o_spacing->count()) grid.log_spaced = rc_spacing == "log";
      grid.points = rc_points;
      const auto rows = ratio_curve(*fixtures::by_name(rc_io.input), m, grid.values());
      emit(out, rc_io.output, format_ratio_curve_csv(family_parameter(m), rows));
    };
  });

  // cluster
  Common cl_io;
  MethodFlags cl_m;
  std::string cl_kernel = "fe";
  double cl_a = 26.0;
  int cl_k = 2, cl_restarts = 20;
  std::uint64_t cl_seed = 0;
  bool cl_psd = false;
  auto* cl = app.add_subcommand("cluster", "kernel k-means; partition TSV, inertia on standard output");
  add_io(cl, cl_io);
  cl->add_option("--kernel", cl_kernel, "sigct or a distance method (centred distance kernel)")->capture_default_str();
  cl->add_option("--a", cl_a, "sigmoid slope for sigct")->capture_default_str();
  cl->add_option("--k", cl_k, "number of clusters")->capture_default_str();
  cl->add_option("--restarts", cl_restarts, "random restarts")->capture_default_str();
  cl->add_option("--seed", cl_seed, "random seed")->capture_default_str();
  cl->add_flag("--psd-clip", cl_psd, "drop negative kernel eigenvalues before clustering");
  cl_m.add(cl, false, "fe");
  cl->callback([&] {
    action = [&] {
      const CostedGraph g = load_input(cl_io.input);
      KernelMatrix k;
      if (cl_kernel == "sigct") {
        if (cl_m.any_param()) throw Error(ErrorCode::InvalidArgument, "distance parameters do not apply to sigct");
        k = sigmoid_ct_kernel(laplacian_pair(g), cl_a);
      } else {
        cl_m.method = cl_kernel;
        k = center_kernel(cl_m.compute(g));
      }
      if (cl_psd) k = psd_clip(k);
      const Partition part = kernel_kmeans(k, cl_k, cl_restarts, cl_seed);
      emit(out, cl_io.output, format_labels_tsv(part.assignment));
      out << "inertia\t" << format_double(part.inertia) << '\n';
    };
  });

  // classify
  Common cf_io;
  MethodFlags cf_m;
  std::string cf_labels;
  auto* cf = app.add_subcommand("classify", "label propagation by iterated 1-nearest neighbour");
  add_io(cf, cf_io);
  cf->add_option("--labels", cf_labels, "seed labels TSV (node<TAB>label)")->required();
  cf_m.add(cf, true, "fe");
  cf->callback([&] {
    action = [&] {
      const CostedGraph g = load_input(cf_io.input);
      const LabelSet seeds = LabelSet::from_partial(read_labels_tsv(cf_labels, g.size()));
      const LabelSet result = propagate_1nn(cf_m.compute(g), seeds);
      emit(out, cf_io.output, format_labels_tsv(result.labels));
    };
  });

  // mds
  Common mds_io;
  MethodFlags mds_m;
  int mds_dims = 2;
  auto* mds = app.add_subcommand("mds", "classical MDS coordinates (CSV, n x dims)");
  add_io(mds, mds_io);
  mds->add_option("--dims", mds_dims, "output dimension")->capture_default_str();
  mds_m.add(mds, true, "fe");
  mds->callback([&] {
    action = [&] {
      const CostedGraph g = load_input(mds_io.input);
      const CmdsResult r = cmds_coordinates(mds_m.compute(g), mds_dims);
      if (r.zero_filled > 0) err << "mds: " << r.zero_filled << " dimension(s) zero-filled (eigenvalue <= 0)\n";
      emit(out, mds_io.output, format_matrix_csv(r.coords));
    };
  });

  // oracle-check
  Common oc_io;
  double oc_beta = 1.0;
  int oc_tmax = 40;
  std::string oc_mode = "series";
  auto* oc = app.add_subcommand("oracle-check", "compare closed-form Z^h with hitting-walk sums");
  add_io(oc, oc_io);
  oc->add_option("--beta", oc_beta, "inverse temperature")->capture_default_str();
  oc->add_option("--tmax", oc_tmax, "longest walk summed")->capture_default_str();
  oc->add_option("--mode", oc_mode, "series (walk-length recursion) or enumerate (explicit paths)")
      ->check(CLI::IsMember({"series", "enumerate"}))
      ->capture_default_str();
  oc->callback([&] {
    action = [&] {
      const CostedGraph g = load_input(oc_io.input);
      const auto rows =
          oracle_check(g, oc_beta, oc_tmax, oc_mode == "series" ? OracleMode::Series : OracleMode::Enumerate);
      emit(out, oc_io.output, format_oracle_check_csv(rows));
      size_t failed = 0;
      for (const auto& r : rows)
        if (!(r.abs_diff <= r.tail_bound + 1e-12)) ++failed;
      if (failed > 0) {
        throw Error(ErrorCode::SolverNotConverged,
                    std::to_string(failed) + " pair(s) differ by more than their tail bound + 1e-12");
      }
    };
  });

  // gen-sbm
  std::vector<int> sbm_blocks;
  double sbm_pin = 0.0, sbm_pout = 0.0;
  std::uint64_t sbm_seed = 0;
  std::string sbm_out, sbm_labels;
  auto* sbm = app.add_subcommand("gen-sbm", "planted-partition graph plus its block labels");
  sbm->add_option("--blocks", sbm_blocks, "block sizes, comma separated")->delimiter(',')->required();
  sbm->add_option("--pin", sbm_pin, "edge probability inside a block")->required();
  sbm->add_option("--pout", sbm_pout, "edge probability across blocks")->required();
  sbm->add_option("--seed", sbm_seed, "random seed")->capture_default_str();
  sbm->add_option("--output,-o", sbm_out, "graph TSV")->required();
  sbm->add_option("--labels-out", sbm_labels, "labels TSV (default: <output>.labels.tsv)");
  sbm->callback([&] {
    action = [&] {
      const PlantedGraph pg = gen_sbm(sbm_blocks, sbm_pin, sbm_pout, sbm_seed);
      save_graph(pg.graph, sbm_out);
      write_labels_tsv(sbm_labels.empty() ? sbm_out + ".labels.tsv" : sbm_labels, pg.labels);
    };
  });

  // eval
  std::vector<std::string> ev_inputs, ev_label_files;
  int ev_sbm = 0;
  std::vector<int> ev_blocks{30, 30, 30};
  double ev_pin = 0.3, ev_pout = 0.01;
  std::vector<std::string> ev_methods{"rsp", "fe", "logfor", "spct"};
  EvalConfig ev_cfg;
  int ev_points = 20;
  std::string ev_out;
  auto* ev = app.add_subcommand("eval", "labelling-rate x cross-validation sweep with Copeland ranking");
  ev->add_option("--input,-i", ev_inputs, "graph files or fixtures (repeatable)");
  ev->add_option("--labels", ev_label_files, "label TSV per --input, same order");
  ev->add_option("--sbm", ev_sbm, "additionally generate this many planted-partition datasets")->capture_default_str();
  ev->add_option("--blocks", ev_blocks, "block sizes for --sbm")->delimiter(',')->capture_default_str();
  ev->add_option("--pin", ev_pin, "p_in for --sbm")->capture_default_str();
  ev->add_option("--pout", ev_pout, "p_out for --sbm")->capture_default_str();
  ev->add_option("--methods", ev_methods, "methods to compare")->delimiter(',')->capture_default_str();
  ev->add_option("--rates", ev_cfg.rates, "labelling rates")->delimiter(',')->capture_default_str();
  ev->add_option("--repeats", ev_cfg.repeats, "label subsamples per rate")->capture_default_str();
  ev->add_option("--outer-folds", ev_cfg.outer_folds, "outer cross-validation folds")->capture_default_str();
  ev->add_option("--inner-folds", ev_cfg.inner_folds, "inner (tuning) folds")->capture_default_str();
  ev->add_option("--grid-points", ev_points, "parameter grid size per method")->capture_default_str();
  ev->add_option("--significance", ev_cfg.alpha, "one-sided Welch test level")->capture_default_str();
  ev->add_option("--seed", ev_cfg.seed, "random seed")->capture_default_str();
  ev->add_option("--output,-o", ev_out, "prefix for <prefix>.scores.csv and <prefix>.copeland.csv");
  ev->callback([&] {
    action = [&] {
      if (ev_inputs.size() != ev_label_files.size()) {
        throw Error(ErrorCode::InvalidArgument, "every --input needs a matching --labels file");
      }
      std::vector<EvalDataset> data;
      for (size_t i = 0; i < ev_inputs.size(); ++i) {
        CostedGraph g = load_input(ev_inputs[i]);
        auto labels = read_labels_tsv(ev_label_files[i], g.size());
        if (std::count(labels.begin(), labels.end(), -1) > 0) {
          throw Error(ErrorCode::InvalidArgument, ev_label_files[i] + " does not label every node");
        }
        data.push_back({ev_inputs[i], std::move(g), std::move(labels)});
      }
      for (int i = 0; i < ev_sbm; ++i) {
        PlantedGraph pg =
            gen_sbm(ev_blocks, ev_pin, ev_pout, derive_seed(ev_cfg.seed, {0xb10c, static_cast<std::uint32_t>(i)}));
        data.push_back({"sbm" + std::to_string(i), std::move(pg.graph), std::move(pg.labels)});
      }
      if (data.empty()) throw Error(ErrorCode::InvalidArgument, "no datasets (use --input/--labels or --sbm)");
      std::vector<EvalMethod> methods;
      for (const auto& name : ev_methods) {
        EvalMethod em{parse_method(name), {}};
        if (!family_parameter(em.method).empty()) {
          ParamGrid grid = default_grid(em.method);
          grid.points = ev_points;
          em.grid = grid.values();
        }
        methods.push_back(std::move(em));
      }
      const auto results = evaluate_classification(data, methods, ev_cfg);
      if (ev_out.empty()) {
        out << format_rankings_csv(results);
      } else {
        write_text_file(ev_out + ".scores.csv", format_score_tables_csv(results));
        write_text_file(ev_out + ".copeland.csv", format_rankings_csv(results));
      }
    };
  });

  auto report = [&](const std::string& code, const std::string& message, int exit_code) {
    if (json_errors) {
      nlohmann::ordered_json j;
      j["error"] = code;
      j["message"] = message;
      j["exit_code"] = exit_code;
      err << j.dump() << '\n';
    } else {
      err << app.get_name() << ": " << message << '\n';
    }
    return exit_code;
  };

  try {
    std::vector<std::string> rev(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rev.begin(), rev.end());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    // --json-errors may not have been seen yet if parsing failed early.
    json_errors = json_errors || std::find(args.begin(), args.end(), "--json-errors") != args.end();
    return report("UsageError", e.what(), 2);
  }

  try {
    if (threads > 0) set_num_threads(threads);
    if (action) action();
  } catch (const Error& e) {
    return report(std::string(to_string(e.code())), json_errors ? e.message() : e.what(),
                  is_numerical(e.code()) ? 3 : 2);
  } catch (const std::exception& e) {
    return report("InternalError", e.what(), 3);
  }
  return 0;
}

}  // namespace gdist::cli
