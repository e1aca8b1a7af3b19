// qldpc: construct, inspect, decode and plot quantum LDPC codes.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qldpc/circulant.hpp"
#include "qldpc/construction.hpp"
#include "qldpc/distance.hpp"
#include "qldpc/error.hpp"
#include "qldpc/plot.hpp"
#include "qldpc/registry.hpp"
#include "qldpc/simulate.hpp"
#include "qldpc/spec_file.hpp"

namespace {

using namespace qldpc;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CodeSource {
  std::string registry_id;
  std::string spec_path;
  std::string external_dir = ".";

  void add_to(CLI::App* app) {
    app->add_option("--registry", registry_id, "registry code id (A1..F1)");
    app->add_option("--spec", spec_path, "code-spec file");
    app->add_option("--external-dir", external_dir, "directory holding <ID>.hx/<ID>.hz for imported codes");
  }
  void validate() const {
    if (registry_id.empty() == spec_path.empty()) throw UsageError("give exactly one of --registry or --spec");
    if (!registry_id.empty()) {
      try {
        registry(registry_id);
      } catch (const Error&) {
        throw UsageError("unknown registry id '" + registry_id + "'");
      }
    }
  }
  std::string name() const {
    return registry_id.empty() ? std::filesystem::path(spec_path).stem().string() : registry_id;
  }
  CssCode build() const {
    if (!registry_id.empty()) return build_registry_code(registry_id, external_dir);
    return build_code(load_code_spec(spec_path), name());
  }
};

std::string rate3(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", r);
  return buf;
}

std::string summary_line(const CssCode& code, const TannerStats& st) {
  std::ostringstream o;
  o << code.n() << ' ' << code.k << ' ' << st.max_row_weight << ' ' << st.column_weight_string() << ' '
    << st.girth_string();
  return o.str();
}

// ---------------------------------------------------------------- construct / info

int cmd_construct(const CodeSource& src, const std::string& out, std::size_t cap) {
  const CssCode code = src.build();
  const TannerStats st = tanner_stats(code, cap);
  save_bitmat(out + ".hx", code.hx);
  save_bitmat(out + ".hz", code.hz);
  const std::string line = summary_line(code, st);
  std::cout << line << "\n# digest=" << digest_hex("construct " + src.name() + " " + line) << "\n";
  return 0;
}

int cmd_info(const CodeSource& src, std::size_t cap) {
  const CssCode code = src.build();
  const TannerStats st = tanner_stats(code, cap);
  std::cout << src.name() << ' ' << code.n() << ' ' << code.k << ' '
            << (code.known_distance ? std::to_string(*code.known_distance) : "?") << ' ' << rate3(code.rate()) << ' '
            << st.max_row_weight << ' ' << st.column_weight_string() << ' ' << st.girth_string() << "\n";
  return 0;
}

// ---------------------------------------------------------------- simulate

struct DecoderFlags {
  std::size_t iters = 32;
  double nms = 0.625;
  std::string schedule = "layered";
  std::string variant = "quaternary";
  std::string postproc = "osd0";
  std::size_t osd_order = 0;
  bool osd_order_set = false;
  std::string osd_kind = "q";
  std::string retry;
  std::size_t attempts = 100;
  double pert_var = 0.5;
  double aug_density = 0.1;

  void add_to(CLI::App* app) {
    app->add_option("--iters", iters, "BP iterations")->capture_default_str();
    app->add_option("--nms-factor", nms, "min-sum normalization")->capture_default_str();
    app->add_option("--schedule", schedule, "layered|flooding")->capture_default_str();
    app->add_option("--variant", variant, "quaternary|binary-css")->capture_default_str();
    app->add_option("--postproc", postproc, "none|osd0|osd-w")->capture_default_str();
    app->add_option_function<std::size_t>("--osd-order", [this](std::size_t w) { osd_order = w; osd_order_set = true; },
                                          "OSD order w for osd-w");
    app->add_option("--osd-kind", osd_kind, "q (Pauli weight) | css (X/Z split)")->capture_default_str();
    app->add_option("--retry", retry, "pert|efb|aug");
    app->add_option("--attempts", attempts, "retry attempts n_a")->capture_default_str();
    app->add_option("--pert-var", pert_var, "perturbation variance")->capture_default_str();
    app->add_option("--aug-density", aug_density, "augmentation density")->capture_default_str();
  }

  DecoderConfig to_config() const {
    DecoderConfig d;
    d.bp.max_iterations = iters;
    d.bp.nms_factor = nms;
    if (schedule == "layered") {
      d.bp.schedule = Schedule::Layered;
    } else if (schedule == "flooding") {
      d.bp.schedule = Schedule::Flooding;
    } else {
      throw UsageError("--schedule must be layered or flooding");
    }
    if (variant == "quaternary") {
      d.bp.variant = BpVariant::Quaternary;
    } else if (variant == "binary-css") {
      d.bp.variant = BpVariant::BinaryCss;
    } else {
      throw UsageError("--variant must be quaternary or binary-css");
    }
    if (postproc == "none") {
      d.post = PostProcessor::None;
    } else if (postproc == "osd0") {
      d.post = PostProcessor::Osd;
      if (osd_order_set && osd_order != 0) throw UsageError("--postproc osd0 takes no --osd-order");
    } else if (postproc == "osd-w") {
      d.post = PostProcessor::Osd;
      if (!osd_order_set) throw UsageError("--postproc osd-w needs --osd-order");
      d.osd_order = osd_order;
    } else {
      throw UsageError("--postproc must be none, osd0 or osd-w");
    }
    if (osd_kind == "q") {
      d.osd_kind = OsdKind::Quaternary;
    } else if (osd_kind == "css") {
      d.osd_kind = OsdKind::CssSplit;
    } else {
      throw UsageError("--osd-kind must be q or css");
    }
    if (!retry.empty()) {
      RetryConfig r;
      if (retry == "pert") {
        r.method = RetryMethod::Perturbation;
      } else if (retry == "efb") {
        r.method = RetryMethod::EnhancedFeedback;
      } else if (retry == "aug") {
        r.method = RetryMethod::Augmentation;
      } else {
        throw UsageError("--retry must be pert, efb or aug");
      }
      r.attempts = attempts;
      r.perturbation_variance = pert_var;
      r.augmentation_density = aug_density;
      d.retry = r;
    }
    try {
      d.validate();
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    return d;
  }
};

int cmd_simulate(const CodeSource& src, SimConfig cfg, const std::string& p_text, const std::string& out_path) {
  try {
    cfg.p_values = parse_p_list(p_text);
    cfg.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const CssCode code = src.build();
  const std::string config = "code=" + src.name() + " " + cfg.describe();
  const auto records = run_wer(code, cfg, [](const WerRecord& r) {
    std::fprintf(stderr, "p=%.4g trials=%zu failures=%zu wer=%.4e (%.1fs)\n", r.p, r.trials, r.failures, r.wer, r.seconds);
  });
  if (out_path.empty() || out_path == "-") {
    write_wer_csv(std::cout, records, config);
  } else {
    std::ofstream out(out_path);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + out_path);
    write_wer_csv(out, records, config);
  }
  return 0;
}

// ---------------------------------------------------------------- distance

int cmd_distance(const CodeSource& src, const std::string& method, std::size_t cap, std::size_t iterations,
                 std::optional<std::uint64_t> seed, std::size_t workers) {
  if (method != "enum" && method != "is") throw UsageError("--method must be enum or is");
  if (method == "is" && !seed) throw UsageError("--method is needs --seed");
  const CssCode code = src.build();
  DistanceResult r;
  if (method == "enum") {
    r = distance_enumerate(code, cap, workers);
  } else {
    Rng rng(*seed);
    r = distance_is_search(code, iterations, rng);
  }
  if (r.weight == kNoBound) {
    if (method == "enum" && r.lower_bound != kNoBound) {
      std::cout << src.name() << " d>=" << r.lower_bound << "\n";
    } else {
      std::cout << src.name() << " d=?\n";
    }
    return 0;
  }
  std::cout << src.name() << (r.exact ? " d=" : " d<=") << r.weight << " side=" << (*r.side == Side::X ? 'X' : 'Z')
            << "\nwitness " << r.witness.to_string() << "\n";
  std::ostringstream cfg;
  cfg << "distance " << src.name() << " method=" << method << " cap=" << cap << " iterations=" << iterations;
  if (seed) cfg << " seed=" << *seed;
  std::cout << "# digest=" << digest_hex(cfg.str()) << "\n";
  return 0;
}

// ---------------------------------------------------------------- factor / plot

int cmd_factor(std::size_t l) {
  if (l == 0) throw UsageError("--l must be positive");
  const auto f = factor_xl_minus_1(l);
  for (const auto& fac : f.factors) {
    std::cout << fac.poly.to_string() << " deg=" << fac.degree << " mult=" << f.multiplicity() << "\n";
  }
  return 0;
}

int cmd_plot(const std::vector<std::string>& inputs, const std::vector<std::string>& labels, const std::string& out,
             const std::string& title) {
  if (!labels.empty() && labels.size() != inputs.size()) throw UsageError("give one --label per --in");
  std::vector<PlotSeries> series;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    std::ifstream in(inputs[i]);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + inputs[i]);
    series.push_back({labels.empty() ? std::filesystem::path(inputs[i]).stem().string() : labels[i], read_wer_csv(in)});
  }
  std::ofstream o(out);
  if (!o) throw Error(ErrorKind::Io, "cannot write " + out);
  o << render_wer_svg(series, title);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum LDPC codes: construction, BP-OSD decoding and simulation"};
  app.require_subcommand(1);

  CodeSource src;
  std::size_t girth_cap = 8;

  auto* construct = app.add_subcommand("construct", "write H_X/H_Z of a code in bitmat v1 format");
  src.add_to(construct);
  std::string out_prefix;
  construct->add_option("--out", out_prefix, "output prefix")->required();
  construct->add_option("--girth-cap", girth_cap, "girth search cap")->capture_default_str();

  auto* info = app.add_subcommand("info", "print N K d rate wr wc girth");
  src.add_to(info);
  info->add_option("--girth-cap", girth_cap, "girth search cap")->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo WER under the depolarizing channel");
  src.add_to(simulate);
  DecoderFlags dflags;
  dflags.add_to(simulate);
  SimConfig sim;
  std::string p_text, csv_out;
  std::uint64_t sim_seed = 0;
  simulate->add_option("--p", p_text, "error rates: a,b,c or lo:hi:log|lin[:count]")->required();
  simulate->add_option("--seed", sim_seed, "master seed")->required();
  simulate->add_option("--workers", sim.workers, "worker threads")->capture_default_str();
  simulate->add_option("--target-failures", sim.target_failures, "stop after this many failures")->capture_default_str();
  simulate->add_option("--max-trials", sim.max_trials, "trial cap per point")->capture_default_str();
  simulate->add_option("--batch", sim.batch_size, "trials per work unit")->capture_default_str();
  simulate->add_option("--out", csv_out, "CSV output (default stdout)");

  auto* distance = app.add_subcommand("distance", "minimum distance by enumeration or information-set search");
  src.add_to(distance);
  std::string method = "enum";
  std::size_t cap = kNoBound, iterations = 100, dist_workers = 1;
  std::optional<std::uint64_t> dist_seed;
  distance->add_option("--method", method, "enum|is")->capture_default_str();
  distance->add_option("--cap", cap, "largest weight of interest (enum)");
  distance->add_option("--iterations", iterations, "information sets per side (is)")->capture_default_str();
  distance->add_option("--seed", dist_seed, "seed (is)");
  distance->add_option("--workers", dist_workers, "threads (enum)")->capture_default_str();

  auto* factor = app.add_subcommand("factor", "irreducible factors of x^l - 1 over F2");
  std::size_t l = 0;
  factor->add_option("--l", l, "l")->required();

  auto* plot = app.add_subcommand("plot", "log-log WER curve as SVG");
  std::vector<std::string> plot_in, plot_labels;
  std::string plot_out, plot_title;
  plot->add_option("--in", plot_in, "CSV from simulate (repeatable)")->required();
  plot->add_option("--label", plot_labels, "legend label per --in");
  plot->add_option("--out", plot_out, "SVG output")->required();
  plot->add_option("--title", plot_title, "plot title");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*construct) {
      src.validate();
      return cmd_construct(src, out_prefix, girth_cap);
    }
    if (*info) {
      src.validate();
      return cmd_info(src, girth_cap);
    }
    if (*simulate) {
      src.validate();
      sim.seed = sim_seed;
      sim.decoder = dflags.to_config();
      return cmd_simulate(src, sim, p_text, csv_out);
    }
    if (*distance) {
      src.validate();
      return cmd_distance(src, method, cap, iterations, dist_seed, dist_workers);
    }
    if (*factor) return cmd_factor(l);
    if (*plot) return cmd_plot(plot_in, plot_labels, plot_out, plot_title);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
