#include "grand/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <random>

#include "CLI11.hpp"

#include "grand/amalgam.hpp"
#include "grand/bupu.hpp"
#include "grand/convolution.hpp"
#include "grand/discrete.hpp"
#include "grand/grand_norm.hpp"
#include "grand/io.hpp"
#include "grand/kernels.hpp"
#include "grand/report.hpp"

namespace grand::cli {

namespace {

using report::Json;
using report::to_json;

struct Options {
  std::string config;
  std::string f;
  std::string g;
  std::string out;
  std::string csv;
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> m;
  std::optional<double> p;
};

struct Context {
  Options opt;
  io::RunConfig cfg;
  io::FunctionFormat format = io::FunctionFormat::csv;
};

struct Outcome {
  Json body = Json::object();
  int code = kPass;
  std::string reason_code;
  std::string reason;
  std::vector<std::string> warnings;
};

class Violation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json exponent_json(const GrandExponent& e) { return Json{{"p", e.p()}, {"theta", e.theta()}}; }

Json grid_json(const io::RunConfig& cfg) {
  return Json{{"points", cfg.eps_grid.points},
              {"min_eps_fraction", cfg.eps_grid.min_eps_fraction},
              {"refinement_rounds", cfg.eps_grid.refinement_rounds},
              {"tolerance", cfg.eps_grid.tolerance},
              {"include_zero_limit", cfg.eps_grid.include_zero_limit}};
}

SampledFunction require_f(const Context& ctx) {
  if (ctx.opt.f.empty()) throw io::InputError("--f is required");
  return io::load_function(ctx.opt.f, ctx.format, ctx.cfg.topology());
}

Outcome cmd_norm(const Context& ctx) {
  const SampledFunction f = require_f(ctx);
  const GrandExponent exp = ctx.cfg.local();
  const EpsilonGrid grid = ctx.cfg.grid_for(exp);
  const EpsilonProfile prof = epsilon_profile(f, exp, grid);
  Outcome o;
  o.body["value"] = prof.sup_value;
  o.body["argmax_eps"] = prof.argmax_eps;
  o.body["lp_norm_p"] = lp_norm(f, exp.p());
  o.body["exponent"] = exponent_json(exp);
  o.body["closure"] = to_json(closure_criterion(f, exp, grid));
  o.body["atoms"] = f.size();
  return o;
}

Outcome cmd_profile(const Context& ctx) {
  const SampledFunction f = require_f(ctx);
  const GrandExponent exp = ctx.cfg.local();
  const EpsilonProfile prof = epsilon_profile(f, exp, ctx.cfg.grid_for(exp));
  Outcome o;
  o.body["profile"] = to_json(prof);
  o.body["exponent"] = exponent_json(exp);
  std::string csv_path = ctx.opt.csv;
  if (csv_path.empty() && !ctx.opt.out.empty()) csv_path = ctx.opt.out + ".csv";
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw io::InputError("cannot write '" + csv_path + "'");
    csv << report::profile_csv(prof);
    o.body["csv_path"] = csv_path;
  } else {
    o.body["csv_path"] = nullptr;
    o.warnings.push_back("csv-not-written");
  }
  return o;
}

Outcome cmd_amalgam(const Context& ctx) {
  const SampledFunction f = require_f(ctx);
  const Window q = ctx.cfg.make_window(f.space());
  const GrandExponent local = ctx.cfg.local();
  const GrandExponent global = ctx.cfg.global();
  const EpsilonGrid gp = ctx.cfg.grid_for(local);
  const EpsilonGrid gq = ctx.cfg.grid_for(global);
  const SampledFunction control = control_function(f, q, local, gp);
  Outcome o;
  o.body["value"] = grand_norm(control, global, gq);
  o.body["control_function"] = std::vector<double>(control.values().begin(), control.values().end());
  o.body["window"] = to_json(q);
  o.body["local"] = exponent_json(local);
  o.body["global"] = exponent_json(global);
  return o;
}

Bupu require_bupu(const Context& ctx, const SpacePtr& space) {
  if (!ctx.cfg.bupu.block_size) throw io::InputError("config: bupu.block_size is required");
  try {
    return make_uniform_bupu(space, *ctx.cfg.bupu.block_size);
  } catch (const DomainError& e) {
    throw Violation(e.what());
  }
}

Outcome cmd_bupu_validate(const Context& ctx) {
  SpacePtr space = ctx.opt.f.empty() ? share(ctx.cfg.make_space()) : require_f(ctx).space_ptr();
  const Bupu psi = require_bupu(ctx, space);
  const BupuValidation v = validate_bupu(psi);
  Outcome o;
  o.body["validation"] = to_json(v);
  o.body["ragged"] = psi.ragged;
  o.body["blocks"] = psi.functions.size();
  o.body["centers"] = psi.centers;
  o.body["well_spread"] = to_json(well_spread_check(psi.centers, psi.window, *space));
  if (psi.ragged) o.warnings.push_back("ragged-bupu");
  if (!v.all_pass()) {
    o.code = kViolation;
    o.reason_code = "bupu-invalid";
    o.reason = "one or more partition-of-unity conditions failed";
  }
  return o;
}

FiniteAbelianGroup group_from_function(const SampledFunction& f) {
  const auto w = f.space().weights();
  const double n = static_cast<double>(w.size());
  const auto all = [&](double target) {
    return std::all_of(w.begin(), w.end(),
                       [&](double x) { return std::fabs(x - target) <= 1e-12 * target; });
  };
  if (all(1.0)) return FiniteAbelianGroup::cyclic(w.size(), HaarNormalization::counting);
  if (all(1.0 / n)) return FiniteAbelianGroup::cyclic(w.size(), HaarNormalization::probability);
  throw io::InputError("conv-check needs uniform Haar weights (all 1 or all 1/n)");
}

Outcome cmd_conv_check(const Context& ctx) {
  const GrandExponent local = ctx.cfg.local();
  const GrandExponent global = ctx.cfg.global();
  const EpsilonGrid gp = ctx.cfg.grid_for(local);
  const EpsilonGrid gq = ctx.cfg.grid_for(global);

  std::vector<std::pair<std::vector<double>, std::vector<double>>> pairs;
  std::optional<FiniteAbelianGroup> group;
  Outcome o;
  if (!ctx.opt.f.empty()) {
    if (ctx.opt.g.empty()) throw io::InputError("--g is required with --f");
    const SampledFunction f = io::load_function(ctx.opt.f, ctx.format, Topology::cyclic);
    const SampledFunction g = io::load_function(ctx.opt.g, ctx.format, Topology::cyclic);
    if (!(f.space().weights().size() == g.space().weights().size() &&
          std::equal(f.space().weights().begin(), f.space().weights().end(),
                     g.space().weights().begin()))) {
      throw io::InputError("--f and --g must share one measure space");
    }
    group.emplace(group_from_function(f));
    pairs.emplace_back(std::vector<double>(f.values().begin(), f.values().end()),
                       std::vector<double>(g.values().begin(), g.values().end()));
    o.body["mode"] = "files";
  } else {
    const MeasureSpace s = ctx.cfg.make_space();
    group.emplace(FiniteAbelianGroup::cyclic(s.size(), ctx.cfg.space.probability
                                                           ? HaarNormalization::probability
                                                           : HaarNormalization::counting));
    const std::uint64_t seed = ctx.opt.seed.value_or(ctx.cfg.seed);
    const std::size_t trials = ctx.opt.trials.value_or(ctx.cfg.trials);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto draw = [&] {
      std::vector<double> v(s.size());
      for (double& x : v) x = u(rng);
      return v;
    };
    for (std::size_t t = 0; t < trials; ++t) {
      auto a = draw();
      auto b = draw();
      pairs.emplace_back(std::move(a), std::move(b));
    }
    o.body["mode"] = "random";
    o.body["seed"] = seed;
    o.body["trials"] = trials;
  }

  const bool with_amalgam = ctx.cfg.has_window();
  std::optional<Window> q;
  if (with_amalgam) q = ctx.cfg.make_window(*group->space());

  std::size_t failures = 0;
  std::size_t amalgam_failures = 0;
  double max_ratio = 0.0;
  double max_amalgam_ratio = 0.0;
  Json worst;
  Json worst_amalgam;
  bool hypotheses = true;
  for (auto& [a, b] : pairs) {
    const SampledFunction f = group->function(a);
    const SampledFunction g = group->function(b);
    const SubmultiplicativityReport r = submultiplicativity_check(f, g, *group, local, gp);
    hypotheses = hypotheses && r.hypotheses_met;
    if (!r.pass) ++failures;
    const double ratio = r.ratio.value_or(0.0);
    if (worst.is_null() || ratio > max_ratio) {
      max_ratio = ratio;
      worst = to_json(r);
    }
    if (q) {
      const AmalgamSubmultiplicativityReport ar =
          amalgam_submultiplicativity_check(f, g, *group, *q, local, global, gp, gq);
      if (!ar.pass) ++amalgam_failures;
      const double aratio = ar.ratio.value_or(0.0);
      if (worst_amalgam.is_null() || aratio > max_amalgam_ratio) {
        max_amalgam_ratio = aratio;
        worst_amalgam = to_json(ar);
      }
    }
  }

  o.body["group"] = Json{{"order", group->order()},
                         {"normalization", group->normalization() == HaarNormalization::probability
                                               ? "probability"
                                               : "counting"}};
  o.body["exponent"] = exponent_json(local);
  o.body["grand"] = Json{{"max_ratio", max_ratio}, {"failures", failures}, {"worst", worst}};
  if (q) {
    o.body["amalgam"] = Json{{"max_ratio", max_amalgam_ratio},
                             {"failures", amalgam_failures},
                             {"worst", worst_amalgam},
                             {"window", to_json(*q)},
                             {"global", exponent_json(global)}};
  }
  o.body["hypotheses_met"] = hypotheses;
  if (!hypotheses) {
    o.warnings.push_back("hypotheses-not-met");
  } else if (failures > 0 || amalgam_failures > 0) {
    o.code = kViolation;
    o.reason_code = "submultiplicativity-violated";
    o.reason = std::to_string(failures) + " grand and " + std::to_string(amalgam_failures) +
               " amalgam checks exceeded their bound";
  }
  return o;
}

Outcome cmd_witness(const Context& ctx) {
  const std::size_t m = ctx.opt.m.value_or(ctx.cfg.witness_m);
  const double p = ctx.opt.p.value_or(ctx.cfg.exponents.p);
  WitnessResult w;
  try {
    w = noncompact_witness(m, p);
  } catch (const DomainError& e) {
    throw io::InputError(e.what());
  }
  Outcome o;
  o.body = to_json(w);
  o.body["growing"] = w.ratio_2m > w.ratio_m;
  if (!(w.ratio_2m > w.ratio_m)) {
    o.code = kViolation;
    o.reason_code = "witness-not-growing";
    o.reason = "ratio at 2m does not exceed ratio at m";
  }
  return o;
}

Outcome cmd_equivalence(const Context& ctx) {
  const SampledFunction f = require_f(ctx);
  const Window q = ctx.cfg.make_window(f.space());
  const Bupu psi = require_bupu(ctx, f.space_ptr());
  const GrandExponent local = ctx.cfg.local();
  const GrandExponent global = ctx.cfg.global();
  EquivalenceReport r;
  try {
    r = equivalence_report(f, q, psi, local, global, ctx.cfg.grid_for(local),
                           ctx.cfg.grid_for(global), EquivalenceOptions{ctx.cfg.bupu.allow_ragged});
  } catch (const DomainError& e) {
    throw io::InputError(e.what());
  }
  bool mass_identity = true;
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (translate_window(q, x, f.space()).mass() != q.mass()) mass_identity = false;
  }
  Outcome o;
  o.body = to_json(r);
  o.body["translate_mass_identity"] = mass_identity;
  o.body["window"] = to_json(q);
  o.body["local"] = exponent_json(local);
  o.body["global"] = exponent_json(global);
  if (psi.ragged) o.warnings.push_back("ragged-bupu");
  if (!r.within_bounds) {
    o.code = kViolation;
    o.reason_code = "ratio-outside-bounds";
    o.reason = "a norm ratio fell outside the reported equivalence bounds";
  }
  return o;
}

Json envelope(const std::string& command, const Context* ctx, const Outcome& o) {
  Json doc = o.body;
  doc["schema_version"] = report::kSchemaVersion;
  doc["command"] = command;
  doc["kernels"] = std::string(kernels::active().name);
  doc["status"] = o.code == kPass ? "pass" : o.code == kViolation ? "fail" : "error";
  doc["warnings"] = o.warnings;
  if (o.code != kPass) doc["reason"] = Json{{"code", o.reason_code}, {"message", o.reason}};
  if (ctx) {
    doc["eps_grid"] = grid_json(ctx->cfg);
    if (!ctx->opt.f.empty()) doc["input"] = ctx->opt.f;
  }
  return doc;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grand Lebesgue and grand amalgam norm toolkit", "grandnorm"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--config", opt.config, "JSON run configuration");
  app.add_option("--f", opt.f, "function file");
  app.add_option("--g", opt.g, "second function file (conv-check)");
  app.add_option("--out", opt.out, "report path (default: standard output)");
  app.add_option("--csv", opt.csv, "profile CSV path (default: <out>.csv)");
  app.add_option("--format", opt.format, "function file format")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  app.add_option("--seed", opt.seed, "seed for random trials");
  app.add_option("--trials", opt.trials, "number of random trials");
  app.add_option("--m", opt.m, "witness block length");
  app.add_option("--p", opt.p, "witness exponent");

  using Handler = Outcome (*)(const Context&);
  const std::vector<std::pair<std::string, Handler>> commands = {
      {"norm", cmd_norm},
      {"profile", cmd_profile},
      {"amalgam", cmd_amalgam},
      {"bupu-validate", cmd_bupu_validate},
      {"conv-check", cmd_conv_check},
      {"witness", cmd_witness},
      {"equivalence", cmd_equivalence},
  };
  std::map<std::string, CLI::App*> subs;
  const std::map<std::string, std::string> blurbs = {
      {"norm", "grand norm of --f"},
      {"profile", "eps profile of --f, also written as CSV"},
      {"amalgam", "grand amalgam norm of --f over the configured window"},
      {"bupu-validate", "build and check the block partition of unity"},
      {"conv-check", "convolution submultiplicativity on files or random pairs"},
      {"witness", "growth of the indicator ratio on the integers"},
      {"equivalence", "continuous, step and discrete amalgam norms with their bounds"},
  };
  for (const auto& [name, handler] : commands) {
    subs[name] = app.add_subcommand(name, blurbs.at(name));
  }

  std::vector<std::string> argv_store{"grandnorm"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  std::string command = "unknown";
  const auto emit = [&](const Json& doc) {
    if (opt.out.empty()) {
      report::write_document(out, doc);
      return true;
    }
    std::ofstream file(opt.out, std::ios::binary);
    if (!file) {
      err << "cannot write report to '" << opt.out << "'\n";
      return false;
    }
    report::write_document(file, doc);
    return true;
  };

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    Outcome o;
    o.code = kInputError;
    o.reason_code = "usage";
    o.reason = e.what();
    emit(envelope(command, nullptr, o));
    return kInputError;
  }

  Handler handler = nullptr;
  for (const auto& [name, h] : commands) {
    if (subs[name]->parsed()) {
      command = name;
      handler = h;
    }
  }

  Context ctx;
  ctx.opt = opt;
  Outcome o;
  bool have_ctx = false;
  try {
    ctx.format = io::parse_format(opt.format);
    if (!opt.config.empty()) ctx.cfg = io::load_config(opt.config);
    have_ctx = true;
    o = handler(ctx);
  } catch (const io::InputError& e) {
    o = Outcome{};
    o.code = kInputError;
    o.reason_code = "input-error";
    o.reason = e.what();
  } catch (const DomainError& e) {
    o = Outcome{};
    o.code = kInputError;
    o.reason_code = "domain-error";
    o.reason = e.what();
  } catch (const Violation& e) {
    o = Outcome{};
    o.code = kViolation;
    o.reason_code = "property-violation";
    o.reason = e.what();
  }
  if (o.code != kPass) err << command << ": " << o.reason << "\n";
  for (const auto& w : o.warnings) err << command << ": warning: " << w << "\n";
  if (!emit(envelope(command, have_ctx ? &ctx : nullptr, o))) return kInputError;
  return o.code;
}

}  // namespace grand::cli
