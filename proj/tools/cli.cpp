#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace oodlab::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw InvalidArgument(msg); }

const json& need(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(where + ": missing field '" + key + "'");
  return j.at(key);
}

template <class T>
T get(const json& j, const char* key, const std::string& where) {
  const json& v = need(j, key, where);
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    fail(where + ": field '" + key + "' has the wrong type");
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
  return j.contains(key) ? get<T>(j, key, where) : fallback;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_ms(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

GFunction parse_g(const json& j) {
  const std::string where = "learner.g";
  if (!j.is_object()) fail(where + ": expected an object");
  if (j.contains("taus")) {
    return GFunction::tabulated(get<std::vector<double>>(j, "taus", where),
                                get<std::vector<double>>(j, "values", where));
  }
  return holder_to_g(get<double>(j, "gamma", where), get<double>(j, "C", where));
}

std::optional<Point> parse_center(const json& j) {
  if (!j.contains("center")) return std::nullopt;
  return Point(get<std::vector<double>>(j, "center", "learner"));
}

LearnerConfig parse_cfg(const json& j) {
  LearnerConfig c;
  if (j.contains("cfg")) {
    const json& k = j.at("cfg");
    if (!k.is_object()) fail("cfg: expected an object");
    c.epsilon = get_or<double>(k, "epsilon", c.epsilon, "cfg");
    c.delta = get_or<double>(k, "delta", c.delta, "cfg");
    c.alpha = get_or<double>(k, "alpha", c.alpha, "cfg");
  }
  c.validate();
  return c;
}

RiskMode parse_risk(const json& j) {
  if (!j.contains("risk")) return RiskMode::exact_if_possible();
  const json& r = j.at("risk");
  const auto mode = get_or<std::string>(r, "mode", "exact_if_possible", "risk");
  const auto m = get_or<std::size_t>(r, "m", 10000, "risk");
  if (m == 0) fail("risk: m must be positive");
  if (mode == "exact_if_possible") return RiskMode::exact_if_possible(m);
  if (mode == "exact_only") return RiskMode::exact_only();
  if (mode == "monte_carlo") return RiskMode::monte_carlo(m);
  fail("risk: unknown mode '" + mode + "'");
}

struct Preset {
  const char* name;
  const char* about;
  Domain (*build)(const json&);
};

Domain disk_vs_ring(const json& p) {
  const double tau = get_or<double>(p, "tau", 0.5, "domain");
  const double r = 1.0 + 2.0 * tau;
  return Domain::make(DistributionSpec::uniform_ball(Point{0.0, 0.0}, 1.0),
                      DistributionSpec::uniform_annulus(Point{0.0, 0.0}, r, r + 0.5),
                      "disk_vs_ring", true);
}

Domain square_vs_ring(const json&) {
  return Domain::make(DistributionSpec::uniform_box({0.0, 0.0}, {1.0, 1.0}),
                      DistributionSpec::uniform_annulus(Point{0.5, 0.5}, 0.75, 1.25),
                      "square_vs_ring", true);
}

Domain holder_ood_1d(const json&) {
  return Domain::make(DistributionSpec::uniform_box({-0.9}, {-0.01}),
                      DistributionSpec::holder_piecewise_1d({{0.0, 3.0}}, {1.0}, 1.0),
                      "holder_ood_1d", true);
}

Domain holder_id_1d(const json&) {
  return Domain::make(DistributionSpec::holder_piecewise_1d({{0.0, 2.4}}, {1.0}, 1.0),
                      DistributionSpec::point_mass(Point{2.402}), "holder_id_1d", true);
}

Domain gaussian_far(const json&) {
  return Domain::make(DistributionSpec::half_gaussian(Point{0.0, 0.0}, 1.0, 0),
                      DistributionSpec::uniform_box({1.5, -1.0}, {3.5, 1.0}), "gaussian_far",
                      true);
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = {
      {"disk_vs_ring", "U(unit disk) vs a ring starting 2 tau out (param tau = 0.5)",
       disk_vs_ring},
      {"square_vs_ring", "U([0,1]^2) vs a ring around the square", square_vs_ring},
      {"holder_ood_1d", "U[-0.9,-0.01] vs a triangle density on [0,3]", holder_ood_1d},
      {"holder_id_1d", "triangle density on [0,2.4] vs a point at 2.402", holder_id_1d},
      {"gaussian_far", "half-Gaussian (x <= 0) vs U([1.5,3.5]x[-1,1])", gaussian_far},
  };
  return all;
}

const std::vector<std::pair<const char*, const char*>>& learner_help() {
  static const std::vector<std::pair<const char*, const char*>> all = {
      {"far_ood", "R, tau"},
      {"grid_occupancy", "R, g {gamma, C} or {taus, values}, center?"},
      {"density_grid", "R, g, center?"},
      {"convex_hull", "lambda, d"},
      {"nonuniform", "base (far_ood | grid_occupancy | density_grid), tau or g"},
      {"always_all", ""},
      {"always_empty", ""},
      {"memorize", "k"},
      {"far_ood_fixed", "tau, k"},
      {"convex_hull_fixed", "k"},
  };
  return all;
}

struct TrialRow {
  TrialResult t;
  std::optional<double> value;
};

void write_csv(const std::filesystem::path& path, const std::vector<TrialRow>& rows,
               bool with_value) {
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path.string());
  os << csv_header(with_value) << '\n';
  for (const auto& r : rows) {
    if (with_value) os << fmt(*r.value) << ',';
    os << r.t.seed << ',' << r.t.n_used << ',' << fmt(r.t.r_in) << ',' << fmt(r.t.r_out)
       << ',' << fmt(r.t.r_alpha) << ',' << fmt(r.t.ci) << ',' << fmt_ms(r.t.wall_ms) << '\n';
  }
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path.string());
  os << j.dump(2) << '\n';
}

struct Batch {
  std::vector<TrialResult> trials;
  double success_fraction = 0.0;
  double mean_in = 0.0, mean_out = 0.0, mean_alpha = 0.0, max_out = 0.0, mean_n = 0.0;
  bool all_exact = true;
};

Batch verify_batch(const Learner& learner, const Domain& d, const LearnerConfig& cfg,
                   std::size_t trials, std::uint64_t seed, RiskMode mode, unsigned jobs) {
  Batch b;
  b.trials.resize(trials);
  parallel_for(trials, jobs, [&](std::size_t i) {
    const auto t0 = std::chrono::steady_clock::now();
    TrialResult& t = b.trials[i];
    t.seed = seed + i;
    Rng rng(t.seed);
    SampleSource src(d.id, rng);
    LearnerConfig c = cfg;
    c.seed = t.seed;
    const Hypothesis h = learner.fit(c, src);
    t.n_used = src.drawn();
    const auto in = risk(h, d, RiskTarget::id(), mode, rng);
    const auto out = risk(h, d, RiskTarget::ood(), mode, rng);
    t.r_in = in.value;
    t.r_out = out.value;
    t.r_alpha = (1.0 - cfg.alpha) * in.value + cfg.alpha * out.value;
    t.ci = (1.0 - cfg.alpha) * in.ci_half_width + cfg.alpha * out.ci_half_width;
    t.exact = in.exact() && out.exact();
    t.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
  });
  std::size_t ok = 0;
  for (const auto& t : b.trials) {
    ok += t.r_alpha <= cfg.epsilon ? 1 : 0;
    b.mean_in += t.r_in;
    b.mean_out += t.r_out;
    b.mean_alpha += t.r_alpha;
    b.mean_n += static_cast<double>(t.n_used);
    b.max_out = std::max(b.max_out, t.r_out);
    b.all_exact = b.all_exact && t.exact;
  }
  const auto n = static_cast<double>(trials);
  b.success_fraction = static_cast<double>(ok) / n;
  b.mean_in /= n;
  b.mean_out /= n;
  b.mean_alpha /= n;
  b.mean_n /= n;
  return b;
}

json batch_json(const Batch& b, const LearnerConfig& cfg, std::size_t trials) {
  const double thr = success_threshold(cfg.delta, trials);
  return {{"epsilon", cfg.epsilon},
          {"delta", cfg.delta},
          {"alpha", cfg.alpha},
          {"success_fraction", b.success_fraction},
          {"target", 1.0 - cfg.delta},
          {"threshold", thr},
          {"contract_holds", b.success_fraction >= thr},
          {"mean_r_in", b.mean_in},
          {"mean_r_out", b.mean_out},
          {"mean_r_alpha", b.mean_alpha},
          {"max_r_out", b.max_out},
          {"mean_n_used", b.mean_n},
          {"all_exact", b.all_exact}};
}

std::string sweep_svg(const std::string& title, const std::vector<double>& xs,
                      const std::vector<double>& ys) {
  const double W = 640, H = 400, L = 70, R = 20, T = 40, B = 50;
  double x0 = *std::min_element(xs.begin(), xs.end());
  double x1 = *std::max_element(xs.begin(), xs.end());
  double y1 = std::max(1e-12, *std::max_element(ys.begin(), ys.end()));
  if (x1 <= x0) x1 = x0 + 1.0;
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - y / y1 * (H - T - B); };
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\">" << title << "</text>\n"
    << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
    << "\" stroke=\"black\"/>\n"
    << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
    << "\" stroke=\"black\"/>\n"
    << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12
    << "\" text-anchor=\"middle\">mean samples used</text>\n"
    << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" transform=\"rotate(-90 16 "
    << (T + H - B) / 2 << ")\" text-anchor=\"middle\">mean mixed risk</text>\n";
  for (int k = 0; k <= 4; ++k) {
    const double y = y1 * k / 4.0, x = x0 + (x1 - x0) * k / 4.0;
    s << "<text x=\"" << L - 6 << "\" y=\"" << py(y) + 4 << "\" text-anchor=\"end\">"
      << fmt(std::round(y * 1e4) / 1e4) << "</text>\n"
      << "<text x=\"" << px(x) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">"
      << fmt(std::round(x)) << "</text>\n";
  }
  s << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) s << px(xs[i]) << ',' << py(ys[i]) << ' ';
  s << "\"/>\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    s << "<circle cx=\"" << px(xs[i]) << "\" cy=\"" << py(ys[i])
      << "\" r=\"3\" fill=\"steelblue\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

const char* kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::kVerifyLearner:
      return "verify_learner";
    case ExperimentKind::kSweep:
      return "sweep";
    case ExperimentKind::kGame:
      return "adversarial_game";
    case ExperimentKind::kFloor:
      return "bayes_floor";
  }
  return "?";
}

}  // namespace

// ---------------------------------------------------------------------------
// Parsing

Domain make_domain(const json& spec) {
  if (!spec.is_object()) fail("domain: expected an object");
  if (spec.contains("preset")) {
    const auto name = get<std::string>(spec, "preset", "domain");
    for (const auto& p : presets()) {
      if (name == p.name) return p.build(spec);
    }
    fail("domain: unknown preset '" + name + "'");
  }
  return Domain::make(distribution_from_json(need(spec, "id", "domain")),
                      distribution_from_json(need(spec, "ood", "domain")),
                      get_or<std::string>(spec, "name", "custom", "domain"),
                      get_or<bool>(spec, "dsa", false, "domain"));
}

Learner make_learner(const json& j, const LearnerConfig& cfg) {
  const std::string w = "learner";
  if (!j.is_object()) fail("learner: expected an object");
  const auto name = get<std::string>(j, "name", w);
  Learner l;
  if (name == "far_ood") {
    l = far_ood_learner(get<double>(j, "R", w), get<double>(j, "tau", w));
  } else if (name == "grid_occupancy") {
    l = grid_occupancy_learner(get<double>(j, "R", w), parse_g(need(j, "g", w)),
                               parse_center(j));
  } else if (name == "density_grid") {
    l = density_grid_learner(get<double>(j, "R", w), parse_g(need(j, "g", w)),
                             parse_center(j));
  } else if (name == "convex_hull") {
    l = convex_hull_learner(get<double>(j, "lambda", w), get<int>(j, "d", w));
  } else if (name == "nonuniform") {
    NonuniformParams p;
    const auto base = get<std::string>(j, "base", w);
    if (base == "far_ood") {
      p.base = BaseLearner::kFarOod;
      p.tau = get<double>(j, "tau", w);
    } else if (base == "grid_occupancy" || base == "density_grid") {
      p.base = base == "grid_occupancy" ? BaseLearner::kGridOccupancy : BaseLearner::kDensityGrid;
      p.g = parse_g(need(j, "g", w));
    } else {
      fail("learner: unknown nonuniform base '" + base + "'");
    }
    l = nonuniform_learner(p);
  } else if (name == "always_all") {
    l = always_all_learner();
  } else if (name == "always_empty") {
    l = always_empty_learner();
  } else if (name == "memorize") {
    l = memorize_learner(get<std::size_t>(j, "k", w));
  } else if (name == "far_ood_fixed") {
    l = fixed_far_ood_learner(get<double>(j, "tau", w), get<std::size_t>(j, "k", w));
  } else if (name == "convex_hull_fixed") {
    l = fixed_convex_hull_learner(get<std::size_t>(j, "k", w));
  } else {
    fail("learner: unknown name '" + name + "'");
  }
  if (get_or<bool>(j, "mode_iii", false, w)) l = mode_iii_wrap(std::move(l), cfg);
  return l;
}

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) fail("config: expected a JSON object");
  ExperimentConfig c;
  const auto kind = get<std::string>(j, "kind", "config");
  if (kind == "verify_learner") {
    c.kind = ExperimentKind::kVerifyLearner;
  } else if (kind == "sweep") {
    c.kind = ExperimentKind::kSweep;
  } else if (kind == "adversarial_game") {
    c.kind = ExperimentKind::kGame;
  } else if (kind == "bayes_floor") {
    c.kind = ExperimentKind::kFloor;
  } else {
    fail("config: unknown kind '" + kind + "'");
  }
  c.seed = get<std::uint64_t>(j, "seed", "config");
  c.cfg = parse_cfg(j);
  c.risk_mode = parse_risk(j);
  if (j.contains("output")) {
    const json& o = j.at("output");
    c.output.csv = get_or<std::string>(o, "csv", c.output.csv, "output");
    c.output.summary = get_or<std::string>(o, "summary", c.output.summary, "output");
    c.output.svg = get_or<std::string>(o, "svg", c.output.svg, "output");
  }

  if (c.kind == ExperimentKind::kFloor) {
    const json& f = need(j, "floor", "config");
    c.domain = Domain::make(distribution_from_json(need(f, "id", "floor")),
                            distribution_from_json(need(f, "ood", "floor")), "floor");
    c.floor_step = get_or<double>(f, "step", kDefaultFloorStep, "floor");
    if (!(c.floor_step > 0.0)) fail("floor: step must be positive");
    return c;
  }

  c.trials = get<std::size_t>(j, "trials", "config");
  if (c.trials == 0) fail("config: trials must be positive");
  c.learner = LearnerSpec{get<std::string>(need(j, "learner", "config"), "name", "learner"),
                          j.at("learner")};
  // Build once so that bad learner parameters fail before any output.
  (void)make_learner(c.learner->params, c.cfg);

  if (c.kind == ExperimentKind::kGame) {
    c.family = family_from_json(need(j, "family", "config"));
  } else {
    c.domain = make_domain(need(j, "domain", "config"));
  }
  if (c.kind == ExperimentKind::kSweep) {
    const json& s = need(j, "sweep", "config");
    SweepSpec sw{get<std::string>(s, "param", "sweep"),
                 get<std::vector<double>>(s, "values", "sweep")};
    if (sw.values.empty()) fail("sweep: values must be non-empty");
    for (double v : sw.values) {
      if (sw.param == "epsilon" || sw.param == "delta" || sw.param == "alpha") {
        LearnerConfig k = c.cfg;
        (sw.param == "epsilon" ? k.epsilon : sw.param == "delta" ? k.delta : k.alpha) = v;
        k.validate();
      } else {
        if (!c.learner->params.contains(sw.param)) {
          fail("sweep: '" + sw.param + "' is neither a cfg field nor a learner parameter");
        }
        json p = c.learner->params;
        p[sw.param] = v;
        (void)make_learner(p, c.cfg);
      }
    }
    c.sweep = std::move(sw);
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) fail("cannot read config " + path.string());
  json j;
  try {
    j = json::parse(is);
  } catch (const json::parse_error& e) {
    fail("malformed JSON in " + path.string() + ": " + e.what());
  }
  return parse_config(j);
}

// ---------------------------------------------------------------------------
// Running

double success_threshold(double delta, std::size_t trials) {
  return 1.0 - delta - 3.0 * std::sqrt(delta * (1.0 - delta) / static_cast<double>(trials));
}

std::string csv_header(bool with_value) {
  return std::string(with_value ? "value," : "") + "seed,n_used,r_in,r_out,r_alpha,ci,wall_ms";
}

int run_experiment(const ExperimentConfig& config, const RunOptions& opts, std::ostream& log,
                   std::optional<ExperimentKind> expect) {
  if (expect && *expect != config.kind) {
    fail(std::string("this subcommand runs '") + kind_name(*expect) + "' configs, got '" +
         kind_name(config.kind) + "'");
  }
  const std::uint64_t seed = opts.seed_override.value_or(config.seed);
  const auto& dir = opts.out_dir;
  json summary = {{"kind", kind_name(config.kind)}, {"seed", seed}};

  switch (config.kind) {
    case ExperimentKind::kFloor: {
      const double v =
          bayes_floor_1d(config.domain->id, config.domain->ood, config.cfg.alpha, config.floor_step);
      summary["alpha"] = config.cfg.alpha;
      summary["step"] = config.floor_step;
      summary["floor"] = v;
      std::filesystem::create_directories(dir);
      write_json(dir / config.output.summary, summary);
      log << "bayes floor = " << fmt(v) << '\n';
      return kExitOk;
    }
    case ExperimentKind::kVerifyLearner: {
      const Learner l = make_learner(config.learner->params, config.cfg);
      const Batch b = verify_batch(l, *config.domain, config.cfg, config.trials, seed,
                                   config.risk_mode, opts.jobs);
      std::vector<TrialRow> rows;
      for (const auto& t : b.trials) rows.push_back({t, std::nullopt});
      summary["learner"] = l.name;
      summary["domain"] = config.domain->name;
      summary["trials"] = config.trials;
      summary.update(batch_json(b, config.cfg, config.trials));
      std::filesystem::create_directories(dir);
      write_csv(dir / config.output.csv, rows, false);
      write_json(dir / config.output.summary, summary);
      const bool ok = summary["contract_holds"].get<bool>();
      log << l.name << " on " << config.domain->name << ": success fraction "
          << fmt(b.success_fraction) << " (threshold " << fmt(summary["threshold"].get<double>())
          << ")" << (ok ? "" : " CONTRACT VIOLATED") << '\n';
      return ok ? kExitOk : kExitContract;
    }
    case ExperimentKind::kSweep: {
      std::vector<TrialRow> rows;
      json points = json::array();
      std::vector<double> xs, ys;
      bool all_ok = true;
      std::string lname;
      for (double v : config.sweep->values) {
        LearnerConfig k = config.cfg;
        json params = config.learner->params;
        const auto& p = config.sweep->param;
        if (p == "epsilon") {
          k.epsilon = v;
        } else if (p == "delta") {
          k.delta = v;
        } else if (p == "alpha") {
          k.alpha = v;
        } else {
          params[p] = v;
        }
        const Learner l = make_learner(params, k);
        lname = l.name;
        const Batch b = verify_batch(l, *config.domain, k, config.trials, seed,
                                     config.risk_mode, opts.jobs);
        for (const auto& t : b.trials) rows.push_back({t, v});
        json pt = batch_json(b, k, config.trials);
        pt["value"] = v;
        all_ok = all_ok && pt["contract_holds"].get<bool>();
        points.push_back(pt);
        xs.push_back(b.mean_n);
        ys.push_back(b.mean_alpha);
        log << p << " = " << fmt(v) << ": success fraction " << fmt(b.success_fraction) << '\n';
      }
      summary["learner"] = lname;
      summary["domain"] = config.domain->name;
      summary["trials"] = config.trials;
      summary["param"] = config.sweep->param;
      summary["points"] = points;
      summary["contract_holds"] = all_ok;
      std::filesystem::create_directories(dir);
      write_csv(dir / config.output.csv, rows, true);
      write_json(dir / config.output.summary, summary);
      std::ofstream(dir / config.output.svg)
          << sweep_svg(lname + " on " + config.domain->name + ", sweep over " +
                           config.sweep->param,
                       xs, ys);
      return all_ok ? kExitOk : kExitContract;
    }
    case ExperimentKind::kGame: {
      const Learner l = make_learner(config.learner->params, config.cfg);
      const GameReport rep = run_game(*config.family, l, config.cfg, config.trials,
                                      config.cfg.alpha, seed, config.risk_mode, opts.jobs);
      std::vector<TrialRow> rows;
      for (const auto& t : rep.trials) rows.push_back({t, std::nullopt});
      summary["learner"] = l.name;
      summary["family"] = to_json(*config.family);
      summary["trials"] = config.trials;
      summary["alpha"] = config.cfg.alpha;
      summary["mean_risk"] = rep.mean;
      summary["ci"] = rep.ci;
      summary["all_exact"] = rep.all_exact;
      if (rep.exact_bound) {
        summary["exact_bound"] = *rep.exact_bound;
        summary["bound_respected"] = rep.mean >= *rep.exact_bound - rep.ci;
      } else {
        summary["exact_bound"] = nullptr;
      }
      std::filesystem::create_directories(dir);
      write_csv(dir / config.output.csv, rows, false);
      write_json(dir / config.output.summary, summary);
      log << l.name << " vs " << config.family->name() << ": mean risk " << fmt(rep.mean)
          << " +- " << fmt(rep.ci);
      if (rep.exact_bound) log << " (floor " << fmt(*rep.exact_bound) << ")";
      log << '\n';
      return kExitOk;
    }
  }
  return kExitError;
}

int run_file(const std::filesystem::path& config, const RunOptions& opts, std::ostream& log,
             std::ostream& err, std::optional<ExperimentKind> expect) {
  try {
    const ExperimentConfig c = load_config(config);
    return run_experiment(c, opts, log, expect);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

void list_builtins(std::ostream& os) {
  os << "domains (\"domain\": {\"preset\": name, ...}):\n";
  for (const auto& p : presets()) os << "  " << p.name << "  " << p.about << '\n';
  os << "families (\"family\": {\"kind\": name, ...}):\n"
     << "  nfl  budget, eps_mass\n"
     << "  generalized_nfl  sets, eps_mass\n"
     << "  dsa_gap  eps_gap\n"
     << "  heavy_boundary_wedge  eps_angle, lambda\n"
     << "  naturals_vc1  n_max\n"
     << "  holder_intervals  count, C\n"
     << "  convex_ngon  n_gon, eps_ball, completion_mass\n";
  os << "learners (\"learner\": {\"name\": name, ...}; add \"mode_iii\": true to wrap):\n";
  for (const auto& [n, params] : learner_help()) {
    os << "  " << n;
    if (*params) os << "  " << params;
    os << '\n';
  }
}

}  // namespace oodlab::cli
