#include "bornflea/harness.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "bornflea/arbfun.hpp"
#include "bornflea/doublewell.hpp"
#include "bornflea/errors.hpp"
#include "bornflea/twostate.hpp"
#include "bornflea/version.hpp"
#include "bornflea/wigner.hpp"

namespace bornflea::harness {
namespace {

using nlohmann::json;

struct Violations {
  std::vector<std::string> items;

  void add(const std::string& path, const std::string& msg) {
    items.push_back(path + ": " + msg);
  }
  void raise_if_any() const {
    if (items.empty()) return;
    std::string msg = "configuration rejected:";
    for (const auto& s : items) msg += "\n  - " + s;
    throw ConfigError(msg);
  }
};

double require_number(const json& obj, const std::string& key, double fallback,
                      const std::string& path, Violations& v,
                      bool positive = false) {
  double value = fallback;
  if (obj.contains(key)) {
    if (!obj[key].is_number()) {
      v.add(path + key, "must be a number");
      return fallback;
    }
    value = obj[key].get<double>();
  }
  if (positive && !(value > 0.0)) v.add(path + key, "must be positive");
  return value;
}

std::vector<double> require_list(const json& obj, const std::string& key,
                                 std::vector<double> fallback,
                                 const std::string& path, Violations& v,
                                 bool positive = false) {
  std::vector<double> out = std::move(fallback);
  if (obj.contains(key)) {
    if (!obj[key].is_array() || obj[key].empty()) {
      v.add(path + key, "must be a nonempty array of numbers");
      return out;
    }
    out.clear();
    for (const auto& e : obj[key]) {
      if (!e.is_number()) {
        v.add(path + key, "must contain numbers only");
        return out;
      }
      out.push_back(e.get<double>());
    }
  }
  if (positive)
    for (std::size_t i = 0; i < out.size(); ++i)
      if (!(out[i] > 0.0))
        v.add(path + key + "[" + std::to_string(i) + "]", "must be positive");
  return out;
}

// density spec: {"kind": "...", ...parameters}
json resolve_density(const json& j, const std::string& path, Violations& v,
                     json fallback) {
  if (j.is_null()) return fallback;
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    v.add(path, "must be an object with a \"kind\" string");
    return fallback;
  }
  const std::string kind = j["kind"].get<std::string>();
  json r;
  r["kind"] = kind;
  if (kind == "uniform" || kind == "raised_cosine") {
    r["lo"] = require_number(j, "lo", 0.0, path + ".", v);
    r["hi"] = require_number(j, "hi", 0.0, path + ".", v);
    if (!(r["lo"].get<double>() < r["hi"].get<double>()))
      v.add(path, "needs lo < hi");
  } else if (kind == "triangular") {
    r["lo"] = require_number(j, "lo", 0.0, path + ".", v);
    r["peak"] = require_number(j, "peak", 0.0, path + ".", v);
    r["hi"] = require_number(j, "hi", 0.0, path + ".", v);
    if (!(r["lo"].get<double>() < r["peak"].get<double>() &&
          r["peak"].get<double>() < r["hi"].get<double>()))
      v.add(path, "needs lo < peak < hi");
  } else if (kind == "truncated_gaussian") {
    r["mean"] = require_number(j, "mean", 0.0, path + ".", v);
    r["sigma"] = require_number(j, "sigma", 1.0, path + ".", v, true);
    r["lo"] = require_number(j, "lo", 0.0, path + ".", v);
    r["hi"] = require_number(j, "hi", 0.0, path + ".", v);
    if (!(r["lo"].get<double>() < r["hi"].get<double>()))
      v.add(path, "needs lo < hi");
  } else {
    v.add(path + ".kind", "unknown density kind \"" + kind + "\"");
    return fallback;
  }
  return r;
}

DensityRV build_density(const json& r) {
  const std::string kind = r["kind"].get<std::string>();
  if (kind == "uniform")
    return DensityRV::uniform(r["lo"].get<double>(), r["hi"].get<double>());
  if (kind == "raised_cosine")
    return DensityRV::raised_cosine(r["lo"].get<double>(), r["hi"].get<double>());
  if (kind == "triangular")
    return DensityRV::triangular(r["lo"].get<double>(), r["peak"].get<double>(),
                                 r["hi"].get<double>());
  return DensityRV::truncated_gaussian(r["mean"].get<double>(),
                                       r["sigma"].get<double>(),
                                       r["lo"].get<double>(),
                                       r["hi"].get<double>());
}

// mixture: single density spec or {"components": [{"weight": w, ...density}]}
json resolve_mixture(const json& j, const std::string& path, Violations& v,
                     json fallback) {
  if (j.is_null()) return fallback;
  json r;
  if (j.is_object() && j.contains("components")) {
    if (!j["components"].is_array() || j["components"].empty()) {
      v.add(path + ".components", "must be a nonempty array");
      return fallback;
    }
    double wsum = 0.0;
    r["components"] = json::array();
    for (std::size_t i = 0; i < j["components"].size(); ++i) {
      const json& c = j["components"][i];
      const std::string cpath =
          path + ".components[" + std::to_string(i) + "]";
      json rc = resolve_density(c, cpath, v, json{{"kind", "uniform"}, {"lo", 0.0}, {"hi", 1.0}});
      rc["weight"] = require_number(c, "weight", 1.0, cpath + ".", v, true);
      wsum += rc["weight"].get<double>();
      r["components"].push_back(rc);
    }
    if (std::abs(wsum - 1.0) > 1e-12)
      v.add(path + ".components", "weights must sum to 1");
  } else {
    json rc = resolve_density(j, path, v, fallback["components"][0]);
    rc["weight"] = 1.0;
    r["components"] = json::array({rc});
  }
  return r;
}

DeltaMixture build_mixture(const json& r) {
  std::vector<DeltaMixture::Component> comps;
  for (const auto& c : r["components"])
    comps.push_back({c["weight"].get<double>(), build_density(c)});
  return DeltaMixture(std::move(comps));
}

json resolve_model(const json& cfg, Violations& v) {
  const json m = cfg.value("model", json::object());
  json r;
  r["a"] = require_number(m, "a", 1.0, "model.", v, true);
  r["lambda"] = require_number(m, "lambda", 1.0, "model.", v, true);
  r["mass"] = require_number(m, "mass", 1.0, "model.", v, true);
  return r;
}

json resolve_grid(const json& cfg, Violations& v, double x_min_def,
                  double x_max_def, std::size_t n_def) {
  const json g = cfg.value("grid", json::object());
  json r;
  r["x_min"] = require_number(g, "x_min", x_min_def, "grid.", v);
  r["x_max"] = require_number(g, "x_max", x_max_def, "grid.", v);
  double n = require_number(g, "n", static_cast<double>(n_def), "grid.", v, true);
  const auto ni = static_cast<std::size_t>(n);
  if (n != static_cast<double>(ni) || ni < 2 || (ni & (ni - 1)) != 0)
    v.add("grid.n", "must be a power-of-two integer >= 2");
  r["n"] = ni;
  if (!(r["x_min"].get<double>() < r["x_max"].get<double>()))
    v.add("grid", "needs x_min < x_max");
  return r;
}

Grid1D build_grid(const json& r) {
  return Grid1D(r["x_min"].get<double>(), r["x_max"].get<double>(),
                r["n"].get<std::size_t>());
}

json resolve_time_mode(const json& cfg, Violations& v) {
  const json t = cfg.value("time", json{{"mode", "diagonal"}});
  json r;
  const std::string mode = t.value("mode", std::string("diagonal"));
  if (mode == "diagonal") {
    r["mode"] = "diagonal";
  } else if (mode == "finite") {
    r["mode"] = "finite";
    r["T"] = require_number(t, "T", 0.0, "time.", v, true);
  } else {
    v.add("time.mode", "must be \"diagonal\" or \"finite\"");
    r["mode"] = "diagonal";
  }
  return r;
}

const json kDefaultFlea = {
    {"amplitude", {{"kind", "uniform"}, {"lo", 0.04}, {"hi", 0.06}}},
    {"center", {{"kind", "uniform"}, {"lo", -0.6}, {"hi", -0.5}}},
    {"width", 0.2},
    {"sign_weight", 0.55}};

json resolve_flea(const json& cfg, Violations& v) {
  const json f = cfg.value("flea", kDefaultFlea);
  json r;
  r["amplitude"] = resolve_density(f.value("amplitude", json()), "flea.amplitude",
                                   v, kDefaultFlea["amplitude"]);
  r["center"] = resolve_density(f.value("center", json()), "flea.center", v,
                                kDefaultFlea["center"]);
  if (f.contains("width") && f["width"].is_object())
    r["width"] = resolve_density(f["width"], "flea.width", v, json());
  else
    r["width"] = require_number(f, "width", 0.2, "flea.", v, true);
  r["sign_weight"] = require_number(f, "sign_weight", 0.55, "flea.", v);
  const double sw = r["sign_weight"].get<double>();
  if (!(sw >= 0.0 && sw <= 1.0)) v.add("flea.sign_weight", "must be in [0,1]");
  return r;
}

doublewell::FleaDistribution build_flea(const json& r) {
  std::variant<double, DensityRV> width;
  if (r["width"].is_object())
    width = build_density(r["width"]);
  else
    width = r["width"].get<double>();
  return doublewell::FleaDistribution{build_density(r["amplitude"]),
                                      build_density(r["center"]), width,
                                      r["sign_weight"].get<double>()};
}

json default_observables(double x0, double p0) {
  const double r0 = std::hypot(x0, p0);
  json arr = json::array();
  for (int k = 0; k < 6; ++k) {
    const double th = k * std::numbers::pi / 3.0;
    json f;
    f["cx"] = r0 * std::cos(th);
    f["cp"] = r0 * std::sin(th);
    f["rx"] = 0.85;
    f["rp"] = 0.85;
    f["label"] = "f" + std::to_string(60 * k);
    arr.push_back(f);
  }
  return arr;
}

std::vector<wigner::TestObservable> build_observables(const json& arr) {
  std::vector<wigner::TestObservable> fs;
  for (const auto& f : arr)
    fs.push_back(wigner::TestObservable::bump(
        f["cx"].get<double>(), f["cp"].get<double>(), f["rx"].get<double>(),
        f["rp"].get<double>(), f["label"].get<std::string>()));
  return fs;
}

// ---- per-experiment resolution -------------------------------------------

json resolve_equidistribution(const json& cfg, Violations& v) {
  json r;
  r["density"] = resolve_density(cfg.value("density", json()), "density", v,
                                 json{{"kind", "uniform"}, {"lo", 1.0}, {"hi", 2.0}});
  r["t_list"] = require_list(cfg, "t_list", {10.0, 100.0, 1000.0, 10000.0},
                             "", v, true);
  r["period"] = require_number(cfg, "period", 2.0 * std::numbers::pi, "", v, true);
  return r;
}

json resolve_twostate(const json& cfg, Violations& v) {
  json r;
  r["model"] = resolve_model(cfg, v);
  r["hbar_list"] = require_list(cfg, "hbar_list", {0.3, 0.2, 0.15, 0.1}, "", v, true);
  const double alpha2 = require_number(cfg, "alpha2", 0.7, "", v);
  if (!(alpha2 > 0.0 && alpha2 < 1.0)) v.add("alpha2", "must lie in (0,1)");
  r["alpha2"] = alpha2;
  r["time"] = resolve_time_mode(cfg, v);
  r["delta"] = resolve_mixture(
      cfg.value("delta", json()), "delta", v,
      json{{"components",
            json::array({{{"kind", "uniform"}, {"lo", 0.5}, {"hi", 1.5}, {"weight", 1.0}}})}});
  const double nodes = require_number(cfg, "nodes", 256.0, "", v, true);
  r["nodes"] = static_cast<std::size_t>(nodes);
  // Prop. 2 hypothesis: the measure lives on real nonzero values of delta
  if (v.items.empty()) {
    try {
      build_mixture(r["delta"]).require_excludes_zero();
    } catch (const InvalidInputError&) {
      v.add("delta",
            "Prop. 2 requires a density over real nonzero values of delta; "
            "this measure carries mass near 0");
    }
  }
  return r;
}

json resolve_doublewell(const json& cfg, Violations& v) {
  json r;
  r["model"] = resolve_model(cfg, v);
  r["hbar_list"] = require_list(cfg, "hbar_list", {0.3, 0.2, 0.15}, "", v, true);
  const double alpha2 = require_number(cfg, "alpha2", 0.7, "", v);
  if (!(alpha2 > 0.0 && alpha2 < 1.0)) v.add("alpha2", "must lie in (0,1)");
  r["alpha2"] = alpha2;
  r["flea"] = resolve_flea(cfg, v);
  const double ns = require_number(cfg, "n_samples", 200.0, "", v, true);
  r["n_samples"] = static_cast<std::size_t>(ns);
  const double K = require_number(cfg, "K", 8.0, "", v, true);
  if (K < 2) v.add("K", "needs K >= 2");
  r["K"] = static_cast<std::size_t>(K);
  const double a = r["model"]["a"].get<double>();
  r["grid"] = resolve_grid(cfg, v, -4.0 * a, 4.0 * a, 4096);
  r["wigner_pairings"] = cfg.value("wigner_pairings", false);
  r["finite_t_factor"] =
      require_number(cfg, "finite_t_factor", 1e5, "", v, true);
  if (v.items.empty()) {
    try {
      build_flea(r["flea"]).validate(a);
    } catch (const InvalidInputError& e) {
      v.add("flea", e.what());
    }
  }
  return r;
}

json resolve_prop1(const json& cfg, Violations& v) {
  json r;
  r["x0"] = require_number(cfg, "x0", 1.0, "", v);
  r["p0"] = require_number(cfg, "p0", 0.0, "", v);
  r["omega"] = resolve_density(cfg.value("omega", json()), "omega", v,
                               json{{"kind", "uniform"}, {"lo", 1.0}, {"hi", 2.0}});
  if (r["omega"].contains("lo") && !(r["omega"]["lo"].get<double>() > 0.0))
    v.add("omega.lo", "frequency density must live on positive omega");
  r["hbar_list"] = require_list(cfg, "hbar_list", {0.05}, "", v, true);
  r["T_list"] = require_list(cfg, "T_list", {1000.0}, "", v, true);
  r["grid"] = resolve_grid(cfg, v, -6.0, 6.0, 1024);
  if (cfg.contains("observables")) {
    if (!cfg["observables"].is_array() || cfg["observables"].empty()) {
      v.add("observables", "must be a nonempty array");
      r["observables"] = default_observables(1.0, 0.0);
    } else {
      json arr = json::array();
      for (std::size_t i = 0; i < cfg["observables"].size(); ++i) {
        const json& f = cfg["observables"][i];
        const std::string p = "observables[" + std::to_string(i) + "].";
        json rf;
        rf["cx"] = require_number(f, "cx", 0.0, p, v);
        rf["cp"] = require_number(f, "cp", 0.0, p, v);
        rf["rx"] = require_number(f, "rx", 0.8, p, v, true);
        rf["rp"] = require_number(f, "rp", 0.8, p, v, true);
        rf["label"] = f.value("label", "f" + std::to_string(i));
        arr.push_back(rf);
      }
      r["observables"] = arr;
    }
  } else {
    r["observables"] =
        default_observables(r["x0"].get<double>(), r["p0"].get<double>());
  }
  return r;
}

json resolve_splitting(const json& cfg, Violations& v) {
  json r;
  r["model"] = resolve_model(cfg, v);
  r["hbar_list"] = require_list(cfg, "hbar_list", {0.5, 0.4, 0.3, 0.25}, "", v, true);
  const double a = r["model"]["a"].get<double>();
  r["grid"] = resolve_grid(cfg, v, -4.0 * a, 4.0 * a, 4096);
  return r;
}

// ---- per-experiment runners ----------------------------------------------

csv::Table run_equidistribution(const json& c) {
  const DensityRV rv = build_density(c["density"]);
  const double period = c["period"].get<double>();
  csv::Table t({"density", "t", "period", "tv_distance", "char_fn_mag"});
  const std::string label = c["density"]["kind"].get<std::string>();
  for (const auto& tj : c["t_list"]) {
    const double tt = tj.get<double>();
    const CircularLaw law = pushforward_mod(rv, tt, period);
    t.add_row({label, csv::fmt(tt), csv::fmt(period),
               csv::fmt(tv_distance(law)),
               csv::fmt(char_fn_magnitude(rv, tt))});
  }
  return t;
}

csv::Table run_twostate(const json& c) {
  using namespace twostate;
  const json& m = c["model"];
  const double alpha2 = c["alpha2"].get<double>();
  const QState2 psi0 =
      make_state(std::sqrt(alpha2), std::sqrt(1.0 - alpha2));
  const DeltaMixture mu = build_mixture(c["delta"]);
  const TimeMode mode = c["time"]["mode"] == "finite"
                            ? TimeMode::finite(c["time"]["T"].get<double>())
                            : TimeMode::diag();
  const std::string t_or_diag =
      mode.diagonal ? "diag" : csv::fmt(mode.T);
  const auto nodes = c["nodes"].get<std::size_t>();
  const MixtureState2 target = born_state(psi0);

  csv::Table t({"hbar", "T_or_diag", "A_label", "re", "im", "born_value",
                "abs_gap"});
  for (const auto& hj : c["hbar_list"]) {
    const ModelParams p{hj.get<double>(), m["a"].get<double>(),
                        m["lambda"].get<double>(), m["mass"].get<double>()};
    for (const Observable2& A :
         {Observable2::proj_plus(), Observable2::proj_minus(),
          Observable2::a_plus_minus(), Observable2::a_minus_plus()}) {
      const cplx got = mixture_expectation(A, psi0, mu, p, mode, nodes);
      const cplx want = target.value(A);
      t.add_row({csv::fmt(p.hbar), t_or_diag, A.label, csv::fmt(got.real()),
                 csv::fmt(got.imag()), csv::fmt(want.real()),
                 csv::fmt(std::abs(got - want))});
    }
  }
  return t;
}

csv::Table run_doublewell(const json& c, std::uint64_t seed, unsigned threads) {
  using namespace doublewell;
  const json& m = c["model"];
  const ModelParams base{c["hbar_list"][0].get<double>(), m["a"].get<double>(),
                         m["lambda"].get<double>(), m["mass"].get<double>()};
  BornOptions opt;
  opt.alpha2 = c["alpha2"].get<double>();
  for (const auto& h : c["hbar_list"]) opt.hbar_list.push_back(h.get<double>());
  opt.n_samples = c["n_samples"].get<std::size_t>();
  opt.seed = seed;
  opt.K = c["K"].get<std::size_t>();
  opt.wigner_pairings = c["wigner_pairings"].get<bool>();
  opt.finite_t_factor = c["finite_t_factor"].get<double>();
  opt.threads = threads;
  const BornResult res =
      born_experiment(build_flea(c["flea"]), opt, base, build_grid(c["grid"]));

  csv::Table t({"hbar", "sample_id", "flea_amp", "flea_center", "flea_width",
                "class", "c0_sq", "c1_sq", "tail_sq", "occ_right_diag",
                "occ_right_finiteT", "wigner_right_weight"});
  for (const auto& s : res.summaries) {
    std::ostringstream os;
    os << "hbar=" << csv::fmt(s.hbar) << " n_used=" << s.n_used
       << " n_ambiguous=" << s.n_ambiguous
       << " mean_right=" << csv::fmt(s.mean_right)
       << " std_error=" << csv::fmt(s.std_error)
       << " mean_wigner_right=" << csv::fmt(s.mean_wigner_right)
       << " abs_gap=" << csv::fmt(s.abs_gap);
    t.add_provenance("summary", os.str());
  }
  for (const auto& r : res.rows)
    t.add_row({csv::fmt(r.hbar), csv::fmt(r.sample_id),
               csv::fmt(r.flea.amplitude), csv::fmt(r.flea.center),
               csv::fmt(r.flea.width), to_string(r.cls), csv::fmt(r.c0_sq),
               csv::fmt(r.c1_sq), csv::fmt(r.tail_sq),
               csv::fmt(r.occ_right_diag), csv::fmt(r.occ_right_finite_t),
               csv::fmt(r.wigner_right_weight)});
  return t;
}

csv::Table run_prop1(const json& c) {
  const DensityRV mu = build_density(c["omega"]);
  std::vector<double> hbars, ts;
  for (const auto& h : c["hbar_list"]) hbars.push_back(h.get<double>());
  for (const auto& T : c["T_list"]) ts.push_back(T.get<double>());
  const auto fs = build_observables(c["observables"]);
  const auto rows = wigner::prop1_residual(
      c["x0"].get<double>(), c["p0"].get<double>(), mu, hbars, ts, fs,
      build_grid(c["grid"]));
  csv::Table t({"hbar", "T", "observable", "lhs", "rhs", "residual"});
  for (const auto& r : rows)
    t.add_row({csv::fmt(r.hbar), csv::fmt(r.T), r.observable, csv::fmt(r.lhs),
               csv::fmt(r.rhs), csv::fmt(r.residual)});
  return t;
}

csv::Table run_splitting(const json& c) {
  const json& m = c["model"];
  const ModelParams base{c["hbar_list"][0].get<double>(), m["a"].get<double>(),
                         m["lambda"].get<double>(), m["mass"].get<double>()};
  std::vector<double> hbars;
  for (const auto& h : c["hbar_list"]) hbars.push_back(h.get<double>());
  const auto rows =
      doublewell::delta_splitting_check(base, hbars, build_grid(c["grid"]));
  csv::Table t({"hbar", "gap_numeric", "gap_asymptotic", "ratio"});
  for (const auto& r : rows)
    t.add_row({csv::fmt(r.hbar), csv::fmt(r.gap_numeric),
               csv::fmt(r.gap_asymptotic), csv::fmt(r.ratio)});
  return t;
}

}  // namespace

const char* to_string(Experiment e) {
  switch (e) {
    case Experiment::Equidistribution: return "equidistribution";
    case Experiment::TwostateBorn: return "twostate_born";
    case Experiment::DoublewellBorn: return "doublewell_born";
    case Experiment::Prop1Oscillator: return "prop1_oscillator";
    default: return "splitting_check";
  }
}

Experiment experiment_from_string(const std::string& name) {
  if (name == "equidistribution") return Experiment::Equidistribution;
  if (name == "twostate_born") return Experiment::TwostateBorn;
  if (name == "doublewell_born") return Experiment::DoublewellBorn;
  if (name == "prop1_oscillator") return Experiment::Prop1Oscillator;
  if (name == "splitting_check") return Experiment::SplittingCheck;
  throw ConfigError("experiment: unknown experiment \"" + name + "\"");
}

ExperimentConfig validate_config(const std::string& text) {
  json cfg;
  try {
    cfg = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("configuration rejected:\n  - syntax: ") +
                      e.what());
  }
  if (!cfg.is_object())
    throw ConfigError("configuration rejected:\n  - root: must be an object");

  Violations v;
  Experiment exp = Experiment::Equidistribution;
  if (!cfg.contains("experiment") || !cfg["experiment"].is_string()) {
    v.add("experiment", "required string field");
  } else {
    try {
      exp = experiment_from_string(cfg["experiment"].get<std::string>());
    } catch (const ConfigError& e) {
      v.add("experiment", e.what());
    }
  }

  ExperimentConfig out;
  out.experiment = exp;
  const double seed = require_number(cfg, "seed", 0.0, "", v);
  if (seed < 0.0 || seed != std::floor(seed))
    v.add("seed", "must be a nonnegative integer");
  out.seed = static_cast<std::uint64_t>(seed);
  out.out = cfg.value("out", std::string());
  const double threads = require_number(cfg, "threads", 1.0, "", v, true);
  out.threads = static_cast<unsigned>(threads);

  json resolved;
  if (v.items.empty() || cfg.contains("experiment")) {
    switch (exp) {
      case Experiment::Equidistribution:
        resolved = resolve_equidistribution(cfg, v);
        break;
      case Experiment::TwostateBorn:
        resolved = resolve_twostate(cfg, v);
        break;
      case Experiment::DoublewellBorn:
        resolved = resolve_doublewell(cfg, v);
        break;
      case Experiment::Prop1Oscillator:
        resolved = resolve_prop1(cfg, v);
        break;
      case Experiment::SplittingCheck:
        resolved = resolve_splitting(cfg, v);
        break;
    }
  }
  v.raise_if_any();

  resolved["experiment"] = to_string(exp);
  resolved["seed"] = out.seed;
  resolved["threads"] = out.threads;
  if (!out.out.empty()) resolved["out"] = out.out;
  out.resolved = resolved;
  return out;
}

csv::Table run(const ExperimentConfig& cfg) {
  csv::Table table = [&] {
    switch (cfg.experiment) {
      case Experiment::Equidistribution:
        return run_equidistribution(cfg.resolved);
      case Experiment::TwostateBorn:
        return run_twostate(cfg.resolved);
      case Experiment::DoublewellBorn:
        return run_doublewell(cfg.resolved, cfg.seed, cfg.threads);
      case Experiment::Prop1Oscillator:
        return run_prop1(cfg.resolved);
      default:
        return run_splitting(cfg.resolved);
    }
  }();
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(
                    csv::fnv1a64(cfg.resolved.dump())));
  table.prepend_provenance("seed", csv::fmt(cfg.seed));
  table.prepend_provenance("config_hash", hash);
  table.prepend_provenance("experiment", to_string(cfg.experiment));
  table.prepend_provenance("bornflea", std::string(kVersion));
  if (!cfg.out.empty()) table.write_file(cfg.out);
  return table;
}

}  // namespace bornflea::harness
