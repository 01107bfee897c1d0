// vshock: viscous shock profiles and Evans-function contour computations for
// isentropic Navier-Stokes, in Eulerian, Lagrangian, and pseudo-Lagrangian
// coordinates (1D and 2D).

#include <chrono>
#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vs/analysis.hpp"
#include "vs/contour.hpp"
#include "vs/io.hpp"

namespace {

using vs::cplx;
using vs::json;

struct CommonCfg {
  double gamma = 5.0 / 3.0;
  double u_plus = 0.2733;
  double tau_plus = -1.0;  // alias; if set, overrides u_plus
  std::string frame = "eulerian";
  int dim = 1;
  double xi = 0.0;
  double mu = 0.5, visc_eta = 0.0;
  double tol = 1e-8;
  double profile_tol = 1e-10;
  double extend = 1.0;
  std::string lag_mode = "paper";
  int threads = 1;
};

std::string g_config_dummy;  // handled by expand_config before parsing

void add_config(CLI::App* cmd) {
  cmd->add_option("--config", g_config_dummy, "JSON config file (explicit flags override)");
}

void add_common(CLI::App* cmd, CommonCfg* c, bool with_system) {
  add_config(cmd);
  cmd->add_option("--gamma", c->gamma, "adiabatic exponent (> 1)");
  cmd->add_option("--uplus", c->u_plus, "right endstate u_+");
  cmd->add_option("--tauplus", c->tau_plus, "right endstate tau_+ (same as --uplus)");
  cmd->add_option("--tol", c->tol, "Evans integration relative tolerance");
  cmd->add_option("--profile-tol", c->profile_tol, "profile integration tolerance");
  cmd->add_option("--extend", c->extend, "numerical-infinity extension factor");
  if (with_system) {
    cmd->add_option("--frame", c->frame, "eulerian | lagrangian | pseudo-lagrangian")
        ->check(CLI::IsMember({"eulerian", "lagrangian", "pseudo-lagrangian"}));
    cmd->add_option("--dim", c->dim, "1 or 2")->check(CLI::IsMember({1, 2}));
    cmd->add_option("--xi", c->xi, "transverse frequency (2D)");
    cmd->add_option("--mu", c->mu, "first viscosity (2D)");
    cmd->add_option("--visc-eta", c->visc_eta, "second viscosity (2D)");
    cmd->add_option("--lag-mode", c->lag_mode, "paper | similarity | flow")
        ->check(CLI::IsMember({"paper", "similarity", "flow"}));
    cmd->add_option("--threads", c->threads, "contour-evaluation worker count");
  }
}

void finalize(CommonCfg* c) {
  if (c->tau_plus > 0.0) c->u_plus = c->tau_plus;  // tau_+ = u_+ under m = 1
}

json common_json(const CommonCfg& c, bool with_system) {
  json j;
  j["gamma"] = c.gamma;
  j["u_plus"] = c.u_plus;
  j["tol"] = c.tol;
  j["profile_tol"] = c.profile_tol;
  j["extend"] = c.extend;
  if (with_system) {
    j["frame"] = c.frame;
    j["dim"] = c.dim;
    j["xi"] = c.xi;
    j["mu"] = c.mu;
    j["visc_eta"] = c.visc_eta;
    j["lag_mode"] = c.lag_mode;
    j["threads"] = c.threads;
  }
  return j;
}

vs::LagMode parse_lag_mode(const std::string& s) {
  if (s == "similarity") return vs::LagMode::Similarity;
  if (s == "flow") return vs::LagMode::Flow;
  return vs::LagMode::Paper;
}

struct BuiltSystem {
  vs::EvansSystem sys;
  vs::ShockProfile profile;  // the frame's own profile
};

BuiltSystem build_system(const CommonCfg& c) {
  vs::EndStateSolve es = vs::solve_endstates(c.gamma, c.u_plus);
  vs::GasModel m;
  m.gamma = c.gamma;
  m.a = es.a;
  m.mu = c.mu;
  m.eta = c.visc_eta;
  BuiltSystem b;
  if (c.frame == "lagrangian") {
    if (c.dim != 1) throw vs::domain_error("InvalidParam", "Lagrangian frame is 1D only");
    b.profile = vs::compute_profile(m, es.states, vs::Frame::Lagrangian, c.profile_tol, c.extend);
    b.sys = vs::assemble_lagrange_1d(b.profile, parse_lag_mode(c.lag_mode));
    return b;
  }
  b.profile = vs::compute_profile(m, es.states, vs::Frame::Eulerian, c.profile_tol, c.extend);
  vs::EvansSystem base = c.dim == 2 ? vs::assemble_euler_2d(b.profile, c.mu, c.visc_eta)
                                    : vs::assemble_euler_1d(b.profile);
  b.sys = c.frame == "pseudo-lagrangian" ? vs::assemble_pseudo_lagrangian(base, b.profile) : base;
  return b;
}

json image_summary(const vs::ContourImage& img) {
  json j;
  j["winding"] = img.winding;
  j["wraps"] = img.wraps;
  j["valid"] = img.valid;
  j["log10_range"] = {img.log10_min, img.log10_max};
  j["log10_span"] = img.log10_max - img.log10_min;
  j["cost"] = img.cost;
  j["budget_exceeded"] = img.budget_exceeded;
  j["n_points"] = img.pts.size();
  return j;
}

// ---------------------------------------------------------------------------

int cmd_profile(const CommonCfg& c0, const std::string& out) {
  CommonCfg c = c0;
  finalize(&c);
  vs::EndStateSolve es = vs::solve_endstates(c.gamma, c.u_plus);
  vs::GasModel m;
  m.gamma = c.gamma;
  m.a = es.a;
  vs::Frame fr = c.frame == "lagrangian" ? vs::Frame::Lagrangian : vs::Frame::Eulerian;
  vs::ShockProfile p = vs::compute_profile(m, es.states, fr, c.profile_tol, c.extend);
  json cfg = common_json(c, true);
  cfg["command"] = "profile";
  json j = vs::profile_json(p);
  j["config"] = cfg;
  j["config_hash"] = vs::config_hash(cfg);
  std::string body = j.dump(2) + "\n";
  if (out.empty())
    std::cout << body;
  else
    vs::write_text_file(out, body);
  return 0;
}

int cmd_evans(const CommonCfg& c0, double r, double R, int n0, double eta,
              const std::string& out_csv, const std::string& out_json) {
  CommonCfg c = c0;
  finalize(&c);
  BuiltSystem b = build_system(c);
  vs::Contour contour = vs::semiannulus(r, R, n0);
  vs::ContourRunOpts ro;
  ro.eta = eta;
  ro.evans.rtol = c.tol;
  ro.evans.atol = c.tol * 1e-2;
  ro.threads = c.threads;
  vs::ContourImage img = vs::run_contour(b.sys, c.xi, contour, ro);
  json cfg = common_json(c, true);
  cfg["command"] = "evans";
  cfg["contour"] = {{"r", r}, {"R", R}, {"n0", n0}};
  cfg["eta"] = eta;
  std::string hash = vs::config_hash(cfg);
  if (!out_csv.empty()) vs::write_text_file(out_csv, vs::image_csv(img, hash));
  json j = image_summary(img);
  j["config"] = cfg;
  j["config_hash"] = hash;
  std::string body = j.dump(2) + "\n";
  if (out_json.empty())
    std::cout << body;
  else
    vs::write_text_file(out_json, body);
  return 0;
}

int cmd_winding(const std::string& in, const std::string& out_json) {
  vs::ContourImage img = vs::parse_image_csv(vs::read_text_file(in));
  vs::WindingResult w = vs::winding(img);
  json cfg = {{"command", "winding"}, {"input", in}};
  json j;
  j["winding"] = w.winding;
  j["wraps"] = w.wraps;
  j["valid"] = w.valid;
  j["config"] = cfg;
  j["config_hash"] = vs::config_hash(cfg);
  std::string body = j.dump(2) + "\n";
  if (out_json.empty())
    std::cout << body;
  else
    vs::write_text_file(out_json, body);
  return 0;
}

int cmd_evrel(const CommonCfg& c0, const std::vector<double>& lam_re,
              const std::vector<double>& lam_im, bool legacy_sign, bool nu_euler,
              const std::string& out_json) {
  CommonCfg c = c0;
  finalize(&c);
  vs::EndStateSolve es = vs::solve_endstates(c.gamma, c.u_plus);
  vs::GasModel m;
  m.gamma = c.gamma;
  m.a = es.a;
  vs::ShockProfile pe =
      vs::compute_profile(m, es.states, vs::Frame::Eulerian, c.profile_tol, c.extend);
  vs::ShockProfile pl =
      vs::compute_profile(m, es.states, vs::Frame::Lagrangian, c.profile_tol, c.extend);
  std::vector<cplx> lams;
  if (lam_re.empty()) {
    lams = {cplx(1.0, 0.0), cplx(2.0, 0.0), cplx(1.0, 1.0)};
  } else {
    for (size_t i = 0; i < lam_re.size(); ++i)
      lams.push_back(cplx(lam_re[i], i < lam_im.size() ? lam_im[i] : 0.0));
  }
  vs::EvrelOpts eo;
  eo.legacy_sign = legacy_sign;
  eo.nu_from_euler = nu_euler;
  eo.evans.rtol = c.tol;
  eo.evans.atol = c.tol * 1e-2;
  vs::EvrelResult res = vs::check_evrel(pe, pl, lams, eo);
  json cfg = common_json(c, false);
  cfg["command"] = "evrel";
  cfg["legacy_sign"] = legacy_sign;
  cfg["nu_from_euler"] = nu_euler;
  json j;
  j["max_rel_err"] = res.max_rel_err;
  j["detThat0"] = res.detThat0;
  j["delta_plus"] = res.delta_plus;
  j["delta_minus"] = res.delta_minus;
  j["samples"] = json::array();
  for (const auto& p : res.points) {
    json s;
    s["lambda"] = {p.lambda.real(), p.lambda.imag()};
    s["nu_plus"] = {p.nu_plus.real(), p.nu_plus.imag()};
    s["nu_minus"] = {p.nu_minus.real(), p.nu_minus.imag()};
    s["log10_D_E"] = p.D_E.log10_mod;
    s["log10_D_L"] = p.D_L.log10_mod;
    s["rel_err"] = p.rel_err;
    j["samples"].push_back(s);
  }
  j["config"] = cfg;
  j["config_hash"] = vs::config_hash(cfg);
  std::string body = j.dump(2) + "\n";
  if (out_json.empty())
    std::cout << body;
  else
    vs::write_text_file(out_json, body);
  return 0;
}

int cmd_highfreq(const CommonCfg& c0, double lam0, double lam1, int npts,
                 const std::string& out_json) {
  CommonCfg c = c0;
  finalize(&c);
  if (lam0 < 20.0 || npts < 12)
    throw vs::domain_error("InvalidParam", "need lambda_min >= 20 and at least 12 grid points");
  BuiltSystem b = build_system(c);
  std::vector<double> lams(static_cast<size_t>(npts));
  for (int i = 0; i < npts; ++i)
    lams[static_cast<size_t>(i)] = lam0 + (lam1 - lam0) * i / (npts - 1);
  vs::EvansOpts eo;
  eo.rtol = c.tol;
  eo.atol = c.tol * 1e-2;
  std::vector<double> ln_mod = vs::highfreq_samples(b.sys, lams, c.xi, eo);
  vs::HighfreqFit f = vs::fit_highfreq(lams, ln_mod);
  json cfg = common_json(c, true);
  cfg["command"] = "highfreq";
  cfg["lambda_min"] = lam0;
  cfg["lambda_max"] = lam1;
  cfg["npts"] = npts;
  json j;
  j["model"] = f.sqrt_wins ? "sqrt" : "linear";
  j["sqrt_fit"] = {{"c0", f.c0_sqrt}, {"c1", f.c1_sqrt}, {"r2", f.r2_sqrt}};
  j["linear_fit"] = {{"c0", f.c0_lin}, {"c1", f.c1_lin}, {"r2", f.r2_lin}};
  j["lambda"] = lams;
  j["ln_mod"] = ln_mod;
  j["config"] = cfg;
  j["config_hash"] = vs::config_hash(cfg);
  std::string body = j.dump(2) + "\n";
  if (out_json.empty())
    std::cout << body;
  else
    vs::write_text_file(out_json, body);
  return 0;
}

int cmd_xi0(const CommonCfg& c0, double r, double R, int n0, double eta,
            const std::string& out_json) {
  CommonCfg c = c0;
  finalize(&c);
  vs::EndStateSolve es = vs::solve_endstates(c.gamma, c.u_plus);
  vs::GasModel m;
  m.gamma = c.gamma;
  m.a = es.a;
  vs::ShockProfile p =
      vs::compute_profile(m, es.states, vs::Frame::Eulerian, c.profile_tol, c.extend);
  std::vector<cplx> samples;
  for (int k = 0; k < 10; ++k)
    samples.push_back(cplx(0.4 + 0.25 * k, 0.2 * ((k % 3) - 1)));
  vs::EvansOpts eo;
  eo.rtol = c.tol;
  eo.atol = c.tol * 1e-2;
  vs::Xi0Result res = vs::check_xi0(p, c.mu, c.visc_eta, r, R, n0, samples, eo, eta);
  json cfg = common_json(c, true);
  cfg["command"] = "xi0";
  cfg["contour"] = {{"r", r}, {"R", R}, {"n0", n0}};
  cfg["eta"] = eta;
  json j;
  j["coupling_residual"] = res.coupling_residual;
  j["ratio_variation"] = res.ratio_variation;
  j["ratio0"] = {res.ratio0.real(), res.ratio0.imag()};
  j["winding_1d"] = res.winding_1d;
  j["winding_2d"] = res.winding_2d;
  j["winding_valid_1d"] = res.winding_valid_1d;
  j["winding_valid_2d"] = res.winding_valid_2d;
  j["windings_equal"] = res.winding_1d == res.winding_2d;
  j["config"] = cfg;
  j["config_hash"] = vs::config_hash(cfg);
  std::string body = j.dump(2) + "\n";
  if (out_json.empty())
    std::cout << body;
  else
    vs::write_text_file(out_json, body);
  return 0;
}

int cmd_bench(const CommonCfg& c0, const std::vector<double>& taus, const std::vector<double>& xis,
              double r, double R, int n0, double eta, const std::string& out_csv) {
  CommonCfg c = c0;
  finalize(&c);
  json cfg = common_json(c, true);
  cfg["command"] = "bench";
  cfg["tau_list"] = taus;
  cfg["xi_list"] = xis;
  cfg["contour"] = {{"r", r}, {"R", R}, {"n0", n0}};
  cfg["eta"] = eta;
  std::string hash = vs::config_hash(cfg);
  std::string out = "# config_hash=" + hash + "\n";
  out += "tau_plus,xi,p_E,t_E,p_pL,t_pL\n";
  vs::Contour contour = vs::semiannulus(r, R, n0);
  for (double tau : taus) {
    for (double xi : xis) {
      long pE = -1, pPL = -1;
      double tE = std::nan(""), tPL = std::nan("");
      for (int which = 0; which < 2; ++which) {
        try {
          CommonCfg cc = c;
          cc.u_plus = tau;
          cc.tau_plus = -1.0;
          cc.frame = which == 0 ? "eulerian" : "pseudo-lagrangian";
          cc.xi = xi;
          BuiltSystem b = build_system(cc);
          vs::ContourRunOpts ro;
          ro.eta = eta;
          ro.evans.rtol = cc.tol;
          ro.evans.atol = cc.tol * 1e-2;
          ro.threads = cc.threads;
          auto t0 = std::chrono::steady_clock::now();
          vs::ContourImage img = vs::run_contour(b.sys, xi, contour, ro);
          auto t1 = std::chrono::steady_clock::now();
          double secs = std::chrono::duration<double>(t1 - t0).count();
          if (which == 0) {
            pE = img.cost;
            tE = secs;
          } else {
            pPL = img.cost;
            tPL = secs;
          }
        } catch (const vs::Error& e) {
          std::cerr << "bench cell tau=" << tau << " xi=" << xi << " failed: " << e.what()
                    << "\n";
        }
      }
      out += vs::fmt_double(tau) + "," + vs::fmt_double(xi) + "," +
             (pE >= 0 ? std::to_string(pE) : "nan") + "," +
             (pE >= 0 ? vs::fmt_double(tE) : "nan") + "," +
             (pPL >= 0 ? std::to_string(pPL) : "nan") + "," +
             (pPL >= 0 ? vs::fmt_double(tPL) : "nan") + "\n";
    }
  }
  if (out_csv.empty())
    std::cout << out;
  else
    vs::write_text_file(out_csv, out);
  return 0;
}

int cmd_plot(const std::string& in, const std::string& out_svg, bool log_radial) {
  vs::ContourImage img = vs::parse_image_csv(vs::read_text_file(in));
  vs::winding(img);  // fills the range fields used by the radial compression
  json cfg = {{"command", "plot"}, {"input", in}, {"log_radial", log_radial}};
  std::string svg = vs::image_svg(img, log_radial, vs::config_hash(cfg));
  if (out_svg.empty())
    std::cout << svg;
  else
    vs::write_text_file(out_svg, svg);
  return 0;
}

// Expand "--config file.json" into ordinary option tokens inserted right
// after the subcommand, skipping any key the command line already sets, so
// explicit flags always override the file.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  std::string path;
  for (size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<long>(i));
      break;
    }
  }
  if (path.empty()) return args;
  if (args.size() < 2 || args[1].rfind("--", 0) == 0)
    throw vs::domain_error("InvalidParam", "--config requires a subcommand");
  json j;
  try {
    j = json::parse(vs::read_text_file(path));
  } catch (const json::exception& e) {
    throw vs::io_error("ParseError", std::string("config file: ") + e.what());
  }
  if (!j.is_object()) throw vs::io_error("ParseError", "config file must hold a JSON object");
  auto present = [&](const std::string& opt) {
    for (size_t i = 2; i < args.size(); ++i)
      if (args[i] == opt || args[i].rfind(opt + "=", 0) == 0) return true;
    return false;
  };
  std::vector<std::string> injected;
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::string key = it.key();
    for (char& ch : key)
      if (ch == '_') ch = '-';
    std::string opt = "--" + key;
    if (present(opt)) continue;
    const json& v = it.value();
    if (v.is_boolean()) {
      if (v.get<bool>()) injected.push_back(opt);
    } else if (v.is_array()) {
      injected.push_back(opt);
      for (const json& e : v) injected.push_back(e.is_string() ? e.get<std::string>() : e.dump());
    } else if (v.is_string()) {
      injected.push_back(opt);
      injected.push_back(v.get<std::string>());
    } else {
      injected.push_back(opt);
      injected.push_back(v.dump());
    }
  }
  args.insert(args.begin() + 2, injected.begin(), injected.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"viscous shock Evans-function toolkit"};
  app.require_subcommand(1);

  CommonCfg cfg;
  double r = 1e-3, R = 3.2077, eta = 0.2;
  int n0 = 64;
  std::string out_csv, out_json, in_path, out_svg;
  std::vector<double> lam_re, lam_im, taus{0.2733}, xis{0.0};
  bool legacy_sign = false, nu_euler = false, log_radial = false;
  double lam0 = 20.0, lam1 = 200.0;
  int npts = 16;

  auto* profile = app.add_subcommand("profile", "compute and dump a shock profile");
  add_common(profile, &cfg, true);
  profile->add_option("--out", out_json, "output JSON path (default stdout)");

  auto* evans = app.add_subcommand("evans", "adaptive Evans image over a semi-annulus");
  add_common(evans, &cfg, true);
  evans->add_option("--r", r, "inner radius");
  evans->add_option("--R", R, "outer radius");
  evans->add_option("--n0", n0, "initial contour points");
  evans->add_option("--eta", eta, "relative-distance refinement threshold");
  evans->add_option("--out-csv", out_csv, "image CSV path");
  evans->add_option("--out-json", out_json, "summary JSON path (default stdout)");

  auto* windingc = app.add_subcommand("winding", "winding number of a stored image CSV");
  add_config(windingc);
  windingc->add_option("--in", in_path, "image CSV path")->required();
  windingc->add_option("--out", out_json, "output JSON path (default stdout)");

  auto* evrel = app.add_subcommand("evrel", "Eulerian/Lagrangian ratio relation check");
  add_common(evrel, &cfg, false);
  evrel->add_option("--lambda-re", lam_re, "sample real parts");
  evrel->add_option("--lambda-im", lam_im, "sample imaginary parts");
  evrel->add_flag("--legacy-sign", legacy_sign, "use the +/- exponent sign convention");
  evrel->add_flag("--nu-euler", nu_euler, "take nu from the Eulerian limits");
  evrel->add_option("--out", out_json, "output JSON path (default stdout)");

  auto* highfreq = app.add_subcommand("highfreq", "high-frequency growth-law fit");
  add_common(highfreq, &cfg, true);
  highfreq->add_option("--lambda-min", lam0, "lowest sample (>= 20)");
  highfreq->add_option("--lambda-max", lam1, "highest sample");
  highfreq->add_option("--npts", npts, "sample count (>= 12)");
  highfreq->add_option("--out", out_json, "output JSON path (default stdout)");

  auto* xi0 = app.add_subcommand("xi0", "2D xi=0 reduction consistency check");
  add_common(xi0, &cfg, true);
  xi0->add_option("--r", r, "inner radius");
  xi0->add_option("--R", R, "outer radius");
  xi0->add_option("--n0", n0, "initial contour points");
  xi0->add_option("--eta", eta, "refinement threshold");
  xi0->add_option("--out", out_json, "output JSON path (default stdout)");

  auto* bench = app.add_subcommand("bench", "Eulerian vs pseudo-Lagrangian cost table");
  add_common(bench, &cfg, true);
  bench->add_option("--tau-list", taus, "tau_+ values");
  bench->add_option("--xi-list", xis, "xi values");
  bench->add_option("--r", r, "inner radius");
  bench->add_option("--R", R, "outer radius");
  bench->add_option("--n0", n0, "initial contour points");
  bench->add_option("--eta", eta, "refinement threshold");
  bench->add_option("--out", out_csv, "output CSV path (default stdout)");

  auto* plot = app.add_subcommand("plot", "render an image CSV as SVG");
  add_config(plot);
  plot->add_option("--in", in_path, "image CSV path")->required();
  plot->add_option("--out", out_svg, "output SVG path (default stdout)");
  plot->add_flag("--log-radial", log_radial, "log-modulus radial compression");

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    args.erase(args.begin());  // program name
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const vs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.cls());
  }

  try {
    if (profile->parsed()) return cmd_profile(cfg, out_json);
    if (evans->parsed()) return cmd_evans(cfg, r, R, n0, eta, out_csv, out_json);
    if (windingc->parsed()) return cmd_winding(in_path, out_json);
    if (evrel->parsed()) return cmd_evrel(cfg, lam_re, lam_im, legacy_sign, nu_euler, out_json);
    if (highfreq->parsed()) return cmd_highfreq(cfg, lam0, lam1, npts, out_json);
    if (xi0->parsed()) return cmd_xi0(cfg, r, R, n0, eta, out_json);
    if (bench->parsed()) return cmd_bench(cfg, taus, xis, r, R, n0, eta, out_csv);
    if (plot->parsed()) return cmd_plot(in_path, out_svg, log_radial);
  } catch (const vs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.cls());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
