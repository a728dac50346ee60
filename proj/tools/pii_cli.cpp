// Command-line front end: single-point evaluation, regime sweeps,
// determinant/spectrum computation, regime-diagram data, and the acceptance
// self-test. CSV output is byte-deterministic (17 significant digits, fixed
// column order).

#include "pii/asymptotics.hpp"
#include "pii/oracles.hpp"
#include "pii/scaling.hpp"
#include "pii/specfun.hpp"
#include "pii/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

using json = nlohmann::json;
using namespace pii;

namespace {

constexpr const char* kSchema = "# pii-transitions v1 schema";

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string opt_num(const std::optional<double>& v) {
  return v ? num(*v) : std::string();
}

const char* regime_name(RegimeLabel::Tag t) {
  switch (t) {
    case RegimeLabel::Tag::Boutroux: return "boutroux";
    case RegimeLabel::Tag::StokesRegion: return "stokes";
    case RegimeLabel::Tag::HastingsMcLeod: return "hastings-mcleod";
    case RegimeLabel::Tag::AboveLine: return "above-line";
  }
  return "?";
}

struct ComparisonRow {
  std::string formula;
  bool chosen = false;
  double x = 0, t = 0, v = 0, kappa = 0, sigma = 0;
  std::string branch;
  std::string regime;
  double stokes_coeff = 0;
  std::optional<double> value;
  std::optional<double> envelope;
  std::optional<double> pole_distance;
  std::optional<double> oracle_u;
  std::optional<double> abs_diff;
  std::optional<double> rel_diff;
  std::string error;
};

const char* kCsvColumns =
    "formula,chosen,x,t,v,kappa,sigma,branch,regime,stokes_coeff,value,"
    "envelope_exponent,pole_distance,oracle_u,abs_diff,rel_diff,error";

std::string row_csv(const ComparisonRow& r) {
  std::string s;
  s += r.formula;
  s += ',';
  s += r.chosen ? "1" : "0";
  s += ',';
  s += num(r.x) + ',' + num(r.t) + ',' + num(r.v) + ',' + num(r.kappa) + ',' +
       num(r.sigma) + ',';
  s += r.branch + ',' + r.regime + ',' + num(r.stokes_coeff) + ',';
  s += opt_num(r.value) + ',' + opt_num(r.envelope) + ',' +
       opt_num(r.pole_distance) + ',';
  s += opt_num(r.oracle_u) + ',' + opt_num(r.abs_diff) + ',' +
       opt_num(r.rel_diff) + ',';
  s += r.error;
  return s;
}

json row_json(const ComparisonRow& r) {
  json j;
  j["formula"] = r.formula;
  j["chosen"] = r.chosen;
  j["x"] = r.x;
  j["t"] = r.t;
  j["v"] = r.v;
  j["kappa"] = r.kappa;
  j["sigma"] = r.sigma;
  j["branch"] = r.branch;
  j["regime"] = r.regime;
  j["stokes_coeff"] = r.stokes_coeff;
  auto put = [&](const char* k, const std::optional<double>& v) {
    if (v) j[k] = *v;
  };
  put("value", r.value);
  put("envelope_exponent", r.envelope);
  put("pole_distance", r.pole_distance);
  put("oracle_u", r.oracle_u);
  put("abs_diff", r.abs_diff);
  put("rel_diff", r.rel_diff);
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

void fill_point(ComparisonRow& r, const ScalePoint& p, const RegimeLabel& lab) {
  r.x = p.x;
  r.t = p.t;
  r.v = p.v;
  r.kappa = p.kappa;
  r.sigma = p.sigma;
  r.branch = p.branch == ScalePoint::Branch::Regular ? "regular" : "singular";
  r.regime = regime_name(lab.tag);
  r.stokes_coeff = lab.stokes_coeff;
}

void attach_oracle(ComparisonRow& r, double oracle) {
  if (!r.value) return;
  r.oracle_u = oracle;
  r.abs_diff = std::fabs(*r.value - oracle);
  r.rel_diff = oracle != 0.0 ? *r.abs_diff / std::fabs(oracle) : *r.abs_diff;
}

std::optional<double> run_oracle(const ScalePoint& p, int nodes,
                                 std::string* err) {
  try {
    if (p.branch != ScalePoint::Branch::Regular) {
      *err = "oracle covers the regular branch only";
      return std::nullopt;
    }
    int n = std::min(std::max(nodes, 20), 200);
    UFromDet u = u_from_det(p.x, p.gamma(), 2e-2, n);
    return u.u;
  } catch (const std::exception& e) {
    *err = e.what();
    return std::nullopt;
  }
}

// Rows for one point: the dispatch choice first (marked), then the other
// applicable formulas; `all_formulas` limits sweep rows to the boundary set.
std::vector<ComparisonRow> evaluate_point(const ScalePoint& p,
                                          const RegimeParams& params,
                                          bool with_oracle, int nodes,
                                          bool all_formulas) {
  std::vector<ComparisonRow> rows;
  RegimeLabel lab = classify_regime(p.t, p.v, params);

  std::optional<double> oracle;
  std::string oracle_err;
  if (with_oracle) oracle = run_oracle(p, nodes, &oracle_err);

  auto add = [&](const std::string& name, bool chosen, auto&& fn) {
    ComparisonRow r;
    r.formula = name;
    r.chosen = chosen;
    fill_point(r, p, lab);
    try {
      PIIAsymptote a = fn();
      r.value = a.value;
      r.envelope = a.envelope_exponent;
      r.pole_distance = a.pole_distance;
      if (!a.note.empty()) r.error = a.note;
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    if (oracle)
      attach_oracle(r, *oracle);
    else if (with_oracle && r.error.empty())
      r.error = oracle_err;
    rows.push_back(std::move(r));
  };

  add("dispatch", true, [&] { return u_dispatch(p, params); });
  bool near_line = std::fabs(lab.dist_separating) * p.t <= 1.0;
  if (all_formulas || near_line) {
    add("boutroux", false, [&] {
      return p.branch == ScalePoint::Branch::Regular ? u_boutroux_regular(p)
                                                     : u_boutroux_singular(p);
    });
    add("hm-region", false, [&] { return u_hm_region(p); });
  }
  if (all_formulas) {
    add("hm-region-band-literal", false,
        [&] { return u_hm_region(p, AmplitudeConstant::BandLiteral); });
    if (p.branch == ScalePoint::Branch::Regular) {
      add("stokes", false, [&] { return u_stokes(p, params.f3); });
      add("as-fixed", false, [&] { return u_as_fixed(p.x, p.gamma()); });
    } else {
      add("kapaev-fixed", false,
          [&] { return u_kapaev_fixed(p.x, std::sqrt(p.gamma())); });
    }
    add("hm-fixed", false, [&] { return u_hm_fixed(p.x, p.eps); });
  }
  return rows;
}

struct OutputSink {
  std::ofstream file;
  explicit OutputSink(const std::string& path) {
    if (!path.empty()) {
      file.open(path);
      if (!file) throw std::runtime_error("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file.is_open() ? file : std::cout; }
};

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v;
  if (n <= 1) {
    v.push_back(lo);
    return v;
  }
  for (int i = 0; i < n; ++i) v.push_back(lo + (hi - lo) * i / (n - 1));
  return v;
}

int default_nodes() {
  if (const char* env = std::getenv("PII_DEFAULT_NODES")) {
    int n = std::atoi(env);
    if (n >= 20 && n <= 200) return n;
  }
  return 60;
}

void emit_rows(const std::vector<std::vector<ComparisonRow>>& results,
               const std::string& format, OutputSink& sink) {
  if (format == "json") {
    json j = json::array();
    for (const auto& rows : results)
      for (const auto& r : rows) j.push_back(row_json(r));
    sink.stream() << j.dump(2) << "\n";
  } else {
    sink.stream() << kSchema << "\n" << kCsvColumns << "\n";
    for (const auto& rows : results)
      for (const auto& r : rows) sink.stream() << row_csv(r) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Painleve II transition asymptotics and Airy-kernel determinants"};
  app.require_subcommand(1);

  double x = 0, gamma = 0, tval = 0, vval = 0, f3 = 1.0;
  std::string branch = "regular", format = "csv", out_path;
  bool with_oracle = false;
  int nodes = default_nodes();
  int jobs = 1;
  RegimeParams params;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--f3", f3, "Stokes-band depth parameter, < 7/6");
    cmd->add_option("--nodes", nodes, "Nystrom base node count");
    cmd->add_option("--format", format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", out_path, "write output to PATH");
    cmd->add_flag("--oracle", with_oracle, "run the determinant oracle");
  };

  auto* eval = app.add_subcommand("eval", "evaluate every applicable formula");
  eval->add_option("--x", x, "x < 0");
  eval->add_option("--gamma", gamma, "|s1|^2 in (0,1) or (1,2)");
  eval->add_option("--t", tval, "t = (-x)^{3/2}");
  eval->add_option("--v", vval, "v = -ln|1-gamma|");
  eval->add_option("--branch", branch, "regular|singular")
      ->check(CLI::IsMember({"regular", "singular"}));
  add_common(eval);

  auto* sweep = app.add_subcommand("sweep", "grid sweep with dispatch rows");
  std::vector<double> t_range, v_range, x_range, g_range;
  sweep->add_option("--t-range", t_range, "MIN MAX COUNT")->expected(3);
  sweep->add_option("--v-range", v_range, "MIN MAX COUNT")->expected(3);
  sweep->add_option("--x-range", x_range, "MIN MAX COUNT")->expected(3);
  sweep->add_option("--gamma-range", g_range, "MIN MAX COUNT")->expected(3);
  sweep->add_option("--jobs", jobs, "parallel evaluation width");
  sweep->add_option("--delta", params.delta, "Boutroux band margin");
  sweep->add_option("--f2", params.f2, "Hastings-McLeod band depth");
  sweep->add_option("--branch", branch, "regular|singular")
      ->check(CLI::IsMember({"regular", "singular"}));
  add_common(sweep);

  auto* det = app.add_subcommand("det", "Fredholm determinant and spectrum");
  bool spectrum_flag = false, counts_flag = false;
  det->add_option("--x", x, "x")->required();
  det->add_option("--gamma", gamma, "gamma >= 0");
  det->add_flag("--spectrum", spectrum_flag, "include the first 8 eigenvalues");
  det->add_flag("--counts", counts_flag, "include E_0..E_3");
  det->add_option("--nodes", nodes, "Nystrom base node count");
  det->add_option("--out", out_path, "write output to PATH");

  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance criteria");
  std::string level = "full";
  verify_cmd->add_option("--level", level, "fast|full")
      ->check(CLI::IsMember({"fast", "full"}));
  std::string vformat = "json";
  verify_cmd->add_option("--format", vformat, "json|text")
      ->check(CLI::IsMember({"json", "text"}));
  verify_cmd->add_option("--out", out_path, "write report to PATH");

  auto* plot = app.add_subcommand("plotdata", "regime-diagram grid data");
  plot->add_option("--t-range", t_range, "MIN MAX COUNT")->expected(3)->required();
  plot->add_option("--v-range", v_range, "MIN MAX COUNT")->expected(3)->required();
  plot->add_option("--delta", params.delta, "Boutroux band margin");
  plot->add_option("--f2", params.f2, "Hastings-McLeod band depth");
  plot->add_option("--format", format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  plot->add_option("--out", out_path, "write output to PATH");

  CLI11_PARSE(app, argc, argv);

  try {
    params.f3 = f3;

    if (eval->parsed()) {
      ScalePoint p =
          eval->count("--x") && eval->count("--gamma")
              ? ScalePoint::from_x_gamma(x, gamma)
              : ScalePoint::from_t_v(tval, vval,
                                     branch == "singular"
                                         ? ScalePoint::Branch::Singular
                                         : ScalePoint::Branch::Regular);
      std::vector<std::vector<ComparisonRow>> results;
      results.push_back(evaluate_point(p, params, with_oracle, nodes, true));
      OutputSink sink(out_path);
      emit_rows(results, format, sink);
      return 0;
    }

    if (sweep->parsed()) {
      std::vector<ScalePoint> points;
      ScalePoint::Branch br = branch == "singular" ? ScalePoint::Branch::Singular
                                                   : ScalePoint::Branch::Regular;
      if (t_range.size() == 3 && v_range.size() == 3) {
        for (double tv : linspace(t_range[0], t_range[1], (int)t_range[2]))
          for (double vv : linspace(v_range[0], v_range[1], (int)v_range[2]))
            points.push_back(ScalePoint::from_t_v(tv, vv, br));
      } else if (x_range.size() == 3 && g_range.size() == 3) {
        for (double xv : linspace(x_range[0], x_range[1], (int)x_range[2]))
          for (double gv : linspace(g_range[0], g_range[1], (int)g_range[2]))
            points.push_back(ScalePoint::from_x_gamma(xv, gv));
      } else {
        std::cerr << "sweep: give --t-range and --v-range, or --x-range and "
                     "--gamma-range\n";
        return 2;
      }

      std::vector<std::vector<ComparisonRow>> results(points.size());
      std::atomic<size_t> next{0};
      auto worker = [&] {
        for (;;) {
          size_t i = next.fetch_add(1);
          if (i >= points.size()) break;
          results[i] =
              evaluate_point(points[i], params, with_oracle, nodes, false);
        }
      };
      int width = std::max(1, jobs);
      std::vector<std::thread> pool;
      for (int w = 1; w < width; ++w) pool.emplace_back(worker);
      worker();
      for (auto& th : pool) th.join();

      OutputSink sink(out_path);
      emit_rows(results, format, sink);
      return 0;
    }

    if (det->parsed()) {
      int n = std::min(std::max(nodes, 20), 200);
      if (!det->count("--gamma")) gamma = 1.0;
      DetResult r = fredholm_det(x, gamma, n);
      json j;
      j["x"] = x;
      j["gamma"] = gamma;
      j["nodes"] = n;
      j["log_det"] = r.log_det;
      j["det"] = std::exp(r.log_det);
      j["n_used"] = r.n_used;
      j["converged"] = r.converged;
      j["delta_last_doubling"] = r.delta_last_doubling;
      if (spectrum_flag) {
        SpectrumResult sp = kernel_spectrum(x, n);
        json eigs = json::array();
        for (int i = 0; i < 8 && i < (int)sp.eigs.size(); ++i)
          eigs.push_back(sp.eigs[i]);
        j["spectrum_head"] = eigs;
        j["n_reliable"] = sp.n_reliable;
      }
      if (counts_flag) {
        json counts;
        double total = 0.0;
        for (int k = 0; k <= 3; ++k) {
          double ek = gap_count_prob(x, k, n);
          counts["E" + std::to_string(k)] = ek;
          total += ek;
        }
        counts["sum"] = total;
        j["counts"] = counts;
      }
      OutputSink sink(out_path);
      sink.stream() << j.dump(2) << "\n";
      return r.converged ? 0 : 3;
    }

    if (verify_cmd->parsed()) {
      auto results = pii::verify::run(level == "fast" ? pii::verify::Level::Fast
                                                      : pii::verify::Level::Full);
      bool all = true;
      for (const auto& c : results) all = all && c.pass;
      OutputSink sink(out_path);
      if (vformat == "text") {
        for (const auto& c : results)
          sink.stream() << c.id << " " << (c.pass ? "PASS" : "FAIL") << " "
                        << c.detail << "\n";
      } else {
        json j;
        j["level"] = level;
        j["all_pass"] = all;
        json arr = json::array();
        for (const auto& c : results) {
          json cj;
          cj["id"] = c.id;
          cj["name"] = c.name;
          cj["pass"] = c.pass;
          cj["seconds"] = c.seconds;
          cj["detail"] = c.detail;
          json m;
          for (const auto& [k, v] : c.metrics) m[k] = v;
          cj["metrics"] = m;
          arr.push_back(cj);
        }
        j["criteria"] = arr;
        sink.stream() << j.dump(2) << "\n";
      }
      return all ? 0 : 1;
    }

    if (plot->parsed()) {
      OutputSink sink(out_path);
      auto ts = linspace(t_range[0], t_range[1], (int)t_range[2]);
      auto vs = linspace(v_range[0], v_range[1], (int)v_range[2]);
      if (format == "json") {
        json j = json::array();
        for (double tv : ts)
          for (double vv : vs) {
            RegimeLabel lab = classify_regime(tv, vv, params);
            j.push_back({{"t", tv},
                         {"v", vv},
                         {"kappa", vv / tv},
                         {"regime", regime_name(lab.tag)},
                         {"stokes_coeff", lab.stokes_coeff},
                         {"dist_separating", lab.dist_separating},
                         {"dist_stokes", lab.dist_stokes}});
          }
        sink.stream() << j.dump(2) << "\n";
      } else {
        sink.stream() << kSchema << "\n"
                      << "t,v,kappa,sigma,regime,stokes_coeff,dist_separating,"
                         "dist_stokes\n";
        for (double tv : ts)
          for (double vv : vs) {
            RegimeLabel lab = classify_regime(tv, vv, params);
            sink.stream() << num(tv) << ',' << num(vv) << ',' << num(vv / tv)
                          << ',' << num(kSeparatrixKappa - vv / tv) << ','
                          << regime_name(lab.tag) << ','
                          << num(lab.stokes_coeff) << ','
                          << num(lab.dist_separating) << ','
                          << num(lab.dist_stokes) << "\n";
          }
      }
      return 0;
    }
  } catch (const ConvergenceError& e) {
    std::cerr << "oracle non-convergence: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
