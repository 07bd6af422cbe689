// Copyright 2026 The jackmoment Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// jackmoment command-line tool. Every invocation prints one JSON object on
// standard output. Exit codes: 0 ok, 1 verification failure, 2 invalid
// input, 3 numerical non-convergence.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "jackmoment/asymptotics.hpp"
#include "jackmoment/hyperg.hpp"
#include "jackmoment/rational.hpp"
#include "jackmoment/rmt_moments.hpp"
#include "jackmoment/verify.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace jackmoment;

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNonConvergence = 3;

/// Numeric flag kept as text so it can be parsed exactly and echoed verbatim.
struct Number {
  std::string text;
  Rational exact() const { return parse_rational(text); }
  double value() const { return to_double(exact()); }
  bool decimal() const { return text.find_first_of(".eE") != std::string::npos; }
};

struct Output {
  json record;
  std::vector<std::string> warnings;

  explicit Output(const std::string& command) {
    record["tool"] = "jackmoment";
    record["version"] = JACKMOMENT_VERSION;
    record["command"] = command;
    record["inputs"] = json::object();
  }
  void input(const std::string& key, const Number& n, bool lattice_sensitive = false) {
    record["inputs"][key] = to_string(n.exact());
    if (lattice_sensitive && n.decimal())
      warnings.push_back("--" + key + " given as a decimal; read exactly as " + to_string(n.exact()) +
                         ", pass p/q to state a lattice value explicitly");
  }
  template <class T>
  void input_raw(const std::string& key, const T& v) {
    record["inputs"][key] = v;
  }
  void print() {
    record["warnings"] = warnings;
    std::cout << record.dump(2) << std::endl;
  }
};

json series_json(const SeriesResult& r) {
  return json{{"value", r.value},
              {"converged", r.converged},
              {"trunc_weight", r.trunc_weight},
              {"tail_estimate", r.tail_estimate},
              {"terms_summed", r.terms_summed}};
}

template <class T>
json form_json(const AsymptoticForm<T>& f) {
  auto num = [](const T& v) -> json {
    if constexpr (is_rational_v<T>) return to_string(v);
    else return v;
  };
  return json{{"regime", to_string(f.regime)}, {"prop_case", f.prop_case}, {"delta", num(f.delta)},
              {"delta_value", as_double(f.delta)}, {"log_flag", f.log_flag},  {"j", f.j},
              {"gamma", num(f.gamma)}};
}

SeriesOptions series_options(double rtol) {
  SeriesOptions o;
  if (!(rtol > 0 && rtol < 1)) throw InvalidArgument("--rtol must lie in (0, 1)");
  o.rel_tol = rtol;
  return o;
}

std::string echo_command(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    std::string a = argv[i];
    if (a.find_first_of(" \t\"'") != std::string::npos) a = "'" + a + "'";
    out += (i ? " " : "") + a;
  }
  return out;
}

/// Runs a command body, mapping library errors to exit codes. A
/// non-convergence still prints the partial result.
template <class Body>
int run(Output& out, Body body) {
  try {
    body();
    out.print();
    return kExitOk;
  } catch (const SeriesNonConvergence& e) {
    out.record["result"] = series_json(e.partial());
    out.record["error"] = {{"kind", "non_convergence"}, {"message", e.what()}};
    out.print();
    return kExitNonConvergence;
  } catch (const NumericalError& e) {
    out.record["error"] = {{"kind", "numerical"}, {"message", e.what()}};
    out.print();
    return kExitNonConvergence;
  } catch (const std::invalid_argument& e) {
    out.record["error"] = {{"kind", "invalid_input"}, {"message", e.what()}};
    out.print();
    return kExitInvalid;
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moments of characteristic polynomials via Jack-polynomial hypergeometric series"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(JACKMOMENT_VERSION));

  int threads = 1;
  std::uint64_t seed = 20260101;
  double rtol = 1e-12;
  app.add_option("--threads", threads, "worker threads")->envname("JACKMOMENT_THREADS")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "random seed for Monte Carlo checks");
  app.add_option("--rtol", rtol, "series relative tolerance");

  // hyp
  Number ha{}, hb{}, hc{}, halpha{}, ht{};
  int hn = 1;
  auto* hyp = app.add_subcommand("hyp", "equal-argument 2F1 series");
  hyp->add_option("--a", ha.text)->required();
  hyp->add_option("--b", hb.text)->required();
  hyp->add_option("--c", hc.text)->required();
  hyp->add_option("--alpha", halpha.text)->required();
  hyp->add_option("--n", hn)->required();
  hyp->add_option("--t", ht.text)->required();
  hyp->add_option("--rtol", rtol);

  // moment
  auto* moment_cmd = app.add_subcommand("moment", "average of |det(point - M)|^{2 mu}");
  moment_cmd->require_subcommand(1);
  Number mbeta{"2"}, mmu{}, mabsz{}, ma{}, mb{}, mx{}, meps{};
  int mn = 1;
  std::string mfamily, mmethod = "series";
  auto* mcirc = moment_cmd->add_subcommand("circular", "circular beta ensemble, point |z|");
  mcirc->add_option("--beta", mbeta.text)->required();
  mcirc->add_option("--mu", mmu.text)->required();
  mcirc->add_option("--absz", mabsz.text)->required();
  mcirc->add_option("--n", mn)->required();
  mcirc->add_option("--method", mmethod)->check(CLI::IsMember({"series", "toeplitz"}));
  mcirc->add_option("--rtol", rtol);
  auto* mjac = moment_cmd->add_subcommand("jacobi", "Jacobi beta ensemble on [0,1], point x > 1");
  mjac->add_option("--a", ma.text)->required();
  mjac->add_option("--b", mb.text)->required();
  mjac->add_option("--beta", mbeta.text)->required();
  mjac->add_option("--mu", mmu.text)->required();
  mjac->add_option("--x", mx.text)->required();
  mjac->add_option("--n", mn)->required();
  mjac->add_option("--rtol", rtol);
  auto* mgrp = moment_cmd->add_subcommand("group", "Sp(2N), O+(2N), O-(2N) at z = 1 + eps");
  mgrp->add_option("--family", mfamily)->required()->check(CLI::IsMember({"sp", "o+", "o-"}));
  mgrp->add_option("--n", mn)->required();
  mgrp->add_option("--mu", mmu.text)->required();
  mgrp->add_option("--eps", meps.text)->required();
  mgrp->add_option("--rtol", rtol);

  // exponent
  auto* exp_cmd = app.add_subcommand("exponent", "predicted divergence exponent");
  exp_cmd->require_subcommand(1);
  Number ebeta{}, emu{}, eb{}, ek{};
  int en = 1;
  std::string efamily;
  auto* ecirc = exp_cmd->add_subcommand("circular", "circular ensemble as |z| -> 1");
  ecirc->add_option("--beta", ebeta.text)->required();
  ecirc->add_option("--mu", emu.text)->required();
  ecirc->add_option("--n", en)->required();
  auto* ejac = exp_cmd->add_subcommand("jacobi", "Jacobi ensemble as x -> 1");
  ejac->add_option("--b", eb.text)->required();
  ejac->add_option("--beta", ebeta.text)->required();
  ejac->add_option("--mu", emu.text)->required();
  ejac->add_option("--n", en)->required();
  auto* egrp = exp_cmd->add_subcommand("group", "classical group as eps -> 0");
  egrp->add_option("--family", efamily)->required()->check(CLI::IsMember({"sp", "o+", "o-"}));
  egrp->add_option("--n", en)->required();
  egrp->add_option("--mu", emu.text)->required();
  auto* ebk = exp_cmd->add_subcommand("bk", "large-N exponent delta(k, beta)");
  ebk->add_option("--k", ek.text)->required();
  ebk->add_option("--beta", ebeta.text)->required();

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "least-squares exponent fit over an eps sweep");
  fit_cmd->require_subcommand(1);
  Number fbeta{}, fmu{};
  int fn = 1, fpoints = 10;
  double feps_max = 1e-2, feps_min = 1e-3;
  std::string fout, fmethod = "series";
  auto* fcirc = fit_cmd->add_subcommand("circular", "circular ensemble at |z| = 1 - eps");
  fcirc->add_option("--beta", fbeta.text)->required();
  fcirc->add_option("--mu", fmu.text)->required();
  fcirc->add_option("--n", fn)->required();
  fcirc->add_option("--eps-max", feps_max);
  fcirc->add_option("--eps-min", feps_min);
  fcirc->add_option("--points", fpoints);
  fcirc->add_option("--out", fout, "per-eps CSV path");
  fcirc->add_option("--method", fmethod)->check(CLI::IsMember({"series", "toeplitz"}));
  fcirc->add_option("--threads", threads)->check(CLI::PositiveNumber);

  // limit
  auto* limit_cmd = app.add_subcommand("limit", "large-N limit for |z| < 1");
  Number lbeta{}, lmu{}, labsz{};
  int ln = 0;
  limit_cmd->add_option("--beta", lbeta.text)->required();
  limit_cmd->add_option("--mu", lmu.text)->required();
  limit_cmd->add_option("--absz", labsz.text)->required();
  limit_cmd->add_option("--n", ln, "also evaluate the finite-N moment");
  limit_cmd->add_option("--rtol", rtol);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run acceptance checks");
  std::string suite = "all";
  verify_cmd->add_option("suite", suite)->check(CLI::IsMember(verify_suite_names()));
  verify_cmd->add_option("--threads", threads)->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  Output out(echo_command(argc, argv));

  if (hyp->parsed()) {
    return run(out, [&] {
      out.record["command_kind"] = "hyp";
      out.input("a", ha, true);
      out.input("b", hb, true);
      out.input("c", hc, true);
      out.input("alpha", halpha, true);
      out.input_raw("n", hn);
      out.input("t", ht);
      out.input_raw("rtol", rtol);
      const Hyp2F1Params<double> p{ha.value(), hb.value(), hc.value(), halpha.value(), hn, ht.value()};
      out.record["result"] = series_json(hyp2f1_equal(p, series_options(rtol)));
    });
  }

  if (moment_cmd->parsed()) {
    return run(out, [&] {
      const auto opts = series_options(rtol);
      out.input("mu", mmu);
      out.input_raw("n", mn);
      out.input_raw("rtol", rtol);
      if (mcirc->parsed()) {
        out.record["command_kind"] = "moment circular";
        out.input("beta", mbeta);
        out.input("absz", mabsz);
        out.input_raw("method", mmethod);
        const MomentQuery q{CircularEnsemble{mbeta.value(), mn}, mmu.value(), mabsz.value()};
        const auto method = mmethod == "toeplitz" ? CircularMethod::Toeplitz : CircularMethod::Series;
        json res;
        if (std::fabs(q.point) > 1.0) {
          const auto refl = circular_reflect(q);
          const auto inner = circular_moment_any(refl.reflected, opts, method);
          res = series_json(detail::scaled(inner, refl.prefactor));
          res["reflected"] = true;
          res["prefactor"] = refl.prefactor;
          res["reflected_absz"] = refl.reflected.point;
          res["reflected_value"] = inner.value;
        } else {
          res = series_json(circular_moment_any(q, opts, method));
          res["reflected"] = false;
        }
        out.record["result"] = res;
      } else if (mjac->parsed()) {
        out.record["command_kind"] = "moment jacobi";
        out.input("a", ma);
        out.input("b", mb);
        out.input("beta", mbeta);
        out.input("x", mx);
        const MomentQuery q{JacobiEnsemble{ma.value(), mb.value(), mbeta.value(), mn}, mmu.value(), mx.value()};
        out.record["result"] = series_json(jacobi_moment(q, opts));
      } else {
        out.record["command_kind"] = "moment group";
        out.input_raw("family", mfamily);
        out.input("eps", meps);
        const auto family = parse_group_family(mfamily);
        const auto red = group_reduction(family, mn, mmu.value(), meps.value());
        auto res = series_json(group_moment(family, mn, mmu.value(), meps.value(), opts));
        res["x_tilde"] = red.x_tilde;
        res["prefactor"] = red.prefactor;
        out.record["result"] = res;
      }
    });
  }

  if (exp_cmd->parsed()) {
    return run(out, [&] {
      if (ebk->parsed()) {
        out.record["command_kind"] = "exponent bk";
        out.input("k", ek, true);
        out.input("beta", ebeta, true);
        const Rational d = bk_delta(ek.exact(), ebeta.exact());
        out.record["result"] = {{"delta", to_string(d)}, {"delta_value", to_double(d)}};
        return;
      }
      out.input("mu", emu, true);
      out.input_raw("n", en);
      if (ecirc->parsed()) {
        out.record["command_kind"] = "exponent circular";
        out.input("beta", ebeta, true);
        out.record["result"] = form_json(circular_exponent(emu.exact(), ebeta.exact(), en));
      } else if (ejac->parsed()) {
        out.record["command_kind"] = "exponent jacobi";
        out.input("b", eb, true);
        out.input("beta", ebeta, true);
        out.record["result"] = form_json(jacobi_exponent(emu.exact(), eb.exact(), ebeta.exact(), en));
      } else {
        out.record["command_kind"] = "exponent group";
        out.input_raw("family", efamily);
        out.record["result"] = form_json(group_exponent(parse_group_family(efamily), en, emu.exact()));
      }
    });
  }

  if (fit_cmd->parsed()) {
    return run(out, [&] {
      out.record["command_kind"] = "fit circular";
      out.input("beta", fbeta);
      out.input("mu", fmu);
      out.input_raw("n", fn);
      out.input_raw("eps_max", feps_max);
      out.input_raw("eps_min", feps_min);
      out.input_raw("points", fpoints);
      out.input_raw("method", fmethod);
      out.input_raw("threads", threads);
      if (!fout.empty()) out.input_raw("out", fout);
      FitOptions opts;
      opts.series.rel_tol = series_options(rtol).rel_tol;
      opts.method = fmethod == "toeplitz" ? MomentMethod::Toeplitz : MomentMethod::Series;
      opts.threads = threads;
      const auto grid = log_spaced_grid(feps_max, feps_min, fpoints);
      const auto pred = circular_exponent(fmu.exact(), fbeta.exact(), fn);
      AsymptoticForm<double> pd{pred.regime, pred.prop_case, to_double(pred.delta), pred.log_flag, pred.j,
                                to_double(pred.gamma)};
      const auto rep = fit_divergence({CircularEnsemble{fbeta.value(), fn}, fmu.value(), 0.0}, grid, pd, opts);
      if (!fout.empty()) {
        std::ofstream csv(fout);
        if (!csv) throw InvalidArgument("cannot open --out file '" + fout + "'");
        csv.imbue(std::locale::classic());
        csv.precision(17);
        csv << "eps,value,trunc_weight,converged\n";
        for (const auto& p : rep.points)
          csv << p.epsilon << ',' << p.value << ',' << p.trunc_weight << ',' << (p.converged ? 1 : 0) << '\n';
      }
      json res{{"fitted_delta", rep.fitted_delta}};
      if (pd.log_flag) res["fitted_log_coeff"] = rep.fitted_log_coeff;
      res["predicted"] = form_json(pred);
      res["epsilons"] = rep.epsilons;
      res["residual_rms"] = rep.residual_rms;
      res["all_converged"] = rep.all_converged;
      json pts = json::array();
      for (const auto& p : rep.points) {
        json j{{"eps", p.epsilon}, {"value", p.value}, {"converged", p.converged},
               {"trunc_weight", p.trunc_weight}, {"tail_estimate", p.tail_estimate}};
        if (!p.note.empty()) j["note"] = p.note;
        pts.push_back(j);
      }
      res["points"] = pts;
      out.record["result"] = res;
    });
  }

  if (limit_cmd->parsed()) {
    return run(out, [&] {
      out.record["command_kind"] = "limit";
      out.input("beta", lbeta);
      out.input("mu", lmu);
      out.input("absz", labsz);
      const double beta = lbeta.value(), mu = lmu.value(), r = labsz.value();
      if (!(std::fabs(r) < 1.0)) throw InvalidArgument("limit needs |z| < 1");
      if (!(beta > 0)) throw InvalidArgument("beta must be positive");
      const double limit = szego_limit_log_modulus(mu, r, beta);
      json res{{"limit", limit}};
      if (ln > 0) {
        out.input_raw("n", ln);
        out.input_raw("rtol", rtol);
        const auto fin = circular_moment({CircularEnsemble{beta, ln}, mu, r}, series_options(rtol));
        res["finite_n"] = series_json(fin);
        res["gap"] = std::fabs(fin.value - limit) / limit;
      }
      out.record["result"] = res;
    });
  }

  if (verify_cmd->parsed()) {
    int code = kExitOk;
    const int rc = run(out, [&] {
      out.record["command_kind"] = "verify";
      out.input_raw("suite", suite);
      out.input_raw("seed", seed);
      out.input_raw("threads", threads);
      VerifyOptions vo;
      vo.threads = threads;
      vo.seed = seed;
      json checks = json::array();
      bool all = true;
      for (const auto& r : verify_suite(suite, vo, [](const CheckResult& r) {
             std::cerr << (r.passed ? "PASS " : "FAIL ") << r.id << ' ' << r.title << " [" << r.detail << "]\n";
           })) {
        checks.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail},
                          {"seconds", r.seconds}});
        all = all && r.passed;
      }
      out.record["result"] = {{"passed", all}, {"checks", checks}};
      if (!all) code = kExitVerify;
    });
    return rc != kExitOk ? rc : code;
  }
  return kExitInvalid;
}
