#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dobinski/boxdim.hpp"
#include "dobinski/digit_program.hpp"
#include "dobinski/identity.hpp"
#include "dobinski/interval.hpp"
#include "dobinski/json_io.hpp"
#include "dobinski/series.hpp"
#include "dobinski/setspec.hpp"
#include "dobinski/willow.hpp"

namespace {

using namespace dobinski;

struct GlobalCfg {
  long precision = 30;  // decimal digits
  long cap = kDefaultExponentCap;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
  bool timings = false;

  long prec_bits() const { return precision * 4 + 16; }
};

std::string float_str(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string kv_csv(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::string out = "key,value\n";
  for (const auto& [k, v] : rows) out += csv_field(k) + "," + csv_field(v) + "\n";
  return out;
}

// Certified decimal rendering of f(prec_bits) at the configured digit count.
template <typename F>
std::string digits_of(F&& f, const GlobalCfg& g) {
  return eval_to_digits(std::forward<F>(f), static_cast<int>(g.precision),
                        g.prec_bits());
}

struct Output {
  Json results;
  std::string csv;
};

WillowMode parse_mode(const std::string& text) {
  if (text == "tamed") return WillowMode::Tamed;
  return WillowMode::True;  // "true" / "true-dobinski"
}

PhiSpec set_to_phi(const SetSpec& s) {
  PhiSpec phi;
  switch (s.kind) {
    case SetSpec::Kind::DobinskiK:
      phi.kind = PhiSpec::Kind::DoubleExp;
      phi.k = s.k;
      break;
    case SetSpec::Kind::UniformGrid:
      phi.kind = PhiSpec::Kind::Constant;
      phi.c = s.omega;
      break;
    case SetSpec::Kind::RunAtLeast:
      phi.kind = PhiSpec::Kind::PowerDecay;
      phi.alpha = s.alpha;
      break;
    case SetSpec::Kind::RunAtLeastExp:
      phi.kind = PhiSpec::Kind::SuperExp;
      phi.alpha = s.alpha;
      break;
    case SetSpec::Kind::BPhi:
      phi = s.phi;
      break;
  }
  return phi;
}

// ---------------------------------------------------------------- expand

Output run_expand(const GlobalCfg& g, const std::string& xtext, long N) {
  DigitProgram p = parse_program(xtext);
  Json rows = Json::array();
  std::string csv = "n,z_n,P_n,dist\n";
  for (long n = 1; n <= N; ++n) {
    RunLen rl = run_length(p, BigInt(n));
    NearestDyadic nd = nearest_dyadic(p, n);
    Json j;
    j["n"] = n;
    j["z_n"] = rl.unbounded ? Json("inf") : Json(rl.z.str());
    j["P_n"] = rat_str(nd.p_n);
    std::string dist;
    if (nd.dist_zero) {
      j["dist"] = "0";
      dist = "0";
    } else if (nd.dist) {
      j["dist"] = rat_str(*nd.dist);
      dist = rat_str(*nd.dist);
    } else {
      j["dist_log2_lo"] = "-" + nd.sand_lo.str();
      j["dist_log2_hi"] = "-" + nd.sand_hi.str();
      dist = "[2^-" + nd.sand_lo.str() + ",2^-" + nd.sand_hi.str() + "]";
    }
    rows.push_back(std::move(j));
    csv += std::to_string(n) + "," + (rl.unbounded ? "inf" : rl.z.str()) + "," +
           csv_field(rat_str(nd.p_n)) + "," + csv_field(dist) + "\n";
  }
  Json res;
  res["x"] = program_to_string(p);
  res["digits"] = digits(p, N + 1);
  res["rows"] = std::move(rows);
  (void)g;
  return {std::move(res), std::move(csv)};
}

// ---------------------------------------------------------------- product

Output run_product(const GlobalCfg& g, const std::string& xtext, long N) {
  DigitProgram p = parse_program(xtext);
  Json rows = Json::array();
  std::string csv = "n,partial,tail,target,abs_error\n";
  for (long n = 0; n <= N; ++n) {
    std::string partial =
        digits_of([&](long pb) { return product_trace(p, n, pb).partial; }, g);
    std::string tail =
        digits_of([&](long pb) { return product_trace(p, n, pb).tail; }, g);
    std::string target =
        digits_of([&](long pb) { return product_trace(p, n, pb).target; }, g);
    std::string abs_err = digits_of(
        [&](long pb) {
          ProductTrace t = product_trace(p, n, pb);
          return (t.partial - t.target).abs();
        },
        g);
    Json j;
    j["n"] = n;
    j["partial"] = partial;
    j["tail"] = tail;
    j["target"] = target;
    j["abs_error"] = abs_err;
    rows.push_back(std::move(j));
    csv += std::to_string(n) + "," + partial + "," + tail + "," + target + "," +
           abs_err + "\n";
  }
  Json res;
  res["x"] = program_to_string(p);
  res["rows"] = std::move(rows);
  return {std::move(res), std::move(csv)};
}

// ---------------------------------------------------------------- classify

Output run_classify(const GlobalCfg& g, const std::string& xtext) {
  (void)g;
  DigitProgram p = parse_program(xtext);
  Classification c = classify_membership(p);
  Json res;
  res["x"] = program_to_string(p);
  const char* verdict = c.verdict == Classification::Verdict::InD ? "in-D"
                        : c.verdict == Classification::Verdict::NotInD
                            ? "not-in-D"
                            : "unknown-beyond-horizon";
  res["verdict"] = verdict;
  std::vector<std::pair<std::string, std::string>> kv{{"x", program_to_string(p)},
                                                      {"verdict", verdict}};
  if (c.verdict == Classification::Verdict::InD) {
    res["k"] = c.k;
    kv.emplace_back("k", std::to_string(c.k));
  }
  if (c.limsup_unbounded) {
    res["limsup"] = "unbounded";
    kv.emplace_back("limsup", "unbounded");
  } else if (c.limsup) {
    res["limsup"] = rat_str(*c.limsup);
    kv.emplace_back("limsup", rat_str(*c.limsup));
  }
  if (c.verdict == Classification::Verdict::Unknown) {
    res["horizon"] = c.horizon.str();
    kv.emplace_back("horizon", c.horizon.str());
  }
  return {std::move(res), kv_csv(kv)};
}

// ---------------------------------------------------------------- cover

Output run_cover(const GlobalCfg& g, const std::string& settext, long n,
                 long tol_log2) {
  SetSpec spec = parse_set(settext);
  if (n > 16) throw CapError("cover stage too large to enumerate (n <= 16)");
  IntervalFamily f = stage_family(spec, n, g.cap);
  StageInfo info = stage_info(spec, n, g.cap);

  Json res;
  res["set"] = spec.to_string();
  res["n"] = n;
  res["count"] = f.size();
  if (info.scale_exact) res["radius_log2"] = "-" + rat_str(info.scale_log2);
  if (f.all_rational()) {
    res["measure"] = rat_str(exact_measure(f, g.cap));
  } else {
    auto [lo, hi] = measure_enclosure(f, Rational(1) / pow2(tol_log2));
    res["measure_lo"] = rat_str(lo);
    res["measure_hi"] = rat_str(hi);
  }
  res["family"] = family_json(f);

  std::string csv = "center,left,right\n";
  for (const auto& iv : f.members) {
    auto [rlo, rhi] = iv.radius.bounds(128);
    Rational left = iv.center - rhi;
    Rational right = iv.center + rhi;
    if (left < 0) left = 0;
    if (right > 1) right = 1;
    csv += float_str(static_cast<double>(iv.center)) + "," +
           float_str(static_cast<double>(left)) + "," +
           float_str(static_cast<double>(right)) + "\n";
  }
  return {std::move(res), std::move(csv)};
}

// ---------------------------------------------------------------- series

Output run_series(const GlobalCfg& g, const std::string& kind,
                  const std::string& settext, const std::string& psitext,
                  const std::string& gaugetext, long nmax) {
  Json res;
  SeriesReport rep;
  std::optional<Rational> crit;
  if (kind == "cover") {
    if (settext.empty()) throw DomainError("series --kind cover needs --set");
    SetSpec spec = parse_set(settext);
    PhiSpec phi = set_to_phi(spec);
    Gauge h = parse_gauge(gaugetext);
    rep = series_classify(phi, h, nmax, g.prec_bits());
    crit = critical_exponent(phi, h.kind);
    res["set"] = spec.to_string();
    res["phi"] = phi.to_string();
    res["gauge"] = h.to_string();
  } else if (kind == "khintchine") {
    if (psitext.empty()) throw DomainError("series --kind khintchine needs --psi");
    PsiSpec psi = parse_psi(psitext);
    rep = khintchine_series(psi, nmax, g.prec_bits());
    res["psi"] = psi.to_string();
  } else {  // jarnik
    if (psitext.empty()) throw DomainError("series --kind jarnik needs --psi");
    PsiSpec psi = parse_psi(psitext);
    Gauge h = parse_gauge(gaugetext);
    rep = jarnik_series(psi, h, nmax, g.prec_bits());
    crit = jarnik_critical(psi, h.kind);
    res["psi"] = psi.to_string();
    res["gauge"] = h.to_string();
  }
  Json rj = series_json(rep);
  for (auto& [k, v] : rj.items()) res[k] = v;
  if (crit) res["critical_exponent"] = rat_str(*crit);
  return {std::move(res), series_csv(rep)};
}

// ---------------------------------------------------------------- quasi

Output run_quasi(const GlobalCfg& g, const std::string& omegatext, long nmax) {
  (void)g;
  Rational omega = parse_rational(omegatext);
  QuasiAudit a = quasi_independence_audit(omega, nmax);
  Json res = quasi_json(a);
  res["omega"] = rat_str(omega);
  return {std::move(res), quasi_csv(a)};
}

// ---------------------------------------------------------------- willow

struct WillowArgs {
  std::string mode = "tamed";
  long c = 2;
  long K = 3;
  long n1 = 3;
  long M1 = 2;
  long enum_limit = 1L << 16;
};

WillowSchedule plan_from(const WillowArgs& w, const GlobalCfg& g) {
  return plan_schedule(parse_mode(w.mode), w.c, w.K, w.n1, w.M1, g.cap,
                       w.enum_limit);
}

Output run_willow_plan(const GlobalCfg& g, const WillowArgs& w, long probes) {
  WillowSchedule s = plan_from(w, g);
  ConstraintReport cr = check_constraints(s, g.cap, g.seed, probes);
  Eq9Report eq = check_eq9(s);
  std::vector<RatioDecayRow> decay = ratio_decay(s, g.cap);

  Json res;
  res["schedule"] = schedule_json(s);
  res["constraints"] = constraint_json(cr);
  res["branch_exponent_bound"] = eq9_json(eq);
  Json dj = Json::array();
  for (const auto& d : decay) {
    dj.push_back(Json{{"k", d.k}, {"bound", rat_str(d.bound)}, {"shrinking", d.shrinking}});
  }
  res["ratio_decay"] = std::move(dj);

  std::string csv = "check,status,detail\n";
  for (const auto& c : cr.checks) {
    csv += csv_field(c.name) + "," + (c.pass ? (c.exact ? "pass" : "symbolic-pass") : "fail") +
           "," + csv_field(c.detail) + "\n";
  }
  return {std::move(res), std::move(csv)};
}

Output run_willow_build(const GlobalCfg& g, const WillowArgs& w) {
  WillowSchedule s = plan_from(w, g);
  MeasureTree tree = build_tree(s, g.cap);
  Rational total = tree_measure(tree, Rational(0), Rational(1), g.cap);

  Json res;
  res["schedule"] = schedule_json(s);
  res["gen1_count"] = tree.gen1.size();
  res["family_count"] = tree.agg.size();
  res["total_mass"] = rat_str(total);
  res["conserved"] = (total == 1);
  Json g1 = Json::array();
  for (const auto& node : tree.gen1) {
    g1.push_back(Json{{"j", node.j},
                      {"left", rat_str(node.left)},
                      {"e", node.e.str()},
                      {"weight", rat_str(node.weight)}});
  }
  res["gen1"] = std::move(g1);
  if (!tree.agg.empty()) {
    const auto& a = tree.agg.front();
    res["first_family"] = Json{{"parent", a.parent},
                               {"j", a.j.str()},
                               {"grid_g", a.grid_g.str()},
                               {"e", a.e.str()},
                               {"count", a.count.str()},
                               {"weight", rat_str(a.weight)}};
  }
  return {std::move(res),
          kv_csv({{"gen1_count", std::to_string(tree.gen1.size())},
                  {"family_count", std::to_string(tree.agg.size())},
                  {"total_mass", rat_str(total)},
                  {"conserved", total == 1 ? "yes" : "no"}})};
}

Output run_willow_audit(const GlobalCfg& g, const WillowArgs& w,
                        const std::string& gaugetext, long probes) {
  WillowSchedule s = plan_from(w, g);
  MeasureTree tree = build_tree(s, g.cap);
  Gauge h = parse_gauge(gaugetext);
  AuditResult a = frostman_audit(tree, h, probes, g.seed, g.prec_bits());
  Json res = audit_json(a);
  std::string csv = "t,r,mu,ratio\n";
  for (const auto& p : a.rows) {
    csv += p.t.str() + "," + p.r.str() + "," + csv_field(rat_str(p.mu)) + "," +
           float_str(p.ratio) + "\n";
  }
  csv += "# max_ratio=" + float_str(a.max_ratio) +
         " node_max_ratio=" + float_str(a.node_max_ratio) + "\n";
  return {std::move(res), std::move(csv)};
}

// ---------------------------------------------------------------- boxdim

Output run_boxdim(const GlobalCfg& g, const std::string& settext, long nmin,
                  long nmax, const std::string& fit_mode) {
  SetSpec spec = parse_set(settext);
  FitMode mode = fit_mode == "log" ? FitMode::Logarithmic : FitMode::Ordinary;
  Json rows = Json::array();
  std::string csv = "n,m,count,ratio\n";
  std::vector<FitSample> samples;
  for (long n = nmin; n <= nmax; ++n) {
    StageInfo info = stage_info(spec, n, g.cap);
    if (!info.scale_exact || !is_integer(info.scale_log2)) continue;
    long m = checked_long(num(info.scale_log2), 1L << 30, "box scale");
    BigInt count;
    if (auto sym = stage_box_count_symbolic(spec, n, g.cap)) {
      count = *sym;
    } else {
      if (n > 18) throw CapError("boxdim stage too large to enumerate (n <= 18)");
      count = box_count(stage_family(spec, n, g.cap), m, g.cap);
    }
    double x = mode == FitMode::Ordinary ? static_cast<double>(m)
                                         : std::log2(static_cast<double>(m));
    double ratio = std::log2(count.convert_to<double>()) / x;
    samples.push_back({m, count});
    rows.push_back(Json{{"n", n}, {"m", m}, {"count", count.str()}, {"ratio", ratio}});
    csv += std::to_string(n) + "," + std::to_string(m) + "," + count.str() + "," +
           float_str(ratio) + "\n";
  }
  FitResult fit = dim_fit(samples, mode);
  Json res;
  res["set"] = spec.to_string();
  res["fit_mode"] = fit_mode;
  res["rows"] = std::move(rows);
  res["fit"] = fit_json(fit);
  csv += "# slope=" + float_str(fit.slope) + " intercept=" + float_str(fit.intercept) +
         " max_residual=" + float_str(fit.max_residual) + "\n";
  return {std::move(res), std::move(csv)};
}

// ---------------------------------------------------------------- bell

Output run_bell(const GlobalCfg& g, long N, long terms) {
  if (N > 256) throw CapError("bell index too large (n <= 256)");
  Json rows = Json::array();
  std::string csv = "n,bell,series,rel_error\n";
  for (long n = 0; n <= N; ++n) {
    BigInt b = bell_recurrence(n);
    std::string series =
        digits_of([&](long pb) { return bell_series(n, terms, pb); }, g);
    RealInterval iv = bell_series(n, terms, g.prec_bits());
    RealInterval ratio = iv.mul_rational(Rational(1) / Rational(b));
    double rel = (ratio - RealInterval::from_long(1, g.prec_bits())).abs().hi_double();
    rows.push_back(
        Json{{"n", n}, {"bell", b.str()}, {"series", series}, {"rel_error", rel}});
    csv += std::to_string(n) + "," + b.str() + "," + series + "," + float_str(rel) +
           "\n";
  }
  Json res;
  res["terms"] = terms;
  res["rows"] = std::move(rows);
  return {std::move(res), std::move(csv)};
}

// ---------------------------------------------------------------- driver

int emit(const GlobalCfg& g, const std::string& command, const Json& config,
         Output out, double elapsed_ms) {
  std::string text;
  if (g.format == "json") {
    Json env = envelope(command, config, out.results);
    if (g.timings) env["timings"] = Json{{"total_ms", elapsed_ms}};
    text = env.dump(2) + "\n";
  } else {
    text = out.csv;
    if (g.timings) text += "# total_ms=" + float_str(elapsed_ms) + "\n";
  }
  if (g.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw DomainError("cannot open output file: " + g.out);
    f << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  GlobalCfg g;
  CLI::App app{"Dobinski-set laboratory: exact covers, products, gauges, willow sets"};
  app.require_subcommand(1);
  app.add_option("--precision", g.precision, "decimal digits for rendered reals")
      ->check(CLI::Range(10L, 10000L))
      ->capture_default_str();
  app.add_option("--exponent-cap", g.cap, "largest materialized exponent")
      ->check(CLI::Range(1L << 10, 1L << 40))
      ->capture_default_str();
  app.add_option("--seed", g.seed, "probe RNG seed")->capture_default_str();
  app.add_option("--out", g.out, "write output to this path instead of stdout");
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_flag("--timings", g.timings, "append wall-clock timings");

  std::string xtext, settext = "dobinski:k=1", psitext, gaugetext = "power:s=1";
  std::string kind = "cover", omegatext = "1/4", fit_mode = "ordinary";
  long N = 8, stage = 3, nmax = 12, tol_log2 = 40, probes = 64;
  long nmin = 2, bd_nmax = 8, bell_n = 10, bell_terms = 40;
  WillowArgs wa;

  auto* expand = app.add_subcommand("expand", "binary digits, runs, nearest dyadics");
  expand->fallthrough();
  expand->add_option("--x", xtext, "digit program")->required();
  expand->add_option("--n", N, "last stage")->check(CLI::Range(0L, 1L << 20));

  auto* product = app.add_subcommand("product", "tangent-product trace");
  product->fallthrough();
  product->add_option("--x", xtext, "digit program")->required();
  product->add_option("--n", N, "last stage")->check(CLI::Range(0L, 4096L));

  auto* classify = app.add_subcommand("classify", "membership in the Dobinski set");
  classify->fallthrough();
  classify->add_option("--x", xtext, "digit program")->required();

  auto* cover = app.add_subcommand("cover", "stage ball family with exact measure");
  cover->fallthrough();
  cover->add_option("--set", settext, "set family")->required();
  cover->add_option("--n", stage, "stage index")->check(CLI::Range(0L, 1L << 20));
  cover->add_option("--tol-log2", tol_log2, "measure enclosure tolerance 2^-T")
      ->check(CLI::Range(1L, 4096L));

  auto* series = app.add_subcommand("series", "gauge series classification");
  series->fallthrough();
  series->add_option("--kind", kind, "series family")
      ->check(CLI::IsMember({"cover", "khintchine", "jarnik"}));
  series->add_option("--set", settext, "set family (cover kind)");
  series->add_option("--psi", psitext, "approximation function (arithmetic kinds)");
  series->add_option("--gauge", gaugetext, "gauge function");
  series->add_option("--nmax", nmax, "rows to tabulate")->check(CLI::Range(1L, 4096L));

  auto* quasi = app.add_subcommand("quasi", "quasi-independence ratio audit");
  quasi->fallthrough();
  quasi->add_option("--omega", omegatext, "grid radius constant");
  quasi->add_option("--nmax", nmax, "largest stage")->check(CLI::Range(2L, 64L));

  auto* willow = app.add_subcommand("willow", "willow-set schedules and measures");
  willow->fallthrough();
  willow->require_subcommand(1);
  auto add_willow_args = [&](CLI::App* sub) {
    sub->fallthrough();
    sub->add_option("--mode", wa.mode, "exponent law")
        ->check(CLI::IsMember({"true", "true-dobinski", "tamed"}));
    sub->add_option("--c", wa.c, "tamed slack")->check(CLI::Range(1L, 64L));
    sub->add_option("--K", wa.K, "generations")->check(CLI::Range(1L, 64L));
    sub->add_option("--n1", wa.n1, "seed grid exponent")->check(CLI::Range(1L, 64L));
    sub->add_option("--M1", wa.M1, "seed branch count")->check(CLI::Range(2L, 1L << 16));
    sub->add_option("--enum-limit", wa.enum_limit, "largest enumerated generation")
        ->check(CLI::Range(1L, 1L << 24));
  };
  auto* wplan = willow->add_subcommand("plan", "generation schedule + constraint checks");
  add_willow_args(wplan);
  wplan->add_option("--probes", probes, "random probes per check")
      ->check(CLI::Range(1L, 1L << 16));
  auto* wbuild = willow->add_subcommand("build", "two-level mass distribution");
  add_willow_args(wbuild);
  auto* waudit = willow->add_subcommand("audit", "Frostman ratio audit");
  add_willow_args(waudit);
  std::string audit_gauge = "logpower:s=1";
  long audit_probes = 1000;
  waudit->add_option("--gauge", audit_gauge, "gauge function");
  waudit->add_option("--probes", audit_probes, "random dyadic probes")
      ->check(CLI::Range(1L, 1L << 20));

  auto* boxdim = app.add_subcommand("boxdim", "box counts and dimension fit");
  boxdim->fallthrough();
  boxdim->add_option("--set", settext, "set family")->required();
  boxdim->add_option("--nmin", nmin, "first stage")->check(CLI::Range(0L, 1L << 20));
  boxdim->add_option("--nmax", bd_nmax, "last stage")->check(CLI::Range(0L, 1L << 20));
  boxdim->add_option("--fit-mode", fit_mode, "abscissa for the fit")
      ->check(CLI::IsMember({"ordinary", "log"}));

  auto* bell = app.add_subcommand("bell", "Bell numbers: recurrence vs series");
  bell->fallthrough();
  bell->add_option("--n", bell_n, "largest index")->check(CLI::Range(0L, 1L << 12));
  bell->add_option("--terms", bell_terms, "series terms")->check(CLI::Range(1L, 1L << 16));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  }

  try {
    auto t0 = std::chrono::steady_clock::now();
    std::string command;
    Json config{{"precision", g.precision}, {"exponent_cap", g.cap}, {"seed", g.seed}};
    Output out;
    if (*expand) {
      command = "expand";
      config["x"] = xtext;
      config["n"] = N;
      out = run_expand(g, xtext, N);
    } else if (*product) {
      command = "product";
      config["x"] = xtext;
      config["n"] = N;
      out = run_product(g, xtext, N);
    } else if (*classify) {
      command = "classify";
      config["x"] = xtext;
      out = run_classify(g, xtext);
    } else if (*cover) {
      command = "cover";
      config["set"] = settext;
      config["n"] = stage;
      out = run_cover(g, settext, stage, tol_log2);
    } else if (*series) {
      command = "series";
      config["kind"] = kind;
      if (!settext.empty()) config["set"] = settext;
      if (!psitext.empty()) config["psi"] = psitext;
      config["gauge"] = gaugetext;
      config["nmax"] = nmax;
      out = run_series(g, kind, kind == "cover" ? settext : "", psitext, gaugetext,
                       nmax);
    } else if (*quasi) {
      command = "quasi";
      config["omega"] = omegatext;
      config["nmax"] = nmax;
      out = run_quasi(g, omegatext, nmax);
    } else if (*willow) {
      config["mode"] = wa.mode;
      config["c"] = wa.c;
      config["K"] = wa.K;
      config["n1"] = wa.n1;
      config["M1"] = wa.M1;
      if (*wplan) {
        command = "willow plan";
        config["probes"] = probes;
        out = run_willow_plan(g, wa, probes);
      } else if (*wbuild) {
        command = "willow build";
        out = run_willow_build(g, wa);
      } else {
        command = "willow audit";
        config["gauge"] = audit_gauge;
        config["probes"] = audit_probes;
        out = run_willow_audit(g, wa, audit_gauge, audit_probes);
      }
    } else if (*boxdim) {
      command = "boxdim";
      config["set"] = settext;
      config["nmin"] = nmin;
      config["nmax"] = bd_nmax;
      config["fit_mode"] = fit_mode;
      out = run_boxdim(g, settext, nmin, bd_nmax, fit_mode);
    } else {
      command = "bell";
      config["n"] = bell_n;
      config["terms"] = bell_terms;
      out = run_bell(g, bell_n, bell_terms);
    }
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    return emit(g, command, config, std::move(out), ms);
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const CapError& e) {
    std::cerr << "cap error: " << e.what() << "\n";
    return 3;
  } catch (const PrecisionError& e) {
    std::cerr << "precision error: " << e.what() << "\n";
    return 3;
  }
}
