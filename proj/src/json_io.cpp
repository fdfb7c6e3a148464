#include "dobinski/json_io.hpp"

#include <cstdio>

namespace dobinski {

namespace {

std::string big_str(const BigInt& v) {
  // huge materialized values stay exact but readable
  if (bit_length(v) <= 256) return v.str();
  if (is_pow2(v)) return "2^" + std::to_string(floor_log2(v));
  if (v > 1 && is_pow2(v - 1)) return "2^" + std::to_string(floor_log2(v - 1)) + "+1";
  return v.str();
}

std::string float_str(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string rational_str(const Rational& q) { return rat_str(q); }

Json family_json(const IntervalFamily& f) {
  Json out;
  out["count"] = f.members.size();
  Json items = Json::array();
  for (const auto& iv : f.members) {
    Json j;
    j["center"] = rat_str(iv.center);
    if (auto lg = iv.radius.log2_exact()) {
      j["radius_log2"] = "-" + rat_str(*lg);
    } else if (iv.radius.is_rational()) {
      j["radius"] = rat_str(iv.radius.rational_value());
    } else {
      j["radius_lo"] = rat_str(iv.radius.lo);
      j["radius_hi"] = rat_str(iv.radius.hi);
    }
    items.push_back(std::move(j));
  }
  out["intervals"] = std::move(items);
  return out;
}

Json quasi_json(const QuasiAudit& a) {
  Json out;
  Json rows = Json::array();
  for (const auto& r : a.rows) {
    Json j;
    j["n"] = r.n;
    j["m"] = r.m;
    j["measure_Un"] = rat_str(r.mu_n);
    j["measure_Um"] = rat_str(r.mu_m);
    j["measure_intersection"] = rat_str(r.mu_inter);
    j["ratio"] = rat_str(r.ratio);
    rows.push_back(std::move(j));
  }
  out["rows"] = std::move(rows);
  out["max_ratio"] = rat_str(a.max_ratio);
  out["argmax"] = Json::array({a.argmax_n, a.argmax_m});
  return out;
}

std::string quasi_csv(const QuasiAudit& a) {
  std::string out = "n,m,measure_Un,measure_Um,measure_intersection,ratio\n";
  for (const auto& r : a.rows) {
    out += std::to_string(r.n) + "," + std::to_string(r.m) + "," + rat_str(r.mu_n) +
           "," + rat_str(r.mu_m) + "," + rat_str(r.mu_inter) + "," + rat_str(r.ratio) +
           "\n";
  }
  return out;
}

namespace {

const char* verdict_name(SeriesVerdict v) {
  switch (v) {
    case SeriesVerdict::Converges:
      return "converges";
    case SeriesVerdict::Diverges:
      return "diverges";
    case SeriesVerdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

const char* cert_name(Certificate::Kind k) {
  switch (k) {
    case Certificate::Kind::ConstantTerm:
      return "constant-term";
    case Certificate::Kind::Geometric:
      return "geometric";
    case Certificate::Kind::EventuallyGeometric:
      return "eventually-geometric";
    case Certificate::Kind::SuperExponential:
      return "super-exponential";
    case Certificate::Kind::BoundedBelow:
      return "bounded-below";
    case Certificate::Kind::PSeries:
      return "p-series";
    case Certificate::Kind::Unsupported:
      return "unsupported";
  }
  return "?";
}

}  // namespace

Json series_json(const SeriesReport& r) {
  Json out;
  out["verdict"] = verdict_name(r.verdict);
  Json cert;
  cert["kind"] = cert_name(r.cert.kind);
  switch (r.cert.kind) {
    case Certificate::Kind::Geometric:
    case Certificate::Kind::EventuallyGeometric:
      cert["ratio_log2"] = rat_str(r.cert.ratio_log2);
      break;
    case Certificate::Kind::BoundedBelow:
      cert["bound_log2"] = rat_str(r.cert.bound_log2);
      break;
    case Certificate::Kind::PSeries:
      cert["p"] = rat_str(r.cert.p);
      cert["log_power"] = rat_str(r.cert.L);
      break;
    default:
      break;
  }
  if (r.cert.kind == Certificate::Kind::EventuallyGeometric)
    cert["side"] = r.cert.side;
  if (r.cert.from_n > 0) cert["from_n"] = r.cert.from_n;
  if (!r.cert.note.empty()) cert["note"] = r.cert.note;
  out["certificate"] = std::move(cert);
  out["sup_phi_violation"] = r.sup_phi_violation;
  out["sup_theta_violation"] = r.sup_theta_violation;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json j;
    j["n"] = row.n;
    if (row.log2_term)
      j["log2_term"] = rat_str(*row.log2_term);
    else
      j["log2_term"] = nullptr;
    j["term_float"] = row.term_float;
    rows.push_back(std::move(j));
  }
  out["terms"] = std::move(rows);
  return out;
}

std::string series_csv(const SeriesReport& r) {
  std::string out = "n,log2_term,term_float\n";
  for (const auto& row : r.rows) {
    out += std::to_string(row.n) + ",";
    if (row.log2_term) out += rat_str(*row.log2_term);
    out += "," + float_str(row.term_float) + "\n";
  }
  return out;
}

Json fit_json(const FitResult& r) {
  Json out;
  out["slope"] = r.slope;
  out["intercept"] = r.intercept;
  out["max_residual"] = r.max_residual;
  Json pts = Json::array();
  for (const auto& [x, y] : r.points) pts.push_back(Json::array({x, y}));
  out["points"] = std::move(pts);
  return out;
}

Json schedule_json(const WillowSchedule& s) {
  Json out;
  out["mode"] = s.mode == WillowMode::True ? "true-dobinski" : "tamed";
  if (s.mode == WillowMode::Tamed) out["c"] = s.c;
  Json gens = Json::array();
  for (const auto& g : s.gens) {
    Json j;
    j["k"] = g.k;
    j["n_k"] = g.n ? big_str(*g.n) : g.n_form;
    j["M_k"] = g.M ? big_str(*g.M) : g.M_form;
    j["enumerable"] = g.enumerable;
    if (g.enumerable) {
      Json es = Json::array();
      for (const auto& e : g.e) es.push_back(e.str());
      j["e"] = std::move(es);
    }
    gens.push_back(std::move(j));
  }
  out["generations"] = std::move(gens);
  return out;
}

Json constraint_json(const ConstraintReport& r) {
  Json out;
  out["all_pass"] = r.all_pass;
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json j;
    j["name"] = c.name;
    j["status"] = c.pass ? (c.exact ? "pass" : "symbolic-pass") : "fail";
    j["detail"] = c.detail;
    checks.push_back(std::move(j));
  }
  out["checks"] = std::move(checks);
  return out;
}

Json audit_json(const AuditResult& r) {
  Json out;
  out["gauge"] = r.gauge;
  out["max_ratio"] = r.max_ratio;
  out["argmax_interval"] = Json{{"t", big_str(r.argmax_t)}, {"r", big_str(r.argmax_r)}};
  out["probes"] = r.probes;
  out["seed"] = r.seed;
  out["node_max_ratio"] = r.node_max_ratio;
  Json rows = Json::array();
  for (const auto& p : r.rows) {
    Json j;
    j["t"] = big_str(p.t);
    j["r"] = big_str(p.r);
    j["mu"] = rat_str(p.mu);
    j["ratio"] = p.ratio;
    rows.push_back(std::move(j));
  }
  out["sample_probes"] = std::move(rows);
  return out;
}

Json eq9_json(const Eq9Report& r) {
  Json out;
  out["all_pass"] = r.all_pass;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json j;
    j["k"] = row.k;
    j["g_min"] = big_str(row.g_min);
    j["pass"] = row.pass;
    j["exact"] = row.exact;
    rows.push_back(std::move(j));
  }
  out["rows"] = std::move(rows);
  return out;
}

Json envelope(const std::string& command, const Json& config, const Json& results) {
  Json out;
  out["schema"] = "dobinski/1";
  out["command"] = command;
  out["config"] = config;
  out["results"] = results;
  return out;
}

}  // namespace dobinski
