// cantor-dioph: command-line surface over the rational-approximation toolkit.
//
// Every subcommand emits one deterministic report on stdout. JSON is the
// default; enumerate/profile/periods/scan also speak CSV. Wall-clock data is
// attached only under --timings so default output is byte-identical across
// runs. Errors never escape as aborts: malformed input exits 2 with a
// one-line message on stderr.

#include "cantor/acceptance.hpp"
#include "cantor/report.hpp"
#include "cantor/targets.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace cantor;

struct Global {
  std::string set_text;
  std::string ifs_file;
  std::string format = "json";
  int jobs = 1;
  uint64_t budget = 100000;
  uint64_t seed = 1;
  bool timings = false;
};

RationalIFS need_ifs(const Global& g) {
  if (!g.set_text.empty()) return parse_ifs_text(g.set_text);
  if (!g.ifs_file.empty()) {
    std::ifstream in(g.ifs_file);
    if (!in) fail("io", "cannot open '" + g.ifs_file + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_ifs_text(ss.str());
  }
  fail("usage", "this command needs --set or --ifs-file");
}

MissingDigitSet need_digitset(const Global& g) {
  return MissingDigitSet::from_ifs(need_ifs(g));
}

Json set_echo(const Global& g) {
  Json j;
  if (!g.set_text.empty()) j["set"] = g.set_text;
  if (!g.ifs_file.empty()) j["ifs_file"] = g.ifs_file;
  return j;
}

void require_json(const Global& g, const std::string& cmd) {
  if (g.format != "json")
    fail("usage", "--format " + g.format + " is not supported for '" + cmd + "'");
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void emit(const Global& g, const std::string& command, Json inputs, Json outputs,
          const Timer& timer) {
  Json rep = report_envelope(command, std::move(inputs), std::move(outputs), g.seed);
  if (g.timings) rep["timings"] = Json{{"wall_s", timer.seconds()}};
  std::cout << rep.dump(2) << "\n";
}

std::vector<size_t> parse_index_word(const std::string& s) {
  std::vector<size_t> w;
  if (s.empty()) return w;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &pos);
    } catch (const std::exception&) {
      fail("parse-error", "bad map index '" + tok + "'");
    }
    if (pos != tok.size()) fail("parse-error", "bad map index '" + tok + "'");
    w.push_back(v);
  }
  return w;
}

std::vector<Int> parse_digit_list(const std::string& s) {
  std::vector<Int> w;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      w.emplace_back(tok);
    } catch (const std::exception&) {
      fail("parse-error", "bad digit '" + tok + "'");
    }
  }
  return w;
}

Int parse_int_string(const std::string& s) {
  try {
    return Int(s);
  } catch (const std::exception&) {
    fail("parse-error", "bad integer '" + s + "'");
  }
}

// --- member / nearest --------------------------------------------------------

// Points outside [min, max] are settled against the attained endpoints rather
// than bounced as domain errors: the query is well posed, the walk just never
// needs to start.
bool outside_hull(const MissingDigitSet& set, const Rat& x, Rat* nearest, Rat* dist) {
  if (x < set.min_point()) {
    *nearest = set.min_point();
    *dist = set.min_point() - x;
    return true;
  }
  if (x > set.max_point()) {
    *nearest = set.max_point();
    *dist = x - set.max_point();
    return true;
  }
  return false;
}

int cmd_member(const Global& g, const std::string& x_str) {
  Timer timer;
  require_json(g, "member");
  MissingDigitSet set = need_digitset(g);
  Rat x = parse_rat(x_str);
  Json inputs = set_echo(g);
  inputs["x"] = x_str;
  Json outputs;
  outputs["x"] = rat_json(x);
  Rat hull_near, hull_dist;
  if (outside_hull(set, x, &hull_near, &hull_dist)) {
    outputs["member"] = false;
    outputs["reason"] = "outside-hull";
    outputs["nearest"] = rat_json(hull_near);
    outputs["distance"] = rat_json(hull_dist);
    emit(g, "member", std::move(inputs), std::move(outputs), timer);
    return 1;
  }
  MembershipCertificate cert = set.is_member(x);
  outputs["member"] = cert.member;
  outputs["certificate"] = certificate_json(cert, set.base());
  if (!cert.member) {
    NearestResult nr = set.nearest_point(x);
    outputs["nearest"] = rat_json(nr.point);
    outputs["distance"] = rat_json(nr.distance);
  }
  emit(g, "member", std::move(inputs), std::move(outputs), timer);
  return cert.member ? 0 : 1;
}

int cmd_nearest(const Global& g, const std::string& x_str) {
  Timer timer;
  require_json(g, "nearest");
  MissingDigitSet set = need_digitset(g);
  Rat x = parse_rat(x_str);
  Json inputs = set_echo(g);
  inputs["x"] = x_str;
  Json outputs;
  outputs["x"] = rat_json(x);
  Rat hull_near, hull_dist;
  if (outside_hull(set, x, &hull_near, &hull_dist)) {
    outputs["nearest"] = rat_json(hull_near);
    outputs["distance"] = rat_json(hull_dist);
    outputs["reason"] = "outside-hull";
  } else {
    NearestResult nr = set.nearest_point(x);
    outputs["nearest"] = rat_json(nr.point);
    outputs["distance"] = rat_json(nr.distance);
    outputs["witness_address"] = address_json(nr.witness);
  }
  emit(g, "nearest", std::move(inputs), std::move(outputs), timer);
  return 0;
}

// --- expand ------------------------------------------------------------------

int cmd_expand(const Global& g, const std::string& x_str, int64_t base_flag) {
  Timer timer;
  require_json(g, "expand");
  Int base(10);
  if (base_flag > 0) {
    base = Int(base_flag);
  } else if (!g.set_text.empty() || !g.ifs_file.empty()) {
    base = need_digitset(g).base();
  }
  Rat x = parse_rat(x_str);
  Json inputs = set_echo(g);
  inputs["x"] = x_str;
  inputs["base"] = int_json(base);
  BaseExpansion e = expand(x, base);
  ExpansionLengths f = expansion_lengths_formula(x, base);
  Json outputs;
  outputs["x"] = rat_json(x);
  outputs["expansion"] = expansion_json(e, base);
  outputs["formula"] = Json{{"preperiod_length", f.preperiod},
                            {"period_length", f.period},
                            {"terminating", f.terminating}};
  outputs["agree"] =
      e.pre.size() == f.preperiod && e.period.size() == f.period && e.terminating == f.terminating;
  emit(g, "expand", std::move(inputs), std::move(outputs), timer);
  return 0;
}

// --- enumerate ---------------------------------------------------------------

int cmd_enumerate(const Global& g, int64_t limit) {
  Timer timer;
  if (limit <= 0) fail("usage", "--limit must be a positive integer");
  MissingDigitSet set = need_digitset(g);
  RationalPointCatalog cat = enumerate_rationals(set, Int(limit), g.jobs, g.budget);
  CountingCheck chk = counting_bound_check(set, cat, Int(limit));
  if (g.format == "csv") {
    std::ostringstream os;
    os << "q,p\n";
    for (const auto& [q, p] : cat.points) os << q.get_str() << "," << p.get_str() << "\n";
    std::cout << os.str();
    return 0;
  }
  Json inputs = set_echo(g);
  inputs["limit"] = limit;
  inputs["budget"] = g.budget;
  Json outputs;
  outputs["limit"] = int_json(cat.limit);
  outputs["method"] = cat.method;
  outputs["count"] = cat.points.size();
  outputs["counting"] =
      Json{{"n", int_json(chk.n)}, {"count", chk.count}, {"bound_ok", chk.bound_ok}};
  Json pts = Json::array();
  for (const auto& [q, p] : cat.points) pts.push_back(Json{{"q", int_json(q)}, {"p", int_json(p)}});
  outputs["points"] = std::move(pts);
  emit(g, "enumerate", std::move(inputs), std::move(outputs), timer);
  return 0;
}

// --- intrinsic ---------------------------------------------------------------

int cmd_intrinsic(const Global& g, const std::string& pre_str, const std::string& period_str,
                  const std::string& q_str) {
  Timer timer;
  require_json(g, "intrinsic");
  RationalIFS ifs = need_ifs(g);
  Address addr{parse_index_word(pre_str), parse_index_word(period_str)};
  if (addr.period.empty()) fail("usage", "--period must name at least one map");
  Rat Q = parse_rat(q_str);
  Json inputs = set_echo(g);
  inputs["pre"] = pre_str;
  inputs["period"] = period_str;
  inputs["Q"] = q_str;
  IntrinsicResult r = intrinsic_dirichlet(ifs, addr, Q);
  Json outputs;
  outputs["approximant"] = rat_json(r.approximant);
  if (r.approximant_vec.size() > 1) {
    Json v = Json::array();
    for (const Rat& c : r.approximant_vec) v.push_back(rat_json(c));
    outputs["approximant_vec"] = std::move(v);
  }
  outputs["q_reduced"] = int_json(r.q_reduced);
  outputs["q_unreduced"] = int_json(r.q_unreduced);
  outputs["error_bound"] = rat_json(r.error_bound);
  outputs["orbit_len"] = r.orbit_len;
  outputs["prefix_len"] = r.prefix_len;
  outputs["split"] = Json{{"n", r.split_n}, {"m", r.split_m}};
  outputs["approx_address"] = address_json(r.approx_address);
  outputs["q_bound_ok"] = r.q_bound_ok;
  outputs["error_bound_ok"] = r.error_bound_ok;
  outputs["enclosure_cross_check"] = r.enclosure_cross_check;
  if (r.reference_form) outputs["reference_form"] = interval_json(*r.reference_form);
  emit(g, "intrinsic", std::move(inputs), std::move(outputs), timer);
  return 0;
}

// --- extrinsic ---------------------------------------------------------------

int cmd_extrinsic(const Global& g, const std::string& target_str, const std::string& q_str,
                  const std::string& branch, uint64_t nmax) {
  Timer timer;
  require_json(g, "extrinsic");
  MissingDigitSet set = need_digitset(g);
  Real xi = parse_target(target_str);
  Rat Q = parse_rat(q_str);
  Json inputs = set_echo(g);
  inputs["target"] = target_str;
  inputs["Q"] = q_str;
  inputs["branch"] = branch;
  inputs["nmax"] = nmax;
  ExtrinsicResult r = uniform_extrinsic(set, xi, Q, branch, nmax);
  Json outputs;
  outputs["approximant"] = rat_json(r.approximant);
  outputs["error"] = interval_json(r.error);
  outputs["error_upper"] = rat_json(r.error_upper);
  outputs["realized_k"] = rat_json(r.realized_k);
  outputs["branch"] = r.branch;
  outputs["steps"] = r.steps;
  outputs["certificate"] = certificate_json(r.certificate, set.base());
  emit(g, "extrinsic", std::move(inputs), std::move(outputs), timer);
  return 0;
}

// --- liouville ---------------------------------------------------------------

PhiSchedule parse_phi(const std::string& s) {
  if (s == "inverse-ceil-log2") return PhiSchedule::inverse_ceil_log2();
  if (s.rfind("power:", 0) == 0) {
    std::string rest = s.substr(6);
    size_t colon = rest.find(':');
    if (colon == std::string::npos)
      fail("usage", "--phi power form is power:<c>:<e>, e.g. power:1:1/2");
    return PhiSchedule::inverse_power(parse_rat(rest.substr(0, colon)),
                                      parse_rat(rest.substr(colon + 1)));
  }
  fail("usage", "--phi must be inverse-ceil-log2 or power:<c>:<e>");
}

Json stage_json(const LiouvilleStage& st) {
  Json j;
  j["index"] = st.index;
  j["a_k"] = int_json(st.a_k);
  j["a_next"] = int_json(st.a_next);
  j["q_k"] = scaledpow_json(st.q_k);
  j["err_up"] = scaledpow_json(st.err_up);
  if (st.err_low) j["err_low"] = scaledpow_json(*st.err_low);
  j["big_q"] = scaledpow_json(st.big_q);
  j["contraction_ok"] = st.contraction_ok;
  j["legendre_ok"] = st.legendre_ok;
  j["gap_ok"] = st.gap_ok;
  if (st.theta) j["theta"] = rat_json(*st.theta);
  if (st.big_q_value) j["big_q_value"] = rat_json(*st.big_q_value);
  if (st.phi_value) j["phi_value"] = rat_json(*st.phi_value);
  if (st.margin) j["margin"] = rat_json(*st.margin);
  return j;
}

int cmd_liouville(const Global& g, uint64_t stages, const std::string& a1_str, uint64_t f_idx,
                  uint64_t g_idx, const std::string& phi_str, int64_t witness_stage) {
  Timer timer;
  require_json(g, "liouville");
  RationalIFS ifs = need_ifs(g);
  PhiSchedule sched = parse_phi(phi_str);
  Int a1 = parse_int_string(a1_str);
  Json inputs = set_echo(g);
  inputs["stages"] = stages;
  inputs["a1"] = a1_str;
  inputs["f"] = f_idx;
  inputs["g"] = g_idx;
  inputs["phi"] = phi_str;
  LiouvilleBuild b = liouville_build(ifs, f_idx, g_idx, sched, stages, a1);
  Json outputs;
  outputs["digit_system"] = b.digit_system;
  outputs["dim"] = b.dim;
  if (b.digit_system) {
    outputs["base"] = int_json(b.base);
    outputs["marker_digit"] = int_json(b.wg);
    outputs["filler_digit"] = int_json(b.wf);
  }
  Json marks = Json::array();
  for (const Int& a : b.a) marks.push_back(int_json(a));
  outputs["a"] = std::move(marks);
  outputs["monotone_ok"] = b.monotone_ok;
  Json st = Json::array();
  for (const LiouvilleStage& s : b.stages) st.push_back(stage_json(s));
  outputs["stages"] = std::move(st);
  if (b.dim == 1) outputs["value_enclosure"] = interval_json(liouville_value(b).enclose(96));
  if (witness_stage > 0) {
    inputs["witness_stage"] = witness_stage;
    WitnessScan w = liouville_witness_check(b, static_cast<size_t>(witness_stage), g.jobs);
    Json wj;
    wj["stage"] = w.stage;
    wj["q_limit"] = int_json(w.q_limit);
    wj["margin"] = rat_json(w.margin);
    wj["candidates"] = w.candidates;
    wj["members"] = w.members;
    wj["passed"] = w.passed;
    if (w.violation) wj["violation"] = rat_json(*w.violation);
    outputs["witness_scan"] = std::move(wj);
  }
  emit(g, "liouville", std::move(inputs), std::move(outputs), timer);
  return 0;
}

// --- profile -----------------------------------------------------------------

int cmd_profile(const Global& g, const std::string& target_str, const std::string& tmax_str,
                const std::string& step_str, int64_t den_cap, int64_t estimate_depth) {
  Timer timer;
  Real xi = parse_target(target_str);
  Rat tmax = parse_rat(tmax_str);
  Rat step = parse_rat(step_str);
  if (step <= 0 || tmax < 0) fail("usage", "--step must be positive and --tmax nonnegative");
  std::vector<Rat> grid;
  for (Rat t(0); t <= tmax; t += step) grid.push_back(t);
  MinimaProfile prof = minima_profile(xi, grid, Int(den_cap));
  if (g.format == "csv") {
    if (estimate_depth > 0)
      fail("usage", "--estimate-depth output has no CSV form; use --format json");
    std::cout << profile_csv(prof);
    return 0;
  }
  Json inputs = set_echo(g);
  inputs["target"] = target_str;
  inputs["tmax"] = tmax_str;
  inputs["step"] = step_str;
  if (den_cap > 0) inputs["den_cap"] = den_cap;
  Json outputs;
  outputs["terminated"] = prof.terminated;
  outputs["band_ok"] = prof.band_ok;
  Json rows = Json::array();
  for (const ProfileSample& s : prof.samples) {
    Json r;
    r["t"] = rat_json(s.t);
    r["L1"] = interval_json(s.L1);
    r["L2"] = interval_json(s.L2);
    r["m1"] = int_json(s.m1);
    r["n1"] = int_json(s.n1);
    r["m2"] = int_json(s.m2);
    r["n2"] = int_json(s.n2);
    r["band_ok"] = s.band_ok;
    if (s.terminal) r["terminal"] = true;
    rows.push_back(std::move(r));
  }
  outputs["samples"] = std::move(rows);
  if (estimate_depth > 0) {
    inputs["estimate_depth"] = estimate_depth;
    MissingDigitSet set = need_digitset(g);
    ExponentScan scan = estimate_exponents(set, xi, Int(estimate_depth));
    Json ej;
    ej["depth"] = int_json(scan.depth);
    ej["convergents_used"] = scan.convergents_used;
    ej["intrinsic_count"] = scan.intrinsic_count;
    ej["extrinsic_count"] = scan.extrinsic_count;
    Json est = Json::array();
    for (const ExponentEstimate& e : scan.estimates) {
      Json x;
      x["kind"] = exponent_kind_name(e.kind);
      x["lower_witness"] = rat_json(e.lower_witness);
      x["certified"] = e.certified;
      x["upper_diagnostic"] = rat_json(e.upper_diagnostic);
      if (e.certified)
        x["witness"] = Json{{"p", int_json(e.witness_p)},
                            {"q", int_json(e.witness_q)},
                            {"Q", int_json(e.witness_Q)}};
      x["data_depth"] = int_json(e.data_depth);
      est.push_back(std::move(x));
    }
    ej["estimates"] = std::move(est);
    ej["identity_ok"] = scan.identity_ok;
    ej["ordering_ok"] = scan.ordering_ok;
    ej["dual_bound_ok"] = scan.dual_bound_ok;
    ej["dual_identity_ok"] = scan.dual_identity_ok;
    outputs["exponents"] = std::move(ej);
  }
  emit(g, "profile", std::move(inputs), std::move(outputs), timer);
  return 0;
}

// --- periods -----------------------------------------------------------------

// Upper bound on L / q^delta as an exact rational, from a one-sided power
// enclosure. Good enough for reporting a certified finite maximum.
Rat ratio_upper_bound(size_t L, const Int& q, const MissingDigitSet& set) {
  if (q == 1) return Rat(L);
  RatInterval p = Real::pow(Rat(q), set.delta()).enclose(96);
  return Rat(static_cast<unsigned long>(L)) / p.lo;
}

int cmd_periods(const Global& g, const std::string& x_str, int64_t limit) {
  Timer timer;
  MissingDigitSet set = need_digitset(g);
  if (!x_str.empty() && limit > 0) fail("usage", "give --x or --limit, not both");
  if (x_str.empty() && limit <= 0) fail("usage", "periods needs --x <rational> or --limit <N>");
  if (!x_str.empty()) {
    require_json(g, "periods");
    Rat x = parse_rat(x_str);
    BaseExpansion e = expand(x, set.base());
    ExpansionLengths f = expansion_lengths_formula(x, set.base());
    Json inputs = set_echo(g);
    inputs["x"] = x_str;
    Json outputs;
    outputs["x"] = rat_json(x);
    outputs["expansion"] = expansion_json(e, set.base());
    outputs["formula"] = Json{{"preperiod_length", f.preperiod},
                              {"period_length", f.period},
                              {"terminating", f.terminating}};
    outputs["agree"] = e.pre.size() == f.preperiod && e.period.size() == f.period;
    bool member = x >= Rat(0) && x <= Rat(1) && set.is_member(x).member;
    outputs["member"] = member;
    if (member && !f.terminating)
      outputs["ratio_upper"] = rat_json(ratio_upper_bound(f.period, x.get_den(), set));
    emit(g, "periods", std::move(inputs), std::move(outputs), timer);
    return 0;
  }
  RationalPointCatalog cat = enumerate_rationals(set, Int(limit), g.jobs, g.budget);
  struct Row {
    Int q, p;
    size_t pre, period;
    bool terminating;
  };
  std::vector<Row> rows;
  size_t agree = 0;
  Rat max_ratio(0);
  for (const auto& [q, p] : cat.points) {
    Rat x = make_rat(p, q);
    BaseExpansion e = expand(x, set.base());
    ExpansionLengths f = expansion_lengths_formula(x, set.base());
    if (e.pre.size() == f.preperiod && e.period.size() == f.period) ++agree;
    if (!f.terminating) {
      Rat r = ratio_upper_bound(f.period, q, set);
      if (r > max_ratio) max_ratio = r;
    }
    rows.push_back({q, p, f.preperiod, f.period, f.terminating});
  }
  if (g.format == "csv") {
    std::ostringstream os;
    os << "q,p,preperiod,period,terminating\n";
    for (const Row& r : rows)
      os << r.q.get_str() << "," << r.p.get_str() << "," << r.pre << "," << r.period << ","
         << (r.terminating ? 1 : 0) << "\n";
    std::cout << os.str();
    return 0;
  }
  Json inputs = set_echo(g);
  inputs["limit"] = limit;
  Json outputs;
  outputs["count"] = rows.size();
  outputs["formula_agree"] = agree;
  outputs["max_ratio_upper"] = rat_json(max_ratio);
  Json rj = Json::array();
  for (const Row& r : rows)
    rj.push_back(Json{{"q", int_json(r.q)},
                      {"p", int_json(r.p)},
                      {"preperiod", r.pre},
                      {"period", r.period},
                      {"terminating", r.terminating}});
  outputs["rows"] = std::move(rj);
  emit(g, "periods", std::move(inputs), std::move(outputs), timer);
  return 0;
}

// --- scan --------------------------------------------------------------------

int cmd_scan(const Global& g, const std::string& kind, int64_t limit, int64_t big_n,
             const std::string& dn_str, const std::string& word_str, int64_t base_flag) {
  Timer timer;
  Int base(0);
  if (base_flag > 0) {
    base = Int(base_flag);
  } else if (!g.set_text.empty() || !g.ifs_file.empty()) {
    base = need_digitset(g).base();
  } else {
    fail("usage", "scan needs --base or a --set to take the base from");
  }
  Json inputs = set_echo(g);
  inputs["kind"] = kind;
  inputs["base"] = int_json(base);
  if (kind == "safe-prime") {
    if (limit <= 0) fail("usage", "scan --kind safe-prime needs --limit <N>");
    inputs["limit"] = limit;
    std::vector<SafePrimeRecord> recs = safe_prime_scan(base, Int(limit));
    if (g.format == "csv") {
      std::ostringstream os;
      os << "p,order,index\n";
      for (const SafePrimeRecord& r : recs)
        os << r.p.get_str() << "," << r.order.get_str() << "," << r.index.get_str() << "\n";
      std::cout << os.str();
      return 0;
    }
    Json outputs;
    outputs["count"] = recs.size();
    Json rows = Json::array();
    for (const SafePrimeRecord& r : recs)
      rows.push_back(Json{
          {"p", int_json(r.p)}, {"order", int_json(r.order)}, {"index", int_json(r.index)}});
    outputs["rows"] = std::move(rows);
    emit(g, "scan", std::move(inputs), std::move(outputs), timer);
    return 0;
  }
  if (kind == "divisor") {
    if (big_n <= 0 || dn_str.empty())
      fail("usage", "scan --kind divisor needs --N <length> and --dN <divisor>");
    inputs["N"] = big_n;
    inputs["dN"] = dn_str;
    DivisorDigits d =
        divisor_digit_sets(base, static_cast<unsigned long>(big_n), parse_int_string(dn_str));
    if (g.format == "csv") {
      std::ostringstream os;
      os << "dprime,word,digit_set\n";
      os << d.dprime.get_str() << "," << digits_to_word(d.word, base) << ",";
      for (size_t i = 0; i < d.digit_set.size(); ++i)
        os << (i ? ";" : "") << d.digit_set[i].get_str();
      os << "\n";
      std::cout << os.str();
      return 0;
    }
    Json outputs;
    outputs["dprime"] = int_json(d.dprime);
    outputs["word"] = digits_to_word(d.word, base);
    Json ds = Json::array();
    for (const Int& w : d.digit_set) ds.push_back(int_json(w));
    outputs["digit_set"] = std::move(ds);
    emit(g, "scan", std::move(inputs), std::move(outputs), timer);
    return 0;
  }
  if (kind == "gcd") {
    if (word_str.empty()) fail("usage", "scan --kind gcd needs --word <d,d,...>");
    inputs["word"] = word_str;
    PatternGcd r = gcd_pattern(base, parse_digit_list(word_str));
    if (g.format == "csv") {
      std::ostringstream os;
      os << "g,reduced_den,ratio_lo,ratio_hi\n";
      os << r.g.get_str() << "," << r.reduced_den.get_str() << "," << rat_str(r.ratio.lo) << ","
         << rat_str(r.ratio.hi) << "\n";
      std::cout << os.str();
      return 0;
    }
    Json outputs;
    outputs["g"] = int_json(r.g);
    outputs["reduced_den"] = int_json(r.reduced_den);
    outputs["ratio"] = interval_json(r.ratio);
    emit(g, "scan", std::move(inputs), std::move(outputs), timer);
    return 0;
  }
  fail("usage", "unknown scan kind '" + kind + "'");
}

// --- verify ------------------------------------------------------------------

int cmd_verify(const Global& g, const std::vector<std::string>& suites) {
  require_json(g, "verify");
  SuiteResult sr = run_acceptance(suites, g.seed, g.jobs, std::cout, g.timings);
  return sr.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Global g;
  CLI::App app{"exact rational approximation on self-similar Cantor sets"};
  app.require_subcommand(1);
  app.fallthrough();

  auto* opt_set = app.add_option("--set", g.set_text,
                                 "inline system text, e.g. \"missing-digit b=3 W=0,2\"");
  auto* opt_file = app.add_option("--ifs-file", g.ifs_file, "file holding the system text");
  opt_set->excludes(opt_file);
  opt_file->excludes(opt_set);
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--jobs", g.jobs, "worker cap for parallel scans")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--budget", g.budget, "enumeration work budget")
      ->envname("CANTOR_DIOPH_BUDGET")
      ->capture_default_str();
  app.add_option("--seed", g.seed, "determinism seed echoed in reports")->capture_default_str();
  app.add_flag("--timings", g.timings, "attach wall-clock data to reports");

  std::function<int()> action;

  std::string m_x;
  auto* sub_member = app.add_subcommand("member", "exact membership of a rational");
  sub_member->fallthrough();
  sub_member->add_option("--x", m_x, "rational to test")->required();
  sub_member->callback([&] { action = [&] { return cmd_member(g, m_x); }; });

  std::string n_x;
  auto* sub_nearest = app.add_subcommand("nearest", "closest point of the set to a rational");
  sub_nearest->fallthrough();
  sub_nearest->add_option("--x", n_x, "rational query point")->required();
  sub_nearest->callback([&] { action = [&] { return cmd_nearest(g, n_x); }; });

  std::string e_x;
  int64_t e_base = 0;
  auto* sub_expand = app.add_subcommand("expand", "eventually periodic base expansion");
  sub_expand->fallthrough();
  sub_expand->add_option("--x", e_x, "rational to expand")->required();
  sub_expand->add_option("--base", e_base, "expansion base (default: the set's base, else 10)");
  sub_expand->callback([&] { action = [&] { return cmd_expand(g, e_x, e_base); }; });

  int64_t en_limit = 0;
  auto* sub_enum = app.add_subcommand("enumerate", "all set members with denominator <= N");
  sub_enum->fallthrough();
  sub_enum->add_option("--limit", en_limit, "denominator cap N")->required();
  sub_enum->callback([&] { action = [&] { return cmd_enumerate(g, en_limit); }; });

  std::string i_pre, i_period, i_q;
  auto* sub_intr = app.add_subcommand("intrinsic", "Dirichlet-type approximant inside the set");
  sub_intr->fallthrough();
  sub_intr->add_option("--pre", i_pre, "preperiodic map indices, comma separated");
  sub_intr->add_option("--period", i_period, "periodic map indices, comma separated")->required();
  sub_intr->add_option("--Q", i_q, "quality parameter")->required();
  sub_intr->callback([&] { action = [&] { return cmd_intrinsic(g, i_pre, i_period, i_q); }; });

  std::string x_target, x_q, x_branch = "auto";
  uint64_t x_nmax = 10;
  auto* sub_extr = app.add_subcommand("extrinsic", "certified approximant outside the set");
  sub_extr->fallthrough();
  sub_extr->add_option("--target", x_target, "rational or named constant to approximate")
      ->required();
  sub_extr->add_option("--Q", x_q, "denominator budget")->required();
  sub_extr->add_option("--branch", x_branch, "candidate family")
      ->check(CLI::IsMember({"auto", "progression", "prime"}))
      ->capture_default_str();
  sub_extr->add_option("--nmax", x_nmax, "candidate attempts")->capture_default_str();
  sub_extr->callback(
      [&] { action = [&] { return cmd_extrinsic(g, x_target, x_q, x_branch, x_nmax); }; });

  uint64_t l_stages = 3, l_f = 0, l_g = 1;
  std::string l_a1 = "1", l_phi = "inverse-ceil-log2";
  int64_t l_witness = 0;
  auto* sub_liou = app.add_subcommand("liouville", "staged very-well-approximable point");
  sub_liou->fallthrough();
  sub_liou->add_option("--stages", l_stages, "number of certified stages")->capture_default_str();
  sub_liou->add_option("--a1", l_a1, "first marker position")->capture_default_str();
  sub_liou->add_option("--f", l_f, "filler map index")->capture_default_str();
  sub_liou->add_option("--g", l_g, "marker map index")->capture_default_str();
  sub_liou->add_option("--phi", l_phi, "gap schedule: inverse-ceil-log2 or power:<c>:<e>")
      ->capture_default_str();
  sub_liou->add_option("--witness-stage", l_witness,
                       "exhaustively scan this stage's denominator window");
  sub_liou->callback([&] {
    action = [&] { return cmd_liouville(g, l_stages, l_a1, l_f, l_g, l_phi, l_witness); };
  });

  std::string p_target, p_tmax = "10", p_step = "1/2";
  int64_t p_dencap = 0, p_estdepth = 0;
  auto* sub_prof = app.add_subcommand("profile", "successive-minima profile along a t-grid");
  sub_prof->fallthrough();
  sub_prof->add_option("--target", p_target, "rational or named constant")->required();
  sub_prof->add_option("--tmax", p_tmax, "grid endpoint")->capture_default_str();
  sub_prof->add_option("--step", p_step, "grid spacing")->capture_default_str();
  sub_prof->add_option("--den-cap", p_dencap, "convergent denominator cap (0 = automatic)");
  sub_prof->add_option("--estimate-depth", p_estdepth,
                       "also scan approximation exponents to this denominator depth");
  sub_prof->callback([&] {
    action = [&] { return cmd_profile(g, p_target, p_tmax, p_step, p_dencap, p_estdepth); };
  });

  std::string pd_x;
  int64_t pd_limit = 0;
  auto* sub_per = app.add_subcommand("periods", "expansion period lengths against the closed form");
  sub_per->fallthrough();
  sub_per->add_option("--x", pd_x, "single rational to analyze");
  sub_per->add_option("--limit", pd_limit, "sweep all members with denominator <= N");
  sub_per->callback([&] { action = [&] { return cmd_periods(g, pd_x, pd_limit); }; });

  std::string s_kind, s_dn, s_word;
  int64_t s_limit = 0, s_big_n = 0, s_base = 0;
  auto* sub_scan = app.add_subcommand("scan", "digit-pattern scans");
  sub_scan->fallthrough();
  sub_scan->add_option("--kind", s_kind, "safe-prime, divisor, or gcd")
      ->check(CLI::IsMember({"safe-prime", "divisor", "gcd"}))
      ->required();
  sub_scan->add_option("--limit", s_limit, "safe-prime: upper bound on p");
  sub_scan->add_option("--N", s_big_n, "divisor: period length");
  sub_scan->add_option("--dN", s_dn, "divisor: divisor of base^N - 1");
  sub_scan->add_option("--word", s_word, "gcd: period word digits, comma separated");
  sub_scan->add_option("--base", s_base, "base when no --set is given");
  sub_scan->callback([&] {
    action = [&] { return cmd_scan(g, s_kind, s_limit, s_big_n, s_dn, s_word, s_base); };
  });

  std::vector<std::string> v_suites;
  auto* sub_ver = app.add_subcommand("verify", "run the shipped verification battery");
  sub_ver->fallthrough();
  sub_ver->add_option("--suite", v_suites, "criterion names (default: all)");
  sub_ver->callback([&] { action = [&] { return cmd_verify(g, v_suites); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return action();
  } catch (const Error& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
