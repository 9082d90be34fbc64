#include "commands.hpp"

#include <iostream>
#include <random>

#include "iwg/coleman.hpp"
#include "iwg/config.hpp"
#include "iwg/group_law.hpp"
#include "iwg/local_points.hpp"

namespace iwg::cli {

namespace {

Json load_config(const Options& opt) { return parse_json(read_file(opt.config)); }

OJson matrix_json(const MatQ& m) {
  OJson rows = OJson::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    OJson r = OJson::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(str(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

OJson series_json(const SeparatedSeries& s) {
  OJson out = OJson::array();
  for (int n = 1; n <= s.degree(); ++n) out.push_back(matrix_json(s[static_cast<std::size_t>(n)]));
  return out;
}

OJson vector_json(const std::vector<Rational>& v) {
  OJson out = OJson::array();
  for (const auto& x : v) out.push_back(str(x));
  return out;
}

int degree_option(const Options& opt, const Field& cfg, const std::string& key, long fallback) {
  if (opt.degree) return *opt.degree;
  if (cfg.has(key)) return static_cast<int>(cfg[key].as_long(1, 4096));
  return static_cast<int>(fallback);
}

}  // namespace

int run_honda_check(const Options& opt) {
  Json j = load_config(opt);
  Field cfg(j, "");
  EulerData E = parse_euler_data(cfg);
  int D = degree_option(opt, cfg, "degree", static_cast<long>(ipow64(E.p, 3)));
  require_primes_up_to(E, D);
  std::vector<std::string> which{"log_A", "ell"};
  if (cfg.has("logarithms")) {
    which.clear();
    Field l = cfg["logarithms"];
    for (std::size_t i = 0; i < l.size(); ++i) {
      std::string s = l.at(i).as_string();
      if (s != "log_A" && s != "ell" && s != "identity") l.at(i).fail("expected \"log_A\", \"ell\" or \"identity\"");
      which.push_back(s);
    }
  }
  int xk_max = cfg.has("xk_max") ? static_cast<int>(cfg["xk_max"].as_long(0, 200)) : 12;

  HondaType u = honda_type(E);
  Tally tally;
  Csv csv({"series", "degree", "pass", "worst_margin", "first_failure"});
  OJson checks = OJson::array();
  for (const auto& name : which) {
    SeparatedSeries L = name == "log_A" ? log_A(E, D) : name == "ell" ? ell_series(E, D) : identity_series(E.g, D);
    HondaReport r = honda_check(L, u, D, 1);
    tally.add(r.pass);
    std::string failure = r.fail_degree ? "degree " + std::to_string(*r.fail_degree) + " entry (" +
                                              std::to_string(r.fail_row) + "," + std::to_string(r.fail_col) +
                                              ") valuation " + r.fail_valuation.str()
                                        : "";
    csv.row({name, std::to_string(D), yes_no(r.pass), r.worst_margin.str(), failure});
    OJson c;
    c["series"] = name;
    c["degree"] = D;
    c["pass"] = r.pass;
    c["worst_margin"] = r.worst_margin.str();
    c["first_failure"] = failure.empty() ? OJson() : OJson(failure);
    checks.push_back(c);
  }
  bool xk_ok = xk_denominator_bound_holds(xk_sequence(E.cp(), E.p, xk_max), E.p);
  tally.add(xk_ok);
  csv.row({"x_k", std::to_string(xk_max), yes_no(xk_ok), "", ""});

  if (opt.format == Format::csv) {
    emit(opt, csv.str());
  } else {
    OJson doc;
    doc["p"] = E.p;
    doc["g"] = E.g;
    doc["degree"] = D;
    doc["checks"] = checks;
    doc["xk_denominator_bound"] = {{"k_max", xk_max}, {"pass", xk_ok}};
    emit(opt, doc);
  }
  return finish(tally);
}

int run_logarithm(const Options& opt) {
  Json j = load_config(opt);
  Field cfg(j, "");
  EulerData E = parse_euler_data(cfg);
  int D = degree_option(opt, cfg, "degree", 9);
  require_primes_up_to(E, D);
  GroupLawOptions glo;
  if (cfg.has("assoc_degree")) glo.assoc_degree = static_cast<int>(cfg["assoc_degree"].as_long(1, 12));

  SeparatedSeries ell = ell_series_for_group_law(E, D), la = log_A(E, D);
  GroupLawReport ge = group_law(ell, D, E.p, glo), ga = group_law(la, D, E.p, glo);
  IsomorphismReport iso = logarithm_isomorphism(la, ell, D, E.p, glo);

  Tally tally;
  Csv csv({"check", "pass"});
  OJson checks;
  auto add = [&](const std::string& name, bool ok) {
    tally.add(ok);
    csv.row({name, yes_no(ok)});
    checks[name] = ok;
  };
  for (auto [tag, rep] : {std::pair{"ell", &ge}, std::pair{"log_A", &ga}}) {
    std::string t = tag;
    add(t + ".integral", rep->integral);
    add(t + ".linear_term", rep->linear_term_ok);
    add(t + ".commutative", rep->commutative);
    add(t + ".associative", rep->associative);
    add(t + ".homomorphism", rep->homomorphism);
  }
  add("isomorphism.integral", iso.integral);
  add("isomorphism.intertwines", iso.intertwines);

  if (opt.format == Format::csv) {
    emit(opt, csv.str());
  } else {
    OJson doc;
    doc["p"] = E.p;
    doc["g"] = E.g;
    doc["degree"] = D;
    doc["associativity_degree"] = glo.assoc_degree;
    doc["ell"] = series_json(ell);
    doc["log_A"] = series_json(la);
    doc["group_law_min_valuation"] = {{"ell", ge.min_coeff_valuation.str()}, {"log_A", ga.min_coeff_valuation.str()}};
    doc["checks"] = checks;
    emit(opt, doc);
  }
  return finish(tally);
}

int run_local_points(const Options& opt) {
  Json j = load_config(opt);
  Field cfg(j, "");
  EulerData E = parse_euler_data(cfg);
  int nmax = cfg.has("nmax") ? static_cast<int>(cfg["nmax"].as_long(1, 4)) : 2;
  long prec = opt.precision ? *opt.precision : cfg.has("precision") ? cfg["precision"].as_long(1, 1 << 20) : 6;

  QSystemReport rep = verify_q_system(E, nmax, prec);
  Tally tally;
  Csv csv({"condition", "n", "residual_valuation", "pass"});
  OJson rows = OJson::array();
  for (const auto& r : rep.rows) {
    tally.add(r.pass);
    csv.row({r.condition, std::to_string(r.n), r.residual.str(), yes_no(r.pass)});
    OJson o;
    o["condition"] = r.condition;
    o["n"] = r.n;
    o["residual_valuation"] = r.residual.str();
    o["pass"] = r.pass;
    if (!r.note.empty()) o["note"] = r.note;
    rows.push_back(o);
  }
  if (opt.format == Format::csv) {
    emit(opt, csv.str());
  } else {
    OJson doc;
    doc["p"] = E.p;
    doc["g"] = E.g;
    doc["nmax"] = nmax;
    doc["ambient_level"] = nmax + 2;
    doc["precision"] = prec;
    doc["ell_eps"] = vector_json(LocalPoints(E, 1).epsilon_log());
    doc["rows"] = rows;
    emit(opt, doc);
  }
  return finish(tally);
}

int run_coleman(const Options& opt, const ColemanArgs& args) {
  long p = 3;
  int nmax = 5;
  std::string ap_text = "3";
  std::vector<long> us{1, 2};
  if (!opt.config.empty()) {
    Json j = load_config(opt);
    Field cfg(j, "");
    p = cfg["p"].as_long(3, 1000003);
    Field ap = cfg["ap"];
    ap_text = ap.json().is_string() ? ap.as_string() : str(ap.as_integer());
    if (cfg.has("nmax")) nmax = static_cast<int>(cfg["nmax"].as_long(1, 8));
    if (cfg.has("u")) us = cfg["u"].as_long_list();
  }
  if (args.p) p = *args.p;
  if (args.ap) ap_text = *args.ap;
  if (args.nmax) nmax = *args.nmax;
  if (nmax < 1 || nmax > 8) throw InputError("nmax must be in [1, 8]");
  bool symbolic = ap_text == "symbolic";
  Integer ap;
  if (!symbolic && ap.set_str(ap_text, 10) != 0) throw InputError("field \"ap\": expected an integer or \"symbolic\"");

  Tally tally;
  OJson identities = OJson::array();
  auto record = [&](const std::string& name, int n, std::optional<long> u, bool ok) {
    tally.add(ok);
    OJson o;
    o["identity"] = name;
    o["n"] = n;
    if (u) o["u"] = *u;
    o["pass"] = ok;
    identities.push_back(o);
  };
  auto run_identities = [&](const auto& fam, const auto& like) {
    for (int n = 1; n <= nmax; ++n) {
      record("det", n, std::nullopt, fam.verify_det(n));
      record("wronskian", n, std::nullopt, fam.verify_wronskian(n));
      for (long u : us) record("column", n, u, fam.verify_col_u_identity(n, from_int_like(like, u)));
      if (n >= 2) record("recursion", n, std::nullopt, fam.verify_recursion(n));
    }
  };

  Csv csv({"n", "sign", "computed_ord", "closed_form_ord", "equal"});
  OJson vals = OJson::array();
  if (symbolic) {
    ColemanFamily<Poly<Integer>> fam(p, Poly<Integer>::x(Integer(0)), nmax);
    run_identities(fam, Poly<Integer>::constant(Integer(1)));
  } else {
    ColemanFamily<Integer> fam(p, ap, nmax);
    run_identities(fam, Integer(1));
    for (int n = 1; n <= nmax; ++n)
      for (bool sharp : {true, false}) {
        ValuationComparison vc = h_valuation(fam, n, sharp);
        std::string eq = vc.applicable ? yes_no(vc.equal) : "n/a";
        if (vc.applicable) tally.add(vc.equal);
        std::string sign = sharp ? "sharp" : "flat";
        csv.row({std::to_string(n), sign, vc.computed.str(), vc.closed_form.str(), eq});
        OJson o;
        o["n"] = n;
        o["sign"] = sign;
        o["computed_ord"] = vc.computed.str();
        o["closed_form_ord"] = vc.closed_form.str();
        o["equal"] = eq;
        vals.push_back(o);
      }
  }
  if (opt.format == Format::csv) {
    emit(opt, csv.str());
  } else {
    OJson doc;
    doc["p"] = p;
    doc["ap"] = ap_text;
    doc["nmax"] = nmax;
    doc["identities"] = identities;
    doc["valuations"] = vals;
    emit(opt, doc);
  }
  return finish(tally);
}

namespace {

struct KobayashiRow {
  std::string source;
  int n = 0;
  NablaResult direct;
  std::optional<NablaResult> analytic;
  std::optional<long> expected;
  std::string agree;  // "true", "false", "n/a"
};

std::string nabla_str(const NablaResult& r) { return r.defined ? std::to_string(r.value) : "undefined"; }

OJson nabla_json(const NablaResult& r) { return r.defined ? OJson(r.value) : OJson("undefined"); }

}  // namespace

int run_kobayashi(const Options& opt) {
  Json j = load_config(opt);
  Field cfg(j, "");
  DvrPtr ring = parse_ring(cfg["ring"], opt.precision);
  std::vector<KobayashiRow> rows;
  OJson asymptotic = OJson::array();
  Tally tally;

  auto series_rows = [&](const std::string& name, const IwasawaPoly<DvrElement>& F, int nmax) {
    for (int n = 1; n <= nmax; ++n) {
      KobayashiRow r;
      r.source = name;
      r.n = n;
      r.direct = nabla_oracle(F, n);
      r.analytic = nabla_char_series(F, n);
      if (!char_series_admissible(F, n)) {
        r.agree = "n/a";
      } else {
        bool ok = r.direct.defined && r.analytic->defined && r.direct.value == r.analytic->value;
        tally.add(ok);
        r.agree = yes_no(ok);
      }
      rows.push_back(r);
    }
  };

  if (cfg.has("series")) {
    Field s = cfg["series"];
    for (std::size_t i = 0; i < s.size(); ++i) {
      Field e = s.at(i);
      std::string name = e["name"].as_string();
      Poly<DvrElement> f = parse_ring_poly(e["coeffs"], ring);
      if (f.is_zero()) e["coeffs"].fail("series must be nonzero");
      auto F = IwasawaPoly<DvrElement>::exact(f);
      int nmax = static_cast<int>(e["n_max"].as_long(1, 6));
      series_rows(name, F, nmax);
      if (nmax >= 2) {
        AsymptoticTable t = nabla_asymptotic(F, 1, nmax);
        OJson a;
        a["source"] = name;
        a["mu"] = str(t.invariants.mu);
        a["lambda"] = t.invariants.lambda;
        a["values"] = OJson::array();
        for (const auto& r : t.rows)
          a["values"].push_back({{"n", r.n}, {"analytic", nabla_json(r.analytic)}, {"formula", r.formula}, {"agree", r.agree}});
        a["threshold"] = t.threshold ? OJson(*t.threshold) : OJson();
        asymptotic.push_back(a);
      }
    }
  }
  if (cfg.has("systems")) {
    Field s = cfg["systems"];
    for (std::size_t i = 0; i < s.size(); ++i) {
      Field e = s.at(i);
      std::string name = e["name"].as_string();
      ProjectiveSystem S = parse_system(e, ring);
      std::map<long, long> expected;
      if (e.has("expected")) {
        Field ex = e["expected"];
        for (std::size_t k = 0; k < ex.size(); ++k) expected[ex.at(k)["n"].as_long()] = ex.at(k)["value"].as_long();
      }
      for (int n = S.first() + 1; n <= S.last(); ++n) {
        KobayashiRow r;
        r.source = name;
        r.n = n;
        r.direct = nabla_direct(S, n);
        if (expected.count(n)) {
          r.expected = expected[n];
          bool ok = r.direct.defined && r.direct.value == *r.expected;
          tally.add(ok);
          r.agree = yes_no(ok);
        } else {
          r.agree = "n/a";
        }
        rows.push_back(r);
      }
    }
  }
  if (cfg.has("random")) {
    Field rnd = cfg["random"];
    long count = rnd["count"].as_long(1, 10000);
    int mu_max = static_cast<int>(rnd["mu_max"].as_long(0, 8));
    int lambda_max = static_cast<int>(rnd["lambda_max"].as_long(0, 8));
    int nmax = static_cast<int>(rnd["n_max"].as_long(1, 4));
    std::uint64_t seed = opt.seed ? *opt.seed : rnd.has("seed") ? static_cast<std::uint64_t>(rnd["seed"].as_long()) : 1;
    std::mt19937_64 rng(seed);
    for (long k = 0; k < count; ++k)
      series_rows("random" + std::to_string(k), random_char_series(ring, rng, mu_max, lambda_max), nmax);
  }

  if (opt.format == Format::csv) {
    Csv csv({"source", "n", "nabla_direct", "nabla_analytic", "agree"});
    for (const auto& r : rows)
      csv.row({r.source, std::to_string(r.n), nabla_str(r.direct),
               r.analytic ? nabla_str(*r.analytic) : r.expected ? std::to_string(*r.expected) : "", r.agree});
    emit(opt, csv.str());
  } else {
    OJson doc;
    doc["ring"] = ring->describe();
    OJson out = OJson::array();
    for (const auto& r : rows) {
      OJson o;
      o["source"] = r.source;
      o["n"] = r.n;
      o["nabla_direct"] = nabla_json(r.direct);
      o["nabla_analytic"] = r.analytic ? nabla_json(*r.analytic) : OJson();
      if (r.expected) o["expected"] = *r.expected;
      o["agree"] = r.agree;
      if (r.direct.defined)
        o["breakdown"] = {{"ker", r.direct.ker_length}, {"coker", r.direct.coker_length}, {"rank", r.direct.lower_rank}};
      out.push_back(o);
    }
    doc["rows"] = out;
    doc["asymptotic"] = asymptotic;
    doc["asymptotic_note"] = "threshold is the first level of the final run of at least two agreeing levels; empirical, not a proven bound";
    emit(opt, doc);
  }
  return finish(tally);
}

int run_growth(const Options& opt) {
  Json j = load_config(opt);
  GrowthParams g = parse_growth_params(Field(j, ""));
  GrowthReport rep = emit_growth_table(g);
  for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
  if (opt.format == Format::csv) {
    Csv csv({"n", "parity", "a_sharp", "a_flat", "F_v", "nabla_X", "delta_e", "cumulative_e"});
    for (const auto& r : rep.rows)
      csv.row({std::to_string(r.n), r.parity, std::to_string(r.a_sharp), std::to_string(r.a_flat), str(r.F_v),
               str(r.nabla_X), str(r.delta_e), r.cumulative_e ? str(*r.cumulative_e) : ""});
    emit(opt, csv.str());
  } else {
    OJson doc;
    doc["p"] = g.p;
    doc["d"] = g.d;
    doc["r_p"] = g.r_p ? str(*g.r_p) : "inf";
    OJson rows = OJson::array();
    for (const auto& r : rep.rows) {
      OJson o;
      o["n"] = r.n;
      o["parity"] = r.parity;
      o["a_sharp"] = r.a_sharp;
      o["a_flat"] = r.a_flat;
      o["F_v"] = str(r.F_v);
      o["nabla_X"] = str(r.nabla_X);
      o["delta_e"] = str(r.delta_e);
      o["cumulative_e"] = r.cumulative_e ? OJson(str(*r.cumulative_e)) : OJson();
      rows.push_back(o);
    }
    doc["rows"] = rows;
    doc["warnings"] = rep.warnings;
    doc["regime"] = "values describe the asymptotic regime n >> 0; no threshold is computed";
    emit(opt, doc);
  }
  return 0;
}

}  // namespace iwg::cli
