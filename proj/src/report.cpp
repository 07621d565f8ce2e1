#include "ptscarf/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>
#include <tuple>

#include <spdlog/spdlog.h>

#include "ptscarf/analytic_spectrum.hpp"
#include "ptscarf/errors.hpp"
#include "ptscarf/superpotential.hpp"

namespace ptscarf {

using nlohmann::json;

namespace {

constexpr char kNotPtMessage[] = "not PT-symmetric: c_pt*(2(A-B)+alpha) != 0";

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const NonNormalizableError*>(&e)) return "NonNormalizableError";
  if (dynamic_cast<const RegimeError*>(&e)) return "RegimeError";
  if (dynamic_cast<const RepresentationError*>(&e)) return "RepresentationError";
  if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
  if (dynamic_cast<const GridError*>(&e)) return "GridError";
  if (dynamic_cast<const ValidationError*>(&e)) return "ValidationError";
  if (dynamic_cast<const MatchError*>(&e)) return "MatchError";
  if (dynamic_cast<const ConvergenceError*>(&e)) return "ConvergenceError";
  return "Error";
}

/// Maps an exception from a subcommand onto the exit-code contract.
RunResult failure(const std::exception& e) {
  RunResult r;
  r.message = error_kind(e) + ": " + e.what();
  if (dynamic_cast<const RegimeError*>(&e)) r.exit_code = exit_code::kRegime;
  else if (dynamic_cast<const ConvergenceError*>(&e)) r.exit_code = exit_code::kConvergence;
  else r.exit_code = exit_code::kValidation;
  return r;
}

json opt_sector(const std::optional<Sector>& s) {
  return s ? json(std::string(to_string(*s))) : json(nullptr);
}

json index_list(const std::vector<std::size_t>& v) {
  json arr = json::array();
  for (auto i : v) arr.push_back(i);
  return arr;
}

} // namespace

void RunConfig::validate() const {
  params.validate();
  solver.validate();
  if (!(param_tol > 0.0)) throw ValidationError("param tolerance must be positive");
  if (jobs < 1) throw ValidationError("--jobs must be at least 1");
  if (scan) {
    if (scan->steps < 2) throw ValidationError("scan needs at least 2 steps");
    if (scan->c_min > scan->c_max) throw ValidationError("scan minimum exceeds maximum");
  }
}

json to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const Params& p) { return json{{"A", p.A}, {"B", p.B}, {"alpha", p.alpha}, {"c_pt", p.c_pt}}; }

json to_json(const Superpotential& w) {
  return json{{"a", to_json(w.a)}, {"b", to_json(w.b)}, {"alpha", w.alpha}};
}

json to_json(const PotentialCoeffs& v) {
  return json{{"s", to_json(v.s)}, {"t", to_json(v.t)}, {"c0", to_json(v.c0)}, {"alpha", v.alpha}};
}

json to_json(const SpectrumReport& r, double pairing_tol) {
  json analytic = json::array();
  for (const auto& a : r.analytic) {
    analytic.push_back({{"family", std::string(to_string(a.origin))},
                        {"sector", opt_sector(a.sector)},
                        {"n", a.n},
                        {"energy", to_json(a.energy)}});
  }
  json numerical = json::array();
  for (const auto& n : r.numerical) {
    numerical.push_back({{"energy", to_json(n.energy)}, {"boundary_ratio", n.boundary_ratio}});
  }
  json matches = json::array();
  for (const auto& m : r.matches) {
    matches.push_back({{"analytic", m.analytic}, {"numeric", m.numeric}, {"abs_err", m.error}});
  }
  json pairs = json::array();
  for (const auto& p : r.pairing.pairs) {
    pairs.push_back({{"upper", p.upper}, {"lower", p.lower}, {"defect", p.defect}});
  }
  const bool pairing_ok = r.pairing.unpaired.empty() && r.pairing.max_defect <= pairing_tol;
  auto opt_num = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  auto opt_bool = [](const std::optional<bool>& v) { return v ? json(*v) : json(nullptr); };
  json pt{{"potential_defect", r.pt.potential_defect},
          {"potential_pt_symmetric", r.pt.potential_pt_symmetric},
          {"ground_state_self_overlap", r.pt.ground_state_self_overlap},
          {"ground_state_pt_invariant", r.pt.ground_state_pt_invariant},
          {"sector_swap_overlap", opt_num(r.pt.sector_swap_overlap)},
          {"sector_swap", opt_bool(r.pt.sector_swap)},
          {"numeric_self_overlap", opt_num(r.pt.numeric_self_overlap)},
          {"numeric_swap_overlap", opt_num(r.pt.numeric_swap_overlap)}};
  return json{{"params", to_json(r.params)},
              {"regime", std::string(to_string(r.regime))},
              {"grid", {{"half_width", r.half_width}, {"n_points", r.n_points}, {"order", r.order}}},
              {"match_tol", r.match_tol},
              {"eigenvalue_count", r.eigenvalue_count},
              {"trace_defect", r.trace_defect},
              {"analytic", analytic},
              {"numerical", numerical},
              {"matches", matches},
              {"unmatched_analytic", index_list(r.unmatched_analytic)},
              {"unmatched_numeric", index_list(r.unmatched_numeric)},
              {"used_hungarian", r.used_hungarian},
              {"pairing",
               {{"pairs", pairs},
                {"self_paired", index_list(r.pairing.self_paired)},
                {"unpaired", index_list(r.pairing.unpaired)},
                {"max_defect", r.pairing.max_defect},
                {"pairing_tol", pairing_tol},
                {"ok", pairing_ok}}},
              {"max_abs_imag", r.max_abs_imag},
              {"all_matched", r.all_matched()},
              {"pt", pt}};
}

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

RunResult run_potential(const RunConfig& cfg) {
  try {
    cfg.validate();
    const Params& p = cfg.params;
    const Regime regime = classify_regime(p, cfg.param_tol);
    if (regime == Regime::NotPtSymmetric) throw RegimeError(kNotPtMessage);

    json sups = json::array();
    json energies = json::array();
    std::vector<Superpotential> ws;
    if (regime == Regime::Unbroken) {
      ws.push_back(build_unbroken(p));
    } else {
      auto [plus, minus] = build_broken_pair(p);
      ws = {plus, minus};
    }
    for (std::size_t i = 0; i < ws.size(); ++i) {
      json entry = to_json(ws[i]);
      entry["sector"] = regime == Regime::Broken ? json(std::string(to_string(i == 0 ? Sector::Plus : Sector::Minus)))
                                                 : json(nullptr);
      entry["ground_state_energy"] = ws[i].a.real() > 0.0 ? to_json(ground_state_energy(ws[i])) : json(nullptr);
      entry["normalizable"] = ws[i].a.real() > 0.0;
      sups.push_back(entry);
    }
    const PotentialCoeffs v = partner_potential_minus(ws.front());
    json doc{{"command", "potential"},
             {"params", to_json(p)},
             {"regime", std::string(to_string(regime))},
             {"pt_condition", {{"product", pt_condition_product(p)}, {"satisfied", check_pt_condition(p, cfg.param_tol)}}},
             {"superpotentials", sups},
             {"potential", to_json(v)},
             {"pt_symmetric", check_pt_symmetric_potential(v, cfg.param_tol)}};
    return {exit_code::kSuccess, dump_canonical(doc), ""};
  } catch (const std::exception& e) {
    return failure(e);
  }
}

RunResult run_spectrum(const RunConfig& cfg) {
  try {
    cfg.validate();
    SpectrumReport rep = verify_spectrum(cfg.params, cfg.solver);
    json doc = to_json(rep, cfg.solver.pairing_tol);
    doc["command"] = "spectrum";
    return {exit_code::kSuccess, dump_canonical(doc), ""};
  } catch (const MatchError& e) {
    json doc = to_json(e.report(), cfg.solver.pairing_tol);
    doc["command"] = "spectrum";
    std::ostringstream msg;
    msg << "MatchError: " << e.what() << "; unmatched analytic levels:";
    for (auto i : e.report().unmatched_analytic) msg << ' ' << e.report().analytic[i].energy;
    return {exit_code::kMatch, dump_canonical(doc), msg.str()};
  } catch (const std::exception& e) {
    return failure(e);
  }
}

namespace {

std::vector<double> scan_points(const ScanRange& s) {
  if (s.c_min == s.c_max) return {s.c_min};
  std::vector<double> pts(static_cast<std::size_t>(s.steps));
  for (int i = 0; i < s.steps; ++i) {
    pts[static_cast<std::size_t>(i)] =
        i == s.steps - 1 ? s.c_max : s.c_min + (s.c_max - s.c_min) * static_cast<double>(i) / (s.steps - 1);
  }
  return pts;
}

std::vector<ScanRow> scan_point(const RunConfig& cfg, std::size_t run_id, double c) {
  std::vector<ScanRow> rows;
  const Params& base = cfg.params;
  Params p{base.A, base.B, base.alpha, 0.0};
  ScanRow proto;
  proto.run_id = run_id;
  proto.c_pt = c;
  try {
    if (c != 0.0) p = broken_constraint_params(base.A, base.alpha, c);
    proto.B = p.B;
    const SpectrumReport rep = compute_spectrum_report(p, cfg.solver);
    std::vector<std::optional<std::size_t>> numeric_of(rep.analytic.size());
    std::vector<double> err_of(rep.analytic.size(), 0.0);
    for (const auto& m : rep.matches) {
      numeric_of[m.analytic] = m.numeric;
      err_of[m.analytic] = m.error;
    }
    for (std::size_t a = 0; a < rep.analytic.size(); ++a) {
      const auto& lvl = rep.analytic[a];
      ScanRow row = proto;
      row.sector = lvl.sector ? std::string(to_string(*lvl.sector)) : "none";
      row.family = std::string(to_string(lvl.origin));
      row.n = lvl.n;
      row.analytic = lvl.energy;
      if (numeric_of[a]) {
        row.numeric = rep.numerical[*numeric_of[a]].energy;
        row.abs_err = err_of[a];
      } else {
        row.error = "unmatched";
      }
      rows.push_back(row);
    }
    for (auto k : rep.unmatched_numeric) {
      ScanRow row = proto;
      row.sector = "unassigned";
      row.numeric = rep.numerical[k].energy;
      row.error = "no analytic partner";
      rows.push_back(row);
    }
  } catch (const std::exception& e) {
    ScanRow row = proto;
    row.B = p.B;
    row.sector = "none";
    row.error = error_kind(e) + ": " + e.what();
    rows.push_back(row);
  }
  return rows;
}

int sector_rank(const std::string& s) {
  if (s == "plus") return 0;
  if (s == "minus") return 1;
  if (s == "none") return 2;
  return 3;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

} // namespace

std::vector<ScanRow> scan_rows(const RunConfig& cfg) {
  cfg.validate();
  if (!cfg.scan) throw ValidationError("scan range missing (--scan-min/--scan-max/--scan-steps)");
  const std::vector<double> pts = scan_points(*cfg.scan);
  std::vector<std::vector<ScanRow>> results(pts.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < pts.size(); i = next++) results[i] = scan_point(cfg, i, pts[i]);
  };
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(cfg.jobs), pts.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<ScanRow> rows;
  for (auto& r : results) rows.insert(rows.end(), r.begin(), r.end());
  std::stable_sort(rows.begin(), rows.end(), [](const ScanRow& l, const ScanRow& r) {
    return std::make_tuple(l.c_pt, l.run_id, sector_rank(l.sector), l.n, l.family) <
           std::make_tuple(r.c_pt, r.run_id, sector_rank(r.sector), r.n, r.family);
  });
  return rows;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream os;
  os << "run_id,c_pt,B,sector,family,n,re_E_analytic,im_E_analytic,re_E_numeric,im_E_numeric,abs_err,error\n";
  for (const auto& r : rows) {
    os << r.run_id << ',' << fmt(r.c_pt) << ',' << fmt(r.B) << ',' << r.sector << ',' << r.family << ',' << r.n
       << ',';
    if (r.analytic) os << fmt(r.analytic->real()) << ',' << fmt(r.analytic->imag()) << ',';
    else os << ",,";
    if (r.numeric) os << fmt(r.numeric->real()) << ',' << fmt(r.numeric->imag()) << ',';
    else os << ",,";
    if (r.abs_err) os << fmt(*r.abs_err);
    os << ',';
    // Messages may contain commas.
    std::string e = r.error;
    if (e.find_first_of(",\"") != std::string::npos) {
      std::string q = "\"";
      for (char ch : e) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      e = q + "\"";
    }
    os << e << '\n';
  }
  return os.str();
}

RunResult run_scan(const RunConfig& cfg) {
  try {
    const std::vector<ScanRow> rows = scan_rows(cfg);
    if (cfg.format == OutputFormat::Csv) return {exit_code::kSuccess, scan_csv(rows), ""};
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"run_id", r.run_id},
                     {"c_pt", r.c_pt},
                     {"B", r.B},
                     {"sector", r.sector},
                     {"family", r.family},
                     {"n", r.n},
                     {"analytic", r.analytic ? to_json(*r.analytic) : json(nullptr)},
                     {"numeric", r.numeric ? to_json(*r.numeric) : json(nullptr)},
                     {"abs_err", r.abs_err ? json(*r.abs_err) : json(nullptr)},
                     {"error", r.error}});
    }
    json doc{{"command", "scan"}, {"params", to_json(cfg.params)}, {"rows", arr}};
    return {exit_code::kSuccess, dump_canonical(doc), ""};
  } catch (const std::exception& e) {
    return failure(e);
  }
}

namespace {

struct Property {
  std::string name;
  std::string status;  // pass, fail, skipped
  std::optional<double> defect;
  std::string detail;
};

template <class Fn>
Property run_property(const std::string& name, Fn&& fn) {
  Property prop{name, "fail", std::nullopt, ""};
  try {
    fn(prop);
  } catch (const std::exception& e) {
    prop.status = "fail";
    prop.detail = error_kind(e) + ": " + e.what();
  }
  return prop;
}

double coeff_distance(const PotentialCoeffs& l, const PotentialCoeffs& r) {
  return std::max({std::abs(l.s - r.s), std::abs(l.t - r.t), std::abs(l.c0 - r.c0)});
}

bool same_levels(const EnergyFamily& l, const EnergyFamily& r, double tol, double& defect) {
  if (l.levels.size() != r.levels.size()) return false;
  for (std::size_t i = 0; i < l.levels.size(); ++i) {
    defect = std::max(defect, std::abs(l.levels[i].energy - r.levels[i].energy));
  }
  return defect <= tol;
}

} // namespace

RunResult run_verify(const RunConfig& cfg) {
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    return failure(e);
  }
  const Params& p = cfg.params;
  const double tol = cfg.param_tol;
  const Regime regime = classify_regime(p, tol);
  const bool pt_ok = regime != Regime::NotPtSymmetric;
  const bool broken = regime == Regime::Broken;
  std::vector<Property> props;

  auto skip = [](Property& prop, const std::string& why) {
    prop.status = "skipped";
    prop.detail = why;
  };

  props.push_back(run_property("pt_condition", [&](Property& prop) {
    prop.defect = std::abs(pt_condition_product(p));
    prop.status = check_pt_condition(p, tol) ? "pass" : "fail";
  }));

  std::vector<Superpotential> ws;
  if (regime == Regime::Unbroken) ws.push_back(build_unbroken(p));
  else if (broken) {
    auto [plus, minus] = build_broken_pair(p);
    ws = {plus, minus};
  }

  props.push_back(run_property("expansion_identity", [&](Property& prop) {
    if (!pt_ok) return skip(prop, "not PT-symmetric");
    const PotentialCoeffs closed =
        broken ? broken_potential_closed_form(p) : unbroken_potential_closed_form(p);
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> xs(-10.0 / p.alpha, 10.0 / p.alpha);
    double worst = 0.0, scale = 1.0;
    for (const auto& w : ws) {
      const PotentialCoeffs v = partner_potential_minus(w);
      scale = std::max(scale, std::abs(v.s) + std::abs(v.t));
      worst = std::max(worst, coeff_distance(v, closed));
      for (int i = 0; i < 1000; ++i) {
        const double x = xs(rng);
        const cplx wx = w(x);
        worst = std::max(worst, std::abs(v(x) - (wx * wx - w.derivative(x) - w.a * w.a)));
      }
    }
    prop.defect = worst;
    prop.status = worst <= tol * scale ? "pass" : "fail";
  }));

  props.push_back(run_property("unique_partner_potential", [&](Property& prop) {
    if (!broken) return skip(prop, "broken regime only");
    const PotentialCoeffs vp = partner_potential_minus(ws[0]);
    const PotentialCoeffs vm = partner_potential_minus(ws[1]);
    prop.defect = coeff_distance(vp, vm);
    prop.status = *prop.defect <= 1e-14 * std::max(1.0, std::abs(vp.s) + std::abs(vp.t)) ? "pass" : "fail";
  }));

  props.push_back(run_property("sl2_reduction", [&](Property& prop) {
    if (!broken) return skip(prop, "broken regime only");
    double worst = 0.0;
    for (Sector s : {Sector::Plus, Sector::Minus}) {
      const Params q = sl2_exchange(p, s, tol);
      const Params back = sl2_exchange(q, s, tol);
      worst = std::max({worst, std::abs(q.A - p.A), std::abs(q.B - p.B), std::abs(q.c_pt + p.c_pt),
                        std::abs(back.A - p.A), std::abs(back.B - p.B), std::abs(back.c_pt - p.c_pt)});
    }
    prop.defect = worst;
    prop.status = worst <= tol * std::max(1.0, std::abs(p.A) + std::abs(p.B)) ? "pass" : "fail";
  }));

  props.push_back(run_property("sl2_sector_swap", [&](Property& prop) {
    if (!broken) return skip(prop, "broken regime only");
    const auto [plus, minus] = bifurcated_spectrum(p);
    const auto [xplus, xminus] = bifurcated_spectrum(sl2_exchange(p, Sector::Plus, tol));
    double defect = 0.0;
    const bool ok = same_levels(xplus, minus, 1e-12, defect) && same_levels(xminus, plus, 1e-12, defect);
    prop.defect = defect;
    prop.status = ok ? "pass" : "fail";
  }));

  props.push_back(run_property("potential_pt_symmetric", [&](Property& prop) {
    if (!pt_ok) return skip(prop, "not PT-symmetric");
    const PotentialCoeffs v = partner_potential_minus(ws.front());
    const Grid g = cfg.solver.make_grid(p.alpha);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      worst = std::max(worst, std::abs(std::conj(v(-g.x(i))) - v(g.x(i))));
    }
    prop.defect = worst;
    const double scale = std::max(1.0, std::abs(v.s) + std::abs(v.t));
    prop.status = check_pt_symmetric_potential(v, tol * scale) && worst <= tol * scale ? "pass" : "fail";
  }));

  props.push_back(run_property("ground_state_pt", [&](Property& prop) {
    if (!pt_ok) return skip(prop, "not PT-symmetric");
    const Grid g = cfg.solver.make_grid(p.alpha);
    const double otol = cfg.solver.overlap_tol;
    const Wavefunction psi0 = ground_state_wavefunction(ws.front(), g);
    const double self = normalized_overlap(pt_apply(psi0), psi0);
    if (!broken) {
      prop.defect = 1.0 - self;
      prop.status = self >= 1.0 - otol ? "pass" : "fail";
      prop.detail = "ground state is PT-invariant";
      return;
    }
    const Wavefunction psi_minus = ground_state_wavefunction(ws[1], g);
    const double swap = normalized_overlap(pt_apply(psi0), psi_minus);
    prop.defect = 1.0 - swap;
    std::ostringstream os;
    os << "self overlap " << self << ", sector-swap overlap " << swap;
    prop.detail = os.str();
    prop.status = (swap >= 1.0 - otol && self <= 0.999) ? "pass" : "fail";
  }));

  json arr = json::array();
  bool all_ok = true;
  for (const auto& pr : props) {
    if (pr.status == "fail") all_ok = false;
    arr.push_back({{"name", pr.name},
                   {"status", pr.status},
                   {"defect", pr.defect ? json(*pr.defect) : json(nullptr)},
                   {"detail", pr.detail}});
  }
  json doc{{"command", "verify"},
           {"params", to_json(p)},
           {"regime", std::string(to_string(regime))},
           {"properties", arr},
           {"passed", all_ok}};
  RunResult res{all_ok ? exit_code::kSuccess : exit_code::kVerifyFailure, dump_canonical(doc), ""};
  if (!all_ok) {
    std::ostringstream os;
    os << "verification failed:";
    for (const auto& pr : props) {
      if (pr.status != "fail") continue;
      os << ' ' << pr.name << " (defect ";
      if (pr.defect) os << *pr.defect;
      else os << "n/a";
      os << (pr.detail.empty() ? "" : "; " + pr.detail) << ')';
    }
    res.message = os.str();
  }
  return res;
}

} // namespace ptscarf
