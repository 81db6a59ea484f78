#include "ietlab/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace ietlab {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing key \"") + key + "\"");
  }
  return j.at(key);
}

Scalar scalar_from_json(const Json& v, const char* what) {
  if (v.is_string()) return Scalar::parse(v.get<std::string>());
  if (v.is_number_integer()) return Scalar(v.get<long>());
  throw ParseError(std::string(what) + " must be an exact scalar string");
}

Json edge_json(const BandEdge& e) {
  Json j;
  j["lo"] = e.lo.str();
  j["hi"] = e.hi.str();
  j["exact"] = e.exact;
  j["approx"] = e.approx();
  return j;
}

}  // namespace

Json scalar_json(const Scalar& x) { return Json(x.str()); }

Json interval_json(const HalfOpen& iv) {
  Json j;
  j["lo"] = iv.lo.str();
  j["hi"] = iv.hi.str();
  return j;
}

Json iet_to_json(const Iet& E) {
  Json j;
  j["n"] = E.n();
  j["perm"] = E.perm().images();
  Json lams = Json::array();
  unsigned long d = E.origin().radicand();
  for (const Scalar& li : E.lengths().parts()) {
    lams.push_back(li.str());
    if (li.radicand() != 0) d = li.radicand();
  }
  j["lambda"] = std::move(lams);
  j["origin"] = E.origin().str();
  if (d == 0) {
    j["field"] = "rational";
  } else {
    j["field"] = Json{{"sqrt", d}};
  }
  return j;
}

Iet iet_from_json(const Json& j) {
  if (!j.is_object()) {
    throw ParseError("exchange description must be a JSON object");
  }
  const Json& jn = require(j, "n");
  if (!jn.is_number_integer() || jn.get<long>() < 1) {
    throw ParseError("\"n\" must be a positive integer");
  }
  int n = jn.get<int>();
  const Json& jp = require(j, "perm");
  if (!jp.is_array() || static_cast<int>(jp.size()) != n) {
    throw ParseError("\"perm\" must be an array of n integers");
  }
  std::vector<int> images;
  images.reserve(n);
  for (const Json& v : jp) {
    if (!v.is_number_integer()) {
      throw ParseError("\"perm\" entries must be integers");
    }
    images.push_back(v.get<int>());
  }
  const Json& jl = require(j, "lambda");
  if (!jl.is_array() || static_cast<int>(jl.size()) != n) {
    throw ParseError("\"lambda\" must be an array of n scalars");
  }
  std::vector<Scalar> lams;
  lams.reserve(n);
  for (const Json& v : jl) {
    lams.push_back(scalar_from_json(v, "\"lambda\" entry"));
  }
  Scalar origin(0);
  if (j.contains("origin")) {
    origin = scalar_from_json(j.at("origin"), "\"origin\"");
  }
  if (j.contains("field")) {
    const Json& f = j.at("field");
    auto all_in_field = [&](unsigned long want) {
      auto ok = [&](const Scalar& s) {
        return s.radicand() == 0 || s.radicand() == want;
      };
      for (const Scalar& s : lams) {
        if (!ok(s)) return false;
      }
      return ok(origin);
    };
    if (f.is_string() && f.get<std::string>() == "rational") {
      if (!all_in_field(0)) {
        throw ParseError("\"field\" says rational but a scalar has a radical part");
      }
    } else if (f.is_object() && f.contains("sqrt") &&
               f.at("sqrt").is_number_integer()) {
      long d = f.at("sqrt").get<long>();
      if (d < 2 || !is_valid_radicand(static_cast<unsigned long>(d))) {
        throw ParseError("\"field\" radicand must be square-free and >= 2");
      }
      if (!all_in_field(static_cast<unsigned long>(d))) {
        throw ParseError("a scalar lies outside the declared field");
      }
    } else {
      throw ParseError("\"field\" must be \"rational\" or {\"sqrt\": d}");
    }
  }
  return Iet(Permutation(std::move(images)), ExchangeLengths(std::move(lams)),
             std::move(origin));
}

Json itinerary_to_json(const Itinerary& itin) {
  Json j;
  j["base"] = itin.base.str();
  j["lo"] = itin.lo();
  j["hi"] = itin.hi();
  j["symbols"] = itin.symbols;
  return j;
}

Json induced_to_json(const InducedSystem& sys) {
  Json j;
  j["window"] = interval_json(sys.window());
  j["piece_count"] = sys.piece_count();
  Json pieces = Json::array();
  for (const InducedPiece& p : sys.pieces()) {
    Json pj;
    pj["source"] = interval_json(p.source);
    pj["image"] = interval_json(p.image());
    pj["return_steps"] = p.return_steps;
    pj["return_word"] = p.return_word;
    pj["displacement"] = p.displacement.str();
    pieces.push_back(std::move(pj));
  }
  j["pieces"] = std::move(pieces);
  j["induced"] = iet_to_json(sys.induced_iet());
  j["orbit_tile_measure"] = sys.orbit_tile_measure().str();
  return j;
}

Json rauzy_step_to_json(const RauzyStep& step) {
  Json j;
  j["case"] = rauzy_case_name(step.step_type);
  j["nu"] = step.nu.str();
  j["scale"] = step.scale.str();
  Json before, after;
  before["perm"] = step.before_perm.images();
  after["perm"] = step.after_perm.images();
  Json bl = Json::array(), al = Json::array();
  for (const Scalar& s : step.before_lengths.parts()) bl.push_back(s.str());
  for (const Scalar& s : step.after_lengths.parts()) al.push_back(s.str());
  before["lambda"] = std::move(bl);
  after["lambda"] = std::move(al);
  j["before"] = std::move(before);
  j["after"] = std::move(after);
  return j;
}

Json rauzy_class_to_json(const RauzyClass& cls) {
  Json j;
  Json members = Json::array();
  for (const Permutation& p : cls.members) members.push_back(p.images());
  j["members"] = std::move(members);
  j["size"] = cls.members.size();
  Json edges = Json::array();
  for (const RauzyClass::Edge& e : cls.edges) {
    Json ej;
    ej["from"] = e.from.images();
    ej["case"] = rauzy_case_name(e.type);
    ej["to"] = e.to.images();
    edges.push_back(std::move(ej));
  }
  j["edges"] = std::move(edges);
  return j;
}

Json tower_to_json(const RenormalizationTower& tower) {
  Json j;
  j["base"] = iet_to_json(tower.base);
  switch (tower.status) {
    case TowerStatus::complete: j["status"] = "complete"; break;
    case TowerStatus::step_undefined: j["status"] = "step_undefined"; break;
    case TowerStatus::cap_exceeded: j["status"] = "cap_exceeded"; break;
  }
  j["status_detail"] = tower.status_detail;
  Json levels = Json::array();
  for (int m = 1; m <= tower.level_count(); ++m) {
    const TowerLevel& lv = tower.level(m);
    Json lj;
    lj["m"] = m;
    lj["N"] = lv.N;
    lj["window"] = interval_json(lv.J);
    lj["scale"] = lv.scale.str();
    lj["proximity_bound"] = lv.proximity_bound.str();
    lj["map"] = iet_to_json(lv.level_map);
    levels.push_back(std::move(lj));
  }
  j["levels"] = std::move(levels);
  return j;
}

Json candidates_to_json(const CandidateReport& report) {
  Json j;
  j["level"] = report.level;
  j["epsilon"] = report.epsilon.str();
  j["bound"] = report.bound.str();
  j["all_fractions_meet_bound"] = report.all_fractions_meet_bound;
  j["covered_measure"] = report.covered_measure.str();
  j["covered_measure_approx"] = report.covered_measure.to_double();
  Json recs = Json::array();
  for (const CandidateRecord& r : report.records) {
    Json rj;
    rj["k"] = r.k;
    rj["interval"] = interval_json(r.interval);
    rj["window"] = interval_json(r.window);
    if (r.error) rj["error"] = *r.error;
    rj["L"] = interval_json(r.L);
    rj["M"] = interval_json(r.M);
    rj["fraction"] = r.fraction.str();
    rj["fraction_approx"] = r.fraction.to_double();
    rj["length"] = r.length;
    rj["word"] = r.word;
    rj["bbb_checked"] = r.bbb_checked;
    rj["bbb_ok"] = r.bbb_ok;
    recs.push_back(std::move(rj));
  }
  j["records"] = std::move(recs);
  return j;
}

Json condition_b_to_json(const ConditionBReport& report) {
  Json j;
  j["depth"] = report.depth;
  j["threshold"] = report.threshold.str();
  j["passes"] = report.passes;
  j["aperiodic_evidence"] = report.aperiodic_evidence;
  j["unique_ergodicity_caveat"] = report.unique_ergodicity_caveat;
  j["keane_horizon"] = report.keane_horizon;
  j["limsup_estimate"] = report.limsup_estimate.str();
  j["limsup_estimate_approx"] = report.limsup_estimate.to_double();
  j["counts"] = report.counts;
  Json eta = Json::array(), score = Json::array(), tail = Json::array();
  for (const Scalar& s : report.eta) eta.push_back(s.str());
  for (const Scalar& s : report.score) score.push_back(s.str());
  for (const Scalar& s : report.tail_max) tail.push_back(s.str());
  j["eta"] = std::move(eta);
  j["score"] = std::move(score);
  j["tail_max"] = std::move(tail);
  return j;
}

Json certificate_to_json(const GordonCertificate& cert) {
  Json j;
  j["base"] = cert.base.str();
  j["max_k"] = cert.max_k;
  j["lengths"] = cert.lengths;
  return j;
}

Json spectrum_to_json(const SpectrumEstimate& est) {
  Json j;
  j["word"] = est.word;
  j["mode"] = est.mode;
  Json bands = Json::array();
  for (const SpectralBand& b : est.bands) {
    Json bj;
    bj["left"] = edge_json(b.left);
    bj["right"] = edge_json(b.right);
    bj["touches_previous"] = b.touches_previous;
    bands.push_back(std::move(bj));
  }
  j["bands"] = std::move(bands);
  j["band_count"] = est.bands.size();
  j["merged_count"] = est.merged_count();
  Json merged = Json::array();
  for (const auto& [lo, hi] : est.merged()) {
    merged.push_back(Json::array({lo, hi}));
  }
  j["merged"] = std::move(merged);
  j["measure_lower"] = est.measure_lower.str();
  j["measure_upper"] = est.measure_upper.str();
  j["total_measure"] = est.total_measure;
  return j;
}

Json nondecay_to_json(const NondecayReport& report) {
  Json j;
  j["energies_checked"] = report.energies_checked;
  j["lengths_checked"] = report.lengths_checked;
  j["all_ok"] = report.all_ok;
  j["note"] = report.note;
  Json viols = Json::array();
  for (const NondecayViolation& v : report.violations) {
    Json vj;
    vj["energy"] = v.energy;
    vj["length"] = v.length;
    vj["initial"] = v.initial;
    vj["log_ratio"] = v.log_ratio;
    viols.push_back(std::move(vj));
  }
  j["violations"] = std::move(viols);
  return j;
}

Json lyapunov_to_json(const LyapunovEstimate& est) {
  Json j;
  j["average"] = est.average;
  j["last_quarter"] = est.last_quarter;
  return j;
}

std::string decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void condition_b_csv(const ConditionBReport& report, std::ostream& os) {
  os << "n,count,eta,eta_decimal,score,score_decimal,tail_max_decimal\n";
  for (int m = 1; m <= report.depth; ++m) {
    const Scalar& eta = report.eta.at(m - 1);
    const Scalar& score = report.score.at(m - 1);
    os << m << ',' << report.counts.at(m - 1) << ',' << eta.str() << ','
       << decimal(eta.to_double()) << ',' << score.str() << ','
       << decimal(score.to_double()) << ','
       << decimal(report.tail_max.at(m - 1).to_double()) << '\n';
  }
}

void cylinders_csv(const CylinderTree& tree, std::ostream& os) {
  os << "depth,word,lo,hi,length_decimal\n";
  for (int m = 1; m <= tree.depth(); ++m) {
    for (const CylinderTree::Node& node : tree.level_nodes(m)) {
      os << m << ',';
      for (std::size_t i = 0; i < node.word.size(); ++i) {
        if (i) os << ' ';
        os << node.word[i];
      }
      os << ',' << node.interval.lo.str() << ',' << node.interval.hi.str()
         << ',' << decimal(node.interval.length().to_double()) << '\n';
    }
  }
}

void spectrum_csv(const SpectrumEstimate& est, std::ostream& os) {
  os << "band,band_lo,band_hi,width,touches_previous\n";
  int idx = 0;
  for (const SpectralBand& b : est.bands) {
    ++idx;
    double lo = b.left.approx(), hi = b.right.approx();
    os << idx << ',' << decimal(lo) << ',' << decimal(hi) << ','
       << decimal(hi - lo) << ',' << (b.touches_previous ? 1 : 0) << '\n';
  }
}

void eigenvalues_csv(const std::vector<double>& energies, std::ostream& os) {
  os << "index,energy\n";
  char buf[64];
  for (std::size_t i = 0; i < energies.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.15g", energies[i]);
    os << i + 1 << ',' << buf << '\n';
  }
}

void itinerary_csv(const Itinerary& itin, std::ostream& os) {
  os << "j,symbol\n";
  for (long j = itin.lo(); j <= itin.hi(); ++j) {
    os << j << ',' << itin.symbol_at(j) << '\n';
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
  if (!out.flush()) throw ParseError("write failed for " + path);
}

}  // namespace ietlab
