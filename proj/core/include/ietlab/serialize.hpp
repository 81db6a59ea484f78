#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "ietlab/induce.hpp"
#include "ietlab/rauzy.hpp"
#include "ietlab/spectral.hpp"
#include "ietlab/symbolic.hpp"

namespace ietlab {

// nlohmann::json keeps object keys sorted, so dumps of equal payloads are
// byte-identical; exact values travel as canonical strings and doubles only
// ever appear in *_approx shadows meant for plotting.
using Json = nlohmann::json;

Json scalar_json(const Scalar& x);
Json interval_json(const HalfOpen& iv);

// Exchange description: {"n", "perm", "lambda", "origin", "field"} with
// "field" either "rational" or {"sqrt": d}. Parsing validates the shape,
// the declared field against the actual scalars, and positivity (via the
// usual constructors). Throws ParseError on malformed input.
Json iet_to_json(const Iet& E);
Iet iet_from_json(const Json& j);

Json itinerary_to_json(const Itinerary& itin);
Json induced_to_json(const InducedSystem& sys);
Json rauzy_step_to_json(const RauzyStep& step);
Json rauzy_class_to_json(const RauzyClass& cls);
Json tower_to_json(const RenormalizationTower& tower);
Json candidates_to_json(const CandidateReport& report);
Json condition_b_to_json(const ConditionBReport& report);
Json certificate_to_json(const GordonCertificate& cert);
Json spectrum_to_json(const SpectrumEstimate& est);
Json nondecay_to_json(const NondecayReport& report);
Json lyapunov_to_json(const LyapunovEstimate& est);

// CSV companions for the tables people actually plot. Header row first;
// exact-value columns hold canonical scalar strings (never containing
// commas), decimal columns hold fixed locale-independent approximations.
void condition_b_csv(const ConditionBReport& report, std::ostream& os);
void cylinders_csv(const CylinderTree& tree, std::ostream& os);
void spectrum_csv(const SpectrumEstimate& est, std::ostream& os);
void eigenvalues_csv(const std::vector<double>& energies, std::ostream& os);
void itinerary_csv(const Itinerary& itin, std::ostream& os);

// File helpers shared by the tool and the tests. read_json_file throws
// ParseError when the file is missing or not valid JSON.
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// "%.12g" with the C locale; the one decimal format used in CSV columns.
std::string decimal(double x);

}  // namespace ietlab
