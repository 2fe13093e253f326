#pragma once

#include <string>

#include "json.hpp"

#include "spoly/approx.hpp"
#include "spoly/cone.hpp"
#include "spoly/lattice_gap.hpp"
#include "spoly/siciak.hpp"

namespace spoly {

using Json = nlohmann::json;

// Canonical text form: variant-tagged objects with rationals as "p/q".
Json to_json(const ExponentSet& S);
ExponentSet exponent_set_from_json(const Json& j);

Json to_json(const Cone& c);
Cone cone_from_json(const Json& j);

// {"m": m, "terms": [{"alpha": [...], "re": .., "im": ..}]}
Json to_json(const SPolynomial& p);
SPolynomial spolynomial_from_json(const Json& j, ExponentSet source);

Json to_json(const GapReport& r);
Json to_json(const ApproxResult& r);

// CSV emitters; all float formatting is fixed at 17 significant digits so
// identical runs produce byte-identical files.
std::string format_double(double v);
std::string gap_report_csv(const GapReport& r);                     // m,d_m,root,delta,bound
std::string approx_results_csv(const std::vector<ApproxResult>& rs); // m,d_sample,d_validation,root,solver,iterations
std::string siciak_field_csv(const SiciakField& f);                  // re/im coordinates, v_hat, inside

} // namespace spoly
