#pragma once

#include <json.hpp>

#include "h3/core.hpp"
#include "h3/counterexample.hpp"
#include "h3/decomposer.hpp"
#include "h3/tour_trail.hpp"
#include "h3/walks.hpp"

namespace h3::cli {

using Json = nlohmann::ordered_json;

Json to_json(const Triple& t);
Json to_json(const std::vector<Triple>& ts);
Json to_json(const WalkSeq& w);
Json to_json(const std::vector<WalkSeq>& ws); // canonical cycle forms
Json to_json(const DivisibilityResult& d);
Json to_json(const Tripartition& p);
Json to_json(const NoTourCertificate& c);
Json to_json(const DecompositionReport& r);
Json to_json(const FractionalResult& r);
Json to_json(const SeaStep& s);

Tripartition partition_from_json(const Json& j);

} // namespace h3::cli
