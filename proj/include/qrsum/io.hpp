#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "qrsum/bounds.hpp"
#include "qrsum/char_sums.hpp"
#include "qrsum/search.hpp"
#include "qrsum/sumset.hpp"
#include "qrsum/sweeps.hpp"

namespace qrsum::io {

using nlohmann::json;

json to_json(const CharSumRecord& rec);
json to_json(const CkEstimate& ck, std::size_t k, Prime p, bool exhaustive);
json to_json(const RepProfile& prof, const FpSet& a, const FpSet& b);
json to_json(const BoundsCertificate& cert);
json to_json(const SizeRange& range);
json to_json(const SearchReport& report);
json to_json(const Theorem2StepReport& rep);
json to_json(const Histogram& h);
json to_json(const SweepResult& sweep);
json to_json(const UnconditionalSweep& sweep);
json to_json(const ConditionalSweep& sweep);

/// Columns bin_left,bin_right,count,reference_density; the last is empty
/// when no reference density applies.
std::string histogram_csv(const Histogram& h);

/// Columns p,verdict,nodes,seconds. seconds is left empty unless
/// with_timing is set, so repeated runs produce identical bytes.
std::string range_csv(const std::vector<RangeRow>& rows, bool with_timing);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double x);

}  // namespace qrsum::io
