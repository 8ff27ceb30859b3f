#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "cascade/coherent.hpp"
#include "cascade/trace.hpp"

namespace cascade {

/// Decimal with 17 significant digits and '.' as the
/// decimal point regardless of locale ("0" and "1" for exact zero and one).
std::string format_double(double x);

/// Header `t,p1,p2,p3,p4`, one row per sample, '\n' line ends.
void write_csv(std::ostream& out, const ProbabilityTrace& trace);

/// Inverse of write_csv. Throws InvalidParameter on malformed input.
ProbabilityTrace read_csv(std::istream& in);

/// {"meta": {...}, "t": [...], "p1": [...], ..., "p4": [...]}.
nlohmann::json trace_to_json(const ProbabilityTrace& trace, nlohmann::json meta);

nlohmann::json meta_to_json(const AveragedTraceMeta& meta);

}  // namespace cascade
