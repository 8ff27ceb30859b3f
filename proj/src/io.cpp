#include "cascade/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "cascade/errors.hpp"

namespace cascade {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const ProbabilityTrace& trace) {
  std::string text = "t,p1,p2,p3,p4\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    text += format_double(trace.times[i]);
    for (const auto& series : trace.p) {
      text += ',';
      text += format_double(series[i]);
    }
    text += '\n';
  }
  out << text;
}

ProbabilityTrace read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "t,p1,p2,p3,p4") throw InvalidParameter("missing CSV header t,p1,p2,p3,p4");

  std::vector<std::array<double, 5>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::array<double, 5> row{};
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (std::size_t k = 0; k < 5; ++k) {
      const auto res = std::from_chars(p, end, row[k]);
      if (res.ec != std::errc{}) throw InvalidParameter("malformed CSV row: " + line);
      p = res.ptr;
      if (k < 4) {
        if (p == end || *p != ',') throw InvalidParameter("malformed CSV row: " + line);
        ++p;
      }
    }
    if (p != end) throw InvalidParameter("trailing data in CSV row: " + line);
    rows.push_back(row);
  }

  std::vector<double> times;
  times.reserve(rows.size());
  for (const auto& r : rows) times.push_back(r[0]);
  ProbabilityTrace trace(std::move(times));
  for (std::size_t i = 0; i < rows.size(); ++i) trace.set(i, {rows[i][1], rows[i][2], rows[i][3], rows[i][4]});
  return trace;
}

nlohmann::json trace_to_json(const ProbabilityTrace& trace, nlohmann::json meta) {
  nlohmann::json j;
  j["meta"] = std::move(meta);
  j["t"] = trace.times;
  j["p1"] = trace.p[0];
  j["p2"] = trace.p[1];
  j["p3"] = trace.p[2];
  j["p4"] = trace.p[3];
  return j;
}

nlohmann::json meta_to_json(const AveragedTraceMeta& meta) {
  return {{"case", std::string(to_string(meta.case_id))},
          {"nbar", meta.nbar},
          {"epsilon", meta.epsilon},
          {"n_max", meta.n_max},
          {"g", meta.g},
          {"weighting_mode", std::string(to_string(meta.mode))},
          {"renormalized", meta.renormalized},
          {"total_weight", meta.total_weight},
          {"skipped_weight", meta.skipped_weight},
          {"skipped_sectors", meta.skipped_sectors}};
}

}  // namespace cascade
