#pragma once

// Report records emitted by the verification suites, one JSON object per
// line.  Comparison records carry lhs/rhs/abs_error/tolerance; probe records
// (continuity and frame probes) additionally carry the sample time, the
// evaluation route and the frame size.  wall_time_ms is informational and
// excluded from determinism comparisons.

#include <complex>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "prodsys/serialization.hpp"
#include "prodsys/random.hpp"

namespace prodsys {

struct ReportRecord {
  std::string suite;
  std::string case_id;
  std::string digest;  // FNV-1a of the serialized case inputs
  Complex lhs{0.0, 0.0};
  Complex rhs{0.0, 0.0};
  double abs_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double wall_time_ms = 0.0;
  // probe extras
  std::optional<Rational> t;
  std::string route;       // "exact" or "frame" when meaningful
  long frame_size = -1;
};

inline std::string digest_of(const Json& inputs) {
  std::uint64_t h = fnv1a64(inputs.dump());
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

inline ReportRecord comparison_record(std::string suite, std::string case_id, const Json& inputs,
                                      Complex lhs, Complex rhs, double tolerance) {
  ReportRecord r;
  r.suite = std::move(suite);
  r.case_id = std::move(case_id);
  r.digest = digest_of(inputs);
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_error = std::abs(lhs - rhs);
  r.tolerance = tolerance;
  r.pass = r.abs_error <= tolerance;
  return r;
}

inline Json record_to_json(const ReportRecord& r) {
  Json j{{"suite", r.suite},
         {"case_id", r.case_id},
         {"digest", r.digest},
         {"lhs", complex_to_json(r.lhs)},
         {"rhs", complex_to_json(r.rhs)},
         {"abs_error", r.abs_error},
         {"tolerance", r.tolerance},
         {"pass", r.pass},
         {"wall_time_ms", r.wall_time_ms}};
  if (r.t) j["t"] = rational_to_json(*r.t);
  if (!r.route.empty()) {
    j["route"] = r.route;
    j["value_re"] = r.lhs.real();
    j["value_im"] = r.lhs.imag();
  }
  if (r.frame_size >= 0) j["frame_size"] = r.frame_size;
  return j;
}

class ReportWriter {
public:
  explicit ReportWriter(std::ostream& out) : out_(out) {}

  void write(const ReportRecord& r) {
    out_ << record_to_json(r).dump() << "\n";
    ++cases_;
    if (!r.pass) ++failures_;
  }

  void suite_summary(const std::string& suite, long cases, long failures) {
    Json j{{"suite", suite},
           {"summary", true},
           {"cases", cases},
           {"failures", failures},
           {"pass", failures == 0}};
    out_ << j.dump() << "\n";
  }

  long cases() const { return cases_; }
  long failures() const { return failures_; }

private:
  std::ostream& out_;
  long cases_ = 0;
  long failures_ = 0;
};

}  // namespace prodsys
