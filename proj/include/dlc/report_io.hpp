#ifndef DLC_REPORT_IO_HPP
#define DLC_REPORT_IO_HPP

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "dlc/compress.hpp"
#include "dlc/distributions.hpp"
#include "dlc/encoding.hpp"
#include "dlc/inequalities.hpp"
#include "dlc/io.hpp"

// JSON and CSV writers for analysis outputs. Column layouts are documented
// in docs/FORMATS.md; numbers use %.17g and NaN is written as an empty CSV
// cell or JSON null.

namespace dlc {

inline std::string format_number(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline nlohmann::json json_number(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline constexpr const char* kIndexCsvHeader =
    "check,instance,index,mode,p,q,stab,lower,middle,upper,slack_lo,slack_hi,slack_cor,ci_half_width,pass,note";

// ---- IndexDistribution --------------------------------------------------

inline nlohmann::json to_json(const IndexDistribution& d) {
  nlohmann::json j;
  j["kind"] = to_string(d.kind);
  j["mode"] = d.exact ? "exact" : "mc";
  j["values"] = d.values;
  if (!d.rationals.empty()) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& q : d.rationals) r.push_back(to_string(q));
    j["exact_values"] = std::move(r);
  }
  if (!d.exact) {
    j["samples"] = d.samples;
    j["ci_half_width"] = d.half_width;
  }
  return j;
}

inline void write_csv(std::ostream& out, const IndexDistribution& d, std::size_t instance = 0, bool header = true) {
  if (header) out << kIndexCsvHeader << '\n';
  for (std::size_t i = 0; i < d.size(); ++i) {
    const std::string v = format_number(d.values[i]);
    out << to_string(d.kind) << ',' << instance << ',' << i + 1 << ',' << (d.exact ? "exact" : "mc") << ','
        << (d.kind == DistributionKind::Hit ? v : "") << ',' << (d.kind == DistributionKind::Useful ? v : "") << ','
        << (d.kind == DistributionKind::Stability ? v : "") << ",,,,,,,"
        << (d.exact ? "" : format_number(d.half_width[i])) << ",true,\n";
  }
}

// ---- InequalityReport ---------------------------------------------------

inline nlohmann::json to_json(const InequalityRecord& r) {
  return {{"check", r.check},          {"instance", r.instance},           {"index", r.index},
          {"p", json_number(r.p)},     {"q", json_number(r.q)},            {"stab", json_number(r.stab)},
          {"lower", json_number(r.lower)}, {"middle", json_number(r.middle)}, {"upper", json_number(r.upper)},
          {"slack_lo", json_number(r.slack_lo)}, {"slack_hi", json_number(r.slack_hi)},
          {"slack_cor", json_number(r.slack_cor)}, {"pass", r.pass},     {"note", r.note}};
}

inline nlohmann::json to_json(const InequalityReport& report) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : report.records) records.push_back(to_json(r));
  return {{"tolerance", report.tolerance},
          {"pass", report.pass()},
          {"failures", report.failures()},
          {"notes", report.notes},
          {"records", std::move(records)}};
}

inline void write_csv(std::ostream& out, const InequalityReport& report, const char* mode = "exact",
                      bool header = true) {
  if (header) out << kIndexCsvHeader << '\n';
  for (const auto& r : report.records) {
    out << r.check << ',' << r.instance << ',' << r.index << ',' << mode << ',' << format_number(r.p) << ','
        << format_number(r.q) << ',' << format_number(r.stab) << ',' << format_number(r.lower) << ','
        << format_number(r.middle) << ',' << format_number(r.upper) << ',' << format_number(r.slack_lo) << ','
        << format_number(r.slack_hi) << ',' << format_number(r.slack_cor) << ",," << (r.pass ? "true" : "false")
        << ',' << csv_escape(r.note) << '\n';
  }
}

// ---- Encoding audits ----------------------------------------------------

inline constexpr const char* kAuditCsvHeader =
    "instance,n,k,w,U_size,V_size,checked,failures,collisions,expected_usenum,usenum_bound,pass";

inline nlohmann::json to_json(const AuditReport& a, const CountingRecord* counting = nullptr) {
  nlohmann::json j{{"n", a.n},
                   {"k", a.k},
                   {"w", a.w},
                   {"exhaustive", a.exhaustive},
                   {"U_size", a.u_size},
                   {"checked", a.checked},
                   {"failures", a.failures},
                   {"collisions", a.collisions},
                   {"counterexamples", a.counterexamples}};
  if (counting != nullptr) {
    j["V_size"] = counting->v_size.str();
    j["expected_usenum"] = to_string(counting->expected_usenum);
    j["usenum_bound"] = counting->usenum_bound ? nlohmann::json(to_string(*counting->usenum_bound)) : nlohmann::json(nullptr);
    j["pass"] = a.pass() && counting->pass();
  } else {
    j["pass"] = a.pass();
  }
  return j;
}

inline void write_csv_row(std::ostream& out, std::size_t instance, const AuditReport& a,
                          const CountingRecord& counting) {
  out << instance << ',' << a.n << ',' << a.k << ',' << a.w << ',' << counting.u_size.str() << ','
      << counting.v_size.str() << ',' << a.checked << ',' << a.failures << ',' << a.collisions << ','
      << to_string(counting.expected_usenum) << ','
      << (counting.usenum_bound ? to_string(*counting.usenum_bound) : std::string("inf")) << ','
      << (a.pass() && counting.pass() && counting.u_size == a.u_size ? "true" : "false") << '\n';
}

// ---- Compression --------------------------------------------------------

inline nlohmann::json to_json(const CompressionResult& r, const char* mode) {
  nlohmann::json j{{"kept", r.kept},
                   {"t", r.t},
                   {"dropped_mass", r.dropped_mass},
                   {"distance", r.distance.value},
                   {"mode", mode},
                   {"junta_size", r.junta_size},
                   {"bound_binding", r.bound_binding},
                   {"sublist", to_json(r.sublist)}};
  if (r.dropped_exact) j["dropped_mass_exact"] = to_string(*r.dropped_exact);
  if (r.distance.rational) j["distance_exact"] = to_string(*r.distance.rational);
  if (!r.distance.exact) {
    j["distance_ci_half_width"] = r.distance.half_width;
    j["samples"] = r.distance.samples;
  }
  return j;
}

}  // namespace dlc

#endif  // DLC_REPORT_IO_HPP
