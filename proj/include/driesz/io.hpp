#ifndef DRIESZ_IO_HPP
#define DRIESZ_IO_HPP

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "core.hpp"
#include "norms.hpp"
#include "verify/experiments.hpp"
#include "weights.hpp"
#include "whitney.hpp"

namespace driesz::io {

using Json = nlohmann::ordered_json;

/// File could not be opened, read, or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal string that parses back to the same double; non-finite values become
/// "inf", "-inf" or "nan".
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace detail {

inline void write_string(std::ostream& os, const std::string& s) { os << Json(s).dump(); }

inline void write_json(std::ostream& os, const Json& j, int indent, int depth) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    os << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',';
        first = false;
        newline(depth + 1);
        write_string(os, it.key());
        os << (indent < 0 ? ":" : ": ");
        write_json(os, it.value(), indent, depth + 1);
      }
      newline(depth);
      os << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) os << ',';
        first = false;
        newline(depth + 1);
        write_json(os, e, indent, depth + 1);
      }
      newline(depth);
      os << ']';
      return;
    }
    case Json::value_t::number_float: {
      double v = j.get<double>();
      // JSON has no literal for non-finite numbers
      if (std::isfinite(v)) {
        os << format_number(v);
      } else {
        write_string(os, format_number(v));
      }
      return;
    }
    default: os << j.dump(); return;
  }
}

}  // namespace detail

/// Serializes with shortest round-trip numbers; indent < 0 gives a single line.
inline std::string dump(const Json& j, int indent = 2) {
  std::ostringstream os;
  detail::write_json(os, j, indent, 0);
  if (indent >= 0) os << '\n';
  return os.str();
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return ss.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("error writing '" + path + "'");
}

inline Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw DomainError(what + " is not valid JSON: " + e.what());
  }
}

namespace detail {

inline double real_field(const Json& j, const char* key, const std::string& what) {
  if (!j.contains(key) || !j.at(key).is_number()) throw DomainError(what + " needs a numeric \"" + key + "\"");
  return j.at(key).get<double>();
}

inline Index integer_field(const Json& j, const char* key, const std::string& what) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw DomainError(what + " needs an integer \"" + key + "\"");
  }
  return j.at(key).get<Index>();
}

inline std::vector<double> real_array(const Json& j, const char* key, const std::string& what) {
  if (!j.contains(key) || !j.at(key).is_array()) throw DomainError(what + " needs an array \"" + key + "\"");
  std::vector<double> out;
  for (const auto& e : j.at(key)) {
    if (!e.is_number()) throw DomainError(what + " \"" + key + "\" must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

inline std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

template <class T>
bool parse_full(const std::string& s, T& out) {
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

}  // namespace detail

inline FiniteSequence sequence_from_json(const Json& j) {
  const std::string what = "sequence";
  if (!j.is_object()) throw DomainError("sequence must be a JSON object");
  return FiniteSequence(detail::integer_field(j, "offset", what), detail::real_array(j, "values", what));
}

inline Json sequence_to_json(const FiniteSequence& x) {
  Json j = Json::object();
  j["offset"] = x.offset();
  Json vals = Json::array();
  for (double v : x.values()) vals.push_back(v);
  j["values"] = std::move(vals);
  return j;
}

/// Two columns index,value; an optional non-numeric header line is skipped.
inline FiniteSequence sequence_from_csv(const std::string& text) {
  std::vector<std::pair<Index, double>> pairs;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = detail::trim(line);
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) throw DomainError("csv line " + std::to_string(lineno) + " needs index,value");
    std::string a = detail::trim(line.substr(0, comma)), b = detail::trim(line.substr(comma + 1));
    Index k = 0;
    double v = 0;
    if (!detail::parse_full(a, k) || !detail::parse_full(b, v)) {
      if (pairs.empty() && lineno == 1) continue;
      throw DomainError("csv line " + std::to_string(lineno) + " is not index,value");
    }
    pairs.emplace_back(k, v);
  }
  return FiniteSequence::from_pairs(std::move(pairs));
}

inline std::string sequence_to_csv(const FiniteSequence& x) {
  std::string out = "index,value\n";
  for (Index i = 0; i < x.size(); ++i) {
    out += std::to_string(x.offset() + i) + "," + format_number(x.values()[static_cast<std::size_t>(i)]) + "\n";
  }
  return out;
}

inline bool is_csv_path(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
}

inline FiniteSequence read_sequence(const std::string& path) {
  std::string text = read_text(path);
  if (is_csv_path(path)) return sequence_from_csv(text);
  return sequence_from_json(parse_json(text, path));
}

inline std::string format_sequence(const FiniteSequence& x, bool csv) {
  return csv ? sequence_to_csv(x) : dump(sequence_to_json(x));
}

inline Weight weight_from_json(const Json& j) {
  const std::string what = "weight";
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw DomainError("weight needs a string \"kind\"");
  }
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "power") return Weight::power(detail::real_field(j, "beta", what));
  if (kind == "constant") return Weight::constant(detail::real_field(j, "c", what));
  if (kind == "table") {
    return Weight::table(detail::integer_field(j, "offset", what), detail::real_array(j, "values", what),
                         detail::real_field(j, "outside", what));
  }
  throw DomainError("unknown weight kind '" + kind + "'");
}

inline Json weight_to_json(const Weight& w) {
  Json j = Json::object();
  switch (w.kind()) {
    case Weight::Kind::Power:
      j["kind"] = "power";
      j["beta"] = w.beta();
      if (w.coefficient() != 1) j["coefficient"] = w.coefficient();
      break;
    case Weight::Kind::Constant:
      j["kind"] = "constant";
      j["c"] = w.coefficient();
      break;
    case Weight::Kind::Table: {
      j["kind"] = "table";
      j["offset"] = w.offset();
      Json vals = Json::array();
      for (double v : w.values()) vals.push_back(v);
      j["values"] = std::move(vals);
      j["outside"] = w.coefficient();
      break;
    }
  }
  return j;
}

inline Weight read_weight(const std::string& path) { return weight_from_json(parse_json(read_text(path), path)); }

inline IntegerSet integer_set_from_json(const Json& j) {
  if (!j.is_object()) throw DomainError("integer set must be a JSON object");
  std::vector<IntervalRun> runs;
  if (j.contains("runs")) {
    if (!j.at("runs").is_array()) throw DomainError("\"runs\" must be an array of [a,b] pairs");
    for (const auto& r : j.at("runs")) {
      if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() || !r[1].is_number_integer()) {
        throw DomainError("each run must be an [a,b] pair of integers");
      }
      runs.emplace_back(r[0].get<Index>(), r[1].get<Index>());
    }
  }
  auto ray = [&](const char* key) -> std::optional<Index> {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    if (!j.at(key).is_number_integer()) throw DomainError(std::string("\"") + key + "\" must be an integer or null");
    return j.at(key).get<Index>();
  };
  return IntegerSet(std::move(runs), ray("leftRay"), ray("rightRay"));
}

inline Json interval_to_json(const SymmetricInterval& s) {
  Json j = Json::object();
  j["m"] = s.center;
  j["N"] = s.radius;
  return j;
}

inline Json norm_to_json(const NormValue& v) {
  Json j = Json::object();
  j["value"] = v.value;
  j["witness"] = v.witness ? interval_to_json(*v.witness) : Json(nullptr);
  return j;
}

inline std::string growth_profile_csv(const GrowthProfile& g) {
  std::string out = "cap,constant,witnessStart,witnessEnd\n";
  for (const auto& e : g.entries) {
    out += std::to_string(e.cap) + "," + format_number(e.value) + "," + std::to_string(e.witness.start) + "," +
           std::to_string(e.witness.end) + "\n";
  }
  return out;
}

inline Json growth_profile_to_json(const GrowthProfile& g) {
  Json j = Json::object();
  Json rows = Json::array();
  for (const auto& e : g.entries) {
    Json r = Json::object();
    r["cap"] = e.cap;
    r["constant"] = e.value;
    r["witnessStart"] = e.witness.start;
    r["witnessEnd"] = e.witness.end;
    rows.push_back(std::move(r));
  }
  j["entries"] = std::move(rows);
  j["growth"] = g.growth;
  j["verdict"] = to_string(g.verdict);
  return j;
}

inline Json report_to_json(const verify::EmpiricalConstantReport& rep) {
  Json j = Json::object();
  j["tag"] = rep.tag;
  Json cases = Json::array();
  for (const auto& c : rep.cases) {
    Json r = Json::object();
    r["caseId"] = c.id;
    r["size"] = c.size;
    r["lhs"] = c.lhs;
    r["rhs"] = c.rhs;
    r["ratio"] = c.ratio;
    r["lhsBounds"] = Json::array({c.lhs_bounds.lo, c.lhs_bounds.hi});
    r["rhsBounds"] = Json::array({c.rhs_bounds.lo, c.rhs_bounds.hi});
    cases.push_back(std::move(r));
  }
  j["perCase"] = std::move(cases);
  Json skipped = Json::array();
  for (const auto& s : rep.skipped) {
    Json r = Json::object();
    r["caseId"] = s.id;
    r["reason"] = s.reason;
    skipped.push_back(std::move(r));
  }
  j["skipped"] = std::move(skipped);
  j["supRatio"] = rep.sup_ratio;
  Json trend = Json::array();
  for (const auto& t : rep.trend) {
    Json r = Json::object();
    r["cap"] = t.cap;
    r["runningSup"] = t.running_sup;
    trend.push_back(std::move(r));
  }
  j["growthTrend"] = std::move(trend);
  j["growth"] = rep.growth;
  j["verdict"] = to_string(rep.verdict);
  return j;
}

// RFC 4180 quoting; case ids carry commas in their parameter lists
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

inline std::string report_cases_csv(const verify::EmpiricalConstantReport& rep) {
  std::string out = "caseId,size,lhs,rhs,ratio,lhsLo,lhsHi,rhsLo,rhsHi\n";
  for (const auto& c : rep.cases) {
    out += csv_field(c.id) + "," + std::to_string(c.size) + "," + format_number(c.lhs) + "," + format_number(c.rhs) + "," +
           format_number(c.ratio) + "," + format_number(c.lhs_bounds.lo) + "," + format_number(c.lhs_bounds.hi) + "," +
           format_number(c.rhs_bounds.lo) + "," + format_number(c.rhs_bounds.hi) + "\n";
  }
  return out;
}

inline Json membership_to_json(const verify::MembershipScanReport& rep) {
  static const char* kNames[3] = {"apq", "apOfPowerQ", "apOfPowerMinusPConjugate"};
  Json j = Json::object();
  j["tag"] = "m2.13";
  j["alpha"] = rep.alpha;
  j["p"] = rep.p;
  j["q"] = rep.q;
  Json rows = Json::array();
  for (const auto& row : rep.rows) {
    Json r = Json::object();
    r["beta"] = row.beta;
    Json forms = Json::object();
    for (std::size_t k = 0; k < 3; ++k) {
      Json f = growth_profile_to_json(row.profiles[k]);
      f["normalizedVerdict"] = to_string(row.normalized[k]);
      forms[kNames[k]] = std::move(f);
    }
    r["formulations"] = std::move(forms);
    r["agree"] = row.agree;
    r["expected"] = to_string(row.expected);
    r["inGuardBand"] = row.in_guard_band;
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j;
}

inline std::string membership_csv(const verify::MembershipScanReport& rep) {
  std::string out = "beta,apq,apOfPowerQ,apOfPowerMinusPConjugate,apqRaw,apOfPowerQRaw,apOfPowerMinusPConjugateRaw,agree,expected,inGuardBand\n";
  for (const auto& row : rep.rows) {
    out += format_number(row.beta);
    for (auto v : row.normalized) out += std::string(",") + to_string(v);
    for (auto v : row.raw) out += std::string(",") + to_string(v);
    out += std::string(",") + (row.agree ? "true" : "false") + "," + to_string(row.expected) + "," +
           (row.in_guard_band ? "true" : "false") + "\n";
  }
  return out;
}

}  // namespace driesz::io

#endif
