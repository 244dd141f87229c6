#pragma once
// Deterministic text output helpers.  Every number is printed with %.17g so
// a double survives a write/parse round trip bit-exactly, object keys keep
// insertion order, and no locale-dependent formatting is involved — the
// same inputs always produce byte-identical files.

#include <cstdio>
#include <cstdlib>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace stepwave {

inline constexpr const char* kToolName = "stepwave";
inline constexpr const char* kToolVersion = "0.1.0";

// Shortest-round-trip-adjacent formatting: 17 significant digits always
// reproduce the exact double on strtod.
inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf);
}

inline std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
    case '"':
      out += "\\\"";
      break;
    case '\\':
      out += "\\\\";
      break;
    case '\n':
      out += "\\n";
      break;
    case '\t':
      out += "\\t";
      break;
    case '\r':
      out += "\\r";
      break;
    default:
      out += c;
    }
  }
  return out;
}

// Minimal ordered JSON value tree: enough for the tool's reports (numbers,
// strings, booleans, arrays, objects with insertion-ordered keys).
class Json {
public:
  enum class Kind { null, number, integer, boolean, string, array, object };

  Json() : kind_(Kind::null) {}
  static Json num(double v) {
    Json j;
    j.kind_ = Kind::number;
    j.num_ = v;
    return j;
  }
  static Json integer(long long v) {
    Json j;
    j.kind_ = Kind::integer;
    j.int_ = v;
    return j;
  }
  static Json boolean(bool v) {
    Json j;
    j.kind_ = Kind::boolean;
    j.bool_ = v;
    return j;
  }
  static Json str(const std::string& v) {
    Json j;
    j.kind_ = Kind::string;
    j.str_ = v;
    return j;
  }
  static Json array() {
    Json j;
    j.kind_ = Kind::array;
    return j;
  }
  static Json object() {
    Json j;
    j.kind_ = Kind::object;
    return j;
  }

  Json& push(Json v) {
    require(Kind::array);
    arr_.push_back(std::move(v));
    return *this;
  }
  Json& set(const std::string& key, Json v) {
    require(Kind::object);
    members_.emplace_back(key, std::move(v));
    return *this;
  }
  Json& set(const std::string& key, double v) { return set(key, num(v)); }
  Json& set(const std::string& key, int v) { return set(key, integer(v)); }
  Json& set(const std::string& key, long long v) { return set(key, integer(v)); }
  Json& set(const std::string& key, bool v) { return set(key, boolean(v)); }
  Json& set(const std::string& key, const char* v) {
    return set(key, str(std::string(v)));
  }
  Json& set(const std::string& key, const std::string& v) {
    return set(key, str(v));
  }

  void dump(std::ostream& os, int indent = 0) const {
    const std::string pad(indent, ' ');
    const std::string pad2(indent + 2, ' ');
    switch (kind_) {
    case Kind::null:
      os << "null";
      break;
    case Kind::number:
      os << fmt17(num_);
      break;
    case Kind::integer:
      os << int_;
      break;
    case Kind::boolean:
      os << (bool_ ? "true" : "false");
      break;
    case Kind::string:
      os << '"' << json_escape(str_) << '"';
      break;
    case Kind::array: {
      if (arr_.empty()) {
        os << "[]";
        break;
      }
      os << "[\n";
      for (size_t i = 0; i < arr_.size(); ++i) {
        os << pad2;
        arr_[i].dump(os, indent + 2);
        os << (i + 1 < arr_.size() ? ",\n" : "\n");
      }
      os << pad << "]";
      break;
    }
    case Kind::object: {
      if (members_.empty()) {
        os << "{}";
        break;
      }
      os << "{\n";
      for (size_t i = 0; i < members_.size(); ++i) {
        os << pad2 << '"' << json_escape(members_[i].first) << "\": ";
        members_[i].second.dump(os, indent + 2);
        os << (i + 1 < members_.size() ? ",\n" : "\n");
      }
      os << pad << "}";
      break;
    }
    }
  }

  std::string dump() const {
    std::ostringstream os;
    dump(os, 0);
    os << "\n";
    return os.str();
  }

private:
  void require(Kind k) {
    if (kind_ != k)
      throw std::logic_error("json value used with wrong kind");
  }
  Kind kind_;
  double num_ = 0.0;
  long long int_ = 0;
  bool bool_ = false;
  std::string str_;
  std::vector<Json> arr_;
  std::vector<std::pair<std::string, Json>> members_;
};

// CSV with '#'-prefixed metadata header lines, then one column-name row,
// then data rows.  All doubles via fmt17.
class CsvWriter {
public:
  explicit CsvWriter(std::ostream& os) : os_(os) {
    meta("tool", std::string(kToolName) + " " + kToolVersion);
  }
  void meta(const std::string& key, const std::string& value) {
    os_ << "# " << key << ": " << value << "\n";
  }
  void meta(const std::string& key, double value) { meta(key, fmt17(value)); }
  void columns(const std::vector<std::string>& names) {
    for (size_t i = 0; i < names.size(); ++i)
      os_ << names[i] << (i + 1 < names.size() ? "," : "\n");
    n_cols_ = names.size();
  }
  void row(const std::vector<double>& values) {
    if (n_cols_ != 0 && values.size() != n_cols_)
      throw std::logic_error("csv row width mismatch");
    for (size_t i = 0; i < values.size(); ++i)
      os_ << fmt17(values[i]) << (i + 1 < values.size() ? "," : "\n");
  }

private:
  std::ostream& os_;
  size_t n_cols_ = 0;
};

// Evaluation grid given as "start:end:count" (count points inclusive of
// both ends; count == 1 takes start).
struct Grid {
  double start = 0.0;
  double end = 0.0;
  long count = 0;

  double point(long i) const {
    if (count == 1)
      return start;
    return start + (end - start) * double(i) / double(count - 1);
  }
  std::vector<double> materialize() const {
    std::vector<double> v;
    v.reserve(size_t(count));
    for (long i = 0; i < count; ++i)
      v.push_back(point(i));
    return v;
  }
};

inline Grid parse_grid(const std::string& text) {
  const auto c1 = text.find(':');
  const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw std::invalid_argument("grid must be start:end:count");
  Grid g;
  try {
    size_t used = 0;
    g.start = std::stod(text.substr(0, c1), &used);
    g.end = std::stod(text.substr(c1 + 1, c2 - c1 - 1), &used);
    g.count = std::stol(text.substr(c2 + 1), &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("grid must be start:end:count with numbers");
  }
  if (g.count < 1 || g.count > 1000000)
    throw std::invalid_argument("grid count must be in [1, 1000000]");
  if (g.count > 1 && !(g.end > g.start))
    throw std::invalid_argument("grid needs end > start when count > 1");
  return g;
}

} // namespace stepwave
