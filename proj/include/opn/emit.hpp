#pragma once

// Record emission as JSON lines, CSV or an aligned text table.
//
// JSON: one object per line, fields in column order, numbers unquoted.
// CSV: a header row of field names, then one row per record.
// Table: human-readable column labels; an empty record set prints the header only.

#include <algorithm>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "opn/candidate.hpp"
#include "opn/experiments.hpp"
#include "opn/identity.hpp"
#include "opn/scan.hpp"

namespace opn::emit {

enum class Format { json, csv, table };

inline std::optional<Format> parse_format(std::string_view s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "table") return Format::table;
  return std::nullopt;
}

enum class Kind { number, boolean, string };

struct Column {
  Column(std::string key_, std::string label_, Kind kind_ = Kind::number, std::string suffix = {})
      : key(std::move(key_)), label(std::move(label_)), kind(kind_), table_suffix(std::move(suffix)) {}

  std::string key;
  std::string label;
  Kind kind = Kind::number;
  std::string table_suffix;  // e.g. "%" for percentages
};

struct RecordSet {
  std::vector<Column> columns;
  std::vector<std::vector<std::string>> rows;
};

namespace detail {

inline std::string json_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          static constexpr char kHex[] = "0123456789abcdef";
          out += "\\u00";
          out += kHex[(c >> 4) & 0xF];
          out += kHex[c & 0xF];
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline void write(const RecordSet& set, Format format, std::ostream& os) {
  const auto& cols = set.columns;
  switch (format) {
    case Format::json:
      for (const auto& row : set.rows) {
        os << '{';
        for (std::size_t j = 0; j < cols.size(); ++j) {
          if (j > 0) os << ',';
          os << detail::json_string(cols[j].key) << ':';
          os << (cols[j].kind == Kind::string ? detail::json_string(row[j]) : row[j]);
        }
        os << "}\n";
      }
      break;
    case Format::csv:
      for (std::size_t j = 0; j < cols.size(); ++j) os << (j > 0 ? "," : "") << cols[j].key;
      os << '\n';
      for (const auto& row : set.rows) {
        for (std::size_t j = 0; j < cols.size(); ++j) os << (j > 0 ? "," : "") << detail::csv_field(row[j]);
        os << '\n';
      }
      break;
    case Format::table: {
      std::vector<std::size_t> width(cols.size());
      for (std::size_t j = 0; j < cols.size(); ++j) {
        width[j] = cols[j].label.size();
        for (const auto& row : set.rows) width[j] = std::max(width[j], row[j].size() + cols[j].table_suffix.size());
      }
      auto line = [&](auto cell) {
        std::string text;
        for (std::size_t j = 0; j < cols.size(); ++j) {
          std::string c = cell(j);
          if (j + 1 < cols.size()) c.resize(width[j], ' ');
          text += (j > 0 ? " | " : "") + c;
        }
        os << text << '\n';
      };
      line([&](std::size_t j) { return cols[j].label; });
      for (const auto& row : set.rows) line([&](std::size_t j) { return row[j] + cols[j].table_suffix; });
      break;
    }
  }
}

inline std::string bool_text(bool b) { return b ? "true" : "false"; }

// ---------------------------------------------------------------------------
// Record schemas.

inline RecordSet solution_records(std::span<const SolutionClass> items) {
  RecordSet s{{{"m", "m"}, {"g1", "gcd(m, sigma(m^2))"}, {"g2", "gcd(m^2, sigma(m^2))"},
               {"is_solution", "solution", Kind::boolean}},
              {}};
  for (const auto& c : items) {
    s.rows.push_back({to_string(c.m), to_string(c.g1), to_string(c.g2), bool_text(c.is_solution)});
  }
  return s;
}

inline RecordSet density_records(std::span<const DensityRow> items) {
  RecordSet s{{{"limit", "Upper limit"}, {"count", "Count"}, {"percentage", "Percentage", Kind::number, "%"}}, {}};
  for (const auto& r : items) s.rows.push_back({std::to_string(r.limit), std::to_string(r.count), r.decimal});
  return s;
}

inline RecordSet witness_records(std::span<const WitnessEntry> items) {
  RecordSet s{{{"p", "prime"}, {"a", "v_p(gcd(m, sigma(m^2)))"}, {"b", "v_p(gcd(m^2, sigma(m^2)))"}}, {}};
  for (const auto& w : items) s.rows.push_back({to_string(w.prime), std::to_string(w.a), std::to_string(w.b)});
  return s;
}

struct A232354Entry {
  Natural w;
  Factorization factors;
  QuotientReport quotient;
};

inline RecordSet a232354_records(std::span<const A232354Entry> items) {
  RecordSet s{{{"w", "w"},
               {"factorization", "factorization", Kind::string},
               {"quotient", "sigma(w^2)/w"},
               {"is_prime_power", "prime power", Kind::boolean}},
              {}};
  for (const auto& e : items) {
    s.rows.push_back({to_string(e.w), to_string(e.factors), to_string(e.quotient.quotient),
                      bool_text(e.quotient.is_prime_power)});
  }
  return s;
}

inline RecordSet profile_records(const GcdProfile& p) {
  RecordSet s{{{"E", "E"}, {"F", "F"}, {"K", "K"}, {"G", "G"}, {"H", "H"}, {"I", "I"}, {"J", "J"}, {"index", "i"}}, {}};
  s.rows.push_back({to_string(p.E), to_string(p.F), to_string(p.K), to_string(p.G), to_string(p.H),
                    to_string(p.gcd_I), to_string(p.J), to_string(p.index)});
  return s;
}

inline RecordSet verdict_records(std::span<const Verdict> items) {
  RecordSet s{{{"check", "check", Kind::string}, {"passed", "passed", Kind::boolean}, {"detail", "detail", Kind::string}},
              {}};
  for (const auto& v : items) s.rows.push_back({v.name, bool_text(v.passed), v.detail});
  return s;
}

inline RecordSet roots_records(const CubicRoots& r) {
  RecordSet s{{{"p", "p"}, {"r", "r"}, {"s", "s"}}, {}};
  s.rows.push_back({std::to_string(r.p), std::to_string(r.r), std::to_string(r.s)});
  return s;
}

inline RecordSet meyerowitz_records(const MeyerowitzProduct& m) {
  RecordSet s{{{"limit", "limit"}, {"terms", "terms"}, {"value", "product"}, {"exact", "exact", Kind::string}}, {}};
  s.rows.push_back({std::to_string(m.limit), std::to_string(m.terms), m.decimal(30),
                    m.exact ? to_string(*m.exact) : ""});
  return s;
}

}  // namespace opn::emit
