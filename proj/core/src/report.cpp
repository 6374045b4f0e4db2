#include "ncspectra/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <json.hpp>
#include <sstream>
#include <variant>

#include "ncspectra/error.hpp"

namespace ncspectra {

namespace {

using Cell = std::variant<double, long long, bool, std::string>;

template <class T>
struct Column {
  std::string name;
  std::function<Cell(const T&)> get;
  std::function<void(T&, const Cell&)> set;
};

#define NC_REAL(T, f)                                                          \
  Column<T> {                                                                  \
    #f, [](const T& r) -> Cell { return r.f; },                                \
        [](T& r, const Cell& c) { r.f = std::get<double>(c); }                 \
  }
#define NC_INT(T, f)                                                           \
  Column<T> {                                                                  \
    #f, [](const T& r) -> Cell { return static_cast<long long>(r.f); },        \
        [](T& r, const Cell& c) { r.f = static_cast<int>(std::get<long long>(c)); } \
  }
#define NC_BOOL(T, f)                                                          \
  Column<T> {                                                                  \
    #f, [](const T& r) -> Cell { return r.f; },                                \
        [](T& r, const Cell& c) { r.f = std::get<bool>(c); }                   \
  }
#define NC_TEXT(T, f)                                                          \
  Column<T> {                                                                  \
    #f, [](const T& r) -> Cell { return r.f; },                                \
        [](T& r, const Cell& c) { r.f = std::get<std::string>(c); }            \
  }

const std::vector<Column<SpectrumRow>>& spectrum_table() {
  using R = SpectrumRow;
  static const std::vector<Column<R>> cols{
      NC_TEXT(R, family),          NC_REAL(R, theta),
      NC_INT(R, m),                NC_INT(R, level),
      NC_TEXT(R, mode),            NC_TEXT(R, status),
      NC_REAL(R, b_input),         NC_REAL(R, b_solved),
      NC_REAL(R, b_solved_paper),  NC_REAL(R, b_solved_rederived),
      NC_REAL(R, E_physical),      NC_REAL(R, E_reduced),
      NC_REAL(R, energy_shift),    NC_REAL(R, E_physical_paper),
      NC_REAL(R, E_physical_rederived), NC_REAL(R, oracle_E),
      NC_REAL(R, gap),             NC_INT(R, nodes),
      NC_REAL(R, constraint_residual), NC_REAL(R, ode_residual),
      NC_BOOL(R, oracle_verified), NC_REAL(R, E_fixed_b),
      NC_TEXT(R, branch),          NC_BOOL(R, normalizable),
  };
  return cols;
}

const std::vector<Column<FitRow>>& fit_table() {
  using R = FitRow;
  static const std::vector<Column<R>> cols{
      NC_TEXT(R, family),    NC_INT(R, m),         NC_TEXT(R, source),
      NC_INT(R, points),     NC_REAL(R, slope),    NC_REAL(R, quadratic),
      NC_REAL(R, exponent),  NC_REAL(R, r_squared), NC_REAL(R, fit_residual),
  };
  return cols;
}

const std::vector<Column<VerifyRow>>& verify_table() {
  using R = VerifyRow;
  static const std::vector<Column<R>> cols{
      NC_TEXT(R, family),         NC_TEXT(R, entry),
      NC_TEXT(R, description),    NC_TEXT(R, verdict),
      NC_REAL(R, paper_value),    NC_REAL(R, rederived_value),
      NC_REAL(R, oracle_value),   NC_REAL(R, paper_residual),
      NC_REAL(R, rederived_residual), NC_REAL(R, paper_gap),
      NC_REAL(R, rederived_gap),  NC_BOOL(R, rederived_ok),
  };
  return cols;
}

#undef NC_REAL
#undef NC_INT
#undef NC_BOOL
#undef NC_TEXT

template <class T>
std::vector<std::string> names(const std::vector<Column<T>>& cols) {
  std::vector<std::string> out;
  for (const auto& c : cols) out.push_back(c.name);
  return out;
}

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::ConfigError, "malformed report: " + what);
}

// ---- CSV ----

std::string format_real(double v) {
  if (std::isnan(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string csv_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_real(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return quote(std::get<std::string>(c));
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

Cell parse_like(const Cell& prototype, const std::string& text) {
  if (std::holds_alternative<double>(prototype)) {
    if (text.empty()) return kMissing;
    try {
      std::size_t used = 0;
      const double v = std::stod(text, &used);
      if (used != text.size()) malformed("bad real '" + text + "'");
      return v;
    } catch (const std::logic_error&) {
      malformed("bad real '" + text + "'");
    }
  }
  if (std::holds_alternative<long long>(prototype)) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(text, &used);
      if (used != text.size()) malformed("bad integer '" + text + "'");
      return v;
    } catch (const std::logic_error&) {
      malformed("bad integer '" + text + "'");
    }
  }
  if (std::holds_alternative<bool>(prototype)) {
    if (text == "true") return true;
    if (text == "false") return false;
    malformed("bad boolean '" + text + "'");
  }
  return text;
}

template <class T>
void emit_csv_table(std::ostringstream& os, const std::string& name,
                    const std::vector<Column<T>>& cols, const std::vector<T>& rows) {
  os << "# table=" << name << "\n";
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i].name;
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << csv_cell(cols[i].get(row));
    os << "\n";
  }
}

template <class T>
T parse_csv_row(const std::vector<Column<T>>& cols, const std::vector<std::string>& cells) {
  if (cells.size() != cols.size()) malformed("row has " + std::to_string(cells.size()) + " cells");
  T row{};
  for (std::size_t i = 0; i < cols.size(); ++i) cols[i].set(row, parse_like(cols[i].get(row), cells[i]));
  return row;
}

// ---- JSON ----

using ordered_json = nlohmann::ordered_json;

ordered_json json_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    return std::isnan(*d) ? ordered_json(nullptr) : ordered_json(*d);
  }
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  if (const auto* b = std::get_if<bool>(&c)) return *b;
  return std::get<std::string>(c);
}

Cell from_json_like(const Cell& prototype, const ordered_json& j) {
  try {
    if (std::holds_alternative<double>(prototype)) {
      return j.is_null() ? kMissing : j.get<double>();
    }
    if (std::holds_alternative<long long>(prototype)) return j.get<long long>();
    if (std::holds_alternative<bool>(prototype)) return j.get<bool>();
    return j.get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    malformed(e.what());
  }
}

template <class T>
ordered_json json_table(const std::vector<Column<T>>& cols, const std::vector<T>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& row : rows) {
    ordered_json obj = ordered_json::object();
    for (const auto& c : cols) obj[c.name] = json_cell(c.get(row));
    arr.push_back(std::move(obj));
  }
  return arr;
}

template <class T>
std::vector<T> parse_json_table(const std::vector<Column<T>>& cols, const ordered_json& arr) {
  std::vector<T> out;
  for (const auto& obj : arr) {
    T row{};
    for (const auto& c : cols) {
      if (!obj.contains(c.name)) malformed("missing key " + c.name);
      c.set(row, from_json_like(c.get(row), obj.at(c.name)));
    }
    out.push_back(std::move(row));
  }
  return out;
}

bool same_cell(const Cell& x, const Cell& y) {
  if (const auto* dx = std::get_if<double>(&x)) {
    const double dy = std::get<double>(y);
    return (std::isnan(*dx) && std::isnan(dy)) || *dx == dy;
  }
  return x == y;
}

template <class T>
bool same_rows(const std::vector<Column<T>>& cols, const std::vector<T>& x, const std::vector<T>& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (const auto& c : cols) {
      if (!same_cell(c.get(x[i]), c.get(y[i]))) return false;
    }
  }
  return true;
}

// verify reports carry the checks table, every other command the rows table;
// either appears regardless when it has content.
bool wants_rows(const Report& r) { return !r.rows.empty() || r.command != "verify"; }
bool wants_checks(const Report& r) { return !r.checks.empty() || r.command == "verify"; }

// A quoted cell may span lines: keep reading while the quotes are unbalanced.
bool next_record(std::istream& is, std::string& record) {
  if (!std::getline(is, record)) return false;
  std::string more;
  while (std::count(record.begin(), record.end(), '"') % 2 == 1 && std::getline(is, more)) {
    record += '\n';
    record += more;
  }
  return true;
}

}  // namespace

std::vector<std::string> spectrum_columns() { return names(spectrum_table()); }
std::vector<std::string> fit_columns() { return names(fit_table()); }
std::vector<std::string> verify_columns() { return names(verify_table()); }

std::string to_csv(const Report& report) {
  std::ostringstream os;
  os << "# ncspectra schema=" << kSchemaVersion << " command=" << report.command << "\n";
  if (report.generated) os << "# generated=" << *report.generated << "\n";
  if (wants_rows(report)) emit_csv_table(os, "rows", spectrum_table(), report.rows);
  if (wants_checks(report)) emit_csv_table(os, "checks", verify_table(), report.checks);
  if (!report.fits.empty()) emit_csv_table(os, "fits", fit_table(), report.fits);
  return os.str();
}

Report parse_csv(std::string_view text) {
  Report rep;
  std::istringstream is{std::string(text)};
  std::string line, table;
  bool header_pending = false;
  bool saw_schema = false;
  while (next_record(is, line)) {
    if (line.rfind("# ncspectra schema=", 0) == 0) {
      saw_schema = true;
      const auto pos = line.find("command=");
      if (pos == std::string::npos) malformed("no command in schema line");
      rep.command = line.substr(pos + 8);
      continue;
    }
    if (line.rfind("# generated=", 0) == 0) {
      rep.generated = line.substr(12);
      continue;
    }
    if (line.rfind("# table=", 0) == 0) {
      table = line.substr(8);
      header_pending = true;
      continue;
    }
    if (line.empty()) continue;
    if (!saw_schema) malformed("missing schema line");
    const auto cells = split_csv(line);
    if (header_pending) {
      std::vector<std::string> expected = table == "rows"     ? spectrum_columns()
                                          : table == "fits"   ? fit_columns()
                                          : table == "checks" ? verify_columns()
                                                              : std::vector<std::string>{};
      if (cells != expected) malformed("unexpected header for table " + table);
      header_pending = false;
      continue;
    }
    if (table == "rows") {
      rep.rows.push_back(parse_csv_row(spectrum_table(), cells));
    } else if (table == "fits") {
      rep.fits.push_back(parse_csv_row(fit_table(), cells));
    } else if (table == "checks") {
      rep.checks.push_back(parse_csv_row(verify_table(), cells));
    } else {
      malformed("data outside a table");
    }
  }
  if (!saw_schema) malformed("missing schema line");
  return rep;
}

std::string to_json(const Report& report) {
  ordered_json j = ordered_json::object();
  j["schema"] = kSchemaVersion;
  j["command"] = report.command;
  if (report.generated) j["generated"] = *report.generated;
  if (wants_rows(report)) j["rows"] = json_table(spectrum_table(), report.rows);
  if (wants_checks(report)) j["checks"] = json_table(verify_table(), report.checks);
  j["fits"] = json_table(fit_table(), report.fits);
  return j.dump(2) + "\n";
}

Report parse_json(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    malformed(e.what());
  }
  Report rep;
  try {
    if (j.at("schema").get<int>() != kSchemaVersion) malformed("unsupported schema");
    rep.command = j.at("command").get<std::string>();
    if (j.contains("generated")) rep.generated = j.at("generated").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    malformed(e.what());
  }
  if (j.contains("rows")) rep.rows = parse_json_table(spectrum_table(), j.at("rows"));
  if (j.contains("fits")) rep.fits = parse_json_table(fit_table(), j.at("fits"));
  if (j.contains("checks")) rep.checks = parse_json_table(verify_table(), j.at("checks"));
  return rep;
}

std::string problems_to_json(const std::vector<DeformedRadialProblem>& problems,
                             const std::optional<std::string>& generated) {
  ordered_json j = ordered_json::object();
  j["schema"] = kSchemaVersion;
  j["command"] = "deform";
  if (generated) j["generated"] = *generated;
  ordered_json arr = ordered_json::array();
  for (const auto& p : problems) {
    ordered_json obj = ordered_json::object();
    obj["family"] = std::string(to_string(p.family));
    obj["a"] = p.source.a;
    obj["b"] = p.source.b;
    obj["c"] = p.source.c;
    obj["theta"] = p.theta;
    obj["m"] = p.m;
    ordered_json terms = ordered_json::object();
    for (const auto& [power, coeff] : p.terms) terms[std::to_string(power)] = coeff;
    obj["terms"] = std::move(terms);
    obj["energy_shift"] = p.energy_shift;
    obj["centrifugal"] = p.centrifugal;
    arr.push_back(std::move(obj));
  }
  j["problems"] = std::move(arr);
  return j.dump(2) + "\n";
}

std::string problems_to_csv(const std::vector<DeformedRadialProblem>& problems,
                            const std::optional<std::string>& generated) {
  std::ostringstream os;
  os << "# ncspectra schema=" << kSchemaVersion << " command=deform\n";
  if (generated) os << "# generated=" << *generated << "\n";
  os << "# table=terms\n";
  os << "family,a,b,c,theta,m,power,coefficient,energy_shift,centrifugal\n";
  for (const auto& p : problems) {
    for (const auto& [power, coeff] : p.terms) {
      os << to_string(p.family) << ',' << format_real(p.source.a) << ','
         << format_real(p.source.b) << ',' << format_real(p.source.c) << ','
         << format_real(p.theta) << ',' << p.m << ',' << power << ',' << format_real(coeff)
         << ',' << format_real(p.energy_shift) << ',' << format_real(p.centrifugal) << '\n';
    }
  }
  return os.str();
}

bool equivalent(const Report& x, const Report& y) {
  return x.command == y.command && x.generated == y.generated &&
         same_rows(spectrum_table(), x.rows, y.rows) && same_rows(fit_table(), x.fits, y.fits) &&
         same_rows(verify_table(), x.checks, y.checks);
}

}  // namespace ncspectra
