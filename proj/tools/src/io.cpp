#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <type_traits>

#include "scatter/error.hpp"
#include "scatter_cli/cli.hpp"

namespace scatter::cli {
namespace {

constexpr std::string_view kSchemes[] = {"born", "jensen", "eikonal", "eikonal-allangle", "qma",
                                         "qma-amp", "unitary", "exact", "mc"};

[[noreturn]] void usage(const std::string& message) { throw Error(ErrorCode::Usage, message); }

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    usage(what + ": cannot parse '" + s + "' as a number");
  }
  if (used != s.size() || !std::isfinite(v)) usage(what + ": invalid number '" + s + "'");
  return v;
}

}  // namespace

ErrorInfo describe_current_exception() {
  try {
    throw;
  } catch (const Error& e) {
    return {std::string(to_string(e.code())), e.what()};
  } catch (const nlohmann::json::exception& e) {
    return {"usage_error", e.what()};
  } catch (const std::exception& e) {
    return {"internal_error", e.what()};
  } catch (...) {
    return {"internal_error", "unknown exception"};
  }
}

std::size_t Table::error_count() const {
  std::size_t n = 0;
  for (const auto& row : rows)
    for (const auto& c : row) n += c.error.has_value();
  return n;
}

std::vector<double> parse_grid(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3 && parts.size() != 4) usage("grid must look like lo:hi:n[:log]");
  const double lo = parse_double(parts[0], "grid lo");
  const double hi = parse_double(parts[1], "grid hi");
  const double nd = parse_double(parts[2], "grid n");
  if (nd < 1 || nd != std::floor(nd) || nd > 1e6) usage("grid n must be a positive integer");
  const auto n = static_cast<std::size_t>(nd);
  bool log = false;
  if (parts.size() == 4) {
    if (parts[3] == "log") log = true;
    else if (parts[3] != "lin") usage("grid spacing must be 'log' or 'lin'");
  }
  if (n == 1) {
    if (lo != hi) usage("grid with one point needs lo == hi");
    return {lo};
  }
  if (!(hi > lo)) usage("grid must be strictly increasing (hi > lo)");
  if (log && !(lo > 0.0)) usage("log grid needs lo > 0");
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    g[i] = log ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo);
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<std::string> parse_schemes(std::string_view text) {
  std::vector<std::string> out;
  for (auto s : split(text, ',')) {
    const auto first = s.find_first_not_of(" \t");
    s = first == std::string::npos ? std::string() : s.substr(first, s.find_last_not_of(" \t") - first + 1);
    if (s.empty()) usage("empty scheme name");
    if (std::find(std::begin(kSchemes), std::end(kSchemes), s) == std::end(kSchemes))
      usage("unknown scheme '" + s + "'");
    if (std::find(out.begin(), out.end(), s) != out.end()) usage("duplicate scheme '" + s + "'");
    out.push_back(s);
  }
  return out;
}

Potential parse_potential(const std::string& text, std::optional<double> G,
                          std::optional<double> R, std::optional<int> N) {
  nlohmann::json spec;
  if (text == "square" || text == "singular" || text == "yukawa") {
    spec = {{"family", text}};
  } else if (!text.empty() && text.front() == '{') {
    spec = nlohmann::json::parse(text);
  } else {
    std::ifstream in(text);
    if (!in) usage("potential '" + text + "' is neither a family name nor a readable JSON file");
    spec = nlohmann::json::parse(in);
  }
  if (!spec.is_object() || !spec.contains("family")) usage("potential JSON needs a \"family\" field");
  for (auto it = spec.begin(); it != spec.end(); ++it) {
    if (it.key() != "family" && it.key() != "G" && it.key() != "R" && it.key() != "N")
      usage("potential JSON: unknown field '" + it.key() + "'");
  }
  const auto family = spec.at("family").get<std::string>();
  const double g = G ? *G : spec.value("G", 1.0);
  if (family == "square") {
    if (spec.contains("N") || N) usage("square barrier takes no N");
    return Potential::square(g, R ? *R : spec.value("R", 1.0));
  }
  if (family == "singular") {
    if (spec.contains("R") || R) usage("singular potential takes no R");
    return Potential::singular(g, N ? *N : spec.value("N", 2));
  }
  if (family == "yukawa") {
    if (spec.contains("R") || R || spec.contains("N") || N) usage("yukawa takes only G");
    return Potential::yukawa(g);
  }
  usage("unknown potential family '" + family + "'");
}

nlohmann::json potential_json(const Potential& pot) {
  return std::visit(
      [](const auto& p) -> nlohmann::json {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, SquareBarrier>) {
          return {{"family", "square"}, {"G", p.G}, {"R", p.R}};
        } else if constexpr (std::is_same_v<P, Singular>) {
          return {{"family", "singular"}, {"G", p.G}, {"N", p.N}};
        } else {
          return {{"family", "yukawa"}, {"G", p.G}};
        }
      },
      pot.variant());
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void write_csv(const Table& table, std::ostream& os) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << table.columns[i] << ',';
  os << "error\n";
  for (const auto& row : table.rows) {
    std::string errors;
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << format_number(row[i].value) << ',';
      if (row[i].error) {
        if (!errors.empty()) errors += ';';
        errors += table.columns[i] + ':' + row[i].error->code;
      }
    }
    os << errors << '\n';
  }
}

nlohmann::json table_json(const Table& table, const nlohmann::json& config) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json r = nlohmann::json::object();
    nlohmann::json errors = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto& c = row[i];
      if (std::isfinite(c.value)) r[table.columns[i]] = c.value;
      else r[table.columns[i]] = nullptr;
      if (c.error) errors[table.columns[i]] = {{"code", c.error->code}, {"message", c.error->message}};
    }
    if (!errors.empty()) r["errors"] = errors;
    rows.push_back(std::move(r));
  }
  return {{"config", config}, {"columns", table.columns}, {"rows", rows}};
}

}  // namespace scatter::cli
