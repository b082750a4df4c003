#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "scatter/path_mc.hpp"
#include "scatter/potential.hpp"

namespace scatter::cli {

struct ErrorInfo {
  std::string code;
  std::string message;
};

/// Translates the in-flight exception into a code/message pair.
ErrorInfo describe_current_exception();

struct Cell {
  double value = std::numeric_limits<double>::quiet_NaN();
  std::optional<ErrorInfo> error;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  std::size_t error_count() const;
};

/// "lo:hi:n" (linear) or "lo:hi:n:log". n == 1 requires lo == hi.
std::vector<double> parse_grid(std::string_view text);

/// Comma list; unknown names raise a usage error.
std::vector<std::string> parse_schemes(std::string_view text);

/// Family name, inline JSON object, or path to a JSON file. Explicit
/// overrides win over values found in the JSON.
Potential parse_potential(const std::string& text, std::optional<double> G,
                          std::optional<double> R, std::optional<int> N);

nlohmann::json potential_json(const Potential& pot);

/// 12 significant digits; "nan" for failed cells.
std::string format_number(double x);
void write_csv(const Table& table, std::ostream& os);
nlohmann::json table_json(const Table& table, const nlohmann::json& config);

enum class Sweep { G, b, N };

struct LengthRequest {
  Potential base = Potential::square(1.0);
  Sweep sweep = Sweep::G;
  std::vector<double> grid;
  std::vector<std::string> schemes;
  double b = 1.0;
  mc::McConfig mc;
};

struct XsecRequest {
  Potential pot = Potential::square(1.0);
  std::vector<double> k;
  std::vector<std::string> schemes;
  double b = 1.0;
  std::optional<double> kc;
  double rel_tol = 1e-9;
};

struct AmpRequest {
  Potential pot = Potential::square(1.0);
  double k = 1.0;
  std::vector<double> theta;
  std::vector<std::string> schemes;
  double b = 1.0;
  std::optional<double> kc;
  double rel_tol = 1e-7;
};

Table length_table(const LengthRequest& req);
Table xsec_table(const XsecRequest& req);
Table amp_table(const AmpRequest& req);

struct FigureOptions {
  std::optional<std::vector<double>> grid;  // overrides the default sweep axis
};

/// Figure ids 1..8; anything else is a usage error.
Table figure_table(int id, const FigureOptions& opt = {});

/// Partial-wave phase shifts (l, delta) at momentum k until they fall below 1e-12.
Table phase_shift_table(const Potential& pot, double k);

/// Special-function values against independent references, with the worst
/// relative deviation under "max_rel_error".
nlohmann::json specfun_report();

/// Full command line (without the program name). Exit codes: 0 ok, 1 error,
/// 2 completed with warnings.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scatter::cli
