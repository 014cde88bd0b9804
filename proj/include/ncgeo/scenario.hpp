#ifndef NCGEO_SCENARIO_HPP
#define NCGEO_SCENARIO_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncgeo/nc_forms.hpp"

namespace ncgeo {

class SchemaError : public std::runtime_error {
public:
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

struct GridAxis {
  double lo = 0.0, hi = 0.0;
  int count = 1;
  std::vector<double> points() const;
};

struct GridSpec {
  GridAxis t{0.0, 0.0, 1};
  GridAxis r{1.0, 1.0, 1};
  GridAxis theta{M_PI / 2, M_PI / 2, 1};
  GridAxis phi{0.0, 0.0, 1};
};

/// Serialized problem description. Matrices appear as nested [re, im] pairs;
/// field functions as expression strings over (t, r).
struct Scenario {
  std::string mode;  // classify | verify-calculus | spherical | transition
  int n = 2;
  std::vector<int> partition;      // classify via partition
  std::vector<Matrix> generators;  // classify via explicit generator images
  bool traceless = true;
  std::uint64_t seed = 0;
  int trials = 100;
  std::optional<double> tol;  // overrides the mode's primary tolerance
  GridSpec grid;
  std::map<std::string, std::string> fields;

  static Scenario from_json(const nlohmann::json& j);
  static Scenario load(const std::string& path);
  nlohmann::json to_json() const;
};

struct Report {
  nlohmann::json doc;
  bool pass = true;
};

Report run_scenario(const Scenario& scenario);

enum class ReportFormat { Json, Csv };

/// Bit-stable serialization: sorted keys, floats at 17 significant digits.
void emit_report(const Report& report, ReportFormat format, std::ostream& out);
void emit_report_file(const Report& report, ReportFormat format, const std::string& path);

std::string canonical_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

/// NCForm wire format: degree, n, coefficients keyed by increasing tuples.
nlohmann::json ncform_to_json(const NCForm& form);
NCForm ncform_from_json(const nlohmann::json& j);

}  // namespace ncgeo

#endif
