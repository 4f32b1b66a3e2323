#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "koiso/classify.hpp"
#include "koiso/criticals.hpp"
#include "koiso/geometry.hpp"
#include "koiso/model.hpp"

namespace koiso {

// Everything the CLI accepts, before validation. A JSON job file carries
// the same keys as the flags; explicitly-set flags override file fields.
struct JobConfig {
    std::string soliton_class;          // "shrinking" | "expanding" | "steady"
    std::optional<int> base_dim;
    std::vector<double> lambdas;
    std::optional<double> e;
    std::optional<std::string> e_mode;  // "E0" | "E1" (shrinking only)
    std::optional<double> umin;
    int samples = 200;
    std::optional<double> u_cap;
    double tol = 1e-9;                  // classification decision band
    std::string out;                    // empty: stdout
    std::string format = "csv";         // "csv" | "json"
};

JobConfig job_from_json_text(const std::string& text);
JobConfig job_from_json_file(const std::string& path);

RawConfig raw_config_of(const JobConfig& job);

// Full round-trip precision (17 significant digits), C locale only.
std::string format_double(double v);

// CSV schema: U,phi,t,r,f,ric_fiber,ric_base_1..ric_base_m,scalar_c,
// identity_residual,ode_residual.
void write_table_csv(std::ostream& os, const GeometryTable& table);
std::string table_csv_header(int base_dim);

// Inverse of write_table_csv up to the printed precision (exact for
// 17-digit round-tripping). Only the rows survive a round trip: the header
// fixes base_dim, everything else in the returned table is defaulted.
// Throws Error on schema mismatch.
GeometryTable parse_table_csv(std::istream& is);

std::string table_to_json(const GeometryTable& table);
std::string criticals_to_json(const CriticalValues& c);
std::string report_to_json(const CompletenessReport& rep);
std::string violations_to_json(const std::vector<Violation>& violations);

} // namespace koiso
