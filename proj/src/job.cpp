#include "koiso/job.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "koiso/errors.hpp"

namespace koiso {

namespace {

using nlohmann::json;

[[noreturn]] void bad_field(const std::string& key, const char* expected) {
    throw Error("job config: field \"" + key + "\" must be " + expected);
}

double number_of(const json& v, const std::string& key) {
    if (!v.is_number()) bad_field(key, "a number");
    return v.get<double>();
}

int integer_of(const json& v, const std::string& key) {
    if (!v.is_number_integer()) bad_field(key, "an integer");
    return v.get<int>();
}

std::string string_of(const json& v, const std::string& key) {
    if (!v.is_string()) bad_field(key, "a string");
    return v.get<std::string>();
}

// JSON carries no infinities; non-finite values travel as strings.
json json_number(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

const char* location_name(EndpointLocation loc) {
    switch (loc) {
        case EndpointLocation::AtUmin: return "umin";
        case EndpointLocation::AtFiniteUmax: return "finite_umax";
        case EndpointLocation::AtInfinity: return "infinity";
    }
    return "?";
}

json behavior_to_json(const EndpointBehavior& b) {
    return json{
        {"location", location_name(b.location)},
        {"phi_order", b.phi_order},
        {"exponential_growth", b.exponential_growth},
        {"r_integral_diverges", b.r_integral_diverges},
        {"t_integral_diverges", b.t_integral_diverges},
        {"t_integral_converges_at_umin", b.t_integral_converges_at_umin},
    };
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

double parse_csv_number(const std::string& field, std::size_t line_no) {
    const char* begin = field.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw Error("table csv: line " + std::to_string(line_no) +
                    ": unparsable number \"" + field + "\"");
    }
    return v;
}

} // namespace

JobConfig job_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& ex) {
        throw Error(std::string("job config: ") + ex.what());
    }
    if (!j.is_object()) throw Error("job config: top level must be an object");

    JobConfig job;
    for (const auto& [key, value] : j.items()) {
        if (key == "class") {
            job.soliton_class = string_of(value, key);
        } else if (key == "base_dim") {
            job.base_dim = integer_of(value, key);
        } else if (key == "lambdas") {
            if (!value.is_array()) bad_field(key, "an array of numbers");
            job.lambdas.clear();
            for (const auto& item : value)
                job.lambdas.push_back(number_of(item, key));
        } else if (key == "E") {
            job.e = number_of(value, key);
        } else if (key == "E_mode") {
            job.e_mode = string_of(value, key);
        } else if (key == "umin") {
            job.umin = number_of(value, key);
        } else if (key == "samples") {
            job.samples = integer_of(value, key);
        } else if (key == "u_cap") {
            job.u_cap = number_of(value, key);
        } else if (key == "tol") {
            job.tol = number_of(value, key);
        } else if (key == "out") {
            job.out = string_of(value, key);
        } else if (key == "format") {
            job.format = string_of(value, key);
        } else {
            throw Error("job config: unknown field \"" + key + "\"");
        }
    }
    return job;
}

JobConfig job_from_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("job config: cannot read \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return job_from_json_text(buf.str());
}

RawConfig raw_config_of(const JobConfig& job) {
    RawConfig raw;
    raw.soliton_class = job.soliton_class;
    raw.base_dim = job.base_dim;
    raw.lambdas = job.lambdas;
    return raw;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string table_csv_header(int base_dim) {
    std::string header = "U,phi,t,r,f,ric_fiber";
    for (int i = 1; i <= base_dim; ++i)
        header += ",ric_base_" + std::to_string(i);
    header += ",scalar_c,identity_residual,ode_residual";
    return header;
}

void write_table_csv(std::ostream& os, const GeometryTable& table) {
    os << table_csv_header(table.spec.base_dim) << '\n';
    for (const GeometrySample& row : table.rows) {
        os << format_double(row.u) << ',' << format_double(row.phi) << ','
           << format_double(row.t) << ',' << format_double(row.r) << ','
           << format_double(row.f) << ',' << format_double(row.ric_fiber);
        for (double b : row.ric_base) os << ',' << format_double(b);
        os << ',' << format_double(row.scalar_c) << ','
           << format_double(row.identity_residual) << ','
           << format_double(row.ode_residual) << '\n';
    }
}

GeometryTable parse_table_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw Error("table csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    int base_dim = -1;
    for (int m = 0; m <= 64; ++m) {
        if (line == table_csv_header(m)) {
            base_dim = m;
            break;
        }
    }
    if (base_dim < 0)
        throw Error("table csv: unrecognized header \"" + line + "\"");

    GeometryTable table;
    table.spec.base_dim = base_dim;
    const std::size_t n_fields = 9 + static_cast<std::size_t>(base_dim);

    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != n_fields) {
            throw Error("table csv: line " + std::to_string(line_no) + " has " +
                        std::to_string(fields.size()) + " fields, expected " +
                        std::to_string(n_fields));
        }
        GeometrySample row;
        std::size_t i = 0;
        row.u = parse_csv_number(fields[i++], line_no);
        row.phi = parse_csv_number(fields[i++], line_no);
        row.t = parse_csv_number(fields[i++], line_no);
        row.r = parse_csv_number(fields[i++], line_no);
        row.f = parse_csv_number(fields[i++], line_no);
        row.ric_fiber = parse_csv_number(fields[i++], line_no);
        for (int b = 0; b < base_dim; ++b)
            row.ric_base.push_back(parse_csv_number(fields[i++], line_no));
        row.scalar_c = parse_csv_number(fields[i++], line_no);
        row.identity_residual = parse_csv_number(fields[i++], line_no);
        row.ode_residual = parse_csv_number(fields[i++], line_no);
        table.rows.push_back(std::move(row));
    }
    if (!table.rows.empty()) table.umin = table.rows.front().u;
    return table;
}

std::string table_to_json(const GeometryTable& table) {
    json rows = json::array();
    for (const GeometrySample& row : table.rows) {
        json base = json::array();
        for (double b : row.ric_base) base.push_back(json_number(b));
        rows.push_back(json{
            {"U", json_number(row.u)},
            {"phi", json_number(row.phi)},
            {"t", json_number(row.t)},
            {"r", json_number(row.r)},
            {"f", json_number(row.f)},
            {"ric_fiber", json_number(row.ric_fiber)},
            {"ric_base", std::move(base)},
            {"scalar_c", json_number(row.scalar_c)},
            {"identity_residual", json_number(row.identity_residual)},
            {"ode_residual", json_number(row.ode_residual)},
        });
    }
    const json j{
        {"class", std::string(to_string(table.spec.soliton_class))},
        {"base_dim", table.spec.base_dim},
        {"lambdas", table.spec.lambdas},
        {"E", json_number(table.e)},
        {"umin", json_number(table.umin)},
        {"identity_constant", json_number(table.identity_constant)},
        {"rows", std::move(rows)},
    };
    return j.dump(2);
}

std::string criticals_to_json(const CriticalValues& c) {
    const json j{
        {"E0", json_number(c.e0)},
        {"E1", json_number(c.e1)},
        {"brackets",
         {{"E0", {json_number(c.e0_bracket.first), json_number(c.e0_bracket.second)}},
          {"E1", {json_number(c.e1_bracket.first), json_number(c.e1_bracket.second)}}}},
        {"residuals",
         {{"E0", json_number(c.e0_residual)}, {"E1", json_number(c.e1_residual)}}},
        {"diagnostics", c.diagnostics},
    };
    return j.dump(2);
}

std::string report_to_json(const CompletenessReport& rep) {
    json j{
        {"class", std::string(to_string(rep.spec.soliton_class))},
        {"base_dim", rep.spec.base_dim},
        {"lambdas", rep.spec.lambdas},
        {"E", json_number(rep.e)},
        {"umin", json_number(rep.umin)},
        {"case", std::string(to_string(rep.verdict))},
        {"umax", json_number(rep.umax)},
        {"umin_behavior", behavior_to_json(rep.umin_behavior)},
        {"umax_behavior", behavior_to_json(rep.umax_behavior)},
        {"gt_positive", rep.gt_positive},
        {"diagnostics", rep.diagnostics},
    };
    if (rep.e0) j["E0"] = json_number(*rep.e0);
    if (rep.e1) j["E1"] = json_number(*rep.e1);
    return j.dump(2);
}

std::string violations_to_json(const std::vector<Violation>& violations) {
    json arr = json::array();
    for (const Violation& v : violations) {
        const char* kind = "?";
        switch (v.kind) {
            case ViolationKind::EigenvalueRangeViolation:
                kind = "EigenvalueRangeViolation";
                break;
            case ViolationKind::ClassMismatch: kind = "ClassMismatch"; break;
            case ViolationKind::DimensionMismatch: kind = "DimensionMismatch"; break;
        }
        arr.push_back(json{
            {"kind", kind}, {"index", v.index}, {"message", v.message}});
    }
    return arr.dump(2);
}

} // namespace koiso
