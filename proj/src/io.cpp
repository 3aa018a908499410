#include "hcm/io.hpp"

#include "hcm/errors.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace hcm {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ','))
        fields.push_back(field);
    if (!line.empty() && line.back() == ',')
        fields.emplace_back();
    return fields;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    return line;
}

double parse_double(const std::string& field, int line_no, const std::string& column) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(field, &pos);
        if (pos != field.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line_no) + ": cannot parse '" + field +
                          "' as a number in column " + column);
    }
}

bool parse_flag(const std::string& field, int line_no, const std::string& column) {
    if (field == "0")
        return false;
    if (field == "1")
        return true;
    throw ConfigError("line " + std::to_string(line_no) + ": expected 0 or 1 in column " +
                      column + ", got '" + field + "'");
}

// Reads non-empty lines; returns header fields and data rows with line numbers.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::pair<int, std::vector<std::string>>> rows;
};

CsvTable read_csv(std::istream& is, std::size_t expected_columns_min) {
    CsvTable table;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty())
            continue;
        std::vector<std::string> fields = split_csv_line(line);
        if (table.header.empty()) {
            table.header = std::move(fields);
            continue;
        }
        if (fields.size() != table.header.size())
            throw ConfigError("line " + std::to_string(line_no) + ": expected " +
                              std::to_string(table.header.size()) + " fields, got " +
                              std::to_string(fields.size()));
        table.rows.emplace_back(line_no, std::move(fields));
    }
    if (table.header.size() < expected_columns_min)
        throw ConfigError("line 1: missing or truncated CSV header");
    return table;
}

void require_header(const CsvTable& table, const std::vector<std::string>& expected) {
    if (table.header != expected) {
        std::string want;
        for (const std::string& h : expected)
            want += (want.empty() ? "" : ",") + h;
        std::string got;
        for (const std::string& h : table.header)
            got += (got.empty() ? "" : ",") + h;
        throw ConfigError("line 1: expected header '" + want + "', got '" + got + "'");
    }
}

} // namespace

std::string format_sig(double value, int digits) {
    if (std::isnan(value))
        return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, value);
    return buf;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << "t_s,x_fore_m,y_fore_m,x_hind_m,y_hind_m,s_m,contact_fore,contact_hind\n";
    for (const SimState& st : traj.samples) {
        os << format_sig(st.time, 9) << ',' << format_sig(st.x_fore, 9) << ','
           << format_sig(st.y_fore, 9) << ',' << format_sig(st.x_hind, 9) << ','
           << format_sig(st.y_hind, 9) << ',' << format_sig(st.spine, 9) << ','
           << (st.contact_fore ? '1' : '0') << ',' << (st.contact_hind ? '1' : '0')
           << '\n';
    }
}

TrajectoryTable read_trajectory_csv(std::istream& is) {
    const CsvTable table = read_csv(is, 8);
    require_header(table, {"t_s", "x_fore_m", "y_fore_m", "x_hind_m", "y_hind_m", "s_m",
                           "contact_fore", "contact_hind"});
    TrajectoryTable out;
    for (const auto& [line_no, f] : table.rows) {
        out.t_s.push_back(parse_double(f[0], line_no, "t_s"));
        out.x_fore_m.push_back(parse_double(f[1], line_no, "x_fore_m"));
        out.y_fore_m.push_back(parse_double(f[2], line_no, "y_fore_m"));
        out.x_hind_m.push_back(parse_double(f[3], line_no, "x_hind_m"));
        out.y_hind_m.push_back(parse_double(f[4], line_no, "y_hind_m"));
        out.s_m.push_back(parse_double(f[5], line_no, "s_m"));
        out.contact_fore.push_back(parse_flag(f[6], line_no, "contact_fore"));
        out.contact_hind.push_back(parse_flag(f[7], line_no, "contact_hind"));
    }
    out.validate();
    return out;
}

void write_suite_csv(std::ostream& os, const std::vector<SuiteRow>& rows) {
    os << "label,freq_hz,substrate,speed_mm_s,speed_bl_s,air_frac,energy_mJ\n";
    const double nan = std::nan("");
    for (const SuiteRow& r : rows) {
        const bool ok = r.error.empty();
        os << r.label << ',' << format_sig(r.freq_hz, 6) << ',' << r.substrate << ','
           << format_sig(ok ? r.speed_mm_s : nan, 6) << ','
           << format_sig(ok ? r.speed_bl_s : nan, 6) << ','
           << format_sig(ok ? r.air_frac : nan, 6) << ','
           << format_sig(ok ? r.energy_mJ : nan, 6) << '\n';
    }
}

std::vector<SuiteRow> read_suite_csv(std::istream& is) {
    const CsvTable table = read_csv(is, 7);
    require_header(table, {"label", "freq_hz", "substrate", "speed_mm_s", "speed_bl_s",
                           "air_frac", "energy_mJ"});
    std::vector<SuiteRow> rows;
    for (const auto& [line_no, f] : table.rows) {
        SuiteRow r;
        r.label = f[0];
        r.freq_hz = parse_double(f[1], line_no, "freq_hz");
        r.substrate = f[2];
        r.speed_mm_s = parse_double(f[3], line_no, "speed_mm_s");
        r.speed_bl_s = parse_double(f[4], line_no, "speed_bl_s");
        r.air_frac = parse_double(f[5], line_no, "air_frac");
        r.energy_mJ = parse_double(f[6], line_no, "energy_mJ");
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_bending_csv(std::ostream& os, const BendingRecord& rec) {
    os << "disp_mm,load_N\n";
    for (const auto& [d, f] : rec.samples)
        os << format_sig(d, 9) << ',' << format_sig(f, 9) << '\n';
}

BendingRecord read_bending_csv(std::istream& is) {
    const CsvTable table = read_csv(is, 2);
    require_header(table, {"disp_mm", "load_N"});
    if (table.rows.empty())
        throw ConfigError("line 1: bending record has no data rows");
    BendingRecord rec;
    for (const auto& [line_no, f] : table.rows)
        rec.samples.emplace_back(parse_double(f[0], line_no, "disp_mm"),
                                 parse_double(f[1], line_no, "load_N"));
    rec.validate();
    return rec;
}

ExternalTrace read_trace_csv(std::istream& is) {
    const CsvTable table = read_csv(is, 2);
    if (table.header.size() < 2 || table.header[0] != "t_s" || table.header[1] != "x_mm")
        throw ConfigError("line 1: trace header must start with t_s,x_mm");
    ExternalTrace trace;
    std::vector<std::vector<double>*> columns = {&trace.t_s, &trace.x_mm};
    for (std::size_t c = 2; c < table.header.size(); ++c) {
        const std::string& name = table.header[c];
        if (name == "y_mm" && !trace.y_mm)
            columns.push_back(&trace.y_mm.emplace());
        else if (name == "psi1_deg" && !trace.psi1_deg)
            columns.push_back(&trace.psi1_deg.emplace());
        else if (name == "psi2_deg" && !trace.psi2_deg)
            columns.push_back(&trace.psi2_deg.emplace());
        else
            throw ConfigError("line 1: unknown or duplicate trace column '" + name + "'");
    }
    for (const auto& [line_no, f] : table.rows)
        for (std::size_t c = 0; c < columns.size(); ++c)
            columns[c]->push_back(parse_double(f[c], line_no, table.header[c]));
    trace.validate();
    return trace;
}

bool looks_like_trajectory_header(const std::string& header) {
    return strip_cr(header) ==
           "t_s,x_fore_m,y_fore_m,x_hind_m,y_hind_m,s_m,contact_fore,contact_hind";
}

} // namespace hcm
