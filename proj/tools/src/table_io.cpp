#include "table_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace vacbrown::cli {

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

double round_to_printed(double x) {
    if (!std::isfinite(x)) return x;
    return std::strtod(format_number(x).c_str(), nullptr);
}

std::vector<CsvRow> to_rows(const SweepTable& table, std::string_view requested_method) {
    std::vector<CsvRow> rows;
    rows.reserve(table.rows.size());
    for (const SweepRow& r : table.rows) {
        CsvRow row;
        row.axis = r.axis;
        row.chi = r.chi;
        row.tau = r.tau;
        row.status = r.status;
        row.method = r.evaluated ? std::string(to_string(r.result.method)) : std::string(requested_method);
        if (r.evaluated && std::isfinite(r.result.rho)) {
            row.rho = r.result.rho;
            row.abs_error = r.result.abs_error;
        }
        rows.push_back(row);
    }
    return rows;
}

void write_csv(std::ostream& os, const std::vector<CsvRow>& rows) {
    os << csv_header << '\n';
    for (const CsvRow& r : rows) {
        os << to_string(r.axis) << ',' << format_number(r.chi) << ',' << format_number(r.tau) << ','
           << (r.rho ? format_number(*r.rho) : "") << ','
           << (r.abs_error ? format_number(*r.abs_error) : "") << ',' << r.method << ','
           << to_string(r.status) << '\n';
    }
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, sep)) out.push_back(cell);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

std::optional<double> parse_double(std::string_view text) {
    if (text.empty()) return std::nullopt;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    return v;
}

}  // namespace

std::vector<CsvRow> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw MalformedTable("empty file (missing header)");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != csv_header) throw MalformedTable("line 1: header must be '" + std::string(csv_header) + "'");

    std::vector<CsvRow> rows;
    for (int number = 2; std::getline(is, line); ++number) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        const std::string where = "line " + std::to_string(number) + ": ";
        if (cells.size() != 7) {
            throw MalformedTable(where + "expected 7 fields, found " + std::to_string(cells.size()));
        }
        try {
            CsvRow row;
            row.axis = parse_axis(cells[0]);
            row.chi = parse_double(cells[1]).value();
            row.tau = parse_double(cells[2]).value();
            row.rho = parse_double(cells[3]);
            row.abs_error = parse_double(cells[4]);
            row.method = cells[5];
            row.status = parse_cell_status(cells[6]);
            if (row.status == CellStatus::ok && !row.rho) throw std::invalid_argument("ok row without rho");
            rows.push_back(row);
        } catch (const std::bad_optional_access&) {
            throw MalformedTable(where + "chi and tau are required");
        } catch (const std::exception& e) {
            throw MalformedTable(where + e.what());
        }
    }
    return rows;
}

std::vector<double> parse_grid(std::string_view text) {
    auto number = [](std::string_view s) {
        const auto v = parse_double(s);
        if (!v) throw std::invalid_argument("empty grid entry");
        return *v;
    };
    std::vector<double> out;
    if (text.find(':') != std::string_view::npos) {
        const auto parts = split(std::string(text), ':');
        if (parts.size() != 3) throw std::invalid_argument("grid range must be start:stop:count");
        const double start = number(parts[0]);
        const double stop = number(parts[1]);
        const double count = number(parts[2]);
        if (!(start > 0.0) || !(stop > 0.0)) throw std::invalid_argument("log-spaced grid needs start, stop > 0");
        if (!(count >= 1.0) || count != std::floor(count) || count > 1e6) {
            throw std::invalid_argument("grid count must be a positive integer");
        }
        const int n = static_cast<int>(count);
        for (int i = 0; i < n; ++i) {
            const double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
            out.push_back(round_to_printed(start * std::exp(f * std::log(stop / start))));
        }
        return out;
    }
    for (const auto& part : split(std::string(text), ',')) out.push_back(number(part));
    if (out.empty()) throw std::invalid_argument("empty grid");
    return out;
}

}  // namespace vacbrown::cli
