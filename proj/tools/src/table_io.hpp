#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vacbrown/sweep.hpp"

namespace vacbrown::cli {

inline constexpr const char* csv_header = "axis,chi,tau,rho,abs_error,method,status";

// 12 significant digits, as used for every number the tool prints.
std::string format_number(double x);
double round_to_printed(double x);

struct CsvRow {
    Axis axis = Axis::z;
    double chi = 0.0;
    double tau = 0.0;
    std::optional<double> rho;
    std::optional<double> abs_error;
    std::string method;
    CellStatus status = CellStatus::failed;
};

class MalformedTable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<CsvRow> to_rows(const SweepTable& table, std::string_view requested_method);
void write_csv(std::ostream& os, const std::vector<CsvRow>& rows);
// Throws MalformedTable with the offending line number.
std::vector<CsvRow> read_csv(std::istream& is);

// "a,b,c" or "start:stop:count" (logarithmic spacing, start and stop > 0).
std::vector<double> parse_grid(std::string_view text);

}  // namespace vacbrown::cli
