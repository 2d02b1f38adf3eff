#pragma once

#include <string>
#include <vector>

#include "vacbrown/dispersion.hpp"

namespace vacbrown {

struct SweepSpec {
    std::vector<Axis> axes;
    std::vector<double> chi_grid;
    std::vector<double> tau_grid;
    MethodChoice method = MethodChoice::automatic;
    DispersionOptions options{};
    unsigned threads = 1;

    void validate() const;
};

enum class CellStatus { ok, skipped_singular, failed };

std::string_view to_string(CellStatus status);
CellStatus parse_cell_status(std::string_view text);

struct SweepRow {
    Axis axis;
    double chi;
    double tau;
    ReducedDispersion result;
    CellStatus status;
    std::string message;
    bool evaluated = false;  // result holds a computed value (possibly unconverged)
};

struct SweepTable {
    std::vector<SweepRow> rows;
};

// Rows ordered by axis (as listed), then chi ascending, then tau ascending,
// independent of the number of threads. Cells are evaluated at z = 1.
SweepTable dispersion_sweep(const SweepSpec& spec);

}  // namespace vacbrown
