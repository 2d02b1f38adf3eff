#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "table_io.hpp"

namespace vacbrown::cli {

enum class PlotAxis { automatic, tau, chi };

struct PlotOptions {
    PlotAxis x = PlotAxis::automatic;
    bool overlay_asymptotics = false;
};

// {x_variable, series: [{label, kind, axis, <fixed parameter>, x, y, yerr}]}.
// One numeric series per (axis, fixed parameter) in order of first
// appearance; only rows with status ok are used.
nlohmann::ordered_json build_plot(const std::vector<CsvRow>& rows, const PlotOptions& options);

}  // namespace vacbrown::cli
