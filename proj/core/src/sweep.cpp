#include "vacbrown/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace vacbrown {

std::string_view to_string(CellStatus status) {
    switch (status) {
        case CellStatus::ok: return "ok";
        case CellStatus::skipped_singular: return "skipped_singular";
        case CellStatus::failed: return "failed";
    }
    return "?";
}

CellStatus parse_cell_status(std::string_view text) {
    if (text == "ok") return CellStatus::ok;
    if (text == "skipped_singular") return CellStatus::skipped_singular;
    if (text == "failed") return CellStatus::failed;
    throw std::invalid_argument("unknown cell status '" + std::string(text) + "'");
}

void SweepSpec::validate() const {
    if (axes.empty() || chi_grid.empty() || tau_grid.empty()) {
        throw std::invalid_argument("sweep: axes and grids must be non-empty");
    }
    for (double c : chi_grid) {
        if (!(c >= 0.0) || !std::isfinite(c)) throw std::invalid_argument("sweep: chi must be >= 0");
    }
    for (double t : tau_grid) {
        if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("sweep: tau must be >= 0");
    }
}

SweepTable dispersion_sweep(const SweepSpec& spec) {
    spec.validate();
    std::vector<double> chis = spec.chi_grid;
    std::vector<double> taus = spec.tau_grid;
    std::sort(chis.begin(), chis.end());
    std::sort(taus.begin(), taus.end());

    SweepTable table;
    for (Axis axis : spec.axes) {
        for (double chi : chis) {
            for (double tau : taus) {
                table.rows.push_back({axis, chi, tau, {}, CellStatus::failed, {}, false});
            }
        }
    }

    auto evaluate = [&](SweepRow& row) {
        try {
            row.result = velocity_dispersion(row.axis, Scenario::reduced(row.tau, row.chi), spec.method,
                                             spec.options);
            row.evaluated = true;
            row.status = row.result.converged ? CellStatus::ok : CellStatus::failed;
            if (!row.result.converged) row.message = "quadrature did not reach the requested tolerance";
        } catch (const SingularBandError& e) {
            row.status = CellStatus::skipped_singular;
            row.message = e.what();
        } catch (const std::exception& e) {
            row.status = CellStatus::failed;
            row.message = e.what();
        }
    };

    const unsigned threads = std::max(1u, std::min<unsigned>(spec.threads, table.rows.size()));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < table.rows.size(); i = next++) evaluate(table.rows[i]);
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    }
    return table;
}

}  // namespace vacbrown
