#include "plotdata.hpp"

#include <map>
#include <set>

#include "vacbrown/asymptotics.hpp"

namespace vacbrown::cli {

namespace {

struct Series {
    Axis axis;
    double fixed;
    std::vector<double> x, y, yerr;
};

std::optional<asymptotics::AsymptoticRegime> regime_at(double chi, double tau) {
    using asymptotics::AsymptoticRegime;
    const Scenario s = Scenario::reduced(tau, chi);
    if (asymptotics::regime_applies(AsymptoticRegime::small_chi, s)) return AsymptoticRegime::small_chi;
    if (asymptotics::regime_applies(AsymptoticRegime::large_chi_late_time, s)) {
        return AsymptoticRegime::large_chi_late_time;
    }
    return std::nullopt;
}

std::string label_for(Axis axis, const char* fixed_name, double fixed) {
    return std::string(to_string(axis)) + ", " + fixed_name + "=" + format_number(fixed);
}

}  // namespace

nlohmann::ordered_json build_plot(const std::vector<CsvRow>& rows, const PlotOptions& options) {
    std::set<double> taus, chis;
    for (const CsvRow& r : rows) {
        if (r.status != CellStatus::ok) continue;
        taus.insert(r.tau);
        chis.insert(r.chi);
    }
    bool by_tau = true;
    if (options.x == PlotAxis::chi) by_tau = false;
    if (options.x == PlotAxis::automatic) by_tau = !(taus.size() == 1 && chis.size() > 1);
    const char* fixed_name = by_tau ? "chi" : "tau";

    std::vector<Series> series;
    std::map<std::pair<int, double>, std::size_t> index;
    for (const CsvRow& r : rows) {
        if (r.status != CellStatus::ok || !r.rho) continue;
        const double fixed = by_tau ? r.chi : r.tau;
        const auto key = std::make_pair(static_cast<int>(r.axis), fixed);
        auto it = index.find(key);
        if (it == index.end()) {
            it = index.emplace(key, series.size()).first;
            series.push_back({r.axis, fixed, {}, {}, {}});
        }
        Series& s = series[it->second];
        s.x.push_back(by_tau ? r.tau : r.chi);
        s.y.push_back(*r.rho);
        s.yerr.push_back(r.abs_error.value_or(0.0));
    }

    nlohmann::ordered_json out;
    out["x_variable"] = by_tau ? "tau" : "chi";
    out["series"] = nlohmann::ordered_json::array();
    auto emit = [&](const std::string& label, const char* kind, const Series& s) {
        nlohmann::ordered_json j;
        j["label"] = label;
        j["kind"] = kind;
        j["axis"] = std::string(to_string(s.axis));
        j[fixed_name] = round_to_printed(s.fixed);
        auto rounded = [](const std::vector<double>& v) {
            nlohmann::ordered_json a = nlohmann::ordered_json::array();
            for (double d : v) a.push_back(round_to_printed(d));
            return a;
        };
        j["x"] = rounded(s.x);
        j["y"] = rounded(s.y);
        j["yerr"] = rounded(s.yerr);
        out["series"].push_back(std::move(j));
    };

    for (const Series& s : series) {
        emit(label_for(s.axis, fixed_name, s.fixed), "numeric", s);
        if (!options.overlay_asymptotics) continue;
        Series small{s.axis, s.fixed, {}, {}, {}};
        Series large{s.axis, s.fixed, {}, {}, {}};
        for (double x : s.x) {
            const double chi = by_tau ? s.fixed : x;
            const double tau = by_tau ? x : s.fixed;
            const auto regime = regime_at(chi, tau);
            if (!regime) continue;
            const double y = asymptotics::closed_form(s.axis, *regime, Scenario::reduced(tau, chi)).rho;
            Series& target = *regime == asymptotics::AsymptoticRegime::small_chi ? small : large;
            target.x.push_back(x);
            target.y.push_back(y);
            target.yerr.push_back(0.0);
        }
        const std::string base = label_for(s.axis, fixed_name, s.fixed);
        if (!small.x.empty()) emit(base + " (small-chi asymptote)", "asymptote", small);
        if (!large.x.empty()) emit(base + " (large-chi asymptote)", "asymptote", large);
    }
    return out;
}

}  // namespace vacbrown::cli
