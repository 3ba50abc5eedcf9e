#include "locrad/report_io.hpp"

#include "locrad/csv.hpp"
#include "locrad/version.hpp"

#include <json.hpp>

#include <cmath>
#include <sstream>

namespace locrad {

namespace {

using nlohmann::ordered_json;

ordered_json config_json(const Provenance& provenance) {
    ordered_json cfg = ordered_json::object();
    for (const auto& [k, v] : provenance) cfg[k] = v;
    return cfg;
}

ordered_json real(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json summary_json(const Summary& s) {
    return {{"mean", real(s.mean)}, {"median", real(s.median)}, {"q05", real(s.q05)}, {"q95", real(s.q95)}};
}

}  // namespace

std::string table_csv(const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows,
                      const Provenance& provenance) {
    std::ostringstream out;
    out << "# locrad " << kVersion << '\n';
    for (const auto& [k, v] : provenance) out << "# " << k << '=' << v << '\n';
    for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_real(row[c]);
        out << '\n';
    }
    return out.str();
}

std::string table_json(const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows,
                       const Provenance& provenance) {
    ordered_json j;
    j["version"] = kVersion;
    j["config"] = config_json(provenance);
    j["columns"] = columns;
    ordered_json data = ordered_json::array();
    for (const auto& row : rows) {
        ordered_json r = ordered_json::array();
        for (double v : row) r.push_back(real(v));
        data.push_back(std::move(r));
    }
    j["rows"] = std::move(data);
    return j.dump(2) + "\n";
}

namespace {

std::vector<std::vector<double>> trace_rows(const BoundTrace& trace) {
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < trace.values.size(); ++k) {
        rows.push_back({static_cast<double>(k), trace.values[k], trace.local_norms[k]});
    }
    return rows;
}

}  // namespace

std::string trace_csv(const BoundTrace& trace, const Provenance& provenance) {
    return table_csv({"k", "r_bar", "local_norm"}, trace_rows(trace), provenance);
}

std::string trace_json(const BoundTrace& trace, const Provenance& provenance, double certificate) {
    ordered_json j;
    j["version"] = kVersion;
    j["config"] = config_json(provenance);
    j["draw_seed"] = trace.draw_seed;
    j["iterations"] = trace.steps();
    j["bound"] = real(trace.final_value());
    j["certificate"] = real(certificate);
    ordered_json steps = ordered_json::array();
    for (const auto& row : trace_rows(trace)) {
        steps.push_back({{"k", static_cast<int>(row[0])}, {"r_bar", real(row[1])}, {"local_norm", real(row[2])}});
    }
    j["trace"] = std::move(steps);
    return j.dump(2) + "\n";
}

std::string coverage_csv(const ExperimentReport& report, const Provenance& provenance) {
    std::vector<std::vector<double>> rows;
    for (const auto& r : report.rows) {
        rows.push_back({static_cast<double>(r.rep), static_cast<double>(r.n), r.eps, static_cast<double>(r.iterations),
                        r.bound, r.true_risk, r.violated ? 1.0 : 0.0});
    }
    return table_csv({"rep", "n", "eps", "N", "bound", "risk", "violated"}, rows, provenance);
}

std::string rates_csv(const ExperimentReport& report, const Provenance& provenance) {
    std::vector<std::vector<double>> rows;
    for (const auto& r : report.rates) rows.push_back({static_cast<double>(r.n), r.bound_median, r.risk_median});
    return table_csv({"n", "bound_median", "risk_median"}, rows, provenance);
}

std::string report_json(const ExperimentReport& report, const Provenance& provenance) {
    ordered_json j;
    j["version"] = kVersion;
    j["config"] = config_json(provenance);
    j["summary"] = {{"reps", report.rows.size()},
                    {"violations", report.violations},
                    {"violation_frequency", real(report.violation_frequency)},
                    {"certificate", real(report.certificate)},
                    {"tolerance", real(report.tolerance)},
                    {"bound", summary_json(report.bound)},
                    {"risk", summary_json(report.risk)}};
    if (!report.rates.empty()) {
        ordered_json rates = ordered_json::array();
        for (const auto& r : report.rates) {
            rates.push_back({{"n", r.n},
                             {"eps", real(r.eps)},
                             {"N", r.iterations},
                             {"bound_median", real(r.bound_median)},
                             {"risk_median", real(r.risk_median)}});
        }
        j["rates"] = std::move(rates);
    }
    if (report.slope) j["slope"] = real(*report.slope);
    if (report.slope_r2) j["slope_r2"] = real(*report.slope_r2);
    ordered_json reps = ordered_json::array();
    for (const auto& r : report.rows) {
        reps.push_back({{"rep", r.rep},
                        {"n", r.n},
                        {"sample_seed", r.sample_seed},
                        {"sign_seed", r.sign_seed},
                        {"bound", real(r.bound)},
                        {"risk", real(r.true_risk)},
                        {"violated", r.violated}});
    }
    j["replications"] = std::move(reps);
    return j.dump(2) + "\n";
}

}  // namespace locrad
