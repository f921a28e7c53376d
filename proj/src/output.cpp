#include "ascal/output.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace ascal {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw ContractViolation("cannot write " + tmp.string());
        f << content;
    }
    fs::rename(tmp, target);
}

std::vector<std::string> trajectory_csv_header(const SimulationSetup& setup,
                                               const TrajectoryRecord& rec) {
    std::vector<std::string> h{"t", "W_t", "in_event_so_far", "mass_mu", "mass_theta",
                               "l2_theta"};
    if (setup.enable_second_moment) {
        h.push_back("second_moment");
        h.push_back("boundary_warning");
    }
    for (const auto& c : rec.columns) h.push_back(c);
    if (setup.enable_audit) {
        h.push_back("audit_energy");
        h.push_back("audit_derivative");
        h.push_back("audit_dissipation");
        h.push_back("audit_nonlinear");
    }
    h.push_back("overflow");
    h.push_back("blowup");
    h.push_back("resolution_loss");
    return h;
}

std::string trajectory_csv(const SimulationSetup& setup, const TrajectoryRecord& rec) {
    std::string out;
    const auto header = trajectory_csv_header(setup, rec);
    for (std::size_t i = 0; i < header.size(); ++i) {
        out += header[i];
        out += i + 1 == header.size() ? "\n" : ",";
    }
    for (const auto& row : rec.rows) {
        std::vector<std::string> cells;
        cells.push_back(format_double(row.t));
        cells.push_back(format_double(row.w));
        cells.push_back(std::to_string(row.in_event_so_far));
        cells.push_back(format_double(row.mass_mu));
        cells.push_back(format_double(row.mass_theta));
        cells.push_back(format_double(row.l2_theta));
        if (setup.enable_second_moment) {
            cells.push_back(format_double(row.second_moment));
            cells.push_back(std::to_string(row.boundary_warning));
        }
        for (double n : row.norms) cells.push_back(format_double(n));
        if (setup.enable_audit) {
            cells.push_back(format_double(row.audit_energy));
            cells.push_back(format_double(row.audit_derivative));
            cells.push_back(format_double(row.audit_dissipation));
            cells.push_back(format_double(row.audit_nonlinear));
        }
        cells.push_back(std::to_string(row.overflow));
        cells.push_back(std::to_string(row.blowup));
        cells.push_back(std::to_string(row.resolution_loss));
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out += cells[i];
            out += i + 1 == cells.size() ? "\n" : ",";
        }
    }
    return out;
}

std::string trajectory_json(const RunConfig& cfg, const SimulationSetup& setup,
                            const TrajectoryRecord& rec) {
    nlohmann::ordered_json j;
    const RunSummary& s = rec.summary;
    j["termination"] = s.termination;
    j["t_final"] = s.t_final;
    j["in_event_throughout"] = s.in_event_throughout;
    j["path_seed"] = rec.path.seed;
    j["rows"] = rec.rows.size();
    if (setup.audited_norm >= 0) {
        j["audited_norm"] = rec.columns[static_cast<std::size_t>(setup.audited_norm)];
        j["audited_monotone"] = s.audited_monotone;
        j["audited_strict_decrease"] = s.audited_strict_decrease;
        j["audited_initial"] = s.audited_initial;
        j["audited_final"] = s.audited_final;
    }
    j["mass_law_max_rel_err"] = s.mass_law_max_rel_err;
    j["l2_drift_per_unit_time"] = s.l2_drift_per_unit_time;
    if (setup.integrator.mode == Mode::stratonovich)
        j["strat_zero_mode_max_rel_drift"] = s.strat_zero_mode_max_rel_drift;
    nlohmann::ordered_json cfgj;
    for (const auto& [k, v] : cfg.kv) cfgj[k] = v;
    j["config"] = cfgj;
    return j.dump(2) + "\n";
}

std::string scan_csv(const ScanResult& scan) {
    std::string out = scan.axis1.param + "," + scan.axis2.param + ",admissible\n";
    for (std::size_t i = 0; i < scan.values1.size(); ++i)
        for (std::size_t k = 0; k < scan.values2.size(); ++k) {
            out += format_double(scan.values1[i]) + "," + format_double(scan.values2[k]) + "," +
                   std::to_string(scan.admissible[i * scan.values2.size() + k]) + "\n";
        }
    return out;
}

std::string svg_line_plot(const std::string& title, const std::vector<double>& t,
                          const std::vector<double>& y) {
    const int w = 720, h = 420, ml = 70, mr = 20, mt = 36, mb = 46;
    double tmin = 0, tmax = 1, ymin = 0, ymax = 1;
    if (!t.empty()) {
        tmin = tmax = t[0];
        ymin = ymax = y[0];
        for (std::size_t i = 0; i < t.size(); ++i) {
            tmin = std::min(tmin, t[i]);
            tmax = std::max(tmax, t[i]);
            if (std::isfinite(y[i])) {
                ymin = std::min(ymin, y[i]);
                ymax = std::max(ymax, y[i]);
            }
        }
    }
    if (tmax <= tmin) tmax = tmin + 1;
    if (ymax <= ymin) ymax = ymin + 1;
    auto px = [&](double tv) { return ml + (tv - tmin) / (tmax - tmin) * (w - ml - mr); };
    auto py = [&](double yv) { return h - mb - (yv - ymin) / (ymax - ymin) * (h - mt - mb); };

    std::string s;
    s += "<svg xmlns='http://www.w3.org/2000/svg' width='" + std::to_string(w) + "' height='" +
         std::to_string(h) + "'>\n";
    s += "<rect width='100%' height='100%' fill='white'/>\n";
    s += "<text x='" + std::to_string(w / 2) + "' y='20' text-anchor='middle' font-size='14'>" +
         title + "</text>\n";
    char buf[256];
    for (int i = 0; i <= 4; ++i) {
        const double tv = tmin + (tmax - tmin) * i / 4;
        const double yv = ymin + (ymax - ymin) * i / 4;
        std::snprintf(buf, sizeof buf,
                      "<line x1='%g' y1='%d' x2='%g' y2='%d' stroke='#ccc'/>\n", px(tv), mt,
                      px(tv), h - mb);
        s += buf;
        std::snprintf(buf, sizeof buf,
                      "<line x1='%d' y1='%g' x2='%d' y2='%g' stroke='#ccc'/>\n", ml, py(yv),
                      w - mr, py(yv));
        s += buf;
        std::snprintf(buf, sizeof buf,
                      "<text x='%g' y='%d' text-anchor='middle' font-size='11'>%.4g</text>\n",
                      px(tv), h - mb + 18, tv);
        s += buf;
        std::snprintf(buf, sizeof buf,
                      "<text x='%d' y='%g' text-anchor='end' font-size='11'>%.4g</text>\n",
                      ml - 6, py(yv) + 4, yv);
        s += buf;
    }
    s += "<polyline fill='none' stroke='#1f77b4' stroke-width='1.5' points='";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!std::isfinite(y[i])) continue;
        std::snprintf(buf, sizeof buf, "%g,%g ", px(t[i]), py(y[i]));
        s += buf;
    }
    s += "'/>\n";
    std::snprintf(buf, sizeof buf,
                  "<rect x='%d' y='%d' width='%d' height='%d' fill='none' stroke='black'/>\n", ml,
                  mt, w - ml - mr, h - mt - mb);
    s += buf;
    s += "</svg>\n";
    return s;
}

void write_plots(const std::string& csv_stem, const SimulationSetup& setup,
                 const TrajectoryRecord& rec) {
    const auto header = trajectory_csv_header(setup, rec);
    std::vector<double> t;
    for (const auto& row : rec.rows) t.push_back(row.t);
    for (std::size_t col = 1; col < header.size(); ++col) {
        std::vector<double> y;
        for (const auto& row : rec.rows) {
            std::vector<double> cells{row.t, row.w, static_cast<double>(row.in_event_so_far),
                                      row.mass_mu, row.mass_theta, row.l2_theta};
            if (setup.enable_second_moment) {
                cells.push_back(row.second_moment);
                cells.push_back(row.boundary_warning);
            }
            for (double n : row.norms) cells.push_back(n);
            if (setup.enable_audit) {
                cells.push_back(row.audit_energy);
                cells.push_back(row.audit_derivative);
                cells.push_back(row.audit_dissipation);
                cells.push_back(row.audit_nonlinear);
            }
            cells.push_back(row.overflow);
            cells.push_back(row.blowup);
            cells.push_back(row.resolution_loss);
            y.push_back(cells[col]);
        }
        atomic_write(csv_stem + "." + header[col] + ".svg", svg_line_plot(header[col], t, y));
    }
}

}  // namespace ascal
