#include "rotator/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rotator/errors.hpp"

namespace rotator {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

struct CsvWriter::Impl {
    std::ofstream out;
    std::size_t n_columns;
};

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : impl_(new Impl{std::ofstream(path, std::ios::binary), columns.size()}) {
    if (!impl_->out) throw ConfigError("cannot open output file " + path);
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) impl_->out << ',';
        impl_->out << columns[i];
    }
    impl_->out << '\n';
}

CsvWriter::~CsvWriter() { delete impl_; }

void CsvWriter::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) impl_->out << ',';
        impl_->out << format_double(values[i]);
    }
    impl_->out << '\n';
}

std::string chart_state_to_json(const ChartState& state) {
    nlohmann::ordered_json j;
    j["theta"] = state.theta;
    j["phi_sph"] = state.phi_sph;
    j["V"] = {state.V[0], state.V[1], state.V[2]};
    j["theta_dot"] = state.theta_dot;
    j["phi_sph_dot"] = state.phi_sph_dot;
    return j.dump(2);
}

ChartState chart_state_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad chart-state JSON: ") + e.what());
    }
    ChartState s;
    try {
        s.theta = j.at("theta").get<double>();
        s.phi_sph = j.at("phi_sph").get<double>();
        const auto v = j.at("V");
        if (!v.is_array() || v.size() != 3) throw ConfigError("V must be an array of 3 numbers");
        for (int i = 0; i < 3; ++i) s.V[i] = v[i].get<double>();
        s.theta_dot = j.at("theta_dot").get<double>();
        s.phi_sph_dot = j.at("phi_sph_dot").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad chart-state JSON: ") + e.what());
    }
    return s;
}

ChartState chart_state_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open state file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return chart_state_from_json(buffer.str());
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    CsvWriter csv(path, {"t", "theta", "phi_sph", "V1", "V2", "V3", "theta_dot", "phi_sph_dot",
                         "Q", "p0", "p1", "p2", "p3", "PP", "WW"});
    for (const TrajectorySample& s : traj.samples)
        csv.row({s.t, s.state.theta, s.state.phi_sph, s.state.V[0], s.state.V[1], s.state.V[2],
                 s.state.theta_dot, s.state.phi_sph_dot, s.Q, s.p[0], s.p[1], s.p[2], s.p[3],
                 s.PP, s.WW});
}

void write_scan_csv(const std::string& path, const ScanReport& report) {
    CsvWriter csv(path, {"seed", "state_id", "Q", "det_closed", "det_numeric", "rel_det",
                         "sigma_min_over_max"});
    for (const ScanRow& r : report.rows)
        csv.row({static_cast<double>(report.seed), static_cast<double>(r.state_id), r.Q,
                 r.det_closed, r.det_numeric, r.rel_det, r.sigma_ratio});
}

void write_indeterminism_csv(const std::string& path, const IndeterminismReport& report) {
    CsvWriter csv(path, {"t", "phi1", "phi2", "residual1", "residual2", "delta"});
    for (const IndeterminismRow& r : report.rows)
        csv.row({r.t, r.phi1, r.phi2, r.res1, r.res2, r.delta});
}

void write_sidecar(const std::string& path, const std::string& command,
                   const std::vector<std::pair<std::string, std::string>>& config,
                   double duration_seconds) {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["version"] = ROTATOR_LAB_VERSION;
    nlohmann::ordered_json cfg;
    for (const auto& [key, value] : config) {
        // store numbers as numbers where they parse cleanly
        try {
            std::size_t used = 0;
            const double x = std::stod(value, &used);
            if (used == value.size()) {
                cfg[key] = x;
                continue;
            }
        } catch (const std::exception&) {
        }
        cfg[key] = value;
    }
    j["config"] = cfg;
    j["duration_seconds"] = duration_seconds;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open sidecar file " + path);
    out << j.dump(2) << '\n';
}

} // namespace rotator
