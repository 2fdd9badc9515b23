#pragma once

#include <string>
#include <vector>

#include "rotator/chart.hpp"
#include "rotator/dynamics.hpp"
#include "rotator/exact.hpp"
#include "rotator/hessian.hpp"
#include "rotator/profiles.hpp"

namespace rotator {

#define ROTATOR_LAB_VERSION "0.1.0"

/// 17 significant digits so doubles round-trip exactly.
std::string format_double(double x);

/**
 * Minimal deterministic CSV writer: fixed header, "%.17g" cells, LF line
 * endings, no locale dependence. Identical inputs give identical bytes.
 */
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(const std::vector<double>& values);

private:
    struct Impl;
    Impl* impl_;
};

std::string chart_state_to_json(const ChartState& state);
ChartState chart_state_from_json(const std::string& text);
ChartState chart_state_from_file(const std::string& path);

void write_trajectory_csv(const std::string& path, const Trajectory& traj);
void write_scan_csv(const std::string& path, const ScanReport& report);
void write_indeterminism_csv(const std::string& path, const IndeterminismReport& report);

/// JSON run-metadata sidecar: resolved config, version, duration.
void write_sidecar(const std::string& path, const std::string& command,
                   const std::vector<std::pair<std::string, std::string>>& config,
                   double duration_seconds);

} // namespace rotator
