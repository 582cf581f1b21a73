#pragma once

#include <map>
#include <string>
#include <vector>

#include "fwmpair/sweeps.hpp"

namespace fwmpair {

/// Every file is written to a temporary name and renamed into place.
/// Numbers carry 17 significant digits so they parse back exactly.

void export_rate_table(const std::string& path, const std::vector<RateRow>& rows);
void export_tau_trace(const std::string& path, const TauOptimum& optimum);
void export_filter_curves(const std::string& path, const std::vector<FilterCurve>& curves);

/// |amplitude| as CSV (rows = signal) plus <stem>_signal_axis.csv and
/// <stem>_idler_axis.csv holding the coordinates.
void export_magnitude(const std::string& stem, const JointAmplitude& amplitude);

/// The resolved config followed by a [meta] section; load_config reads it
/// back and reruns identically.
void export_metadata(const std::string& path, const ResolvedRun& run,
                     const std::map<std::string, std::string>& extra = {});

/// Creates the directory (and parents); I/O error with the path on failure.
void ensure_directory(const std::string& path);

}  // namespace fwmpair
