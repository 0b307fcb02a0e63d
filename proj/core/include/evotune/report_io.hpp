#pragma once

#include <string>

#include "evotune/engine.hpp"

namespace evotune {

// Serialized run data. Both forms are deterministic: stable key order, no
// timestamps, shortest round-trip number formatting. Identical runs produce
// byte-identical files.

std::string report_to_json(const RunReport& report);
void write_report_json(const RunReport& report, const std::string& path);

// Header is exactly "generation,best,worst,mean,default"; one row per
// generation. This is the plotting interface.
std::string report_to_csv(const RunReport& report);
void write_report_csv(const RunReport& report, const std::string& path);

} // namespace evotune
