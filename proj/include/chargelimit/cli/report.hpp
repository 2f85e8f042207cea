#pragma once

#include <string>
#include <vector>

#include "chargelimit/devices.hpp"

namespace chargelimit::cli {

/// One headline number recomputed from the device models and compared
/// with the published figure under an explicit acceptance band.
struct ReportRow {
    std::string label;
    DeviceKind kind;
    std::string inputs;
    double f_unity;       // Hz
    double sensitivity;   // e/sqrt(Hz)
    std::string claim;    // published figure, as quoted
    std::string quantity; // "f_unity" or "sensitivity": what is compared
    double band_low;
    double band_high;
    bool within_claim;
};

// The GaAs-like rows use m*/m = 0.067 and eps_r = 12.9 regardless of any
// user material table.
std::vector<ReportRow> headline_report();

}  // namespace chargelimit::cli
