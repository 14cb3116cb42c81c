#pragma once

#include <string>
#include <vector>

#include "dylr/longrange.hpp"
#include "dylr/scales.hpp"
#include "dylr/scattering.hpp"
#include "run_config.hpp"

// JSON mirrors of the CSV tables.  Every document carries the tool version
// and the effective run configuration, so an output file is reproducible
// from its own header.

namespace dylr::cli {

std::string spectra_json(const std::vector<longrange::AdiabaticSpectrum>& spectra,
                         const RunConfig& cfg, const std::string& kind);

std::string curves_json(const std::vector<longrange::PotentialCurves>& sets,
                        const RunConfig& cfg);

std::string scales_json(const scales::ScaleGrid& grid, const RunConfig& cfg);

std::string rates_json(const scattering::RateTable& table, const RunConfig& cfg);

}  // namespace dylr::cli
