// csv.hpp — deterministic CSV emission for observable series.
#pragma once

#include <string>

#include "cascade/simulation.hpp"

namespace cascade {

// Fixed schema, 17 significant digits (lossless double round-trip):
//   tau,W,C,rho11,rho22,rho33,re_rho12,im_rho12,re_rho13,im_rho13,re_rho23,im_rho23,norm
std::string to_csv(const ObservableSeries& series);

// Writes via a temporary file renamed into place on success, so a failed run
// never leaves a partial output behind. Throws std::runtime_error on IO errors.
void write_csv_file(const std::string& path, const ObservableSeries& series);

} // namespace cascade
