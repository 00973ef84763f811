#pragma once

#include <string>

#include "rentropy/convergence.hpp"
#include "rentropy/entropy.hpp"

namespace rentropy {

/// Flat JSON object with keys law, H, h, H_tilde, h_tilde, h_hat, h_bar,
/// rho_tilde and provenance; absent values are null. Failed reports also
/// carry "error" and "message".
std::string report_to_json(const EntropyReport& report);

/// Header row plus one value row; absent values are empty cells.
std::string report_to_csv(const EntropyReport& report);

/// Columns index,H,H_tilde,target,gap.
std::string trace_to_csv(const ConvergenceTrace& trace);
std::string trace_to_json(const ConvergenceTrace& trace);

/// Quotes a CSV cell if it contains a comma, quote or newline.
std::string csv_cell(const std::string& text);

}  // namespace rentropy
