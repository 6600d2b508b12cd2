#pragma once

#include <string>
#include <vector>

#include "gnsw/grid.hpp"

namespace gnsw {

// Doubles are serialized with 17 significant digits (lossless round trip).
std::string format_g17(double x);

// Write-temp-then-rename; the destination never holds a partial file.
void atomic_write_text(const std::string& path, const std::string& content);

// Profile CSV: header "x,zeta", one node per row.
void write_profile_csv(const std::string& path, const Profile& u);

// Inverse of write_profile_csv: reconstructs the grid from the x column
// (equispaced, starting at -P/2) and rejects anything else.
Profile read_profile_csv(const std::string& path);

// Small numeric table with a fixed header line.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows);

// Two-column csv (k, F) loader for custom multiplier tables.
void read_kf_csv(const std::string& path, std::vector<double>& k,
                 std::vector<double>& F);

}  // namespace gnsw
