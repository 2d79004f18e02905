#pragma once

// Text format for fields:
//
//   hyptm-field 1
//   convention paper-metric-no-4
//   kind hyperbolic_disk | euclidean_window
//   n_rho <N>
//   n_theta <M>
//   rho_nodes
//   <N radii>
//   values
//   <N lines of M values>
//
// Numbers are written with 17 significant digits so a round trip is exact.

#include <filesystem>
#include <iosfwd>

#include "hyptm/field.hpp"

namespace hyptm {

void write_field(const Field& u, std::ostream& os);
/// Throws std::runtime_error on malformed input or a foreign convention tag.
Field read_field(std::istream& is);

void save_field(const Field& u, const std::filesystem::path& path);
Field load_field(const std::filesystem::path& path);

/// CSV with header rho,theta,re,im,value; one row per node.
void write_field_csv(const Field& u, std::ostream& os);

}  // namespace hyptm
