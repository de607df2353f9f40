#pragma once

#include <iosfwd>
#include <string>

#include "hodg/field.hpp"

namespace hodg {

/// Field dump format: a '#'-prefixed JSON header line recording N, k and the
/// domain (plus the cell boundaries, so nonuniform meshes round-trip), then
/// CSV rows (cell_index, mode_index, coefficient). Coefficients are written
/// with 17 significant digits, which round-trips IEEE doubles bit-exactly.
void dump_csv(const DGField1D& field, std::ostream& out);
void dump_csv(const DGField2D& field, std::ostream& out);
DGField1D load_field1d_csv(std::istream& in);
DGField2D load_field2d_csv(std::istream& in);

void dump_csv_file(const DGField1D& field, const std::string& path);
void dump_csv_file(const DGField2D& field, const std::string& path);
DGField1D load_field1d_csv_file(const std::string& path);
DGField2D load_field2d_csv_file(const std::string& path);

}  // namespace hodg
