#include "hodg/field_io.hpp"

#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hodg {

namespace {

constexpr int kDigits = std::numeric_limits<double>::max_digits10;

nlohmann::json header_json(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.empty() || line[0] != '#')
    throw std::runtime_error("field CSV: missing '#' header line");
  return nlohmann::json::parse(line.substr(1));
}

void skip_column_header(std::istream& in) {
  std::string line;
  std::getline(in, line);
}

}  // namespace

void dump_csv(const DGField1D& field, std::ostream& out) {
  const auto& mesh = field.mesh();
  nlohmann::json header;
  header["N"] = mesh.num_cells();
  header["k"] = field.degree();
  header["domain"] = {mesh.domain().a, mesh.domain().b};
  header["boundaries"] = mesh.boundaries();
  header["dim"] = 1;
  out << "# " << header.dump() << "\n";
  out << "cell_index,mode_index,coefficient\n";
  out << std::setprecision(kDigits);
  for (int j = 0; j < mesh.num_cells(); ++j)
    for (int m = 0; m <= field.degree(); ++m)
      out << j << "," << m << "," << field.coeff(j, m) << "\n";
}

DGField1D load_field1d_csv(std::istream& in) {
  const auto header = header_json(in);
  const int n = header.at("N").get<int>();
  const int k = header.at("k").get<int>();
  std::vector<double> boundaries = header.at("boundaries").get<std::vector<double>>();
  if (static_cast<int>(boundaries.size()) != n + 1)
    throw std::runtime_error("field CSV: boundary count mismatch");

  Mesh1D mesh = Mesh1D::restore(boundaries);
  DGField1D field(mesh, k);
  skip_column_header(in);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    int cell, mode;
    char comma;
    double value;
    ss >> cell >> comma >> mode >> comma >> value;
    if (!ss) throw std::runtime_error("field CSV: bad row '" + line + "'");
    field.coeff(cell, mode) = value;
  }
  return field;
}

void dump_csv(const DGField2D& field, std::ostream& out) {
  const auto& mesh = field.mesh();
  const int ny = mesh.num_cells_y();
  const int modes = field.num_modes();
  nlohmann::json header;
  header["N"] = {mesh.num_cells_x(), ny};
  header["k"] = field.degree();
  header["domain"] = {{mesh.x().domain().a, mesh.x().domain().b},
                      {mesh.y().domain().a, mesh.y().domain().b}};
  header["boundaries_x"] = mesh.x().boundaries();
  header["boundaries_y"] = mesh.y().boundaries();
  header["dim"] = 2;
  out << "# " << header.dump() << "\n";
  out << "cell_index,mode_index,coefficient\n";
  out << std::setprecision(kDigits);
  for (int ci = 0; ci < mesh.num_cells_x(); ++ci)
    for (int cj = 0; cj < ny; ++cj)
      for (int a = 0; a < modes; ++a)
        for (int b = 0; b < modes; ++b)
          out << (ci * ny + cj) << "," << (a * modes + b) << "," << field.coeff(ci, cj, a, b)
              << "\n";
}

DGField2D load_field2d_csv(std::istream& in) {
  const auto header = header_json(in);
  const auto n = header.at("N").get<std::vector<int>>();
  const int k = header.at("k").get<int>();
  Mesh1D mx = Mesh1D::restore(header.at("boundaries_x").get<std::vector<double>>());
  Mesh1D my = Mesh1D::restore(header.at("boundaries_y").get<std::vector<double>>());
  if (mx.num_cells() != n.at(0) || my.num_cells() != n.at(1))
    throw std::runtime_error("field CSV: boundary count mismatch");
  DGField2D field(Mesh2D(mx, my), k);

  const int ny = n[1];
  const int modes = k + 1;
  skip_column_header(in);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    int cell, mode;
    char comma;
    double value;
    ss >> cell >> comma >> mode >> comma >> value;
    if (!ss) throw std::runtime_error("field CSV: bad row '" + line + "'");
    field.coeff(cell / ny, cell % ny, mode / modes, mode % modes) = value;
  }
  return field;
}

void dump_csv_file(const DGField1D& field, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  dump_csv(field, out);
}

void dump_csv_file(const DGField2D& field, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  dump_csv(field, out);
}

DGField1D load_field1d_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load_field1d_csv(in);
}

DGField2D load_field2d_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load_field2d_csv(in);
}

}  // namespace hodg
