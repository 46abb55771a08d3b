#include "besovlab/grid.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace besovlab {

Grid::Grid(int dim, double half_width, int samples)
    : dim_(dim), half_width_(half_width), samples_(samples) {
  if (dim < 1 || dim > 3) throw config_error("Grid: dim must be in [1,3]");
  if (half_width <= 0) throw config_error("Grid: half_width must be > 0");
  if (samples < 4 || samples % 2 != 0)
    throw config_error("Grid: samples must be even and >= 4");
  points_ = 1;
  for (int a = 0; a < dim; ++a) points_ *= samples;
}

bool Field::finite() const {
  for (const cd& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

Field& Field::operator+=(const Field& o) {
  if (!(grid == o.grid) || components != o.components)
    throw usage_error("Field: mismatched operands");
  for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
  return *this;
}

Field& Field::operator-=(const Field& o) {
  if (!(grid == o.grid) || components != o.components)
    throw usage_error("Field: mismatched operands");
  for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
  return *this;
}

Field& Field::operator*=(cd c) {
  for (cd& v : values) v *= c;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(cd c, Field f) { return f *= c; }

std::string field_to_json(const Field& f) {
  nlohmann::json j;
  j["dim"] = f.grid.dim();
  j["half_width"] = f.grid.half_width();
  j["samples"] = f.grid.samples();
  j["components"] = f.components;
  j["domain"] = f.domain == Domain::physical ? "physical" : "frequency";
  std::vector<double> flat;
  flat.reserve(2 * f.values.size());
  for (const cd& v : f.values) {
    flat.push_back(v.real());
    flat.push_back(v.imag());
  }
  j["values"] = std::move(flat);
  return j.dump();
}

Field field_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Grid g(j.at("dim").get<int>(), j.at("half_width").get<double>(),
         j.at("samples").get<int>());
  std::string dom = j.at("domain").get<std::string>();
  Field f(g, j.at("components").get<int>(),
          dom == "physical" ? Domain::physical : Domain::frequency);
  const auto& flat = j.at("values");
  if (flat.size() != 2 * f.values.size())
    throw data_error("field_from_json: value count mismatch");
  for (std::size_t i = 0; i < f.values.size(); ++i)
    f.values[i] = cd(flat[2 * i].get<double>(), flat[2 * i + 1].get<double>());
  return f;
}

void save_field(const Field& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw data_error("save_field: cannot open " + path);
  out << field_to_json(f);
}

Field load_field(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("load_field: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return field_from_json(ss.str());
}

}  // namespace besovlab
