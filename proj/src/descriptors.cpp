#include "effham/descriptors.hpp"

#include <json.hpp>

#include "effham/errors.hpp"

namespace effham {

namespace {

using nlohmann::json;

json parse_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw precondition_error(std::string("descriptor is not valid JSON: ") + e.what());
  }
}

std::string type_of(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw precondition_error("descriptor needs a string field \"type\"");
  return j["type"].get<std::string>();
}

template <class T>
T field(const json& j, const char* name) {
  if (!j.contains(name)) throw precondition_error(std::string("descriptor is missing \"") + name + "\"");
  try {
    return j[name].get<T>();
  } catch (const json::exception&) {
    throw precondition_error(std::string("descriptor field \"") + name + "\" has the wrong type");
  }
}

FourierPotential fourier_from(const json& j) {
  const int dim = j.value("dim", 1);
  if (dim < 1 || dim > 3) throw precondition_error("fourier descriptor dim must be 1, 2 or 3");
  FourierPotential::Spectrum spec;
  for (const auto& row : field<std::vector<std::vector<double>>>(j, "coeffs")) {
    if (row.size() != static_cast<std::size_t>(dim) + 2)
      throw precondition_error("fourier coefficient rows are [k..., re, im]");
    Wavevector k(dim);
    for (int i = 0; i < dim; ++i) {
      k[i] = static_cast<int>(row[i]);
      if (k[i] != row[i]) throw precondition_error("wavevector entries must be integers");
    }
    spec[k] += std::complex<double>(row[dim], row[dim + 1]);
  }
  return FourierPotential(dim, std::move(spec));
}

}  // namespace

Potential parse_potential(std::string_view text) {
  const json j = parse_text(text);
  const std::string type = type_of(j);
  if (type == "sawtooth") return make_sawtooth(field<double>(j, "s"));
  if (type == "piecewise") {
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : field<std::vector<std::vector<double>>>(j, "points")) {
      if (p.size() != 2) throw precondition_error("piecewise points are [x, v] pairs");
      pts.emplace_back(p[0], p[1]);
    }
    return PiecewiseLinearPotential::from_points(pts);
  }
  if (type == "multiwell")
    return make_multiwell(field<std::vector<double>>(j, "a"), field<std::vector<double>>(j, "c"));
  if (type == "fourier") {
    FourierPotential f = fourier_from(j);
    if (f.dim() != 1) throw precondition_error("this command needs a 1-dimensional potential");
    return f;
  }
  if (type == "preset") {
    const auto name = field<std::string>(j, "name");
    if (name == "vhat2") return make_vhat2();
    if (name == "zero") return PiecewiseLinearPotential::zero();
    if (name == "mathieu") return FourierPotential::cosine({1}, -1.0);
    throw precondition_error("unknown preset '" + name + "'");
  }
  throw precondition_error("unknown potential type '" + type + "'");
}

FourierPotential parse_fourier(std::string_view text) {
  const json j = parse_text(text);
  const std::string type = type_of(j);
  if (type == "fourier") return fourier_from(j);
  if (type == "preset" && field<std::string>(j, "name") == "mathieu") return FourierPotential::cosine({1}, -1.0);
  throw precondition_error("expected a fourier potential descriptor");
}

HamiltonianSpec parse_hamiltonian(std::string_view text) {
  const json j = parse_text(text);
  const std::string type = type_of(j);
  if (type == "quadratic") return QuasiConvexProfile::quadratic(j.value("coef", 0.5));
  if (type == "abs") return QuasiConvexProfile::absolute();
  if (type == "power") return QuasiConvexProfile::power(field<double>(j, "gamma"), j.value("c", 0.0));
  if (type == "nonconvexF") return make_default_F(j.value("theta1", 2.0), j.value("theta2", 1.5));
  throw precondition_error("unknown Hamiltonian type '" + type + "'");
}

Hamiltonian1D to_hamiltonian1d(const HamiltonianSpec& h) {
  return std::visit([](const auto& x) { return as_hamiltonian(x); }, h);
}

}  // namespace effham
