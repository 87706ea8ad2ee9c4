#pragma once

#include <charconv>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "cubesim/cube.hpp"
#include "cubesim/errors.hpp"
#include "cubesim/experiments.hpp"
#include "cubesim/ifm_result.hpp"
#include "cubesim/linalg.hpp"
#include "cubesim/multiport.hpp"

namespace cubesim::io {

using Json = nlohmann::json;

/// Shortest representation that round-trips, '.' decimal separator regardless of locale.
inline std::string format_double(double x) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw Error("format_double: conversion failed");
  return std::string(buf, end);
}

inline Json cube_to_json(const HermitianCube& c) {
  Json entries = Json::array();
  for (const auto& [t, v] : extract_canonical(c)) {
    entries.push_back({{"j", t.j}, {"k", t.k}, {"l", t.l}, {"re", v.real()}, {"im", v.imag()}});
  }
  return {{"n_paths", c.n_paths()}, {"entries", std::move(entries)}};
}

inline HermitianCube cube_from_json(const Json& j, CubeRole role = CubeRole::effect, Tolerance tol = {}) {
  try {
    CanonicalEntries canonical;
    for (const auto& e : j.at("entries")) {
      const IndexTriple t{e.at("j").get<int>(), e.at("k").get<int>(), e.at("l").get<int>()};
      if (!canonical.emplace(t, Complex(e.at("re").get<double>(), e.at("im").get<double>())).second) {
        throw InvalidArgument("duplicate cube entry");
      }
    }
    return hermitian_complete(canonical, j.at("n_paths").get<int>(), role, tol);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed cube JSON: ") + e.what());
  }
}

inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const Json& rows) {
  try {
    const auto n_rows = static_cast<Eigen::Index>(rows.size());
    const auto n_cols = n_rows ? static_cast<Eigen::Index>(rows.at(0).size()) : 0;
    Matrix m(n_rows, n_cols);
    for (Eigen::Index r = 0; r < n_rows; ++r) {
      if (static_cast<Eigen::Index>(rows.at(r).size()) != n_cols) throw InvalidArgument("ragged matrix JSON");
      for (Eigen::Index c = 0; c < n_cols; ++c) {
        const auto& z = rows.at(r).at(c);
        m(r, c) = Complex(z.at(0).get<double>(), z.at(1).get<double>());
      }
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed matrix JSON: ") + e.what());
  }
}

inline Json density_matrix_to_json(const Matrix& rho) {
  return {{"n_paths", rho.rows()}, {"matrix", matrix_to_json(rho)}};
}

inline Json multiport_to_json(const MultiportMatrix& t) {
  const SubBasis basis(t.n_paths());
  Json order = Json::array();
  for (const auto& label : basis.labels()) order.push_back(label.name());
  return {{"n_paths", t.n_paths()}, {"basis_order", std::move(order)}, {"matrix", matrix_to_json(t.matrix())}};
}

inline MultiportMatrix multiport_from_json(const Json& j) {
  try {
    return MultiportMatrix(j.at("n_paths").get<int>(), matrix_from_json(j.at("matrix")));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed multiport JSON: ") + e.what());
  }
}

inline Json ifm_to_json(const IFMResult& r) {
  Json j = {{"model", to_string(r.model)},
            {"n_paths", r.n_paths},
            {"p_trigger", r.p_trigger},
            {"p_inconclusive", r.p_inconclusive},
            {"p_success", r.p_success},
            {"bound", r.bound_value}};
  if (r.support_ambiguous) j["support_ambiguous"] = true;
  return j;
}

inline constexpr const char* kIfmCsvHeader = "model,n_paths,p_trigger,p_inconclusive,p_success,bound";
inline constexpr const char* kRegionCsvHeader = "n,p_trigger,bound";

inline void write_ifm_csv(std::ostream& os, const std::vector<IFMResult>& rows) {
  os << kIfmCsvHeader << '\n';
  for (const auto& r : rows) {
    os << to_string(r.model) << ',' << r.n_paths << ',' << format_double(r.p_trigger) << ','
       << format_double(r.p_inconclusive) << ',' << format_double(r.p_success) << ','
       << format_double(r.bound_value) << '\n';
  }
}

inline void write_region_csv(std::ostream& os, const std::vector<RegionRow>& rows) {
  os << kRegionCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.n_paths << ',' << format_double(r.p_trigger) << ',' << format_double(r.bound) << '\n';
  }
}

}  // namespace cubesim::io
