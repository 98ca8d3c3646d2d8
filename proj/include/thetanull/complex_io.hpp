#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace thetanull {

/// Parses "a+bi", "a-bi", "bi", "i", "-i", "a", with optional spaces and
/// either i or j as the imaginary unit. Throws std::invalid_argument.
std::complex<double> parseComplex(std::string_view text);
/// Comma-separated complex literals, optionally wrapped in [ ].
std::vector<std::complex<double>> parseComplexList(std::string_view text);
/// Square matrix: rows separated by ';', entries by ','. A g = 1 matrix may
/// be a single literal.
Eigen::MatrixXcd parseComplexMatrix(std::string_view text);

/// Shortest round-trip rendering "a+bi".
std::string formatComplex(std::complex<double> z);

/// JSON: complex numbers as [re, im] pairs, matrices as row-major lists of
/// rows; readers also accept "a+bi" strings and plain numbers.
nlohmann::json toJson(std::complex<double> z);
nlohmann::json toJson(const Eigen::MatrixXcd& m);
nlohmann::json toJson(const Eigen::VectorXcd& v);
std::complex<double> complexFromJson(const nlohmann::json& j);
std::vector<std::complex<double>> complexListFromJson(const nlohmann::json& j);
Eigen::MatrixXcd complexMatrixFromJson(const nlohmann::json& j);

}  // namespace thetanull
