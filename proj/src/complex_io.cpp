#include "thetanull/complex_io.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace thetanull {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parseReal(std::string_view s, std::string_view whole) {
  double v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("malformed complex literal: '" + std::string(whole) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return parts;
}

}  // namespace

std::complex<double> parseComplex(std::string_view text) {
  std::string compact;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  const std::string_view s = compact;
  if (s.empty()) throw std::invalid_argument("empty complex literal");
  if (s.back() != 'i' && s.back() != 'j') return {parseReal(s, text), 0.0};

  const std::string_view body = s.substr(0, s.size() - 1);
  // split at the last sign that is not part of an exponent
  std::size_t cut = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 0;) {
    if ((body[k] == '+' || body[k] == '-') && !(k > 0 && (body[k - 1] == 'e' || body[k - 1] == 'E'))) {
      cut = k;
      break;
    }
  }
  auto imagPart = [&](std::string_view t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parseReal(t, text);
  };
  if (cut == std::string_view::npos || cut == 0) return {0.0, imagPart(body)};
  return {parseReal(body.substr(0, cut), text), imagPart(body.substr(cut))};
}

std::vector<std::complex<double>> parseComplexList(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '[' && text.back() == ']') text = text.substr(1, text.size() - 2);
  std::vector<std::complex<double>> out;
  for (auto part : split(text, ',')) out.push_back(parseComplex(part));
  return out;
}

Eigen::MatrixXcd parseComplexMatrix(std::string_view text) {
  std::vector<std::vector<std::complex<double>>> rows;
  for (auto row : split(trim(text), ';')) rows.push_back(parseComplexList(row));
  const std::size_t g = rows.size();
  Eigen::MatrixXcd m(g, g);
  for (std::size_t i = 0; i < g; ++i) {
    if (rows[i].size() != g) throw std::invalid_argument("matrix must be square");
    for (std::size_t j = 0; j < g; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::string formatComplex(std::complex<double> z) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, z.real());
  std::string s(buf, r.ptr);
  const double im = z.imag();
  if (im >= 0 || std::isnan(im)) s += '+';
  r = std::to_chars(buf, buf + sizeof buf, im);
  s.append(buf, r.ptr);
  s += 'i';
  return s;
}

nlohmann::json toJson(std::complex<double> z) { return nlohmann::json::array({z.real(), z.imag()}); }

nlohmann::json toJson(const Eigen::MatrixXcd& m) {
  auto out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(toJson(m(i, j)));
    out.push_back(row);
  }
  return out;
}

nlohmann::json toJson(const Eigen::VectorXcd& v) {
  auto out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(toJson(v(i)));
  return out;
}

std::complex<double> complexFromJson(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_string()) return parseComplex(j.get<std::string>());
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw std::invalid_argument("expected a complex number, got " + j.dump());
}

std::vector<std::complex<double>> complexListFromJson(const nlohmann::json& j) {
  if (j.is_string()) return parseComplexList(j.get<std::string>());
  if (!j.is_array()) throw std::invalid_argument("expected a list of complex numbers");
  std::vector<std::complex<double>> out;
  for (const auto& e : j) out.push_back(complexFromJson(e));
  return out;
}

Eigen::MatrixXcd complexMatrixFromJson(const nlohmann::json& j) {
  if (j.is_string()) return parseComplexMatrix(j.get<std::string>());
  if (!j.is_array() || j.empty()) throw std::invalid_argument("expected a matrix");
  if (j.size() == 2 && j[0].is_number()) return Eigen::MatrixXcd::Constant(1, 1, complexFromJson(j));
  const std::size_t g = j.size();
  Eigen::MatrixXcd m(g, g);
  for (std::size_t i = 0; i < g; ++i) {
    if (!j[i].is_array() || j[i].size() != g) throw std::invalid_argument("matrix must be square");
    for (std::size_t k = 0; k < g; ++k) m(i, k) = complexFromJson(j[i][k]);
  }
  return m;
}

}  // namespace thetanull
