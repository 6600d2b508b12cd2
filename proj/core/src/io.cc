#include "gnsw/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gnsw {

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void atomic_write_text(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open for writing: " + tmp);
    f << content;
    if (!f.flush()) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("rename failed: " + path);
  }
}

void write_profile_csv(const std::string& path, const Profile& u) {
  std::string s = "x,zeta\n";
  for (int j = 0; j < u.size(); ++j) {
    s += format_g17(u.grid().node(j));
    s += ',';
    s += format_g17(u[j]);
    s += '\n';
  }
  atomic_write_text(path, s);
}

Profile read_profile_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(f, line) || line.rfind("x,zeta", 0) != 0)
    throw std::runtime_error(path + ": expected header 'x,zeta'");
  std::vector<double> xs, vs;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error(path + ": malformed row '" + line + "'");
    xs.push_back(std::strtod(line.substr(0, comma).c_str(), nullptr));
    vs.push_back(std::strtod(line.substr(comma + 1).c_str(), nullptr));
  }
  const int N = static_cast<int>(xs.size());
  if (N < 8) throw std::runtime_error(path + ": too few rows");
  const double dx = xs[1] - xs[0];
  const double P = N * dx;
  for (int j = 0; j < N; ++j)
    if (std::abs(xs[j] - (-0.5 * P + j * dx)) > 1e-9 * std::max(1.0, std::abs(dx)))
      throw std::runtime_error(path + ": x column is not an equispaced grid from -P/2");
  return Profile(Grid(P, N), std::move(vs));
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
  std::string s = header;
  s += '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) s += ',';
      s += format_g17(row[i]);
    }
    s += '\n';
  }
  atomic_write_text(path, s);
}

void read_kf_csv(const std::string& path, std::vector<double>& k,
                 std::vector<double>& F) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(f, line) || line.rfind("k,F", 0) != 0)
    throw std::runtime_error(path + ": expected header 'k,F'");
  k.clear();
  F.clear();
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error(path + ": malformed row '" + line + "'");
    k.push_back(std::strtod(line.substr(0, comma).c_str(), nullptr));
    F.push_back(std::strtod(line.substr(comma + 1).c_str(), nullptr));
  }
}

}  // namespace gnsw
