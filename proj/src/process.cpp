#include "ssq/process.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ssq {

const char* family_name(Family f) {
  switch (f) {
    case Family::FBM: return "fbm";
    case Family::STABLE: return "stable";
    case Family::BM: return "bm";
    case Family::INTEGRATED_BM: return "integrated_bm";
    case Family::ITERATED_BM: return "iterated_bm";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  if (name == "fbm") return Family::FBM;
  if (name == "stable") return Family::STABLE;
  if (name == "bm") return Family::BM;
  if (name == "integrated_bm" || name == "integrated-bm") return Family::INTEGRATED_BM;
  if (name == "iterated_bm" || name == "iterated-bm") return Family::ITERATED_BM;
  throw std::invalid_argument("unknown process family '" + name +
                              "' (expected fbm|stable|bm|integrated_bm|iterated_bm)");
}

ProcessSpec ProcessSpec::fbm(double r) { return {Family::FBM, r, 1.0, 1}; }
ProcessSpec ProcessSpec::stable(double r, double c) { return {Family::STABLE, r, c, 1}; }
ProcessSpec ProcessSpec::bm() { return {Family::BM, 1.0, 1.0, 1}; }
ProcessSpec ProcessSpec::integrated_bm(int m) { return {Family::INTEGRATED_BM, 1.0, 1.0, m}; }
ProcessSpec ProcessSpec::iterated_bm() { return {Family::ITERATED_BM, 1.0, 1.0, 1}; }

double ProcessSpec::hurst() const {
  switch (family) {
    case Family::FBM: return 0.5 * r;
    case Family::STABLE: return 1.0 / r;
    case Family::BM: return 0.5;
    case Family::INTEGRATED_BM: return m + 0.5;
    case Family::ITERATED_BM: return 0.25;
  }
  return 0.5;
}

void ProcessSpec::validate() const {
  switch (family) {
    case Family::FBM:
    case Family::STABLE:
      if (!(r > 0.0 && r < 2.0)) {
        throw std::invalid_argument("index r must lie strictly inside (0,2), got r=" +
                                    std::to_string(r));
      }
      if (family == Family::STABLE && !(c > 0.0)) {
        throw std::invalid_argument("stable scale c must be positive");
      }
      break;
    case Family::BM:
      break;
    case Family::INTEGRATED_BM:
      if (m < 1) throw std::invalid_argument("integration order m must be >= 1");
      break;
    case Family::ITERATED_BM:
      break;
  }
}

std::string ProcessSpec::describe() const {
  std::ostringstream os;
  os << family_name(family);
  switch (family) {
    case Family::FBM: os << "(r=" << r << ")"; break;
    case Family::STABLE: os << "(r=" << r << ",c=" << c << ")"; break;
    case Family::INTEGRATED_BM: os << "(m=" << m << ")"; break;
    default: break;
  }
  return os.str();
}

GridSpec GridSpec::uniform(double T, int time_points, double alpha_lo, double alpha_hi,
                           int alpha_points) {
  GridSpec g;
  g.T = T;
  g.times.resize(time_points);
  for (int i = 0; i < time_points; ++i) {
    g.times[i] = T * static_cast<double>(i) / (time_points - 1);
  }
  g.alphas.resize(alpha_points);
  if (alpha_points == 1) {
    g.alphas[0] = 0.5 * (alpha_lo + alpha_hi);
  } else {
    for (int i = 0; i < alpha_points; ++i) {
      g.alphas[i] = alpha_lo + (alpha_hi - alpha_lo) * i / (alpha_points - 1);
    }
  }
  g.validate();
  return g;
}

void GridSpec::validate() const {
  if (!(T > 0.0)) throw std::invalid_argument("grid horizon T must be positive");
  if (times.size() < 2 || times.front() != 0.0 || times.back() != T) {
    throw std::invalid_argument("grid times must start at 0 and end at T");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw std::invalid_argument("grid times must be strictly increasing");
    }
  }
  if (alphas.empty()) throw std::invalid_argument("grid needs at least one quantile level");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0.0 && alphas[i] < 1.0)) {
      throw std::invalid_argument("quantile levels must lie inside (0,1)");
    }
    if (i > 0 && !(alphas[i] > alphas[i - 1])) {
      throw std::invalid_argument("quantile levels must be strictly increasing");
    }
  }
}

}  // namespace ssq
