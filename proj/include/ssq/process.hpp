#pragma once

#include <string>
#include <vector>

namespace ssq {

enum class Family { FBM, STABLE, BM, INTEGRATED_BM, ITERATED_BM };

const char* family_name(Family f);
Family family_from_name(const std::string& name);

/// One self-similar input process family with its parameters. The
/// self-similarity index is derived, never stored independently:
///   fbm H=r/2, stable H=1/r, bm H=1/2, integrated bm H=m+1/2,
///   iterated bm H=1/4.
struct ProcessSpec {
  Family family = Family::BM;
  double r = 1.0;  // fbm / stable index, in (0,2)
  double c = 1.0;  // stable scale in exp{-c t |u|^r}
  int m = 1;       // integration order for integrated bm

  static ProcessSpec fbm(double r);
  static ProcessSpec stable(double r, double c = 1.0);
  static ProcessSpec bm();
  static ProcessSpec integrated_bm(int m);
  static ProcessSpec iterated_bm();

  double hurst() const;
  void validate() const;  // throws std::invalid_argument
  std::string describe() const;
};

/// Discretization of the time interval [0,T] and of the quantile levels.
struct GridSpec {
  double T = 1.0;
  std::vector<double> times;   // strictly increasing, times[0]=0, back()=T
  std::vector<double> alphas;  // strictly increasing, inside (0,1)

  /// Uniform grid: k+1 times covering [0,T] and m levels on [lo,hi].
  static GridSpec uniform(double T, int time_points, double alpha_lo, double alpha_hi,
                          int alpha_points);

  void validate() const;
  std::size_t n_times() const { return times.size(); }
  std::size_t n_alphas() const { return alphas.size(); }
};

}  // namespace ssq
