#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace maxgraph {

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-12);

/// Least-squares slope of log(err) against log(h).  Levels with err <= floor
/// are dropped (they sit in rounding noise); returns 0 if fewer than two
/// usable levels remain.
double fit_order(const std::vector<double>& h, const std::vector<double>& err,
                 double floor = 1e-14);

/// Root of f on [a, b] by bisection; f(a) and f(b) must have opposite signs.
double bisect(const std::function<double(double)>& f, double a, double b,
              double tol = 1e-12);

/// SplitMix64 step; used to derive independent per-stream seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// Cheap counter-based RNG: a fixed (seed, stream) pair yields a reproducible
/// sequence independent of any other stream, so workers can be scheduled in
/// any order.  Output has 64 random bits per call (SplitMix64 over a
/// per-stream key).
class CounterRng {
public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);
  std::uint64_t next_u64();
  /// Uniform double in [0, 1).
  double next_double();

private:
  std::uint64_t state_;
};

}  // namespace maxgraph
