#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace finsler_lie {

/// Deterministic sampling helpers. Uniform doubles are derived from raw
/// mt19937_64 bits (no std::distribution, whose output is
/// implementation-defined) so that seeded runs reproduce exactly.
class Sampler {
public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform01() {
    return static_cast<double>(rng_() >> 11) * 0x1p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01(), u2 = uniform01();
    while (u1 <= 1e-300) u1 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * M_PI * u2);
  }

  /// Complex standard normal vector of length n.
  Eigen::VectorXcd gaussian_vector(int n) {
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v[i] = std::complex<double>(normal(), normal());
    return v;
  }

  /// Uniform point on the unit sphere of C^n.
  Eigen::VectorXcd unit_vector(int n) {
    Eigen::VectorXcd v = gaussian_vector(n);
    double nrm = v.norm();
    while (nrm < 1e-12) {
      v = gaussian_vector(n);
      nrm = v.norm();
    }
    return v / nrm;
  }

  std::complex<double> complex_scalar() {
    return {normal(), normal()};
  }

  /// Nonzero complex scalar bounded away from 0.
  std::complex<double> nonzero_scalar() {
    std::complex<double> z = complex_scalar();
    while (std::abs(z) < 0.1) z = complex_scalar();
    return z;
  }

private:
  std::mt19937_64 rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Deterministic low-discrepancy unit vectors (additive Kronecker sequence
/// mapped through Box-Muller), independent of any seed.
inline std::vector<Eigen::VectorXcd> quasi_unit_vectors(int n, int count) {
  static const double primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                  41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};
  std::vector<Eigen::VectorXcd> out;
  out.reserve(count);
  for (int s = 1; s <= count; ++s) {
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) {
      auto frac = [](double x) { return x - std::floor(x); };
      double u1 = frac(0.5 + s * std::sqrt(primes[(2 * i) % 24]));
      double u2 = frac(0.5 + s * std::sqrt(primes[(2 * i + 1) % 24]));
      u1 = std::min(std::max(u1, 1e-12), 1.0 - 1e-12);
      const double r = std::sqrt(-2.0 * std::log(u1));
      v[i] = std::complex<double>(r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2));
    }
    out.push_back(v / v.norm());
  }
  return out;
}

}  // namespace finsler_lie
