#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace momlab {

/// Moment parameters k (number of shifts) and β (half the power).
struct MomParams {
  int k = 1;
  int beta = 1;

  int n() const { return k * beta; }
  /// k²β² − k + 1.
  int exponent() const { return n() * n() - k + 1; }
  /// Throws DomainError unless k, β >= 1 and kβ <= 4.
  void validate() const;
};

enum class Symmetry { unitary, symplectic, orthogonal };

const char* to_string(Symmetry s);
/// Accepts "unitary", "symplectic", "orthogonal" (also "so", "sp", "u").
Symmetry parse_symmetry(const std::string& name);

/// A moment estimate at one scale (T for ζ, N for matrices).
struct MomentEstimate {
  double value = 0.0;
  std::optional<double> std_error;  // present iff Monte-Carlo
  double quadrature_error = 0.0;    // deterministic methods: refinement/tail estimate
  std::int64_t samples = 0;
  std::string method;
  std::uint64_t seed = 0;
  MomParams params;
  double scale = 0.0;
};

}  // namespace momlab
