#include "momlab/types.hpp"

#include "momlab/errors.hpp"

namespace momlab {

void MomParams::validate() const {
  if (k < 1 || beta < 1) throw DomainError("k and beta must be >= 1");
  if (n() > 4) throw DomainError("k·beta above the supported ceiling of 4");
}

const char* to_string(Symmetry s) {
  switch (s) {
    case Symmetry::unitary: return "unitary";
    case Symmetry::symplectic: return "symplectic";
    case Symmetry::orthogonal: return "orthogonal";
  }
  return "unknown";
}

Symmetry parse_symmetry(const std::string& name) {
  if (name == "unitary" || name == "u") return Symmetry::unitary;
  if (name == "symplectic" || name == "sp") return Symmetry::symplectic;
  if (name == "orthogonal" || name == "so" || name == "special_orthogonal_even") return Symmetry::orthogonal;
  throw DomainError("unknown symmetry tag: " + name);
}

}  // namespace momlab
