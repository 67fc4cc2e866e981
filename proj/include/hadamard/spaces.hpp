#pragma once

#include <string>

#include "hadamard/circle.hpp"
#include "hadamard/euclidean.hpp"
#include "hadamard/poincare_disk.hpp"
#include "hadamard/river.hpp"

namespace hadamard {

/// Builds a space from "euclidean:<dim>", "river", "disk", "disk:<margin>"
/// or "circle" (the non-CAT(0) control).
SpaceHandle make_space(const std::string& descriptor);

}  // namespace hadamard
