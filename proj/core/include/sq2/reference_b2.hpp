#pragma once

// The 32-dimensional A-module structure on B(2) that the tools treat as the
// reference sample, embedded as module-definition text so every consumer sees
// identical bytes.

#include <string>

#include "sq2/module.hpp"

namespace sq2 {

// Exact definition-file bytes (generator count, degree list, action lines).
const std::string& reference_b2_text();

// Parsed once and cached; profile = full Steenrod algebra.
const FiniteModule& reference_b2();

}  // namespace sq2
