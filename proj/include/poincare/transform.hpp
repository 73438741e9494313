#pragma once

#include "poincare/patch.hpp"

namespace poincare {

// Rotates `p` by `angle` radians about its center with bilinear
// interpolation. Uses the library's orientation convention, so a horizontal
// stripe ends up with orientation `angle`. Samples falling outside the source
// take `fill`.
Patch rotate_bilinear(const Patch& p, double angle, double fill = 0.0);

// Mirror across the vertical axis (column order reversed). Maps orientation
// psi to pi - psi.
Patch flip_columns(const Patch& p);

}  // namespace poincare
