#pragma once

#include "doctest.h"

/// Purely relative doctest::Approx (the stock one adds an absolute unit scale).
inline doctest::Approx Rel(double v) { return doctest::Approx(v).scale(0.0); }
