#pragma once

#include "tva/rational.hpp"

#include <optional>
#include <vector>

namespace tva::linalg {

using Vec = std::vector<Rat>;
using Mat = std::vector<Vec>; // row-major

int rank(Mat m);

Rat det(Mat a);

/// Unique solution of a square system, nullopt if singular.
std::optional<Vec> solve_square(Mat a, Vec b);

/// Columns of c expressed in the column basis b (both k x *, b of full column
/// rank d, every column of c in span(b)); returns the d x cols(c) coefficient
/// matrix, or nullopt if the basis is deficient / c is outside the span.
std::optional<Mat> express_in_basis(const Mat& b, const Mat& c);

} // namespace tva::linalg
