// SPDX-License-Identifier: Apache-2.0
//
// plmodel - large-scale path loss model evaluation and fitting
// Copyright (C) 2026 The plmodel authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef PLMODEL_SRC_LEAST_SQUARES_HPP
#define PLMODEL_SRC_LEAST_SQUARES_HPP

#include <span>
#include <string_view>
#include <vector>

namespace plmodel::detail
{
    inline constexpr double relative_pivot_tolerance = 1e-10;

    struct LeastSquaresSolution
    {
        std::vector<double> coefficients;
        std::vector<double> inverse_gram_diagonal; // diag((X^T X)^-1), for standard errors
    };

    // Least squares y ~ X c via the normal equations.
    //
    // Each column is scaled to unit 2-norm, so the Gram matrix has a unit
    // diagonal. It is factored by Cholesky with diagonal (symmetric) pivoting:
    // the column with the largest remaining Schur-complement diagonal goes
    // next. A remaining pivot below relative_pivot_tolerance means the design
    // is rank-deficient, and unidentifiable_error names the column whose pivot
    // collapsed. One step of iterative refinement on the unscaled residual
    // follows the first solve.
    LeastSquaresSolution solve_least_squares(std::span<const std::vector<double>> columns,
                                             std::span<const double> y,
                                             std::span<const std::string_view> column_names);
}

#endif
