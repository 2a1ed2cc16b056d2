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

#include "least_squares.hpp"
#include "plmodel/error.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <utility>

namespace plmodel::detail
{
    namespace
    {
        using Matrix = std::vector<std::vector<double>>;

        class PivotedCholesky
        {
        public:
            // gram must be symmetric positive semi-definite with a unit diagonal.
            PivotedCholesky(Matrix gram, std::span<const std::string_view> names)
                : perm_(gram.size()), lower_(gram.size(), std::vector<double>(gram.size(), 0.0))
            {
                const std::size_t k = gram.size();
                std::iota(perm_.begin(), perm_.end(), std::size_t{0});

                for (std::size_t j = 0; j < k; ++j)
                {
                    std::size_t pivot = j;
                    for (std::size_t i = j + 1; i < k; ++i)
                        if (gram[i][i] > gram[pivot][pivot])
                            pivot = i;

                    if (!(gram[pivot][pivot] > relative_pivot_tolerance))
                    {
                        std::size_t weakest = j;
                        for (std::size_t i = j + 1; i < k; ++i)
                            if (gram[i][i] < gram[weakest][weakest])
                                weakest = i;
                        throw unidentifiable_error(std::string(names[perm_[weakest]]) +
                                                   " unidentifiable: design matrix is rank-deficient");
                    }

                    if (pivot != j)
                    {
                        std::swap(gram[j], gram[pivot]);
                        for (auto &row : gram)
                            std::swap(row[j], row[pivot]);
                        std::swap(lower_[j], lower_[pivot]);
                        std::swap(perm_[j], perm_[pivot]);
                    }

                    const double root = std::sqrt(gram[j][j]);
                    lower_[j][j] = root;
                    for (std::size_t i = j + 1; i < k; ++i)
                        lower_[i][j] = gram[i][j] / root;
                    for (std::size_t i = j + 1; i < k; ++i)
                        for (std::size_t l = j + 1; l <= i; ++l)
                        {
                            gram[i][l] -= lower_[i][j] * lower_[l][j];
                            gram[l][i] = gram[i][l];
                        }
                }
            }

            std::vector<double> solve(const std::vector<double> &rhs) const
            {
                const std::size_t k = rhs.size();
                std::vector<double> z(k);
                for (std::size_t i = 0; i < k; ++i)
                {
                    double acc = rhs[perm_[i]];
                    for (std::size_t l = 0; l < i; ++l)
                        acc -= lower_[i][l] * z[l];
                    z[i] = acc / lower_[i][i];
                }
                for (std::size_t i = k; i-- > 0;)
                {
                    double acc = z[i];
                    for (std::size_t l = i + 1; l < k; ++l)
                        acc -= lower_[l][i] * z[l];
                    z[i] = acc / lower_[i][i];
                }
                std::vector<double> out(k);
                for (std::size_t i = 0; i < k; ++i)
                    out[perm_[i]] = z[i];
                return out;
            }

        private:
            std::vector<std::size_t> perm_;
            Matrix lower_;
        };
    }

    LeastSquaresSolution solve_least_squares(std::span<const std::vector<double>> columns,
                                             std::span<const double> y,
                                             std::span<const std::string_view> column_names)
    {
        const std::size_t k = columns.size();
        const std::size_t n = y.size();

        std::vector<double> scale(k);
        for (std::size_t j = 0; j < k; ++j)
        {
            double sq = 0.0;
            for (double v : columns[j])
                sq += v * v;
            scale[j] = std::sqrt(sq);
            if (!(scale[j] > 0.0))
                throw unidentifiable_error(std::string(column_names[j]) + " unidentifiable: design column is zero");
        }

        Matrix gram(k, std::vector<double>(k, 0.0));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j <= i; ++j)
            {
                double acc = 0.0;
                for (std::size_t r = 0; r < n; ++r)
                    acc += columns[i][r] * columns[j][r];
                gram[i][j] = gram[j][i] = acc / (scale[i] * scale[j]);
            }

        const PivotedCholesky factor(gram, column_names);

        const auto scaled_projection = [&](const std::vector<double> &v)
        {
            std::vector<double> out(k, 0.0);
            for (std::size_t j = 0; j < k; ++j)
            {
                double acc = 0.0;
                for (std::size_t r = 0; r < n; ++r)
                    acc += columns[j][r] * v[r];
                out[j] = acc / scale[j];
            }
            return out;
        };

        std::vector<double> target(y.begin(), y.end());
        std::vector<double> z = factor.solve(scaled_projection(target));

        // refinement
        std::vector<double> residual(n);
        for (std::size_t r = 0; r < n; ++r)
        {
            double fitted = 0.0;
            for (std::size_t j = 0; j < k; ++j)
                fitted += columns[j][r] * (z[j] / scale[j]);
            residual[r] = target[r] - fitted;
        }
        const std::vector<double> correction = factor.solve(scaled_projection(residual));

        LeastSquaresSolution out;
        out.coefficients.resize(k);
        out.inverse_gram_diagonal.resize(k);
        for (std::size_t j = 0; j < k; ++j)
        {
            out.coefficients[j] = (z[j] + correction[j]) / scale[j];
            std::vector<double> unit(k, 0.0);
            unit[j] = 1.0;
            out.inverse_gram_diagonal[j] = factor.solve(unit)[j] / (scale[j] * scale[j]);
        }
        return out;
    }
}
