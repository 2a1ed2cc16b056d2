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

#ifndef PLMODEL_ERROR_HPP
#define PLMODEL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace plmodel
{
    // Malformed or out-of-domain input: bad CSV rows, d < 1 m, f <= 0, unknown keys.
    class input_error : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // The data cannot determine the requested parameter (rank-deficient design).
    class unidentifiable_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };
}

#endif
