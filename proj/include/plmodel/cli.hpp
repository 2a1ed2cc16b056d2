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

#ifndef PLMODEL_CLI_HPP
#define PLMODEL_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace plmodel::cli
{
    enum ExitCode : int
    {
        exit_ok = 0,
        exit_failure = 1,
        exit_input_error = 2,
        exit_unidentifiable = 3
    };

    struct Terminal
    {
        bool color = false; // ANSI styling of verdicts
    };

    // Runs one command. args excludes the program name, e.g. {"eval", "--model", "3gpp-inh-los", "--f", "1", "--d", "1"}.
    int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err, const Terminal &terminal = {});
}

#endif
