// SPDX-License-Identifier: Apache-2.0
//
// emfbeam - exposure-aware downlink beamforming simulator
// Copyright (C) 2026 The emfbeam Authors
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

#pragma once

#include <iosfwd>

namespace emfbeam::cli
{

enum ExitCode : int
{
    exit_ok = 0,
    exit_config = 2,
    exit_runtime = 3
};

// Entry point of the `emfbeam` tool. Subcommands: snapshot, mc.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace emfbeam::cli
