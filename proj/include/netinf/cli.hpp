/*
 *  Copyright 2026 the netinf authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *       http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */
#pragma once

namespace netinf {

/// Entry point for the netinf command-line tool (subcommands: simulate,
/// fit, select, export-graph, report). Exit codes: 0 success, 1 usage or
/// configuration error, 2 data error, 3 numeric failure.
int run_cli(int argc, const char* const* argv);

}  // namespace netinf
