/*
 * Copyright 2026 The xvaengine authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef XVA_RUNNER_HPP
#define XVA_RUNNER_HPP

#include <iosfwd>

#include "xva/config.hpp"

namespace xva {

/// Executes the configured mode and writes report.json, exposure CSVs and a
/// human-readable summary into cfg.output_dir. Returns the process exit
/// code: 0 success, 2 config error, 3 numerical failure (including an
/// unconverged Picard loop, whose diagnostics are embedded in the report).
int run(const RunConfig& cfg, std::ostream& log);

} // namespace xva

#endif
