// Copyright 2025 The flagcirc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FLAGCIRC_IO_JSON_HPP
#define FLAGCIRC_IO_JSON_HPP

#include <string>

#include "flagcirc/gadget.hpp"
#include "flagcirc/resources.hpp"
#include "flagcirc/verify.hpp"

namespace flagcirc {

/// Library version string carried in every JSON artifact.
extern const char *kVersion;

std::string report_json(const VerificationReport &report, uint64_t seed, bool reproducible);
std::string resources_json(const ResourceCount &count);
std::string monte_carlo_json(const MonteCarloResult &result, uint64_t seed, bool reproducible);
std::string search_json(const SearchResult &result, bool reproducible);

/// Reads a FlaggedCircuit back from a circuit file plus its provenance
/// sidecar (enough for verification: flags, bulk, boundary).
FlaggedCircuit load_flagged(const std::string &circuit_path, const std::string &provenance_path);

}  // namespace flagcirc

#endif
