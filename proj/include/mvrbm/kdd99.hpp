// Copyright 2026 The mvrbm Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Preparation of the KDD Cup 1999 "10 percent" file for outlier detection:
// every normal connection is an inlier, and intrusions are subsampled so they
// make up 10% of the result.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mvrbm/dataset.hpp"

namespace mvrbm {

// 41 attributes: 4 binary, 15 gaussian, 3 nominal, 19 count. Nominal
// cardinalities come from the data, so they are passed in.
Schema kdd99_schema(std::size_t protocols, std::size_t services, std::size_t flags);

struct CategoryMap {
  std::string column;
  // Code c maps back to values[c].
  std::vector<std::string> values;
};

struct Kdd99Data {
  Dataset data;  // labelled
  std::vector<CategoryMap> categories;
};

// Reads raw comma-separated records (41 attributes plus a label such as
// "normal." or "smurf."). Keeps all normal rows and floor(normal / 9) intrusion
// rows drawn without replacement; rows stay in file order.
Kdd99Data prepare_kdd99(std::istream& raw, std::uint64_t seed);

// Sidecar CSV `column,code,value`.
void write_category_maps(std::ostream& out, const std::vector<CategoryMap>& maps);

}  // namespace mvrbm
