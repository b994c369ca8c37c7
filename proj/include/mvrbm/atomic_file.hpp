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

#include <functional>
#include <iosfwd>
#include <string>

namespace mvrbm {

// Writes through a temporary sibling file and renames it into place, so a
// failed writer never leaves a partial `path` behind.
void write_file_atomically(const std::string& path, const std::function<void(std::ostream&)>& writer);

std::string read_file(const std::string& path);

}  // namespace mvrbm
