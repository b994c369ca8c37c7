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

#include "mvrbm/error.hpp"

namespace mvrbm {

namespace {

std::string locate(const std::string& what, std::size_t row, std::size_t column) {
  if (row == 0 && column == 0) return what;
  std::string out = what + " (";
  if (row != 0) out += "row " + std::to_string(row);
  if (row != 0 && column != 0) out += ", ";
  if (column != 0) out += "column " + std::to_string(column);
  return out + ")";
}

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t row, std::size_t column)
    : Error(locate(what, row, column)), row_(row), column_(column) {}

DivergenceError::DivergenceError(const std::string& what, long epoch)
    : Error(epoch >= 0 ? what + " at epoch " + std::to_string(epoch) : what), epoch_(epoch) {}

}  // namespace mvrbm
