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

// Model file format, version 1 (plain text, one item per line):
//
//   mvrbm-model 1
//   hidden <K>
//   columns <N>
//   <name:kind[,C]>                      N schema lines
//   standardization <M>
//   <column-index> <mean> <sd>           M lines, hex floats
//   visible_bias <width>
//   <a_0> ... <a_width-1>                one line, hex floats
//   hidden_bias <K>
//   <b_0> ... <b_K-1>
//   weights <width> <K>
//   <W_j0> ... <W_jK-1>                  width lines
//   end
//
// Hex floats make the round trip bit-exact.

#include <iosfwd>
#include <string>

#include "mvrbm/model.hpp"

namespace mvrbm {

inline constexpr int kModelFormatVersion = 1;

void save_model(const Model& model, std::ostream& out);
Model load_model(std::istream& in);

// Exact hexadecimal text for a finite double, e.g. "-0x1.8p+1".
std::string format_hex(double value);
// Parses format_hex output (and plain decimal). Throws ParseError.
double parse_hex(const std::string& text);

}  // namespace mvrbm
