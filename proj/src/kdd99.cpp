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

#include "mvrbm/kdd99.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <string_view>

#include "mvrbm/error.hpp"
#include "mvrbm/seeds.hpp"

namespace mvrbm {

namespace {

enum class KddKind { binary, gaussian, nominal, count };

struct KddAttribute {
  std::string_view name;
  KddKind kind;
};

constexpr std::array<KddAttribute, 41> kAttributes = {{
    {"duration", KddKind::count},
    {"protocol_type", KddKind::nominal},
    {"service", KddKind::nominal},
    {"flag", KddKind::nominal},
    {"src_bytes", KddKind::count},
    {"dst_bytes", KddKind::count},
    {"land", KddKind::binary},
    {"wrong_fragment", KddKind::count},
    {"urgent", KddKind::count},
    {"hot", KddKind::count},
    {"num_failed_logins", KddKind::count},
    {"logged_in", KddKind::binary},
    {"num_compromised", KddKind::count},
    {"root_shell", KddKind::count},
    {"su_attempted", KddKind::count},
    {"num_root", KddKind::count},
    {"num_file_creations", KddKind::count},
    {"num_shells", KddKind::count},
    {"num_access_files", KddKind::count},
    {"num_outbound_cmds", KddKind::count},
    {"is_host_login", KddKind::binary},
    {"is_guest_login", KddKind::binary},
    {"count", KddKind::count},
    {"srv_count", KddKind::count},
    {"serror_rate", KddKind::gaussian},
    {"srv_serror_rate", KddKind::gaussian},
    {"rerror_rate", KddKind::gaussian},
    {"srv_rerror_rate", KddKind::gaussian},
    {"same_srv_rate", KddKind::gaussian},
    {"diff_srv_rate", KddKind::gaussian},
    {"srv_diff_host_rate", KddKind::gaussian},
    {"dst_host_count", KddKind::count},
    {"dst_host_srv_count", KddKind::count},
    {"dst_host_same_srv_rate", KddKind::gaussian},
    {"dst_host_diff_srv_rate", KddKind::gaussian},
    {"dst_host_same_src_port_rate", KddKind::gaussian},
    {"dst_host_srv_diff_host_rate", KddKind::gaussian},
    {"dst_host_serror_rate", KddKind::gaussian},
    {"dst_host_srv_serror_rate", KddKind::gaussian},
    {"dst_host_rerror_rate", KddKind::gaussian},
    {"dst_host_srv_rerror_rate", KddKind::gaussian},
}};

constexpr std::array<std::size_t, 3> kNominalIndex = {1, 2, 3};

std::vector<std::string_view> fields_of(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

Schema kdd99_schema(std::size_t protocols, std::size_t services, std::size_t flags) {
  const std::array<std::size_t, 3> cards = {protocols, services, flags};
  std::vector<ColumnSpec> cols;
  for (std::size_t i = 0; i < kAttributes.size(); ++i) {
    ColumnSpec c{std::string(kAttributes[i].name), ColumnKind::count, 0};
    switch (kAttributes[i].kind) {
      case KddKind::binary: c.kind = ColumnKind::binary; break;
      case KddKind::gaussian: c.kind = ColumnKind::gaussian; break;
      case KddKind::count: c.kind = ColumnKind::count; break;
      case KddKind::nominal: {
        c.kind = ColumnKind::nominal;
        const auto pos = std::find(kNominalIndex.begin(), kNominalIndex.end(), i) - kNominalIndex.begin();
        c.cardinality = std::max<std::size_t>(2, cards[static_cast<std::size_t>(pos)]);
        break;
      }
    }
    cols.push_back(std::move(c));
  }
  return Schema(std::move(cols));
}

Kdd99Data prepare_kdd99(std::istream& raw, std::uint64_t seed) {
  struct RawRow {
    std::vector<double> numeric;
    std::array<std::string, 3> nominal;
    bool normal;
  };
  std::vector<RawRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(raw, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = fields_of(line);
    if (f.size() != kAttributes.size() + 1) throw ParseError("expected 42 fields", line_no);
    RawRow row{std::vector<double>(kAttributes.size(), 0.0), {}, f.back() == "normal." || f.back() == "normal"};
    std::size_t nominal = 0;
    for (std::size_t i = 0; i < kAttributes.size(); ++i) {
      if (kAttributes[i].kind == KddKind::nominal) {
        row.nominal[nominal++] = std::string(f[i]);
        continue;
      }
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(f[i].data(), f[i].data() + f[i].size(), v);
      if (ec != std::errc{} || ptr != f[i].data() + f[i].size()) throw ParseError("non-numeric field", line_no, i + 1);
      row.numeric[i] = v;
    }
    rows.push_back(std::move(row));
  }

  std::vector<std::size_t> normal_rows, attack_rows;
  for (std::size_t r = 0; r < rows.size(); ++r) (rows[r].normal ? normal_rows : attack_rows).push_back(r);
  if (normal_rows.empty()) throw DomainError("KDD99 input has no normal rows");
  const std::size_t want = std::min(attack_rows.size(), normal_rows.size() / 9);
  Rng rng(derive_seed(seed, Stage::kdd_sample));
  std::shuffle(attack_rows.begin(), attack_rows.end(), rng);
  attack_rows.resize(want);

  std::vector<std::size_t> keep = normal_rows;
  keep.insert(keep.end(), attack_rows.begin(), attack_rows.end());
  std::sort(keep.begin(), keep.end());

  Kdd99Data out;
  std::array<std::map<std::string, std::size_t>, 3> codes;
  for (const auto r : keep)
    for (std::size_t j = 0; j < 3; ++j) codes[j].emplace(rows[r].nominal[j], 0);
  for (std::size_t j = 0; j < 3; ++j) {
    CategoryMap map{std::string(kAttributes[kNominalIndex[j]].name), {}};
    std::size_t code = 0;
    for (auto& [value, c] : codes[j]) {
      c = code++;
      map.values.push_back(value);
    }
    out.categories.push_back(std::move(map));
  }

  out.data = Dataset(kdd99_schema(codes[0].size(), codes[1].size(), codes[2].size()));
  std::vector<Label> labels;
  for (const auto r : keep) {
    auto values = rows[r].numeric;
    for (std::size_t j = 0; j < 3; ++j)
      values[kNominalIndex[j]] = static_cast<double>(codes[j].at(rows[r].nominal[j]));
    out.data.append(values);
    labels.push_back(rows[r].normal ? Label::inlier : Label::outlier);
  }
  out.data.set_labels(std::move(labels));
  return out;
}

void write_category_maps(std::ostream& out, const std::vector<CategoryMap>& maps) {
  out << "column,code,value\n";
  for (const auto& m : maps)
    for (std::size_t c = 0; c < m.values.size(); ++c) out << m.column << ',' << c << ',' << m.values[c] << '\n';
}

}  // namespace mvrbm
