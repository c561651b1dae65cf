// Copyright 2026 The mtstreams Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Generates a few indexed statuses, runs the desk battery on the first one
// and prints the per-test verdicts.

#include <cstdio>

#include "mtstreams/campaign.hpp"

int main() {
  const mts::StatusSet set = mts::generate_indexed(0, 4);
  const auto battery = mts::stats::mini_crush_v1();
  const auto& first = set.statuses.front();

  std::printf("first draws of status %llu:", static_cast<unsigned long long>(first.index));
  mts::Mt19937 gen(first.state);
  for (int i = 0; i < 4; ++i) std::printf(" %u", gen());
  std::printf("\n");

  const auto report = mts::campaign::run_battery_on_status(first.state, mts::stats::Mode::Int, battery, battery.threshold);
  for (const auto& r : report.results) {
    std::printf("%-16s %-4s", r.id.c_str(), mts::stats::verdict_name(r.verdict).data());
    for (const auto& s : r.sub) std::printf("  %s p=%.3g", s.name.c_str(), s.p_value);
    std::printf("\n");
  }
  return 0;
}
