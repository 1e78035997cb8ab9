// Copyright 2026 The Vaultsim Authors
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

#include "support/compiler_checks.h"

#include <array>
#include <memory>

#include "fmt/format.h"
#include "vaultsim/function.h"
#include "vaultsim/rng.h"

namespace vaultsim::testing {
namespace {

int64_t LittleEndian(const Bytes& x) {
  if (x.size() != 8) return 0;
  uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | x[i];
  return static_cast<int64_t>(v);
}

Bytes RandomInput(SeededRng& rng, std::string_view name) {
  if (name == "integer-sum") {
    return EncodeInt(static_cast<int64_t>(rng.Uniform(2001)) - 1000);
  }
  return rng.Draw(rng.Uniform(12));
}

}  // namespace

std::optional<int64_t> ReferenceValue(std::string_view name,
                                      const std::vector<Bytes>& inputs) {
  int64_t total = 0;
  for (const Bytes& x : inputs) {
    if (name == "byte-sum") {
      for (uint8_t b : x) total += b;
    } else if (name == "integer-sum") {
      total += LittleEndian(x);
    } else if (name == "byte-concat-length") {
      total += static_cast<int64_t>(x.size());
    } else {
      return std::nullopt;
    }
  }
  return total;
}

CheckReport CheckAggWrap(uint64_t seed, int cases) {
  static constexpr std::array<std::string_view, 3> kNames = {
      "byte-sum", "integer-sum", "byte-concat-length"};
  SeededRng rng(seed);
  CheckReport report;
  for (int c = 0; c < cases; ++c) {
    ++report.cases;
    const std::string_view name = kNames[rng.Uniform(kNames.size())];
    const auto n = static_cast<int64_t>(1 + rng.Uniform(8));
    FunctionSpec inner;
    inner.name = std::string(name);
    std::unique_ptr<StatefulFunction> f = *MakeStatefulFunction(AggSpec(inner, n));
    std::vector<Bytes> inputs;
    FunctionState state;
    SeededRng rand = rng.Derive(fmt::format("case-{}", c));
    bool ok = true;
    std::optional<Bytes> y;
    for (int64_t i = 0; i < n; ++i) {
      inputs.push_back(RandomInput(rng, name));
      absl::StatusOr<StepResult> step = f->Evaluate(inputs.back(), state, rand);
      if (!step.ok() || step->y.pending() != (i + 1 < n)) {
        ok = false;
        break;
      }
      state = step->state;
      if (!step->y.pending()) y = step->y.value();
    }
    const std::optional<int64_t> want = ReferenceValue(name, inputs);
    ok = ok && y.has_value() && DecodeInt(*y) == want && state.empty();
    if (!ok && ++report.mismatches == 1) {
      report.first_failure = fmt::format("case {}: {} n={}", c, name, n);
    }
  }
  return report;
}

CheckReport CheckAggSBatches(uint64_t seed, int cases) {
  SeededRng rng(seed);
  CheckReport report;
  FunctionSpec inner;
  inner.name = "running-total";
  for (int c = 0; c < cases; ++c) {
    ++report.cases;
    std::unique_ptr<StatefulFunction> f = *MakeStatefulFunction(AggSSpec(inner));
    FunctionState state;
    SeededRng rand = rng.Derive(fmt::format("case-{}", c));
    int64_t oracle_total = 0;
    bool ok = true;
    const uint64_t batches = 1 + rng.Uniform(5);
    for (uint64_t b = 0; b < batches && ok; ++b) {
      const auto n = static_cast<int64_t>(rng.Uniform(6));
      absl::StatusOr<StepResult> set = f->Evaluate(EncodeInt(n), state, rand);
      if (!set.ok()) {
        ok = false;
        break;
      }
      state = set->state;
      if (n == 0) {
        ok = !set->y.pending() && DecodeInt(set->y.value()) == oracle_total;
        continue;
      }
      ok = !set->y.pending() && DecodeInt(set->y.value()) == n;
      for (int64_t i = 0; i < n && ok; ++i) {
        Bytes x = rng.Draw(rng.Uniform(6));
        for (uint8_t v : x) oracle_total += v;
        absl::StatusOr<StepResult> step = f->Evaluate(x, state, rand);
        if (!step.ok()) {
          ok = false;
          break;
        }
        state = step->state;
        if (i + 1 < n) {
          ok = step->y.pending();
        } else {
          ok = !step->y.pending() && DecodeInt(step->y.value()) == oracle_total &&
               !state.Has(kStateExpected) && state.GetList(kStateInputs).empty();
        }
      }
    }
    if (!ok && ++report.mismatches == 1) {
      report.first_failure = fmt::format("case {}", c);
    }
  }
  return report;
}

}  // namespace vaultsim::testing
