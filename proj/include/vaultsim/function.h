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

#ifndef VAULTSIM_FUNCTION_H_
#define VAULTSIM_FUNCTION_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "vaultsim/bytes.h"
#include "vaultsim/rng.h"

namespace vaultsim {

// Canonical serializable state of a stateful function. Keys are kept sorted so
// the encoding is a deterministic function of the contents; the empty map is
// the initial state.
class FunctionState {
 public:
  bool empty() const { return entries_.empty(); }
  bool Has(std::string_view key) const;
  void Erase(std::string_view key);

  std::optional<Bytes> Get(std::string_view key) const;
  void Set(std::string_view key, Bytes value);

  std::optional<uint64_t> GetU64(std::string_view key) const;
  void SetU64(std::string_view key, uint64_t value);

  std::vector<Bytes> GetList(std::string_view key) const;
  void SetList(std::string_view key, const std::vector<Bytes>& items);

  FunctionState GetNested(std::string_view key) const;
  void SetNested(std::string_view key, const FunctionState& nested);

  Bytes Serialize() const;
  static absl::StatusOr<FunctionState> Parse(ByteView bytes);

  bool operator==(const FunctionState&) const = default;

 private:
  std::map<std::string, Bytes, std::less<>> entries_;
};

// Result of one stateful evaluation: either Pending (the empty value) or a
// concrete output.
class AggregatorOutput {
 public:
  static AggregatorOutput Pending() { return AggregatorOutput(); }
  static AggregatorOutput Result(Bytes y) { return AggregatorOutput(std::move(y)); }

  bool pending() const { return !value_.has_value(); }
  const Bytes& value() const { return *value_; }
  const std::optional<Bytes>& as_optional() const { return value_; }

  bool operator==(const AggregatorOutput&) const = default;

 private:
  AggregatorOutput() = default;
  explicit AggregatorOutput(Bytes y) : value_(std::move(y)) {}
  std::optional<Bytes> value_;
};

struct StepResult {
  AggregatorOutput y;
  FunctionState state;
};

// A function over an ordered list of inputs, optionally stateful and
// randomized: (inputs, s; r) -> (y, s').
class ListFunction {
 public:
  struct Output {
    Bytes y;
    FunctionState state;
  };

  virtual ~ListFunction() = default;
  virtual absl::StatusOr<Output> Evaluate(const std::vector<Bytes>& inputs,
                                          const FunctionState& state,
                                          SeededRng& rand) const = 0;
};

// The function class evaluated by decryptors: (x, s; r) -> (y, s').
class StatefulFunction {
 public:
  virtual ~StatefulFunction() = default;
  virtual absl::StatusOr<StepResult> Evaluate(ByteView x,
                                              const FunctionState& state,
                                              SeededRng& rand) const = 0;
};

// Names a registered built-in together with its parameters. Wrappers ("agg",
// "aggs") carry exactly one inner spec.
//
// Text form: name[(key=value,...)][<inner>], e.g. "aggs<heatmap(cells=4,days=3,q=2)>"
// or "agg(n=3)<integer-sum>".
struct FunctionSpec {
  std::string name;
  std::map<std::string, int64_t> params;
  std::vector<FunctionSpec> inner;

  static absl::StatusOr<FunctionSpec> Parse(std::string_view text);
  std::string ToString() const;
  bool operator==(const FunctionSpec&) const = default;
};

FunctionSpec LeakageSpec();
FunctionSpec AggSpec(FunctionSpec inner, int64_t n);
FunctionSpec AggSSpec(FunctionSpec inner);

// Canonical encoding (name | sorted params with defaults filled | inner).
absl::StatusOr<Bytes> CanonicalEncoding(const FunctionSpec& spec);

// 32-byte descriptor used for signing and on the wire. The leakage function
// has the reserved all-zero descriptor; everything else is the SHA-256 of the
// canonical encoding. Unregistered names fail with UnknownFunction.
absl::StatusOr<Bytes> Descriptor(const FunctionSpec& spec);
bool IsLeakageDescriptor(ByteView descriptor);

absl::StatusOr<std::unique_ptr<ListFunction>> MakeListFunction(
    const FunctionSpec& spec);
absl::StatusOr<std::unique_ptr<StatefulFunction>> MakeStatefulFunction(
    const FunctionSpec& spec);

// Leakage function: the plaintext length in bytes.
uint64_t LeakageLength(ByteView x);

// The stateful compilers. `inner` must outlive neither: ownership moves in.
std::unique_ptr<StatefulFunction> AggWrap(std::unique_ptr<ListFunction> inner,
                                          uint64_t n);
std::unique_ptr<StatefulFunction> AggSWrap(std::unique_ptr<ListFunction> inner);

// Integers travel as 8-byte little-endian two's complement.
Bytes EncodeInt(int64_t v);
std::optional<int64_t> DecodeInt(ByteView b);

// Reserved state keys used by the compilers.
inline constexpr std::string_view kStateInputs = "inputs";
inline constexpr std::string_view kStateExpected = "n";
inline constexpr std::string_view kStateInner = "inner";

}  // namespace vaultsim

#endif  // VAULTSIM_FUNCTION_H_
