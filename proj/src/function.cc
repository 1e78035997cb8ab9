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

#include "vaultsim/function.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <set>
#include <utility>

#include "fmt/format.h"
#include "fmt/ranges.h"
#include "vaultsim/crypto.h"
#include "vaultsim/heatmap.h"
#include "vaultsim/status.h"

namespace vaultsim {
namespace {

constexpr std::string_view kLeakageName = "f0";
constexpr std::string_view kAggName = "agg";
constexpr std::string_view kAggSName = "aggs";
constexpr std::string_view kRunningTotalKey = "total";

// Shape of a registered built-in: parameter names with defaults (nullopt
// marks a required parameter) and how many inner specs it wraps.
struct Signature {
  std::map<std::string, std::optional<int64_t>> params;
  size_t inner = 0;
};

const std::map<std::string, Signature, std::less<>>& Registry() {
  static const auto* registry = new std::map<std::string, Signature, std::less<>>{
      {"f0", {}},
      {"byte-sum", {}},
      {"integer-sum", {}},
      {"byte-concat-length", {}},
      {"running-total", {}},
      {"coin-flip", {}},
      {"heatmap",
       {{{"cells", std::nullopt},
         {"q", std::nullopt},
         {"days", std::nullopt},
         {"home", 0},
         {"strict", 0}}}},
      {"agg", {{{"n", std::nullopt}}, 1}},
      {"aggs", {{}, 1}},
  };
  return *registry;
}

// Resolves defaults and rejects anything the registry does not describe.
absl::StatusOr<FunctionSpec> Normalize(const FunctionSpec& spec) {
  auto it = Registry().find(spec.name);
  if (it == Registry().end()) {
    return MakeError(ErrorKind::kUnknownFunction,
                     fmt::format("unregistered function {}", spec.name));
  }
  const Signature& sig = it->second;
  FunctionSpec out;
  out.name = spec.name;
  for (const auto& [key, value] : spec.params) {
    if (!sig.params.contains(key)) {
      return MakeError(ErrorKind::kUnknownFunction,
                       fmt::format("{} has no parameter {}", spec.name, key));
    }
  }
  for (const auto& [key, fallback] : sig.params) {
    auto given = spec.params.find(key);
    if (given != spec.params.end()) {
      out.params[key] = given->second;
    } else if (fallback.has_value()) {
      out.params[key] = *fallback;
    } else {
      return MakeError(ErrorKind::kUnknownFunction,
                       fmt::format("{} needs parameter {}", spec.name, key));
    }
  }
  if (spec.inner.size() != sig.inner) {
    return MakeError(ErrorKind::kUnknownFunction,
                     fmt::format("{} takes {} inner function(s)", spec.name,
                                 sig.inner));
  }
  for (const FunctionSpec& inner : spec.inner) {
    if (inner.name == kLeakageName || inner.name == kAggName ||
        inner.name == kAggSName) {
      return MakeError(ErrorKind::kUnknownFunction,
                       fmt::format("{} cannot be wrapped", inner.name));
    }
    VS_ASSIGN_OR_RETURN(FunctionSpec resolved, Normalize(inner));
    out.inner.push_back(std::move(resolved));
  }
  if (out.name == kAggName && out.params["n"] < 1) {
    return MakeError(ErrorKind::kUnknownFunction, "agg arity must be >= 1");
  }
  if (out.name == "heatmap") {
    VS_RETURN_IF_ERROR(HeatmapParams::FromSpec(out).status());
  }
  return out;
}

int64_t ByteTotal(const std::vector<Bytes>& inputs) {
  int64_t total = 0;
  for (const Bytes& x : inputs) {
    total = std::accumulate(x.begin(), x.end(), total);
  }
  return total;
}

// Stateless list functions defined by a plain reduction.
class ReduceFunction final : public ListFunction {
 public:
  using Reducer = int64_t (*)(const std::vector<Bytes>&);
  explicit ReduceFunction(Reducer reduce) : reduce_(reduce) {}

  absl::StatusOr<Output> Evaluate(const std::vector<Bytes>& inputs,
                                  const FunctionState& state,
                                  SeededRng&) const override {
    return Output{EncodeInt(reduce_(inputs)), state};
  }

 private:
  Reducer reduce_;
};

class RunningTotalFunction final : public ListFunction {
 public:
  absl::StatusOr<Output> Evaluate(const std::vector<Bytes>& inputs,
                                  const FunctionState& state,
                                  SeededRng&) const override {
    uint64_t total = state.GetU64(kRunningTotalKey).value_or(0);
    total += static_cast<uint64_t>(ByteTotal(inputs));
    FunctionState next = state;
    next.SetU64(kRunningTotalKey, total);
    return Output{EncodeInt(static_cast<int64_t>(total)), std::move(next)};
  }
};

class CoinFlipFunction final : public ListFunction {
 public:
  absl::StatusOr<Output> Evaluate(const std::vector<Bytes>&,
                                  const FunctionState& state,
                                  SeededRng& rand) const override {
    return Output{Bytes{static_cast<uint8_t>(rand.Uniform(2))}, state};
  }
};

class LeakageFunction final : public StatefulFunction {
 public:
  absl::StatusOr<StepResult> Evaluate(ByteView x, const FunctionState& state,
                                      SeededRng&) const override {
    return StepResult{AggregatorOutput::Result(EncodeInt(
                          static_cast<int64_t>(LeakageLength(x)))),
                      state};
  }
};

// A list function applied to a single input: F([x], s).
class SingleInput final : public StatefulFunction {
 public:
  explicit SingleInput(std::unique_ptr<ListFunction> inner)
      : inner_(std::move(inner)) {}

  absl::StatusOr<StepResult> Evaluate(ByteView x, const FunctionState& state,
                                      SeededRng& rand) const override {
    VS_ASSIGN_OR_RETURN(
        ListFunction::Output out,
        inner_->Evaluate({Bytes(x.begin(), x.end())}, state, rand));
    return StepResult{AggregatorOutput::Result(std::move(out.y)),
                      std::move(out.state)};
  }

 private:
  std::unique_ptr<ListFunction> inner_;
};

class AggFunction final : public StatefulFunction {
 public:
  AggFunction(std::unique_ptr<ListFunction> inner, uint64_t n)
      : inner_(std::move(inner)), n_(n) {}

  absl::StatusOr<StepResult> Evaluate(ByteView x, const FunctionState& state,
                                      SeededRng& rand) const override {
    std::vector<Bytes> inputs = state.GetList(kStateInputs);
    inputs.emplace_back(x.begin(), x.end());
    if (inputs.size() < n_) {
      FunctionState next = state;
      next.SetList(kStateInputs, inputs);
      return StepResult{AggregatorOutput::Pending(), std::move(next)};
    }
    VS_ASSIGN_OR_RETURN(ListFunction::Output out,
                        inner_->Evaluate(inputs, FunctionState(), rand));
    return StepResult{AggregatorOutput::Result(std::move(out.y)),
                      FunctionState()};
  }

 private:
  std::unique_ptr<ListFunction> inner_;
  uint64_t n_;
};

class AggSFunction final : public StatefulFunction {
 public:
  explicit AggSFunction(std::unique_ptr<ListFunction> inner)
      : inner_(std::move(inner)) {}

  absl::StatusOr<StepResult> Evaluate(ByteView x, const FunctionState& state,
                                      SeededRng& rand) const override {
    std::optional<uint64_t> expected = state.GetU64(kStateExpected);
    if (!expected.has_value()) {
      std::optional<int64_t> n = DecodeInt(x);
      if (!n.has_value() || *n < 0) {
        return MakeError(ErrorKind::kRejectInit,
                         "batch size must be a non-negative integer");
      }
      if (*n == 0) return Complete({}, state, rand);
      FunctionState next = state;
      next.SetU64(kStateExpected, static_cast<uint64_t>(*n));
      next.SetList(kStateInputs, {});
      return StepResult{AggregatorOutput::Result(EncodeInt(*n)),
                        std::move(next)};
    }
    std::vector<Bytes> inputs = state.GetList(kStateInputs);
    inputs.emplace_back(x.begin(), x.end());
    if (inputs.size() < *expected) {
      FunctionState next = state;
      next.SetList(kStateInputs, inputs);
      return StepResult{AggregatorOutput::Pending(), std::move(next)};
    }
    return Complete(inputs, state, rand);
  }

 private:
  absl::StatusOr<StepResult> Complete(const std::vector<Bytes>& inputs,
                                      const FunctionState& state,
                                      SeededRng& rand) const {
    VS_ASSIGN_OR_RETURN(
        ListFunction::Output out,
        inner_->Evaluate(inputs, state.GetNested(kStateInner), rand));
    FunctionState next;
    next.SetNested(kStateInner, out.state);
    return StepResult{AggregatorOutput::Result(std::move(out.y)),
                      std::move(next)};
  }

  std::unique_ptr<ListFunction> inner_;
};

absl::StatusOr<std::unique_ptr<ListFunction>> BuildList(
    const FunctionSpec& spec) {
  if (spec.name == "byte-sum") {
    return std::make_unique<ReduceFunction>(&ByteTotal);
  }
  if (spec.name == "integer-sum") {
    return std::make_unique<ReduceFunction>(
        +[](const std::vector<Bytes>& inputs) {
          int64_t total = 0;
          for (const Bytes& x : inputs) total += DecodeInt(x).value_or(0);
          return total;
        });
  }
  if (spec.name == "byte-concat-length") {
    return std::make_unique<ReduceFunction>(
        +[](const std::vector<Bytes>& inputs) {
          int64_t total = 0;
          for (const Bytes& x : inputs) total += static_cast<int64_t>(x.size());
          return total;
        });
  }
  if (spec.name == "running-total") {
    return std::make_unique<RunningTotalFunction>();
  }
  if (spec.name == "coin-flip") return std::make_unique<CoinFlipFunction>();
  if (spec.name == "heatmap") {
    VS_ASSIGN_OR_RETURN(HeatmapParams params, HeatmapParams::FromSpec(spec));
    return MakeHeatmapFunction(params);
  }
  return MakeError(ErrorKind::kUnknownFunction,
                   fmt::format("{} is not a list function", spec.name));
}

// Minimal recursive-descent parser for the text form.
class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : text_(text) {}

  absl::StatusOr<FunctionSpec> ParseAll() {
    VS_ASSIGN_OR_RETURN(FunctionSpec spec, ParseSpec());
    if (pos_ != text_.size()) return Fail("trailing characters");
    return spec;
  }

 private:
  absl::StatusOr<FunctionSpec> ParseSpec() {
    FunctionSpec spec;
    spec.name = Identifier();
    if (spec.name.empty()) return Fail("expected a function name");
    if (Consume('(')) {
      while (true) {
        std::string key = Identifier();
        if (key.empty() || !Consume('=')) return Fail("expected key=value");
        VS_ASSIGN_OR_RETURN(int64_t value, Integer());
        if (!spec.params.emplace(key, value).second) {
          return Fail(fmt::format("duplicate parameter {}", key));
        }
        if (Consume(')')) break;
        if (!Consume(',')) return Fail("expected ',' or ')'");
      }
    }
    if (Consume('<')) {
      VS_ASSIGN_OR_RETURN(FunctionSpec inner, ParseSpec());
      spec.inner.push_back(std::move(inner));
      if (!Consume('>')) return Fail("expected '>'");
    }
    return spec;
  }

  std::string Identifier() {
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '-' || text_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  absl::StatusOr<int64_t> Integer() {
    int64_t value = 0;
    auto [end, ec] =
        std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (ec != std::errc()) return Fail("expected an integer");
    pos_ = end - text_.data();
    return value;
  }

  bool Consume(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  absl::Status Fail(std::string_view what) const {
    return MakeError(ErrorKind::kParseError,
                     fmt::format("function spec '{}' at offset {}: {}", text_,
                                 pos_, what));
  }

  std::string_view text_;
  size_t pos_ = 0;
};

Bytes EncodeList(const std::vector<Bytes>& items) {
  ByteWriter w;
  w.PutU32(static_cast<uint32_t>(items.size()));
  for (const Bytes& item : items) w.PutField(item);
  return std::move(w).bytes();
}

absl::StatusOr<std::vector<Bytes>> DecodeList(ByteView bytes) {
  ByteReader r(bytes);
  VS_ASSIGN_OR_RETURN(uint32_t count, r.ReadU32());
  std::vector<Bytes> items;
  for (uint32_t i = 0; i < count; ++i) {
    VS_ASSIGN_OR_RETURN(Bytes item, r.ReadField());
    items.push_back(std::move(item));
  }
  VS_RETURN_IF_ERROR(r.ExpectDone());
  return items;
}

}  // namespace

bool FunctionState::Has(std::string_view key) const {
  return entries_.find(key) != entries_.end();
}

void FunctionState::Erase(std::string_view key) {
  auto it = entries_.find(key);
  if (it != entries_.end()) entries_.erase(it);
}

std::optional<Bytes> FunctionState::Get(std::string_view key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void FunctionState::Set(std::string_view key, Bytes value) {
  entries_.insert_or_assign(std::string(key), std::move(value));
}

std::optional<uint64_t> FunctionState::GetU64(std::string_view key) const {
  std::optional<Bytes> raw = Get(key);
  if (!raw.has_value()) return std::nullopt;
  std::optional<int64_t> v = DecodeInt(*raw);
  if (!v.has_value()) return std::nullopt;
  return static_cast<uint64_t>(*v);
}

void FunctionState::SetU64(std::string_view key, uint64_t value) {
  Set(key, EncodeInt(static_cast<int64_t>(value)));
}

std::vector<Bytes> FunctionState::GetList(std::string_view key) const {
  std::optional<Bytes> raw = Get(key);
  if (!raw.has_value()) return {};
  absl::StatusOr<std::vector<Bytes>> items = DecodeList(*raw);
  return items.ok() ? *std::move(items) : std::vector<Bytes>{};
}

void FunctionState::SetList(std::string_view key,
                            const std::vector<Bytes>& items) {
  Set(key, EncodeList(items));
}

FunctionState FunctionState::GetNested(std::string_view key) const {
  std::optional<Bytes> raw = Get(key);
  if (!raw.has_value()) return {};
  absl::StatusOr<FunctionState> nested = Parse(*raw);
  return nested.ok() ? *std::move(nested) : FunctionState{};
}

void FunctionState::SetNested(std::string_view key,
                              const FunctionState& nested) {
  Set(key, nested.Serialize());
}

Bytes FunctionState::Serialize() const {
  ByteWriter w;
  w.PutU32(static_cast<uint32_t>(entries_.size()));
  for (const auto& [key, value] : entries_) {
    w.PutField(key);
    w.PutField(value);
  }
  return std::move(w).bytes();
}

absl::StatusOr<FunctionState> FunctionState::Parse(ByteView bytes) {
  ByteReader r(bytes);
  VS_ASSIGN_OR_RETURN(uint32_t count, r.ReadU32());
  FunctionState state;
  std::string previous;
  for (uint32_t i = 0; i < count; ++i) {
    VS_ASSIGN_OR_RETURN(std::string key, r.ReadStringField());
    VS_ASSIGN_OR_RETURN(Bytes value, r.ReadField());
    if (i > 0 && key <= previous) {
      return MakeError(ErrorKind::kMalformed, "state keys out of order");
    }
    previous = key;
    state.entries_.emplace(std::move(key), std::move(value));
  }
  VS_RETURN_IF_ERROR(r.ExpectDone());
  return state;
}

absl::StatusOr<FunctionSpec> FunctionSpec::Parse(std::string_view text) {
  return SpecParser(text).ParseAll();
}

std::string FunctionSpec::ToString() const {
  std::string out = name;
  if (!params.empty()) {
    std::vector<std::string> parts;
    for (const auto& [key, value] : params) {
      parts.push_back(fmt::format("{}={}", key, value));
    }
    out += fmt::format("({})", fmt::join(parts, ","));
  }
  for (const FunctionSpec& i : inner) out += fmt::format("<{}>", i.ToString());
  return out;
}

FunctionSpec LeakageSpec() { return FunctionSpec{std::string(kLeakageName), {}, {}}; }

FunctionSpec AggSpec(FunctionSpec inner, int64_t n) {
  return FunctionSpec{std::string(kAggName), {{"n", n}}, {std::move(inner)}};
}

FunctionSpec AggSSpec(FunctionSpec inner) {
  return FunctionSpec{std::string(kAggSName), {}, {std::move(inner)}};
}

namespace {

void WriteCanonical(const FunctionSpec& spec, ByteWriter& w) {
  w.PutField(spec.name);
  w.PutU32(static_cast<uint32_t>(spec.params.size()));
  for (const auto& [key, value] : spec.params) {
    w.PutField(key);
    w.PutI64(value);
  }
  w.PutU32(static_cast<uint32_t>(spec.inner.size()));
  for (const FunctionSpec& inner : spec.inner) WriteCanonical(inner, w);
}

}  // namespace

absl::StatusOr<Bytes> CanonicalEncoding(const FunctionSpec& spec) {
  VS_ASSIGN_OR_RETURN(FunctionSpec resolved, Normalize(spec));
  ByteWriter w;
  w.PutField("vaultsim-fn-v1");
  WriteCanonical(resolved, w);
  return std::move(w).bytes();
}

absl::StatusOr<Bytes> Descriptor(const FunctionSpec& spec) {
  VS_ASSIGN_OR_RETURN(Bytes canonical, CanonicalEncoding(spec));
  if (spec.name == kLeakageName) return Bytes(32, 0);
  return Sha256(canonical);
}

bool IsLeakageDescriptor(ByteView descriptor) {
  return descriptor.size() == 32 &&
         std::all_of(descriptor.begin(), descriptor.end(),
                     [](uint8_t b) { return b == 0; });
}

absl::StatusOr<std::unique_ptr<ListFunction>> MakeListFunction(
    const FunctionSpec& spec) {
  VS_ASSIGN_OR_RETURN(FunctionSpec resolved, Normalize(spec));
  return BuildList(resolved);
}

absl::StatusOr<std::unique_ptr<StatefulFunction>> MakeStatefulFunction(
    const FunctionSpec& spec) {
  VS_ASSIGN_OR_RETURN(FunctionSpec resolved, Normalize(spec));
  if (resolved.name == kLeakageName) {
    return std::make_unique<LeakageFunction>();
  }
  if (resolved.name == kAggName) {
    VS_ASSIGN_OR_RETURN(auto inner, BuildList(resolved.inner.front()));
    return AggWrap(std::move(inner),
                   static_cast<uint64_t>(resolved.params.at("n")));
  }
  if (resolved.name == kAggSName) {
    VS_ASSIGN_OR_RETURN(auto inner, BuildList(resolved.inner.front()));
    return AggSWrap(std::move(inner));
  }
  VS_ASSIGN_OR_RETURN(auto list, BuildList(resolved));
  return std::make_unique<SingleInput>(std::move(list));
}

uint64_t LeakageLength(ByteView x) { return x.size(); }

std::unique_ptr<StatefulFunction> AggWrap(std::unique_ptr<ListFunction> inner,
                                          uint64_t n) {
  return std::make_unique<AggFunction>(std::move(inner), std::max<uint64_t>(n, 1));
}

std::unique_ptr<StatefulFunction> AggSWrap(std::unique_ptr<ListFunction> inner) {
  return std::make_unique<AggSFunction>(std::move(inner));
}

Bytes EncodeInt(int64_t v) {
  ByteWriter w;
  w.PutI64(v);
  return std::move(w).bytes();
}

std::optional<int64_t> DecodeInt(ByteView b) {
  if (b.size() != 8) return std::nullopt;
  ByteReader r(b);
  absl::StatusOr<uint64_t> v = r.ReadU64();
  if (!v.ok()) return std::nullopt;
  return static_cast<int64_t>(*v);
}

}  // namespace vaultsim
