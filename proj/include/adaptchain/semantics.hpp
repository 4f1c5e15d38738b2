#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "adaptchain/model.hpp"

namespace adaptchain {

using BigCount = boost::multiprecision::cpp_int;

/// Default ceiling on raw tabulation size (2^20 rows).
inline constexpr std::uint64_t kDefaultTabulateCap = std::uint64_t{1} << 20;

AvailabilityVector tuple_union(const AvailabilityVector& u, const AvailabilityVector& v);
bool tuple_subset(const AvailabilityVector& u, const AvailabilityVector& v);

/// Lifts the dependency function to availability vectors: the componentwise
/// union of h(x) over every x in the Cartesian product of p's components.
AvailabilityVector apply_adaptation(const Adapter& adapter, const AvailabilityVector& p);

/// An acyclic chain of adapters, kept as a list and evaluated lazily.
/// Adapters are stored in application order: the first one consumes vectors
/// over `from()`.
class AdaptationPipeline {
public:
  const std::vector<AdapterPtr>& chain() const noexcept { return chain_; }
  const InterfacePtr& from() const noexcept { return from_; }
  const InterfacePtr& to() const noexcept { return to_; }
  bool empty() const noexcept { return chain_.empty(); }
  std::size_t size() const noexcept { return chain_.size(); }
  std::vector<std::string> chain_ids() const;
  bool visits(std::string_view interface_id) const;

private:
  friend AdaptationPipeline identity_pipeline(const InterfacePtr&);
  friend AdaptationPipeline prepend(const AdapterPtr&, const AdaptationPipeline&);
  friend AdaptationPipeline compose(const AdaptationPipeline&, const AdaptationPipeline&);

  std::vector<AdapterPtr> chain_;
  InterfacePtr from_;
  InterfacePtr to_;
};

AdaptationPipeline identity_pipeline(const InterfacePtr& interface);

/// Pipeline computing `pipeline ∘ f_adapter`.
AdaptationPipeline prepend(const AdapterPtr& adapter, const AdaptationPipeline& pipeline);

/// Runs `first` then `second`; `first.to()` must equal `second.from()`.
AdaptationPipeline compose(const AdaptationPipeline& first, const AdaptationPipeline& second);

/// Builds a pipeline from adapter ids resolved in `graph`, in application order.
AdaptationPipeline make_pipeline(const AdapterGraph& graph, const std::vector<std::string>& ids,
                                 const std::string& from_if_empty = {});

AvailabilityVector apply_pipeline(const AdaptationPipeline& pipeline, const AvailabilityVector& p);

/// Exact table sizes over the source interface's lifted domains.
struct FunctionSizes {
  BigCount dependency_size;  ///< prod d_i
  BigCount adaptation_size;  ///< prod 2^{d_i}
};

FunctionSizes function_sizes(const Interface& source);
FunctionSizes function_sizes(const Adapter& adapter);

/// Explicit adaptation function. Rows are keyed by bot-normalized source
/// vectors (prod 2^{d_i - 1} keys); each key stands for the 2^n raw subset
/// tuples that collapse onto it under bot injection, so `row_count()`
/// reports prod 2^{d_i}.
using VectorFunction = std::function<AvailabilityVector(const AvailabilityVector&)>;

class TabulatedAdaptation {
public:
  using Key = std::vector<ValueSet>;

  const std::string& label() const noexcept { return label_; }
  const InterfacePtr& source() const noexcept { return source_; }
  const InterfacePtr& target() const noexcept { return target_; }
  const std::map<Key, AvailabilityVector>& rows() const noexcept { return rows_; }

  std::uint64_t row_count() const noexcept { return raw_rows_; }
  std::uint64_t distinct_rows() const noexcept { return rows_.size(); }

  const AvailabilityVector& lookup(const AvailabilityVector& p) const;

  /// Raw subset tuple, possibly without bot; normalized before the lookup.
  const AvailabilityVector& lookup(std::vector<ValueSet> raw) const;

private:
  friend TabulatedAdaptation tabulate_function(InterfacePtr, InterfacePtr, std::string,
                                               std::uint64_t, const VectorFunction&);

  std::string label_;
  InterfacePtr source_;
  InterfacePtr target_;
  std::map<Key, AvailabilityVector> rows_;
  std::uint64_t raw_rows_ = 0;
};

/// Raised when a table would exceed the cap; carries the exact raw size.
class CapExceededError : public Error {
public:
  CapExceededError(const BigCount& required, std::uint64_t cap);

  const BigCount& required() const noexcept { return required_; }

private:
  BigCount required_;
};

TabulatedAdaptation tabulate_adaptation(const AdapterPtr& adapter,
                                        std::uint64_t cap = kDefaultTabulateCap);

/// Tabulates `fn` over every bot-normalized vector of `source`.
TabulatedAdaptation tabulate_function(InterfacePtr source, InterfacePtr target, std::string label,
                                      std::uint64_t cap, const VectorFunction& fn);

/// Materializes the composite function of a whole pipeline.
TabulatedAdaptation tabulate_pipeline(const AdaptationPipeline& pipeline,
                                      std::uint64_t cap = kDefaultTabulateCap,
                                      std::string label = {});

} // namespace adaptchain
