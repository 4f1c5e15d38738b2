#include "adaptchain/semantics.hpp"

#include <algorithm>

namespace adaptchain {

namespace {

[[noreturn]] void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

std::string squote(std::string_view s) { return "'" + std::string(s) + "'"; }

void require_same_interface(const AvailabilityVector& u, const AvailabilityVector& v) {
  if (u.interface()->id() != v.interface()->id() || u.arity() != v.arity())
    fail(ErrorKind::InterfaceMismatch, "vectors over " + squote(u.interface()->id()) + " and " +
                                           squote(v.interface()->id()) + " cannot be combined");
}

} // namespace

AvailabilityVector tuple_union(const AvailabilityVector& u, const AvailabilityVector& v) {
  require_same_interface(u, v);
  std::vector<ValueSet> out = u.components();
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] |= v.component(i);
  return {u.interface(), std::move(out)};
}

bool tuple_subset(const AvailabilityVector& u, const AvailabilityVector& v) {
  require_same_interface(u, v);
  for (std::size_t i = 0; i < u.arity(); ++i)
    if (!u.component(i).is_subset_of(v.component(i)))
      return false;
  return true;
}

AvailabilityVector apply_adaptation(const Adapter& adapter, const AvailabilityVector& p) {
  const auto& source = *adapter.source();
  if (p.interface()->id() != source.id() || p.arity() != source.arity())
    fail(ErrorKind::InterfaceMismatch, "adapter " + squote(adapter.id()) + " expects a vector over " +
                                           squote(source.id()) + ", got one over " +
                                           squote(p.interface()->id()));

  std::vector<std::vector<std::size_t>> choices;
  choices.reserve(p.arity());
  for (const auto& component : p.components())
    choices.push_back(component.indices());

  auto result = bottom_vector(adapter.target()).components();

  // Odometer over the Cartesian product of p's components.
  std::vector<std::size_t> cursor(choices.size(), 0);
  std::vector<std::size_t> tuple(choices.size());
  while (true) {
    for (std::size_t i = 0; i < choices.size(); ++i)
      tuple[i] = choices[i][cursor[i]];
    const auto& out = adapter.lookup(tuple);
    for (std::size_t j = 0; j < result.size(); ++j)
      result[j] |= out[j];

    std::size_t i = 0;
    for (; i < cursor.size(); ++i) {
      if (++cursor[i] < choices[i].size())
        break;
      cursor[i] = 0;
    }
    if (i == cursor.size())
      break;
  }
  return {adapter.target(), std::move(result)};
}

std::vector<std::string> AdaptationPipeline::chain_ids() const {
  std::vector<std::string> ids;
  ids.reserve(chain_.size());
  for (const auto& a : chain_)
    ids.push_back(a->id());
  return ids;
}

bool AdaptationPipeline::visits(std::string_view interface_id) const {
  if (from_->id() == interface_id)
    return true;
  return std::any_of(chain_.begin(), chain_.end(),
                     [&](const AdapterPtr& a) { return a->target()->id() == interface_id; });
}

AdaptationPipeline identity_pipeline(const InterfacePtr& interface) {
  AdaptationPipeline pipeline;
  pipeline.from_ = interface;
  pipeline.to_ = interface;
  return pipeline;
}

AdaptationPipeline prepend(const AdapterPtr& adapter, const AdaptationPipeline& pipeline) {
  if (adapter->target()->id() != pipeline.from()->id())
    fail(ErrorKind::EndpointMismatch, "adapter " + squote(adapter->id()) + " targets " +
                                          squote(adapter->target()->id()) +
                                          " but the chain starts at " +
                                          squote(pipeline.from()->id()));
  if (pipeline.visits(adapter->source()->id()))
    fail(ErrorKind::CycleDetected, "adapter " + squote(adapter->id()) + " would revisit " +
                                       squote(adapter->source()->id()));
  AdaptationPipeline out;
  out.chain_.reserve(pipeline.chain_.size() + 1);
  out.chain_.push_back(adapter);
  out.chain_.insert(out.chain_.end(), pipeline.chain_.begin(), pipeline.chain_.end());
  out.from_ = adapter->source();
  out.to_ = pipeline.to_;
  return out;
}

AdaptationPipeline compose(const AdaptationPipeline& first, const AdaptationPipeline& second) {
  if (first.to()->id() != second.from()->id())
    fail(ErrorKind::EndpointMismatch, "chain ending at " + squote(first.to()->id()) +
                                          " cannot feed a chain starting at " +
                                          squote(second.from()->id()));
  for (const auto& a : second.chain_)
    if (first.visits(a->target()->id()))
      fail(ErrorKind::CycleDetected, "adapter " + squote(a->id()) + " would revisit " +
                                         squote(a->target()->id()));
  AdaptationPipeline out;
  out.chain_ = first.chain_;
  out.chain_.insert(out.chain_.end(), second.chain_.begin(), second.chain_.end());
  out.from_ = first.from_;
  out.to_ = second.to_;
  return out;
}

AdaptationPipeline make_pipeline(const AdapterGraph& graph, const std::vector<std::string>& ids,
                                 const std::string& from_if_empty) {
  if (ids.empty())
    return identity_pipeline(graph.interface(from_if_empty));
  const auto& last = graph.adapter(ids.back());
  auto pipeline = identity_pipeline(last->target());
  for (auto it = ids.rbegin(); it != ids.rend(); ++it)
    pipeline = prepend(graph.adapter(*it), pipeline);
  return pipeline;
}

AvailabilityVector apply_pipeline(const AdaptationPipeline& pipeline, const AvailabilityVector& p) {
  if (p.interface()->id() != pipeline.from()->id())
    fail(ErrorKind::InterfaceMismatch, "chain starts at " + squote(pipeline.from()->id()) +
                                           " but the vector is over " +
                                           squote(p.interface()->id()));
  AvailabilityVector current = p;
  for (const auto& adapter : pipeline.chain())
    current = apply_adaptation(*adapter, current);
  return current;
}

FunctionSizes function_sizes(const Interface& source) {
  FunctionSizes sizes{1, 1};
  for (const auto& m : source.methods()) {
    sizes.dependency_size *= m.domain.size();
    sizes.adaptation_size <<= m.domain.size();
  }
  return sizes;
}

FunctionSizes function_sizes(const Adapter& adapter) { return function_sizes(*adapter.source()); }

CapExceededError::CapExceededError(const BigCount& required, std::uint64_t cap)
    : Error(ErrorKind::CapExceeded, "tabulation needs " + required.str() + " rows, cap is " +
                                        std::to_string(cap)),
      required_(required) {}

const AvailabilityVector& TabulatedAdaptation::lookup(const AvailabilityVector& p) const {
  if (p.interface()->id() != source_->id())
    fail(ErrorKind::InterfaceMismatch, "table " + squote(label_) + " expects a vector over " +
                                           squote(source_->id()));
  return rows_.at(p.components());
}

const AvailabilityVector& TabulatedAdaptation::lookup(std::vector<ValueSet> raw) const {
  return lookup(normalize_vector(source_, std::move(raw)));
}

TabulatedAdaptation tabulate_function(InterfacePtr source, InterfacePtr target, std::string label,
                                      std::uint64_t cap, const VectorFunction& fn) {
  const auto sizes = function_sizes(*source);
  if (sizes.adaptation_size > cap)
    throw CapExceededError(sizes.adaptation_size, cap);

  TabulatedAdaptation table;
  table.label_ = std::move(label);
  table.source_ = source;
  table.target_ = std::move(target);
  table.raw_rows_ = sizes.adaptation_size.convert_to<std::uint64_t>();

  // Each component ranges over {bot} ∪ S for every subset S of the
  // non-bottom values, encoded as a mask over indices 1..d-1.
  const auto& methods = source->methods();
  std::vector<std::uint64_t> masks(methods.size(), 0);
  while (true) {
    std::vector<ValueSet> key;
    key.reserve(methods.size());
    for (std::size_t i = 0; i < methods.size(); ++i) {
      ValueSet set = ValueSet::bottom(methods[i].domain.size());
      for (std::size_t b = 0; b + 1 < methods[i].domain.size(); ++b)
        if ((masks[i] >> b) & 1u)
          set.insert(b + 1);
      key.push_back(std::move(set));
    }
    AvailabilityVector p(source, key);
    auto row = fn(p);
    if (row.interface()->id() != table.target_->id())
      fail(ErrorKind::InterfaceMismatch, "table " + squote(table.label_) +
                                             ": function produced a vector over " +
                                             squote(row.interface()->id()));
    table.rows_.emplace(std::move(key), std::move(row));

    std::size_t i = 0;
    for (; i < masks.size(); ++i) {
      if (++masks[i] < (std::uint64_t{1} << (methods[i].domain.size() - 1)))
        break;
      masks[i] = 0;
    }
    if (i == masks.size())
      break;
  }
  return table;
}

TabulatedAdaptation tabulate_pipeline(const AdaptationPipeline& pipeline, std::uint64_t cap,
                                      std::string label) {
  if (label.empty())
    label = pipeline.from()->id() + "->" + pipeline.to()->id();
  return tabulate_function(pipeline.from(), pipeline.to(), std::move(label), cap,
                           [&](const AvailabilityVector& p) { return apply_pipeline(pipeline, p); });
}

TabulatedAdaptation tabulate_adaptation(const AdapterPtr& adapter, std::uint64_t cap) {
  return tabulate_function(adapter->source(), adapter->target(), adapter->id(), cap,
                           [&](const AvailabilityVector& p) { return apply_adaptation(*adapter, p); });
}

} // namespace adaptchain
