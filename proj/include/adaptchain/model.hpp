#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "adaptchain/error.hpp"
#include "adaptchain/value_set.hpp"

namespace adaptchain {

/// Reserved token for the bottom abstract value.
inline constexpr std::string_view kBottom = "bot";

struct AbstractValue {
  std::string name;
  bool is_bottom = false;

  friend bool operator==(const AbstractValue&, const AbstractValue&) = default;
};

/// Lifted abstract argument domain of one method. Canonical order is "bot"
/// first, then the remaining names in lexicographic order, so a value's
/// index is stable and index 0 is always bottom.
class AbstractDomain {
public:
  /// Names may include "bot"; it is injected when missing.
  static AbstractDomain lift(std::string_view method, const std::vector<std::string>& names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t index) const { return names_.at(index); }
  AbstractValue value(std::size_t index) const { return {names_.at(index), index == 0}; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  friend bool operator==(const AbstractDomain&, const AbstractDomain&) = default;

private:
  std::vector<std::string> names_;
};

struct MethodSpec {
  std::string name;
  AbstractDomain domain;

  friend bool operator==(const MethodSpec&, const MethodSpec&) = default;
};

/// Method order is fixed at construction and defines tuple component order.
class Interface {
public:
  Interface(std::string id, std::vector<MethodSpec> methods);

  const std::string& id() const noexcept { return id_; }
  const std::vector<MethodSpec>& methods() const noexcept { return methods_; }
  std::size_t arity() const noexcept { return methods_.size(); }
  const MethodSpec& method(std::size_t index) const { return methods_.at(index); }
  std::optional<std::size_t> method_index(std::string_view name) const;

  friend bool operator==(const Interface&, const Interface&) = default;

private:
  std::string id_;
  std::vector<MethodSpec> methods_;
};

using InterfacePtr = std::shared_ptr<const Interface>;

using MethodValues = std::pair<std::string, std::vector<std::string>>;

/// Ids, method names and value names must be nonempty and free of
/// whitespace and the separators `.,;:{}`.
bool is_valid_token(std::string_view token) noexcept;

InterfacePtr build_interface(std::string id, const std::vector<MethodValues>& methods);

/// Transparent lexicographic order over index tuples, so lookups can use a
/// span without allocating.
struct TupleLess {
  using is_transparent = void;
  bool operator()(std::span<const std::size_t> a, std::span<const std::size_t> b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

/// Dependency row addressed by domain indices.
struct DependencyEntry {
  std::vector<std::size_t> input;
  std::vector<ValueSet> output;

  friend bool operator==(const DependencyEntry&, const DependencyEntry&) = default;
};

/// Dependency row addressed by value names, as written in documents.
struct NamedEntry {
  std::vector<std::string> input;
  std::vector<std::vector<std::string>> output;
};

/// An adapter together with its abstract dependency function. Lookup is
/// total: input tuples without an explicit entry map to the default output.
class Adapter {
public:
  using Output = std::vector<ValueSet>;
  using EntryMap = std::map<std::vector<std::size_t>, Output, TupleLess>;

  const std::string& id() const noexcept { return id_; }
  const InterfacePtr& source() const noexcept { return source_; }
  const InterfacePtr& target() const noexcept { return target_; }
  const EntryMap& entries() const noexcept { return entries_; }
  const Output& default_output() const noexcept { return default_output_; }

  const Output& lookup(std::span<const std::size_t> input) const;

  friend bool operator==(const Adapter& a, const Adapter& b);

private:
  friend std::shared_ptr<const Adapter> build_adapter(std::string, InterfacePtr, InterfacePtr,
                                                      std::vector<DependencyEntry>,
                                                      std::optional<Output>);

  std::string id_;
  InterfacePtr source_;
  InterfacePtr target_;
  EntryMap entries_;
  Output default_output_;
};

using AdapterPtr = std::shared_ptr<const Adapter>;

/// Index-level construction. Bot is injected into every output set.
AdapterPtr build_adapter(std::string id, InterfacePtr source, InterfacePtr target,
                         std::vector<DependencyEntry> entries,
                         std::optional<Adapter::Output> default_output = std::nullopt);

/// Name-level construction; validates every name against the domains.
AdapterPtr build_adapter(std::string id, InterfacePtr source, InterfacePtr target,
                         const std::vector<NamedEntry>& entries,
                         const std::optional<std::vector<std::vector<std::string>>>& default_output =
                             std::nullopt);

/// Directed multigraph of interfaces and adapters.
class AdapterGraph {
public:
  using InterfaceMap = std::map<std::string, InterfacePtr, std::less<>>;
  using AdapterMap = std::map<std::string, AdapterPtr, std::less<>>;

  const InterfaceMap& interfaces() const noexcept { return interfaces_; }
  const AdapterMap& adapters() const noexcept { return adapters_; }

  const InterfacePtr& interface(std::string_view id) const;
  const AdapterPtr& adapter(std::string_view id) const;
  bool has_interface(std::string_view id) const;

  /// Adapters whose target is `id`, ordered by adapter id.
  const std::vector<AdapterPtr>& incoming(std::string_view id) const;

  friend bool operator==(const AdapterGraph& a, const AdapterGraph& b);

private:
  friend AdapterGraph build_graph(std::vector<InterfacePtr>, std::vector<AdapterPtr>);

  InterfaceMap interfaces_;
  AdapterMap adapters_;
  std::map<std::string, std::vector<AdapterPtr>, std::less<>> incoming_;
};

AdapterGraph build_graph(std::vector<InterfacePtr> interfaces, std::vector<AdapterPtr> adapters);

/// Tuple of value sets over one interface. Every component contains "bot".
class AvailabilityVector {
public:
  AvailabilityVector(InterfacePtr interface, std::vector<ValueSet> components);

  const InterfacePtr& interface() const noexcept { return interface_; }
  const std::vector<ValueSet>& components() const noexcept { return components_; }
  const ValueSet& component(std::size_t index) const { return components_.at(index); }
  std::size_t arity() const noexcept { return components_.size(); }

  /// `play:{bot,MP4} stop:{bot}` in method order.
  std::string to_string() const;

  friend bool operator==(const AvailabilityVector& a, const AvailabilityVector& b);

private:
  InterfacePtr interface_;
  std::vector<ValueSet> components_;
};

/// The full-capability vector 1_I.
AvailabilityVector full_vector(const InterfacePtr& interface);

/// [{bot}, ..., {bot}].
AvailabilityVector bottom_vector(const InterfacePtr& interface);

AvailabilityVector normalize_vector(const InterfacePtr& interface,
                                    const std::vector<std::vector<std::string>>& sets);

/// Same as above for index sets; injects bot and checks the universes.
AvailabilityVector normalize_vector(const InterfacePtr& interface, std::vector<ValueSet> sets);

/// Parses `playVideo:MOV,MKV;playAudio:MP3`. Unlisted methods get {bot}.
AvailabilityVector parse_vector(const InterfacePtr& interface, std::string_view text);

} // namespace adaptchain
