#include "adaptchain/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace adaptchain {

namespace {

// Rendered identically to the bottom token, so it may not name a regular value.
constexpr std::string_view kBottomGlyph = "⊥";

[[noreturn]] void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

std::string squote(std::string_view s) { return "'" + std::string(s) + "'"; }

void require_token(std::string_view what, std::string_view token) {
  if (!is_valid_token(token))
    fail(ErrorKind::SyntaxError, std::string(what) + " " + squote(token) + " is not a valid token");
}

ValueSet lift_output(const ValueSet& set, std::size_t universe, const std::string& context) {
  if (set.universe() != universe)
    fail(ErrorKind::UnknownValue, context + ": value set is not over the method's domain");
  ValueSet lifted = set;
  lifted.insert(0);
  return lifted;
}

ValueSet named_set(const AbstractDomain& domain, const std::vector<std::string>& names,
                   const std::string& context) {
  ValueSet set = ValueSet::bottom(domain.size());
  for (const auto& name : names) {
    auto index = domain.index_of(name);
    if (!index)
      fail(ErrorKind::UnknownValue, context + ": unknown value " + squote(name));
    set.insert(*index);
  }
  return set;
}

Adapter::Output named_output(const Interface& target,
                             const std::vector<std::vector<std::string>>& sets,
                             const std::string& context) {
  if (sets.size() != target.arity())
    fail(ErrorKind::ArityMismatch, context + ": expected " + std::to_string(target.arity()) +
                                       " output sets for " + squote(target.id()) + ", got " +
                                       std::to_string(sets.size()));
  Adapter::Output out;
  out.reserve(sets.size());
  for (std::size_t j = 0; j < sets.size(); ++j) {
    const auto& method = target.method(j);
    out.push_back(named_set(method.domain, sets[j], context + " method " + squote(method.name)));
  }
  return out;
}

} // namespace

bool is_valid_token(std::string_view token) noexcept {
  if (token.empty())
    return false;
  return std::none_of(token.begin(), token.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '.' || c == ',' ||
           c == ';' || c == ':' || c == '{' || c == '}';
  });
}

AbstractDomain AbstractDomain::lift(std::string_view method, const std::vector<std::string>& names) {
  std::set<std::string> seen;
  for (const auto& name : names) {
    require_token("value", name);
    if (name == kBottomGlyph)
      fail(ErrorKind::ReservedName, "method " + squote(method) + ": value " + squote(name) +
                                        " is reserved for bottom");
    if (!seen.insert(name).second)
      fail(ErrorKind::DuplicateAbstractValue,
           "method " + squote(method) + ": duplicate value " + squote(name));
  }
  seen.erase(std::string(kBottom));
  if (seen.empty())
    fail(ErrorKind::EmptyDomain, "method " + squote(method) + " has no non-bottom values");
  AbstractDomain domain;
  domain.names_.reserve(seen.size() + 1);
  domain.names_.emplace_back(kBottom);
  domain.names_.insert(domain.names_.end(), seen.begin(), seen.end());
  return domain;
}

std::optional<std::size_t> AbstractDomain::index_of(std::string_view name) const {
  if (name == kBottom)
    return 0;
  auto it = std::lower_bound(names_.begin() + 1, names_.end(), name);
  if (it == names_.end() || *it != name)
    return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

Interface::Interface(std::string id, std::vector<MethodSpec> methods)
    : id_(std::move(id)), methods_(std::move(methods)) {
  require_token("interface id", id_);
  if (methods_.empty())
    fail(ErrorKind::EmptyDomain, "interface " + squote(id_) + " has no methods");
  std::set<std::string_view> names;
  for (const auto& m : methods_) {
    require_token("method name", m.name);
    if (!names.insert(m.name).second)
      fail(ErrorKind::DuplicateMethodName,
           "interface " + squote(id_) + ": duplicate method " + squote(m.name));
    if (m.domain.size() < 2 || m.domain.name(0) != kBottom)
      fail(ErrorKind::EmptyDomain,
           "interface " + squote(id_) + ": method " + squote(m.name) + " has no lifted domain");
  }
}

std::optional<std::size_t> Interface::method_index(std::string_view name) const {
  for (std::size_t i = 0; i < methods_.size(); ++i)
    if (methods_[i].name == name)
      return i;
  return std::nullopt;
}

InterfacePtr build_interface(std::string id, const std::vector<MethodValues>& methods) {
  std::vector<MethodSpec> specs;
  specs.reserve(methods.size());
  for (const auto& [name, values] : methods) {
    try {
      specs.push_back({name, AbstractDomain::lift(name, values)});
    } catch (const Error& e) {
      fail(e.kind(), "interface " + squote(id) + ": " + e.what());
    }
  }
  return std::make_shared<const Interface>(std::move(id), std::move(specs));
}

const Adapter::Output& Adapter::lookup(std::span<const std::size_t> input) const {
  auto it = entries_.find(input);
  return it == entries_.end() ? default_output_ : it->second;
}

bool operator==(const Adapter& a, const Adapter& b) {
  return a.id_ == b.id_ && *a.source_ == *b.source_ && *a.target_ == *b.target_ &&
         a.entries_ == b.entries_ && a.default_output_ == b.default_output_;
}

AdapterPtr build_adapter(std::string id, InterfacePtr source, InterfacePtr target,
                         std::vector<DependencyEntry> entries,
                         std::optional<Adapter::Output> default_output) {
  require_token("adapter id", id);
  if (!source || !target)
    fail(ErrorKind::UnknownInterface, "adapter " + squote(id) + ": missing endpoint interface");

  const std::string context = "adapter " + squote(id);
  auto lift = [&](const Adapter::Output& out, const std::string& where) {
    if (out.size() != target->arity())
      fail(ErrorKind::ArityMismatch, where + ": expected " + std::to_string(target->arity()) +
                                         " output sets, got " + std::to_string(out.size()));
    Adapter::Output lifted;
    lifted.reserve(out.size());
    for (std::size_t j = 0; j < out.size(); ++j)
      lifted.push_back(lift_output(out[j], target->method(j).domain.size(),
                                   where + " method " + squote(target->method(j).name)));
    return lifted;
  };

  auto adapter = std::make_shared<Adapter>();
  adapter->id_ = id;
  adapter->source_ = source;
  adapter->target_ = target;
  if (default_output) {
    adapter->default_output_ = lift(*default_output, context + " default_output");
  } else {
    for (const auto& m : target->methods())
      adapter->default_output_.push_back(ValueSet::bottom(m.domain.size()));
  }

  for (std::size_t k = 0; k < entries.size(); ++k) {
    auto& entry = entries[k];
    const std::string where = context + " entry " + std::to_string(k);
    if (entry.input.size() != source->arity())
      fail(ErrorKind::ArityMismatch, where + ": expected " + std::to_string(source->arity()) +
                                         " input values, got " + std::to_string(entry.input.size()));
    for (std::size_t i = 0; i < entry.input.size(); ++i)
      if (entry.input[i] >= source->method(i).domain.size())
        fail(ErrorKind::UnknownValue,
             where + " method " + squote(source->method(i).name) + ": input index out of domain");
    auto output = lift(entry.output, where);
    if (!adapter->entries_.emplace(std::move(entry.input), std::move(output)).second)
      fail(ErrorKind::DuplicateInput, where + ": duplicate input tuple");
  }
  return adapter;
}

AdapterPtr build_adapter(std::string id, InterfacePtr source, InterfacePtr target,
                         const std::vector<NamedEntry>& entries,
                         const std::optional<std::vector<std::vector<std::string>>>& default_output) {
  if (!source || !target)
    fail(ErrorKind::UnknownInterface, "adapter " + squote(id) + ": missing endpoint interface");
  const std::string context = "adapter " + squote(id);

  std::vector<DependencyEntry> indexed;
  indexed.reserve(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& entry = entries[k];
    const std::string where = context + " entry " + std::to_string(k);
    if (entry.input.size() != source->arity())
      fail(ErrorKind::ArityMismatch, where + ": expected " + std::to_string(source->arity()) +
                                         " input values for " + squote(source->id()) + ", got " +
                                         std::to_string(entry.input.size()));
    DependencyEntry row;
    for (std::size_t i = 0; i < entry.input.size(); ++i) {
      const auto& method = source->method(i);
      auto index = method.domain.index_of(entry.input[i]);
      if (!index)
        fail(ErrorKind::UnknownValue, where + " method " + squote(method.name) +
                                          ": unknown value " + squote(entry.input[i]));
      row.input.push_back(*index);
    }
    row.output = named_output(*target, entry.output, where);
    indexed.push_back(std::move(row));
  }

  std::optional<Adapter::Output> fallback;
  if (default_output)
    fallback = named_output(*target, *default_output, context + " default_output");
  return build_adapter(std::move(id), std::move(source), std::move(target), std::move(indexed),
                       std::move(fallback));
}

const InterfacePtr& AdapterGraph::interface(std::string_view id) const {
  auto it = interfaces_.find(id);
  if (it == interfaces_.end())
    fail(ErrorKind::UnknownInterface, "unknown interface " + squote(id));
  return it->second;
}

const AdapterPtr& AdapterGraph::adapter(std::string_view id) const {
  auto it = adapters_.find(id);
  if (it == adapters_.end())
    fail(ErrorKind::UnknownAdapter, "unknown adapter " + squote(id));
  return it->second;
}

bool AdapterGraph::has_interface(std::string_view id) const { return interfaces_.contains(id); }

const std::vector<AdapterPtr>& AdapterGraph::incoming(std::string_view id) const {
  static const std::vector<AdapterPtr> none;
  auto it = incoming_.find(id);
  return it == incoming_.end() ? none : it->second;
}

bool operator==(const AdapterGraph& a, const AdapterGraph& b) {
  auto same = [](const auto& x, const auto& y) {
    return std::equal(x.begin(), x.end(), y.begin(), y.end(), [](const auto& l, const auto& r) {
      return l.first == r.first && *l.second == *r.second;
    });
  };
  return same(a.interfaces_, b.interfaces_) && same(a.adapters_, b.adapters_);
}

AdapterGraph build_graph(std::vector<InterfacePtr> interfaces, std::vector<AdapterPtr> adapters) {
  AdapterGraph graph;
  for (auto& iface : interfaces) {
    const std::string id = iface->id();
    if (!graph.interfaces_.emplace(id, std::move(iface)).second)
      fail(ErrorKind::DuplicateId, "duplicate interface id " + squote(id));
  }
  for (auto& adapter : adapters) {
    const std::string id = adapter->id();
    auto check = [&](const InterfacePtr& endpoint, std::string_view role) {
      auto it = graph.interfaces_.find(endpoint->id());
      if (it == graph.interfaces_.end())
        fail(ErrorKind::UnknownInterface, "adapter " + squote(id) + ": " + std::string(role) +
                                              " interface " + squote(endpoint->id()) +
                                              " is not declared");
      if (*it->second != *endpoint)
        fail(ErrorKind::InterfaceMismatch, "adapter " + squote(id) + ": " + std::string(role) +
                                               " interface " + squote(endpoint->id()) +
                                               " differs from the declared one");
    };
    check(adapter->source(), "source");
    check(adapter->target(), "target");
    if (!graph.adapters_.emplace(id, std::move(adapter)).second)
      fail(ErrorKind::DuplicateId, "duplicate adapter id " + squote(id));
  }
  for (const auto& [id, adapter] : graph.adapters_)
    graph.incoming_[adapter->target()->id()].push_back(adapter);
  return graph;
}

AvailabilityVector::AvailabilityVector(InterfacePtr interface, std::vector<ValueSet> components)
    : interface_(std::move(interface)), components_(std::move(components)) {
  if (components_.size() != interface_->arity())
    fail(ErrorKind::ArityMismatch, "vector over " + squote(interface_->id()) + ": expected " +
                                       std::to_string(interface_->arity()) + " components, got " +
                                       std::to_string(components_.size()));
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const auto& method = interface_->method(i);
    if (components_[i].universe() != method.domain.size())
      fail(ErrorKind::UnknownValue, "vector over " + squote(interface_->id()) + " method " +
                                        squote(method.name) + ": set is not over its domain");
    if (!components_[i].has_bottom())
      fail(ErrorKind::UnknownValue, "vector over " + squote(interface_->id()) + " method " +
                                        squote(method.name) + ": component lacks bot");
  }
}

std::string AvailabilityVector::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const auto& method = interface_->method(i);
    if (i != 0)
      out << ' ';
    out << method.name << ":{";
    bool first = true;
    for (auto index : components_[i].indices()) {
      if (!first)
        out << ',';
      out << method.domain.name(index);
      first = false;
    }
    out << '}';
  }
  return out.str();
}

bool operator==(const AvailabilityVector& a, const AvailabilityVector& b) {
  return a.interface_->id() == b.interface_->id() && a.components_ == b.components_;
}

AvailabilityVector full_vector(const InterfacePtr& interface) {
  std::vector<ValueSet> sets;
  for (const auto& m : interface->methods())
    sets.push_back(ValueSet::full(m.domain.size()));
  return {interface, std::move(sets)};
}

AvailabilityVector bottom_vector(const InterfacePtr& interface) {
  std::vector<ValueSet> sets;
  for (const auto& m : interface->methods())
    sets.push_back(ValueSet::bottom(m.domain.size()));
  return {interface, std::move(sets)};
}

AvailabilityVector normalize_vector(const InterfacePtr& interface,
                                    const std::vector<std::vector<std::string>>& sets) {
  if (sets.size() != interface->arity())
    fail(ErrorKind::ArityMismatch, "vector over " + squote(interface->id()) + ": expected " +
                                       std::to_string(interface->arity()) + " sets, got " +
                                       std::to_string(sets.size()));
  std::vector<ValueSet> components;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto& method = interface->method(i);
    components.push_back(named_set(method.domain, sets[i],
                                   "vector over " + squote(interface->id()) + " method " +
                                       squote(method.name)));
  }
  return {interface, std::move(components)};
}

AvailabilityVector normalize_vector(const InterfacePtr& interface, std::vector<ValueSet> sets) {
  if (sets.size() != interface->arity())
    fail(ErrorKind::ArityMismatch, "vector over " + squote(interface->id()) + ": expected " +
                                       std::to_string(interface->arity()) + " sets, got " +
                                       std::to_string(sets.size()));
  for (std::size_t i = 0; i < sets.size(); ++i)
    sets[i] = lift_output(sets[i], interface->method(i).domain.size(),
                          "vector over " + squote(interface->id()) + " method " +
                              squote(interface->method(i).name));
  return {interface, std::move(sets)};
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos)
      break;
    start = pos + 1;
  }
  return parts;
}

} // namespace

AvailabilityVector parse_vector(const InterfacePtr& interface, std::string_view text) {
  std::vector<std::vector<std::string>> sets(interface->arity());
  std::vector<bool> given(interface->arity(), false);
  for (auto part : split(text, ';')) {
    part = trim(part);
    if (part.empty())
      continue;
    auto colon = part.find(':');
    if (colon == std::string_view::npos)
      fail(ErrorKind::SyntaxError,
           "vector component " + squote(part) + " is not of the form method:values");
    auto name = trim(part.substr(0, colon));
    auto index = interface->method_index(name);
    if (!index)
      fail(ErrorKind::UnknownMethod,
           "interface " + squote(interface->id()) + " has no method " + squote(name));
    if (given[*index])
      fail(ErrorKind::DuplicateMethodName, "vector lists method " + squote(name) + " twice");
    given[*index] = true;
    for (auto value : split(part.substr(colon + 1), ',')) {
      value = trim(value);
      if (!value.empty())
        sets[*index].emplace_back(value);
    }
  }
  return normalize_vector(interface, sets);
}

} // namespace adaptchain
