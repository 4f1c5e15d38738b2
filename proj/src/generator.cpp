#include "adaptchain/generator.hpp"

#include <cmath>
#include <vector>

namespace adaptchain {

namespace {

// Refuses to enumerate dependency tables larger than this.
constexpr std::size_t kMaxInputTuples = std::size_t{1} << 20;

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorKind::InvalidParams, message);
}

} // namespace

void GenParams::validate() const {
  if (interface_count == 0)
    invalid("interface_count must be at least 1");
  if (methods_per_interface.min == 0 || methods_per_interface.min > methods_per_interface.max)
    invalid("methods_per_interface must be a nonempty range starting at 1 or more");
  if (values_per_method.min == 0 || values_per_method.min > values_per_method.max)
    invalid("values_per_method must be a nonempty range starting at 1 or more");
  if (!(entry_density >= 0.0 && entry_density <= 1.0))
    invalid("entry_density must lie in [0, 1]");
  double tuples = std::pow(static_cast<double>(values_per_method.max + 1),
                           static_cast<double>(methods_per_interface.max));
  if (adapter_count > 0 && tuples > static_cast<double>(kMaxInputTuples))
    invalid("interfaces may need more than 2^20 dependency entries per adapter");
}

std::size_t InstanceGenerator::below(std::size_t n) {
  return n == 0 ? 0 : static_cast<std::size_t>(next() % n);
}

std::size_t InstanceGenerator::between(SizeRange range) {
  return range.min + below(range.max - range.min + 1);
}

double InstanceGenerator::unit() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

bool InstanceGenerator::chance(double p) { return unit() < p; }

InterfacePtr InstanceGenerator::interface(std::string id, SizeRange methods, SizeRange values) {
  std::vector<MethodValues> specs;
  const auto method_count = between(methods);
  for (std::size_t m = 0; m < method_count; ++m) {
    std::vector<std::string> names;
    const auto value_count = between(values);
    for (std::size_t v = 0; v < value_count; ++v)
      names.push_back("v" + std::to_string(v));
    specs.emplace_back("m" + std::to_string(m), std::move(names));
  }
  return build_interface(std::move(id), specs);
}

AdapterPtr InstanceGenerator::adapter(std::string id, InterfacePtr source, InterfacePtr target,
                                      double density) {
  std::vector<DependencyEntry> entries;
  std::vector<std::size_t> tuple(source->arity(), 0);
  while (true) {
    if (chance(density)) {
      DependencyEntry entry{tuple, {}};
      for (const auto& method : target->methods()) {
        ValueSet out = ValueSet::bottom(method.domain.size());
        for (std::size_t v = 1; v < method.domain.size(); ++v)
          if (chance(0.5))
            out.insert(v);
        entry.output.push_back(std::move(out));
      }
      entries.push_back(std::move(entry));
    }
    std::size_t i = 0;
    for (; i < tuple.size(); ++i) {
      if (++tuple[i] < source->method(i).domain.size())
        break;
      tuple[i] = 0;
    }
    if (i == tuple.size())
      break;
  }
  return build_adapter(std::move(id), std::move(source), std::move(target), std::move(entries));
}

AvailabilityVector InstanceGenerator::vector(const InterfacePtr& interface) {
  std::vector<ValueSet> sets;
  for (const auto& method : interface->methods()) {
    ValueSet set = ValueSet::bottom(method.domain.size());
    for (std::size_t v = 1; v < method.domain.size(); ++v)
      if (chance(0.5))
        set.insert(v);
    sets.push_back(std::move(set));
  }
  return {interface, std::move(sets)};
}

GeneratedInstance random_instance(const GenParams& params) {
  params.validate();
  InstanceGenerator gen(params.seed);

  std::vector<InterfacePtr> interfaces;
  for (std::size_t i = 0; i < params.interface_count; ++i)
    interfaces.push_back(gen.interface("I" + std::to_string(i), params.methods_per_interface,
                                       params.values_per_method));

  std::vector<AdapterPtr> adapters;
  for (std::size_t a = 0; a < params.adapter_count; ++a) {
    const auto& source = interfaces[gen.below(interfaces.size())];
    const auto& target = interfaces[gen.below(interfaces.size())];
    adapters.push_back(gen.adapter("A" + std::to_string(a), source, target, params.entry_density));
  }

  const auto source = gen.below(interfaces.size());
  auto target = source;
  if (interfaces.size() >= 2)
    target = (source + 1 + gen.below(interfaces.size() - 1)) % interfaces.size();

  return {build_graph(interfaces, std::move(adapters)), interfaces[source]->id(),
          interfaces[target]->id()};
}

} // namespace adaptchain
