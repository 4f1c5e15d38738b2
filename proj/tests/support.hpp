#pragma once

// Test-only helpers. The reference evaluator below works on plain name sets
// and explicit tuple enumeration; it shares nothing with the library's
// bitset-based evaluation path.

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "adaptchain/document.hpp"
#include "adaptchain/model.hpp"

namespace adaptchain::testing {

using NameSet = std::set<std::string>;
using NameVector = std::vector<NameSet>;

inline const AdapterGraph& video_graph() {
  static const AdapterGraph graph = load_graph("video-example");
  return graph;
}

inline NameVector names_of(const AvailabilityVector& v) {
  NameVector out;
  for (std::size_t i = 0; i < v.arity(); ++i) {
    NameSet set;
    for (auto index : v.component(i).indices())
      set.insert(v.interface()->method(i).domain.name(index));
    out.push_back(std::move(set));
  }
  return out;
}

/// Dependency function as an explicit name-level table, read back through
/// the public entry list and default output only.
inline std::map<std::vector<std::string>, NameVector> name_table(const Adapter& adapter) {
  const auto& source = *adapter.source();
  const auto& target = *adapter.target();
  auto to_names = [&](const Adapter::Output& out) {
    NameVector v;
    for (std::size_t j = 0; j < out.size(); ++j) {
      NameSet s;
      for (std::size_t k = 0; k < target.method(j).domain.size(); ++k)
        if (out[j].contains(k))
          s.insert(target.method(j).domain.name(k));
      v.push_back(std::move(s));
    }
    return v;
  };
  std::map<std::vector<std::string>, NameVector> table;
  // Every tuple over the source domains, defaulted first.
  std::vector<std::string> tuple;
  std::function<void(std::size_t)> fill = [&](std::size_t i) {
    if (i == source.arity()) {
      table[tuple] = to_names(adapter.default_output());
      return;
    }
    for (const auto& name : source.method(i).domain.names()) {
      tuple.push_back(name);
      fill(i + 1);
      tuple.pop_back();
    }
  };
  fill(0);
  for (const auto& [input, output] : adapter.entries()) {
    std::vector<std::string> key;
    for (std::size_t i = 0; i < input.size(); ++i)
      key.push_back(source.method(i).domain.name(input[i]));
    table[key] = to_names(output);
  }
  return table;
}

/// q = union of h(x) over x in the Cartesian product of p, by brute force.
inline NameVector reference_apply(const Adapter& adapter, const NameVector& p) {
  const auto table = name_table(adapter);
  NameVector q(adapter.target()->arity(), NameSet{"bot"});
  for (const auto& [input, output] : table) {
    bool inside = true;
    for (std::size_t i = 0; i < input.size(); ++i)
      inside = inside && p[i].contains(input[i]);
    if (!inside)
      continue;
    for (std::size_t j = 0; j < output.size(); ++j)
      q[j].insert(output[j].begin(), output[j].end());
  }
  return q;
}

inline bool names_subset(const NameVector& a, const NameVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (const auto& x : a[i])
      if (!b[i].contains(x))
        return false;
  return true;
}

} // namespace adaptchain::testing
