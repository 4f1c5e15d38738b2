#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

#include "adaptchain/model.hpp"

namespace adaptchain {

struct SizeRange {
  std::size_t min = 1;
  std::size_t max = 1;
};

struct GenParams {
  std::size_t interface_count = 3;
  SizeRange methods_per_interface{1, 2};
  SizeRange values_per_method{1, 2};  ///< non-bottom values
  std::size_t adapter_count = 4;
  double entry_density = 0.5;
  std::uint64_t seed = 0;

  /// Throws InvalidParams.
  void validate() const;
};

/// Seeded source of random interfaces and adapters.
///
/// Draws come from std::mt19937_64, whose output sequence is fixed by the
/// C++ standard. Bounded integers use `draw % n` and probabilities compare
/// `draw >> 11` (53 bits) against `p * 2^53`; no std distribution is
/// involved, so instances are identical on every conforming platform.
class InstanceGenerator {
public:
  explicit InstanceGenerator(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  std::size_t below(std::size_t n);
  std::size_t between(SizeRange range);
  bool chance(double p);
  /// Uniform in [0, 1) with 53 bits of precision.
  double unit();

  /// Interface with methods m0.. and non-bottom values v0.. per method.
  InterfacePtr interface(std::string id, SizeRange methods, SizeRange values);

  /// Each input tuple (in index order) gets an explicit entry with
  /// probability `density`; outputs include each non-bottom value with
  /// probability 1/2. Unlisted tuples map to the all-{bot} default.
  AdapterPtr adapter(std::string id, InterfacePtr source, InterfacePtr target, double density);

  /// Random bot-normalized vector; each non-bottom value is kept with
  /// probability 1/2.
  AvailabilityVector vector(const InterfacePtr& interface);

private:
  std::mt19937_64 engine_;
};

struct GeneratedInstance {
  AdapterGraph graph;
  std::string source;
  std::string target;
};

/// Interfaces I0.., adapters A0.. with uniformly drawn endpoints (self-loops
/// possible). Suggested source and target are distinct when there are at
/// least two interfaces.
GeneratedInstance random_instance(const GenParams& params);

} // namespace adaptchain
