#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace adaptchain {

/// Subset of a lifted abstract domain, stored as a bitset over domain
/// indices. Index 0 is always "bot".
class ValueSet {
public:
  ValueSet() = default;
  explicit ValueSet(std::size_t universe);

  static ValueSet bottom(std::size_t universe);
  static ValueSet full(std::size_t universe);

  std::size_t universe() const noexcept { return universe_; }
  bool contains(std::size_t index) const noexcept;
  void insert(std::size_t index);
  void erase(std::size_t index);
  std::size_t count() const noexcept;
  bool has_bottom() const noexcept { return contains(0); }

  /// Ascending domain indices.
  std::vector<std::size_t> indices() const;

  ValueSet& operator|=(const ValueSet& other);
  bool is_subset_of(const ValueSet& other) const noexcept;

  friend bool operator==(const ValueSet&, const ValueSet&) = default;
  friend std::strong_ordering operator<=>(const ValueSet&, const ValueSet&) = default;

private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

inline ValueSet operator|(ValueSet lhs, const ValueSet& rhs) {
  lhs |= rhs;
  return lhs;
}

} // namespace adaptchain
