#include "adaptchain/value_set.hpp"

#include <bit>
#include <stdexcept>

namespace adaptchain {

namespace {
constexpr std::size_t kWordBits = 64;
}

ValueSet::ValueSet(std::size_t universe)
    : universe_(universe), words_((universe + kWordBits - 1) / kWordBits, 0) {}

ValueSet ValueSet::bottom(std::size_t universe) {
  ValueSet set(universe);
  set.insert(0);
  return set;
}

ValueSet ValueSet::full(std::size_t universe) {
  ValueSet set(universe);
  for (std::size_t i = 0; i < universe; ++i)
    set.insert(i);
  return set;
}

bool ValueSet::contains(std::size_t index) const noexcept {
  if (index >= universe_)
    return false;
  return (words_[index / kWordBits] >> (index % kWordBits)) & 1u;
}

void ValueSet::insert(std::size_t index) {
  if (index >= universe_)
    throw std::out_of_range("ValueSet::insert: index outside domain");
  words_[index / kWordBits] |= std::uint64_t{1} << (index % kWordBits);
}

void ValueSet::erase(std::size_t index) {
  if (index >= universe_)
    return;
  words_[index / kWordBits] &= ~(std::uint64_t{1} << (index % kWordBits));
}

std::size_t ValueSet::count() const noexcept {
  std::size_t n = 0;
  for (auto w : words_)
    n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<std::size_t> ValueSet::indices() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for (std::size_t w = 0; w < words_.size(); ++w) {
    auto bits = words_[w];
    while (bits != 0) {
      out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

ValueSet& ValueSet::operator|=(const ValueSet& other) {
  if (other.universe_ != universe_)
    throw std::invalid_argument("ValueSet: union over different domains");
  for (std::size_t w = 0; w < words_.size(); ++w)
    words_[w] |= other.words_[w];
  return *this;
}

bool ValueSet::is_subset_of(const ValueSet& other) const noexcept {
  if (other.universe_ != universe_)
    return false;
  for (std::size_t w = 0; w < words_.size(); ++w)
    if ((words_[w] & ~other.words_[w]) != 0)
      return false;
  return true;
}

} // namespace adaptchain
