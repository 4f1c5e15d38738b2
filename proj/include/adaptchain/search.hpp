#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "adaptchain/model.hpp"
#include "adaptchain/semantics.hpp"

namespace adaptchain {

/// Weight per (interface, method, value). Unlisted values weigh 1.0 and
/// bottom always weighs 0.
class WeightMap {
public:
  void set(std::string interface_id, std::string method, std::string value, double weight);
  double weight(std::string_view interface_id, std::string_view method,
                std::string_view value) const;
  bool empty() const noexcept { return weights_.empty(); }
  const auto& entries() const noexcept { return weights_; }

  /// Rejects entries naming interfaces, methods or values not in `graph`.
  void validate(const AdapterGraph& graph) const;

  /// Weighted count of the non-bottom values of `v`, summed in method then
  /// canonical value order.
  double weighted_count(const AvailabilityVector& v) const;

private:
  std::map<std::tuple<std::string, std::string, std::string>, double, std::less<>> weights_;
};

/// Parses `interface.method.value = weight` lines; `#` starts a comment.
WeightMap parse_weights(std::string_view text);

/// Chain ids in application order (first adapter consumes the source).
using Chain = std::vector<std::string>;

struct ChainResult {
  Chain chain;
  std::string source;
  std::string target;
  AvailabilityVector final_vector;
  double score = 0.0;
};

/// Score of a pipeline: weighted count of non-bottom values in the image of
/// the full vector of its start interface.
double count_abstract(const AdaptationPipeline& pipeline, const WeightMap& weights = {});

/// State of the best-first search. Open chains are ordered by descending
/// score, then ascending length, then lexicographic adapter ids.
class SearchFrontier {
public:
  struct Node {
    AdaptationPipeline pipeline;
    AvailabilityVector image;  // pipeline applied to 1_from
    double score = 0.0;
  };

  struct OpenOrder {
    bool operator()(const std::pair<double, Chain>& a, const std::pair<double, Chain>& b) const;
  };

  bool has_open() const noexcept { return !open_.empty(); }
  bool seen(const Chain& chain) const { return nodes_.contains(chain); }

  void push(Chain chain, Node node);
  /// Removes and returns the best open chain.
  Chain pop_best();
  void discard(const Chain& chain) { discarded_.insert(chain); }
  const Node& node(const Chain& chain) const { return nodes_.at(chain); }

  const std::set<std::pair<double, Chain>, OpenOrder>& open() const noexcept { return open_; }
  const std::set<Chain>& discarded() const noexcept { return discarded_; }

private:
  std::set<std::pair<double, Chain>, OpenOrder> open_;
  std::set<Chain> discarded_;
  std::map<Chain, Node> nodes_;
};

/// Best-first search backward from `target`. Returns a chain maximizing
/// count_abstract over all acyclic chains from any of `sources` to `target`.
ChainResult greedy_chain(const AdapterGraph& graph, const std::set<std::string>& sources,
                         const std::string& target, const WeightMap& weights = {});

inline constexpr std::uint64_t kDefaultChainLimit = 1'000'000;

/// Every acyclic chain from `source` to `target`, ordered by length then
/// lexicographically. Throws TooLarge once more than `limit` chains exist.
std::vector<Chain> enumerate_chains(const AdapterGraph& graph, const std::string& source,
                                    const std::string& target,
                                    std::uint64_t limit = kDefaultChainLimit);

/// Brute force: scores every acyclic chain and keeps the first maximal one
/// in enumeration order.
ChainResult oracle_optimal(const AdapterGraph& graph, const std::set<std::string>& sources,
                           const std::string& target, const WeightMap& weights = {},
                           std::uint64_t limit = kDefaultChainLimit);

} // namespace adaptchain
