#include "adaptchain/search.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <iterator>
#include <optional>

namespace adaptchain {

namespace {

[[noreturn]] void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

std::string squote(std::string_view s) { return "'" + std::string(s) + "'"; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

bool chain_order(const Chain& a, const Chain& b) {
  if (a.size() != b.size())
    return a.size() < b.size();
  return a < b;
}

void require_interfaces(const AdapterGraph& graph, const std::set<std::string>& sources,
                        const std::string& target) {
  if (sources.empty())
    fail(ErrorKind::InvalidParams, "at least one source interface is required");
  for (const auto& s : sources)
    graph.interface(s);
  graph.interface(target);
}

ChainResult make_result(Chain chain, const AdaptationPipeline& pipeline, AvailabilityVector image,
                        double score) {
  return ChainResult{std::move(chain), pipeline.from()->id(), pipeline.to()->id(),
                     std::move(image), score};
}

} // namespace

void WeightMap::set(std::string interface_id, std::string method, std::string value,
                    double weight) {
  const std::string key = interface_id + "." + method + "." + value;
  if (!is_valid_token(interface_id) || !is_valid_token(method) || !is_valid_token(value))
    fail(ErrorKind::SyntaxError, "weight key " + squote(key) + " is malformed");
  if (value == kBottom)
    fail(ErrorKind::InvalidWeight, "weight key " + squote(key) + ": bot always weighs 0");
  if (!std::isfinite(weight) || weight < 0.0)
    fail(ErrorKind::InvalidWeight, "weight for " + squote(key) + " must be a finite nonnegative number");
  weights_[{std::move(interface_id), std::move(method), std::move(value)}] = weight;
}

double WeightMap::weight(std::string_view interface_id, std::string_view method,
                         std::string_view value) const {
  if (value == kBottom)
    return 0.0;
  auto it = weights_.find(std::tuple<std::string_view, std::string_view, std::string_view>{
      interface_id, method, value});
  return it == weights_.end() ? 1.0 : it->second;
}

void WeightMap::validate(const AdapterGraph& graph) const {
  for (const auto& [key, weight] : weights_) {
    const auto& [iface_id, method, value] = key;
    const auto& iface = graph.interface(iface_id);
    auto index = iface->method_index(method);
    if (!index)
      fail(ErrorKind::UnknownMethod, "weight for " + squote(iface_id + "." + method + "." + value) +
                                         ": interface has no method " + squote(method));
    if (!iface->method(*index).domain.index_of(value))
      fail(ErrorKind::UnknownValue, "weight for " + squote(iface_id + "." + method + "." + value) +
                                        ": method has no value " + squote(value));
  }
}

double WeightMap::weighted_count(const AvailabilityVector& v) const {
  const auto& iface = *v.interface();
  double total = 0.0;
  for (std::size_t i = 0; i < v.arity(); ++i) {
    const auto& method = iface.method(i);
    for (auto index : v.component(i).indices()) {
      if (index == 0)
        continue;
      total += weights_.empty() ? 1.0 : weight(iface.id(), method.name, method.domain.name(index));
    }
  }
  return total;
}

WeightMap parse_weights(std::string_view text) {
  WeightMap weights;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto eol = text.find('\n');
    auto line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty())
      continue;
    const std::string where = "weights line " + std::to_string(line_no);
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      fail(ErrorKind::SyntaxError, where + ": expected interface.method.value = weight");
    auto key = trim(line.substr(0, eq));
    auto number = trim(line.substr(eq + 1));
    auto dot1 = key.find('.');
    auto dot2 = dot1 == std::string_view::npos ? dot1 : key.find('.', dot1 + 1);
    if (dot2 == std::string_view::npos || key.find('.', dot2 + 1) != std::string_view::npos)
      fail(ErrorKind::SyntaxError, where + ": key " + squote(key) + " is not interface.method.value");
    double weight = 0.0;
    auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), weight);
    if (ec != std::errc{} || ptr != number.data() + number.size())
      fail(ErrorKind::SyntaxError, where + ": " + squote(number) + " is not a number");
    try {
      weights.set(std::string(key.substr(0, dot1)), std::string(key.substr(dot1 + 1, dot2 - dot1 - 1)),
                  std::string(key.substr(dot2 + 1)), weight);
    } catch (const Error& e) {
      fail(e.kind(), where + ": " + e.what());
    }
  }
  return weights;
}

double count_abstract(const AdaptationPipeline& pipeline, const WeightMap& weights) {
  return weights.weighted_count(apply_pipeline(pipeline, full_vector(pipeline.from())));
}

bool SearchFrontier::OpenOrder::operator()(const std::pair<double, Chain>& a,
                                           const std::pair<double, Chain>& b) const {
  if (a.first != b.first)
    return a.first > b.first;
  return chain_order(a.second, b.second);
}

void SearchFrontier::push(Chain chain, Node node) {
  open_.emplace(node.score, chain);
  nodes_.emplace(std::move(chain), std::move(node));
}

Chain SearchFrontier::pop_best() {
  auto it = open_.begin();
  Chain chain = it->second;
  open_.erase(it);
  return chain;
}

ChainResult greedy_chain(const AdapterGraph& graph, const std::set<std::string>& sources,
                         const std::string& target, const WeightMap& weights) {
  require_interfaces(graph, sources, target);

  const auto& goal = graph.interface(target);
  auto root = identity_pipeline(goal);
  auto root_image = full_vector(goal);
  const double root_score = weights.weighted_count(root_image);
  if (sources.contains(target))
    return make_result({}, root, std::move(root_image), root_score);

  SearchFrontier frontier;
  frontier.push({}, {root, root_image, root_score});

  while (frontier.has_open()) {
    Chain chain = frontier.pop_best();
    const auto& node = frontier.node(chain);
    if (!chain.empty() && sources.contains(node.pipeline.from()->id()))
      return make_result(chain, node.pipeline, node.image, node.score);

    for (const auto& edge : graph.incoming(node.pipeline.from()->id())) {
      if (node.pipeline.visits(edge->source()->id()))
        continue;
      Chain extended;
      extended.reserve(chain.size() + 1);
      extended.push_back(edge->id());
      extended.insert(extended.end(), chain.begin(), chain.end());
      if (frontier.seen(extended))
        continue;
      auto pipeline = prepend(edge, node.pipeline);
      auto image = apply_pipeline(node.pipeline, apply_adaptation(*edge, full_vector(edge->source())));
      const double score = weights.weighted_count(image);
      frontier.push(std::move(extended), {std::move(pipeline), std::move(image), score});
    }
    frontier.discard(chain);
  }

  std::string from;
  for (const auto& s : sources)
    from += (from.empty() ? "" : ",") + s;
  fail(ErrorKind::NoChain, "no acyclic chain from {" + from + "} to " + squote(target));
}

std::vector<Chain> enumerate_chains(const AdapterGraph& graph, const std::string& source,
                                    const std::string& target, std::uint64_t limit) {
  graph.interface(source);
  graph.interface(target);
  std::vector<Chain> chains;
  if (source == target) {
    chains.emplace_back();
    return chains;
  }

  // Backward depth-first walk from the target; `suffix` holds adapter ids in
  // reverse application order.
  std::set<std::string, std::less<>> visited{target};
  Chain suffix;
  std::function<void(const std::string&)> walk = [&](const std::string& at) {
    for (const auto& edge : graph.incoming(at)) {
      const auto& from = edge->source()->id();
      if (visited.contains(from))
        continue;
      suffix.push_back(edge->id());
      if (from == source) {
        if (chains.size() >= limit)
          fail(ErrorKind::TooLarge, "more than " + std::to_string(limit) + " chains from " +
                                        squote(source) + " to " + squote(target));
        chains.emplace_back(suffix.rbegin(), suffix.rend());
      } else {
        visited.insert(from);
        walk(from);
        visited.erase(from);
      }
      suffix.pop_back();
    }
  };
  walk(target);
  std::sort(chains.begin(), chains.end(), chain_order);
  return chains;
}

ChainResult oracle_optimal(const AdapterGraph& graph, const std::set<std::string>& sources,
                           const std::string& target, const WeightMap& weights,
                           std::uint64_t limit) {
  require_interfaces(graph, sources, target);

  std::vector<Chain> candidates;
  for (const auto& s : sources) {
    auto chains = enumerate_chains(graph, s, target, limit);
    if (candidates.size() + chains.size() > limit)
      fail(ErrorKind::TooLarge, "more than " + std::to_string(limit) + " candidate chains");
    std::move(chains.begin(), chains.end(), std::back_inserter(candidates));
  }
  std::sort(candidates.begin(), candidates.end(), chain_order);

  std::optional<ChainResult> best;
  for (const auto& chain : candidates) {
    auto pipeline = make_pipeline(graph, chain, target);
    auto image = apply_pipeline(pipeline, full_vector(pipeline.from()));
    const double score = weights.weighted_count(image);
    if (!best || score > best->score)
      best = make_result(chain, pipeline, std::move(image), score);
  }
  if (!best)
    fail(ErrorKind::NoChain, "no acyclic chain reaches " + squote(target));
  return *std::move(best);
}

} // namespace adaptchain
