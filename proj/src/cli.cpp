#include "adaptchain/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "adaptchain/document.hpp"
#include "adaptchain/generator.hpp"
#include "adaptchain/search.hpp"
#include "adaptchain/semantics.hpp"

namespace adaptchain {

namespace {

using json = nlohmann::json;

/// Bad command-line input that CLI11 itself cannot detect.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty())
      out.push_back(item);
  }
  return out;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i != 0)
      out += sep;
    out += items[i];
  }
  return out;
}

std::string format_number(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

json count_json(const BigCount& count) {
  if (count <= std::numeric_limits<std::uint64_t>::max())
    return count.convert_to<std::uint64_t>();
  return count.str();
}

json vector_json(const AvailabilityVector& v) {
  json out = json::array();
  const auto& iface = *v.interface();
  for (std::size_t i = 0; i < v.arity(); ++i) {
    json values = json::array();
    for (auto index : v.component(i).indices())
      values.push_back(iface.method(i).domain.name(index));
    out.push_back({{"method", iface.method(i).name}, {"values", std::move(values)}});
  }
  return out;
}

std::string chain_text(const Chain& chain) {
  return chain.empty() ? std::string("(empty)") : join(chain, ",");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorKind::IoError, "cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::uint64_t tabulate_cap() {
  const char* env = std::getenv("ADAPTCHAIN_TABULATE_CAP");
  if (env == nullptr)
    return kDefaultTabulateCap;
  std::string_view text(env);
  std::uint64_t cap = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), cap);
  if (ec != std::errc{} || ptr != text.data() + text.size() || cap == 0)
    throw UsageError("ADAPTCHAIN_TABULATE_CAP must be a positive integer, got '" +
                     std::string(text) + "'");
  return cap;
}

SizeRange parse_range(const std::string& text, const char* flag) {
  SizeRange range;
  auto dash = text.find('-');
  auto parse = [&](std::string_view part, std::size_t& into) {
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), into);
    if (ec != std::errc{} || ptr != part.data() + part.size())
      throw UsageError(std::string(flag) + " expects N or MIN-MAX, got '" + text + "'");
  };
  std::string_view view(text);
  if (dash == std::string::npos) {
    parse(view, range.min);
    range.max = range.min;
  } else {
    parse(view.substr(0, dash), range.min);
    parse(view.substr(dash + 1), range.max);
  }
  return range;
}

struct Options {
  std::string format = "text";
  std::string graph;
  // eval
  std::string chain;
  std::string from;
  std::string vector;
  bool has_vector = false;
  // chain / enumerate
  std::string source;
  std::string sources;
  std::string target;
  bool oracle = false;
  std::string weights;
  std::uint64_t max_chains = kDefaultChainLimit;
  // stats
  bool tabulate = false;
  // gen
  std::size_t interfaces = 3;
  std::string methods = "1-2";
  std::string values = "1-2";
  std::size_t adapters = 4;
  double density = 0.5;
  std::uint64_t seed = 0;
  std::string output;
};

class Commands {
public:
  Commands(const Options& opts, std::ostream& out, std::ostream& err)
      : opts_(opts), out_(out), err_(err) {}

  bool json_mode() const { return opts_.format == "json"; }

  void emit(const json& report) { out_ << report.dump(2) << "\n"; }

  void validate() {
    auto graph = load_graph(opts_.graph);
    if (json_mode()) {
      emit({{"status", "valid"},
            {"interfaces", graph.interfaces().size()},
            {"adapters", graph.adapters().size()}});
    } else {
      out_ << "valid: " << graph.interfaces().size() << " interfaces, "
           << graph.adapters().size() << " adapters\n";
    }
  }

  void eval() {
    auto graph = load_graph(opts_.graph);
    const auto ids = split_list(opts_.chain);
    if (ids.empty() && opts_.from.empty())
      throw UsageError("eval needs --chain or, for the empty chain, --from");
    auto pipeline = make_pipeline(graph, ids, opts_.from);
    if (!opts_.from.empty() && pipeline.from()->id() != opts_.from)
      throw Error(ErrorKind::EndpointMismatch, "chain starts at '" + pipeline.from()->id() +
                                                   "', not '" + opts_.from + "'");
    AvailabilityVector input = full_vector(pipeline.from());
    if (opts_.has_vector) {
      try {
        input = parse_vector(pipeline.from(), opts_.vector);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::SyntaxError)
          throw UsageError(std::string("--vector: ") + e.what());
        throw;
      }
    }
    auto result = apply_pipeline(pipeline, input);
    if (json_mode()) {
      emit({{"chain", pipeline.chain_ids()},
            {"from", pipeline.from()->id()},
            {"to", pipeline.to()->id()},
            {"input", vector_json(input)},
            {"output", vector_json(result)},
            {"count", WeightMap{}.weighted_count(result)}});
    } else {
      out_ << result.to_string() << "\n";
    }
  }

  void chain() {
    auto graph = load_graph(opts_.graph);
    std::set<std::string> sources;
    for (const auto& s : split_list(opts_.sources))
      sources.insert(s);
    if (!opts_.source.empty())
      sources.insert(opts_.source);
    if (sources.empty())
      throw UsageError("chain needs --source or --sources");
    WeightMap weights;
    if (!opts_.weights.empty()) {
      weights = parse_weights(read_file(opts_.weights));
      weights.validate(graph);
    }
    auto result = opts_.oracle
                      ? oracle_optimal(graph, sources, opts_.target, weights, opts_.max_chains)
                      : greedy_chain(graph, sources, opts_.target, weights);
    if (json_mode()) {
      emit({{"method", opts_.oracle ? "oracle" : "greedy"},
            {"chain", result.chain},
            {"source", result.source},
            {"target", result.target},
            {"vector", vector_json(result.final_vector)},
            {"score", result.score}});
    } else {
      out_ << "chain: " << chain_text(result.chain) << "\n"
           << "source: " << result.source << "\n"
           << "target: " << result.target << "\n"
           << "vector: " << result.final_vector.to_string() << "\n"
           << "score: " << format_number(result.score) << "\n";
    }
  }

  void enumerate() {
    auto graph = load_graph(opts_.graph);
    if (opts_.source.empty())
      throw UsageError("enumerate needs --source");
    auto chains = enumerate_chains(graph, opts_.source, opts_.target, opts_.max_chains);
    if (json_mode()) {
      emit({{"source", opts_.source},
            {"target", opts_.target},
            {"count", chains.size()},
            {"chains", chains}});
    } else {
      for (const auto& c : chains)
        out_ << chain_text(c) << "\n";
    }
  }

  void stats() {
    auto graph = load_graph(opts_.graph);
    const std::uint64_t cap = opts_.tabulate ? tabulate_cap() : kDefaultTabulateCap;

    json rows = json::array();
    std::vector<std::vector<std::string>> table;
    table.push_back({"adapter", "source", "target", "dependency_size", "adaptation_size"});
    if (opts_.tabulate)
      table.front().push_back("tabulated_rows");
    for (const auto& [id, adapter] : graph.adapters()) {
      auto sizes = function_sizes(*adapter);
      json row = {{"id", id},
                  {"source", adapter->source()->id()},
                  {"target", adapter->target()->id()},
                  {"dependency_size", count_json(sizes.dependency_size)},
                  {"adaptation_size", count_json(sizes.adaptation_size)}};
      std::vector<std::string> line{id, adapter->source()->id(), adapter->target()->id(),
                                    sizes.dependency_size.str(), sizes.adaptation_size.str()};
      if (opts_.tabulate) {
        try {
          auto tab = tabulate_adaptation(adapter, cap);
          row["tabulated"] = {{"rows", tab.row_count()}, {"distinct_rows", tab.distinct_rows()}};
          line.push_back(std::to_string(tab.row_count()) + " (" +
                         std::to_string(tab.distinct_rows()) + " distinct)");
        } catch (const CapExceededError& e) {
          row["tabulated"] = {{"cap_exceeded", count_json(e.required())}, {"cap", cap}};
          line.push_back("cap exceeded");
        }
      }
      rows.push_back(std::move(row));
      table.push_back(std::move(line));
    }

    if (json_mode()) {
      emit({{"adapters", std::move(rows)}});
      return;
    }
    std::vector<std::size_t> widths(table.front().size(), 0);
    for (const auto& line : table)
      for (std::size_t c = 0; c < line.size(); ++c)
        widths[c] = std::max(widths[c], line[c].size());
    for (const auto& line : table) {
      for (std::size_t c = 0; c < line.size(); ++c) {
        out_ << (c == 0 ? "" : "  ");
        if (c + 1 == line.size())
          out_ << line[c];
        else
          out_ << std::left << std::setw(static_cast<int>(widths[c])) << line[c];
      }
      out_ << "\n";
    }
  }

  void gen() {
    GenParams params;
    params.interface_count = opts_.interfaces;
    params.methods_per_interface = parse_range(opts_.methods, "--methods");
    params.values_per_method = parse_range(opts_.values, "--values");
    params.adapter_count = opts_.adapters;
    params.entry_density = opts_.density;
    params.seed = opts_.seed;
    try {
      params.validate();
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    auto instance = random_instance(params);
    const auto document = serialize_document(instance.graph);
    if (opts_.output.empty()) {
      out_ << document;
    } else {
      std::ofstream file(opts_.output, std::ios::binary);
      if (!file || !(file << document))
        throw Error(ErrorKind::IoError, "cannot write '" + opts_.output + "'");
    }
    err_ << "suggested: --source " << instance.source << " --target " << instance.target << "\n";
  }

private:
  const Options& opts_;
  std::ostream& out_;
  std::ostream& err_;
};

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Analyze loss in chains of interface adapters", "adaptchain"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opts;
  app.add_option("--format", opts.format, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  auto graph_option = [&](CLI::App* sub) {
    sub->add_option("--graph", opts.graph, "Bundled document name or path to a JSON document")
        ->required();
  };

  auto* validate = app.add_subcommand("validate", "Check a graph document");
  graph_option(validate);

  auto* eval = app.add_subcommand("eval", "Apply a chain of adapters to an availability vector");
  graph_option(eval);
  eval->add_option("--chain", opts.chain, "Comma-separated adapter ids, in application order");
  eval->add_option("--from", opts.from, "Start interface (required for the empty chain)");
  eval->add_option("--vector", opts.vector, "e.g. \"playVideo:MOV,MKV;playAudio:MP3\"");

  auto* chain = app.add_subcommand("chain", "Find the loss-optimal acyclic chain");
  graph_option(chain);
  chain->add_option("--source", opts.source, "Source interface");
  chain->add_option("--sources", opts.sources, "Comma-separated candidate source interfaces");
  chain->add_option("--target", opts.target, "Target interface")->required();
  chain->add_flag("--oracle", opts.oracle, "Use exhaustive enumeration instead of greedy search");
  chain->add_option("--weights", opts.weights, "Weight file (interface.method.value = weight)");
  chain->add_option("--max-chains", opts.max_chains, "Oracle enumeration limit")
      ->check(CLI::PositiveNumber);

  auto* enumerate = app.add_subcommand("enumerate", "List every acyclic chain between two interfaces");
  graph_option(enumerate);
  enumerate->add_option("--source", opts.source, "Source interface")->required();
  enumerate->add_option("--target", opts.target, "Target interface")->required();
  enumerate->add_option("--max-chains", opts.max_chains, "Enumeration limit")
      ->check(CLI::PositiveNumber);

  auto* stats = app.add_subcommand("stats", "Exact dependency and adaptation function sizes");
  graph_option(stats);
  stats->add_flag("--tabulate", opts.tabulate,
                  "Also materialize each adaptation function (cap: ADAPTCHAIN_TABULATE_CAP)");

  auto* gen = app.add_subcommand("gen", "Write a seeded random graph document");
  gen->add_option("--interfaces", opts.interfaces, "Interface count")->capture_default_str();
  gen->add_option("--methods", opts.methods, "Methods per interface, N or MIN-MAX")
      ->capture_default_str();
  gen->add_option("--values", opts.values, "Non-bottom values per method, N or MIN-MAX")
      ->capture_default_str();
  gen->add_option("--adapters", opts.adapters, "Adapter count")->capture_default_str();
  gen->add_option("--density", opts.density, "Probability of an explicit dependency entry")
      ->capture_default_str();
  gen->add_option("--seed", opts.seed, "Random seed")->capture_default_str();
  gen->add_option("--output", opts.output, "Write the document here instead of stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e, out, err);
    return status == 0 ? kExitOk : kExitUsage;
  }
  opts.has_vector = eval->count("--vector") > 0;

  Commands commands(opts, out, err);
  try {
    if (*validate)
      commands.validate();
    else if (*eval)
      commands.eval();
    else if (*chain)
      commands.chain();
    else if (*enumerate)
      commands.enumerate();
    else if (*stats)
      commands.stats();
    else if (*gen)
      commands.gen();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    if (commands.json_mode())
      out << json{{"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}}.dump(2)
          << "\n";
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return kExitDomainError;
  }
  return kExitOk;
}

} // namespace adaptchain
