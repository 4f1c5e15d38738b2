#include "adaptchain/document.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace adaptchain {

namespace fixtures {
extern const std::string_view kVideoExample;
}

namespace {

using json = nlohmann::json;

[[noreturn]] void syntax(const std::string& path, const std::string& message) {
  throw Error(ErrorKind::SyntaxError, path + ": " + message);
}

const json& field(const json& object, const char* key, const std::string& path) {
  if (!object.is_object())
    syntax(path, "expected an object");
  auto it = object.find(key);
  if (it == object.end())
    syntax(path, std::string("missing field \"") + key + "\"");
  return *it;
}

std::string string_at(const json& value, const std::string& path) {
  if (!value.is_string())
    syntax(path, "expected a string");
  return value.get<std::string>();
}

const json& array_at(const json& value, const std::string& path) {
  if (!value.is_array())
    syntax(path, "expected an array");
  return value;
}

std::vector<std::string> strings_at(const json& value, const std::string& path) {
  std::vector<std::string> out;
  const auto& items = array_at(value, path);
  for (std::size_t i = 0; i < items.size(); ++i)
    out.push_back(string_at(items[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::vector<std::string>> sets_at(const json& value, const std::string& path) {
  std::vector<std::vector<std::string>> out;
  const auto& items = array_at(value, path);
  for (std::size_t i = 0; i < items.size(); ++i)
    out.push_back(strings_at(items[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

json set_json(const AbstractDomain& domain, const ValueSet& set) {
  json out = json::array();
  for (auto index : set.indices())
    out.push_back(domain.name(index));
  return out;
}

json output_json(const Interface& target, const Adapter::Output& output) {
  json out = json::array();
  for (std::size_t j = 0; j < output.size(); ++j)
    out.push_back(set_json(target.method(j).domain, output[j]));
  return out;
}

} // namespace

AdapterGraph parse_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::SyntaxError, std::string("document: ") + e.what());
  }

  const auto version = string_at(field(doc, "version", "document"), "document.version");
  if (version != kDocumentVersion)
    syntax("document.version", "unsupported version \"" + version + "\"");

  std::vector<InterfacePtr> interfaces;
  std::map<std::string, InterfacePtr, std::less<>> by_id;
  const auto& ifaces = array_at(field(doc, "interfaces", "document"), "document.interfaces");
  for (std::size_t k = 0; k < ifaces.size(); ++k) {
    const std::string path = "interfaces[" + std::to_string(k) + "]";
    const auto id = string_at(field(ifaces[k], "id", path), path + ".id");
    std::vector<MethodValues> methods;
    const auto& ms = array_at(field(ifaces[k], "methods", path), path + ".methods");
    for (std::size_t m = 0; m < ms.size(); ++m) {
      const std::string mpath = path + ".methods[" + std::to_string(m) + "]";
      methods.emplace_back(string_at(field(ms[m], "name", mpath), mpath + ".name"),
                           strings_at(field(ms[m], "values", mpath), mpath + ".values"));
    }
    auto iface = build_interface(id, methods);
    if (!by_id.emplace(id, iface).second)
      throw Error(ErrorKind::DuplicateId, path + ": interface id '" + id + "' is declared twice");
    interfaces.push_back(std::move(iface));
  }

  std::vector<AdapterPtr> adapters;
  const auto& ads = array_at(field(doc, "adapters", "document"), "document.adapters");
  for (std::size_t k = 0; k < ads.size(); ++k) {
    const std::string path = "adapters[" + std::to_string(k) + "]";
    const auto& a = ads[k];
    const auto id = string_at(field(a, "id", path), path + ".id");
    auto endpoint = [&](const char* role) {
      const auto name = string_at(field(a, role, path), path + "." + role);
      auto it = by_id.find(name);
      if (it == by_id.end())
        throw Error(ErrorKind::UnknownInterface, "adapter '" + id + "': " + role + " interface '" +
                                                     name + "' is not declared");
      return it->second;
    };
    auto source = endpoint("source");
    auto target = endpoint("target");

    std::optional<std::vector<std::vector<std::string>>> fallback;
    if (auto it = a.find("default_output"); it != a.end() && !it->is_null())
      fallback = sets_at(*it, path + ".default_output");

    std::vector<NamedEntry> entries;
    const auto& rows = array_at(field(a, "entries", path), path + ".entries");
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const std::string rpath = path + ".entries[" + std::to_string(r) + "]";
      entries.push_back({strings_at(field(rows[r], "input", rpath), rpath + ".input"),
                         sets_at(field(rows[r], "output", rpath), rpath + ".output")});
    }
    adapters.push_back(build_adapter(id, std::move(source), std::move(target), entries, fallback));
  }
  return build_graph(std::move(interfaces), std::move(adapters));
}

std::string serialize_document(const AdapterGraph& graph) {
  json doc;
  doc["version"] = std::string(kDocumentVersion);
  doc["interfaces"] = json::array();
  for (const auto& [id, iface] : graph.interfaces()) {
    json methods = json::array();
    for (const auto& m : iface->methods())
      methods.push_back({{"name", m.name}, {"values", m.domain.names()}});
    doc["interfaces"].push_back({{"id", id}, {"methods", std::move(methods)}});
  }
  doc["adapters"] = json::array();
  for (const auto& [id, adapter] : graph.adapters()) {
    const auto& source = *adapter->source();
    const auto& target = *adapter->target();
    json entries = json::array();
    for (const auto& [input, output] : adapter->entries()) {
      json in = json::array();
      for (std::size_t i = 0; i < input.size(); ++i)
        in.push_back(source.method(i).domain.name(input[i]));
      entries.push_back({{"input", std::move(in)}, {"output", output_json(target, output)}});
    }
    doc["adapters"].push_back({{"id", id},
                               {"source", source.id()},
                               {"target", target.id()},
                               {"default_output", output_json(target, adapter->default_output())},
                               {"entries", std::move(entries)}});
  }
  return doc.dump(2) + "\n";
}

std::optional<std::string_view> bundled_document(std::string_view name) {
  if (name == "video-example")
    return fixtures::kVideoExample;
  return std::nullopt;
}

std::vector<std::string> bundled_document_names() { return {"video-example"}; }

AdapterGraph load_graph(const std::string& name_or_path) {
  if (auto text = bundled_document(name_or_path))
    return parse_document(*text);
  std::ifstream in(name_or_path, std::ios::binary);
  if (!in)
    throw Error(ErrorKind::IoError, "cannot read graph document '" + name_or_path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_document(buffer.str());
}

} // namespace adaptchain
