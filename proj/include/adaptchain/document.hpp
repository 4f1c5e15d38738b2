#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adaptchain/model.hpp"

namespace adaptchain {

/// Format version written by serialize_document and accepted by parse_document.
inline constexpr std::string_view kDocumentVersion = "1";

/// Parses a UTF-8 JSON graph document. Syntax problems raise SyntaxError
/// with the JSON path; model validation errors keep their kind and name the
/// offending element.
AdapterGraph parse_document(std::string_view text);

/// Canonical form: sorted keys, domains and sets in canonical order with
/// "bot" listed explicitly, entries in input-tuple order.
std::string serialize_document(const AdapterGraph& graph);

/// Documents compiled into the library, e.g. "video-example".
std::optional<std::string_view> bundled_document(std::string_view name);
std::vector<std::string> bundled_document_names();

/// Resolves a bundled document name first, then a file path.
AdapterGraph load_graph(const std::string& name_or_path);

} // namespace adaptchain
