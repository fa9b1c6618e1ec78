#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qlat/check_result.hpp"
#include "qlat/latmap.hpp"
#include "qlat/propsuite.hpp"

namespace qlat {

using Json = nlohmann::ordered_json;

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

// {name, n, covers}; covers sorted ascending.
Json lattice_to_json(const Lattice& L);
// {n, covers}; any extra fields are ignored.
Poset poset_from_json(const Json& doc);
Poset load_poset(const std::filesystem::path& path);
// Elements are relabelled into canonical order on load.
Lattice lattice_from_json(const Json& doc, const std::string& default_name = "lattice");
Lattice load_lattice(const std::filesystem::path& path);
std::string lattice_document(const Lattice& L);

// {dom, cod, values}; dom and cod are lattice file paths.
struct MapDocument {
  std::string dom;
  std::string cod;
  std::vector<Elem> values;
};

MapDocument map_document_from_json(const Json& doc);
Json map_to_json(const std::string& dom, const std::string& cod, const LatMap& f);
std::string map_document(const std::string& dom, const std::string& cod, const LatMap& f);

// Loads a map file. Lattice paths resolve against the map file's directory
// first, then as given; `dom_override`/`cod_override` replace them.
LatMap load_map(const std::filesystem::path& path, const std::optional<Lattice>& dom_override = std::nullopt,
                const std::optional<Lattice>& cod_override = std::nullopt);

Json check_result_to_json(const CheckResult& r, bool timing);
Json report_to_json(const SuiteReport& report, bool timing);
std::string report_to_text(const SuiteReport& report, bool timing);

}  // namespace qlat
