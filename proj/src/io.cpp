#include "qlat/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "qlat/error.hpp"

namespace qlat {

namespace fs = std::filesystem;

namespace {

const Json& field(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing field '") + key + "'");
  return doc.at(key);
}

std::size_t as_index(const Json& v, const char* what) {
  if (!v.is_number_integer()) throw Error(ErrorKind::ParseError, std::string(what) + " must be an integer");
  const auto i = v.get<std::int64_t>();
  if (i < 0) throw Error(ErrorKind::IndexOutOfRange, std::string(what) + " is negative");
  return static_cast<std::size_t>(i);
}

Json parse(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, origin + ": " + e.what());
  }
}

// Milliseconds with three decimals, so output does not depend on float printing.
Json millis(std::chrono::duration<double, std::milli> d) { return std::round(d.count() * 1000.0) / 1000.0; }

}  // namespace

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

Json lattice_to_json(const Lattice& L) {
  Json covers = Json::array();
  for (const auto& [a, b] : L.poset().covers()) covers.push_back(Json::array({a, b}));
  Json doc;
  doc["name"] = L.name();
  doc["n"] = L.size();
  doc["covers"] = std::move(covers);
  return doc;
}

Poset poset_from_json(const Json& doc) {
  const std::size_t n = as_index(field(doc, "n"), "n");
  const Json& cv = field(doc, "covers");
  if (!cv.is_array()) throw Error(ErrorKind::ParseError, "covers must be an array");
  std::vector<Cover> covers;
  for (const Json& pair : cv) {
    if (!pair.is_array() || pair.size() != 2) throw Error(ErrorKind::ParseError, "each cover must be a pair");
    covers.emplace_back(as_index(pair[0], "cover index"), as_index(pair[1], "cover index"));
  }
  return build_poset(n, covers);
}

Poset load_poset(const fs::path& path) { return poset_from_json(parse(read_text_file(path), path.string())); }

Lattice lattice_from_json(const Json& doc, const std::string& default_name) {
  Poset p = poset_from_json(doc);
  std::string name = default_name;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw Error(ErrorKind::ParseError, "name must be a string");
    name = doc["name"].get<std::string>();
  }
  return build_lattice(p, name);
}

Lattice load_lattice(const fs::path& path) {
  return lattice_from_json(parse(read_text_file(path), path.string()), path.stem().string());
}

// Pretty-printed, but each cover stays on one line.
std::string lattice_document(const Lattice& L) {
  const Json doc = lattice_to_json(L);
  return "{\n  \"name\": " + doc["name"].dump() + ",\n  \"n\": " + doc["n"].dump() + ",\n  \"covers\": " +
         doc["covers"].dump() + "\n}\n";
}

MapDocument map_document_from_json(const Json& doc) {
  MapDocument m;
  const Json& dom = field(doc, "dom");
  const Json& cod = field(doc, "cod");
  if (!dom.is_string() || !cod.is_string()) throw Error(ErrorKind::ParseError, "dom and cod must be strings");
  m.dom = dom.get<std::string>();
  m.cod = cod.get<std::string>();
  const Json& values = field(doc, "values");
  if (!values.is_array()) throw Error(ErrorKind::ParseError, "values must be an array");
  for (const Json& v : values) m.values.push_back(static_cast<Elem>(as_index(v, "value")));
  return m;
}

Json map_to_json(const std::string& dom, const std::string& cod, const LatMap& f) {
  Json doc;
  doc["dom"] = dom;
  doc["cod"] = cod;
  doc["values"] = Json(std::vector<Elem>(f.values().begin(), f.values().end()));
  return doc;
}

std::string map_document(const std::string& dom, const std::string& cod, const LatMap& f) {
  return map_to_json(dom, cod, f).dump() + "\n";
}

LatMap load_map(const fs::path& path, const std::optional<Lattice>& dom_override,
                const std::optional<Lattice>& cod_override) {
  MapDocument doc = map_document_from_json(parse(read_text_file(path), path.string()));
  auto resolve = [&](const std::string& ref) {
    fs::path beside = path.parent_path() / ref;
    if (fs::exists(beside)) return load_lattice(beside);
    if (fs::exists(ref)) return load_lattice(ref);
    throw Error(ErrorKind::IoError, "lattice file '" + ref + "' referenced by " + path.string() + " not found");
  };
  Lattice dom = dom_override ? *dom_override : resolve(doc.dom);
  Lattice cod = cod_override ? *cod_override : (doc.cod == doc.dom && !dom_override ? dom : resolve(doc.cod));
  return LatMap(std::move(dom), std::move(cod), std::move(doc.values));
}

Json check_result_to_json(const CheckResult& r, bool timing) {
  Json j;
  j["name"] = r.name;
  j["holds"] = r.holds;
  if (r.witness) {
    Json w;
    w["elements"] = r.witness->elements;
    w["maps"] = r.witness->maps;
    w["note"] = r.witness->note;
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  if (timing) j["elapsed_ms"] = millis(r.elapsed);
  return j;
}

Json report_to_json(const SuiteReport& report, bool timing) {
  const auto& registry = check_registry();
  Json results = Json::array();
  for (std::size_t ci = 0; ci < report.checks.size(); ++ci) {
    Json row;
    row["check"] = report.checks[ci];
    auto it = std::find_if(registry.begin(), registry.end(),
                           [&](const TheoremCheck& c) { return c.id == report.checks[ci]; });
    if (it != registry.end()) {
      row["statement"] = it->statement;
      row["applies_to"] = it->applicability;
    }
    Json cells = Json::array();
    for (std::size_t li = 0; li < report.corpus.size(); ++li) {
      const CellResult& cell = report.results[ci][li];
      Json c;
      c["lattice"] = report.corpus[li];
      c["status"] = std::string(to_string(cell.status));
      if (cell.status == Status::Skip) {
        c["reason"] = cell.reason;
        c["unexpected"] = cell.unexpected;
      } else {
        if (cell.vacuous) c["vacuous"] = true;
        if (!cell.result.detail.empty()) c["detail"] = cell.result.detail;
        c["result"] = check_result_to_json(cell.result, timing);
      }
      cells.push_back(std::move(c));
    }
    row["cells"] = std::move(cells);
    results.push_back(std::move(row));
  }
  const SuiteSummary& s = report.summary;
  Json summary;
  summary["pass"] = s.pass;
  summary["fail"] = s.fail;
  summary["skip"] = s.skip;
  summary["unexpected_skip"] = s.unexpected_skip;
  summary["vacuous"] = s.vacuous;
  summary["t5_premise_evaluated"] = s.t5_premise_evaluated;
  summary["t5_premise_triggered"] = s.t5_premise_triggered;
  summary["ok"] = report.ok();

  Json doc;
  doc["corpus"] = report.corpus;
  doc["results"] = std::move(results);
  doc["summary"] = std::move(summary);
  doc["seed"] = report.seed;
  doc["version"] = report.version;
  return doc;
}

std::string report_to_text(const SuiteReport& report, bool timing) {
  std::ostringstream out;
  const auto& registry = check_registry();
  out << "corpus: " << report.corpus.size() << " lattices, seed " << report.seed << ", version " << report.version
      << "\n\n";
  out << std::left << std::setw(6) << "check" << std::right << std::setw(6) << "pass" << std::setw(6) << "fail"
      << std::setw(6) << "skip" << std::setw(9) << "vacuous";
  if (timing) out << std::setw(12) << "ms";
  out << "  statement\n";
  std::vector<std::string> problems;
  for (std::size_t ci = 0; ci < report.checks.size(); ++ci) {
    std::size_t pass = 0, fail = 0, skip = 0, vacuous = 0;
    double ms = 0;
    for (std::size_t li = 0; li < report.corpus.size(); ++li) {
      const CellResult& cell = report.results[ci][li];
      ms += cell.result.elapsed.count();
      if (cell.vacuous) ++vacuous;
      switch (cell.status) {
        case Status::Pass: ++pass; break;
        case Status::Fail:
          ++fail;
          problems.push_back(report.checks[ci] + " on " + report.corpus[li] + ": " +
                             (cell.result.witness ? cell.result.witness->note : std::string("failed")));
          break;
        case Status::Skip:
          ++skip;
          if (cell.unexpected) problems.push_back(report.checks[ci] + " on " + report.corpus[li] + " skipped: " + cell.reason);
          break;
      }
    }
    auto it = std::find_if(registry.begin(), registry.end(),
                           [&](const TheoremCheck& c) { return c.id == report.checks[ci]; });
    out << std::left << std::setw(6) << report.checks[ci] << std::right << std::setw(6) << pass << std::setw(6)
        << fail << std::setw(6) << skip << std::setw(9) << vacuous;
    if (timing) out << std::setw(12) << std::fixed << std::setprecision(1) << ms;
    out << "  " << (it != registry.end() ? it->statement : "") << "\n";
  }
  const SuiteSummary& s = report.summary;
  out << "\npass " << s.pass << ", fail " << s.fail << ", skip " << s.skip << " (unexpected " << s.unexpected_skip
      << "), vacuous " << s.vacuous << "\n";
  if (s.t5_premise_evaluated > 0) {
    out << "T5 premise (o cyclic, o != c_top) held on " << s.t5_premise_triggered << " of " << s.t5_premise_evaluated
        << " lattices\n";
  }
  for (const std::string& p : problems) out << "  " << p << "\n";
  out << (report.ok() ? "OK" : "FAILED") << "\n";
  return out.str();
}

}  // namespace qlat
