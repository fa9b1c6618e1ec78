#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <optional>
#include <sstream>

#include "qlat/cdcheck.hpp"
#include "qlat/error.hpp"
#include "qlat/io.hpp"
#include "qlat/latmap.hpp"
#include "qlat/propsuite.hpp"
#include "qlat/quantaloid.hpp"

namespace qlat::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string output;
  bool json = false;
  bool dump = false;
  bool timing = false;
  std::size_t cap = kDefaultHomsetCap;
  std::uint64_t seed = 1;
  std::size_t size = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  Elem x = 0;
  unsigned threads = 0;
  std::string lattice;
  std::string file1;
  std::string file2;
  std::string corpus = "builtin";
  std::string checks;
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CycleDetected:
    case ErrorKind::IndexOutOfRange:
    case ErrorKind::NotALattice:
    case ErrorKind::TooLarge:
    case ErrorKind::NotContinuous:
    case ErrorKind::DomainMismatch:
    case ErrorKind::CapExceeded:
    case ErrorKind::NotEndoHomset:
    case ErrorKind::ParseError:
    case ErrorKind::IoError:
      return kInputError;
  }
  return kInternalError;
}

std::string tf(bool b) { return b ? "T" : "F"; }

std::string values_text(std::span<const Elem> v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

// Names of the distinguished maps equal to f.
std::vector<std::string> map_names(const LatMap& f) {
  const Lattice& L = f.dom();
  std::vector<std::string> names;
  if (f == special(L, SpecialKind::Const, L.bottom())) names.push_back("c_bot");
  if (f == special(L, SpecialKind::Const, L.top())) names.push_back("c_top");
  if (f == LatMap::identity(L)) names.push_back("id");
  if (f == special(L, SpecialKind::O)) names.push_back("o");
  return names;
}

struct MapFile {
  LatMap map;
  std::string dom;
  std::string cod;
};

MapFile read_map(const std::string& path, const std::string& lattice_override) {
  std::optional<Lattice> override;
  if (!lattice_override.empty()) override = load_lattice(lattice_override);
  LatMap f = load_map(path, override, override);
  MapDocument doc = map_document_from_json(Json::parse(read_text_file(path)));
  if (override) doc.dom = doc.cod = lattice_override;
  return MapFile{std::move(f), doc.dom, doc.cod};
}

class Runner {
 public:
  Runner(Options& o, std::ostream& out) : o_(o), out_(out) {}

  void emit(const std::string& text) {
    if (o_.output.empty()) {
      out_ << text;
    } else {
      write_text_file(o_.output, text);
    }
  }

  int gen(const GeneratorSpec& spec) {
    emit(lattice_document(generate(spec)));
    return kOk;
  }

  int gen_downsets() {
    Poset p = load_poset(o_.file1);
    emit(lattice_document(downset_lattice(p, "downsets-" + fs::path(o_.file1).stem().string())));
    return kOk;
  }

  int check() {
    Lattice L = load_lattice(o_.file1);
    LatticeProfile p = classify_lattice(L);
    CheckResult rj = raney_join_criterion(L);
    CheckResult rm = raney_meet_criterion(L);
    CheckResult dist = distributive_oracle(L);
    const bool agreement = rj.holds == rm.holds && rj.holds == dist.holds;
    if (o_.json) {
      Json doc;
      doc["name"] = L.name();
      doc["n"] = L.size();
      Json prof;
      prof["chain"] = p.chain;
      prof["distributive"] = p.distributive;
      prof["completely_distributive"] = p.completely_distributive;
      prof["smooth"] = p.smooth;
      prof["spatial"] = p.spatial;
      prof["join_primes"] = p.join_primes;
      doc["profile"] = std::move(prof);
      doc["raney_join"] = check_result_to_json(rj, false);
      doc["raney_meet"] = check_result_to_json(rm, false);
      doc["distributive"] = check_result_to_json(dist, false);
      doc["agreement"] = agreement;
      emit(doc.dump(2) + "\n");
      return kOk;
    }
    std::ostringstream s;
    auto witness = [](const CheckResult& r) {
      return r.witness ? " witness " + values_text(r.witness->elements) : std::string();
    };
    s << "name: " << L.name() << "\n"
      << "size: " << L.size() << "\n"
      << "chain: " << tf(p.chain) << "\n"
      << "distributive: " << tf(p.distributive) << "\n"
      << "CD: " << tf(p.completely_distributive) << "\n"
      << "smooth: " << tf(p.smooth) << "\n"
      << "spatial: " << tf(p.spatial) << "\n"
      << "join_primes: " << values_text(p.join_primes) << "\n"
      << "raney_join: " << tf(rj.holds) << witness(rj) << "\n"
      << "raney_meet: " << tf(rm.holds) << witness(rm) << "\n"
      << "oracle: " << tf(dist.holds) << witness(dist) << "\n"
      << "agreement: " << tf(agreement) << "\n";
    emit(s.str());
    return kOk;
  }

  int special_map(SpecialKind kind) {
    Lattice L = load_lattice(o_.file1);
    emit(map_document(o_.file1, o_.file1, special(L, kind, o_.x)));
    return kOk;
  }

  int unary(const std::function<LatMap(const LatMap&)>& op, bool swaps) {
    MapFile f = read_map(o_.file1, o_.lattice);
    LatMap r = op(f.map);
    emit(swaps ? map_document(f.cod, f.dom, r) : map_document(f.dom, f.cod, r));
    return kOk;
  }

  int enumerate() {
    Lattice L = load_lattice(o_.file1);
    HomsetEnumeration Q = enumerate_homset(L, L, o_.cap);
    if (o_.json) {
      Json doc;
      doc["lattice"] = L.name();
      doc["count"] = Q.size();
      if (o_.dump) {
        Json maps = Json::array();
        for (const LatMap& f : Q) maps.push_back(std::vector<Elem>(f.values().begin(), f.values().end()));
        doc["maps"] = std::move(maps);
      }
      emit(doc.dump() + "\n");
      return kOk;
    }
    std::ostringstream s;
    s << "count " << Q.size() << "\n";
    if (o_.dump)
      for (const LatMap& f : Q) s << values_text(f.values()) << "\n";
    emit(s.str());
    return kOk;
  }

  int filter(const std::string& kind) {
    Lattice L = load_lattice(o_.file1);
    HomsetEnumeration Q = enumerate_homset(L, L, o_.cap);
    std::vector<LatMap> found;
    if (kind == "cyclic") {
      found = cyclic_elements(Q);
    } else if (kind == "central") {
      found = central_elements(Q);
    } else {
      for (const LatMap& f : Q)
        if (is_dualizing(f, Q).holds) found.push_back(f);
    }
    if (o_.json) {
      Json doc;
      doc["lattice"] = L.name();
      doc["kind"] = kind;
      doc["count"] = found.size();
      Json maps = Json::array();
      for (const LatMap& f : found) {
        Json m;
        m["values"] = std::vector<Elem>(f.values().begin(), f.values().end());
        m["names"] = map_names(f);
        maps.push_back(std::move(m));
      }
      doc["maps"] = std::move(maps);
      emit(doc.dump() + "\n");
      return kOk;
    }
    std::ostringstream s;
    s << found.size() << " " << kind << " element" << (found.size() == 1 ? "" : "s") << "\n";
    for (const LatMap& f : found) {
      s << values_text(f.values());
      for (const std::string& name : map_names(f)) s << " " << name;
      s << "\n";
    }
    emit(s.str());
    return kOk;
  }

  // `which` picks the result's dom and cod references from the two inputs.
  int binary(const std::function<LatMap(const LatMap&, const LatMap&)>& op,
             const std::function<std::pair<std::string, std::string>(const MapFile&, const MapFile&)>& which) {
    MapFile a = read_map(o_.file1, o_.lattice);
    MapFile b = read_map(o_.file2, o_.lattice);
    LatMap r = op(a.map, b.map);
    auto [dom, cod] = which(a, b);
    emit(map_document(dom, cod, r));
    return kOk;
  }

  int verify() {
    std::vector<Lattice> corpus;
    if (o_.corpus == "builtin") {
      corpus = builtin_corpus();
    } else {
      if (!fs::is_directory(o_.corpus)) throw Error(ErrorKind::IoError, "corpus directory " + o_.corpus + " not found");
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(o_.corpus))
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
      std::sort(files.begin(), files.end());
      for (const fs::path& p : files) corpus.push_back(load_lattice(p));
    }
    SuiteOptions so;
    so.seed = o_.seed;
    so.threads = o_.threads;
    std::stringstream ids(o_.checks);
    for (std::string id; std::getline(ids, id, ',');)
      if (!id.empty()) so.checks.push_back(id);
    SuiteReport report = run_suite(corpus, so);
    emit(o_.json ? report_to_json(report, o_.timing).dump(2) + "\n" : report_to_text(report, o_.timing));
    return report.ok() ? kOk : kCheckFailed;
  }

 private:
  Options& o_;
  std::ostream& out_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  Runner r(o, out);
  std::function<int()> action;

  CLI::App app{"Finite lattices, join-continuous maps and the quantale Q(L)", "qlat"};
  app.require_subcommand(1);

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc, std::function<int()> act) {
    CLI::App* s = parent->add_subcommand(name, desc);
    s->add_option("-o,--output", o.output, "write to a file instead of stdout");
    s->callback([&action, act] { action = act; });
    return s;
  };

  // gen
  CLI::App* gen = app.add_subcommand("gen", "generate a lattice document")->require_subcommand(1);
  leaf(gen, "chain", "chain with N elements", [&] { return r.gen(gen::Chain{o.n}); })
      ->add_option("N", o.n)->required();
  leaf(gen, "boolean", "Boolean lattice with K atoms", [&] { return r.gen(gen::Boolean{o.n}); })
      ->add_option("K", o.n)->required();
  leaf(gen, "m3", "the diamond M3", [&] { return r.gen(gen::M3{}); });
  leaf(gen, "n5", "the pentagon N5", [&] { return r.gen(gen::N5{}); });
  CLI::App* prod = leaf(gen, "product", "chain(A) x chain(B)", [&] { return r.gen(gen::Product{o.n, o.m}); });
  prod->add_option("A", o.n)->required();
  prod->add_option("B", o.m)->required();
  leaf(gen, "downsets", "downsets of a poset document {n, covers}", [&] { return r.gen_downsets(); })
      ->add_option("poset", o.file1)->required();
  CLI::App* rnd = leaf(gen, "random", "random closure-system lattice", [&] { return r.gen(gen::Random{o.seed, o.size}); });
  rnd->add_option("--seed", o.seed, "generator seed");
  rnd->add_option("--size", o.size, "element count")->required();

  // check
  CLI::App* chk = leaf(&app, "check", "validate and classify a lattice file", [&] { return r.check(); });
  chk->add_option("lattice", o.file1)->required();
  chk->add_flag("--json", o.json, "JSON output");

  // map
  CLI::App* map = app.add_subcommand("map", "named maps and map transforms")->require_subcommand(1);
  const std::pair<const char*, SpecialKind> plain[] = {{"o", SpecialKind::O}, {"omega", SpecialKind::Omega}};
  for (const auto& [name, kind] : plain) {
    SpecialKind k = kind;
    leaf(map, name, std::string(name) + " on a lattice", [&r, k] { return r.special_map(k); })
        ->add_option("lattice", o.file1)->required();
  }
  const std::pair<const char*, SpecialKind> indexed[] = {{"c", SpecialKind::Const},
                                                         {"a", SpecialKind::Annihilator},
                                                         {"alpha", SpecialKind::Alpha},
                                                         {"nu", SpecialKind::Nu}};
  for (const auto& [name, kind] : indexed) {
    SpecialKind k = kind;
    CLI::App* s = leaf(map, name, std::string(name) + "_x on a lattice", [&r, k] { return r.special_map(k); });
    s->add_option("x", o.x)->required();
    s->add_option("lattice", o.file1)->required();
  }
  const std::tuple<const char*, LatMap (*)(const LatMap&), bool> transforms[] = {
      {"interior", interior, false},
      {"raney-join", raney_join, false},
      {"raney-meet", raney_meet, false},
      {"adjoint", right_adjoint, true},
  };
  for (const auto& [name, fn, swaps] : transforms) {
    auto* f = fn;
    bool sw = swaps;
    CLI::App* s = leaf(map, name, std::string(name) + " of a map file", [&r, f, sw] { return r.unary(f, sw); });
    s->add_option("map", o.file1)->required();
    s->add_option("--lattice", o.lattice, "use this lattice as domain and codomain");
  }

  // q
  CLI::App* q = app.add_subcommand("q", "quantale Q(L) operations")->require_subcommand(1);
  CLI::App* en = leaf(q, "enumerate", "count (and optionally list) Q(L)", [&] { return r.enumerate(); });
  en->add_option("lattice", o.file1)->required();
  en->add_flag("--dump", o.dump, "list every map");
  en->add_option("--cap", o.cap, "maximum homset size");
  en->add_flag("--json", o.json, "JSON output");
  for (const char* kind : {"cyclic", "central", "dualizing"}) {
    std::string k = kind;
    CLI::App* s = leaf(q, kind, std::string(kind) + " elements of Q(L)", [&r, k] { return r.filter(k); });
    s->add_option("lattice", o.file1)->required();
    s->add_option("--cap", o.cap, "maximum homset size");
    s->add_flag("--json", o.json, "JSON output");
  }
  CLI::App* st = leaf(q, "star", "f* of a map file", [&] { return r.unary(star, true); });
  st->add_option("map", o.file1)->required();
  st->add_option("--lattice", o.lattice, "use this lattice as domain and codomain");

  using Refs = std::pair<std::string, std::string>;
  auto two = [&](const char* name, const char* desc, const char* a, const char* b,
                 std::function<LatMap(const LatMap&, const LatMap&)> op,
                 std::function<Refs(const MapFile&, const MapFile&)> which) {
    CLI::App* s = leaf(q, name, desc, [&r, op, which] { return r.binary(op, which); });
    s->add_option(a, o.file1)->required();
    s->add_option(b, o.file2)->required();
    s->add_option("--lattice", o.lattice, "use this lattice as domain and codomain");
  };
  two("compose", "f∘g (apply g first)", "f_map", "g_map", [](const LatMap& f, const LatMap& g) { return compose(f, g); },
      [](const MapFile& f, const MapFile& g) { return Refs{g.dom, f.cod}; });
  two("residual-left", "g\\h", "g_map", "h_map", [](const LatMap& g, const LatMap& h) { return residual_left(g, h); },
      [](const MapFile& g, const MapFile& h) { return Refs{h.dom, g.dom}; });
  two("residual-right", "h/f", "h_map", "f_map", [](const LatMap& h, const LatMap& f) { return residual_right(h, f); },
      [](const MapFile& h, const MapFile& f) { return Refs{f.cod, h.cod}; });
  two("oplus", "g ⊕ f", "g_map", "f_map", [](const LatMap& g, const LatMap& f) { return dual_tensor(g, f); },
      [](const MapFile& g, const MapFile& f) { return Refs{f.dom, g.cod}; });

  // verify
  CLI::App* ver = leaf(&app, "verify", "run the theorem checks over a corpus", [&] { return r.verify(); });
  ver->add_option("--corpus", o.corpus, "'builtin' or a directory of lattice files");
  ver->add_option("--checks", o.checks, "comma-separated check ids");
  ver->add_flag("--json", o.json, "JSON report");
  ver->add_option("--seed", o.seed, "seed for sampled checks");
  ver->add_flag("--timing", o.timing, "include timings");
  ver->add_option("--threads", o.threads, "worker threads (0 = all cores)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    return action ? action() : kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const nlohmann::json::exception& e) {
    err << "error: ParseError: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace qlat::cli
