#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "neumaps/analysis.hpp"
#include "neumaps/crystal.hpp"
#include "neumaps/model.hpp"
#include "neumaps/primitivity.hpp"
#include "neumaps/serialize.hpp"
#include "neumaps/subgroup.hpp"

using namespace neumaps;

namespace {

enum Exit { kConfirmed = 0, kRefuted = 1, kUnknown = 2, kError = 3 };

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string command;
  std::string map, file, schema, format = "text", out, a, b;
  std::string word, gens = "Y; Z^-1 Y Z; Z^-3 X Z^3";
  Label radius = 10000;
  int n_max = 100;
  std::optional<Label> shift_bound;
  Label start = 0;
  std::int64_t k_max = 1000;
  int steps = 1000;
};

struct Outcome {
  Json doc;
  int code = kConfirmed;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

MapDescription description_of(const std::string& inline_text, const std::string& path) {
  if (!inline_text.empty() && !path.empty()) throw InputError("give either --map or --file, not both");
  if (!inline_text.empty()) return load_description(inline_text);
  if (!path.empty()) return load_description(read_file(path));
  throw InputError("a map is required (--map or --file)");
}

std::vector<Word> parse_word_list(const std::string& text) {
  std::vector<Word> out;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ';');)
    if (part.find_first_not_of(" \t") != std::string::npos) out.push_back(parse_word(part));
  if (out.empty()) throw InputError("no generator words given");
  return out;
}

void flatten(const Json& j, const std::string& key, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, key.empty() ? k : key + "." + k, os);
    return;
  }
  if (j.is_array() && std::any_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); })) {
    std::size_t i = 0;
    for (const auto& e : j) flatten(e, key + "[" + std::to_string(i++) + "]", os);
    if (i == 0) os << key << ": []\n";
    return;
  }
  os << key << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
}

Json header(const Config& c) { return {{"command", c.command}}; }

Outcome run_build(const Config& c) {
  const auto d = description_of(c.map, c.file);
  const auto m = compile(d);
  Json doc = header(c);
  doc["map"] = to_json(d);
  doc["census"] = to_json(census(m, c.radius));
  return {doc, kConfirmed};
}

Outcome run_verify(const Config& c) {
  const auto m = compile(description_of(c.map, c.file), {.strict_cycle_lengths = false});
  const auto r = verify_relators(m, c.radius);
  Json doc = header(c);
  doc["map"] = m.description().catalog_name;
  doc["relators"] = to_json(r);
  return {doc, r.pass ? kConfirmed : kRefuted};
}

Outcome run_primitivity(const Config& c) {
  const auto d = description_of(c.map, c.file);
  const auto m = compile(d);
  VerdictOptions opts;
  opts.n_max = c.n_max;
  opts.radius = c.radius;
  if (c.shift_bound) opts.shift_bound = *c.shift_bound;
  if (!c.schema.empty()) opts.schema = parse_schema(c.schema, d.type.p);
  const auto v = verdict(m, opts);
  Json doc = header(c);
  doc["schema_version"] = kCertificateSchemaVersion;
  doc["kind"] = "primitivity";
  doc["map"] = to_json(d);
  if (opts.schema) doc["schema"] = to_json(*opts.schema);
  doc["verdict"] = to_json(v);
  if (std::holds_alternative<Primitive>(v)) return {doc, kConfirmed};
  return {doc, std::holds_alternative<Imprimitive>(v) ? kRefuted : kUnknown};
}

Outcome run_presentation(const Config& c) {
  const auto m = compile(description_of(c.map, c.file));
  Json doc = header(c);
  doc["map"] = m.description().catalog_name;
  doc["presentation"] = to_json(schreier_presentation(m, c.radius));
  return {doc, kConfirmed};
}

Outcome run_signature(const Config& c) {
  const auto m = compile(description_of(c.map, c.file));
  Json doc = header(c);
  doc["map"] = m.description().catalog_name;
  doc["signature"] = to_json(signature(m));
  return {doc, kConfirmed};
}

Outcome run_torsion(const Config& c) {
  const auto m = compile(description_of(c.map, c.file));
  const auto r = torsion_free(m, c.radius);
  Json doc = header(c);
  doc["map"] = m.description().catalog_name;
  doc["torsion"] = to_json(r);
  return {doc, r.torsion_free ? kConfirmed : kRefuted};
}

Outcome run_isomorphic(const Config& c) {
  if (c.a.empty() || c.b.empty()) throw InputError("isomorphic needs --a and --b");
  const auto ma = compile(load_description(c.a));
  const auto mb = compile(load_description(c.b));
  const Label bound = c.shift_bound.value_or(certified_shift_bound(ma, mb));
  const Label radius = std::max(c.radius, 2 * bound);
  const auto r = shift_equivalent(ma, mb, radius, bound);
  Json doc = header(c);
  doc["a"] = ma.description().catalog_name;
  doc["b"] = mb.description().catalog_name;
  doc["radius"] = radius;
  doc["shift_bound"] = bound;
  doc["result"] = to_json(r);
  doc["isomorphic"] = r.shift ? Json(true) : r.certified ? Json(false) : Json("unknown");
  return {doc, r.shift ? kConfirmed : r.certified ? kRefuted : kUnknown};
}

Outcome run_crystal(const Config& c) {
  Json doc = header(c);
  const auto q = q_generators();
  doc["generators"] = {{"R", to_json(q.r)}, {"S", to_json(q.s)}};
  bool ok = true;
  Json rel = Json::object();
  for (const char* w : {"Y^2", "X^3", "(Y X^-1 Y X)^3", "X Y Z"}) {
    const bool id = n_membership(parse_word(w));
    rel[w] = id;
    ok = ok && id;
  }
  doc["relators"] = rel;
  Json images = Json::object();
  for (const char* w : {"X", "Y", "Z"}) {
    const auto g = evaluate(parse_word(w));
    images[w] = {{"isometry", to_json(g)}, {"class", to_json(classify(g))}};
  }
  doc["images"] = images;
  const auto cert = nonparabolicity_certificate(c.k_max);
  doc["nonparabolicity"] = certificate_document(cert);
  Json petrie = Json::array();
  std::set<int> classes;
  bool any_closed = false;
  for (const Vec2& v : {Vec2(1, 1), Vec2(2, 2)})
    for (int dir = 0; dir < 3; ++dir) {
      const auto path = petrie_walk({v, dir}, c.steps);
      classes.insert(path.direction_class);
      any_closed = any_closed || path.closed;
      petrie.push_back(to_json(path));
    }
  doc["petrie"] = {{"steps", c.steps}, {"paths", petrie}, {"classes", classes.size()}, {"any_closed", any_closed}};
  int code = ok && !any_closed ? kConfirmed : kRefuted;
  if (!c.word.empty()) {
    const Word w = parse_word(c.word);
    const auto g = evaluate(w);
    const bool member = g.is_identity();
    doc["membership"] = {{"word", to_string(w)}, {"image", to_json(g)}, {"in_kernel", member}};
    if (!member) code = kRefuted;
  }
  return {doc, code};
}

Outcome run_orbit(const Config& c) {
  const auto m = compile(description_of(c.map, c.file));
  const auto gens = parse_word_list(c.gens);
  const auto r = orbit_probe(m, gens, track_point(c.start), c.radius);
  Json doc = header(c);
  doc["map"] = m.description().catalog_name;
  Json g = Json::array();
  for (const auto& w : gens) g.push_back(to_string(w));
  doc["generators"] = g;
  doc["start"] = c.start;
  doc["orbit"] = to_json(r);
  return {doc, r.all_reached() ? kConfirmed : kUnknown};
}

Outcome run_verify_certificate(const Config& c) {
  if (c.file.empty()) throw InputError("verify-certificate needs --file");
  const Json j = parse_json(read_file(c.file));
  if (!j.is_object() || !j.contains("schema_version")) throw InputError("not a certificate document");
  if (j.at("schema_version").get<int>() != kCertificateSchemaVersion)
    throw InputError("unsupported certificate schema version " + j.at("schema_version").dump());
  const std::string kind = j.value("kind", "");
  Json doc = header(c);
  doc["kind"] = kind;
  std::optional<std::string> failure;
  if (kind == "primitivity") {
    const Json* cert = j.contains("certificate") ? &j.at("certificate") : nullptr;
    if (!cert && j.contains("verdict") && j.at("verdict").contains("certificate")) cert = &j.at("verdict").at("certificate");
    if (!cert) throw InputError("document carries no certificate");
    const auto m = compile(description_from_json(j.at("map")));
    failure = verify_certificate(m, certificate_from_json(*cert));
    doc["map"] = m.description().catalog_name;
  } else if (kind == "nonparabolicity") {
    failure = verify_certificate(nonparabolicity_from_json(j.at("certificate")));
  } else {
    throw InputError("unknown certificate kind '" + kind + "'");
  }
  doc["valid"] = !failure;
  if (failure) doc["failure"] = *failure;
  return {doc, failure ? kRefuted : kConfirmed};
}

int emit(const Config& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(c.out);
  if (!out) throw InputError("cannot write '" + c.out + "'");
  out << text;
  return 0;
}

int run(const Config& c) {
  if (c.command == "export-dot") {
    if (c.format != "dot" && c.format != "text") throw InputError("export-dot writes dot only");
    const auto m = compile(description_of(c.map, c.file));
    emit(c, to_dot(m, c.radius));
    return kConfirmed;
  }
  if (c.format == "dot") throw InputError("--format dot applies to export-dot only");
  Outcome o;
  if (c.command == "build") o = run_build(c);
  else if (c.command == "verify") o = run_verify(c);
  else if (c.command == "primitivity") o = run_primitivity(c);
  else if (c.command == "presentation") o = run_presentation(c);
  else if (c.command == "signature") o = run_signature(c);
  else if (c.command == "torsion") o = run_torsion(c);
  else if (c.command == "isomorphic") o = run_isomorphic(c);
  else if (c.command == "crystal") o = run_crystal(c);
  else if (c.command == "orbit") o = run_orbit(c);
  else if (c.command == "verify-certificate") o = run_verify_certificate(c);
  o.doc["exit_code"] = o.code;
  if (c.format == "json") {
    emit(c, o.doc.dump(2) + "\n");
  } else {
    std::ostringstream os;
    flatten(o.doc, "", os);
    emit(c, os.str());
  }
  return o.code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block-chain models of infinite maps: relators, primitivity, stabilizers, crystal quotient"};
  app.require_subcommand(1);
  Config c;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"build", "compile a map and report its census"},
      {"verify", "check the x and y relators on the window"},
      {"primitivity", "primitivity verdict, optionally certified by a schema"},
      {"presentation", "Schreier generators of the anchor stabilizer"},
      {"signature", "free-product signature of the anchor stabilizer"},
      {"torsion", "check for short x- or y-cycles"},
      {"isomorphic", "shift equivalence of two Neumann maps"},
      {"crystal", "relators, images, nonparabolicity and Petrie paths of the crystal quotient"},
      {"orbit", "orbit of the anchor stabilizer subgroup on the window"},
      {"export-dot", "DOT drawing of the window"},
      {"verify-certificate", "re-check a stored certificate"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--map", c.map, "catalog expression or JSON description");
    sub->add_option("--file", c.file, "description file (certificate file for verify-certificate)");
    sub->add_option("--radius", c.radius, "window radius")->check(CLI::Range(Label{1}, Label{1'000'000'000}));
    sub->add_option("--nmax", c.n_max, "largest modulus scanned")->check(CLI::Range(2, 1'000'000));
    sub->add_option("--schema", c.schema, "certificate schema, e.g. fixed:0;3n or stabilizer:flower");
    sub->add_option("--shift-bound", c.shift_bound, "largest shift searched")->check(CLI::NonNegativeNumber);
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json", "dot"}));
    sub->add_option("--out", c.out, "write output to a file");
    sub->add_option("--a", c.a, "first map (isomorphic)");
    sub->add_option("--b", c.b, "second map (isomorphic)");
    sub->add_option("--word", c.word, "word to test for membership (crystal)");
    sub->add_option("--gens", c.gens, "';'-separated generator words (orbit)");
    sub->add_option("--start", c.start, "start label (orbit)");
    sub->add_option("--kmax", c.k_max, "powers of Z checked (crystal)")->check(CLI::PositiveNumber);
    sub->add_option("--steps", c.steps, "Petrie walk length (crystal)")->check(CLI::PositiveNumber);
    sub->callback([&c, name = name] { c.command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kConfirmed : kError;
  }
  try {
    return run(c);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kError;
}
