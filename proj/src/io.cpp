#include "statcat/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "statcat/error.hpp"

namespace statcat {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), e.what());
  }
}

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) {
    out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return out.str();
}

namespace {

// JSON pointer helpers for diagnostics.
std::string ptr(const std::string& base, const std::string& key) {
  std::string escaped;
  for (char c : key) {
    if (c == '~') escaped += "~0";
    else if (c == '/') escaped += "~1";
    else escaped += c;
  }
  return base + "/" + escaped;
}
std::string ptr(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

const Json& field(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(ptr(where, key), "missing required field");
  return *it;
}

const Json* optional_field(const Json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

std::string string_at(const Json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where, "expected a string");
  return j.get<std::string>();
}

std::size_t index_at(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned()) throw ParseError(where, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

Rational rational_at(const Json& j, const std::string& where) {
  const auto s = string_at(j, where);
  try {
    return parse_rational(s);
  } catch (const ParseError& e) {
    throw ParseError(where, "expected a rational string \"a/b\" or \"a\", got \"" + s + "\"");
  }
}

void check_schema(const Json& j, const char* schema) {
  const auto s = string_at(field(j, "schema", ""), "/schema");
  if (s != schema) throw ParseError("/schema", "expected \"" + std::string(schema) + "\", got \"" + s + "\"");
}

FiniteSpace space_at(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected an array of point labels");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < j.size(); ++i) labels.push_back(string_at(j[i], ptr(where, i)));
  std::vector<std::string> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) throw ParseError(where, "duplicate point label \"" + *dup + "\"");
  try {
    return FiniteSpace(std::move(labels));
  } catch (const Error& e) {
    throw ParseError(where, e.what());
  }
}

std::size_t point_at(const FiniteSpace& space, const std::string& label, const std::string& where) {
  auto p = space.find(label);
  if (!p) throw ParseError(where, "unknown point label \"" + label + "\"");
  return *p;
}

SigmaAlgebra sigma_at(const FiniteSpace& space, const Json* j, const std::string& where) {
  if (!j) return SigmaAlgebra::power_set(space);
  if (!j->is_array()) throw ParseError(where, "expected an array of blocks");
  std::vector<Block> blocks;
  for (std::size_t b = 0; b < j->size(); ++b) {
    const auto bw = ptr(where, b);
    if (!(*j)[b].is_array()) throw ParseError(bw, "expected an array of point labels");
    Block block;
    for (std::size_t i = 0; i < (*j)[b].size(); ++i) {
      block.push_back(point_at(space, string_at((*j)[b][i], ptr(bw, i)), ptr(bw, i)));
    }
    blocks.push_back(std::move(block));
  }
  try {
    return SigmaAlgebra(space, std::move(blocks));
  } catch (const Error& e) {
    throw ParseError(where, e.what());
  }
}

RationalVector masses_at(const FiniteSpace& space, const Json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where, "expected an object mapping point labels to masses");
  RationalVector mass(space.size(), Rational(0));
  for (const auto& [label, value] : j.items()) {
    const auto w = ptr(where, label);
    mass[point_at(space, label, w)] = rational_at(value, w);
    if (sgn(mass[point_at(space, label, w)]) < 0) throw ParseError(w, "negative mass");
  }
  return mass;
}

Json sigma_json(const SigmaAlgebra& sigma) {
  Json blocks = Json::array();
  for (const auto& atom : sigma.atoms()) {
    Json block = Json::array();
    for (auto p : atom) block.push_back(sigma.space().label(p));
    blocks.push_back(std::move(block));
  }
  return blocks;
}

Json labels_json(const FiniteSpace& space) {
  Json out = Json::array();
  for (const auto& l : space.labels()) out.push_back(l);
  return out;
}

Json atom_json(const SigmaAlgebra& sigma, std::size_t atom) {
  Json out = Json::array();
  for (auto p : sigma.atoms().at(atom)) out.push_back(sigma.space().label(p));
  return out;
}

}  // namespace

Json rational_json(const Rational& q) { return to_string(q); }

Json measure_json(const RationalMeasure& m) {
  Json out = Json::object();
  for (std::size_t p = 0; p < m.space().size(); ++p) out[m.space().label(p)] = to_string(m.mass(p));
  return out;
}

ModelDocument model_document_from_json(const Json& j) {
  check_schema(j, kModelSchema);
  const auto space = space_at(field(j, "points", ""), "/points");
  const auto sigma = sigma_at(space, optional_field(j, "sigma"), "/sigma");

  const auto& fam = field(j, "family", "");
  if (!fam.is_array()) throw ParseError("/family", "expected an array of members");
  if (fam.empty()) throw ParseError("/family", "a model needs at least one member");
  std::vector<NamedMeasure> family;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const auto w = ptr("/family", i);
    auto name = string_at(field(fam[i], "name", w), ptr(w, "name"));
    auto mass = masses_at(space, field(fam[i], "mass", w), ptr(w, "mass"));
    RationalMeasure m(space, std::move(mass), false);
    if (m.total() != 1) {
      throw InvariantError("family member \"" + name + "\" (" + w + ") has total mass " +
                           to_string(m.total()) + ", expected 1");
    }
    for (const auto& other : family) {
      if (other.name == name) throw ParseError(ptr(w, "name"), "duplicate member name \"" + name + "\"");
    }
    family.push_back({std::move(name), RationalMeasure::probability(space, m.masses())});
  }

  std::optional<RationalMeasure> dominating;
  if (const auto* d = optional_field(j, "dominating")) {
    dominating.emplace(space, masses_at(space, *d, "/dominating"), false);
  }
  FiniteModel model(sigma, std::move(family), std::move(dominating));

  std::optional<Parametrisation> theta;
  if (const auto* p = optional_field(j, "parametrisation")) {
    const auto& params = field(*p, "parameters", "/parametrisation");
    const auto& assign = field(*p, "assignment", "/parametrisation");
    if (!params.is_array()) throw ParseError("/parametrisation/parameters", "expected an array");
    if (!assign.is_array()) throw ParseError("/parametrisation/assignment", "expected an array");
    std::vector<RationalVector> vectors;
    for (std::size_t i = 0; i < params.size(); ++i) {
      const auto w = ptr("/parametrisation/parameters", i);
      if (!params[i].is_array()) throw ParseError(w, "expected an array of rationals");
      RationalVector v;
      for (std::size_t k = 0; k < params[i].size(); ++k) v.push_back(rational_at(params[i][k], ptr(w, k)));
      vectors.push_back(std::move(v));
    }
    std::vector<std::size_t> assignment;
    for (std::size_t i = 0; i < assign.size(); ++i) {
      const auto w = ptr("/parametrisation/assignment", i);
      const auto name = string_at(assign[i], w);
      auto idx = model.find(name);
      if (!idx) throw ParseError(w, "unknown family member \"" + name + "\"");
      assignment.push_back(*idx);
    }
    try {
      theta.emplace(std::move(vectors), std::move(assignment));
    } catch (const ConstructionError& e) {
      throw ParseError("/parametrisation", e.what());
    }
  }
  return ModelDocument{std::move(model), std::move(theta)};
}

Json model_document_to_json(const ModelDocument& doc) {
  const auto& m = doc.model;
  Json j;
  j["schema"] = kModelSchema;
  j["points"] = labels_json(m.space());
  j["sigma"] = sigma_json(m.sigma());
  Json fam = Json::array();
  for (const auto& member : m.family()) {
    fam.push_back({{"name", member.name}, {"mass", measure_json(member.measure)}});
  }
  j["family"] = std::move(fam);
  if (m.dominating()) j["dominating"] = measure_json(*m.dominating());
  if (doc.parametrisation) {
    Json params = Json::array();
    for (const auto& v : doc.parametrisation->parameters()) {
      Json row = Json::array();
      for (const auto& q : v) row.push_back(to_string(q));
      params.push_back(std::move(row));
    }
    Json assign = Json::array();
    for (auto i : doc.parametrisation->assignment()) assign.push_back(m.name(i));
    j["parametrisation"] = {{"parameters", std::move(params)}, {"assignment", std::move(assign)}};
  }
  return j;
}

FiniteModel parse_model(const std::string& path) {
  return model_document_from_json(parse_json(read_file(path))).model;
}

namespace {

SigmaAlgebra map_side(const Json& j, const std::string& where,
                      const std::optional<SigmaAlgebra>& given) {
  const auto space = space_at(field(j, "points", where), ptr(where, "points"));
  const auto* sigma_doc = optional_field(j, "sigma");
  if (!given) return sigma_at(space, sigma_doc, ptr(where, "sigma"));
  if (!(space == given->space())) {
    throw ParseError(ptr(where, "points"), "point labels differ from the model's space");
  }
  if (sigma_doc && !(sigma_at(space, sigma_doc, ptr(where, "sigma")) == *given)) {
    throw ParseError(ptr(where, "sigma"), "σ-algebra conflicts with the model's σ-algebra");
  }
  return *given;
}

}  // namespace

MeasurableMap map_from_json(const Json& j, const std::optional<SigmaAlgebra>& domain,
                            const std::optional<SigmaAlgebra>& codomain) {
  check_schema(j, kMapSchema);
  const auto dom = map_side(field(j, "domain", ""), "/domain", domain);
  const auto cod = map_side(field(j, "codomain", ""), "/codomain", codomain);
  const auto& assign = field(j, "assignment", "");
  if (!assign.is_object()) throw ParseError("/assignment", "expected an object");
  const std::size_t unset = cod.space().size();
  std::vector<std::size_t> assignment(dom.space().size(), unset);
  for (const auto& [label, value] : assign.items()) {
    const auto w = ptr("/assignment", label);
    assignment[point_at(dom.space(), label, w)] = point_at(cod.space(), string_at(value, w), w);
  }
  for (std::size_t x = 0; x < assignment.size(); ++x) {
    if (assignment[x] == unset) {
      throw ParseError(ptr("/assignment", dom.space().label(x)), "point has no image");
    }
  }
  return MeasurableMap(dom, cod, std::move(assignment));
}

Json map_to_json(const MeasurableMap& map) {
  Json j;
  j["schema"] = kMapSchema;
  j["domain"] = {{"points", labels_json(map.domain().space())}, {"sigma", sigma_json(map.domain())}};
  j["codomain"] = {{"points", labels_json(map.codomain().space())},
                   {"sigma", sigma_json(map.codomain())}};
  Json assign = Json::object();
  for (std::size_t x = 0; x < map.assignment().size(); ++x) {
    assign[map.domain().space().label(x)] = map.codomain().space().label(map(x));
  }
  j["assignment"] = std::move(assign);
  return j;
}

FiniteTopology topology_from_json(const Json& j) {
  check_schema(j, kTopologySchema);
  const auto size = index_at(field(j, "size", ""), "/size");
  if (size > FiniteTopology::kMaxGround) throw ParseError("/size", "ground set too large");
  const auto& opens = field(j, "opens", "");
  if (!opens.is_array()) throw ParseError("/opens", "expected an array of index arrays");
  std::vector<OpenSet> masks;
  for (std::size_t o = 0; o < opens.size(); ++o) {
    const auto w = ptr("/opens", o);
    if (!opens[o].is_array()) throw ParseError(w, "expected an array of indices");
    OpenSet mask = 0;
    for (std::size_t i = 0; i < opens[o].size(); ++i) {
      const auto x = index_at(opens[o][i], ptr(w, i));
      if (x >= size) throw ParseError(ptr(w, i), "index outside the ground set");
      mask |= OpenSet{1} << x;
    }
    masks.push_back(mask);
  }
  try {
    return FiniteTopology(size, std::move(masks));
  } catch (const InvalidTopology& e) {
    throw ParseError("/opens", e.what());
  }
}

Json topology_to_json(const FiniteTopology& t) {
  Json opens = Json::array();
  for (auto o : t.opens()) {
    Json set = Json::array();
    for (std::size_t x = 0; x < t.size(); ++x) {
      if (o >> x & 1) set.push_back(x);
    }
    opens.push_back(std::move(set));
  }
  return {{"schema", kTopologySchema}, {"size", t.size()}, {"opens", std::move(opens)}};
}

Json kernel_json(const MarkovKernel& k) {
  Json rows = Json::array();
  for (const auto& r : k.rows()) {
    Json row = Json::array();
    for (const auto& q : r) row.push_back(to_string(q));
    rows.push_back(std::move(row));
  }
  return {{"domain", sigma_json(k.domain())},
          {"codomain", sigma_json(k.codomain())},
          {"rows", std::move(rows)}};
}

MarkovKernel kernel_from_json(const Json& j, const SigmaAlgebra& domain,
                              const SigmaAlgebra& codomain) {
  if (field(j, "domain", "kernel") != sigma_json(domain)) {
    throw ParseError("kernel/domain", "kernel domain atoms differ from the expected σ-algebra");
  }
  if (field(j, "codomain", "kernel") != sigma_json(codomain)) {
    throw ParseError("kernel/codomain", "kernel codomain atoms differ from the expected σ-algebra");
  }
  const auto& rows = field(j, "rows", "kernel");
  if (!rows.is_array()) throw ParseError("kernel/rows", "expected an array");
  RationalMatrix m;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!rows[r].is_array()) throw ParseError(ptr("kernel/rows", r), "expected an array");
    RationalVector row;
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      row.push_back(rational_at(rows[r][c], ptr(ptr("kernel/rows", r), c)));
    }
    m.push_back(std::move(row));
  }
  return MarkovKernel(domain, codomain, std::move(m));
}

Json witness_json(const Witness& w, const WitnessContext& ctx) {
  Json j;
  j["kind"] = w.kind;
  auto member = [](const FiniteModel* m, std::size_t i) -> Json {
    if (m && i < m->size()) return {{"index", i}, {"name", m->name(i)}};
    return {{"index", i}};
  };
  if (w.member) j["member"] = member(ctx.members, *w.member);
  if (w.other_member) {
    j["other_member"] = member(ctx.other_members ? ctx.other_members : ctx.members, *w.other_member);
  }
  if (w.x) j["x"] = ctx.x_sigma ? atom_json(*ctx.x_sigma, *w.x) : Json(*w.x);
  if (w.y) j["y"] = ctx.y_sigma ? atom_json(*ctx.y_sigma, *w.y) : Json(*w.y);
  if (w.lhs) j["lhs"] = to_string(*w.lhs);
  if (w.rhs) j["rhs"] = to_string(*w.rhs);
  if (!w.values.empty()) {
    if (ctx.values_space && ctx.values_space->size() == w.values.size()) {
      Json v = Json::object();
      for (std::size_t p = 0; p < w.values.size(); ++p) v[ctx.values_space->label(p)] = to_string(w.values[p]);
      j["values"] = std::move(v);
    } else {
      Json v = Json::array();
      for (const auto& q : w.values) v.push_back(to_string(q));
      j["values"] = std::move(v);
    }
  }
  if (!w.detail.empty()) j["detail"] = w.detail;
  return j;
}

Json report_json(const CheckReport& r, const WitnessContext& ctx) {
  Json j;
  j["route"] = r.route;
  j["pass"] = r.pass;
  j["checked"] = r.checked;
  if (r.witness) j["witness"] = witness_json(*r.witness, ctx);
  const auto& c = r.certificate;
  if (!c.empty()) {
    Json cert = Json::object();
    if (c.forward) cert["forward"] = kernel_json(*c.forward);
    if (c.backward) cert["backward"] = kernel_json(*c.backward);
    if (c.infeasibility) {
      Json rows = Json::array();
      for (std::size_t i = 0; i < c.infeasibility->multipliers.size(); ++i) {
        rows.push_back({{"constraint", c.infeasibility->constraint_labels.at(i)},
                        {"multiplier", to_string(c.infeasibility->multipliers[i])}});
      }
      cert["infeasibility"] = std::move(rows);
    }
    if (c.bijection) cert["bijection"] = *c.bijection;
    j["certificate"] = std::move(cert);
  }
  return j;
}

std::vector<std::string> verify_equivalence_certificate(const Json& certificate,
                                                        const FiniteModel& a,
                                                        const FiniteModel& b) {
  std::vector<std::string> problems;
  const auto* reports = optional_field(certificate, "reports");
  if (!reports || !reports->is_array()) return {"certificate has no reports"};
  std::size_t pairs = 0;
  for (const auto& r : *reports) {
    const auto* c = optional_field(r, "certificate");
    if (!c) continue;
    const auto* f = optional_field(*c, "forward");
    const auto* g = optional_field(*c, "backward");
    if (!f || !g) continue;
    const std::string route = r.value("route", std::string("?"));
    ++pairs;
    try {
      const auto forward = kernel_from_json(*f, a.sigma(), b.sigma());
      const auto backward = kernel_from_json(*g, b.sigma(), a.sigma());
      for (std::size_t i = 0; i < a.size(); ++i) {
        const auto there = apply_kernel(forward, a.member(i));
        bool hit = false;
        for (std::size_t q = 0; q < b.size() && !hit; ++q) hit = l1_identical(b.sigma(), there, b.member(q));
        if (!hit) problems.push_back(route + ": forward image of \"" + a.name(i) + "\" is not in the target family");
        if (!l1_identical(a.sigma(), apply_kernel(backward, there), a.member(i))) {
          problems.push_back(route + ": backward kernel does not recover \"" + a.name(i) + "\"");
        }
      }
    } catch (const Error& e) {
      problems.push_back(route + ": " + e.what());
    }
  }
  if (certificate.value("verdict", std::string()) == "pass" && pairs == 0) {
    problems.push_back("pass verdict without any kernel certificate");
  }
  return problems;
}

}  // namespace statcat
