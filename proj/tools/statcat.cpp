// statcat: batch checks on finite statistical models.
//
// Exit codes: 0 the property holds, 1 it fails (the certificate carries a
// witness), 2 input or usage error.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "statcat/bayes.hpp"
#include "statcat/error.hpp"
#include "statcat/inference.hpp"
#include "statcat/io.hpp"
#include "statcat/morphism.hpp"
#include "statcat/parametrisation.hpp"
#include "statcat/topology.hpp"

#ifndef STATCAT_DEFAULT_DATA_DIR
#define STATCAT_DEFAULT_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace statcat;

namespace {

struct Options {
  std::string model, model_a, model_b, map, target, category = "Set", certificate;
  std::vector<std::string> topologies;
  std::string out, data_dir;
  unsigned threads = 1;
  bool json = false;
  bool oracle = false;
};

class Session {
 public:
  explicit Session(const Options& o) : opt_(o) {
    if (!opt_.data_dir.empty()) {
      data_dir_ = opt_.data_dir;
    } else if (const char* env = std::getenv("STATCAT_DATA_DIR")) {
      data_dir_ = env;
    } else {
      data_dir_ = STATCAT_DEFAULT_DATA_DIR;
    }
  }

  // N, N.json, <dir>/N.<kind>.json, <dir>/N.json.
  std::string resolve(const std::string& name, const std::string& kind) const {
    const std::vector<fs::path> candidates = {name, name + ".json",
                                              fs::path(data_dir_) / (name + "." + kind + ".json"),
                                              fs::path(data_dir_) / (name + ".json")};
    for (const auto& c : candidates) {
      std::error_code ec;
      if (fs::is_regular_file(c, ec)) return c.string();
    }
    throw ParseError(name, "no " + kind + " file found (also tried " + data_dir_ + ")");
  }

  Json load(const std::string& role, const std::string& name, const std::string& kind) {
    const auto bytes = read_file(resolve(name, kind));
    inputs_[role] = {{"sha256", sha256_hex(bytes)}};
    try {
      return parse_json(bytes);
    } catch (const ParseError& e) {
      throw ParseError(role + " " + e.where(), e.what());
    }
  }

  ModelDocument model(const std::string& role, const std::string& name) {
    try {
      return model_document_from_json(load(role, name, "model"));
    } catch (const ParseError& e) {
      throw ParseError(role + " " + e.where(), strip(e));
    }
  }

  MeasurableMap map(const std::string& name, const std::optional<SigmaAlgebra>& dom,
                    const std::optional<SigmaAlgebra>& cod) {
    try {
      return map_from_json(load("map", name, "map"), dom, cod);
    } catch (const ParseError& e) {
      throw ParseError("map " + e.where(), strip(e));
    }
  }

  FiniteTopology topology(const std::string& role, const std::string& name) {
    try {
      return topology_from_json(load(role, name, "topology"));
    } catch (const ParseError& e) {
      throw ParseError(role + " " + e.where(), strip(e));
    }
  }

  std::size_t search_bound() const {
    const char* env = std::getenv("STATCAT_SEARCH_BOUND");
    if (!env) return 8;
    try {
      std::size_t used = 0;
      const auto v = std::stoul(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw ParseError("STATCAT_SEARCH_BOUND", "expected a nonnegative integer");
  }

  ExecutionPolicy policy() const { return ExecutionPolicy{opt_.threads}; }

  /// Writes the certificate and the human/JSON summary; returns the exit code.
  int finish(const std::string& command, bool pass, Json reports, Json result = nullptr,
             std::optional<bool> agree = std::nullopt) {
    Json cert;
    cert["schema"] = kCertificateSchema;
    cert["tool"] = {{"name", "statcat"}, {"version", kToolVersion}};
    cert["command"] = command;
    cert["inputs"] = inputs_.empty() ? Json::object() : Json(inputs_);
    cert["verdict"] = pass ? "pass" : "fail";
    cert["reports"] = std::move(reports);
    if (!result.is_null()) cert["result"] = std::move(result);
    if (agree) cert["agree"] = *agree;
    const auto text = dump_canonical(cert);
    if (!opt_.out.empty()) {
      std::ofstream out(opt_.out, std::ios::binary);
      if (!out) throw ParseError(opt_.out, "cannot write certificate");
      out << text;
    }
    if (opt_.json) {
      std::cout << text;
    } else {
      std::cout << command << ": " << (pass ? "PASS" : "FAIL") << "\n";
      for (const auto& r : cert["reports"]) {
        std::cout << "  " << r["route"].get<std::string>() << ": "
                  << (r["pass"].get<bool>() ? "pass" : "fail") << "\n";
        if (r.contains("witness")) std::cout << "    witness " << r["witness"].dump() << "\n";
      }
      if (agree) std::cout << "  agree: " << (*agree ? "true" : "false") << "\n";
      if (cert.contains("result")) std::cout << "  result " << cert["result"].dump() << "\n";
    }
    return pass ? 0 : 1;
  }

 private:
  static std::string strip(const ParseError& e) {
    const std::string what = e.what();
    const auto prefix = e.where() + ": ";
    return what.rfind(prefix, 0) == 0 ? what.substr(prefix.size()) : what;
  }

  const Options& opt_;
  std::string data_dir_;
  std::map<std::string, Json> inputs_;
};

Json classes_json(const std::vector<std::vector<std::size_t>>& classes) {
  Json out = Json::array();
  for (const auto& c : classes) out.push_back(c);
  return out;
}

Json member_classes_json(const FiniteModel& m) {
  Json out = Json::array();
  for (const auto& c : l1_identity_partition(m).classes) {
    Json names = Json::array();
    for (auto i : c) names.push_back(m.name(i));
    out.push_back(std::move(names));
  }
  return out;
}

// Witness contexts differ by kind: some indices point into the target family.
WitnessContext context_for(const Witness& w, const FiniteModel& a, const FiniteModel& b) {
  WitnessContext ctx{&a, &b, &a.sigma(), &b.sigma(), &b.space()};
  if (w.kind == "epi-miss" || w.kind == "round-trip-target") ctx.members = &b;
  if (w.kind == "mono-collision") ctx.other_members = &a;
  return ctx;
}

Json pair_report(const CheckReport& r, const FiniteModel& a, const FiniteModel& b) {
  if (!r.witness) return report_json(r, {});
  return report_json(r, context_for(*r.witness, a, b));
}

int cmd_sufficient(Session& s, const Options& o) {
  const auto m = s.model("model", o.model).model;
  const auto t = s.map(o.map, m.sigma(), std::nullopt);
  const auto r = is_sufficient(m, t);
  WitnessContext ctx{&m, nullptr, &m.sigma(), &t.codomain(), nullptr};
  return s.finish("sufficient", r.pass, Json::array({report_json(r, ctx)}));
}

int cmd_complete(Session& s, const Options& o) {
  std::optional<SigmaAlgebra> dom;
  if (!o.model.empty()) dom = s.model("model", o.model).model.sigma();
  const auto target = s.model("target", o.target).model;
  const auto t = s.map(o.map, dom, target.sigma());
  const auto r = is_complete(target, t);
  WitnessContext ctx{nullptr, nullptr, nullptr, nullptr, &target.space()};
  Json result;
  Json image = Json::array();
  const auto image_sigma = image_sigma_algebra(t, t.domain());
  for (const auto& block : image_sigma.atoms()) {
    Json labels = Json::array();
    for (auto p : block) labels.push_back(target.space().label(p));
    image.push_back(std::move(labels));
  }
  result["image_sigma"] = std::move(image);
  return s.finish("complete", r.pass, Json::array({report_json(r, ctx)}), result);
}

Json oracle_json(const OracleResult& res, const FiniteModel& a, const FiniteModel& b) {
  Json cands = Json::array();
  for (const auto& c : res.candidates) {
    Json assign = Json::object();
    for (std::size_t x = 0; x < c.assignment.size(); ++x) {
      assign[a.space().label(x)] = b.space().label(c.assignment[x]);
    }
    cands.push_back({{"assignment", std::move(assign)},
                     {"iso", c.verdict.route_iso.pass},
                     {"detailed_balance", c.verdict.route_detailed_balance.pass},
                     {"suff_complete", c.verdict.route_suff_complete.pass},
                     {"agree", c.verdict.agree}});
  }
  return {{"maps_enumerated", res.maps_enumerated},
          {"measurable", res.measurable},
          {"candidates", std::move(cands)},
          {"disagreements", res.disagreements()}};
}

int cmd_equivalent(Session& s, const Options& o) {
  const auto a = s.model("model-a", o.model_a).model;
  const auto b = s.model("model-b", o.model_b).model;
  if (o.oracle) {
    const auto res = oracle_equivalence_search(a, b, s.policy());
    return s.finish("equivalent", res.any_equivalent(), Json::array(), oracle_json(res, a, b),
                    res.disagreements() == 0);
  }
  if (o.map.empty()) throw ParseError("--map", "required unless --oracle is given");
  const auto t = s.map(o.map, a.sigma(), b.sigma());
  const auto v = check_equivalence(a, b, t, s.policy());
  Json reports = Json::array({pair_report(v.route_iso, a, b),
                              pair_report(v.route_detailed_balance, a, b),
                              pair_report(v.route_suff_complete, a, b)});
  return s.finish("equivalent", v.pass() && v.agree, std::move(reports), nullptr, v.agree);
}

int cmd_classify(Session& s, const Options& o) {
  const auto a = s.model("model-a", o.model_a.empty() ? o.model : o.model_a).model;
  std::optional<StatisticalMorphism> f;
  if (o.model_b.empty()) {
    f.emplace(induce_morphism(a, s.map(o.map, a.sigma(), std::nullopt)));
  } else {
    const auto b = s.model("model-b", o.model_b).model;
    f.emplace(match_morphism(a, b, s.map(o.map, a.sigma(), b.sigma())));
  }
  const auto c = classify_morphism(*f);
  CheckReport r;
  r.route = "reverse-kernel";
  r.pass = c.iso_reverse_kernel;
  r.checked = f->source().size() + f->target().size();
  if (r.pass) {
    r.certificate.forward = f->kernel();
    r.certificate.backward = c.reverse_kernel;
  } else {
    r.witness = c.witness;
    r.certificate.infeasibility = c.infeasibility;
  }
  Json result = {{"mono", c.mono},
                 {"epi", c.epi},
                 {"iso_naive", c.iso_naive},
                 {"iso_reverse_kernel", c.iso_reverse_kernel}};
  return s.finish("classify", r.pass, Json::array({pair_report(r, f->source(), f->target())}),
                  result);
}

int cmd_bayes(Session& s, const Options& o) {
  const auto m = s.model("model", o.model).model;
  const auto t = s.map(o.map, m.sigma(), std::nullopt);
  const auto k = kernel_from_map(t);
  Json reports = Json::array();
  bool pass = true;
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto r = bayes_identity_check(k, m.member(i));
    r.route += "[" + m.name(i) + "]";
    if (r.witness) r.witness->member = i;
    pass = pass && r.pass;
    reports.push_back(report_json(r, {&m, nullptr, &m.sigma(), &t.codomain(), nullptr}));
  }
  return s.finish("bayes", pass, std::move(reports));
}

int cmd_balance(Session& s, const Options& o) {
  const auto m = s.model("model", o.model).model;
  const auto t = s.map(o.map, m.sigma(), std::nullopt);
  const auto k = kernel_from_map(t);
  const auto& mu = m.reference_measure();
  const auto reps = l1_identity_partition(m).representatives();
  auto r = detailed_balance_check(regular_conditional(k, mu), dual_conditional(k, mu),
                                  m.measures(reps));
  if (r.witness) r.witness->member = reps[*r.witness->member];
  if (r.pass) {
    r.certificate.forward = k;
    r.certificate.backward = dual_conditional(k, mu).kernel();
  }
  return s.finish("balance", r.pass,
                  Json::array({report_json(r, {&m, nullptr, &m.sigma(), &t.codomain(), nullptr})}));
}

Json quotient_json(const QuotientMap& q) {
  return {{"classes", classes_json(q.classes)}, {"quotient", topology_to_json(q.quotient)}};
}

int cmd_quotient(Session& s, const Options& o) {
  if (o.topologies.size() != 1) throw ParseError("--topology", "expected exactly one topology");
  const auto q = kolmogorov_quotient(s.topology("topology", o.topologies[0]));
  return s.finish("quotient", q.quotient.is_t0(), Json::array(), quotient_json(q));
}

int cmd_canonical(Session& s, const Options& o) {
  const auto m = s.model("model", o.model).model;
  const auto t = canonical_topology(m);
  const auto q = kolmogorov_quotient(t);
  Json dist = Json::array();
  for (const auto& row : estimand_pseudometric(Estimand::likelihood(1), m)) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(to_string(v));
    dist.push_back(std::move(r));
  }
  Json result = {{"topology", topology_to_json(t)},
                 {"pseudometric", std::move(dist)},
                 {"indistinguishable", classes_json(q.classes)},
                 {"l1_classes", member_classes_json(m)}};
  const bool matches = q.classes == l1_identity_partition(m).classes;
  return s.finish("canonical-topology", matches, Json::array(), result);
}

int cmd_kq(Session& s, const Options& o) {
  if (o.topologies.size() != 2) throw ParseError("--topology", "expected exactly two topologies");
  const auto a = s.topology("topology-a", o.topologies[0]);
  const auto b = s.topology("topology-b", o.topologies[1]);
  const auto found = is_kolmogorov_equivalent(a, b, s.search_bound(), s.policy());
  CheckReport r;
  r.route = "kolmogorov-equivalence";
  r.pass = found.has_value();
  r.checked = 1;
  if (found) {
    r.certificate.bijection = *found;
  } else {
    r.witness = Witness{.kind = "no-homeomorphism"};
  }
  Json result = {{"a", quotient_json(kolmogorov_quotient(a))},
                 {"b", quotient_json(kolmogorov_quotient(b))}};
  return s.finish("kq-equivalent", r.pass, Json::array({report_json(r, {})}), result);
}

Json param_report_json(const ParamReport& r) {
  Json j = {{"identifiable", r.identifiable},
            {"injective", r.injective},
            {"surjective", r.surjective},
            {"cardinality", r.cardinality},
            {"length", r.length},
            {"affine_rank", r.affine_rank},
            {"class_count", r.class_count}};
  if (r.collision) j["collision"] = {r.collision->first, r.collision->second};
  if (r.uncovered_class) j["uncovered_class"] = *r.uncovered_class;
  return j;
}

int cmd_param(Session& s, const Options& o) {
  const auto doc = s.model("model", o.model);
  if (!doc.parametrisation) throw ParseError("model /parametrisation", "model has no parametrisation");
  const auto r = analyze_parametrisation(*doc.parametrisation, doc.model);
  return s.finish("param", r.identifiable, Json::array(), param_report_json(r));
}

int cmd_minimal(Session& s, const Options& o) {
  const auto category = parse_category(o.category);
  const auto doc = s.model("model", o.model);
  auto [length, theta] = minimal_length(doc.model, category);
  const auto r = analyze_parametrisation(theta, doc.model);
  Json out_doc = model_document_to_json(ModelDocument{doc.model, theta});
  Json result = {{"length", length},
                 {"parametrisation", out_doc["parametrisation"]},
                 {"report", param_report_json(r)}};
  return s.finish("minimal", r.identifiable, Json::array(), result);
}

int cmd_structural(Session& s, const Options& o) {
  const auto category = parse_category(o.category);
  const auto a = s.model("model-a", o.model_a).model;
  const auto b = s.model("model-b", o.model_b).model;
  const auto r = structural_equivalence(a, b, category, s.search_bound(), s.policy());
  Json result = {{"category", to_string(category)},
                 {"a_classes", member_classes_json(a)},
                 {"b_classes", member_classes_json(b)}};
  return s.finish("structural", r.pass, Json::array({report_json(r, {})}), result);
}

int cmd_verify(Session& s, const Options& o) {
  const auto cert = s.load("certificate", o.certificate, "certificate");
  const auto a = s.model("model-a", o.model_a).model;
  const auto b = s.model("model-b", o.model_b).model;
  const auto problems = verify_equivalence_certificate(cert, a, b);
  Json result = {{"problems", problems}};
  return s.finish("verify", problems.empty(), Json::array(), result);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks on finite statistical models"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--threads", o.threads, "Worker threads for parallel searches")
      ->check(CLI::Range(1u, 256u));
  app.add_option("--out", o.out, "Write the JSON certificate to FILE");
  app.add_flag("--json", o.json, "Print the JSON certificate instead of a summary");
  app.add_option("--data-dir", o.data_dir, "Directory searched for named fixtures");

  std::map<std::string, std::function<int(Session&, const Options&)>> handlers;
  auto sub = [&](const std::string& name, const std::string& help, auto handler) {
    handlers[name] = handler;
    return app.add_subcommand(name, help);
  };

  auto* c = sub("sufficient", "Is the map sufficient for the model's family?", cmd_sufficient);
  c->add_option("--model", o.model)->required();
  c->add_option("--map", o.map)->required();

  c = sub("complete", "Is the map complete for the target's reference measure?", cmd_complete);
  c->add_option("--target", o.target)->required();
  c->add_option("--map", o.map)->required();
  c->add_option("--model", o.model, "Source model (its σ-algebra replaces the map document's)");

  c = sub("equivalent", "Three-route statistical equivalence check", cmd_equivalent);
  c->add_option("--model-a", o.model_a)->required();
  c->add_option("--model-b", o.model_b)->required();
  c->add_option("--map", o.map);
  c->add_flag("--oracle", o.oracle, "Enumerate every map (spaces of at most 4 points)");

  c = sub("classify", "Mono/epi/iso classification of the induced morphism", cmd_classify);
  c->add_option("--model-a,--model", o.model_a)->required();
  c->add_option("--model-b", o.model_b, "Target model (default: pushforward family)");
  c->add_option("--map", o.map)->required();

  c = sub("bayes", "Bayes identity for every family member", cmd_bayes);
  c->add_option("--model", o.model)->required();
  c->add_option("--map", o.map)->required();

  c = sub("balance", "Detailed balance with the reference-measure dual", cmd_balance);
  c->add_option("--model", o.model)->required();
  c->add_option("--map", o.map)->required();

  c = sub("quotient", "Kolmogorov quotient of a finite topology", cmd_quotient);
  c->add_option("--topology", o.topologies)->required();

  c = sub("canonical-topology", "Canonical topology on the model family", cmd_canonical);
  c->add_option("--model", o.model)->required();

  c = sub("kq-equivalent", "Homeomorphism of Kolmogorov quotients", cmd_kq);
  c->add_option("--topology", o.topologies, "Give twice")->required();

  c = sub("param", "Analyse the model's parametrisation block", cmd_param);
  c->add_option("--model", o.model)->required();

  c = sub("minimal", "Minimal-length parametrisation", cmd_minimal);
  c->add_option("--model", o.model)->required();
  c->add_option("--category", o.category);

  c = sub("structural", "Structural equivalence in Set or FinTop", cmd_structural);
  c->add_option("--model-a", o.model_a)->required();
  c->add_option("--model-b", o.model_b)->required();
  c->add_option("--category", o.category);

  c = sub("verify", "Re-check the kernels of an equivalence certificate", cmd_verify);
  c->add_option("--certificate", o.certificate)->required();
  c->add_option("--model-a", o.model_a)->required();
  c->add_option("--model-b", o.model_b)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    Session session(o);
    for (auto* s : app.get_subcommands()) return handlers.at(s->get_name())(session, o);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "statcat: error: " << e.what() << "\n";
    return 2;
  }
}
