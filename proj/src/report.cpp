#include "fusion/report.hpp"

namespace fusion {

Json label_to_json(const Label& l) {
  Json letters = Json::array();
  for (const auto& c : l.letters) letters.push_back(label_to_json(c));
  return Json::array({l.index, letters});
}

Label label_from_json(const Json& j) {
  Label l(j.at(0).get<std::int64_t>());
  for (const auto& c : j.at(1)) l.letters.push_back(label_from_json(c));
  return l;
}

Json integer_to_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

Integer integer_from_json(const Json& j) {
  if (j.is_string()) return Integer(j.get<std::string>());
  return Integer(j.get<long>());
}

Json combo_to_json(const ZCombo& c) {
  Json out = Json::array();
  for (const auto& [l, k] : c) out.push_back(Json::array({label_to_json(l), integer_to_json(k)}));
  return out;
}

ZCombo combo_from_json(const Json& j) {
  ZCombo c;
  for (const auto& t : j) c.add(label_from_json(t.at(0)), integer_from_json(t.at(1)));
  return c;
}

Json to_json(const CokernelInvariants& c) {
  Json t = Json::array();
  for (const auto& x : c.torsion) t.push_back(integer_to_json(x));
  return {{"rank", c.free_rank}, {"torsion", t}, {"text", to_string(c)}};
}

CokernelInvariants cokernel_from_json(const Json& j) {
  CokernelInvariants c;
  c.free_rank = j.at("rank").get<std::size_t>();
  for (const auto& t : j.at("torsion")) c.torsion.push_back(integer_from_json(t));
  return c;
}

Json to_json(const AxiomReport& r) {
  return {{"passed", r.passed},       {"failed_check", r.failed_check}, {"counterexample", r.counterexample},
          {"labels", r.labels},       {"triples", r.triples},           {"sampled", r.sampled}};
}

AxiomReport axiom_report_from_json(const Json& j) {
  AxiomReport r;
  r.passed = j.at("passed").get<bool>();
  r.failed_check = j.at("failed_check").get<std::string>();
  r.counterexample = j.at("counterexample").get<std::string>();
  r.labels = j.at("labels").get<std::size_t>();
  r.triples = j.at("triples").get<std::size_t>();
  r.sampled = j.at("sampled").get<bool>();
  return r;
}

Json to_json(const KTheoryResult& r, const std::string& spec) {
  Json trace = Json::array();
  for (const auto& t : r.trace) {
    Json e = {{"radius", t.radius}, {"rows", t.rows}, {"cols", t.cols}, {"k1_rank", t.k1_rank},
              {"k0_snf", to_json(t.k0_snf)}};
    e["k0_rewriting"] = t.k0_rewriting ? to_json(*t.k0_rewriting) : Json(nullptr);
    trace.push_back(std::move(e));
  }
  Json kernel = Json::array();
  for (std::size_t i = 0; i < r.kernel_basis.size(); ++i)
    kernel.push_back({{"text", r.kernel_text.at(i)}, {"terms", combo_to_json(r.kernel_basis[i])}});
  Json rel = Json::array();
  for (const auto& v : r.residual_relations) {
    Json col = Json::array();
    for (const auto& x : v) col.push_back(integer_to_json(x));
    rel.push_back(col);
  }
  return {{"schema_version", kSchemaVersion},
          {"kind", "ktheory"},
          {"spec", spec},
          {"group", r.group},
          {"radii", r.radii},
          {"k0", to_json(r.k0)},
          {"k1", {{"rank", r.k1_rank}}},
          {"methods", r.method},
          {"stable", r.stable},
          {"note", r.note},
          {"trace", trace},
          {"witnesses", {{"kernel_basis", kernel}, {"residual_presentation", rel}}}};
}

KTheoryResult ktheory_from_json(const Json& j) {
  KTheoryResult r;
  r.group = j.at("group").get<std::string>();
  r.radii = j.at("radii").get<std::vector<int>>();
  r.k0 = cokernel_from_json(j.at("k0"));
  r.k1_rank = j.at("k1").at("rank").get<std::size_t>();
  r.method = j.at("methods").get<std::string>();
  r.stable = j.at("stable").get<bool>();
  r.note = j.at("note").get<std::string>();
  for (const auto& e : j.at("trace")) {
    RadiusTrace t;
    t.radius = e.at("radius").get<int>();
    t.rows = e.at("rows").get<std::size_t>();
    t.cols = e.at("cols").get<std::size_t>();
    t.k1_rank = e.at("k1_rank").get<std::size_t>();
    t.k0_snf = cokernel_from_json(e.at("k0_snf"));
    if (!e.at("k0_rewriting").is_null()) t.k0_rewriting = cokernel_from_json(e.at("k0_rewriting"));
    r.trace.push_back(std::move(t));
  }
  for (const auto& k : j.at("witnesses").at("kernel_basis")) {
    r.kernel_text.push_back(k.at("text").get<std::string>());
    r.kernel_basis.push_back(combo_from_json(k.at("terms")));
  }
  for (const auto& col : j.at("witnesses").at("residual_presentation")) {
    std::vector<Integer> v;
    for (const auto& x : col) v.push_back(integer_from_json(x));
    r.residual_relations.push_back(std::move(v));
  }
  return r;
}

Json to_json(const ExactnessReport& r, const std::string& spec) {
  return {{"schema_version", kSchemaVersion},
          {"kind", "exactness"},
          {"spec", spec},
          {"radius", r.radius},
          {"rows", r.rows},
          {"cols", r.cols},
          {"augmentation_kills_image", r.augmentation_kills_image},
          {"injective", r.injective},
          {"interior_exact", r.interior_exact},
          {"interior_checked", r.interior_checked},
          {"witness", r.witness},
          {"passed", r.passed}};
}

ExactnessReport exactness_from_json(const Json& j) {
  ExactnessReport r;
  r.radius = j.at("radius").get<int>();
  r.rows = j.at("rows").get<std::size_t>();
  r.cols = j.at("cols").get<std::size_t>();
  r.augmentation_kills_image = j.at("augmentation_kills_image").get<bool>();
  r.injective = j.at("injective").get<bool>();
  r.interior_exact = j.at("interior_exact").get<bool>();
  r.interior_checked = j.at("interior_checked").get<std::size_t>();
  r.witness = j.at("witness").get<std::string>();
  r.passed = j.at("passed").get<bool>();
  return r;
}

Json to_json(const ModuleCandidate& c) {
  Json gens = Json::array();
  for (const auto& [l, m] : c.generators) gens.push_back({{"label", label_to_json(l)}, {"matrix", m}});
  return {{"rank", c.rank}, {"generators", gens}, {"canonical_key", c.canonical_key}};
}

ModuleCandidate candidate_from_json(const Json& j) {
  ModuleCandidate c;
  c.rank = j.at("rank").get<std::size_t>();
  for (const auto& g : j.at("generators"))
    c.generators.emplace_back(label_from_json(g.at("label")), g.at("matrix").get<SmallMatrix>());
  c.canonical_key = j.at("canonical_key").get<std::vector<std::int64_t>>();
  return c;
}

Json to_json(const EnumerationResult& r) {
  Json mods = Json::array();
  for (const auto& c : r.modules) mods.push_back(to_json(c));
  return {{"ring", r.ring},
          {"modules", mods},
          {"nodes", r.nodes},
          {"raw_solutions", r.raw_solutions},
          {"budget_exceeded", r.budget_exceeded},
          {"completed_rank", r.completed_rank}};
}

EnumerationResult enumeration_from_json(const Json& j) {
  EnumerationResult r;
  r.ring = j.at("ring").get<std::string>();
  for (const auto& m : j.at("modules")) r.modules.push_back(candidate_from_json(m));
  r.nodes = j.at("nodes").get<std::uint64_t>();
  r.raw_solutions = j.at("raw_solutions").get<std::size_t>();
  r.budget_exceeded = j.at("budget_exceeded").get<bool>();
  r.completed_rank = j.at("completed_rank").get<std::size_t>();
  return r;
}

}  // namespace fusion
