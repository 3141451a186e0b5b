#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fusion/complexification.hpp"
#include "fusion/ktheory.hpp"
#include "fusion/report.hpp"
#include "fusion/spec.hpp"
#include "fusion/torsion.hpp"

using namespace fusion;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;
constexpr int kExitUnstable = 3;

struct Output {
  Json json;
  std::string text;
  int code = kExitOk;
};

std::string join(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

// Terms by decreasing degree, then label, so that the longest word comes first.
std::string format_terms(const FusionRing& ring, const ZCombo& c) {
  std::vector<std::pair<Label, Integer>> terms(c.begin(), c.end());
  std::stable_sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) {
    return ring.degree(a.first) > ring.degree(b.first);
  });
  std::string out;
  for (const auto& [l, k] : terms) {
    if (!out.empty()) out += " + ";
    if (k != 1) out += k.get_str() + " ";
    out += ring.format(l);
  }
  return out.empty() ? "0" : out;
}

Output run_verify(const std::string& spec, int bound) {
  RingPtr ring = parse_group_spec(spec);
  Output o;
  AxiomReport axioms = verify_based_ring_axioms(*ring, bound);
  o.json = {{"schema_version", kSchemaVersion}, {"kind", "verify"}, {"spec", spec}, {"ring", ring->name()},
            {"bound", bound}, {"ring_axioms", to_json(axioms)}};
  std::ostringstream os;
  os << ring->name() << ", degree <= " << bound << "\n";
  os << "  based-ring axioms: " << (axioms.passed ? "pass" : "FAIL " + axioms.failed_check + ": " + axioms.counterexample)
     << " (" << axioms.labels << " labels, " << axioms.triples << (axioms.sampled ? " sampled" : "") << " triples)\n";
  bool ok = axioms.passed;
  if (auto w = std::dynamic_pointer_cast<const WreathRing>(ring)) {
    AxiomReport lam = verify_lambda(*w, bound);
    o.json["lambda"] = to_json(lam);
    os << "  Lambda embedding: " << (lam.passed ? "pass" : "FAIL " + lam.failed_check + ": " + lam.counterexample)
       << " (" << lam.labels << " words)\n";
    ok = ok && lam.passed;
  }
  o.json["passed"] = ok;
  o.text = os.str();
  o.code = ok ? kExitOk : kExitViolation;
  return o;
}

Output run_fusion(const std::string& spec, const std::string& a, const std::string& b) {
  RingPtr ring = parse_group_spec(spec);
  Label la = ring->parse(a), lb = ring->parse(b);
  ZCombo c = ring->tensor(la, lb);
  Output o;
  o.text = format_terms(*ring, c) + "\n";
  Json terms = Json::array();
  for (const auto& [l, k] : c) terms.push_back({{"label", ring->format(l)}, {"coefficient", integer_to_json(k)}});
  o.json = {{"schema_version", kSchemaVersion}, {"kind", "fusion"}, {"spec", spec}, {"left", ring->format(la)},
            {"right", ring->format(lb)}, {"result", format_terms(*ring, c)}, {"terms", terms}};
  return o;
}

Json scan_to_json(const WreathScanResult& s, const std::string& input) {
  return {{"input", input},
          {"input_rank", s.input_rank},
          {"components", s.components},
          {"standard_components", s.standard_components},
          {"non_standard_components", s.non_standard_components},
          {"undecided_components", s.undecided_components},
          {"contains_all_u1j", s.contains_all_u1j},
          {"u2_stabilizes_all", s.u2_stabilizes_all},
          {"passed", s.passed}};
}

Output run_torsion(const std::string& spec, int bound, const EnumerationOptions& eo) {
  RingPtr ring = parse_group_spec(spec);
  Output o;
  std::ostringstream os;
  o.json = {{"schema_version", kSchemaVersion}, {"kind", "torsion"}, {"spec", spec}, {"ring", ring->name()},
            {"bound", bound}};

  auto enumerate_base = [&](RingPtr base) {
    EnumerationResult e = enumerate_modules(base, eo);
    o.json["enumeration"] = to_json(e);
    os << "connected modules over " << base->name() << " (rank <= " << eo.max_rank << ", entries <= " << eo.max_entry
       << "): " << e.modules.size() << (e.budget_exceeded ? " [budget exceeded: search incomplete]" : "") << "\n";
    for (const auto& c : e.modules) {
      os << "  rank " << c.rank << ":";
      for (const auto& [l, m] : c.generators) {
        os << " " << base->format(l) << " ->";
        for (const auto& row : m) {
          os << " [";
          for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j];
          os << "]";
        }
      }
      os << "\n";
    }
    if (e.budget_exceeded) o.code = kExitViolation;
    return e;
  };

  auto scan_all = [&](std::shared_ptr<const WreathRing> w, const EnumerationResult& e) {
    std::vector<std::pair<std::string, WreathScanResult>> scans;
    Json arr = Json::array();
    for (std::size_t i = 0; i < e.modules.size(); ++i) {
      std::string name = "N" + std::to_string(i + 1) + " (rank " + std::to_string(e.modules[i].rank) + ")";
      auto n = e.modules[i].to_module(w->base_ptr(), name);
      WreathScanResult s = wreath_submodule_scan(w, n, bound);
      arr.push_back(scan_to_json(s, name));
      os << "wreath scan of Ind(" << name << "): " << s.components << " components, " << s.non_standard_components
         << " non-standard, " << s.undecided_components << " undecided; u1 j all in it: "
         << (s.contains_all_u1j ? "yes" : "no") << "; u2 stabilizes: " << (s.u2_stabilizes_all ? "yes" : "no") << " -> "
         << (s.passed ? "unique non-standard submodule" : "FAIL") << "\n";
      if (!s.passed) o.code = kExitViolation;
      scans.emplace_back(name, std::move(s));
    }
    o.json["wreath_scans"] = arr;
    return scans;
  };

  if (ring->is_finite()) {
    enumerate_base(ring);
  } else if (auto w = std::dynamic_pointer_cast<const WreathRing>(ring)) {
    if (!w->base().is_finite()) throw ConstructionError("torsion scans need wreath(G) with G finite");
    scan_all(w, enumerate_base(w->base_ptr()));
  } else if (auto t = std::dynamic_pointer_cast<const TildeRing>(ring)) {
    auto w = std::dynamic_pointer_cast<const WreathRing>(t->even().ring_ptr());
    if (!w || !w->base().is_finite()) throw ConstructionError("torsion scans need tilde(wreath(G)) with G finite");
    auto scans = scan_all(w, enumerate_base(w->base_ptr()));
    Json arr = Json::array();
    std::size_t total = 0;
    for (const auto& [name, s] : scans) {
      if (!s.submodule) continue;
      ComplexifiedCount c = complexified_submodule_count(s.submodule, t, bound);
      const bool iso = c.count == 2 && c.iso_between.kind == IsoResult::Kind::yes;
      const std::size_t classes = iso ? 1 : c.count;
      total += classes;
      os << "complexified submodules from " << name << ": count " << c.count;
      if (c.count == 2) os << ", P ~ P': " << to_string(c.iso_between.kind);
      os << "\n";
      arr.push_back({{"input", name}, {"count", c.count}, {"isomorphic", iso},
                     {"iso", c.count == 2 ? to_string(c.iso_between.kind) : std::string("n/a")}});
    }
    o.json["complexified"] = arr;
    o.json["non_trivial_classes"] = total;
    os << "non-trivial torsion classes (window evidence): " << total << "\n";
  } else {
    throw ConstructionError("torsion needs a finite ring, wreath(G) or tilde(wreath(G)) with G finite");
  }
  os << "note: searches are bounded oracles (degree <= " << bound << "), not proofs\n";
  o.text = os.str();
  return o;
}

Output run_ktheory(const std::string& spec, const std::vector<int>& radii) {
  RingPtr ring = parse_group_spec(spec);
  OrbitSpace space(ring);
  KTheoryResult r = compute_ktheory(space, radii);
  Output o;
  o.json = to_json(r, spec);
  std::ostringstream os;
  os << "G = " << r.group << ", radii " << join(r.radii) << "\n";
  for (const auto& t : r.trace) {
    os << "  R=" << t.radius << ": " << t.rows << "x" << t.cols << "  K0(snf) = " << to_string(t.k0_snf);
    if (t.k0_rewriting) os << "  K0(rewriting) = " << to_string(*t.k0_rewriting);
    os << "  K1 = Z^" << t.k1_rank << "\n";
  }
  os << "K0 = " << to_string(r.k0) << "\nK1 = Z^" << r.k1_rank << "\n";
  os << "method: " << r.method << "; " << (r.stable ? "stable" : "UNSTABLE") << " (" << r.note << ")\n";
  os << "kernel basis:";
  for (const auto& k : r.kernel_text) os << " {" << k << "}";
  os << "\n";
  o.text = os.str();
  o.code = r.stable ? kExitOk : kExitUnstable;
  return o;
}

Output run_exactness(const std::string& spec, int radius) {
  RingPtr ring = parse_group_spec(spec);
  ExactnessReport r = exactness_check(ring, radius);
  Output o;
  o.json = to_json(r, spec);
  std::ostringstream os;
  os << "resolution of " << ring->name() << " on the window of degree <= " << radius << " (" << r.rows << "x" << r.cols
     << ")\n";
  os << "  eps o d = 0: " << (r.augmentation_kills_image ? "yes" : "NO") << "\n";
  os << "  d injective: " << (r.injective ? "yes" : "NO") << "\n";
  os << "  ker eps = im d on " << r.interior_checked << " interior elements: " << (r.interior_exact ? "yes" : "NO")
     << "\n";
  if (!r.witness.empty()) os << "  witness: " << r.witness << "\n";
  os << (r.passed ? "exact on the window\n" : "NOT exact\n");
  o.text = os.str();
  o.code = r.passed ? kExitOk : kExitViolation;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fusion rings, torsion modules and K-theory of free wreath products"};
  app.require_subcommand(1);
  app.footer(
      "Group specs: Z/k, Z^n, F(n), SUq2, O+(n), U+(m), S1, A * B, wreath(G), tilde(G; label).\n"
      "Words: space-separated letters, u<k> for SUq2, v<k> for O+, a, b^-1 for free groups,\n"
      "s for Z/2, z^k for S1; a letter owned by several factors takes a suffix @i.\n"
      "Exit codes: 0 ok, 1 usage or parse error, 2 invariant violation, 3 unstable K-theory.");

  bool json = false;
  std::string out_path;
  int bound = 5;
  std::vector<int> radii{4, 6, 8};
  EnumerationOptions eo;
  app.add_flag("--json", json, "print the JSON report");
  app.add_option("--out", out_path, "also write the JSON report to this file");

  std::string spec, left, right;
  auto* verify = app.add_subcommand("verify", "check ring axioms (and Lambda for wreath products)");
  verify->add_option("spec", spec, "group specification")->required();
  verify->add_option("--bound", bound, "degree bound")->check(CLI::Range(0, 12));

  auto* fusion_cmd = app.add_subcommand("fusion", "decompose a tensor product");
  fusion_cmd->add_option("spec", spec, "group specification")->required();
  fusion_cmd->add_option("left", left, "left word")->required();
  fusion_cmd->add_option("right", right, "right word")->required();

  auto* torsion = app.add_subcommand("torsion", "enumerate modules, wreath scans, complexified counts");
  torsion->add_option("spec", spec, "group specification")->required();
  torsion->add_option("--bound", bound, "degree bound for infinite rings")->check(CLI::Range(1, 10));
  torsion->add_option("--max-rank", eo.max_rank, "largest rank enumerated")->check(CLI::Range(1, 6));
  torsion->add_option("--max-entry", eo.max_entry, "largest matrix entry enumerated")->check(CLI::Range(1, 9));

  auto* ktheory = app.add_subcommand("ktheory", "K0 and K1 of the wreath product with SO_q(3)");
  ktheory->add_option("spec", spec, "group specification")->required();
  ktheory->add_option("--radii", radii, "strictly increasing truncation radii")->delimiter(',');

  auto* exact = app.add_subcommand("exactness", "check the free resolution on a degree window");
  exact->add_option("spec", spec, "group specification")->required();
  exact->add_option("--bound", bound, "window radius")->check(CLI::Range(2, 10));

  for (auto* sub : {verify, fusion_cmd, torsion, ktheory, exact}) {
    sub->add_flag("--json", json, "print the JSON report");
    sub->add_option("--out", out_path, "also write the JSON report to this file");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  Output o;
  try {
    if (*verify) o = run_verify(spec, bound);
    else if (*fusion_cmd) o = run_fusion(spec, left, right);
    else if (*torsion) o = run_torsion(spec, bound, eo);
    else if (*ktheory) {
      if (radii.size() < 3) throw ConstructionError("--radii needs at least three values");
      o = run_ktheory(spec, radii);
    } else o = run_exactness(spec, bound);
  } catch (const ConstructionError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitViolation;
  }

  o.json["exit_code"] = o.code;
  if (json)
    std::cout << o.json.dump(2) << "\n";
  else
    std::cout << o.text;
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) {
      std::cerr << "cannot write " << out_path << "\n";
      return kExitUsage;
    }
    f << o.json.dump(2) << "\n";
  }
  return o.code;
}
