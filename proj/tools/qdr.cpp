// Command-line front end: load a quiver algebra, run structure checks,
// Gorenstein-projective classification, homological computations, and
// deformation-ring reports. Text output by default, --json for machines.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "qdr/io.hpp"

using nlohmann::json;
using namespace qdr;

namespace {

constexpr int kExitSpecError = 2;
constexpr int kExitNotAdmissible = 3;
constexpr int kExitNotGentle = 4;

struct Options {
  std::string algebra_path;
  std::string field_override;
  std::uint64_t seed = 0;
  int level_bound = 8;
  bool json_output = false;
  bool literal_membership = false;
  bool strip = false;
  bool show_basis = false;
  bool compare_syzygy = false;
  int degree = 1;
  int power = 1;
  std::string module_path, second_module_path, identify_path;
};

AlgebraPtr load_algebra(const Options& opt) {
  QuiverSpec spec = parse_algebra(slurp_file(opt.algebra_path));
  std::string field = opt.field_override;
  if (field.empty())
    if (const char* env = std::getenv("TOOL_FIELD")) field = env;
  if (!field.empty()) spec.field = parse_field(field);
  return build_algebra(spec);
}

json base_report(const Options& opt, const AlgebraPtr& a) {
  json j;
  j["tool_version"] = QDR_VERSION;
  j["field"] = a->field().name();
  j["seed"] = opt.seed;
  j["flags"] = {{"membership", opt.literal_membership ? "literal" : "ideal"},
                {"strip_syzygy", opt.strip}};
  return j;
}

MembershipMode mode_of(const Options& opt) {
  return opt.literal_membership ? MembershipMode::literal : MembershipMode::ideal;
}

void emit(const Options& opt, const json& j, const std::string& text) {
  if (opt.json_output)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

int cmd_check(const Options& opt) {
  AlgebraPtr a = load_algebra(opt);
  BiserialReport br = check_gentle(*a, mode_of(opt));
  GorensteinData g = gorenstein_data(a, opt.level_bound, opt.seed);

  json j = base_report(opt, a);
  j["dim"] = a->dim();
  j["nilpotency"] = a->nilpotency();
  j["vertices"] = a->num_vertices();
  j["arrows"] = a->num_arrows();
  j["special_biserial"] = br.special_biserial;
  j["gentle"] = br.gentle;
  j["violations"] = biserial_to_json(br)["violations"];
  j["injective_dimension"] = gorenstein_to_json(g);

  std::ostringstream os;
  os << "algebra: dim " << a->dim() << ", nilpotency " << a->nilpotency() << ", "
     << a->num_vertices() << " vertices, " << a->num_arrows() << " arrows (field "
     << a->field().name() << ")\n";
  os << "special biserial: " << (br.special_biserial ? "yes" : "no")
     << ", gentle: " << (br.gentle ? "yes" : "no") << "\n";
  for (const auto& v : br.violations)
    os << "  violates (" << v.condition << "): " << v.witness << "\n";
  os << "injective dimension: left "
     << (g.left_injdim ? std::to_string(*g.left_injdim)
                       : ">= " + std::to_string(g.bound))
     << ", right "
     << (g.right_injdim ? std::to_string(*g.right_injdim)
                        : ">= " + std::to_string(g.bound))
     << "\n";
  emit(opt, j, os.str());
  return 0;
}

int cmd_classify(const Options& opt) {
  AlgebraPtr a = load_algebra(opt);
  BiserialReport br = check_gentle(*a, mode_of(opt));
  CriticalCycles cc = critical_cycles(*a, mode_of(opt));  // throws not_gentle
  auto entries = classify_gproj_gentle(a, opt.seed, mode_of(opt));

  json j = base_report(opt, a);
  j.update(biserial_to_json(br));
  j["critical_cycles"] = json::array();
  for (const auto& c : cc.cycles) {
    json cyc = json::array();
    for (int ar : c) cyc.push_back(a->spec().arrows[ar].name);
    j["critical_cycles"].push_back(cyc);
  }
  j["gproj"] = json::array();

  std::ostringstream os;
  os << "gentle: yes; critical cycles:";
  for (const auto& c : cc.cycles) {
    os << " [";
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << a->spec().arrows[c[i]].name;
    os << "]";
  }
  os << "\nindecomposable Gorenstein-projective modules:\n";
  for (const auto& e : entries) {
    json dims = json::object();
    for (int v = 0; v < a->num_vertices(); ++v)
      dims[a->spec().vertices[v]] = e.module.dims[v];
    int sed = e.projective ? 0 : stable_hom(e.module, e.module).quotient_dim;
    j["gproj"].push_back({{"label", e.label},
                          {"iso", e.iso_name},
                          {"dims", dims},
                          {"projective", e.projective},
                          {"stable_end_dim", sed}});
    os << "  " << e.label;
    if (!e.iso_name.empty()) os << " = " << e.iso_name;
    os << "  dims (";
    for (int v = 0; v < a->num_vertices(); ++v) os << (v ? "," : "") << e.module.dims[v];
    os << ")  stable End dim " << sed << "\n";
  }
  emit(opt, j, os.str());
  return 0;
}

int cmd_hom(const Options& opt) {
  AlgebraPtr a = load_algebra(opt);
  NamedModule m = parse_module(a, json::parse(slurp_file(opt.module_path)));
  NamedModule n = parse_module(a, json::parse(slurp_file(opt.second_module_path)));
  HomBasis hb = hom_basis(m.module, n.module);

  json j = base_report(opt, a);
  j["source"] = m.name;
  j["target"] = n.name;
  j["dim"] = hb.dim();
  std::ostringstream os;
  os << "dim Hom(" << m.name << ", " << n.name << ") = " << hb.dim() << "\n";
  if (opt.show_basis) {
    j["basis"] = json::array();
    for (int i = 0; i < hb.dim(); ++i) {
      json elem = json::array();
      for (std::size_t v = 0; v < hb.basis[i].size(); ++v)
        elem.push_back(hb.basis[i][v].str());
      j["basis"].push_back(elem);
      os << "  basis " << i << ":";
      for (std::size_t v = 0; v < hb.basis[i].size(); ++v) os << " " << hb.basis[i][v].str();
      os << "\n";
    }
  }
  emit(opt, j, os.str());
  return 0;
}

int cmd_ext(const Options& opt) {
  AlgebraPtr a = load_algebra(opt);
  NamedModule m = parse_module(a, json::parse(slurp_file(opt.module_path)));
  NamedModule n = parse_module(a, json::parse(slurp_file(opt.second_module_path)));
  ExtResult e = ext(m.module, n.module, opt.degree);

  json j = base_report(opt, a);
  j["source"] = m.name;
  j["target"] = n.name;
  j["degree"] = e.degree;
  j["dim"] = e.dim;
  std::ostringstream os;
  os << "dim Ext^" << e.degree << "(" << m.name << ", " << n.name << ") = " << e.dim << "\n";
  emit(opt, j, os.str());
  return 0;
}

int cmd_syzygy(const Options& opt) {
  AlgebraPtr a = load_algebra(opt);
  NamedModule m = parse_module(a, json::parse(slurp_file(opt.module_path)));
  Rep om = syzygy(m.module, opt.power, opt.strip);

  json j = base_report(opt, a);
  j["module"] = m.name;
  j["power"] = opt.power;
  j["stripped"] = opt.strip;
  json dims = json::object();
  for (int v = 0; v < a->num_vertices(); ++v) dims[a->spec().vertices[v]] = om.dims[v];
  j["dims"] = dims;
  j["total_dim"] = om.total_dim();

  std::ostringstream os;
  os << "syzygy power " << opt.power << " of " << m.name << ": dims (";
  for (int v = 0; v < a->num_vertices(); ++v) os << (v ? "," : "") << om.dims[v];
  os << "), total " << om.total_dim() << (opt.strip ? " (projective summands stripped)" : "")
     << "\n";

  if (!opt.identify_path.empty()) {
    auto candidates = parse_module_list(a, json::parse(slurp_file(opt.identify_path)));
    std::string found;
    for (const auto& cand : candidates) {
      if (cand.module.dims != om.dims) continue;
      if (is_isomorphic(om, cand.module, opt.seed).is_yes()) {
        found = cand.name;
        break;
      }
    }
    if (found.empty()) {
      j["identified"] = nullptr;
      os << "identification: unidentified module (no candidate matched)\n";
    } else {
      j["identified"] = found;
      os << "identification: " << found << "\n";
    }
  }
  emit(opt, j, os.str());
  return 0;
}

int cmd_deform(const Options& opt) {
  AlgebraPtr a = load_algebra(opt);
  NamedModule m = parse_module(a, json::parse(slurp_file(opt.module_path)));

  json j = base_report(opt, a);
  std::ostringstream os;
  if (opt.compare_syzygy) {
    SyzygyCompare sc = syzygy_compare(m.module, opt.level_bound, opt.seed, m.name);
    j["base"] = versal_to_json(sc.base);
    j["syzygy"] = versal_to_json(sc.syz);
    j["rings_match"] = sc.rings_match;
    os << m.name << ": ring " << ring_to_string(sc.base.ring) << "\n";
    os << "syzygy: ring " << ring_to_string(sc.syz.ring) << "\n";
    os << "rings match: " << (sc.rings_match ? "yes" : "no") << "\n";
  } else {
    VersalReport r = versal_report(m.module, opt.level_bound, opt.seed, m.name);
    j.update(versal_to_json(r));
    os << m.name << ": gp "
       << (r.gp.is_yes() ? "yes" : (r.gp.is_no() ? "no" : "unknown")) << ", End dim "
       << r.end_dim << ", stable End dim " << r.stable_end_dim << ", Ext^1 dim " << r.ext1_dim
       << "\n";
    os << "versal deformation ring: " << ring_to_string(r.ring)
       << (r.universal ? " (universal: " + r.justification + ")" : " (universality unknown)")
       << "\n";
    for (const auto& e : r.obstruction_log)
      os << "  level " << e.level << ": " << e.status << " - " << e.evidence << "\n";
  }
  emit(opt, j, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quiver algebra toolkit: Gorenstein-projective classification and "
               "deformation rings"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--field", opt.field_override,
                 "override the spec field (Q or a prime p); env TOOL_FIELD also applies");
  app.add_option("--seed", opt.seed, "seed for randomized isomorphism tests (default 0)");
  app.add_flag("--json", opt.json_output, "machine-readable JSON output");
  app.add_flag("--literal-membership", opt.literal_membership,
               "read relation-set membership literally instead of ideal membership");

  auto* check = app.add_subcommand("check", "build the algebra and report structure data");
  check->add_option("algebra", opt.algebra_path)->required();

  auto* classify =
      app.add_subcommand("classify", "Gorenstein-projective classification (gentle algebras)");
  classify->add_option("algebra", opt.algebra_path)->required();

  auto* hom = app.add_subcommand("hom", "dimension (and basis) of a Hom space");
  hom->add_option("algebra", opt.algebra_path)->required();
  hom->add_option("m", opt.module_path)->required();
  hom->add_option("n", opt.second_module_path)->required();
  hom->add_flag("--basis", opt.show_basis, "print a basis of intertwiners");

  auto* ext = app.add_subcommand("ext", "dimension of an Ext group");
  ext->add_option("algebra", opt.algebra_path)->required();
  ext->add_option("m", opt.module_path)->required();
  ext->add_option("n", opt.second_module_path)->required();
  ext->add_option("--degree", opt.degree, "cohomological degree (default 1)");

  auto* syz = app.add_subcommand("syzygy", "iterated syzygy with optional identification");
  syz->add_option("algebra", opt.algebra_path)->required();
  syz->add_option("m", opt.module_path)->required();
  syz->add_option("--power", opt.power, "syzygy power (default 1)");
  syz->add_option("--identify", opt.identify_path, "candidate list JSON");
  syz->add_flag("--strip", opt.strip, "strip projective direct summands");

  auto* deform = app.add_subcommand("deform", "versal deformation ring report");
  deform->add_option("algebra", opt.algebra_path)->required();
  deform->add_option("m", opt.module_path)->required();
  deform->add_option("--level-bound", opt.level_bound, "obstruction search bound (default 8)");
  deform->add_flag("--compare-syzygy", opt.compare_syzygy,
                   "also report the first syzygy and compare rings");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check(opt);
    if (classify->parsed()) return cmd_classify(opt);
    if (hom->parsed()) return cmd_hom(opt);
    if (ext->parsed()) return cmd_ext(opt);
    if (syz->parsed()) return cmd_syzygy(opt);
    if (deform->parsed()) return cmd_deform(opt);
  } catch (const not_admissible& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotAdmissible;
  } catch (const not_gentle& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotGentle;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSpecError;
  }
  return 0;
}
