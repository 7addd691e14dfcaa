#include "regression.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace skel;
using namespace skel::tools;

namespace {

constexpr int kValidation = 2;
constexpr int kMismatch = 3;

struct Options {
  std::string input;
  std::string output;
  std::string format = "json";
  std::vector<std::string> stratum;
  std::vector<std::string> b;
  std::vector<std::size_t> form_index;
  bool logcy = false;
  std::string group = "gl";
  int n = 1;
  std::vector<std::int64_t> alpha;
  std::string c = "1";
  std::int64_t a = 0, l = 1, m = 1;
  std::size_t samples = 10000;
  double tolerance = 1e-9;
  std::uint64_t seed = 1;
  std::string fixture_dir = SKEL_FIXTURE_DIR;
};

void emit(const std::string& command, const Options& o, const std::string& text) {
  std::string path = o.output;
  if (path.empty()) {
    if (const char* dir = std::getenv("SKEL_OUTPUT_DIR")) {
      std::filesystem::create_directories(dir);
      path = (std::filesystem::path(dir) / (command + (o.format == "off" ? ".off" : ".json"))).string();
    }
  }
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Validation, "cannot write " + path);
  out << text;
}

void emit(const std::string& command, const Options& o, Json j) {
  j["schema"] = "1";
  j["command"] = command;
  emit(command, o, dump(j));
}

Bundle bundle(const Options& o) {
  if (o.input.empty()) fail(ErrorKind::Validation, "--input is required");
  return load_bundle(read_json_file(o.input));
}

std::vector<std::size_t> form_indices(const Options& o, const Bundle& b) {
  if (!o.form_index.empty()) {
    for (auto i : o.form_index)
      if (i >= b.forms.size()) fail(ErrorKind::Validation, "--form index out of range");
    return o.form_index;
  }
  std::vector<std::size_t> all(b.forms.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return all;
}

std::map<std::string, std::int64_t> slice_vector(const Options& o, const Bundle& b) {
  if (o.b.empty()) {
    if (b.raw.contains("slice_b")) return b.raw["slice_b"].get<std::map<std::string, std::int64_t>>();
    return vertical_multiplicities(b.pair);
  }
  std::map<std::string, std::int64_t> out;
  for (const auto& s : o.b) {
    auto eq = s.find('=');
    if (eq == std::string::npos) fail(ErrorKind::Validation, "--b expects COMPONENT=MULTIPLICITY");
    out[s.substr(0, eq)] = std::stoll(s.substr(eq + 1));
  }
  return out;
}

std::vector<std::string> stratum_of(const Options& o, const Bundle& b) {
  if (!o.stratum.empty()) return o.stratum;
  if (b.raw.contains("stratum")) return b.raw["stratum"].get<std::vector<std::string>>();
  fail(ErrorKind::Validation, "--stratum is required");
}

Json ks_json(const KsResult& r) {
  if (r.skeleton) return Json{{"bounded", true}, {"skeleton", to_json(*r.skeleton)}};
  Json ray = Json::array();
  for (const auto& x : r.offending->ray) ray.push_back(to_json(x));
  return Json{{"bounded", false},
              {"offending_ray", Json{{"kato_point", r.offending->kato_point}, {"ray", ray}, {"slope", to_json(r.offending->slope)}}}};
}

Json complex_report(const SimplicialComplex& k, const GroupAction& g = {}) {
  Json j{{"complex", to_json(k)}, {"f_vector", k.f_vector()}, {"euler_characteristic", k.euler_characteristic()}};
  j["homology"] = to_json(g.generators.empty() ? homology(k) : homology(orbit_chain_complex(k, g)));
  return j;
}

int run(const std::string& cmd, const Options& o) {
  if (cmd == "skeleton") {
    auto b = bundle(o);
    emit(cmd, o, Json{{"kato_fan", to_json(b.fan)}, {"axes", global_axes(b.pair)}, {"mode", to_string(b.pair.mode)}});
  } else if (cmd == "closure") {
    auto b = bundle(o);
    Json strata = Json::array();
    if (b.pair.toric) {
      for (const auto& s : compactified_fan_strata(b.pair.toric->fan))
        strata.push_back(Json{{"sigma", s.sigma.generators()}, {"dimension", s.star.dimension()}});
    } else {
      for (const auto& x : b.fan.points) strata.push_back(Json{{"stratum", x.id}, {"codimension", x.rank()}});
    }
    Json points = Json::array();
    for (const auto& v : b.points) {
      auto c = classify_closure_point(b.fan, v);
      points.push_back(Json{{"point", to_json(v)}, {"stratum", c.stratum}, {"trace_point", to_json(c.trace_point)}});
    }
    emit(cmd, o, Json{{"strata", strata}, {"points", points}});
  } else if (cmd == "weight") {
    auto b = bundle(o);
    Json out = Json::array();
    for (auto i : form_indices(o, b)) {
      Json values = Json::array();
      for (const auto& v : b.points) values.push_back(to_json(weight(b.pair, b.fan, b.forms[i], v)));
      out.push_back(Json{{"form", i}, {"values", values}});
    }
    Json pts = Json::array();
    for (const auto& v : b.points) pts.push_back(to_json(v));
    emit(cmd, o, Json{{"weights", out}, {"points", pts}});
  } else if (cmd == "ks") {
    auto b = bundle(o);
    Json out = Json::array();
    for (auto i : form_indices(o, b)) {
      Json r = ks_json(ks_skeleton(b.pair, b.fan, b.forms[i]));
      r["form"] = i;
      out.push_back(r);
    }
    emit(cmd, o, Json{{"ks", out}});
  } else if (cmd == "essential") {
    auto b = bundle(o);
    bool logcy = o.logcy || b.forms.empty();
    auto s = logcy ? essential_logcy(b.pair, b.fan) : essential_skeleton(b.pair, b.fan, b.forms);
    emit(cmd, o, Json{{"essential", to_json(s)}, {"source", logcy ? "logcy" : "forms"}});
  } else if (cmd == "slice") {
    auto b = bundle(o);
    auto slice = slice_dvf(essential_logcy(b.pair, b.fan), slice_vector(o, b));
    Json j{{"slice", to_json(slice)}};
    if (!slice.cells.empty()) j["dual_complex"] = complex_report(to_simplicial(slice));
    emit(cmd, o, j);
  } else if (cmd == "residue") {
    auto b = bundle(o);
    auto stratum = stratum_of(o, b);
    auto tp = trace_pair(b.pair, stratum);
    auto tk = kato_fan(tp);
    Json out = Json::array();
    for (auto i : form_indices(o, b)) {
      Form res;
      Json skipped = Json::array();
      for (const auto& e : b.forms[i].expressions) {
        try {
          res.expressions.push_back(residue(b.pair, e, stratum));
        } catch (const Error& err) {
          skipped.push_back(Json{{"chart", e.chart}, {"reason", err.what()}});
        }
      }
      Json r{{"form", i}, {"residue", to_json(res)}, {"skipped", skipped}};
      if (!res.expressions.empty()) r["ks"] = ks_json(ks_skeleton(tp, tk, res));
      out.push_back(r);
    }
    emit(cmd, o, Json{{"stratum", stratum}, {"trace_pair", to_json(tp)}, {"residues", out}});
  } else if (cmd == "dual-complex") {
    auto b = bundle(o);
    auto s = b.forms.empty() || o.logcy ? essential_logcy(b.pair, b.fan) : essential_skeleton(b.pair, b.fan, b.forms);
    auto k = link_complex(s);
    if (o.format == "off") emit(cmd, o, to_off(k));
    else emit(cmd, o, complex_report(k));
  } else if (cmd == "homology") {
    if (o.input.empty()) fail(ErrorKind::Validation, "--input is required");
    Json j = read_json_file(o.input);
    if (j.contains("schema") && j["schema"] != "1") fail(ErrorKind::Validation, "unsupported schema version");
    const Json& cj = j.contains("complex") ? j["complex"] : j;
    auto k = complex_from_json(cj);
    GroupAction g;
    if (cj.contains("action")) g = action_from_json(cj["action"], k.vertices.size());
    if (o.format == "off") emit(cmd, o, to_off(k));
    else emit(cmd, o, complex_report(k, g));
  } else if (cmd == "character-variety") {
    Group g = o.group == "sl" ? Group::SL : Group::GL;
    auto r = character_variety_complex(g, o.n);
    if (o.format == "off") {
      emit(cmd, o, to_off(r.quotient ? *r.quotient : r.cover));
    } else {
      Json j{{"group", o.group}, {"n", o.n}, {"homology", to_json(r.homology)}, {"method", r.method},
             {"cover", Json{{"f_vector", r.cover.f_vector()}, {"facets", r.cover.facets.size()}}},
             {"expected_sphere", g == Group::GL ? 2 * o.n - 1 : 2 * o.n - 3}};
      j["matches_sphere"] = r.homology == sphere_profile(j["expected_sphere"].get<int>());
      if (r.quotient) j["quotient"] = complex_report(*r.quotient);
      emit(cmd, o, j);
    }
  } else if (cmd == "tate") {
    emit(cmd, o, to_json(tate_strata(o.n, o.alpha)));
  } else if (cmd == "gauss") {
    Json j = to_json(gauss_weight_identity(parse_rational(o.c), o.a, o.l, o.m));
    j["input"] = Json{{"c", o.c}, {"a", o.a}, {"l", o.l}, {"m", o.m}};
    emit(cmd, o, j);
  } else if (cmd == "sphere-check") {
    emit(cmd, o, to_json(sphere_quotient_map_check(static_cast<std::size_t>(o.n), o.samples, o.tolerance, o.seed)));
  } else if (cmd == "fixtures") {
    auto checks = run_fixtures(o.fixture_dir);
    Json list = Json::array();
    std::size_t failed = 0;
    for (const auto& c : checks) {
      failed += !c.pass;
      list.push_back(Json{{"fixture", c.fixture}, {"check", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    }
    emit(cmd, o, Json{{"checks", list}, {"total", checks.size()}, {"failed", failed}});
    return failed ? kMismatch : 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Skeletons of log-regular pairs and their dual complexes"};
  app.require_subcommand(1);
  Options o;

  auto with_input = [&](CLI::App* sub) {
    sub->add_option("--input,-i", o.input, "input bundle (JSON)")->check(CLI::ExistingFile);
    sub->add_option("--output,-o", o.output, "output file (default: stdout or $SKEL_OUTPUT_DIR)");
    return sub;
  };
  auto with_forms = [&](CLI::App* sub) {
    sub->add_option("--form", o.form_index, "form indices (default: all)");
    return sub;
  };

  with_input(app.add_subcommand("skeleton", "Kato fan and faces"));
  with_input(app.add_subcommand("closure", "strata of the compactified skeleton and point classification"));
  with_forms(with_input(app.add_subcommand("weight", "weight function values at the listed points")));
  with_forms(with_input(app.add_subcommand("ks", "Kontsevich-Soibelman skeleton of each form")));
  auto essential = with_forms(with_input(app.add_subcommand("essential", "essential skeleton")));
  essential->add_flag("--logcy", o.logcy, "use the coefficient-one boundary faces");
  auto slice = with_input(app.add_subcommand("slice", "slice of the essential skeleton at <b, x> = 1"));
  slice->add_option("--b", o.b, "COMPONENT=MULTIPLICITY (default: vertical components)");
  auto res = with_forms(with_input(app.add_subcommand("residue", "residue along a stratum and its skeleton")));
  res->add_option("--stratum", o.stratum, "component ids of the stratum");
  auto dual = with_forms(with_input(app.add_subcommand("dual-complex", "link of the essential skeleton")));
  dual->add_flag("--logcy", o.logcy, "use the coefficient-one boundary faces");
  dual->add_option("--format", o.format)->check(CLI::IsMember({"json", "off"}));
  auto hom = with_input(app.add_subcommand("homology", "homology of a complex, or of its quotient when an action is given"));
  hom->add_option("--format", o.format)->check(CLI::IsMember({"json", "off"}));
  auto cv = app.add_subcommand("character-variety", "dual complex of the character variety");
  cv->add_option("--group", o.group)->required()->check(CLI::IsMember({"gl", "sl"}));
  cv->add_option("--n", o.n)->required();
  cv->add_option("--format", o.format)->check(CLI::IsMember({"json", "off"}));
  cv->add_option("--output,-o", o.output);
  auto tate = app.add_subcommand("tate", "boundary strata of the Tate-type degeneration");
  tate->add_option("--n", o.n)->required();
  tate->add_option("--alpha", o.alpha)->required()->delimiter(',')->allow_extra_args();
  tate->add_option("--output,-o", o.output);
  auto gauss = app.add_subcommand("gauss", "exponents under the Gauss extension");
  gauss->add_option("--c", o.c)->required();
  gauss->add_option("--a", o.a)->required();
  gauss->add_option("--l", o.l)->required();
  gauss->add_option("--m", o.m)->required();
  gauss->add_option("--output,-o", o.output);
  auto sphere = app.add_subcommand("sphere-check", "numeric checks of the symmetric-product sphere map");
  sphere->add_option("--n", o.n)->required();
  sphere->add_option("--samples", o.samples);
  sphere->add_option("--tolerance", o.tolerance);
  sphere->add_option("--seed", o.seed);
  sphere->add_option("--output,-o", o.output);
  auto fix = app.add_subcommand("fixtures", "run the bundled regression fixtures");
  fix->add_option("--dir", o.fixture_dir)->check(CLI::ExistingDirectory);
  fix->add_option("--output,-o", o.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kValidation;
  }
  std::string cmd = app.get_subcommands().front()->get_name();
  try {
    return run(cmd, o);
  } catch (const Error& e) {
    std::cerr << "error (" << error_kind_name(e.kind()) << "): " << e.what() << "\n";
    return kValidation;
  } catch (const Json::exception& e) {
    std::cerr << "error (Validation): " << e.what() << "\n";
    return kValidation;
  }
}
