#include "regression.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <set>

namespace skel::tools {

Bundle load_bundle(const Json& j) {
  if (j.contains("schema") && j["schema"] != "1") fail(ErrorKind::Validation, "unsupported schema version");
  if (!j.contains("pair")) fail(ErrorKind::Validation, "input: missing field \"pair\"");
  Bundle b;
  b.raw = j;
  b.pair = pair_from_json(j["pair"]);
  b.fan = kato_fan(b.pair);
  for (const auto& f : j.value("forms", Json::array())) b.forms.push_back(form_from_json(f, b.pair));
  for (const auto& p : j.value("points", Json::array())) b.points.push_back(point_from_json(p, b.pair.mode));
  return b;
}

std::map<std::string, std::int64_t> vertical_multiplicities(const LogPair& pair) {
  std::map<std::string, std::int64_t> b;
  for (const auto& id : pair.component_ids()) {
    const auto& c = pair.component(id);
    if (c.vertical()) b[id] = c.pi_multiplicity;
  }
  return b;
}

namespace {

class Recorder {
 public:
  explicit Recorder(std::string fixture) : fixture_(std::move(fixture)) {}

  void check(const std::string& name, const std::function<std::string()>& body) {
    Check c{fixture_, name, false, ""};
    try {
      c.detail = body();
      c.pass = c.detail.empty();
    } catch (const Error& e) {
      c.detail = std::string(error_kind_name(e.kind())) + ": " + e.what();
    } catch (const std::exception& e) {
      c.detail = e.what();
    }
    out.push_back(std::move(c));
  }

  std::vector<Check> out;

 private:
  std::string fixture_;
};

std::string compare(const Json& got, const Json& want) {
  if (got == want) return "";
  return "got " + got.dump() + ", expected " + want.dump();
}

Json face_summary(const SubFan& s) {
  Json faces = Json::array();
  Json full = to_json(s);
  for (const auto& f : full["faces"]) faces.push_back(Json{{"kato_point", f["kato_point"]}, {"rays", f["rays"]}, {"vertices", f["vertices"]}});
  std::sort(faces.begin(), faces.end());
  return faces;
}

std::string ks_check(const Bundle& b, std::size_t form, const Json& want) {
  auto ks = ks_skeleton(b.pair, b.fan, b.forms.at(form));
  if (!ks.skeleton) return "weight unbounded below";
  Json faces = want["faces"];
  std::sort(faces.begin(), faces.end());
  std::string r = compare(face_summary(*ks.skeleton), faces);
  if (!r.empty()) return r;
  return compare(to_json(*ks.skeleton->min_value), want["min_value"]);
}

std::string weights_check(const Bundle& b, std::size_t form, const Json& want) {
  Json got = Json::array();
  for (const auto& v : b.points) got.push_back(to_json(weight(b.pair, b.fan, b.forms.at(form), v)));
  return compare(got, want);
}

void pair_fixture(Recorder& rec, const Json& raw) {
  Bundle b = load_bundle(raw);
  const Json& expect = raw.value("expect", Json::object());
  for (const auto& [key, want] : expect.items()) {
    if (key == "weights") rec.check(key, [&, w = want] { return weights_check(b, 0, w); });
    else if (key.rfind("weights_form", 0) == 0)
      rec.check(key, [&, w = want, k = key] { return weights_check(b, std::stoul(k.substr(12)), w); });
    else if (key == "ks") rec.check(key, [&, w = want] { return ks_check(b, 0, w); });
    else if (key.rfind("ks_form", 0) == 0)
      rec.check(key, [&, w = want, k = key] { return ks_check(b, std::stoul(k.substr(7)), w); });
    else if (key == "ks_min_value")
      rec.check(key, [&, w = want] {
        auto ks = ks_skeleton(b.pair, b.fan, b.forms.at(0));
        if (!ks.skeleton) return std::string("weight unbounded below");
        return compare(to_json(*ks.skeleton->min_value), w);
      });
    else if (key == "residue" || key == "residue_ks")
      rec.check(key, [&, k = key] {
        const Json& r = expect.at("residue");
        auto along = r["along"].get<std::vector<std::string>>();
        const PluriForm* local = nullptr;
        for (const auto& e : b.forms.at(0).expressions)
          if (e.chart == r["chart"]) local = &e;
        if (!local) return std::string("no expression in chart ") + r["chart"].dump();
        auto res = residue(b.pair, *local, along);
        if (k == "residue") {
          std::string d = compare(Json(res.dlog), r["dlog"]);
          if (!d.empty()) return d;
          return compare(to_json(res.numerator), to_json(laurent_from_json(r["numerator"], res.numerator.num.arity)));
        }
        auto tp = trace_pair(b.pair, along);
        auto tk = kato_fan(tp);
        auto rks = ks_skeleton(tp, tk, Form{{res}});
        if (!rks.skeleton) return std::string("residue weight unbounded below");
        if (expect.at("residue_ks") != "whole_trace_skeleton") return std::string("unknown residue_ks expectation");
        if (tp.mode == Mode::Trivial)
          return same_cells(*rks.skeleton, essential_logcy(tp, tk)) ? std::string() : "residue skeleton " + to_json(*rks.skeleton).dump();
        // dvf: the whole skeleton is the slice of the cone complex
        auto whole = slice_dvf(essential_logcy(tp, tk), vertical_multiplicities(tp));
        std::vector<std::vector<QVector>> got, want = whole.cells;
        for (const auto& c : rks.skeleton->cells) {
          if (!c.global_rays.empty()) return std::string("residue skeleton is not compact");
          got.push_back(c.global_vertices);
        }
        for (auto* v : {&got, &want}) {
          for (auto& cell : *v) std::sort(cell.begin(), cell.end());
          std::sort(v->begin(), v->end());
        }
        return got == want ? std::string() : "residue skeleton " + to_json(*rks.skeleton).dump();
      });
    else if (key == "slice_homology")
      rec.check(key, [&, w = want] {
        auto b_vec = raw.contains("slice_b") ? raw["slice_b"].get<std::map<std::string, std::int64_t>>() : vertical_multiplicities(b.pair);
        auto slice = slice_dvf(essential_logcy(b.pair, b.fan), b_vec);
        return compare(to_json(homology(to_simplicial(slice))), to_json(homology_from_json(w)));
      });
    else if (key == "kato_points")
      rec.check(key, [&, w = want] { return compare(Json(b.fan.points.size()), w); });
    else if (key == "strata_dimensions")
      rec.check(key, [&, w = want] {
        if (!b.pair.toric) return std::string("strata dimensions need a toric pair");
        std::vector<std::size_t> dims;
        for (const auto& s : compactified_fan_strata(b.pair.toric->fan)) dims.push_back(s.star.dimension());
        std::sort(dims.rbegin(), dims.rend());
        std::string d = compare(Json(dims), w);
        if (!d.empty()) return d;
        // classification of sampled closure points reaches each stratum with the same dimension
        std::map<std::string, std::size_t> reached;
        std::size_t n = b.pair.toric->fan.rank();
        for (const auto& x : b.fan.points)
          for (std::uint32_t mask = 0; mask < (1u << x.rank()); ++mask) {
            SkeletonPoint v{x.id, {}, Mode::Trivial};
            for (std::size_t i = 0; i < x.rank(); ++i) v.weights.push_back(mask & (1u << i) ? ExtRational::infinity() : ExtRational(1));
            auto c = classify_closure_point(b.fan, v);
            reached[c.stratum] = n - b.fan.points[b.fan.index_of(c.stratum)].rank();
          }
        std::vector<std::size_t> seen;
        for (const auto& [id, dim] : reached) seen.push_back(dim);
        std::sort(seen.rbegin(), seen.rend());
        return compare(Json(seen), w);
      });
    else if (key == "link_homology")
      rec.check(key, [&, w = want] {
        return compare(to_json(homology(link_complex(essential_logcy(b.pair, b.fan)))), to_json(homology_from_json(w)));
      });
    else
      rec.check(key, [k = key] { return "unknown expectation " + k; });
  }
}

std::string tate_check(const Json& c) {
  auto r = tate_strata(c["n"].get<int>(), c["alpha"].get<std::vector<std::int64_t>>());
  std::string d = compare(Json(r.classification), c["classification"]);
  if (!d.empty()) return d;
  if (!r.codim_two_boundary) return "boundary strata do not meet in codimension two";
  if (!c.contains("contained")) return "";
  Json got = Json::array();
  for (const auto& s : r.strata)
    if (s.contained && r.classification == "strata") got.push_back(Json{{"J", s.J}, {"j", s.j}, {"divisor", s.divisor.substr(0, 1)}});
  Json want = c["contained"];
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  return compare(got, want);
}

void tate_fixture(Recorder& rec, const Json& raw) {
  for (const auto& c : raw["cases"]) rec.check("tate " + c["alpha"].dump(), [&] { return tate_check(c); });
}

void examples_fixture(Recorder& rec, const Json& raw) {
  for (const auto& g : raw.value("gauss", Json::array()))
    rec.check("gauss", [&] {
      auto r = gauss_weight_identity(rational_from_json(g["c"]), g["a"].get<std::int64_t>(), g["l"].get<std::int64_t>(),
                                     g["m"].get<std::int64_t>());
      if (!r.identity_holds) return std::string("identity fails");
      Json got = to_json(r);
      got.erase("identity_holds");
      return compare(got, g["expect"]);
    });
  for (const auto& c : raw.value("character_variety", Json::array()))
    rec.check("character-variety " + c["group"].get<std::string>() + " " + c["n"].dump(), [&] {
      Group grp = c["group"] == "sl" ? Group::SL : Group::GL;
      auto r = character_variety_complex(grp, c["n"].get<int>());
      return compare(to_json(r.homology), to_json(sphere_profile(c["sphere"].get<int>())));
    });
  for (const auto& s : raw.value("sphere_map", Json::array()))
    rec.check("sphere map n=" + s["n"].dump(), [&] {
      auto r = sphere_quotient_map_check(s["n"].get<std::size_t>(), s["samples"].get<std::size_t>(), s["tolerance"].get<double>(),
                                         s["seed"].get<std::uint64_t>());
      return r.ok() ? std::string() : dump(to_json(r));
    });
  for (const auto& c : raw.value("tate", Json::array())) rec.check("tate " + c["alpha"].dump(), [&] { return tate_check(c); });
}

}  // namespace

std::vector<Check> run_fixture(const std::string& path) {
  Recorder rec(std::filesystem::path(path).filename().string());
  Json raw;
  rec.check("load", [&] {
    raw = read_json_file(path);
    return std::string();
  });
  if (!rec.out.back().pass) return rec.out;
  rec.out.pop_back();
  if (raw.contains("pair")) {
    try {
      pair_fixture(rec, raw);
    } catch (const std::exception& e) {
      rec.check("load", [&] { return std::string(e.what()); });
    }
  } else if (raw.contains("cases")) {
    tate_fixture(rec, raw);
  } else {
    examples_fixture(rec, raw);
  }
  if (rec.out.empty()) rec.check("expectations", [] { return std::string("fixture has no expectations"); });
  return rec.out;
}

std::vector<Check> run_fixtures(const std::string& dir) {
  std::vector<std::string> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".json") files.push_back(e.path().string());
  std::sort(files.begin(), files.end());
  std::vector<Check> out;
  for (const auto& f : files) {
    auto c = run_fixture(f);
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

}  // namespace skel::tools
