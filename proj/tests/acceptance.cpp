#include "properties.hpp"
#include "regression.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace skel;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fixture(const std::string& name) { return std::string(SKEL_FIXTURE_DIR) + "/" + name; }

// Runs the listed checks of one fixture; an empty list means all of them.
std::string fixture_failures(const std::string& name, const std::vector<std::string>& wanted, std::size_t* ran = nullptr) {
  std::string out;
  std::size_t count = 0;
  for (const auto& c : tools::run_fixture(fixture(name))) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.name) == wanted.end()) continue;
    ++count;
    if (!c.pass) out += c.name + ": " + c.detail + "; ";
  }
  if (count == 0) out += "no checks ran; ";
  if (ran) *ran = count;
  return out;
}

struct Line {
  int id;
  std::string title;
  std::function<std::string()> body;  // empty string on success, otherwise the reason
};

std::string criterion_example() {
  auto t = Clock::now();
  std::string f = fixture_failures("example_strict.json", {"weights", "ks", "residue", "residue_ks"});
  double s = seconds_since(t);
  if (!f.empty()) return f;
  if (s >= 1.0) return "took " + std::to_string(s) + " s";
  return "";
}

std::string character_variety(Group g, int lo, int hi) {
  std::ostringstream out;
  for (int n = lo; n <= hi; ++n) {
    auto t = Clock::now();
    auto r = character_variety_complex(g, n);
    double s = seconds_since(t);
    int d = g == Group::GL ? 2 * n - 1 : 2 * n - 3;
    if (r.homology != sphere_profile(d)) out << "n=" << n << " homology is not that of S^" << d << "; ";
    if (s >= 300) out << "n=" << n << " took " << s << " s; ";
  }
  return out.str();
}

std::string criterion_gauss() {
  std::mt19937_64 rng(4242);
  auto pick = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
  for (int i = 0; i < 100; ++i) {
    Rational c(pick(1, 50), pick(1, 30));
    std::int64_t a = pick(0, 12), l = pick(1, 9), m = pick(1, 9);
    auto r = gauss_weight_identity(c, a, l, m);
    if (!r.identity_holds || -Rational(m) * r.log_r + r.log_disc != r.log_triv)
      return "fails at c=" + to_string(c) + " a=" + std::to_string(a) + " l=" + std::to_string(l) + " m=" + std::to_string(m);
  }
  return "";
}

std::string criterion_sphere() {
  std::ostringstream out;
  for (std::size_t n = 1; n <= 3; ++n) {
    auto r = sphere_quotient_map_check(n, 10000, 1e-9, 100 + n);
    if (!r.ok())
      out << "n=" << n << " collapse=" << r.max_orbit_defect << " separation=" << r.min_separation << " norm=" << r.max_norm_defect
          << "; ";
  }
  return out.str();
}

std::string criterion_tate() {
  std::size_t ran = 0;
  std::string f = fixture_failures("tate.json", {}, &ran);
  // every alpha in the sweep range must be covered
  std::size_t expected = 0;
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b) expected += a + b >= -3 && a + b <= 3;
  if (ran != expected) f += "sweep covers " + std::to_string(ran) + " of " + std::to_string(expected) + " cases; ";
  return f;
}

std::string criterion_properties() {
  std::string out;
  for (const auto& o : properties::run_all(97531, 200))
    if (!o.ok() || o.instances < 200) out += o.name + " (" + std::to_string(o.failures) + " failures: " + o.first_failure + "); ";
  return out;
}

}  // namespace

int main() {
  std::vector<Line> lines = {
      {1, "Example regression: weights 2,3,3; KS vertex v_D1 with min 2; residue along D4 and its skeleton", criterion_example},
      {2, "GL character varieties n=1,2,3 have the homology of S^{2n-1}", [] { return character_variety(Group::GL, 1, 3); }},
      {3, "SL character varieties n=2,3 have the homology of S^{2n-3}", [] { return character_variety(Group::SL, 2, 3); }},
      {4, "P2 closure: 7 strata with dimensions {2,1,1,1,0,0,0}, classification consistent",
       [] { return fixture_failures("p2_toric.json", {"strata_dimensions", "kato_points"}); }},
      {5, "Dwork slice has homology (Z, Z)", [] { return fixture_failures("dwork.json", {"slice_homology"}); }},
      {6, "Gauss identity on 100 random inputs", criterion_gauss},
      {7, "sphere map checks n=1,2,3 on 10^4 samples at 1e-9", criterion_sphere},
      {8, "Tate sweep n=2, |alpha| in [-3,3] matches the case table", criterion_tate},
      {9, "property suites, 200 instances each", criterion_properties},
  };
  int failed = 0;
  for (const auto& l : lines) {
    auto t = Clock::now();
    std::string reason;
    try {
      reason = l.body();
    } catch (const std::exception& e) {
      reason = std::string("exception: ") + e.what();
    }
    bool pass = reason.empty();
    failed += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << l.id << ": " << l.title << " (" << seconds_since(t) << " s)";
    if (!pass) std::cout << " -- " << reason;
    std::cout << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
