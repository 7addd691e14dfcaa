#pragma once

#include "skel/serialize.hpp"

#include <string>
#include <vector>

namespace skel::tools {

// Pair, forms and points read from one input document.
struct Bundle {
  Json raw;
  LogPair pair;
  KatoFan fan;
  std::vector<Form> forms;
  std::vector<SkeletonPoint> points;
};
Bundle load_bundle(const Json& j);

// Vertical components and their multiplicities, the default slicing vector.
std::map<std::string, std::int64_t> vertical_multiplicities(const LogPair& pair);

struct Check {
  std::string fixture;
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<Check> run_fixture(const std::string& path);
// Every *.json file in the directory, in name order.
std::vector<Check> run_fixtures(const std::string& dir);

}  // namespace skel::tools
