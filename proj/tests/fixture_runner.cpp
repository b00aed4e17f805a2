// fixture_runner <fixtures-dir> [--regenerate [name...]]
// Golden files are rewritten only under --regenerate, keeping the keys already present.
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "kreinlab/errors.hpp"
#include "kreinlab/fixtures.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: fixture_runner <fixtures-dir> [--regenerate [name...]]\n");
    return 2;
  }
  const fs::path root(argv[1]);
  bool regenerate = false;
  std::vector<std::string> only;
  for (int i = 2; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--regenerate") regenerate = true;
    else only.push_back(a);
  }
  std::vector<fs::path> dirs;
  for (const auto& e : fs::directory_iterator(root))
    if (e.is_directory()) dirs.push_back(e.path());
  std::sort(dirs.begin(), dirs.end());
  if (dirs.empty()) {
    std::fprintf(stderr, "no fixtures under %s\n", root.string().c_str());
    return 1;
  }

  int failed = 0, ran = 0;
  for (const auto& d : dirs) {
    const std::string name = d.filename().string();
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
    ++ran;
    try {
      if (regenerate) {
        kreinlab::regenerate_fixture(d.string());
        std::printf("REGENERATED %s\n", name.c_str());
      } else {
        kreinlab::run_fixture(d.string());
        std::printf("PASS %s\n", name.c_str());
      }
    } catch (const std::exception& e) {
      ++failed;
      std::printf("FAIL %s: %s\n", name.c_str(), e.what());
    }
  }
  if (ran == 0) {
    std::fprintf(stderr, "no fixture matched\n");
    return 1;
  }
  std::printf("%d of %d fixtures passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
