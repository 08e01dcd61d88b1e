// Shared helpers for the test binaries: fixture loading and temp files.

#ifndef MADA_TESTS_HELPERS_H_
#define MADA_TESTS_HELPERS_H_

#include <unistd.h>

#include <filesystem>
#include <string>
#include <vector>

#include "mada/corpus.h"

namespace mada::test {

inline std::string data_path(const std::string& name) {
  return std::string(MADA_DATA_DIR) + "/" + name;
}

struct Fixture {
  Ontology ontology;
  VenueDatabase db;
  std::vector<Dialog> dialogs;
};

inline Fixture load_fixture(const std::string& corpus = "corpus.json") {
  Fixture f;
  f.ontology = Ontology::load(data_path("ontology.json"));
  f.db = VenueDatabase::load(data_path("database.json"), f.ontology);
  f.dialogs = load_corpus(data_path(corpus), f.ontology);
  return f;
}

// A fresh directory under the system temp root. Left behind on purpose so a
// failing test's artifacts can be inspected.
inline std::string make_temp_dir() {
  static int counter = 0;
  std::filesystem::path base = std::filesystem::temp_directory_path();
  std::filesystem::path dir;
  do {
    dir = base / ("mada_test_" + std::to_string(getpid()) + "_" + std::to_string(counter++));
  } while (std::filesystem::exists(dir));
  std::filesystem::create_directories(dir);
  return dir.string();
}

inline std::string write_temp_file(const std::string& dir, const std::string& name,
                                   const std::string& content) {
  std::string path = dir + "/" + name;
  write_text_file(path, content);
  return path;
}

}  // namespace mada::test

#endif  // MADA_TESTS_HELPERS_H_
