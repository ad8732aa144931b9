#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "exemplar/session.hpp"

namespace exemplar {

struct Library {
  std::string name;
  std::vector<LearnedCustom> customs;
  std::vector<LearnedDef> entries;
  bool operator==(const Library&) const = default;
};

std::string toJson(const Library& lib);
// Throws Errc::FormatError.
Library libraryFromJson(const std::string& text);
// Throws Errc::FileNotFound / Errc::FormatError.
Library readLibrary(const std::filesystem::path& path);
// Throws Errc::IoError.
void saveLibrary(const Library& lib, const std::filesystem::path& path);

// The customs and definitions taught in a session.
Library captureLibrary(const Session& s, const std::string& name);

struct SkippedEntry {
  std::string library;
  std::string item;  // utterance or custom name
  std::string code;
  std::string reason;
};

struct LoadReport {
  std::vector<std::string> loaded;
  int rulesAdded = 0;
  std::vector<SkippedEntry> skipped;
};

// Replays customs then entries of each library, in order, onto the
// session's language. Conflicting entries are skipped and reported.
LoadReport loadLibraries(Session& s, const std::vector<Library>& libs);

class LibraryStore {
 public:
  // Validates by replay onto the core grammar. Throws Errc::DuplicateLibrary
  // or Errc::ReplayFailure.
  const Library& registerLibrary(Library lib);
  const Library& get(const std::string& name) const;
  bool contains(const std::string& name) const { return libs_.count(name) > 0; }
  std::vector<std::string> names() const;

 private:
  std::map<std::string, Library> libs_;
};

}  // namespace exemplar
