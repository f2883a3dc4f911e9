#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace uavnav::cli {

/// Git blob id of `bytes`: SHA-1 over "blob <size>\0" + bytes, hex encoded.
std::string git_blob_hash(const std::string& bytes);
/// Throws IoError when the file cannot be read.
std::string git_blob_hash_file(const std::filesystem::path& path);

struct FileRecord {
  /// Relative to the manifest's directory for artifacts; as given for inputs.
  std::string path;
  std::string sha1;
  std::uintmax_t bytes = 0;
};

struct RunManifest {
  std::string command;
  /// Resolved options of the command; enough to re-run it.
  nlohmann::json options;
  std::uint64_t master_seed = 0;
  std::string seed_rule;
  std::vector<FileRecord> inputs;
  std::vector<FileRecord> artifacts;
  std::map<std::string, double> timings;
  int exit_code = 0;

  void add_input(const std::filesystem::path& path);
  /// Hashes `out_dir / relative`.
  void add_artifact(const std::filesystem::path& out_dir, const std::string& relative);

  nlohmann::json to_json() const;
  static RunManifest from_json(const nlohmann::json& j);
};

inline constexpr const char* kManifestFile = "manifest.json";
inline constexpr const char* kManifestSchema = "uavnav.manifest/1";
inline constexpr const char* kSeedRule =
    "stream seed = splitmix64(master ^ fnv1a64(module)); indexed stream = splitmix64(stream seed + index)";

void write_manifest(const RunManifest& m, const std::filesystem::path& out_dir);
RunManifest read_manifest(const std::filesystem::path& path);

/// Artifacts whose current checksum differs from the manifest (or that are
/// missing), as relative paths.
std::vector<std::string> verify_manifest(const RunManifest& m, const std::filesystem::path& out_dir);

}  // namespace uavnav::cli
